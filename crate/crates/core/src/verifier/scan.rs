//! Exhaustive scans with checkpointing. The report is line-delimited JSON:
//! a header, optional per-instance records, and an aggregate footer.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File, OpenOptions};
use std::io::{Seek, SeekFrom, Write};
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{check_instance, CheckKind, Certificate, CheckResult, InstanceResult, Status, TheoremId};
use crate::canvas::Canvas;
use crate::deficiency::Params;
use crate::format::CanvasFile;
use crate::genlab::{assign_lists, enumerate_plane_graphs, GenError, GenSpec};

#[derive(Debug, Error)]
pub enum ScanError {
    #[error(transparent)]
    Spec(#[from] GenError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("checkpoint unusable: {0}")]
    Checkpoint(String),
    #[error("thread pool: {0}")]
    Pool(String),
}

/// One generated canvas and its position in the stream.
#[derive(Clone, Debug)]
pub struct Instance {
    pub index: u64,
    pub outer_len: usize,
    pub graph_index: usize,
    pub canvas: Canvas,
}

/// The deterministic instance stream of a spec: outer lengths in the given
/// order, graphs in enumeration order, then list assignments in order.
pub fn instances(spec: &GenSpec) -> Result<impl Iterator<Item = Instance>, GenError> {
    spec.validate()?;
    let spec = spec.clone();
    let lens = spec.outer_lens.clone();
    let it = lens
        .into_iter()
        .flat_map(move |k| {
            let spec = spec.clone();
            enumerate_plane_graphs(k, spec.max_internal, spec.max_edges)
                .into_iter()
                .enumerate()
                .flat_map(move |(gi, g)| {
                    let lists = assign_lists(&g, &spec).expect("spec was validated");
                    lists.map(move |l| (k, gi, Canvas::new(g.clone(), l).expect("enumerated graphs have an outer cycle")))
                })
        })
        .enumerate()
        .map(|(i, (outer_len, graph_index, canvas))| Instance { index: i as u64, outer_len, graph_index, canvas });
    Ok(it)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanHeader {
    pub record: String,
    pub tool: String,
    pub version: String,
    pub spec: GenSpec,
    pub params: Params,
    pub suite: Vec<TheoremId>,
}

impl ScanHeader {
    pub fn new(spec: &GenSpec, params: &Params, suite: &BTreeSet<TheoremId>) -> ScanHeader {
        ScanHeader {
            record: "header".into(),
            tool: "canvaslab".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            spec: spec.clone(),
            params: *params,
            suite: suite.iter().copied().collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremTally {
    pub pass: u64,
    pub fail: u64,
    pub skip: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanFooter {
    pub record: String,
    pub examined: u64,
    pub critical: u64,
    pub per_theorem: BTreeMap<TheoremId, TheoremTally>,
    pub violations: Vec<Certificate>,
    pub notes: BTreeMap<String, u64>,
    pub oracle_queries: u64,
}

impl ScanFooter {
    fn new(suite: &BTreeSet<TheoremId>) -> ScanFooter {
        ScanFooter {
            record: "footer".into(),
            examined: 0,
            critical: 0,
            per_theorem: suite.iter().map(|&t| (t, TheoremTally::default())).collect(),
            violations: Vec::new(),
            notes: BTreeMap::new(),
            oracle_queries: 0,
        }
    }

    fn absorb(&mut self, inst: &Instance, r: &InstanceResult, params: &Params) {
        self.examined += 1;
        self.critical += r.critical as u64;
        self.oracle_queries += r.oracle_queries;
        for n in &r.notes {
            *self.notes.entry(n.clone()).or_default() += 1;
        }
        for CheckResult { theorem, outcome } in &r.checks {
            let tally = self.per_theorem.entry(*theorem).or_default();
            match outcome.status {
                Status::Pass => tally.pass += 1,
                Status::Skip => tally.skip += 1,
                Status::Fail => {
                    tally.fail += 1;
                    self.violations.push(Certificate {
                        check: CheckKind::Theorem(*theorem),
                        instance: Some(inst.index),
                        canvas: CanvasFile::from_canvas(&inst.canvas, None),
                        params: *params,
                        outcome: Some(outcome.clone()),
                        criticality: Some(r.certificate.clone()),
                    });
                }
            }
        }
    }

    pub fn violation_count(&self) -> u64 {
        self.per_theorem.values().map(|t| t.fail).sum()
    }

    pub fn to_line(&self) -> String {
        let mut s = serde_json::to_string(self).expect("footer serializes");
        s.push('\n');
        s
    }
}

#[derive(Serialize)]
struct InstanceRecord<'a> {
    record: &'static str,
    index: u64,
    outer_len: usize,
    graph_index: usize,
    critical: bool,
    checks: &'a [CheckResult],
    notes: &'a [String],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Checkpoint {
    header: ScanHeader,
    cursor: u64,
    report_len: u64,
    footer: ScanFooter,
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub jobs: usize,
    pub batch_size: usize,
    pub checkpoint: Option<PathBuf>,
    pub report: Option<PathBuf>,
    /// One report record per instance.
    pub verbose: bool,
    /// Stop after this many batches, leaving the checkpoint behind.
    pub stop_after_batches: Option<usize>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { jobs: 1, batch_size: 64, checkpoint: None, report: None, verbose: false, stop_after_batches: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanOutcome {
    Complete(ScanFooter),
    Interrupted { cursor: u64 },
}

fn write_atomic(path: &PathBuf, text: &str) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)
}

/// Run the suite over every instance of `spec`. With a checkpoint path,
/// progress is saved after each batch and an existing checkpoint for the
/// same header is resumed. Results do not depend on `jobs`.
pub fn scan(
    spec: &GenSpec,
    params: &Params,
    suite: &BTreeSet<TheoremId>,
    opts: &ScanOptions,
) -> Result<ScanOutcome, ScanError> {
    let header = ScanHeader::new(spec, params, suite);
    let stream = instances(spec)?;
    let resumed = match &opts.checkpoint {
        Some(p) if p.exists() => {
            let cp: Checkpoint = serde_json::from_str(&fs::read_to_string(p)?)
                .map_err(|e| ScanError::Checkpoint(e.to_string()))?;
            if cp.header != header {
                return Err(ScanError::Checkpoint("checkpoint belongs to a different scan".into()));
            }
            Some(cp)
        }
        _ => None,
    };
    let (mut footer, mut cursor) = match &resumed {
        Some(cp) => (cp.footer.clone(), cp.cursor),
        None => (ScanFooter::new(suite), 0),
    };
    let mut report: Option<File> = match &opts.report {
        Some(path) => {
            let mut f = OpenOptions::new().create(true).write(true).read(true).truncate(false).open(path)?;
            match &resumed {
                Some(cp) => {
                    f.set_len(cp.report_len)?;
                    f.seek(SeekFrom::End(0))?;
                }
                None => {
                    f.set_len(0)?;
                    let mut line = serde_json::to_string(&header).expect("header serializes");
                    line.push('\n');
                    f.write_all(line.as_bytes())?;
                }
            }
            Some(f)
        }
        None => None,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| ScanError::Pool(e.to_string()))?;
    let mut stream = stream.skip(cursor as usize);
    let mut batches = 0;
    loop {
        let batch: Vec<Instance> = stream.by_ref().take(opts.batch_size.max(1)).collect();
        if batch.is_empty() {
            break;
        }
        let results: Vec<InstanceResult> =
            pool.install(|| batch.par_iter().map(|i| check_instance(&i.canvas, params, suite)).collect());
        let mut lines = String::new();
        for (inst, r) in batch.iter().zip(&results) {
            footer.absorb(inst, r, params);
            if opts.verbose {
                let rec = InstanceRecord {
                    record: "instance",
                    index: inst.index,
                    outer_len: inst.outer_len,
                    graph_index: inst.graph_index,
                    critical: r.critical,
                    checks: &r.checks,
                    notes: &r.notes,
                };
                lines.push_str(&serde_json::to_string(&rec).expect("record serializes"));
                lines.push('\n');
            }
        }
        cursor += batch.len() as u64;
        let mut report_len = 0;
        if let Some(f) = report.as_mut() {
            f.write_all(lines.as_bytes())?;
            f.flush()?;
            report_len = f.stream_position()?;
        }
        if let Some(p) = &opts.checkpoint {
            let cp = Checkpoint { header: header.clone(), cursor, report_len, footer: footer.clone() };
            write_atomic(p, &serde_json::to_string(&cp).expect("checkpoint serializes"))?;
        }
        batches += 1;
        if opts.stop_after_batches == Some(batches) {
            return Ok(ScanOutcome::Interrupted { cursor });
        }
    }
    if let Some(f) = report.as_mut() {
        f.write_all(footer.to_line().as_bytes())?;
        f.flush()?;
    }
    if let Some(p) = &opts.checkpoint {
        if p.exists() {
            fs::remove_file(p)?;
        }
    }
    Ok(ScanOutcome::Complete(footer))
}
