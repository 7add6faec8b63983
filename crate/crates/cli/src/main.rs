use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use canvaslab::canvas::{Canvas, CanvasFinding};
use canvaslab::colorer::{extend, ExtensionOracle, PartialColoring};
use canvaslab::critical::extract_minimal_extender;
use canvaslab::deficiency::Params;
use canvaslab::draw::{to_dot, to_svg};
use canvaslab::format::CanvasFile;
use canvaslab::genlab::{GenSpec, ListMode};
use canvaslab::verifier::{replay_certificate, scan, ReplayError, ScanOptions, ScanOutcome, TheoremId};

#[derive(Parser)]
#[command(name = "canvaslab", version, about = "List-coloring canvases: criticality, deficiency and exhaustive scans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file describes a valid canvas.
    Validate { path: PathBuf },
    /// Extend a boundary precoloring to the whole graph.
    Color {
        path: PathBuf,
        /// Precoloring of outer-cycle vertices, as v=c pairs.
        #[arg(long, value_delimiter = ',', value_parser = parse_pair)]
        phi: Vec<(usize, u32)>,
    },
    /// Decide criticality and print the certificate.
    Critical { path: PathBuf },
    /// Print a minimal subgraph H with the same extendable boundary colorings.
    Extract { path: PathBuf },
    /// Run the theorem checks over every generated canvas.
    Scan(ScanArgs),
    /// Draw a canvas.
    Draw(DrawArgs),
    /// Recompute a certificate and compare with its recorded verdict.
    Replay { path: PathBuf },
}

#[derive(Args)]
struct ScanArgs {
    /// Outer cycle lengths, such as 3..5 or 3,4,5.
    #[arg(long, value_parser = parse_lens)]
    k: Lens,
    /// Maximum number of internal vertices.
    #[arg(long)]
    m: usize,
    /// singleton, pairs or mixed:a,b,...
    #[arg(long, default_value = "singleton")]
    mode: ListMode,
    /// Color universe; defaults to 5 for singleton mode and 7 otherwise.
    #[arg(long)]
    universe: Option<usize>,
    #[arg(long)]
    max_edges: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// ε,α,γ as rationals.
    #[arg(long, default_value = "1/18,1/12,2/3")]
    params: Params,
    /// Comma-separated check ids; defaults to every non-replication check.
    #[arg(long, value_delimiter = ',')]
    checks: Vec<TheoremId>,
    /// Also run the replication checks.
    #[arg(long)]
    replications: bool,
    /// Keep every color-permutation of the lists.
    #[arg(long)]
    no_symmetry: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write one record per instance to the report.
    #[arg(long)]
    verbose: bool,
    #[arg(long, default_value_t = 64)]
    batch_size: usize,
    /// Stop after this many batches; resume later from the checkpoint.
    #[arg(long)]
    stop_after_batches: Option<usize>,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "fmt")]
struct DrawFormat {
    #[arg(long)]
    svg: bool,
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct DrawArgs {
    path: PathBuf,
    #[command(flatten)]
    format: DrawFormat,
    /// Output file; standard output by default.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn parse_pair(s: &str) -> Result<(usize, u32), String> {
    let (v, c) = s.split_once('=').ok_or_else(|| format!("expected v=c, got {s:?}"))?;
    let v = v.trim().parse().map_err(|_| format!("bad vertex in {s:?}"))?;
    let c = c.trim().parse().map_err(|_| format!("bad color in {s:?}"))?;
    Ok((v, c))
}

#[derive(Clone)]
struct Lens(Vec<usize>);

/// `3..5` or `3,4,5`.
fn parse_lens(s: &str) -> Result<Lens, String> {
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("bad cycle length {x:?}"));
    match s.split_once("..") {
        Some((lo, hi)) => {
            let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
            if lo > hi {
                return Err(format!("empty range {s:?}"));
            }
            Ok(Lens((lo..=hi).collect()))
        }
        None => s.split(',').map(num).collect::<Result<_, _>>().map(Lens),
    }
}

struct Failure(u8, String);

fn usage(msg: impl Into<String>) -> Failure {
    Failure(2, msg.into())
}

fn read(path: &PathBuf) -> Result<CanvasFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    CanvasFile::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load(path: &PathBuf) -> Result<Canvas, Failure> {
    Ok(read(path)?.canvas_unchecked())
}

/// A canvas whose embedding and outer cycle are sound. List sizes are not
/// enforced, so non-canvas list assignments can still be colored and tested.
fn load_valid(path: &PathBuf) -> Result<Canvas, Failure> {
    let t = load(path)?;
    let v = t.validate();
    let structural: Vec<&CanvasFinding> = v
        .violations
        .iter()
        .filter(|f| !matches!(f, CanvasFinding::ShortInternalList { .. } | CanvasFinding::BoundaryUncolorable))
        .collect();
    if !structural.is_empty() {
        let list: Vec<String> = structural.iter().map(|f| f.to_string()).collect();
        return Err(usage(format!("{}: not a valid canvas: {}", path.display(), list.join("; "))));
    }
    Ok(t)
}

fn run(cmd: Command) -> Result<u8, Failure> {
    match cmd {
        Command::Validate { path } => {
            let t = load(&path)?;
            let v = t.validate();
            if v.ok {
                println!("ok");
                Ok(0)
            } else {
                for f in &v.violations {
                    println!("{f}");
                }
                Ok(1)
            }
        }
        Command::Color { path, phi } => {
            let t = load_valid(&path)?;
            let mut pc = PartialColoring::new(t.graph.n());
            for &(v, c) in &phi {
                if !t.outer.contains(v) {
                    return Err(usage(format!("--phi names vertex {v}, which is not on the outer cycle")));
                }
                pc.set(v, c);
            }
            match extend(&t.graph, &t.lists, &pc).map_err(|e| usage(e.to_string()))? {
                Some(col) => {
                    let pairs: Vec<String> = col.pairs().iter().map(|(v, c)| format!("{v}={c}")).collect();
                    println!("{}", pairs.join(","));
                    Ok(0)
                }
                None => {
                    println!("NO_EXTENSION");
                    Ok(1)
                }
            }
        }
        Command::Critical { path } => {
            let t = load_valid(&path)?;
            let mut oracle = ExtensionOracle::from_env();
            let cert = canvaslab::verifier::criticality_certificate(&t, &mut oracle).map_err(|e| usage(e.to_string()))?;
            println!("{}", serde_json::to_string(&cert).expect("serializable"));
            Ok(if cert.verdict { 0 } else { 1 })
        }
        Command::Extract { path } => {
            let t = load_valid(&path)?;
            let mut oracle = ExtensionOracle::from_env();
            let ext = extract_minimal_extender(&t.graph, &t.outer, &t.lists, &mut oracle)
                .map_err(|e| usage(e.to_string()))?;
            let name = read(&path)?.name;
            let h = Canvas { graph: ext.graph, outer: t.outer.clone(), lists: t.lists.clone() };
            print!("{}", CanvasFile::from_canvas(&h, name).to_text());
            Ok(0)
        }
        Command::Scan(a) => run_scan(a),
        Command::Draw(a) => {
            let t = load(&a.path)?;
            let out = if a.format.svg { to_svg(&t) } else { to_dot(&t) }.map_err(|e| usage(e.to_string()))?;
            match a.output {
                Some(p) => fs::write(&p, out).map_err(|e| usage(format!("{}: {e}", p.display())))?,
                None => print!("{out}"),
            }
            Ok(0)
        }
        Command::Replay { path } => {
            let bytes = fs::read(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            match replay_certificate(&bytes) {
                Ok(v) => {
                    println!("{}", serde_json::to_string(&v).expect("serializable"));
                    Ok(if v.matches { 0 } else { 1 })
                }
                Err(e @ (ReplayError::Malformed { .. } | ReplayError::Incomplete(_))) => Err(usage(e.to_string())),
            }
        }
    }
}

fn run_scan(a: ScanArgs) -> Result<u8, Failure> {
    let mut spec = GenSpec::new(a.k.0, a.m, a.mode);
    if let Some(u) = a.universe {
        spec.universe = u;
    }
    spec.max_edges = a.max_edges;
    spec.seed = a.seed;
    spec.symmetry_reduction = !a.no_symmetry;
    spec.validate().map_err(|e| usage(e.to_string()))?;
    let mut suite: BTreeSet<TheoremId> =
        if a.checks.is_empty() { TheoremId::default_suite() } else { a.checks.into_iter().collect() };
    if a.replications {
        suite.extend(TheoremId::ALL.into_iter().filter(|t| t.is_replication()));
    }
    eprintln!("seed {}", spec.seed);
    let opts = ScanOptions {
        jobs: a.jobs,
        batch_size: a.batch_size,
        checkpoint: a.checkpoint,
        report: a.report,
        verbose: a.verbose,
        stop_after_batches: a.stop_after_batches,
    };
    let started = std::time::Instant::now();
    let outcome = scan(&spec, &a.params, &suite, &opts).map_err(|e| usage(e.to_string()))?;
    eprintln!("elapsed {:.2?}", started.elapsed());
    match outcome {
        ScanOutcome::Interrupted { cursor } => {
            println!("interrupted after {cursor} instances; rerun with the same checkpoint to resume");
            Ok(0)
        }
        ScanOutcome::Complete(f) => {
            println!("examined {} critical {} violations {}", f.examined, f.critical, f.violation_count());
            for (id, t) in &f.per_theorem {
                println!("{id:<28} pass {:>8} fail {:>6} skip {:>8}", t.pass, t.fail, t.skip);
            }
            for (note, n) in &f.notes {
                println!("note {note}: {n}");
            }
            Ok(if f.violation_count() == 0 { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
