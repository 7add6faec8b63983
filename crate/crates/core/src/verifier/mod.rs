//! Theorem checks over single canvases, and the scan harness built on them.

mod certificate;
mod scan;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::canvas::{subcanvas_by_cycle, Canvas};
use crate::colorer::ExtensionOracle;
use crate::critical::{check_extender_contract, extract_minimal_extender, is_critical_canvas, CriticalError, CriticalityCertificate};
use crate::deficiency::{
    self, decomposition_check, defbound_check, fmt_rat, int, split_bounds_check, Params, Split,
};
use crate::plane_graph::PlaneGraph;
use crate::structure::{self, PodKind};

pub use certificate::{replay_certificate, Certificate, CheckKind, ReplayError, ReplayVerdict};
pub use scan::{instances, scan, Instance, ScanError, ScanFooter, ScanHeader, ScanOptions, ScanOutcome, TheoremTally};

/// The checkable statements. Ids are stable strings used in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    /// Critical canvases are 2-connected.
    CriticalTwoConnected,
    /// Disks of critical canvases bounded by cycles with material inside are critical.
    SubcycleCriticality,
    /// A critical canvas has a chord or a vertex with three contacts and at most one material face.
    ChordOrTripod,
    /// Cycles of length at most four bound no vertices in a critical canvas.
    NoShortSeparatingCycle,
    /// Internal vertices of a critical canvas have degree at least five.
    InternalDegreeFive,
    /// def = |C| − 3 − Σ(|f| − 3).
    FaceFormula,
    /// def(G) = def(G') + Σ def(G[f]).
    DeficiencyDecomposition,
    /// Critical canvases have def ≥ 1.
    DeficiencyPositive,
    /// def ≥ 2v − |E(G − V(C))| when internal degrees are at least five.
    DeficiencyLowerBound,
    /// v, b, q, s and d against G' and its face disks.
    SurplusSum,
    /// Chord and two-contact split bounds on d.
    SplitBounds,
    /// Exact d for v ≤ 1.
    SmallPotential,
    /// d ≥ 3 − γ for critical canvases with v ≥ 2.
    PotentialBound,
    /// v/18 + Σ(|f| − 3) ≤ |C| − 4 for critical canvases.
    StrongLinear,
    /// Internal faces of critical canvases are shorter than |C| − 1.
    FaceLength,
    /// |V(G)| ≤ 19 |V(C)| for critical canvases.
    LinearSize,
    /// The minimal extender H satisfies P(H), is minimal, is C or critical,
    /// and has at most 19 |V(C)| vertices.
    ExtenderContract,
    /// Every tripod of a critical canvas is regular (optional replication).
    TripodRegular,
    /// One-step relaxations of critical canvases at regular tripods are
    /// critical with v ≥ 2 (optional replication).
    RelaxationCritical,
}

impl TheoremId {
    pub const ALL: [TheoremId; 19] = [
        TheoremId::CriticalTwoConnected,
        TheoremId::SubcycleCriticality,
        TheoremId::ChordOrTripod,
        TheoremId::NoShortSeparatingCycle,
        TheoremId::InternalDegreeFive,
        TheoremId::FaceFormula,
        TheoremId::DeficiencyDecomposition,
        TheoremId::DeficiencyPositive,
        TheoremId::DeficiencyLowerBound,
        TheoremId::SurplusSum,
        TheoremId::SplitBounds,
        TheoremId::SmallPotential,
        TheoremId::PotentialBound,
        TheoremId::StrongLinear,
        TheoremId::FaceLength,
        TheoremId::LinearSize,
        TheoremId::ExtenderContract,
        TheoremId::TripodRegular,
        TheoremId::RelaxationCritical,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::CriticalTwoConnected => "critical-two-connected",
            TheoremId::SubcycleCriticality => "subcycle-criticality",
            TheoremId::ChordOrTripod => "chord-or-tripod",
            TheoremId::NoShortSeparatingCycle => "no-short-separating-cycle",
            TheoremId::InternalDegreeFive => "internal-degree-five",
            TheoremId::FaceFormula => "face-formula",
            TheoremId::DeficiencyDecomposition => "deficiency-decomposition",
            TheoremId::DeficiencyPositive => "deficiency-positive",
            TheoremId::DeficiencyLowerBound => "deficiency-lower-bound",
            TheoremId::SurplusSum => "surplus-sum",
            TheoremId::SplitBounds => "split-bounds",
            TheoremId::SmallPotential => "small-potential",
            TheoremId::PotentialBound => "potential-bound",
            TheoremId::StrongLinear => "strong-linear",
            TheoremId::FaceLength => "face-length",
            TheoremId::LinearSize => "linear-size",
            TheoremId::ExtenderContract => "extender-contract",
            TheoremId::TripodRegular => "tripod-regular",
            TheoremId::RelaxationCritical => "relaxation-critical",
        }
    }

    /// Checks whose hypothesis is criticality.
    pub fn needs_critical(self) -> bool {
        !matches!(
            self,
            TheoremId::FaceFormula
                | TheoremId::DeficiencyDecomposition
                | TheoremId::DeficiencyLowerBound
                | TheoremId::SurplusSum
                | TheoremId::SplitBounds
                | TheoremId::SmallPotential
                | TheoremId::ExtenderContract
        )
    }

    /// Diagnostics that only run when asked for.
    pub fn is_replication(self) -> bool {
        matches!(self, TheoremId::TripodRegular | TheoremId::RelaxationCritical)
    }

    /// Everything except the optional replications.
    pub fn default_suite() -> BTreeSet<TheoremId> {
        TheoremId::ALL.into_iter().filter(|t| !t.is_replication()).collect()
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<TheoremId, String> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub status: Status,
    pub detail: String,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Outcome {
        Outcome { status: Status::Pass, detail: detail.into() }
    }

    fn fail(detail: impl Into<String>) -> Outcome {
        Outcome { status: Status::Fail, detail: detail.into() }
    }

    fn skip(reason: impl Into<String>) -> Outcome {
        Outcome { status: Status::Skip, detail: reason.into() }
    }

    fn check(ok: bool, detail: String) -> Outcome {
        if ok {
            Outcome::pass(detail)
        } else {
            Outcome::fail(detail)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub theorem: TheoremId,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceResult {
    pub critical: bool,
    pub certificate: CriticalityCertificate,
    pub checks: Vec<CheckResult>,
    /// Observations that are not violations, such as disagreement with the
    /// all-vertices reading of the lower-bound equality case.
    pub notes: Vec<String>,
    pub oracle_queries: u64,
}

impl InstanceResult {
    pub fn outcome(&self, id: TheoremId) -> Option<&Outcome> {
        self.checks.iter().find(|c| c.theorem == id).map(|c| &c.outcome)
    }
}

/// Criticality certificate of a canvas; a bare cycle is reported as not
/// critical rather than as an error.
pub fn criticality_certificate(
    t: &Canvas,
    oracle: &mut ExtensionOracle,
) -> Result<CriticalityCertificate, CriticalError> {
    criticality(t, oracle)
}

pub(crate) fn criticality(t: &Canvas, oracle: &mut ExtensionOracle) -> Result<CriticalityCertificate, CriticalError> {
    match is_critical_canvas(t, oracle) {
        Err(CriticalError::EqualsT) => Ok(CriticalityCertificate { verdict: false, witnesses: Vec::new() }),
        other => other,
    }
}

/// 2-connected subgraphs containing C used for the decomposition checks:
/// C alone, G, and G minus one edge or internal vertex when that stays
/// 2-connected.
pub fn decomposition_candidates(t: &Canvas) -> Vec<PlaneGraph> {
    let mut out = vec![t.cycle_graph(), t.graph.clone()];
    let cyc = t.outer.edge_set();
    for (u, v) in t.graph.edges() {
        if !cyc.contains(&(u, v)) {
            let h = t.graph.without_edge(u, v);
            if h.is_two_connected() {
                out.push(h);
            }
        }
    }
    for v in t.internal_vertices() {
        let h = t.graph.without_vertex(v);
        if h.is_two_connected() {
            out.push(h);
        }
    }
    out
}

/// Splits with real edges: every chord, and every internal vertex with a
/// pair of neighbors on C.
pub fn real_splits(t: &Canvas) -> Vec<Split> {
    let mut out: Vec<Split> = structure::chords(t).into_iter().map(|(u, v)| Split::Chord(u, v)).collect();
    for v in t.internal_vertices() {
        let us = structure::contacts(t, v);
        for i in 0..us.len() {
            for j in i + 1..us.len() {
                let (u1, u2) = (us[i].min(us[j]), us[i].max(us[j]));
                out.push(Split::Vertex { v, u1, u2 });
            }
        }
    }
    out
}

struct Ctx<'a> {
    t: &'a Canvas,
    p: &'a Params,
    oracle: ExtensionOracle,
    notes: Vec<String>,
}

impl Ctx<'_> {
    fn run(&mut self, id: TheoremId, critical: bool) -> Result<Outcome, String> {
        let t = self.t;
        let p = self.p;
        let e = |x: &dyn fmt::Display| x.to_string();
        if id.needs_critical() && !critical {
            return Ok(Outcome::skip("not critical"));
        }
        let v = t.internal_count();
        Ok(match id {
            TheoremId::CriticalTwoConnected => {
                Outcome::check(t.graph.is_two_connected(), "2-connected".into())
            }
            TheoremId::SubcycleCriticality => {
                let mut checked = 0;
                for c in t.graph.simple_cycles(t.graph.vertex_count()) {
                    if c.same_cycle(&t.outer) {
                        continue;
                    }
                    let sub = subcanvas_by_cycle(t, &c).map_err(|x| e(&x))?;
                    if sub.graph.edge_count() == c.len() {
                        continue;
                    }
                    checked += 1;
                    if !criticality(&sub, &mut self.oracle).map_err(|x| e(&x))?.verdict {
                        return Ok(Outcome::fail(format!("disk of {c} is not critical")));
                    }
                }
                Outcome::pass(format!("{checked} disks"))
            }
            TheoremId::ChordOrTripod => {
                if let Some(&(a, b)) = structure::chords(t).first() {
                    Outcome::pass(format!("chord ({a},{b})"))
                } else {
                    match structure::tripod_alternative(t).map_err(|x| e(&x))? {
                        Some(structure::ChordOrTripod::Vertex { vertex, material_faces, .. }) => {
                            Outcome::pass(format!("vertex {vertex}, {material_faces} material faces"))
                        }
                        _ => Outcome::fail("no chord and no qualifying vertex"),
                    }
                }
            }
            TheoremId::NoShortSeparatingCycle => {
                for c in t.graph.simple_cycles(4) {
                    let disk = t.graph.disk_subgraph(&c).map_err(|x| e(&x))?;
                    if disk.graph.vertex_count() != c.len() {
                        return Ok(Outcome::fail(format!("{c} bounds {} inner vertices", disk.graph.vertex_count() - c.len())));
                    }
                }
                Outcome::pass("no vertex inside a cycle of length at most 4")
            }
            TheoremId::InternalDegreeFive => {
                match t.internal_vertices().into_iter().find(|&x| t.graph.degree(x) < 5) {
                    Some(x) => Outcome::fail(format!("vertex {x} has degree {}", t.graph.degree(x))),
                    None => Outcome::pass("all internal degrees at least 5"),
                }
            }
            TheoremId::FaceFormula => {
                let a = deficiency::deficiency(t);
                let b = deficiency::deficiency_via_faces(t).map_err(|x| e(&x))?;
                Outcome::check(a == b, format!("def={a} faces={b}"))
            }
            TheoremId::DeficiencyPositive => {
                let d = deficiency::deficiency(t);
                Outcome::check(d >= 1, format!("def={d}"))
            }
            TheoremId::DeficiencyDecomposition | TheoremId::SurplusSum => {
                let cands = decomposition_candidates(t);
                for (i, g2) in cands.iter().enumerate() {
                    let r = decomposition_check(t, g2, p).map_err(|x| e(&x))?;
                    let ok = if id == TheoremId::DeficiencyDecomposition {
                        r.def_equal
                    } else {
                        r.v_equal && r.b_le && r.q_le && r.s_le && r.d_ge
                    };
                    if !ok {
                        return Ok(Outcome::fail(format!(
                            "subgraph #{i}: whole def={} v={} b={} q={} s={} d={}; parts def={} v={} b={} q={} s={} d={}",
                            r.whole.def, r.whole.v, r.whole.b, r.whole.q, fmt_rat(&r.whole.s), fmt_rat(&r.whole.d),
                            r.parts.def, r.parts.v, r.parts.b, r.parts.q, fmt_rat(&r.parts.s), fmt_rat(&r.parts.d),
                        )));
                    }
                }
                Outcome::pass(format!("{} subgraphs", cands.len()))
            }
            TheoremId::DeficiencyLowerBound => {
                let r = defbound_check(t);
                if !r.applicable {
                    Outcome::skip("an internal vertex has degree below 5")
                } else {
                    if r.equality != r.all_degree_five {
                        self.notes.push("lower-bound-equality-all-vertices-reading-differs".into());
                    }
                    if r.internal_reading_diverges {
                        self.notes.push("lower-bound-equality-internal-reading-differs".into());
                    }
                    Outcome::check(
                        r.holds && r.equality == r.equality_predicted,
                        format!("def={} bound={} equality={} chords={}", r.def, r.rhs, r.equality, r.chords),
                    )
                }
            }
            TheoremId::SplitBounds => {
                let splits = real_splits(t);
                for s in &splits {
                    let r = split_bounds_check(t, *s, p).map_err(|x| e(&x))?;
                    if !r.holds {
                        return Ok(Outcome::fail(format!(
                            "{s:?}: d={} d1={} d2={} bound={}",
                            fmt_rat(&r.d_whole), fmt_rat(&r.d1), fmt_rat(&r.d2), fmt_rat(&r.bound)
                        )));
                    }
                }
                Outcome::pass(format!("{} splits", splits.len()))
            }
            TheoremId::SmallPotential => {
                let d = deficiency::d_value(t, p).map_err(|x| e(&x))?;
                let off = (t.graph.edge_count() - t.outer.len()) as i64;
                match v {
                    0 => Outcome::check(d == int(off), format!("d={} off-cycle edges={off}", fmt_rat(&d))),
                    1 => {
                        let want = int(off - 3) - p.vertex_cost();
                        Outcome::check(d == want, format!("d={} expected={}", fmt_rat(&d), fmt_rat(&want)))
                    }
                    _ => Outcome::skip("v ≥ 2"),
                }
            }
            TheoremId::PotentialBound => {
                if v < 2 {
                    Outcome::skip(format!("v = {v} < 2"))
                } else {
                    let d = deficiency::d_value(t, p).map_err(|x| e(&x))?;
                    let bound = int(3) - p.gamma();
                    Outcome::check(d >= bound, format!("d={} bound={}", fmt_rat(&d), fmt_rat(&bound)))
                }
            }
            TheoremId::StrongLinear => {
                let faces: i64 = t
                    .graph
                    .internal_faces()
                    .map_err(|x| e(&x))?
                    .iter()
                    .map(|f| f.len() as i64 - 3)
                    .sum();
                let lhs = deficiency::rat(v as i64, 18) + int(faces);
                let rhs = int(t.outer.len() as i64 - 4);
                Outcome::check(lhs <= rhs, format!("lhs={} rhs={}", fmt_rat(&lhs), fmt_rat(&rhs)))
            }
            TheoremId::FaceLength => {
                let k = t.outer.len();
                let longest = t.graph.internal_faces().map_err(|x| e(&x))?.iter().map(|f| f.len()).max().unwrap_or(0);
                if longest + 1 == k {
                    // the strong linear bound only gives |f| ≤ |C| − 1
                    self.notes.push("face-length-non-strict-bound-only".into());
                }
                Outcome::check(longest + 1 < k, format!("longest internal face {longest}, |C| = {k}"))
            }
            TheoremId::LinearSize => {
                let n = t.graph.vertex_count();
                let k = t.outer.len();
                Outcome::check(n <= 19 * k, format!("|V|={n} bound={}", 19 * k))
            }
            TheoremId::ExtenderContract => {
                let ext = extract_minimal_extender(&t.graph, &t.outer, &t.lists, &mut self.oracle).map_err(|x| e(&x))?;
                let breach =
                    check_extender_contract(&t.graph, &t.outer, &t.lists, &ext.graph, &mut self.oracle).map_err(|x| e(&x))?;
                let n = ext.graph.vertex_count();
                let k = t.outer.len();
                let shape_ok = ext.is_cycle || ext.certificate.as_ref().is_some_and(|c| c.verdict);
                match breach {
                    Some(b) => Outcome::fail(b),
                    None if !shape_ok => Outcome::fail("H is neither C nor critical"),
                    None => Outcome::check(n <= 19 * k, format!("|V(H)|={n} edges={} cycle={}", ext.graph.edge_count(), ext.is_cycle)),
                }
            }
            TheoremId::TripodRegular => {
                for x in structure::boundary_tripod_candidates(t) {
                    let pod = structure::classify_pod(t, x).map_err(|x| e(&x))?;
                    if pod.kind == PodKind::Tripod && !pod.regular {
                        return Ok(Outcome::fail(format!("tripod {x} is not regular")));
                    }
                }
                Outcome::pass("every tripod regular")
            }
            TheoremId::RelaxationCritical => {
                let mut n = 0;
                for x in structure::boundary_tripod_candidates(t) {
                    let Ok(r) = structure::relax(t, x) else { continue };
                    n += 1;
                    if r.internal_count() < 2 || !criticality(&r, &mut self.oracle).map_err(|x| e(&x))?.verdict {
                        return Ok(Outcome::fail(format!("relaxation at {x} is not critical with v ≥ 2")));
                    }
                }
                Outcome::pass(format!("{n} relaxations"))
            }
        })
    }
}

/// Run the selected checks on one canvas. Criticality-conditioned checks
/// run only when the criticality certificate is positive.
pub fn check_instance(t: &Canvas, p: &Params, suite: &BTreeSet<TheoremId>) -> InstanceResult {
    let mut ctx = Ctx { t, p, oracle: ExtensionOracle::from_env(), notes: Vec::new() };
    let certificate = match criticality(t, &mut ctx.oracle) {
        Ok(c) => c,
        Err(err) => {
            // only reachable for malformed input; every check reports it
            let checks = suite
                .iter()
                .map(|&id| CheckResult { theorem: id, outcome: Outcome::fail(format!("criticality test failed: {err}")) })
                .collect();
            return InstanceResult {
                critical: false,
                certificate: CriticalityCertificate { verdict: false, witnesses: Vec::new() },
                checks,
                notes: Vec::new(),
                oracle_queries: ctx.oracle.stats().queries,
            };
        }
    };
    let critical = certificate.verdict;
    let mut checks = Vec::new();
    for &id in suite {
        let outcome = ctx.run(id, critical).unwrap_or_else(|err| Outcome::fail(format!("error: {err}")));
        checks.push(CheckResult { theorem: id, outcome });
    }
    InstanceResult { critical, certificate, checks, notes: ctx.notes, oracle_queries: ctx.oracle.stats().queries }
}
