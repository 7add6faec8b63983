//! Acceptance criteria. Each test prints one `criterion N: PASS|FAIL` line
//! and fails when the criterion does not hold. Run with `--nocapture` to see
//! the lines alongside the details.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use canvaslab::canvas::{Canvas, ListAssignment};
use canvaslab::colorer::{extend, thomassen_color, BoundaryColorings, ColorError, ExtensionOracle, PartialColoring};
use canvaslab::critical::{extract_minimal_extender, is_critical_canvas};
use canvaslab::deficiency::{self, decomposition_check, rat, Params};
use canvaslab::fixtures;
use canvaslab::genlab::{enumerate_plane_graphs, random_lists, random_plane_graph, random_thomassen_instance, GenSpec, ListMode};
use canvaslab::plane_graph::PlaneGraph;
use canvaslab::verifier::{instances, scan, ScanFooter, ScanOptions, ScanOutcome, TheoremId};
use common::{brute_critical, cycle_colorings, extends};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, what: &str, failures: &[String], detail: &str) {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {n}: {verdict} [{what}] {detail}");
    for f in failures.iter().take(10) {
        println!("  {f}");
    }
    assert!(failures.is_empty(), "criterion {n} failed: {}", failures.join("; "));
}

fn scan_spec() -> GenSpec {
    let mut spec = GenSpec::new(vec![3, 4, 5], 2, ListMode::Singleton);
    spec.universe = 5;
    spec
}

struct ScanRun {
    footer: ScanFooter,
    report: Vec<u8>,
}

fn run_scan(jobs: usize, resume_after: Option<usize>) -> ScanRun {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.jsonl");
    let checkpoint = dir.path().join("scan.ckpt");
    let mut opts = ScanOptions {
        jobs,
        report: Some(report.clone()),
        verbose: true,
        checkpoint: resume_after.map(|_| checkpoint.clone()),
        stop_after_batches: resume_after,
        ..ScanOptions::default()
    };
    let spec = scan_spec();
    let suite = TheoremId::default_suite();
    let p = Params::standard();
    let mut outcome = scan(&spec, &p, &suite, &opts).unwrap();
    if resume_after.is_some() {
        assert!(matches!(outcome, ScanOutcome::Interrupted { .. }), "scan finished before the interruption point");
        opts.stop_after_batches = None;
        outcome = scan(&spec, &p, &suite, &opts).unwrap();
        assert!(!checkpoint.exists());
    }
    let ScanOutcome::Complete(footer) = outcome else { panic!("scan did not complete") };
    ScanRun { footer, report: std::fs::read(&report).unwrap() }
}

fn main_scan() -> &'static ScanRun {
    static RUN: OnceLock<ScanRun> = OnceLock::new();
    RUN.get_or_init(|| run_scan(1, None))
}

fn tally_line(f: &ScanFooter, ids: &[TheoremId]) -> String {
    ids.iter()
        .map(|id| {
            let t = f.per_theorem[id];
            format!("{id} {}/{}/{}", t.pass, t.fail, t.skip)
        })
        .collect::<Vec<_>>()
        .join(", ")
}

#[test]
fn criterion_1_exhaustive_scan() {
    let run = main_scan();
    let f = &run.footer;
    let ids = [
        TheoremId::DeficiencyPositive,
        TheoremId::ChordOrTripod,
        TheoremId::InternalDegreeFive,
        TheoremId::NoShortSeparatingCycle,
        TheoremId::FaceLength,
        TheoremId::LinearSize,
    ];
    let mut failures = Vec::new();
    for id in ids {
        let t = f.per_theorem[&id];
        if t.fail > 0 {
            failures.push(format!("{id}: {} violations", t.fail));
        }
    }
    // every critical instance must carry a chord-or-tripod witness
    if f.per_theorem[&TheoremId::ChordOrTripod].pass != f.critical {
        failures.push(format!("chord-or-tripod passed {} of {} critical", f.per_theorem[&TheoremId::ChordOrTripod].pass, f.critical));
    }
    // independent recount: brute-force criticality and the plain counting checks
    let k_of = |t: &Canvas| t.outer.len();
    let mut critical = 0u64;
    for inst in instances(&scan_spec()).unwrap() {
        let t = &inst.canvas;
        if !brute_critical(t) {
            continue;
        }
        critical += 1;
        let k = k_of(t) as i64;
        let def = t.graph.edge_count() as i64 - k - 3 * (t.graph.vertex_count() as i64 - k);
        if def < 1 {
            failures.push(format!("instance {}: independent def = {def}", inst.index));
        }
        for v in t.internal_vertices() {
            if t.graph.degree(v) < 5 {
                failures.push(format!("instance {}: internal vertex {v} has degree {}", inst.index, t.graph.degree(v)));
            }
        }
        if t.graph.vertex_count() > 19 * t.outer.len() {
            failures.push(format!("instance {}: too many vertices", inst.index));
        }
    }
    if critical != f.critical {
        failures.push(format!("brute-force critical count {critical} differs from scan {}", f.critical));
    }
    let detail = format!("examined {} critical {}: {}", f.examined, f.critical, tally_line(f, &ids));
    report(1, "exhaustive scan k 3..5, m <= 2, singleton, U = 5", &failures, &detail);
}

#[test]
fn criterion_2_potential_and_strong_linear() {
    let p = Params::standard();
    assert_eq!((p.eps(), p.alpha(), p.gamma()), (rat(1, 18), rat(1, 12), rat(2, 3)));
    let run = main_scan();
    let f = &run.footer;
    let ids = [TheoremId::PotentialBound, TheoremId::StrongLinear];
    let mut failures: Vec<String> =
        ids.iter().filter(|id| f.per_theorem[id].fail > 0).map(|id| format!("{id}: {} violations", f.per_theorem[id].fail)).collect();
    // independent check of the strong linear bound on every critical instance,
    // with internal faces traced directly from the rotations
    let mut applicable_potential = 0;
    for inst in instances(&scan_spec()).unwrap() {
        let t = &inst.canvas;
        if !brute_critical(t) {
            continue;
        }
        let k = t.outer.len() as i64;
        let v = t.internal_count() as i64;
        let excess: i64 = internal_face_lengths(t).iter().map(|&l| l as i64 - 3).sum();
        if rat(v, 18) + rat(excess, 1) > rat(k - 4, 1) {
            failures.push(format!("instance {}: v/18 + excess = {} > {}", inst.index, rat(v, 18) + rat(excess, 1), k - 4));
        }
        if v >= 2 {
            applicable_potential += 1;
            let d = deficiency::d_value(t, &p).unwrap();
            if d < rat(7, 3) {
                failures.push(format!("instance {}: d = {d} < 7/3", inst.index));
            }
        }
    }
    // the scan has no critical canvas with two internal vertices, so the
    // potential bound is also checked on a fixture where it applies
    let hubs = fixtures::hexagon_hubs();
    assert!(brute_critical(&hubs));
    let d = deficiency::d_value(&hubs, &p).unwrap();
    if d < rat(7, 3) {
        failures.push(format!("hexagon with two hubs: d = {d} < 7/3"));
    }
    let detail = format!(
        "{}; critical instances with v >= 2 in scan: {applicable_potential}; hexagon_hubs d = {d}",
        tally_line(f, &ids)
    );
    report(2, "potential bound and strong linear bound", &failures, &detail);
}

/// Lengths of the internal faces, from the dart orbits of the rotation
/// system. The outer face is the orbit through the outer dart.
fn internal_face_lengths(t: &Canvas) -> Vec<usize> {
    let g = &t.graph;
    let outer_dart = g.outer_dart().unwrap();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for u in g.vertices() {
        for &v in g.rotation(u) {
            if seen.contains(&(u, v)) {
                continue;
            }
            let (mut a, mut b) = (u, v);
            let mut len = 0;
            let mut outer = false;
            while seen.insert((a, b)) {
                len += 1;
                outer |= (a, b) == (outer_dart.0, outer_dart.1);
                let r = g.rotation(b);
                let i = r.iter().position(|&x| x == a).unwrap();
                let next = r[(i + 1) % r.len()];
                a = b;
                b = next;
            }
            if !outer {
                out.push(len);
            }
        }
    }
    out
}

/// A random 2-connected G' between C and G: some edges off C deleted, then
/// internal vertices left isolated dropped.
fn random_subgraph(t: &Canvas, rng: &mut ChaCha8Rng) -> Option<PlaneGraph> {
    let cyc = t.outer.edge_set();
    let off: Vec<_> = t.graph.edges().into_iter().filter(|e| !cyc.contains(e)).collect();
    if off.is_empty() {
        return None;
    }
    for _ in 0..20 {
        let drop: BTreeSet<_> = off.iter().filter(|_| rng.gen_bool(0.3)).copied().collect();
        let mut keep = t.graph.present_mask().to_vec();
        let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
        for (u, v) in t.graph.edges() {
            if !drop.contains(&(u, v)) {
                *deg.entry(u).or_default() += 1;
                *deg.entry(v).or_default() += 1;
            }
        }
        for v in t.graph.vertices() {
            if deg.get(&v).copied().unwrap_or(0) == 0 {
                keep[v] = false;
            }
        }
        let h = t.graph.subgraph(&keep, |u, v| !drop.contains(&(u.min(v), u.max(v))));
        if h.is_two_connected() {
            return Some(h);
        }
    }
    None
}

#[test]
fn criterion_3_formula_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let p = Params::standard();
    let mut failures = Vec::new();
    let (mut canvases, mut decompositions) = (0, 0);
    let (mut literal_fail, mut keeps_contacts, mut keeps_contacts_fail) = (0, 0, 0);
    let mut first_literal: Option<String> = None;
    while canvases < 10_000 {
        let k = rng.gen_range(3..=8);
        let internal = rng.gen_range(0..=6);
        let extra = rng.gen_range(0..=6);
        let g = random_plane_graph(k, internal, extra, &mut rng);
        let outer = g.outer_cycle().unwrap();
        let lists = random_lists(&g, &outer, &[1, 2, 3], 6, &mut rng);
        let t = Canvas::new(g, lists).unwrap();
        if !t.validate().ok {
            continue;
        }
        canvases += 1;
        let off = t.graph.edge_count() as i64 - k as i64;
        let v = t.internal_count() as i64;
        let counted = off - 3 * v;
        let traced = k as i64 - 3 - internal_face_lengths(&t).iter().map(|&l| l as i64 - 3).sum::<i64>();
        let lib = deficiency::deficiency(&t);
        let via = deficiency::deficiency_via_faces(&t).unwrap();
        if lib != counted || via != counted || traced != counted {
            failures.push(format!("def mismatch: counted {counted}, traced {traced}, library {lib}, via faces {via}"));
        }
        let Some(h) = random_subgraph(&t, &mut rng) else { continue };
        decompositions += 1;
        let r = decomposition_check(&t, &h, &p).unwrap();
        if !(r.def_equal && r.v_equal && r.whole.def == counted && r.parts.def == counted) {
            failures.push(format!("decomposition identity: whole {:?} parts {:?}", r.whole, r.parts));
        }
        // an internal vertex keeping its vertex but losing its edges to C
        let contacts_kept = t.graph.edges().iter().all(|&(a, b)| {
            t.outer.contains(a) == t.outer.contains(b) || !h.contains(a) || !h.contains(b) || h.has_edge(a, b)
        });
        keeps_contacts += contacts_kept as u32;
        if !(r.b_le && r.q_le && r.s_le && r.d_ge) {
            literal_fail += 1;
            keeps_contacts_fail += contacts_kept as u32;
            first_literal.get_or_insert_with(|| format!("{:?} vs {:?}, G' = {:?}", r.whole, r.parts, h.edges()));
        }
    }
    if literal_fail > 0 {
        failures.push(format!(
            "surplus inequalities violated on {literal_fail} of {decompositions} subgraphs; first: {}",
            first_literal.unwrap()
        ));
    }
    let detail = format!(
        "{canvases} canvases, {decompositions} subgraphs; surplus violations {literal_fail} overall, \
         {keeps_contacts_fail} of {keeps_contacts} among subgraphs keeping every edge to C"
    );
    report(3, "deficiency identities and surplus inequalities", &failures, &detail);
}

fn naive_extends(g: &PlaneGraph, lists: &ListAssignment, phi: &PartialColoring) -> bool {
    if phi.domain_size() > 0 {
        return extends(g, lists, &phi.pairs());
    }
    // no precoloring: the product over the cycle lists, then the rest
    let t = Canvas::new(g.clone(), lists.clone()).unwrap();
    cycle_colorings(&t).iter().any(|p| extends(g, lists, p))
}

#[test]
fn criterion_4_colorer_matches_naive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    let (mut graphs, mut queries) = (0, 0);
    for k in 3..=5 {
        for g in enumerate_plane_graphs(k, 2, None) {
            if g.vertex_count() > 10 {
                continue;
            }
            graphs += 1;
            let outer = g.outer_cycle().unwrap();
            for _ in 0..200 {
                let lists = random_lists(&g, &outer, &[1, 2, 3], 6, &mut rng);
                let mut phis = vec![PartialColoring::new(g.n())];
                phis.extend(BoundaryColorings::for_cycle(&outer, &lists).take(3));
                // one precoloring that may be improper on a chord
                let pairs: Vec<_> = outer.vertices().iter().map(|&v| (v, *lists.get(v).choose(&mut rng).unwrap())).collect();
                phis.push(PartialColoring::from_pairs(g.n(), &pairs));
                for phi in phis {
                    queries += 1;
                    let expected = naive_extends(&g, &lists, &phi);
                    match extend(&g, &lists, &phi) {
                        Ok(Some(col)) => {
                            let proper = g.vertices().all(|v| col.get(v).is_some_and(|c| lists.contains(v, c)))
                                && g.edges().iter().all(|&(a, b)| col.get(a) != col.get(b))
                                && phi.pairs().iter().all(|&(v, c)| col.get(v) == Some(c));
                            if !proper || !expected {
                                failures.push(format!("extend found a coloring for {:?} the naive search rejects", phi.pairs()));
                            }
                        }
                        Ok(None) | Err(ColorError::Improper { .. }) if expected => {
                            failures.push(format!("extend refused {:?}, naive search extends it", phi.pairs()))
                        }
                        Ok(None) | Err(ColorError::Improper { .. }) => {}
                        Err(e) => failures.push(format!("extend error {e}")),
                    }
                }
            }
        }
    }
    report(4, "colorer against naive enumeration", &failures, &format!("{graphs} graphs, {queries} queries"));
}

#[test]
fn criterion_5_thomassen_colorings() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = Vec::new();
    for i in 0..1000 {
        let inst = random_thomassen_instance(30, &mut rng);
        let g = &inst.graph;
        assert!(g.vertex_count() <= 30);
        match thomassen_color(g, &inst.z, &inst.s, &inst.lists) {
            Err(e) => failures.push(format!("instance {i}: {e}")),
            Ok(col) => {
                let from_lists = g.vertices().all(|v| col.get(v).is_some_and(|c| inst.lists.get(v).contains(&c)));
                let proper = g.edges().iter().all(|&(a, b)| col.get(a) != col.get(b));
                if !from_lists || !proper {
                    failures.push(format!("instance {i}: improper coloring"));
                }
            }
        }
    }
    report(5, "thomassen colorings", &failures, "1000 instances with at most 30 vertices");
}

#[test]
fn criterion_6_extractor_contract() {
    let mut failures = Vec::new();
    let (mut examined, mut cycles) = (0, 0);
    let mut oracle = ExtensionOracle::new();
    for inst in instances(&scan_spec()).unwrap() {
        let t = &inst.canvas;
        examined += 1;
        let ext = extract_minimal_extender(&t.graph, &t.outer, &t.lists, &mut oracle).unwrap();
        let h = Canvas { graph: ext.graph.clone(), outer: t.outer.clone(), lists: t.lists.clone() };
        let cols = cycle_colorings(t);
        let property = |hg: &PlaneGraph| cols.iter().all(|p| !extends(hg, &t.lists, p) || extends(&t.graph, &t.lists, p));
        let id = inst.index;
        if !edge_subset(&h.graph, &t.graph) || !t.outer.vertices().iter().all(|&v| h.graph.contains(v)) {
            failures.push(format!("instance {id}: H is not a subgraph of G containing C"));
        }
        if !property(&h.graph) {
            failures.push(format!("instance {id}: P(H) fails"));
        }
        let cyc = t.outer.edge_set();
        for (u, v) in h.graph.edges().into_iter().filter(|e| !cyc.contains(e)) {
            if property(&h.graph.without_edge(u, v)) {
                failures.push(format!("instance {id}: P(H - {u}{v}) still holds"));
            }
        }
        if h.internal_vertices().iter().any(|&v| h.graph.degree(v) == 0) {
            failures.push(format!("instance {id}: H keeps an isolated vertex"));
        }
        let is_cycle = h.graph.edge_count() == t.outer.len() && h.graph.vertex_count() == t.outer.len();
        cycles += is_cycle as u32;
        if is_cycle != ext.is_cycle || (!is_cycle && !brute_critical(&h)) {
            failures.push(format!("instance {id}: H is neither C nor C-critical"));
        }
        if h.graph.vertex_count() > 19 * t.outer.len() {
            failures.push(format!("instance {id}: |V(H)| = {}", h.graph.vertex_count()));
        }
    }
    let detail = format!("{examined} instances, H = C on {cycles}");
    report(6, "extractor contract", &failures, &detail);
}

fn edge_subset(h: &PlaneGraph, g: &PlaneGraph) -> bool {
    h.edges().iter().all(|&(a, b)| g.has_edge(a, b))
}

#[test]
fn criterion_7_worked_fixtures() {
    let p = Params::standard();
    let mut failures = Vec::new();
    let mut oracle = ExtensionOracle::new();

    let w5 = fixtures::w5();
    let cert = is_critical_canvas(&w5, &mut oracle).unwrap();
    let (def, d) = (deficiency::deficiency(&w5), deficiency::d_value(&w5, &p).unwrap());
    // ten edges, five on C, one internal vertex; s = 1/18 + 2/12
    if !(cert.verdict && brute_critical(&w5) && def == 10 - 5 - 3 && d == rat(2, 1) - rat(1, 18) - rat(2, 12)) {
        failures.push(format!("W5: critical {}, def {def}, d {d}", cert.verdict));
    }

    let c4e = fixtures::c4e();
    let cert = is_critical_canvas(&c4e, &mut oracle).unwrap();
    let def = deficiency::deficiency(&c4e);
    if !(cert.verdict && brute_critical(&c4e) && def == 5 - 4) {
        failures.push(format!("C4e: critical {}, def {def}", cert.verdict));
    }

    let k4 = fixtures::k4(&[1, 2, 3, 4]);
    let cert = is_critical_canvas(&k4, &mut oracle).unwrap();
    let ext = extract_minimal_extender(&k4.graph, &k4.outer, &k4.lists, &mut oracle).unwrap();
    let h_is_c = ext.graph.vertex_count() == 3 && ext.graph.edge_count() == 3;
    if cert.verdict || brute_critical(&k4) || !ext.is_cycle || !h_is_c {
        failures.push(format!("K4: critical {}, H is C {}", cert.verdict, h_is_c));
    }
    report(7, "worked fixtures", &failures, "W5 def 2 d 16/9, C4e def 1, K4 H = C");
}

#[test]
fn criterion_8_deterministic_reports() {
    let base = &main_scan().report;
    let mut failures = Vec::new();
    if run_scan(4, None).report != *base {
        failures.push("report with 4 jobs differs from 1 job".to_string());
    }
    if run_scan(4, Some(5)).report != *base {
        failures.push("report after checkpoint and resume differs".to_string());
    }
    let detail = format!("{} report bytes", base.len());
    report(8, "byte-identical reports across jobs and resume", &failures, &detail);
}
