//! Instance generation: exhaustive enumeration of small plane graphs with a
//! fixed outer cycle, list assignments, and seeded random instances.
//!
//! Every 2-connected plane graph with outer cycle C has an ear decomposition
//! starting from C, and each ear lies inside a face of the graph built so
//! far. Enumeration therefore closes the bare cycle under "draw a path of
//! j ≥ 0 new vertices between two vertices of an internal face".

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canvas::{Color, ListAssignment};
use crate::colorer::BoundaryColorings;
use crate::plane_graph::{cycle_graph, edge, CycleRef, Dart, EmbeddingError, PlaneGraph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("outer cycle length must be at least 3, got {0}")]
    ShortCycle(usize),
    #[error("universe of {0} colors is too small: internal lists need 5")]
    UniverseTooSmall(usize),
    #[error("bad list mode {0:?}: expected singleton, pairs or mixed:<sizes>")]
    BadMode(String),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ListMode {
    Singleton,
    Pairs,
    /// Boundary lists of any of the given sizes.
    Mixed(Vec<usize>),
}

impl ListMode {
    pub fn sizes(&self) -> Vec<usize> {
        match self {
            ListMode::Singleton => vec![1],
            ListMode::Pairs => vec![2],
            ListMode::Mixed(s) => {
                let set: BTreeSet<usize> = s.iter().copied().filter(|&x| x > 0).collect();
                set.into_iter().collect()
            }
        }
    }
}

impl fmt::Display for ListMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ListMode::Singleton => write!(f, "singleton"),
            ListMode::Pairs => write!(f, "pairs"),
            ListMode::Mixed(s) => {
                let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                write!(f, "mixed:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for ListMode {
    type Err = GenError;

    fn from_str(s: &str) -> Result<ListMode, GenError> {
        match s {
            "singleton" => Ok(ListMode::Singleton),
            "pairs" => Ok(ListMode::Pairs),
            _ => {
                let rest = s.strip_prefix("mixed:").ok_or_else(|| GenError::BadMode(s.into()))?;
                let sizes: Result<Vec<usize>, _> = rest.split(',').map(|p| p.trim().parse::<usize>()).collect();
                match sizes {
                    Ok(v) if !v.is_empty() && v.iter().all(|&x| x > 0) => Ok(ListMode::Mixed(v)),
                    _ => Err(GenError::BadMode(s.into())),
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    /// Outer cycle lengths to enumerate, each at least 3.
    pub outer_lens: Vec<usize>,
    pub max_internal: usize,
    pub max_edges: Option<usize>,
    pub mode: ListMode,
    pub universe: usize,
    pub seed: u64,
    pub symmetry_reduction: bool,
}

impl GenSpec {
    pub fn new(outer_lens: Vec<usize>, max_internal: usize, mode: ListMode) -> GenSpec {
        let universe = if mode == ListMode::Singleton { 5 } else { 7 };
        GenSpec { outer_lens, max_internal, max_edges: None, mode, universe, seed: 0, symmetry_reduction: true }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if let Some(&k) = self.outer_lens.iter().find(|&&k| k < 3) {
            return Err(GenError::ShortCycle(k));
        }
        if self.max_internal > 0 && self.universe < 5 {
            return Err(GenError::UniverseTooSmall(self.universe));
        }
        if self.mode.sizes().is_empty() {
            return Err(GenError::BadMode(self.mode.to_string()));
        }
        Ok(())
    }
}

/// Byte string identifying a plane graph with distinguished outer face up to
/// relabeling, rotation and reflection.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(pub Vec<u8>);

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&hex::encode(&self.0))
    }
}

/// Labeling from an outer root dart: the outer walk gets 0..k, everything
/// else is numbered breadth-first, scanning each rotation counterclockwise
/// from a reference neighbor. Returns the code and the labeling.
fn rooted_code(g: &PlaneGraph, walk: &[Dart], start: usize) -> (Vec<u16>, Vec<Option<Vertex>>) {
    let k = walk.len();
    let mut label: Vec<Option<Vertex>> = vec![None; g.n()];
    let mut order = Vec::with_capacity(g.vertex_count());
    let mut reference = vec![0; g.n()];
    for i in 0..k {
        let d = walk[(start + i) % k];
        label[d.0] = Some(i);
        order.push(d.0);
        reference[d.0] = d.1;
    }
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        let rot = g.rotation(v);
        let s = rot.iter().position(|&w| w == reference[v]).unwrap_or(0);
        for i in 0..rot.len() {
            let w = rot[(s + i) % rot.len()];
            if label[w].is_none() {
                label[w] = Some(order.len());
                reference[w] = v;
                order.push(w);
            }
        }
    }
    let mut code = Vec::with_capacity(order.len() + 2 * g.edge_count());
    for &v in &order {
        let rot = g.rotation(v);
        let s = rot.iter().position(|&w| w == reference[v]).unwrap_or(0);
        code.push(rot.len() as u16);
        for i in 0..rot.len() {
            code.push(label[rot[(s + i) % rot.len()]].unwrap() as u16);
        }
    }
    (code, label)
}

/// Canonical key plus the canonically labeled graph: outer cycle on
/// `0..k` in walk order with outer dart `0 -> 1`, each rotation starting at
/// its least neighbor.
pub fn canonical_form(g: &PlaneGraph) -> Result<(CanonicalKey, PlaneGraph), EmbeddingError> {
    let outer = g.outer_face()?;
    if !outer.is_cycle() {
        return Err(EmbeddingError::OuterNotCycle(outer.vertices()));
    }
    if !g.is_connected() {
        return Err(EmbeddingError::NotACycle("graph is disconnected".into()));
    }
    let mut best: Option<(Vec<u16>, PlaneGraph, Vec<Option<Vertex>>)> = None;
    for h in [g.clone(), g.mirrored()] {
        let walk = h.outer_face()?.boundary;
        for start in 0..walk.len() {
            let (code, label) = rooted_code(&h, &walk, start);
            if best.as_ref().is_none_or(|b| code < b.0) {
                best = Some((code, h.clone(), label));
            }
        }
    }
    let (code, h, label) = best.unwrap();
    let n = h.vertex_count();
    let mut canon = h.relabeled(&label, n);
    let rotation: Vec<Vec<Vertex>> = (0..n)
        .map(|v| {
            let mut r = canon.rotation(v).to_vec();
            if let Some(i) = r.iter().enumerate().min_by_key(|(_, &w)| w).map(|(i, _)| i) {
                r.rotate_left(i);
            }
            r
        })
        .collect();
    canon = PlaneGraph::new(rotation, Some(Dart(0, 1)));
    let mut bytes = Vec::with_capacity(2 * code.len());
    for x in code {
        bytes.extend_from_slice(&x.to_be_bytes());
    }
    Ok((CanonicalKey(bytes), canon))
}

pub fn canonical_key(g: &PlaneGraph) -> Result<CanonicalKey, EmbeddingError> {
    Ok(canonical_form(g)?.0)
}

/// All 2-connected plane graphs with outer cycle length `k`, at most `m`
/// internal vertices and at most `max_edges` edges, one per equivalence
/// class, canonically labeled, ordered by (vertices, edges, key).
pub fn enumerate_plane_graphs(k: usize, m: usize, max_edges: Option<usize>) -> Vec<PlaneGraph> {
    assert!(k >= 3, "outer cycle needs length at least 3");
    let (key, base) = canonical_form(&cycle_graph(k)).expect("cycle is a valid plane graph");
    let mut found: BTreeMap<CanonicalKey, PlaneGraph> = BTreeMap::new();
    let mut queue = VecDeque::new();
    found.insert(key, base.clone());
    queue.push_back(base);
    let edge_cap = max_edges.unwrap_or(usize::MAX);
    while let Some(g) = queue.pop_front() {
        let room = m - (g.vertex_count() - k);
        for f in g.internal_faces().expect("enumerated graphs are valid") {
            let vs = f.vertices();
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    let (a, b) = (vs[i], vs[j]);
                    for len in 0..=room {
                        if len == 0 && g.has_edge(a, b) {
                            continue;
                        }
                        if g.edge_count() + len + 1 > edge_cap {
                            break;
                        }
                        let h = g.with_path_in_face(&f, a, b, len).expect("face vertices are on the face");
                        let (key, canon) = canonical_form(&h).expect("ear additions keep the outer cycle");
                        if !found.contains_key(&key) {
                            found.insert(key, canon.clone());
                            queue.push_back(canon);
                        }
                    }
                }
            }
        }
    }
    let mut out: Vec<(usize, usize, CanonicalKey, PlaneGraph)> = found
        .into_iter()
        .map(|(key, g)| (g.vertex_count(), g.edge_count(), key, g))
        .collect();
    out.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
    out.into_iter().map(|x| x.3).collect()
}

fn subsets(universe: usize, size: usize) -> Vec<Vec<Color>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, universe: usize, size: usize, cur: &mut Vec<Color>, out: &mut Vec<Vec<Color>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for c in start..universe {
            if universe - c < size - cur.len() {
                break;
            }
            cur.push(c as Color);
            rec(c + 1, universe, size, cur, out);
            cur.pop();
        }
    }
    rec(0, universe, size, &mut cur, &mut out);
    out
}

/// Lazy stream of list assignments for a graph whose outer cycle is
/// `outer`. Boundary vertices get lists per the mode, internal vertices
/// 5-subsets of the universe. With symmetry reduction, colors first appear in
/// increasing order (first-occurrence form), which keeps at least one
/// representative of every color-permutation class.
pub struct ListAssignments {
    n: usize,
    outer: CycleRef,
    on: Vec<bool>,
    /// Neighbors along C.
    neighbors: Vec<Vec<Vertex>>,
    candidates: Vec<Vec<Vec<Color>>>,
    symmetry: bool,
    pos: Vec<usize>,
    started: bool,
}

impl ListAssignments {
    fn used_colors(&self, upto: usize) -> usize {
        (0..upto)
            .flat_map(|v| self.candidates[v][self.pos[v]].iter())
            .map(|&c| c as usize + 1)
            .max()
            .unwrap_or(0)
    }

    fn admissible(&self, v: usize, cand: &[Color]) -> bool {
        if self.symmetry {
            let t = self.used_colors(v);
            let fresh: Vec<usize> = cand.iter().map(|&c| c as usize).filter(|&c| c >= t).collect();
            if fresh.iter().enumerate().any(|(i, &c)| c != t + i) {
                return false;
            }
        }
        if self.on[v] && cand.len() == 1 {
            // equal singletons along C leave C without a proper coloring
            for &w in &self.neighbors[v] {
                if w < v {
                    let other = &self.candidates[w][self.pos[w]];
                    if other.len() == 1 && other[0] == cand[0] {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn current(&self) -> ListAssignment {
        ListAssignment::new((0..self.n).map(|v| self.candidates[v][self.pos[v]].clone()).collect())
    }
}

impl Iterator for ListAssignments {
    type Item = ListAssignment;

    fn next(&mut self) -> Option<ListAssignment> {
        if !self.started {
            self.started = true;
            if self.n == 0 {
                return None;
            }
            self.pos.push(usize::MAX);
        }
        while let Some(&p) = self.pos.last() {
            let lvl = self.pos.len() - 1;
            let start = p.wrapping_add(1);
            let found = (start..self.candidates[lvl].len()).find(|&i| self.admissible(lvl, &self.candidates[lvl][i]));
            match found {
                Some(i) => {
                    self.pos[lvl] = i;
                    if lvl + 1 < self.n {
                        self.pos.push(usize::MAX);
                    } else {
                        let lists = self.current();
                        if BoundaryColorings::for_cycle(&self.outer, &lists).next().is_some() {
                            return Some(lists);
                        }
                    }
                }
                None => {
                    self.pos.pop();
                }
            }
        }
        None
    }
}

/// Stream of list assignments for `g` (vertices `0..g.n()`, all present).
pub fn assign_lists(g: &PlaneGraph, spec: &GenSpec) -> Result<ListAssignments, GenError> {
    let outer = g.outer_cycle()?;
    let mut on = vec![false; g.n()];
    for &v in outer.vertices() {
        on[v] = true;
    }
    let internal = on.iter().filter(|&&b| !b).count();
    if internal > 0 && spec.universe < 5 {
        return Err(GenError::UniverseTooSmall(spec.universe));
    }
    let boundary: Vec<Vec<Color>> = spec.mode.sizes().into_iter().flat_map(|s| subsets(spec.universe, s)).collect();
    let inner = subsets(spec.universe, 5);
    let cycle_edges = outer.edge_set();
    let neighbors = (0..g.n())
        .map(|v| g.rotation(v).iter().copied().filter(|&w| cycle_edges.contains(&edge(v, w))).collect())
        .collect();
    let candidates = (0..g.n()).map(|v| if on[v] { boundary.clone() } else { inner.clone() }).collect();
    Ok(ListAssignments {
        n: g.n(),
        outer,
        on,
        neighbors,
        candidates,
        symmetry: spec.symmetry_reduction,
        pos: Vec::new(),
        started: false,
    })
}

/// Random 2-connected plane graph: the cycle `0..k` with `internal` new
/// vertices added along random ears, then up to `extra_edges` random chords of
/// internal faces.
pub fn random_plane_graph<R: Rng>(k: usize, internal: usize, extra_edges: usize, rng: &mut R) -> PlaneGraph {
    let mut g = cycle_graph(k);
    let mut added = 0;
    while added < internal {
        let faces = g.internal_faces().unwrap();
        let f = faces.choose(rng).unwrap();
        let vs = f.vertices();
        let a = rng.gen_range(0..vs.len());
        let mut b = rng.gen_range(0..vs.len() - 1);
        if b >= a {
            b += 1;
        }
        let len = rng.gen_range(1..=(internal - added).min(2));
        g = g.with_path_in_face(f, vs[a], vs[b], len).unwrap();
        added += len;
    }
    for _ in 0..extra_edges {
        let faces = g.internal_faces().unwrap();
        let f = faces.choose(rng).unwrap();
        let vs = f.vertices();
        if vs.len() < 4 {
            continue;
        }
        let a = vs[rng.gen_range(0..vs.len())];
        let b = vs[rng.gen_range(0..vs.len())];
        if a != b && !g.has_edge(a, b) {
            g = g.with_edge_in_face(f, a, b).unwrap();
        }
    }
    g
}

fn random_subset<R: Rng>(universe: usize, size: usize, rng: &mut R) -> Vec<Color> {
    let all: Vec<Color> = (0..universe as Color).collect();
    let mut s: Vec<Color> = all.choose_multiple(rng, size.min(universe)).copied().collect();
    s.sort_unstable();
    s
}

/// Random lists: boundary sizes drawn from `boundary_sizes`, internal lists
/// of size 5, all inside `0..universe`. Not filtered for colorability.
pub fn random_lists<R: Rng>(
    g: &PlaneGraph,
    outer: &CycleRef,
    boundary_sizes: &[usize],
    universe: usize,
    rng: &mut R,
) -> ListAssignment {
    let lists = (0..g.n())
        .map(|v| {
            if !g.contains(v) {
                Vec::new()
            } else if outer.contains(v) {
                random_subset(universe, *boundary_sizes.choose(rng).unwrap(), rng)
            } else {
                random_subset(universe, 5, rng)
            }
        })
        .collect();
    ListAssignment::new(lists)
}

/// Join `b` to `a` by identifying `b`'s vertex `bx` with `a`'s outer vertex
/// `ax`, drawing `b` in the outer face of `a`.
pub fn glue_at_vertex(a: &PlaneGraph, ax: Vertex, b: &PlaneGraph, bx: Vertex) -> Result<PlaneGraph, EmbeddingError> {
    let oa = a.outer_face()?;
    let ob = b.outer_face()?;
    let (pa, _) = oa.angle_at(ax).ok_or(EmbeddingError::UnknownVertex(ax))?;
    let (pb, nb) = ob.angle_at(bx).ok_or(EmbeddingError::UnknownVertex(bx))?;
    let n = a.n();
    let map = |w: Vertex| if w == bx { ax } else if w < bx { n + w } else { n + w - 1 };
    let mut rotation: Vec<Vec<Vertex>> = a.rotations().to_vec();
    let mut present = a.present_mask().to_vec();
    for w in 0..b.n() {
        if w == bx {
            continue;
        }
        rotation.push(b.rotation(w).iter().map(|&x| map(x)).collect());
        present.push(b.contains(w));
    }
    // b's non-outer part around bx, from nb counterclockwise to pb
    let rb = b.rotation(bx);
    let s = rb.iter().position(|&w| w == nb).unwrap();
    let block: Vec<Vertex> = (0..rb.len()).map(|i| map(rb[(s + i) % rb.len()])).collect();
    debug_assert_eq!(*block.last().unwrap(), map(pb));
    let ra = &mut rotation[ax];
    let i = ra.iter().position(|&w| w == pa).unwrap();
    for (j, w) in block.into_iter().enumerate() {
        ra.insert(i + 1 + j, w);
    }
    Ok(PlaneGraph::with_vertices(present, rotation, a.outer_dart()))
}

/// A random input satisfying the hypotheses of [`crate::colorer::thomassen_color`].
#[derive(Clone, Debug)]
pub struct ThomassenInstance {
    pub graph: PlaneGraph,
    pub z: Vec<Vertex>,
    pub s: Vec<Vertex>,
    pub lists: ListAssignment,
}

pub fn random_thomassen_instance<R: Rng>(max_vertices: usize, rng: &mut R) -> ThomassenInstance {
    let universe = 8;
    let piece = |rng: &mut R, budget: usize| {
        let k = rng.gen_range(3..=budget.clamp(3, 8));
        let internal = rng.gen_range(0..=budget.saturating_sub(k));
        let extra = rng.gen_range(0..=k + internal);
        random_plane_graph(k, internal, extra, rng)
    };
    let mut g = piece(rng, max_vertices);
    // sometimes hang a second block off an outer vertex
    if g.vertex_count() + 3 <= max_vertices && rng.gen_bool(0.3) {
        let h = piece(rng, max_vertices - g.vertex_count() + 1);
        let ax = *g.outer_face().unwrap().vertices().choose(rng).unwrap();
        let hx = *h.outer_face().unwrap().vertices().choose(rng).unwrap();
        g = glue_at_vertex(&g, ax, &h, hx).unwrap();
    }
    let outer = g.outer_face().unwrap();
    let mut z: Vec<Vertex> = outer.vertices();
    z.sort_unstable();
    z.dedup();
    let mut lists = vec![Vec::new(); g.n()];
    for v in g.vertices() {
        let size = if z.binary_search(&v).is_ok() { 3 } else { 5 };
        lists[v] = random_subset(universe, size, rng);
    }
    let s = match rng.gen_range(0..3) {
        0 => Vec::new(),
        1 => vec![*z.choose(rng).unwrap()],
        _ => {
            let d = *outer.boundary.choose(rng).unwrap();
            vec![d.0, d.1]
        }
    };
    for (i, &v) in s.iter().enumerate() {
        lists[v] = vec![(i as Color) % universe as Color];
    }
    if s.len() == 1 {
        lists[s[0]] = random_subset(universe, 1, rng);
    }
    ThomassenInstance { graph: g, z, s, lists: ListAssignment::new(lists) }
}
