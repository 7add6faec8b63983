//! Combinatorial plane graphs given by rotation systems.
//!
//! Every vertex carries the counterclockwise cyclic order of its neighbors.
//! Faces are traced with a single fixed rule: arriving at `v` along the dart
//! `(u, v)`, leave along `(v, w)` where `w` follows `u` in the rotation of `v`.
//! With counterclockwise rotations this keeps each face on the right of its
//! darts, so internal faces come out clockwise and the outer face
//! counterclockwise.
//!
//! Vertex ids are stable: subgraphs keep the id space of their host and mark
//! missing vertices as absent.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

/// An undirected edge stored with its smaller endpoint first.
pub type Edge = (Vertex, Vertex);

pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A directed edge `tail -> head`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Dart(pub Vertex, pub Vertex);

impl Dart {
    pub fn tail(self) -> Vertex {
        self.0
    }

    pub fn head(self) -> Vertex {
        self.1
    }

    pub fn reversed(self) -> Dart {
        Dart(self.1, self.0)
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.0, self.1)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("rotation is not symmetric: {u} lists {v} but {v} does not list {u}")]
    Asymmetric { u: Vertex, v: Vertex },
    #[error("not a cycle of the graph: {0}")]
    NotACycle(String),
    #[error("outer face boundary is not a cycle (walk {0:?})")]
    OuterNotCycle(Vec<Vertex>),
    #[error("graph has no designated outer face")]
    NoOuterFace,
    #[error("face boundary is not a cycle (walk {0:?})")]
    FaceNotCycle(Vec<Vertex>),
    #[error("vertices {0} and {1} are not both on the face")]
    NotOnFace(Vertex, Vertex),
    #[error("vertices {0} and {1} are already adjacent")]
    AlreadyAdjacent(Vertex, Vertex),
}

/// A face boundary as traced from the rotation system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceWalk {
    /// Lexicographically least dart of the walk.
    pub id: Dart,
    /// Darts in tracing order, starting at `id`.
    pub boundary: Vec<Dart>,
}

impl FaceWalk {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    /// Tails of the boundary darts, in tracing order.
    pub fn vertices(&self) -> Vec<Vertex> {
        self.boundary.iter().map(|d| d.0).collect()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.boundary.iter().any(|d| d.0 == v)
    }

    pub fn is_cycle(&self) -> bool {
        let vs = self.vertices();
        let set: HashSet<_> = vs.iter().collect();
        vs.len() >= 3 && set.len() == vs.len()
    }

    /// The bounding cycle oriented counterclockwise (the reverse of the
    /// tracing order for an internal face), starting at its least vertex.
    pub fn cycle(&self) -> Result<CycleRef, EmbeddingError> {
        if !self.is_cycle() {
            return Err(EmbeddingError::FaceNotCycle(self.vertices()));
        }
        let mut vs = self.vertices();
        vs.reverse();
        Ok(CycleRef::new(vs).rotated_to_min())
    }

    /// Position `(prev, next)` around `v` on this face: the face occupies the
    /// counterclockwise angle at `v` from `prev` to `next`.
    pub fn angle_at(&self, v: Vertex) -> Option<(Vertex, Vertex)> {
        let m = self.boundary.len();
        (0..m).find_map(|i| {
            let d = self.boundary[i];
            if d.1 == v {
                Some((d.0, self.boundary[(i + 1) % m].1))
            } else {
                None
            }
        })
    }
}

/// A cycle given by its cyclic vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleRef(pub Vec<Vertex>);

impl CycleRef {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        CycleRef(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn edges(&self) -> Vec<Edge> {
        let m = self.0.len();
        (0..m).map(|i| edge(self.0[i], self.0[(i + 1) % m])).collect()
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges().into_iter().collect()
    }

    pub fn reversed(&self) -> CycleRef {
        let mut v = self.0.clone();
        v.reverse();
        CycleRef(v)
    }

    pub fn rotated_to_min(&self) -> CycleRef {
        match self.0.iter().enumerate().min_by_key(|&(_, v)| *v) {
            Some((i, _)) => {
                let mut v = self.0.clone();
                v.rotate_left(i);
                CycleRef(v)
            }
            None => self.clone(),
        }
    }

    /// Equality up to rotation and reversal.
    pub fn same_cycle(&self, other: &CycleRef) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let a = self.rotated_to_min();
        let b = other.rotated_to_min();
        a == b || a == b.reversed().rotated_to_min()
    }

    fn has_distinct_vertices(&self) -> bool {
        let set: HashSet<_> = self.0.iter().collect();
        set.len() == self.0.len()
    }
}

impl fmt::Display for CycleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One problem found by [`PlaneGraph::check_embedding`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EmbeddingViolation {
    SelfLoop { v: Vertex },
    RepeatedNeighbor { v: Vertex, w: Vertex },
    UnknownNeighbor { v: Vertex, w: Vertex },
    Asymmetric { u: Vertex, v: Vertex },
    Euler { vertices: usize, edges: usize, faces: usize },
    MissingOuterFace { dart: Dart },
}

impl fmt::Display for EmbeddingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbeddingViolation::SelfLoop { v } => write!(f, "self-loop at {v}"),
            EmbeddingViolation::RepeatedNeighbor { v, w } => {
                write!(f, "vertex {v} lists neighbor {w} more than once")
            }
            EmbeddingViolation::UnknownNeighbor { v, w } => {
                write!(f, "vertex {v} lists absent vertex {w}")
            }
            EmbeddingViolation::Asymmetric { u, v } => {
                write!(f, "asymmetric edge ({u},{v}): {v} does not list {u}")
            }
            EmbeddingViolation::Euler { vertices, edges, faces } => write!(
                f,
                "Euler's formula fails on a component: V={vertices} E={edges} F={faces}"
            ),
            EmbeddingViolation::MissingOuterFace { dart } => {
                write!(f, "outer dart {dart} is not an edge of the graph")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub violations: Vec<EmbeddingViolation>,
}

impl EmbeddingReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// All faces of a graph with a dart lookup.
#[derive(Clone, Debug)]
pub struct FaceSet {
    pub walks: Vec<FaceWalk>,
    by_dart: HashMap<Dart, usize>,
}

impl FaceSet {
    pub fn face_of(&self, d: Dart) -> Option<&FaceWalk> {
        self.by_dart.get(&d).map(|&i| &self.walks[i])
    }

    pub fn index_of(&self, d: Dart) -> Option<usize> {
        self.by_dart.get(&d).copied()
    }

    pub fn len(&self) -> usize {
        self.walks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walks.is_empty()
    }
}

/// Result of a disk extraction.
#[derive(Clone, Debug)]
pub struct DiskSubgraph {
    pub graph: PlaneGraph,
    /// The cycle was the outer cycle; `graph` is the input unchanged.
    pub is_outer: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneGraph {
    present: Vec<bool>,
    rotation: Vec<Vec<Vertex>>,
    outer: Option<Dart>,
}

impl PlaneGraph {
    /// Graph on vertices `0..rotation.len()`, all present. No validation is
    /// done here; see [`PlaneGraph::check_embedding`].
    pub fn new(rotation: Vec<Vec<Vertex>>, outer: Option<Dart>) -> Self {
        let present = vec![true; rotation.len()];
        PlaneGraph { present, rotation, outer }
    }

    /// Graph whose vertex set is the marked subset of `0..present.len()`.
    pub fn with_vertices(present: Vec<bool>, rotation: Vec<Vec<Vertex>>, outer: Option<Dart>) -> Self {
        assert_eq!(present.len(), rotation.len());
        PlaneGraph { present, rotation, outer }
    }

    /// Size of the id space (absent ids included).
    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.present.iter().filter(|&&p| p).count()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.present.get(v).copied().unwrap_or(false)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n()).filter(move |&v| self.present[v])
    }

    pub fn present_mask(&self) -> &[bool] {
        &self.present
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<Vertex>] {
        &self.rotation
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotation[v].len()
    }

    pub fn outer_dart(&self) -> Option<Dart> {
        self.outer
    }

    pub fn set_outer_dart(&mut self, d: Option<Dart>) {
        self.outer = d;
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.rotation[u].contains(&v)
    }

    /// Undirected edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in self.vertices() {
            for &v in &self.rotation[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn edge_count(&self) -> usize {
        self.vertices().map(|v| self.rotation[v].len()).sum::<usize>() / 2
    }

    /// Neighbor following `u` counterclockwise around `v`.
    pub fn succ(&self, v: Vertex, u: Vertex) -> Option<Vertex> {
        let rot = &self.rotation[v];
        let i = rot.iter().position(|&x| x == u)?;
        Some(rot[(i + 1) % rot.len()])
    }

    /// Neighbor preceding `u` counterclockwise around `v`.
    pub fn pred(&self, v: Vertex, u: Vertex) -> Option<Vertex> {
        let rot = &self.rotation[v];
        let i = rot.iter().position(|&x| x == u)?;
        Some(rot[(i + rot.len() - 1) % rot.len()])
    }

    fn next_dart(&self, d: Dart) -> Result<Dart, EmbeddingError> {
        let Dart(u, v) = d;
        if !self.contains(v) {
            return Err(EmbeddingError::UnknownVertex(v));
        }
        match self.succ(v, u) {
            Some(w) => Ok(Dart(v, w)),
            None => Err(EmbeddingError::Asymmetric { u, v }),
        }
    }

    /// Trace every face. Each dart lies in exactly one walk; walks are sorted
    /// by id.
    pub fn trace_faces(&self) -> Result<Vec<FaceWalk>, EmbeddingError> {
        let mut seen: HashSet<Dart> = HashSet::new();
        let mut darts: Vec<Dart> = Vec::new();
        for u in self.vertices() {
            for &v in &self.rotation[u] {
                darts.push(Dart(u, v));
            }
        }
        darts.sort_unstable();
        let mut faces = Vec::new();
        for &start in &darts {
            if seen.contains(&start) {
                continue;
            }
            let mut boundary = Vec::new();
            let mut d = start;
            loop {
                if !seen.insert(d) {
                    // A dart revisited before closing means the successor map
                    // is not a permutation.
                    return Err(EmbeddingError::Asymmetric { u: d.0, v: d.1 });
                }
                boundary.push(d);
                d = self.next_dart(d)?;
                if d == start {
                    break;
                }
            }
            // start is the least unvisited dart, hence the least of its walk
            faces.push(FaceWalk { id: start, boundary });
        }
        Ok(faces)
    }

    pub fn face_set(&self) -> Result<FaceSet, EmbeddingError> {
        let walks = self.trace_faces()?;
        let mut by_dart = HashMap::new();
        for (i, w) in walks.iter().enumerate() {
            for &d in &w.boundary {
                by_dart.insert(d, i);
            }
        }
        Ok(FaceSet { walks, by_dart })
    }

    /// The designated outer face.
    pub fn outer_face(&self) -> Result<FaceWalk, EmbeddingError> {
        let d = self.outer.ok_or(EmbeddingError::NoOuterFace)?;
        if !self.has_edge(d.0, d.1) {
            return Err(EmbeddingError::NoOuterFace);
        }
        let mut boundary = vec![d];
        let mut cur = self.next_dart(d)?;
        while cur != d {
            boundary.push(cur);
            if boundary.len() > 2 * self.edge_count() + 1 {
                return Err(EmbeddingError::Asymmetric { u: cur.0, v: cur.1 });
            }
            cur = self.next_dart(cur)?;
        }
        let id = *boundary.iter().min().unwrap();
        let k = boundary.iter().position(|&x| x == id).unwrap();
        boundary.rotate_left(k);
        Ok(FaceWalk { id, boundary })
    }

    pub fn outer_face_id(&self) -> Result<Dart, EmbeddingError> {
        Ok(self.outer_face()?.id)
    }

    /// Internal faces (all faces except the designated outer one).
    pub fn internal_faces(&self) -> Result<Vec<FaceWalk>, EmbeddingError> {
        let outer = self.outer_face_id()?;
        Ok(self.trace_faces()?.into_iter().filter(|f| f.id != outer).collect())
    }

    /// Check every structural invariant, including Euler's formula per
    /// connected component.
    pub fn check_embedding(&self) -> EmbeddingReport {
        let mut violations = Vec::new();
        for v in self.vertices() {
            let mut seen = HashSet::new();
            for &w in &self.rotation[v] {
                if w == v {
                    violations.push(EmbeddingViolation::SelfLoop { v });
                } else if !self.contains(w) {
                    violations.push(EmbeddingViolation::UnknownNeighbor { v, w });
                } else if !seen.insert(w) {
                    violations.push(EmbeddingViolation::RepeatedNeighbor { v, w });
                } else if !self.rotation[w].contains(&v) {
                    violations.push(EmbeddingViolation::Asymmetric { u: v, v: w });
                }
            }
        }
        for v in 0..self.n() {
            if !self.present[v] && !self.rotation[v].is_empty() {
                violations.push(EmbeddingViolation::UnknownNeighbor { v, w: self.rotation[v][0] });
            }
        }
        if !violations.is_empty() {
            return EmbeddingReport { violations };
        }
        let faces = match self.trace_faces() {
            Ok(f) => f,
            Err(EmbeddingError::Asymmetric { u, v }) => {
                violations.push(EmbeddingViolation::Asymmetric { u, v });
                return EmbeddingReport { violations };
            }
            Err(_) => return EmbeddingReport { violations },
        };
        let comp = self.component_ids();
        let ncomp = comp.iter().flatten().max().map_or(0, |m| m + 1);
        let mut vcount = vec![0usize; ncomp];
        let mut ecount = vec![0usize; ncomp];
        let mut fcount = vec![0usize; ncomp];
        for v in self.vertices() {
            let c = comp[v].unwrap();
            vcount[c] += 1;
            ecount[c] += self.rotation[v].len();
        }
        for f in &faces {
            fcount[comp[f.id.0].unwrap()] += 1;
        }
        for c in 0..ncomp {
            let e = ecount[c] / 2;
            if e == 0 {
                continue;
            }
            if vcount[c] + fcount[c] != e + 2 {
                violations.push(EmbeddingViolation::Euler { vertices: vcount[c], edges: e, faces: fcount[c] });
            }
        }
        if let Some(d) = self.outer {
            if !self.has_edge(d.0, d.1) || !self.contains(d.0) {
                violations.push(EmbeddingViolation::MissingOuterFace { dart: d });
            }
        }
        EmbeddingReport { violations }
    }

    fn component_ids(&self) -> Vec<Option<usize>> {
        let mut comp = vec![None; self.n()];
        let mut next = 0;
        for s in self.vertices() {
            if comp[s].is_some() {
                continue;
            }
            let mut queue = VecDeque::from([s]);
            comp[s] = Some(next);
            while let Some(v) = queue.pop_front() {
                for &w in &self.rotation[v] {
                    if w < self.n() && comp[w].is_none() && self.present[w] {
                        comp[w] = Some(next);
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Vertex sets of the connected components, each sorted, ordered by their
    /// least vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let comp = self.component_ids();
        let ncomp = comp.iter().flatten().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); ncomp];
        for v in self.vertices() {
            out[comp[v].unwrap()].push(v);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    fn connected_without(&self, skip: Vertex) -> bool {
        let start = match self.vertices().find(|&v| v != skip) {
            Some(s) => s,
            None => return true,
        };
        let mut seen = vec![false; self.n()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.rotation[v] {
                if w != skip && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertex_count() - usize::from(self.contains(skip))
    }

    /// True iff there are at least three vertices, the graph is connected and
    /// no vertex is a cutvertex.
    pub fn is_two_connected(&self) -> bool {
        self.vertex_count() >= 3 && self.is_connected() && self.cutvertex().is_none()
    }

    /// Least cutvertex, if any.
    pub fn cutvertex(&self) -> Option<Vertex> {
        self.vertices().find(|&v| !self.connected_without(v))
    }

    /// The boundary of the designated outer face when it is a cycle.
    pub fn outer_cycle(&self) -> Result<CycleRef, EmbeddingError> {
        let face = self.outer_face()?;
        let d = self.outer.unwrap();
        let k = face.boundary.iter().position(|&x| x == d).unwrap();
        let mut vs = face.vertices();
        vs.rotate_left(k);
        let c = CycleRef(vs);
        if c.len() < 3 || !c.has_distinct_vertices() {
            return Err(EmbeddingError::OuterNotCycle(c.0));
        }
        Ok(c)
    }

    /// True iff some face is incident with both vertices.
    pub fn cofacial(&self, u: Vertex, v: Vertex) -> Result<bool, EmbeddingError> {
        for w in [u, v] {
            if !self.contains(w) {
                return Err(EmbeddingError::UnknownVertex(w));
            }
        }
        Ok(self
            .trace_faces()?
            .iter()
            .any(|f| f.contains_vertex(u) && f.contains_vertex(v)))
    }

    /// Subgraph with the given vertices and edges, embedded by restriction of
    /// the rotations. Its outer face is the face that contains the host's
    /// outer face.
    pub fn subgraph(&self, keep_vertex: &[bool], keep_edge: impl Fn(Vertex, Vertex) -> bool) -> PlaneGraph {
        let n = self.n();
        let present: Vec<bool> = (0..n).map(|v| self.present[v] && keep_vertex[v]).collect();
        let rotation: Vec<Vec<Vertex>> = (0..n)
            .map(|v| {
                if !present[v] {
                    return Vec::new();
                }
                self.rotation[v]
                    .iter()
                    .copied()
                    .filter(|&w| present[w] && keep_edge(v, w))
                    .collect()
            })
            .collect();
        let mut sub = PlaneGraph { present, rotation, outer: None };
        sub.outer = self.locate_outer_in(&sub);
        sub
    }

    /// Subgraph induced by a vertex set.
    pub fn induced(&self, keep_vertex: &[bool]) -> PlaneGraph {
        self.subgraph(keep_vertex, |_, _| true)
    }

    pub fn without_edge(&self, u: Vertex, v: Vertex) -> PlaneGraph {
        let keep = vec![true; self.n()];
        let e = edge(u, v);
        self.subgraph(&keep, |a, b| edge(a, b) != e)
    }

    pub fn without_vertex(&self, x: Vertex) -> PlaneGraph {
        let mut keep = vec![true; self.n()];
        keep[x] = false;
        self.induced(&keep)
    }

    /// Dart of `sub` (a subgraph of `self`) whose right face contains the
    /// outer face of `self`.
    fn locate_outer_in(&self, sub: &PlaneGraph) -> Option<Dart> {
        let outer = self.outer_face().ok()?;
        let anchored = |w: Vertex, u: Vertex| -> Option<Dart> {
            if !sub.contains(u) || sub.rotation[u].is_empty() {
                return None;
            }
            // walk clockwise from w until hitting a neighbor kept in sub
            let mut x = w;
            for _ in 0..=self.rotation[u].len() {
                if sub.rotation[u].contains(&x) {
                    return Some(Dart(x, u));
                }
                x = self.pred(u, x)?;
            }
            None
        };
        for d in &outer.boundary {
            if let Some(found) = anchored(d.0, d.1) {
                return Some(found);
            }
        }
        // the outer face touches no kept edge: walk in from it
        let is_anchor = |v: Vertex| sub.contains(v) && !sub.rotation[v].is_empty();
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::new();
        for d in &outer.boundary {
            if !seen[d.0] {
                seen[d.0] = true;
                queue.push_back(d.0);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &w in &self.rotation[v] {
                if is_anchor(w) {
                    return anchored(v, w);
                }
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Mirror image: every rotation reversed.
    pub fn mirrored(&self) -> PlaneGraph {
        let rotation = self
            .rotation
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        PlaneGraph {
            present: self.present.clone(),
            rotation,
            outer: self.outer.map(Dart::reversed),
        }
    }

    /// Insert the edge `ab` inside `face`. Both ends must lie on the face and
    /// must not already be adjacent.
    pub fn with_edge_in_face(&self, face: &FaceWalk, a: Vertex, b: Vertex) -> Result<PlaneGraph, EmbeddingError> {
        if self.has_edge(a, b) {
            return Err(EmbeddingError::AlreadyAdjacent(a, b));
        }
        let (pa, _) = face.angle_at(a).ok_or(EmbeddingError::NotOnFace(a, b))?;
        let (pb, _) = face.angle_at(b).ok_or(EmbeddingError::NotOnFace(a, b))?;
        let mut g = self.clone();
        insert_after(&mut g.rotation[a], pa, b);
        insert_after(&mut g.rotation[b], pb, a);
        Ok(g)
    }

    /// Insert a path `a - x1 - ... - xj - b` of `j` new vertices inside
    /// `face`; with `j = 0` this is [`PlaneGraph::with_edge_in_face`].
    /// New vertices get ids `n(), n()+1, ...`.
    pub fn with_path_in_face(&self, face: &FaceWalk, a: Vertex, b: Vertex, j: usize) -> Result<PlaneGraph, EmbeddingError> {
        if j == 0 {
            return self.with_edge_in_face(face, a, b);
        }
        if a == b {
            return Err(EmbeddingError::NotOnFace(a, b));
        }
        let (pa, _) = face.angle_at(a).ok_or(EmbeddingError::NotOnFace(a, b))?;
        let (pb, _) = face.angle_at(b).ok_or(EmbeddingError::NotOnFace(a, b))?;
        let n = self.n();
        let mut g = self.clone();
        let path: Vec<Vertex> = (n..n + j).collect();
        for (i, &x) in path.iter().enumerate() {
            let prev = if i == 0 { a } else { path[i - 1] };
            let next = if i + 1 == j { b } else { path[i + 1] };
            g.rotation.push(vec![prev, next]);
            g.present.push(true);
            debug_assert_eq!(g.rotation.len() - 1, x);
        }
        insert_after(&mut g.rotation[a], pa, path[0]);
        insert_after(&mut g.rotation[b], pb, path[j - 1]);
        Ok(g)
    }

    /// Relabel vertices through `map` (old id to new id) into an id space of
    /// size `n`. Every present vertex must be mapped.
    pub fn relabeled(&self, map: &[Option<Vertex>], n: usize) -> PlaneGraph {
        let mut present = vec![false; n];
        let mut rotation = vec![Vec::new(); n];
        for v in self.vertices() {
            let nv = map[v].expect("relabel map misses a present vertex");
            present[nv] = true;
            rotation[nv] = self.rotation[v].iter().map(|&w| map[w].unwrap()).collect();
        }
        let outer = self.outer.map(|Dart(a, b)| Dart(map[a].unwrap(), map[b].unwrap()));
        PlaneGraph { present, rotation, outer }
    }

    fn check_cycle(&self, c: &CycleRef) -> Result<(), EmbeddingError> {
        if c.len() < 3 || !c.has_distinct_vertices() {
            return Err(EmbeddingError::NotACycle(c.to_string()));
        }
        for &v in c.vertices() {
            if !self.contains(v) {
                return Err(EmbeddingError::NotACycle(format!("{c}: vertex {v} absent")));
            }
        }
        for (u, v) in c.edges() {
            if !self.has_edge(u, v) {
                return Err(EmbeddingError::NotACycle(format!("{c}: missing edge ({u},{v})")));
            }
        }
        Ok(())
    }

    /// Closed disk bounded by `c`: every vertex and edge drawn on the side of
    /// `c` away from the outer face. Vertex ids are preserved and `c` becomes
    /// the outer cycle of the result.
    pub fn disk_subgraph(&self, c: &CycleRef) -> Result<DiskSubgraph, EmbeddingError> {
        self.disk_subgraph_aux(c, &BTreeSet::new())
    }

    /// As [`PlaneGraph::disk_subgraph`] on an augmented embedding: edges in
    /// `aux` are dropped from the result unless they lie on `c`.
    pub fn disk_subgraph_aux(&self, c: &CycleRef, aux: &BTreeSet<Edge>) -> Result<DiskSubgraph, EmbeddingError> {
        self.check_cycle(c)?;
        let faces = self.face_set()?;
        let outer_idx = faces
            .index_of(self.outer.ok_or(EmbeddingError::NoOuterFace)?)
            .ok_or(EmbeddingError::NoOuterFace)?;
        let mut oriented = c.clone();
        let mut side = self.right_side(&oriented);
        if side.darts.iter().any(|&d| faces.index_of(d) == Some(outer_idx)) {
            oriented = c.reversed();
            side = self.right_side(&oriented);
            if side.darts.iter().any(|&d| faces.index_of(d) == Some(outer_idx)) {
                return Err(EmbeddingError::NotACycle(format!("{c}: both sides meet the outer face")));
            }
        }
        let on_cycle: HashSet<Vertex> = c.vertices().iter().copied().collect();
        let cycle_edges = c.edge_set();
        let outer_cycle = self.outer_cycle().ok();
        let is_outer = outer_cycle.as_ref().is_some_and(|oc| oc.same_cycle(c));

        let n = self.n();
        let mut present = vec![false; n];
        let mut rotation = vec![Vec::new(); n];
        let keep = |a: Vertex, b: Vertex| -> bool {
            let e = edge(a, b);
            !aux.contains(&e) || cycle_edges.contains(&e)
        };
        for &x in &side.interior {
            present[x] = true;
            rotation[x] = self.rotation[x].iter().copied().filter(|&w| keep(x, w)).collect();
        }
        let m = oriented.len();
        for i in 0..m {
            let v = oriented.0[i];
            let prev = oriented.0[(i + m - 1) % m];
            let next = oriented.0[(i + 1) % m];
            present[v] = true;
            let mut rot = vec![prev];
            rot.extend(side.right_neighbors[i].iter().copied().filter(|&w| keep(v, w)));
            rot.push(next);
            rotation[v] = rot;
        }
        debug_assert!(side.interior.iter().all(|x| !on_cycle.contains(x)));
        let outer = Some(Dart(oriented.0[1], oriented.0[0]));
        Ok(DiskSubgraph { graph: PlaneGraph { present, rotation, outer }, is_outer })
    }

    /// Everything strictly to the right of the directed cycle `c`.
    fn right_side(&self, c: &CycleRef) -> RightSide {
        let m = c.len();
        let on_cycle: HashSet<Vertex> = c.vertices().iter().copied().collect();
        let mut right_neighbors = Vec::with_capacity(m);
        let mut darts = Vec::new();
        for i in 0..m {
            let v = c.0[i];
            let prev = c.0[(i + m - 1) % m];
            let next = c.0[(i + 1) % m];
            darts.push(Dart(v, next));
            let mut rn = Vec::new();
            let mut x = self.succ(v, prev).unwrap();
            while x != next {
                rn.push(x);
                darts.push(Dart(v, x));
                x = self.succ(v, x).unwrap();
            }
            right_neighbors.push(rn);
        }
        let mut interior: BTreeSet<Vertex> = BTreeSet::new();
        let mut queue: VecDeque<Vertex> = VecDeque::new();
        for rn in &right_neighbors {
            for &x in rn {
                if !on_cycle.contains(&x) && interior.insert(x) {
                    queue.push_back(x);
                }
            }
        }
        while let Some(x) = queue.pop_front() {
            for &w in &self.rotation[x] {
                darts.push(Dart(x, w));
                if !on_cycle.contains(&w) && interior.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        RightSide { right_neighbors, interior, darts }
    }

    /// All simple cycles of length at most `max_len`, each starting at its
    /// least vertex, in increasing order.
    pub fn simple_cycles(&self, max_len: usize) -> Vec<CycleRef> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        let mut on_path = vec![false; self.n()];
        for s in self.vertices() {
            path.clear();
            path.push(s);
            on_path[s] = true;
            self.cycles_from(s, &mut path, &mut on_path, max_len, &mut out);
            on_path[s] = false;
        }
        out.sort();
        out
    }

    fn cycles_from(&self, s: Vertex, path: &mut Vec<Vertex>, on_path: &mut [bool], max_len: usize, out: &mut Vec<CycleRef>) {
        let v = *path.last().unwrap();
        for &w in &self.rotation[v] {
            if w == s && path.len() >= 3 && path[1] < path[path.len() - 1] {
                out.push(CycleRef(path.clone()));
            } else if w > s && !on_path[w] && path.len() < max_len {
                on_path[w] = true;
                path.push(w);
                self.cycles_from(s, path, on_path, max_len, out);
                path.pop();
                on_path[w] = false;
            }
        }
    }
}

struct RightSide {
    right_neighbors: Vec<Vec<Vertex>>,
    interior: BTreeSet<Vertex>,
    darts: Vec<Dart>,
}

fn insert_after(rot: &mut Vec<Vertex>, after: Vertex, x: Vertex) {
    let i = rot.iter().position(|&w| w == after).expect("anchor not in rotation");
    rot.insert(i + 1, x);
}

/// Wheel on the rim `0..k` with hub `k`, embedded counterclockwise.
pub fn wheel(k: usize) -> PlaneGraph {
    let mut rotation: Vec<Vec<Vertex>> = (0..k).map(|i| vec![(i + 1) % k, k, (i + k - 1) % k]).collect();
    rotation.push((0..k).collect());
    PlaneGraph::new(rotation, Some(Dart(0, 1)))
}

/// Cycle `0, 1, ..., k-1` with the outer face on the right of `0 -> 1`.
pub fn cycle_graph(k: usize) -> PlaneGraph {
    let rotation = (0..k).map(|i| vec![(i + 1) % k, (i + k - 1) % k]).collect();
    PlaneGraph::new(rotation, Some(Dart(0, 1)))
}
