//! Canvases: a 2-connected plane graph, its outer cycle and a list
//! assignment.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colorer;
use crate::plane_graph::{CycleRef, EmbeddingError, FaceWalk, PlaneGraph, Vertex};

pub type Color = u32;

/// Color lists indexed by vertex id. Lists are kept sorted and free of
/// duplicates; an empty list means "no list".
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ListAssignment {
    lists: Vec<Vec<Color>>,
}

impl ListAssignment {
    pub fn new(lists: Vec<Vec<Color>>) -> Self {
        let lists = lists
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l.dedup();
                l
            })
            .collect();
        ListAssignment { lists }
    }

    pub fn get(&self, v: Vertex) -> &[Color] {
        self.lists.get(v).map_or(&[], |l| l.as_slice())
    }

    pub fn set(&mut self, v: Vertex, list: Vec<Color>) {
        if v >= self.lists.len() {
            self.lists.resize(v + 1, Vec::new());
        }
        let mut list = list;
        list.sort_unstable();
        list.dedup();
        self.lists[v] = list;
    }

    pub fn contains(&self, v: Vertex, c: Color) -> bool {
        self.get(v).binary_search(&c).is_ok()
    }

    /// Number of vertex slots (not all need hold a list).
    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn lists(&self) -> &[Vec<Color>] {
        &self.lists
    }

    /// Keep only the lists of vertices present in `g`, padded to `g.n()`.
    pub fn restricted_to(&self, g: &PlaneGraph) -> ListAssignment {
        let lists = (0..g.n())
            .map(|v| if g.contains(v) { self.get(v).to_vec() } else { Vec::new() })
            .collect();
        ListAssignment { lists }
    }

    /// All colors used by any list, sorted.
    pub fn universe(&self) -> Vec<Color> {
        let set: BTreeSet<Color> = self.lists.iter().flatten().copied().collect();
        set.into_iter().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CanvasFinding {
    InvalidEmbedding(String),
    NotTwoConnected,
    OuterNotCycle,
    OuterMismatch,
    ShortInternalList { vertex: Vertex, size: usize },
    BoundaryUncolorable,
}

impl fmt::Display for CanvasFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanvasFinding::InvalidEmbedding(msg) => write!(f, "invalid-embedding: {msg}"),
            CanvasFinding::NotTwoConnected => write!(f, "not-2-connected"),
            CanvasFinding::OuterNotCycle => write!(f, "outer-not-cycle"),
            CanvasFinding::OuterMismatch => write!(f, "outer-mismatch: given cycle is not the outer cycle"),
            CanvasFinding::ShortInternalList { vertex, size } => {
                write!(f, "short-internal-list: vertex {vertex} has {size} colors")
            }
            CanvasFinding::BoundaryUncolorable => write!(f, "boundary-uncolorable"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanvasValidation {
    pub ok: bool,
    pub violations: Vec<CanvasFinding>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CanvasError {
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error("the outer face of a canvas must be bounded by the given cycle")]
    OuterMismatch,
    #[error("the outer face is not a candidate for this operation")]
    OuterFace,
    #[error("subgraph is not contained in the canvas graph: {0}")]
    NotASubgraph(String),
    #[error("subgraph does not contain the outer cycle: {0}")]
    MissingOuterCycle(String),
    #[error("subgraph is not 2-connected")]
    NotTwoConnected,
}

/// The triple (G, C, L). Construction only requires that the outer face is
/// bounded by `outer`; use [`validate_canvas`] for the full set of checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canvas {
    pub graph: PlaneGraph,
    pub outer: CycleRef,
    pub lists: ListAssignment,
}

impl Canvas {
    /// Canvas whose outer cycle is read off the embedding.
    pub fn new(graph: PlaneGraph, lists: ListAssignment) -> Result<Canvas, CanvasError> {
        let outer = graph.outer_cycle()?;
        Ok(Canvas { graph, outer, lists })
    }

    pub fn with_outer(graph: PlaneGraph, outer: CycleRef, lists: ListAssignment) -> Result<Canvas, CanvasError> {
        let actual = graph.outer_cycle()?;
        if !actual.same_cycle(&outer) {
            return Err(CanvasError::OuterMismatch);
        }
        Ok(Canvas { graph, outer, lists })
    }

    pub fn is_on_outer(&self, v: Vertex) -> bool {
        self.outer.contains(v)
    }

    pub fn outer_mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.graph.n()];
        for &v in self.outer.vertices() {
            m[v] = true;
        }
        m
    }

    /// Vertices not on the outer cycle, ascending.
    pub fn internal_vertices(&self) -> Vec<Vertex> {
        let m = self.outer_mask();
        self.graph.vertices().filter(|&v| !m[v]).collect()
    }

    /// v(T): the number of internal vertices.
    pub fn internal_count(&self) -> usize {
        self.graph.vertex_count() - self.outer.len()
    }

    /// Graph consisting of the outer cycle only.
    pub fn cycle_graph(&self) -> PlaneGraph {
        let on = self.outer_mask();
        let cyc = self.outer.edge_set();
        self.graph
            .subgraph(&on, |u, v| cyc.contains(&crate::plane_graph::edge(u, v)))
    }

    pub fn validate(&self) -> CanvasValidation {
        validate_canvas(&self.graph, &self.outer, &self.lists)
    }
}

/// Check every canvas invariant and report each failure.
pub fn validate_canvas(g: &PlaneGraph, c: &CycleRef, lists: &ListAssignment) -> CanvasValidation {
    let mut violations = Vec::new();
    let report = g.check_embedding();
    if !report.is_valid() {
        for v in &report.violations {
            violations.push(CanvasFinding::InvalidEmbedding(v.to_string()));
        }
        return CanvasValidation { ok: false, violations };
    }
    if !g.is_two_connected() {
        violations.push(CanvasFinding::NotTwoConnected);
    }
    match g.outer_cycle() {
        Ok(oc) => {
            if !oc.same_cycle(c) {
                violations.push(CanvasFinding::OuterMismatch);
            }
        }
        Err(_) => violations.push(CanvasFinding::OuterNotCycle),
    }
    let on: BTreeSet<Vertex> = c.vertices().iter().copied().collect();
    for v in g.vertices() {
        if !on.contains(&v) && lists.get(v).len() < 5 {
            violations.push(CanvasFinding::ShortInternalList { vertex: v, size: lists.get(v).len() });
        }
    }
    let cycle_ok = c.len() >= 3 && c.edges().iter().all(|&(u, v)| g.has_edge(u, v));
    if !cycle_ok || colorer::BoundaryColorings::for_cycle(c, lists).next().is_none() {
        violations.push(CanvasFinding::BoundaryUncolorable);
    }
    CanvasValidation { ok: violations.is_empty(), violations }
}

/// T⟨C'⟩: the canvas on the closed disk bounded by `c`.
pub fn subcanvas_by_cycle(t: &Canvas, c: &CycleRef) -> Result<Canvas, CanvasError> {
    let disk = t.graph.disk_subgraph(c)?;
    if disk.is_outer {
        return Ok(t.clone());
    }
    let graph = disk.graph;
    let outer = graph.outer_cycle()?;
    let lists = t.lists.restricted_to(&graph);
    Ok(Canvas { graph, outer, lists })
}

/// T[f]: the canvas bounded by an internal face.
pub fn subcanvas_by_face(t: &Canvas, f: &FaceWalk) -> Result<Canvas, CanvasError> {
    if f.id == t.graph.outer_face_id()? {
        return Err(CanvasError::OuterFace);
    }
    let c = f.cycle()?;
    subcanvas_by_cycle(t, &c)
}

/// T[G']: the subcanvas induced by a 2-connected subgraph containing C.
/// The embedding of `g2` is taken from the canvas graph.
pub fn induced_subcanvas(t: &Canvas, g2: &PlaneGraph) -> Result<Canvas, CanvasError> {
    for v in g2.vertices() {
        if !t.graph.contains(v) {
            return Err(CanvasError::NotASubgraph(format!("vertex {v}")));
        }
    }
    for (u, v) in g2.edges() {
        if !t.graph.has_edge(u, v) {
            return Err(CanvasError::NotASubgraph(format!("edge ({u},{v})")));
        }
    }
    for (u, v) in t.outer.edges() {
        if !g2.has_edge(u, v) {
            return Err(CanvasError::MissingOuterCycle(format!("edge ({u},{v})")));
        }
    }
    let mut keep = vec![false; t.graph.n()];
    for v in g2.vertices() {
        keep[v] = true;
    }
    let graph = t.graph.subgraph(&keep, |u, v| g2.has_edge(u, v));
    if !graph.is_two_connected() {
        return Err(CanvasError::NotTwoConnected);
    }
    let outer = graph.outer_cycle()?;
    if !outer.same_cycle(&t.outer) {
        return Err(CanvasError::OuterMismatch);
    }
    let lists = t.lists.restricted_to(&graph);
    Ok(Canvas { graph, outer, lists })
}
