//! Criticality with respect to a subgraph T, critical subcanvases and
//! minimal extenders.
//!
//! G is T-critical when every proper subgraph G' ⊇ T admits a coloring of
//! T that extends to G' but not to G. Any such G' lies inside a maximal
//! proper subgraph (G minus one edge outside T, or G minus one isolated
//! vertex outside T), and a coloring that extends to a graph extends to all
//! of its subgraphs. So testing the maximal proper subgraphs is enough, and
//! that is what the certificates record.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canvas::{Canvas, ListAssignment};
use crate::colorer::{BoundaryColorings, ColorError, ExtensionOracle, PartialColoring};
use crate::plane_graph::{edge, CycleRef, Edge, PlaneGraph, Vertex};

/// A subgraph given by its vertex and edge sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgraphSpec {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl SubgraphSpec {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Self {
        let mut vertices = vertices;
        vertices.sort_unstable();
        vertices.dedup();
        let mut edges: Vec<Edge> = edges.into_iter().map(|(u, v)| edge(u, v)).collect();
        edges.sort_unstable();
        edges.dedup();
        SubgraphSpec { vertices, edges }
    }

    pub fn of_cycle(c: &CycleRef) -> Self {
        SubgraphSpec::new(c.vertices().to_vec(), c.edges())
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.binary_search(&edge(u, v)).is_ok()
    }

    /// Proper L-colorings of T, lexicographic in (vertex, color).
    pub fn colorings(&self, lists: &ListAssignment) -> BoundaryColorings {
        BoundaryColorings::for_subgraph(&self.vertices, &self.edges, lists)
    }
}

/// A maximal proper subgraph: G minus one edge or one isolated vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Removal {
    Edge(Vertex, Vertex),
    Vertex(Vertex),
}

impl Removal {
    pub fn apply(&self, g: &PlaneGraph) -> PlaneGraph {
        match *self {
            Removal::Edge(u, v) => g.without_edge(u, v),
            Removal::Vertex(v) => g.without_vertex(v),
        }
    }
}

impl std::fmt::Display for Removal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Removal::Edge(u, v) => write!(f, "edge ({u},{v})"),
            Removal::Vertex(v) => write!(f, "vertex {v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemovalWitness {
    pub removal: Removal,
    /// A coloring of T extending to G minus the removal but not to G.
    pub witness: Option<PartialColoring>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalityCertificate {
    pub verdict: bool,
    /// One entry per maximal proper subgraph, in removal order. For a
    /// negative verdict the list stops at the first removal without a
    /// witness.
    pub witnesses: Vec<RemovalWitness>,
}

impl CriticalityCertificate {
    /// The removal that refutes criticality, if any.
    pub fn failing_removal(&self) -> Option<Removal> {
        self.witnesses.iter().find(|w| w.witness.is_none()).map(|w| w.removal)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriticalError {
    #[error("G equals T, which criticality excludes")]
    EqualsT,
    #[error("T is not a subgraph of G: {0}")]
    NotASubgraph(String),
    #[error("coloring of T is not proper: {0}")]
    ImproperT(String),
    #[error("the coloring extends to G")]
    Extends,
    #[error(transparent)]
    Color(#[from] ColorError),
}

fn check_t(g: &PlaneGraph, t: &SubgraphSpec) -> Result<(), CriticalError> {
    for &v in &t.vertices {
        if !g.contains(v) {
            return Err(CriticalError::NotASubgraph(format!("vertex {v}")));
        }
    }
    for &(u, v) in &t.edges {
        if !g.has_edge(u, v) {
            return Err(CriticalError::NotASubgraph(format!("edge ({u},{v})")));
        }
        if !t.contains_vertex(u) || !t.contains_vertex(v) {
            return Err(CriticalError::NotASubgraph(format!("edge ({u},{v}) leaves T's vertex set")));
        }
    }
    Ok(())
}

/// Maximal proper subgraphs of G containing T, edges first (ascending),
/// then isolated vertices.
pub fn removals(g: &PlaneGraph, t: &SubgraphSpec) -> Vec<Removal> {
    let mut out: Vec<Removal> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| !t.contains_edge(u, v))
        .map(|(u, v)| Removal::Edge(u, v))
        .collect();
    out.extend(
        g.vertices()
            .filter(|&v| g.degree(v) == 0 && !t.contains_vertex(v))
            .map(Removal::Vertex),
    );
    out
}

fn is_identity(g: &PlaneGraph, t: &SubgraphSpec) -> bool {
    g.vertex_count() == t.vertices.len() && g.edge_count() == t.edges.len()
}

/// Decide T-criticality and record a witness per maximal proper subgraph.
pub fn is_t_critical(
    g: &PlaneGraph,
    t: &SubgraphSpec,
    lists: &ListAssignment,
    oracle: &mut ExtensionOracle,
) -> Result<CriticalityCertificate, CriticalError> {
    check_t(g, t)?;
    if is_identity(g, t) {
        return Err(CriticalError::EqualsT);
    }
    let mut blocked = Vec::new();
    for phi in t.colorings(lists) {
        if !oracle.extends(g, lists, &phi)? {
            blocked.push(phi);
        }
    }
    let mut witnesses = Vec::new();
    for r in removals(g, t) {
        let sub = r.apply(g);
        let mut witness = None;
        for phi in &blocked {
            if oracle.extends(&sub, lists, phi)? {
                witness = Some(phi.clone());
                break;
            }
        }
        let found = witness.is_some();
        witnesses.push(RemovalWitness { removal: r, witness });
        if !found {
            return Ok(CriticalityCertificate { verdict: false, witnesses });
        }
    }
    Ok(CriticalityCertificate { verdict: true, witnesses })
}

/// φ-criticality: φ extends to every maximal proper subgraph but not to G.
pub fn is_phi_critical(
    g: &PlaneGraph,
    t: &SubgraphSpec,
    lists: &ListAssignment,
    phi: &PartialColoring,
    oracle: &mut ExtensionOracle,
) -> Result<bool, CriticalError> {
    check_t(g, t)?;
    check_t_coloring(t, lists, phi)?;
    if is_identity(g, t) {
        return Err(CriticalError::EqualsT);
    }
    if oracle.extends(g, lists, phi)? {
        return Ok(false);
    }
    for r in removals(g, t) {
        if !oracle.extends(&r.apply(g), lists, phi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_t_coloring(t: &SubgraphSpec, lists: &ListAssignment, phi: &PartialColoring) -> Result<(), CriticalError> {
    for &v in &t.vertices {
        match phi.get(v) {
            None => return Err(CriticalError::ImproperT(format!("vertex {v} uncolored"))),
            Some(c) if !lists.contains(v, c) => {
                return Err(CriticalError::ImproperT(format!("vertex {v} has color {c} outside its list")))
            }
            _ => {}
        }
    }
    for &(u, v) in &t.edges {
        if phi.get(u) == phi.get(v) {
            return Err(CriticalError::ImproperT(format!("edge ({u},{v}) is monochromatic")));
        }
    }
    Ok(())
}

/// C-criticality of a canvas.
pub fn is_critical_canvas(t: &Canvas, oracle: &mut ExtensionOracle) -> Result<CriticalityCertificate, CriticalError> {
    is_t_critical(&t.graph, &SubgraphSpec::of_cycle(&t.outer), &t.lists, oracle)
}

fn delete_while<F>(g: &PlaneGraph, t: &SubgraphSpec, mut keep_property: F) -> Result<PlaneGraph, CriticalError>
where
    F: FnMut(&PlaneGraph) -> Result<bool, CriticalError>,
{
    let mut h = g.clone();
    loop {
        let mut changed = false;
        for (u, v) in h.edges() {
            if t.contains_edge(u, v) {
                continue;
            }
            let cand = h.without_edge(u, v);
            if keep_property(&cand)? {
                h = cand;
                changed = true;
            }
        }
        let isolated: Vec<Vertex> = h.vertices().filter(|&v| h.degree(v) == 0 && !t.contains_vertex(v)).collect();
        for v in isolated {
            let cand = h.without_vertex(v);
            if keep_property(&cand)? {
                h = cand;
                changed = true;
            }
        }
        if !changed {
            return Ok(h);
        }
    }
}

/// A critical subcanvas obtained by deleting edges (ascending) and then
/// isolated vertices while `phi` still fails to extend.
pub fn find_critical_subcanvas(
    t: &Canvas,
    phi: &PartialColoring,
    oracle: &mut ExtensionOracle,
) -> Result<Canvas, CriticalError> {
    let spec = SubgraphSpec::of_cycle(&t.outer);
    check_t_coloring(&spec, &t.lists, phi)?;
    if oracle.extends(&t.graph, &t.lists, phi)? {
        return Err(CriticalError::Extends);
    }
    let h = delete_while(&t.graph, &spec, |cand| Ok(!oracle.extends(cand, &t.lists, phi)?))?;
    let sub = Canvas { graph: h, outer: t.outer.clone(), lists: t.lists.clone() };
    let cert = is_critical_canvas(&sub, oracle)?;
    assert!(cert.verdict, "greedy deletion left a non-critical subcanvas");
    Ok(sub)
}

/// Boundary colorings that do not extend to G; the extender property
/// P(H) says none of them extends to H.
pub fn blocked_colorings(t: &Canvas, oracle: &mut ExtensionOracle) -> Result<Vec<PartialColoring>, CriticalError> {
    let mut out = Vec::new();
    for phi in BoundaryColorings::for_canvas(t) {
        if !oracle.extends(&t.graph, &t.lists, &phi)? {
            out.push(phi);
        }
    }
    Ok(out)
}

/// P(H): every boundary coloring that extends to H extends to G. Returns
/// the first coloring breaking it.
pub fn extender_counterexample(
    h: &PlaneGraph,
    lists: &ListAssignment,
    blocked: &[PartialColoring],
    oracle: &mut ExtensionOracle,
) -> Result<Option<PartialColoring>, CriticalError> {
    for phi in blocked {
        if oracle.extends(h, lists, phi)? {
            return Ok(Some(phi.clone()));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extender {
    pub graph: PlaneGraph,
    /// H consists of the outer cycle alone.
    pub is_cycle: bool,
    /// Criticality certificate of H when H is more than the cycle.
    pub certificate: Option<CriticalityCertificate>,
}

/// A minimal H ⊆ G containing C such that every boundary coloring that
/// extends to H extends to G. Deletion order: edges outside C ascending,
/// then isolated vertices, repeated to a fixed point. The result is either
/// C itself or C-critical; both are asserted.
pub fn extract_minimal_extender(
    g: &PlaneGraph,
    c: &CycleRef,
    lists: &ListAssignment,
    oracle: &mut ExtensionOracle,
) -> Result<Extender, CriticalError> {
    let t = Canvas { graph: g.clone(), outer: c.clone(), lists: lists.clone() };
    let spec = SubgraphSpec::of_cycle(c);
    let blocked = blocked_colorings(&t, oracle)?;
    let h = delete_while(g, &spec, |cand| Ok(extender_counterexample(cand, lists, &blocked, oracle)?.is_none()))?;
    assert!(extender_counterexample(&h, lists, &blocked, oracle)?.is_none());
    let is_cycle = is_identity(&h, &spec);
    let certificate = if is_cycle {
        None
    } else {
        let cert = is_t_critical(&h, &spec, lists, oracle)?;
        assert!(cert.verdict, "minimal extender is neither the cycle nor critical");
        Some(cert)
    };
    Ok(Extender { graph: h, is_cycle, certificate })
}

/// Re-derive the extender contract for a given H: P(H) holds and fails
/// after every single deletion. Returns a description of the first breach.
pub fn check_extender_contract(
    g: &PlaneGraph,
    c: &CycleRef,
    lists: &ListAssignment,
    h: &PlaneGraph,
    oracle: &mut ExtensionOracle,
) -> Result<Option<String>, CriticalError> {
    let t = Canvas { graph: g.clone(), outer: c.clone(), lists: lists.clone() };
    let spec = SubgraphSpec::of_cycle(c);
    let blocked = blocked_colorings(&t, oracle)?;
    if let Some(phi) = extender_counterexample(h, lists, &blocked, oracle)? {
        return Ok(Some(format!("P(H) fails: {:?} extends to H but not to G", phi.pairs())));
    }
    for r in removals(h, &spec) {
        if extender_counterexample(&r.apply(h), lists, &blocked, oracle)?.is_none() {
            return Ok(Some(format!("H is not minimal: P still holds without {r}")));
        }
    }
    Ok(None)
}

/// Edge set of a graph, for comparisons in tests and reports.
pub fn edge_set(g: &PlaneGraph) -> BTreeSet<Edge> {
    g.edges().into_iter().collect()
}
