//! Constructive colorer for plane graphs whose outer-face vertices have at
//! least three colors and whose other vertices have at least five, with up
//! to two adjacent precolored outer vertices.
//!
//! Follows the classical induction. A cutvertex splits the graph into
//! pieces that are colored one after another. A 2-connected graph with
//! fewer than two precolored vertices gets an outer edge precolored. A chord
//! of the outer cycle splits the disk in two, and the side holding the
//! precolored edge goes first. Otherwise the outer neighbor `w` of the first
//! precolored vertex is deleted after reserving two of its colors, which are
//! removed from the lists of its inner neighbors.

use std::collections::BTreeSet;

use thiserror::Error;

use super::{is_proper_coloring, PartialColoring};
use crate::canvas::{Color, ListAssignment};
use crate::plane_graph::{edge, CycleRef, PlaneGraph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThomassenError {
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("internal failure: {0}")]
    Internal(String),
}

fn hyp(msg: impl Into<String>) -> ThomassenError {
    ThomassenError::Hypothesis(msg.into())
}

fn internal(msg: impl Into<String>) -> ThomassenError {
    ThomassenError::Internal(msg.into())
}

/// Vertices incident with the outer face.
fn outer_vertices(g: &PlaneGraph) -> Result<BTreeSet<Vertex>, ThomassenError> {
    if g.edge_count() == 0 {
        return Ok(g.vertices().collect());
    }
    let face = g.outer_face().map_err(|e| hyp(e.to_string()))?;
    Ok(face.vertices().into_iter().collect())
}

/// Color `g` from `lists`, where `z` must be the set of vertices on the
/// outer face and `s` the precolored vertices. The graph must be connected.
pub fn thomassen_color(
    g: &PlaneGraph,
    z: &[Vertex],
    s: &[Vertex],
    lists: &ListAssignment,
) -> Result<PartialColoring, ThomassenError> {
    let report = g.check_embedding();
    if !report.is_valid() {
        return Err(hyp(format!("invalid embedding: {}", report.violations[0])));
    }
    if !g.is_connected() {
        return Err(hyp("graph must be connected"));
    }
    let outer = outer_vertices(g)?;
    let zset: BTreeSet<Vertex> = z.iter().copied().collect();
    if zset != outer {
        return Err(hyp(format!("Z must be the outer-face vertex set {outer:?}, got {zset:?}")));
    }
    let sset: BTreeSet<Vertex> = s.iter().copied().collect();
    if sset.len() != s.len() || s.len() > 2 {
        return Err(hyp("S must hold at most two distinct vertices"));
    }
    if !sset.is_subset(&zset) {
        return Err(hyp("S must lie on the outer face"));
    }
    for v in g.vertices() {
        let size = lists.get(v).len();
        if sset.contains(&v) {
            if size != 1 {
                return Err(hyp(format!("precolored vertex {v} needs a single color, has {size}")));
            }
        } else if zset.contains(&v) {
            if size < 3 {
                return Err(hyp(format!("outer vertex {v} needs at least 3 colors, has {size}")));
            }
        } else if size < 5 {
            return Err(hyp(format!("inner vertex {v} needs at least 5 colors, has {size}")));
        }
    }
    if let [a, b] = *s {
        if !g.has_edge(a, b) {
            return Err(hyp(format!("precolored vertices {a} and {b} must be adjacent")));
        }
        if lists.get(a) == lists.get(b) {
            return Err(hyp(format!("precolored vertices {a} and {b} must have different colors")));
        }
    }
    let out = solve(g, lists, s)?;
    if !is_proper_coloring(g, lists, &out) {
        return Err(internal("result is not a proper list coloring"));
    }
    Ok(out)
}

fn first_color(lists: &ListAssignment, v: Vertex, avoid: &[Color]) -> Result<Color, ThomassenError> {
    lists
        .get(v)
        .iter()
        .copied()
        .find(|c| !avoid.contains(c))
        .ok_or_else(|| internal(format!("no color left for vertex {v}")))
}

fn merge(into: &mut PartialColoring, from: &PartialColoring) {
    for (v, c) in from.pairs() {
        into.set(v, c);
    }
}

fn solve(g: &PlaneGraph, lists: &ListAssignment, s: &[Vertex]) -> Result<PartialColoring, ThomassenError> {
    let n = g.vertex_count();
    if n <= 2 {
        let mut out = PartialColoring::new(g.n());
        let mut order: Vec<Vertex> = s.to_vec();
        order.extend(g.vertices().filter(|v| !s.contains(v)));
        for v in order {
            let used: Vec<Color> = g.rotation(v).iter().filter_map(|&w| out.get(w)).collect();
            out.set(v, first_color(lists, v, &used)?);
        }
        return Ok(out);
    }
    if let Some(x) = g.cutvertex() {
        return split_at_cutvertex(g, lists, s, x);
    }
    let c = g.outer_cycle().map_err(|e| internal(e.to_string()))?;
    let k = c.len();
    let pos = |v: Vertex| c.vertices().iter().position(|&x| x == v);

    if s.len() < 2 {
        let mut l2 = lists.clone();
        let p1 = match s.first() {
            Some(&p) => p,
            None => {
                let p = c.vertices()[0];
                let col = first_color(lists, p, &[])?;
                l2.set(p, vec![col]);
                p
            }
        };
        let i = pos(p1).ok_or_else(|| internal("precolored vertex is not on the outer cycle"))?;
        let p2 = c.vertices()[(i + 1) % k];
        let c1 = l2.get(p1)[0];
        let c2 = first_color(&l2, p2, &[c1])?;
        l2.set(p2, vec![c2]);
        return solve(g, &l2, &[p1, p2]);
    }

    let (p1, p2) = (s[0], s[1]);
    let on: BTreeSet<Vertex> = c.vertices().iter().copied().collect();
    let cyc = c.edge_set();
    let chord = g
        .edges()
        .into_iter()
        .find(|&(u, v)| on.contains(&u) && on.contains(&v) && !cyc.contains(&(u, v)));
    if let Some((u, v)) = chord {
        return split_at_chord(g, lists, s, &c, u, v);
    }

    // no chord: p1p2 is an edge of the outer cycle
    let i1 = pos(p1).ok_or_else(|| internal("precolored vertex is not on the outer cycle"))?;
    let after = c.vertices()[(i1 + 1) % k];
    let before = c.vertices()[(i1 + k - 1) % k];
    let w = if after == p2 { before } else { after };
    let w_next = {
        let iw = pos(w).unwrap();
        let a = c.vertices()[(iw + 1) % k];
        if a == p1 {
            c.vertices()[(iw + k - 1) % k]
        } else {
            a
        }
    };
    debug_assert!(cyc.contains(&edge(p1, p2)));
    let phi_p1 = lists.get(p1)[0];
    let reserve: Vec<Color> = lists.get(w).iter().copied().filter(|&x| x != phi_p1).take(2).collect();
    if reserve.len() < 2 {
        return Err(internal(format!("vertex {w} has fewer than two spare colors")));
    }
    let mut l2 = lists.clone();
    for &nb in g.rotation(w) {
        if !on.contains(&nb) {
            let trimmed = lists.get(nb).iter().copied().filter(|c| !reserve.contains(c)).collect();
            l2.set(nb, trimmed);
        }
    }
    let rest = g.without_vertex(w);
    let mut out = solve(&rest, &l2, s)?;
    let blocked = out.get(w_next).ok_or_else(|| internal("outer neighbor left uncolored"))?;
    let col = reserve
        .into_iter()
        .find(|&x| x != blocked)
        .ok_or_else(|| internal("both reserved colors blocked"))?;
    out.set(w, col);
    Ok(out)
}

fn split_at_chord(
    g: &PlaneGraph,
    lists: &ListAssignment,
    s: &[Vertex],
    c: &CycleRef,
    u: Vertex,
    v: Vertex,
) -> Result<PartialColoring, ThomassenError> {
    let vs = c.vertices();
    let k = vs.len();
    let iu = vs.iter().position(|&x| x == u).unwrap();
    let iv = vs.iter().position(|&x| x == v).unwrap();
    let arc = |from: usize, to: usize| -> CycleRef {
        let mut out = Vec::new();
        let mut i = from;
        loop {
            out.push(vs[i]);
            if i == to {
                break;
            }
            i = (i + 1) % k;
        }
        CycleRef::new(out)
    };
    let mut sides = Vec::new();
    for cyc in [arc(iu, iv), arc(iv, iu)] {
        let disk = g.disk_subgraph(&cyc).map_err(|e| internal(e.to_string()))?;
        sides.push(disk.graph);
    }
    let holds_s = |h: &PlaneGraph| s.iter().all(|&x| h.contains(x)) && h.has_edge(s[0], s[1]);
    let first = if holds_s(&sides[0]) { 0 } else { 1 };
    if !holds_s(&sides[first]) {
        return Err(internal("precolored edge lies on neither side of a chord"));
    }
    let mut out = solve(&sides[first], lists, s)?;
    let mut l2 = lists.clone();
    for x in [u, v] {
        l2.set(x, vec![out.get(x).unwrap()]);
    }
    let second = solve(&sides[1 - first], &l2, &[u, v])?;
    merge(&mut out, &second);
    Ok(out)
}

fn split_at_cutvertex(
    g: &PlaneGraph,
    lists: &ListAssignment,
    s: &[Vertex],
    x: Vertex,
) -> Result<PartialColoring, ThomassenError> {
    let comps = g.without_vertex(x).components();
    let pieces: Vec<PlaneGraph> = comps
        .iter()
        .map(|comp| {
            let mut keep = vec![false; g.n()];
            keep[x] = true;
            for &v in comp {
                keep[v] = true;
            }
            g.induced(&keep)
        })
        .collect();
    let first = match s.iter().find(|&&v| v != x) {
        Some(&v) => pieces.iter().position(|p| p.contains(v)).unwrap(),
        None => {
            let d = g.outer_dart().ok_or_else(|| internal("no outer face"))?;
            pieces
                .iter()
                .position(|p| p.has_edge(d.0, d.1))
                .ok_or_else(|| internal("outer edge in no piece"))?
        }
    };
    let mut out = solve(&pieces[first], lists, s)?;
    let mut l2 = lists.clone();
    l2.set(x, vec![out.get(x).unwrap()]);
    for (i, p) in pieces.iter().enumerate() {
        if i != first {
            let part = solve(p, &l2, &[x])?;
            merge(&mut out, &part);
        }
    }
    Ok(out)
}
