//! List coloring: exact extension search, boundary coloring enumeration,
//! the constructive colorer for outer-face list sizes 3/5, and residual
//! lists.

mod cache;
mod search;
mod thomassen;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canvas::{Canvas, Color, ListAssignment};
use crate::plane_graph::{CycleRef, Edge, PlaneGraph, Vertex};

pub use cache::{ExtensionOracle, OracleStats};
pub use search::{extend_counted, SearchStats};
pub use thomassen::{thomassen_color, ThomassenError};

/// A coloring of some of the vertices, indexed by vertex id. Stored without
/// trailing gaps so that equal colorings compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<(Vertex, Color)>", from = "Vec<(Vertex, Color)>")]
pub struct PartialColoring {
    colors: Vec<Option<Color>>,
}

impl PartialColoring {
    pub fn new(n: usize) -> Self {
        PartialColoring { colors: Vec::with_capacity(n) }
    }

    pub fn from_pairs(n: usize, pairs: &[(Vertex, Color)]) -> Self {
        let mut p = PartialColoring::new(n);
        for &(v, c) in pairs {
            p.set(v, c);
        }
        p
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.colors.get(v).copied().flatten()
    }

    pub fn set(&mut self, v: Vertex, c: Color) {
        if v >= self.colors.len() {
            self.colors.resize(v + 1, None);
        }
        self.colors[v] = Some(c);
    }

    pub fn unset(&mut self, v: Vertex) {
        if v < self.colors.len() {
            self.colors[v] = None;
        }
        while self.colors.last() == Some(&None) {
            self.colors.pop();
        }
    }

    /// Colored vertices in increasing order with their colors.
    pub fn pairs(&self) -> Vec<(Vertex, Color)> {
        self.colors
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|c| (v, c)))
            .collect()
    }

    pub fn domain(&self) -> Vec<Vertex> {
        self.pairs().into_iter().map(|(v, _)| v).collect()
    }

    pub fn domain_size(&self) -> usize {
        self.colors.iter().filter(|c| c.is_some()).count()
    }

    /// Keep only the colors of the given vertices.
    pub fn restricted(&self, keep: &[Vertex]) -> PartialColoring {
        let mut p = PartialColoring::new(self.colors.len());
        for &v in keep {
            if let Some(c) = self.get(v) {
                p.set(v, c);
            }
        }
        p
    }
}

impl From<PartialColoring> for Vec<(Vertex, Color)> {
    fn from(p: PartialColoring) -> Self {
        p.pairs()
    }
}

impl From<Vec<(Vertex, Color)>> for PartialColoring {
    fn from(pairs: Vec<(Vertex, Color)>) -> Self {
        PartialColoring::from_pairs(0, &pairs)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColorError {
    #[error("precoloring is improper: adjacent vertices {u} and {v} both have color {color}")]
    Improper { u: Vertex, v: Vertex, color: Color },
    #[error("precoloring gives vertex {v} color {color}, which is not in its list")]
    NotInList { v: Vertex, color: Color },
    #[error("precoloring names vertex {0}, which is not in the graph")]
    UnknownVertex(Vertex),
    #[error("more than 128 distinct colors")]
    TooManyColors,
}

/// Check that `phi` is proper on its domain and respects the lists.
pub fn check_precoloring(g: &PlaneGraph, lists: &ListAssignment, phi: &PartialColoring) -> Result<(), ColorError> {
    for (v, c) in phi.pairs() {
        if !g.contains(v) {
            return Err(ColorError::UnknownVertex(v));
        }
        if !lists.contains(v, c) {
            return Err(ColorError::NotInList { v, color: c });
        }
        for &w in g.rotation(v) {
            if v < w && phi.get(w) == Some(c) {
                return Err(ColorError::Improper { u: v, v: w, color: c });
            }
        }
    }
    Ok(())
}

/// True iff `phi` colors every vertex of `g` properly from its list.
pub fn is_proper_coloring(g: &PlaneGraph, lists: &ListAssignment, phi: &PartialColoring) -> bool {
    g.vertices().all(|v| phi.get(v).is_some()) && check_precoloring(g, lists, phi).is_ok()
}

/// Extend `phi` to a proper L-coloring of `g`, or report that none exists
/// (`Ok(None)`).
pub fn extend(g: &PlaneGraph, lists: &ListAssignment, phi: &PartialColoring) -> Result<Option<PartialColoring>, ColorError> {
    let mut stats = SearchStats::default();
    extend_counted(g, lists, phi, &mut stats)
}

/// Lazy enumeration of the proper list colorings of a cycle. Vertices are
/// taken in increasing id order and colors in increasing order, so the
/// stream is lexicographic. Only the edges of the cycle are constraints;
/// chords are left to the extension question.
pub struct BoundaryColorings {
    order: Vec<Vertex>,
    lists: Vec<Vec<Color>>,
    earlier: Vec<Vec<usize>>,
    pos: Vec<usize>,
    chosen: Vec<Color>,
    n: usize,
    started: bool,
    done: bool,
}

impl BoundaryColorings {
    pub fn for_canvas(t: &Canvas) -> Self {
        Self::for_cycle(&t.outer, &t.lists)
    }

    pub fn for_cycle(c: &CycleRef, lists: &ListAssignment) -> Self {
        Self::for_subgraph(c.vertices(), &c.edges(), lists)
    }

    /// Proper list colorings of the graph with the given vertices and edges.
    pub fn for_subgraph(vertices: &[Vertex], edges: &[Edge], lists: &ListAssignment) -> Self {
        let mut order: Vec<Vertex> = vertices.to_vec();
        order.sort_unstable();
        order.dedup();
        let index = |v: Vertex| order.iter().position(|&x| x == v).unwrap();
        let mut earlier = vec![Vec::new(); order.len()];
        for &(u, v) in edges {
            let (iu, iv) = (index(u), index(v));
            let (a, b) = if iu < iv { (iu, iv) } else { (iv, iu) };
            if !earlier[b].contains(&a) {
                earlier[b].push(a);
            }
        }
        let n = order.iter().copied().max().map_or(0, |m| m + 1).max(lists.len());
        let lists_v = order.iter().map(|&v| lists.get(v).to_vec()).collect();
        let k = order.len();
        BoundaryColorings {
            order,
            lists: lists_v,
            earlier,
            pos: vec![0; k],
            chosen: vec![0; k],
            n,
            started: false,
            done: k == 0,
        }
    }

    fn fits(&self, i: usize, c: Color) -> bool {
        self.earlier[i].iter().all(|&j| self.chosen[j] != c)
    }

    /// Advance level `i` starting at choice `pos[i]`; true when a fitting
    /// color was found.
    fn settle(&mut self, i: usize) -> bool {
        while self.pos[i] < self.lists[i].len() {
            let c = self.lists[i][self.pos[i]];
            if self.fits(i, c) {
                self.chosen[i] = c;
                return true;
            }
            self.pos[i] += 1;
        }
        false
    }

    fn current(&self) -> PartialColoring {
        let mut p = PartialColoring::new(self.n);
        for (i, &v) in self.order.iter().enumerate() {
            p.set(v, self.chosen[i]);
        }
        p
    }
}

impl Iterator for BoundaryColorings {
    type Item = PartialColoring;

    fn next(&mut self) -> Option<PartialColoring> {
        if self.done {
            return None;
        }
        let k = self.order.len();
        let mut i: usize;
        if !self.started {
            self.started = true;
            i = 0;
            self.pos[0] = 0;
        } else {
            i = k - 1;
            self.pos[i] += 1;
        }
        loop {
            if self.settle(i) {
                if i + 1 == k {
                    return Some(self.current());
                }
                i += 1;
                self.pos[i] = 0;
            } else {
                if i == 0 {
                    self.done = true;
                    return None;
                }
                i -= 1;
                self.pos[i] += 1;
            }
        }
    }
}

/// All proper L-colorings of the outer cycle, lexicographically.
pub fn enumerate_boundary_colorings(t: &Canvas) -> BoundaryColorings {
    BoundaryColorings::for_canvas(t)
}

/// S(v) for one internal vertex, with the comparison against
/// 5 − |N(v) ∩ V(C)|.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualEntry {
    pub vertex: Vertex,
    pub residual: Vec<Color>,
    pub boundary_neighbors: usize,
    /// |S(v)| = 5 − |N(v) ∩ V(C)|.
    pub tight: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualLists {
    pub entries: Vec<ResidualEntry>,
}

impl ResidualLists {
    pub fn get(&self, v: Vertex) -> Option<&[Color]> {
        self.entries.iter().find(|e| e.vertex == v).map(|e| e.residual.as_slice())
    }
}

/// S(v) = L(v) minus the colors of the boundary neighbors of v, for every
/// internal vertex.
pub fn residual_lists(t: &Canvas, phi: &PartialColoring) -> ResidualLists {
    let on = t.outer_mask();
    let entries = t
        .internal_vertices()
        .into_iter()
        .map(|v| {
            let boundary: Vec<Vertex> = t.graph.rotation(v).iter().copied().filter(|&w| on[w]).collect();
            let used: BTreeSet<Color> = boundary.iter().filter_map(|&w| phi.get(w)).collect();
            let residual: Vec<Color> = t.lists.get(v).iter().copied().filter(|c| !used.contains(c)).collect();
            let tight = residual.len() + boundary.len() == 5;
            ResidualEntry { vertex: v, residual, boundary_neighbors: boundary.len(), tight }
        })
        .collect();
    ResidualLists { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn boundary_phi(t: &Canvas) -> PartialColoring {
        enumerate_boundary_colorings(t).next().unwrap()
    }

    #[test]
    fn k4_center() {
        let t = fixtures::k4(&[1, 2, 3]);
        let phi = boundary_phi(&t);
        assert_eq!(extend(&t.graph, &t.lists, &phi).unwrap(), None);
        let t = fixtures::k4(&[1, 2, 3, 4]);
        let phi = boundary_phi(&t);
        let col = extend(&t.graph, &t.lists, &phi).unwrap().unwrap();
        assert_eq!(col.get(3), Some(4));
        assert!(is_proper_coloring(&t.graph, &t.lists, &col));
    }

    #[test]
    fn wheel_hub_is_blocked() {
        let t = fixtures::w5();
        let phi = boundary_phi(&t);
        assert_eq!(phi.pairs(), vec![(0, 0), (1, 1), (2, 2), (3, 3), (4, 4)]);
        assert_eq!(extend(&t.graph, &t.lists, &phi).unwrap(), None);
    }

    #[test]
    fn improper_precoloring_is_rejected() {
        let t = fixtures::c4e();
        let phi = PartialColoring::from_pairs(4, &[(0, 1), (1, 1)]);
        assert_eq!(
            extend(&t.graph, &t.lists, &phi),
            Err(ColorError::Improper { u: 0, v: 1, color: 1 })
        );
        let phi = PartialColoring::from_pairs(4, &[(0, 7)]);
        assert!(matches!(extend(&t.graph, &t.lists, &phi), Err(ColorError::NotInList { .. })));
    }

    #[test]
    fn boundary_enumeration() {
        assert_eq!(enumerate_boundary_colorings(&fixtures::w5()).count(), 1);
        let got: Vec<Vec<(usize, u32)>> = enumerate_boundary_colorings(&fixtures::c4e()).map(|p| p.pairs()).collect();
        assert_eq!(
            got,
            vec![vec![(0, 1), (1, 2), (2, 1), (3, 2)], vec![(0, 2), (1, 1), (2, 2), (3, 1)]]
        );
        let tri = crate::plane_graph::cycle_graph(3);
        let lists = ListAssignment::new(vec![vec![1, 2], vec![1, 2], vec![3]]);
        let t = Canvas::new(tri, lists).unwrap();
        assert_eq!(enumerate_boundary_colorings(&t).count(), 2);
    }

    #[test]
    fn residuals() {
        let t = fixtures::w5();
        let r = residual_lists(&t, &boundary_phi(&t));
        assert_eq!(r.get(5), Some(&[][..]));
        assert!(r.entries[0].tight);

        let t = fixtures::k4(&[1, 2, 3, 4]);
        let r = residual_lists(&t, &boundary_phi(&t));
        assert_eq!(r.get(3), Some(&[4][..]));

        let t = fixtures::double_wheel();
        let r = residual_lists(&t, &boundary_phi(&t));
        assert_eq!(r.get(5), Some(&[3, 4][..]));
        assert_eq!(r.get(6), Some(&[1][..]));
    }
}
