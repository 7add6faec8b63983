//! Backtracking extension search over bitmask domains.
//!
//! Branches on the uncolored vertex with the fewest remaining colors (ties
//! to the smallest id), tries colors in increasing order and prunes
//! neighbor domains as it goes.

use std::collections::BTreeSet;

use super::{check_precoloring, ColorError, PartialColoring};
use crate::canvas::{Color, ListAssignment};
use crate::plane_graph::{PlaneGraph, Vertex};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Search tree nodes visited.
    pub nodes: u64,
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    dom: Vec<u128>,
    assigned: Vec<Option<u32>>,
    trail: Vec<(usize, u128)>,
    nodes: u64,
}

impl Search<'_> {
    fn dfs(&mut self) -> bool {
        self.nodes += 1;
        let mut best: Option<(u32, usize)> = None;
        for (i, a) in self.assigned.iter().enumerate() {
            if a.is_none() {
                let k = self.dom[i].count_ones();
                if best.is_none_or(|(bk, _)| k < bk) {
                    best = Some((k, i));
                }
            }
        }
        let Some((_, v)) = best else {
            return true;
        };
        let mut rest = self.dom[v];
        while rest != 0 {
            let c = rest.trailing_zeros();
            rest &= rest - 1;
            let bit = 1u128 << c;
            let mark = self.trail.len();
            self.assigned[v] = Some(c);
            let mut ok = true;
            for &w in &self.adj[v] {
                if self.assigned[w].is_none() && self.dom[w] & bit != 0 {
                    self.trail.push((w, self.dom[w]));
                    self.dom[w] &= !bit;
                    if self.dom[w] == 0 {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && self.dfs() {
                return true;
            }
            while self.trail.len() > mark {
                let (w, d) = self.trail.pop().unwrap();
                self.dom[w] = d;
            }
            self.assigned[v] = None;
        }
        false
    }
}

/// [`super::extend`] that also accumulates search statistics.
pub fn extend_counted(
    g: &PlaneGraph,
    lists: &ListAssignment,
    phi: &PartialColoring,
    stats: &mut SearchStats,
) -> Result<Option<PartialColoring>, ColorError> {
    check_precoloring(g, lists, phi)?;
    let free: Vec<Vertex> = g.vertices().filter(|&v| phi.get(v).is_none()).collect();
    let palette: Vec<Color> = free
        .iter()
        .flat_map(|&v| lists.get(v).iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if palette.len() > 128 {
        return Err(ColorError::TooManyColors);
    }
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in free.iter().enumerate() {
        local[v] = i;
    }
    let mut dom = Vec::with_capacity(free.len());
    let mut adj = Vec::with_capacity(free.len());
    for &v in &free {
        let mut mask = 0u128;
        for c in lists.get(v) {
            let idx = palette.binary_search(c).unwrap();
            mask |= 1 << idx;
        }
        let mut nb = Vec::new();
        for &w in g.rotation(v) {
            match phi.get(w) {
                Some(c) => {
                    if let Ok(idx) = palette.binary_search(&c) {
                        mask &= !(1u128 << idx);
                    }
                }
                None => nb.push(local[w]),
            }
        }
        if mask == 0 {
            stats.nodes += 1;
            return Ok(None);
        }
        dom.push(mask);
        adj.push(nb);
    }
    let mut s = Search { adj: &adj, dom, assigned: vec![None; free.len()], trail: Vec::new(), nodes: 0 };
    let found = s.dfs();
    stats.nodes += s.nodes;
    if !found {
        return Ok(None);
    }
    let mut out = phi.clone();
    for (i, &v) in free.iter().enumerate() {
        out.set(v, palette[s.assigned[i].unwrap() as usize]);
    }
    assert!(super::is_proper_coloring(g, lists, &out), "extension search returned an improper coloring");
    Ok(Some(out))
}
