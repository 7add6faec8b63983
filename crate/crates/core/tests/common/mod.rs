//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's colorer or criticality code.
#![allow(dead_code)]

use canvaslab::canvas::{Canvas, ListAssignment};
use canvaslab::plane_graph::PlaneGraph;

/// All proper colorings of the outer cycle from the lists, by full product.
pub fn cycle_colorings(t: &Canvas) -> Vec<Vec<(usize, u32)>> {
    let vs = t.outer.vertices().to_vec();
    let mut out = vec![Vec::new()];
    for &v in &vs {
        out = out
            .into_iter()
            .flat_map(|p: Vec<(usize, u32)>| {
                t.lists.get(v).iter().map(move |&c| {
                    let mut q = p.clone();
                    q.push((v, c));
                    q
                })
            })
            .collect();
    }
    let k = vs.len();
    out.retain(|p| (0..k).all(|i| p[i].1 != p[(i + 1) % k].1));
    out
}

pub fn extends(g: &PlaneGraph, lists: &ListAssignment, pre: &[(usize, u32)]) -> bool {
    let mut color = vec![None; g.n()];
    for &(v, c) in pre {
        color[v] = Some(c);
    }
    let free: Vec<usize> = g.vertices().filter(|&v| color[v].is_none()).collect();
    fn go(i: usize, free: &[usize], g: &PlaneGraph, lists: &ListAssignment, color: &mut Vec<Option<u32>>) -> bool {
        if i == free.len() {
            return g.edges().iter().all(|&(a, b)| color[a] != color[b]);
        }
        for &c in lists.get(free[i]) {
            color[free[i]] = Some(c);
            if go(i + 1, free, g, lists, color) {
                return true;
            }
        }
        color[free[i]] = None;
        false
    }
    go(0, &free, g, lists, &mut color)
}

/// C-critical: G differs from C and each G - e, e off C, admits a coloring
/// of C that extends to G - e but not to G.
pub fn brute_critical(t: &Canvas) -> bool {
    let cyc = t.outer.edge_set();
    let off: Vec<(usize, usize)> = t.graph.edges().into_iter().filter(|e| !cyc.contains(e)).collect();
    if off.is_empty() {
        return false;
    }
    let cols = cycle_colorings(t);
    off.iter().all(|&(u, v)| {
        let h = t.graph.without_edge(u, v);
        cols.iter().any(|p| extends(&h, &t.lists, p) && !extends(&t.graph, &t.lists, p))
    })
}

