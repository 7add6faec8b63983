//! Cross-check of the plane graph enumerator against a brute-force oracle:
//! every edge set over a fixed outer cycle, every rotation system, kept when
//! it is planar, 2-connected and has the cycle as a face, then deduplicated
//! by trying every vertex permutation with and without reflection.

use std::collections::BTreeSet;

use canvaslab::genlab::{canonical_key, enumerate_plane_graphs};
use canvaslab::plane_graph::PlaneGraph;

type Rotation = Vec<Vec<usize>>;

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn connected_without(n: usize, adj: &[Vec<usize>], skip: Option<usize>) -> bool {
    let start = (0..n).find(|&v| Some(v) != skip).unwrap();
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if Some(w) != skip && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    (0..n).all(|v| Some(v) == skip || seen[v])
}

/// Face orbits of the dart permutation (u,v) -> (v, successor of u at v).
fn faces(rot: &Rotation) -> Vec<Vec<(usize, usize)>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for u in 0..rot.len() {
        for &v in &rot[u] {
            if seen.contains(&(u, v)) {
                continue;
            }
            let mut walk = Vec::new();
            let (mut a, mut b) = (u, v);
            while seen.insert((a, b)) {
                walk.push((a, b));
                let r = &rot[b];
                let i = r.iter().position(|&x| x == a).unwrap();
                let next = r[(i + 1) % r.len()];
                a = b;
                b = next;
            }
            out.push(walk);
        }
    }
    out
}

fn has_cycle_face(rot: &Rotation, k: usize) -> bool {
    let fwd: BTreeSet<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    let bwd: BTreeSet<(usize, usize)> = (0..k).map(|i| ((i + 1) % k, i)).collect();
    faces(rot).iter().any(|f| {
        let s: BTreeSet<_> = f.iter().copied().collect();
        s == fwd || s == bwd
    })
}

/// Smallest relabeled rotation system over all symmetries that keep the
/// cycle 0..k on itself.
fn oracle_key(rot: &Rotation, k: usize) -> Vec<Vec<usize>> {
    let n = rot.len();
    let cyc: BTreeSet<(usize, usize)> = (0..k).map(|i| (i.min((i + 1) % k), i.max((i + 1) % k))).collect();
    let mut best: Option<Vec<Vec<usize>>> = None;
    for p in permutations(&(0..n).collect::<Vec<_>>()) {
        let maps_cycle = cyc.iter().all(|&(a, b)| {
            let (x, y) = (p[a], p[b]);
            cyc.contains(&(x.min(y), x.max(y)))
        });
        if !maps_cycle {
            continue;
        }
        for mirror in [false, true] {
            let mut out = vec![Vec::new(); n];
            for v in 0..n {
                let mut r: Vec<usize> = rot[v].iter().map(|&w| p[w]).collect();
                if mirror {
                    r.reverse();
                }
                let m = (0..r.len()).min_by_key(|&i| r[i]).unwrap();
                r.rotate_left(m);
                out[p[v]] = r;
            }
            if best.as_ref().is_none_or(|b| out < *b) {
                best = Some(out);
            }
        }
    }
    best.unwrap()
}

fn oracle(k: usize, m: usize) -> BTreeSet<Vec<Vec<usize>>> {
    let mut keys = BTreeSet::new();
    for j in 0..=m {
        let n = k + j;
        let cyc: BTreeSet<(usize, usize)> = (0..k).map(|i| (i.min((i + 1) % k), i.max((i + 1) % k))).collect();
        let optional: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|e| !cyc.contains(e)).collect();
        for mask in 0u32..(1 << optional.len()) {
            let mut adj = vec![Vec::new(); n];
            let edges = cyc.iter().copied().chain((0..optional.len()).filter(|i| mask >> i & 1 == 1).map(|i| optional[i]));
            let mut e = 0;
            for (a, b) in edges {
                adj[a].push(b);
                adj[b].push(a);
                e += 1;
            }
            if e + 6 > 3 * n || adj.iter().any(|a| a.len() < 2) || !(0..n).all(|x| connected_without(n, &adj, Some(x))) {
                continue;
            }
            // every rotation system: fix the first neighbor, permute the rest
            let choices: Vec<Vec<Vec<usize>>> = adj
                .iter()
                .map(|a| permutations(&a[1..]).into_iter().map(|mut p| {
                    p.insert(0, a[0]);
                    p
                }).collect())
                .collect();
            let mut idx = vec![0; n];
            loop {
                let rot: Rotation = (0..n).map(|v| choices[v][idx[v]].clone()).collect();
                let f = faces(&rot).len();
                if n + f == e + 2 && has_cycle_face(&rot, k) {
                    keys.insert(oracle_key(&rot, k));
                }
                let mut v = 0;
                while v < n {
                    idx[v] += 1;
                    if idx[v] < choices[v].len() {
                        break;
                    }
                    idx[v] = 0;
                    v += 1;
                }
                if v == n {
                    break;
                }
            }
        }
    }
    keys
}

/// Oracle key of an enumerated graph: outer walk relabeled to 0..k.
fn key_of(g: &PlaneGraph) -> Vec<Vec<usize>> {
    let outer = g.outer_cycle().unwrap();
    let k = outer.len();
    let mut map = vec![usize::MAX; g.n()];
    for (i, &v) in outer.vertices().iter().enumerate() {
        map[v] = i;
    }
    let mut next = k;
    for v in g.vertices() {
        if map[v] == usize::MAX {
            map[v] = next;
            next += 1;
        }
    }
    let mut rot = vec![Vec::new(); next];
    for v in g.vertices() {
        rot[map[v]] = g.rotation(v).iter().map(|&w| map[w]).collect();
    }
    oracle_key(&rot, k)
}

fn compare(k: usize, m: usize) {
    let expected = oracle(k, m);
    let graphs = enumerate_plane_graphs(k, m, None);
    let got: Vec<Vec<Vec<usize>>> = graphs.iter().map(key_of).collect();
    let got_set: BTreeSet<_> = got.iter().cloned().collect();
    assert_eq!(got_set.len(), got.len(), "k={k} m={m}: enumerator returned isomorphic duplicates");
    assert_eq!(got_set, expected, "k={k} m={m}");
    // the library's own canonical keys separate exactly the same classes
    let lib: BTreeSet<_> = graphs.iter().map(|g| canonical_key(g).unwrap()).collect();
    assert_eq!(lib.len(), expected.len());
}

#[test]
fn triangle_up_to_two_inside() {
    compare(3, 0);
    compare(3, 1);
    compare(3, 2);
}

#[test]
fn square_and_pentagon() {
    compare(4, 0);
    compare(4, 1);
    compare(5, 0);
}

#[test]
fn hexagon_chords_only() {
    compare(6, 0);
}
