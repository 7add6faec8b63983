//! Small hand-checked canvases used by tests, docs and the CLI examples.

use crate::canvas::{Canvas, Color, ListAssignment};
use crate::plane_graph::{self, Dart, PlaneGraph};

fn full() -> Vec<Color> {
    vec![0, 1, 2, 3, 4]
}

fn canvas(graph: PlaneGraph, lists: Vec<Vec<Color>>) -> Canvas {
    Canvas::new(graph, ListAssignment::new(lists)).expect("fixture has an outer cycle")
}

/// Wheel on the rim 0..4 with hub 5; rim vertex i has list {i} and the hub
/// has {0,...,4}.
pub fn w5() -> Canvas {
    let mut lists: Vec<Vec<Color>> = (0..5).map(|i| vec![i]).collect();
    lists.push(full());
    canvas(plane_graph::wheel(5), lists)
}

/// C4 = (0,1,2,3) with the chord 0-2.
pub fn c4e_graph() -> PlaneGraph {
    PlaneGraph::new(vec![vec![1, 2, 3], vec![2, 0], vec![3, 0, 1], vec![0, 2]], Some(Dart(0, 1)))
}

/// [`c4e_graph`] with every list {1,2}.
pub fn c4e() -> Canvas {
    canvas(c4e_graph(), vec![vec![1, 2]; 4])
}

/// [`c4e_graph`] with the given boundary lists.
pub fn c4e_with(lists: [Vec<Color>; 4]) -> Canvas {
    canvas(c4e_graph(), lists.to_vec())
}

/// Outer triangle 0,1,2 and a center 3; boundary lists {1},{2},{3}.
pub fn k4(center: &[Color]) -> Canvas {
    let g = PlaneGraph::new(vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]], Some(Dart(0, 1)));
    canvas(g, vec![vec![1], vec![2], vec![3], center.to_vec()])
}

/// Rim 0..4 with two adjacent hubs: 5 joined to 0,1,2 and 6 joined to
/// 2,3,4,0. Rim vertex i has list {i}; both hubs have {0,...,4}.
pub fn double_wheel_graph() -> PlaneGraph {
    PlaneGraph::new(
        vec![
            vec![1, 5, 6, 4],
            vec![2, 5, 0],
            vec![1, 3, 6, 5],
            vec![2, 4, 6],
            vec![0, 6, 3],
            vec![0, 1, 2, 6],
            vec![0, 5, 2, 3, 4],
        ],
        Some(Dart(0, 1)),
    )
}

pub fn double_wheel() -> Canvas {
    let mut lists: Vec<Vec<Color>> = (0..5).map(|i| vec![i]).collect();
    lists.push(full());
    lists.push(full());
    canvas(double_wheel_graph(), lists)
}

/// Hexagon 0..5 with adjacent hubs 6 (joined to 0,1,2,3) and 7 (joined to
/// 3,4,5,0). Rim lists {0},{1},{2},{3},{1},{2} leave both hubs only the
/// color 4.
pub fn hexagon_hubs() -> Canvas {
    let g = PlaneGraph::new(
        vec![
            vec![1, 6, 7, 5],
            vec![2, 6, 0],
            vec![1, 3, 6],
            vec![6, 2, 4, 7],
            vec![5, 7, 3],
            vec![0, 7, 4],
            vec![1, 2, 3, 7, 0],
            vec![0, 6, 3, 4, 5],
        ],
        Some(Dart(0, 1)),
    );
    let mut lists: Vec<Vec<Color>> = [0, 1, 2, 3, 1, 2].iter().map(|&c| vec![c]).collect();
    lists.push(full());
    lists.push(full());
    canvas(g, lists)
}

/// Outer triangle 0,1,2 with internal vertices 3,4,5 near the sides and a
/// vertex 6 adjacent to those three only. Vertex 6 shares the 4-face
/// 0,3,6,5 with the outer vertex 0 but has no neighbor on the outer cycle.
pub fn three_layer() -> Canvas {
    let g = PlaneGraph::new(
        vec![
            vec![1, 3, 5, 2],
            vec![2, 4, 3, 0],
            vec![0, 5, 4, 1],
            vec![4, 6, 0, 1],
            vec![2, 5, 6, 3, 1],
            vec![4, 2, 0, 6],
            vec![4, 5, 3],
        ],
        Some(Dart(0, 1)),
    );
    let mut lists: Vec<Vec<Color>> = (0..3).map(|i| vec![i]).collect();
    lists.extend(std::iter::repeat_with(full).take(4));
    canvas(g, lists)
}

/// Icosahedron with the face 11,6,7 as outer face: apex 0, upper ring
/// 1..5, lower ring 6..10, bottom 11. Outer vertices get {0},{1},{2} and
/// internal vertices {0,...,4}; every internal vertex has degree five.
pub fn icosahedron() -> Canvas {
    let u = |i: usize| 1 + i % 5;
    let l = |i: usize| 6 + i % 5;
    let mut rotation = vec![(0..5).map(u).collect::<Vec<_>>()];
    for i in 0..5 {
        rotation.push(vec![l(i), u(i + 1), 0, u(i + 4), l(i + 4)]);
    }
    for i in 0..5 {
        rotation.push(vec![11, l(i + 1), u(i + 1), u(i), l(i + 4)]);
    }
    rotation.push(vec![10, 9, 8, 7, 6]);
    let g = PlaneGraph::new(rotation, Some(Dart(11, 6)));
    let mut lists = vec![full(); 12];
    lists[11] = vec![0];
    lists[6] = vec![1];
    lists[7] = vec![2];
    canvas(g, lists)
}

/// Rim 0..4 and a vertex 5 joined to 0,1,3, with further vertices 6 (in
/// the face 1,2,3,5) and 7 (in the face 3,4,0,5). Two of the faces
/// around 5 hold material, so 5 is neither a tripod nor a quadpod.
pub fn two_sided_pod() -> Canvas {
    let g = PlaneGraph::new(
        vec![
            vec![1, 5, 7, 4],
            vec![0, 2, 6, 5],
            vec![3, 6, 1],
            vec![4, 7, 5, 6, 2],
            vec![0, 7, 3],
            vec![7, 0, 1, 6, 3],
            vec![5, 1, 2, 3],
            vec![4, 0, 5, 3],
        ],
        Some(Dart(0, 1)),
    );
    let mut lists: Vec<Vec<Color>> = (0..5).map(|i| vec![i]).collect();
    lists.extend(std::iter::repeat_with(full).take(3));
    canvas(g, lists)
}

/// Cycle 0..k-1 with the given chords, each drawn inside. Chords must be
/// pairwise non-crossing.
pub fn cycle_with_chords(k: usize, chords: &[(usize, usize)]) -> PlaneGraph {
    let mut g = plane_graph::cycle_graph(k);
    for &(a, b) in chords {
        let face = g
            .internal_faces()
            .expect("valid embedding")
            .into_iter()
            .find(|f| f.contains_vertex(a) && f.contains_vertex(b))
            .expect("chords must not cross");
        g = g.with_edge_in_face(&face, a, b).expect("chord endpoints share a face");
    }
    g
}
