//! Worked fixtures, checked against brute-force criticality and plain
//! counting written independently of the library.

mod common;

use canvaslab::canvas::CanvasFinding;
use canvaslab::colorer::ExtensionOracle;
use canvaslab::critical::{extract_minimal_extender, is_critical_canvas};
use canvaslab::deficiency::{self, rat, Params};
use canvaslab::fixtures;
use common::brute_critical;

#[test]
fn wheel_is_critical_with_def_two() {
    let t = fixtures::w5();
    assert!(brute_critical(&t));
    let cert = is_critical_canvas(&t, &mut ExtensionOracle::new()).unwrap();
    assert!(cert.verdict);
    assert_eq!(deficiency::deficiency(&t), 10 - 5 - 3);
    // s = 1/18 + (1 + 1)/12, d = 2 - 2/9
    assert_eq!(deficiency::d_value(&t, &Params::standard()).unwrap(), rat(16, 9));
}

#[test]
fn chorded_square_witness() {
    let t = fixtures::c4e();
    assert!(brute_critical(&t));
    let cert = is_critical_canvas(&t, &mut ExtensionOracle::new()).unwrap();
    assert!(cert.verdict);
    let w = cert.witnesses[0].witness.as_ref().unwrap();
    assert_eq!(w.pairs(), vec![(0, 1), (1, 2), (2, 1), (3, 2)]);
    assert_eq!(deficiency::deficiency(&t), 1);
}

#[test]
fn disjoint_pair_lists_make_the_chord_redundant() {
    let t = fixtures::c4e_with([vec![1, 2], vec![3, 4], vec![5, 6], vec![3, 4]]);
    assert!(!brute_critical(&t));
    let h = extract_minimal_extender(&t.graph, &t.outer, &t.lists, &mut ExtensionOracle::new()).unwrap();
    assert!(h.is_cycle);
    assert_eq!(h.graph.edge_count(), 4);
}

#[test]
fn k4_with_short_center_list() {
    let t = fixtures::k4(&[1, 2, 3, 4]);
    assert_eq!(t.validate().violations, vec![CanvasFinding::ShortInternalList { vertex: 3, size: 4 }]);
    assert!(!brute_critical(&t));
    assert!(!is_critical_canvas(&t, &mut ExtensionOracle::new()).unwrap().verdict);
    let h = extract_minimal_extender(&t.graph, &t.outer, &t.lists, &mut ExtensionOracle::new()).unwrap();
    assert!(h.is_cycle && h.graph.vertex_count() == 3);
}

#[test]
fn hexagon_hubs_meet_the_potential_bound() {
    let t = fixtures::hexagon_hubs();
    assert!(t.validate().ok);
    assert!(brute_critical(&t));
    assert!(is_critical_canvas(&t, &mut ExtensionOracle::new()).unwrap().verdict);
    // nine edges off C, two internal vertices, both adjacent to C
    assert_eq!(deficiency::deficiency(&t), 9 - 6);
    let d = deficiency::d_value(&t, &Params::standard()).unwrap();
    assert_eq!(d, rat(3, 1) - rat(2, 18) - rat(4, 12));
    assert!(d >= rat(7, 3));
}

#[test]
fn double_wheel_is_not_critical() {
    let t = fixtures::double_wheel();
    assert_eq!(brute_critical(&t), is_critical_canvas(&t, &mut ExtensionOracle::new()).unwrap().verdict);
    assert!(!brute_critical(&t));
}
