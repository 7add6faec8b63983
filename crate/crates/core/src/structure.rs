//! Structural detectors: chords, tripods and quadpods, dividing vertices,
//! relaxations.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canvas::{subcanvas_by_cycle, Canvas, CanvasError};
use crate::colorer::ExtensionOracle;
use crate::critical::{is_critical_canvas, CriticalError};
use crate::deficiency::split_cycles;
use crate::plane_graph::{edge, CycleRef, Dart, Edge, EmbeddingError, FaceWalk, PlaneGraph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("vertex {0} is not an internal vertex")]
    NotInternal(Vertex),
    #[error("vertex {vertex} has only {count} neighbors on the outer cycle")]
    TooFewContacts { vertex: Vertex, count: usize },
    #[error("vertex {0} is not a regular tripod")]
    NotRegularTripod(Vertex),
    #[error("vertex {0} shares no two distinct faces with distinct outer vertices")]
    NoFacePair(Vertex),
    #[error("no face of the pod graph contains further material")]
    NoMaterialFace,
    #[error("canvas is not critical")]
    NotCritical,
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Canvas(#[from] CanvasError),
    #[error(transparent)]
    Critical(#[from] CriticalError),
}

/// Chords of the outer cycle, sorted.
pub fn chords(t: &Canvas) -> Vec<Edge> {
    let on = t.outer_mask();
    let cyc = t.outer.edge_set();
    t.graph
        .edges()
        .into_iter()
        .filter(|&(u, v)| on[u] && on[v] && !cyc.contains(&(u, v)))
        .collect()
}

/// Neighbors of `v` on the outer cycle, in the order of the cycle.
pub fn contacts(t: &Canvas, v: Vertex) -> Vec<Vertex> {
    t.outer
        .vertices()
        .iter()
        .copied()
        .filter(|&u| t.graph.has_edge(u, v))
        .collect()
}

/// Internal vertices with at least three neighbors on C.
pub fn boundary_tripod_candidates(t: &Canvas) -> BTreeSet<Vertex> {
    t.internal_vertices()
        .into_iter()
        .filter(|&v| contacts(t, v).len() >= 3)
        .collect()
}

/// Internal faces of `G[V(C) ∪ X]` and, for each, whether it contains a
/// vertex or edge of G outside that induced subgraph.
pub struct PodFaces {
    pub graph: PlaneGraph,
    pub faces: Vec<FaceWalk>,
    pub material: Vec<bool>,
}

impl PodFaces {
    pub fn material_faces(&self) -> Vec<&FaceWalk> {
        self.faces.iter().zip(&self.material).filter(|(_, &m)| m).map(|(f, _)| f).collect()
    }
}

pub fn pod_faces(t: &Canvas, x: &BTreeSet<Vertex>) -> Result<PodFaces, EmbeddingError> {
    let mut keep = t.outer_mask();
    for &v in x {
        keep[v] = true;
    }
    let h = t.graph.induced(&keep);
    let set = h.face_set()?;
    let outer = set.index_of(h.outer_dart().ok_or(EmbeddingError::NoOuterFace)?);
    let mut hit = vec![false; set.len()];
    // H is induced, so material means a vertex outside H; every such component
    // touches H because G is connected.
    for a in h.vertices() {
        let rot = t.graph.rotation(a);
        for (i, &y) in rot.iter().enumerate() {
            if keep[y] {
                continue;
            }
            let m = rot.len();
            let anchor = (1..m).map(|s| rot[(i + m - s) % m]).find(|&w| keep[w]);
            if let Some(anchor) = anchor {
                if let Some(idx) = set.index_of(Dart(anchor, a)) {
                    hit[idx] = true;
                }
            }
        }
    }
    let mut faces = Vec::new();
    let mut material = Vec::new();
    for (i, f) in set.walks.iter().enumerate() {
        if Some(i) != outer {
            faces.push(f.clone());
            material.push(hit[i]);
        }
    }
    Ok(PodFaces { graph: h, faces, material })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PodKind {
    Tripod,
    Quadpod,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PodClassification {
    pub vertex: Vertex,
    pub kind: PodKind,
    pub regular: bool,
    /// Neighbors on C in cycle order.
    pub contacts: Vec<Vertex>,
    /// u1..uk with the material face incident with u1 and uk.
    pub standard_order: Option<Vec<Vertex>>,
    pub pod_cycle: Option<CycleRef>,
    pub material_faces: usize,
}

/// Tripod / quadpod status of an internal vertex with at least three
/// neighbors on C.
pub fn classify_pod(t: &Canvas, v: Vertex) -> Result<PodClassification, StructureError> {
    if !t.graph.contains(v) || t.is_on_outer(v) {
        return Err(StructureError::NotInternal(v));
    }
    let us = contacts(t, v);
    let k = us.len();
    if k < 3 {
        return Err(StructureError::TooFewContacts { vertex: v, count: k });
    }
    let pf = pod_faces(t, &BTreeSet::from([v]))?;
    let mat = pf.material_faces();
    let mut out = PodClassification {
        vertex: v,
        kind: PodKind::None,
        regular: false,
        contacts: us.clone(),
        standard_order: None,
        pod_cycle: None,
        material_faces: mat.len(),
    };
    let kind = if k == 3 { PodKind::Tripod } else { PodKind::Quadpod };
    match mat.as_slice() {
        [] => out.kind = kind,
        [f] => {
            // u_j, u_{j+1} consecutive on C and both on f: start the order at u_{j+1}
            if let Some(j) = (0..k).find(|&j| f.contains_vertex(us[j]) && f.contains_vertex(us[(j + 1) % k])) {
                out.kind = kind;
                out.regular = true;
                out.standard_order = Some((1..=k).map(|s| us[(j + s) % k]).collect());
                out.pod_cycle = Some(f.cycle()?);
            }
        }
        _ => {}
    }
    Ok(out)
}

/// C⟨X⟩: the boundary of the least face of `G[V(C) ∪ X]` containing
/// material, and whether more than one face qualifies.
pub fn pod_cycle_for_set(t: &Canvas, x: &BTreeSet<Vertex>) -> Result<(CycleRef, bool), StructureError> {
    for &v in x {
        if !t.graph.contains(v) || t.is_on_outer(v) {
            return Err(StructureError::NotInternal(v));
        }
    }
    let pf = pod_faces(t, x)?;
    let mat = pf.material_faces();
    let f = mat.first().ok_or(StructureError::NoMaterialFace)?;
    Ok((f.cycle()?, mat.len() > 1))
}

/// One relaxation step T⟨v⟩ at a regular tripod.
pub fn relax(t: &Canvas, v: Vertex) -> Result<Canvas, StructureError> {
    let pod = classify_pod(t, v)?;
    match (pod.kind, pod.pod_cycle) {
        (PodKind::Tripod, Some(c)) if pod.regular => Ok(subcanvas_by_cycle(t, &c)?),
        _ => Err(StructureError::NotRegularTripod(v)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DividingWitness {
    /// Face ids (least darts) of f1 and f2.
    pub f1: Dart,
    pub f2: Dart,
    pub u1: Vertex,
    pub u2: Vertex,
    pub c1: CycleRef,
    pub c2: CycleRef,
    /// |E(T⟨C_i⟩) ∖ E(C_i)|.
    pub extra_edges: (usize, usize),
    /// v(T⟨C_i⟩).
    pub interior: (usize, usize),
    /// Both u1v and u2v are edges of G.
    pub real_edges: bool,
}

impl DividingWitness {
    pub fn dividing(&self) -> bool {
        self.extra_edges.0 >= 2 && self.extra_edges.1 >= 2
    }

    pub fn strong(&self) -> bool {
        self.interior.0 >= 1 && self.interior.1 >= 1
    }

    pub fn true_dividing(&self) -> bool {
        self.dividing() && self.real_edges
    }

    fn rank(&self) -> (bool, bool, bool) {
        (self.true_dividing(), self.strong(), self.dividing())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DividingClassification {
    pub vertex: Vertex,
    pub dividing: bool,
    pub strong: bool,
    pub true_dividing: bool,
    /// The least face pair with the strongest flags.
    pub witness: DividingWitness,
    pub dividing_witness: Option<DividingWitness>,
    pub strong_witness: Option<DividingWitness>,
    pub true_witness: Option<DividingWitness>,
}

fn evaluate_pair(
    t: &Canvas,
    v: Vertex,
    (f1, u1): (&FaceWalk, Vertex),
    (f2, u2): (&FaceWalk, Vertex),
) -> Result<DividingWitness, StructureError> {
    let mut g = t.graph.clone();
    let mut aux = BTreeSet::new();
    for (f, u) in [(f1, u1), (f2, u2)] {
        if !g.has_edge(u, v) {
            g = g.with_edge_in_face(f, u, v)?;
            aux.insert(edge(u, v));
        }
    }
    let (c1, c2) = split_cycles(&t.outer, u1, u2, Some(v)).ok_or(StructureError::NoFacePair(v))?;
    let side = |c: &CycleRef| -> Result<(usize, usize), StructureError> {
        let disk = g.disk_subgraph_aux(c, &aux)?.graph;
        let cyc = c.edge_set();
        let extra = disk.edges().iter().filter(|e| !cyc.contains(e)).count();
        Ok((extra, disk.vertex_count() - c.len()))
    };
    let (e1, i1) = side(&c1)?;
    let (e2, i2) = side(&c2)?;
    Ok(DividingWitness {
        f1: f1.id,
        f2: f2.id,
        u1,
        u2,
        c1,
        c2,
        extra_edges: (e1, e2),
        interior: (i1, i2),
        real_edges: aux.is_empty(),
    })
}

/// Dividing, strong dividing and true dividing status of an internal vertex,
/// over all qualifying face pairs.
pub fn classify_dividing(t: &Canvas, v: Vertex) -> Result<DividingClassification, StructureError> {
    if !t.graph.contains(v) || t.is_on_outer(v) {
        return Err(StructureError::NotInternal(v));
    }
    let on = t.outer_mask();
    let faces: Vec<FaceWalk> = t.graph.internal_faces()?.into_iter().filter(|f| f.contains_vertex(v)).collect();
    let on_face = |f: &FaceWalk| -> Vec<Vertex> {
        let mut us: Vec<Vertex> = f.vertices().into_iter().filter(|&u| on[u]).collect();
        us.sort_unstable();
        us
    };
    let mut best: Option<DividingWitness> = None;
    let (mut div, mut strong, mut tru) = (None, None, None);
    for (a, fa) in faces.iter().enumerate() {
        for fb in &faces[a + 1..] {
            for &u1 in &on_face(fa) {
                for &u2 in &on_face(fb) {
                    if u1 == u2 {
                        continue;
                    }
                    let w = evaluate_pair(t, v, (fa, u1), (fb, u2))?;
                    if w.dividing() && div.is_none() {
                        div = Some(w.clone());
                    }
                    if w.strong() && strong.is_none() {
                        strong = Some(w.clone());
                    }
                    if w.true_dividing() && tru.is_none() {
                        tru = Some(w.clone());
                    }
                    if best.as_ref().is_none_or(|b| w.rank() > b.rank()) {
                        best = Some(w);
                    }
                }
            }
        }
    }
    let witness = best.ok_or(StructureError::NoFacePair(v))?;
    Ok(DividingClassification {
        vertex: v,
        dividing: div.is_some(),
        strong: strong.is_some(),
        true_dividing: tru.is_some(),
        witness,
        dividing_witness: div,
        strong_witness: strong,
        true_witness: tru,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChordOrTripod {
    Chord { u: Vertex, v: Vertex },
    /// Internal vertex with at least three neighbors on C and at most one
    /// face of `G[{v} ∪ V(C)]` holding material.
    Vertex { vertex: Vertex, contacts: Vec<Vertex>, material_faces: usize },
    /// A critical canvas with neither alternative.
    TheoremViolation,
}

/// The least vertex with three contacts and at most one material face.
pub fn tripod_alternative(t: &Canvas) -> Result<Option<ChordOrTripod>, StructureError> {
    for v in boundary_tripod_candidates(t) {
        let pf = pod_faces(t, &BTreeSet::from([v]))?;
        let m = pf.material.iter().filter(|&&b| b).count();
        if m <= 1 {
            return Ok(Some(ChordOrTripod::Vertex { vertex: v, contacts: contacts(t, v), material_faces: m }));
        }
    }
    Ok(None)
}

/// A chord or a tripod-like vertex of a critical canvas.
pub fn chord_or_tripod_witness(t: &Canvas, oracle: &mut ExtensionOracle) -> Result<ChordOrTripod, StructureError> {
    if !is_critical_canvas(t, oracle)?.verdict {
        return Err(StructureError::NotCritical);
    }
    if let Some(&(u, v)) = chords(t).first() {
        return Ok(ChordOrTripod::Chord { u, v });
    }
    Ok(tripod_alternative(t)?.unwrap_or(ChordOrTripod::TheoremViolation))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn chord_lists() {
        assert_eq!(chords(&fixtures::c4e()), vec![(0, 2)]);
        assert!(chords(&fixtures::w5()).is_empty());
        assert_eq!(chords(&Canvas::new(fixtures::cycle_with_chords(6, &[(0, 3), (0, 2)]), Default::default()).unwrap()), vec![(0, 2), (0, 3)]);
    }

    #[test]
    fn candidates() {
        assert_eq!(boundary_tripod_candidates(&fixtures::w5()), BTreeSet::from([5]));
        assert!(boundary_tripod_candidates(&fixtures::c4e()).is_empty());
        assert_eq!(boundary_tripod_candidates(&fixtures::double_wheel()), BTreeSet::from([5, 6]));
    }

    #[test]
    fn pods() {
        let p = classify_pod(&fixtures::w5(), 5).unwrap();
        assert_eq!((p.kind, p.regular, p.material_faces), (PodKind::Quadpod, false, 0));
        assert!(p.pod_cycle.is_none());

        let t = fixtures::double_wheel();
        let p = classify_pod(&t, 5).unwrap();
        assert_eq!((p.kind, p.regular), (PodKind::Tripod, true));
        assert_eq!(p.standard_order, Some(vec![0, 1, 2]));
        assert_eq!(p.pod_cycle.as_ref().unwrap().vertices(), &[0, 5, 2, 3, 4]);
        let q = classify_pod(&t, 6).unwrap();
        assert_eq!((q.kind, q.regular), (PodKind::Quadpod, true));
        assert_eq!(q.standard_order, Some(vec![2, 3, 4, 0]));

        let p = classify_pod(&fixtures::two_sided_pod(), 5).unwrap();
        assert_eq!((p.kind, p.material_faces), (PodKind::None, 2));
        assert!(matches!(
            classify_pod(&fixtures::c4e(), 1),
            Err(StructureError::NotInternal(1))
        ));
    }

    #[test]
    fn relaxation() {
        let t = fixtures::double_wheel();
        let r = relax(&t, 5).unwrap();
        assert_eq!(r.outer.len(), 5);
        assert_eq!(r.internal_vertices(), vec![6]);
        assert!(matches!(relax(&fixtures::w5(), 5), Err(StructureError::NotRegularTripod(5))));
        let (c, multiple) = pod_cycle_for_set(&t, &BTreeSet::from([5])).unwrap();
        assert_eq!(c.vertices(), &[0, 5, 2, 3, 4]);
        assert!(!multiple);
        assert!(matches!(
            pod_cycle_for_set(&fixtures::w5(), &BTreeSet::from([5])),
            Err(StructureError::NoMaterialFace)
        ));
    }

    #[test]
    fn dividing() {
        let d = classify_dividing(&fixtures::w5(), 5).unwrap();
        assert!(!d.dividing && !d.strong && !d.true_dividing);
        let t = fixtures::double_wheel();
        let d = classify_dividing(&t, 5).unwrap();
        assert!(!d.dividing && !d.strong);
        // 0 and 2 cut off vertex 5 from the fan 2-3-4-0
        let d = classify_dividing(&t, 6).unwrap();
        assert!(d.true_dividing && !d.strong);
        let w = d.true_witness.unwrap();
        assert_eq!((w.u1, w.u2), (0, 2));
        assert_eq!(w.extra_edges, (4, 2));
        assert_eq!(w.interior, (1, 0));
    }

    #[test]
    fn witnesses() {
        let mut o = ExtensionOracle::with_memo();
        assert_eq!(
            chord_or_tripod_witness(&fixtures::c4e(), &mut o).unwrap(),
            ChordOrTripod::Chord { u: 0, v: 2 }
        );
        match chord_or_tripod_witness(&fixtures::w5(), &mut o).unwrap() {
            ChordOrTripod::Vertex { vertex, material_faces, .. } => assert_eq!((vertex, material_faces), (5, 0)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
