//! Deficiency and the potential d = def − s, in exact arithmetic.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canvas::{induced_subcanvas, subcanvas_by_cycle, Canvas, CanvasError};
use crate::plane_graph::{edge, CycleRef, EmbeddingError, PlaneGraph, Vertex};

pub type Rational = Ratio<i64>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Serde adapter writing rationals as `"n/d"` strings.
pub mod rat_str {
    use super::{fmt_rat, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        Rational::from_str(text.trim()).map_err(|_| D::Error::custom(format!("bad rational {text:?}")))
    }
}

/// Render as `n` or `n/d`.
pub fn fmt_rat(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamsError {
    #[error("parameters must be positive (ε = {eps}, α = {alpha}, γ = {gamma})")]
    NotPositive { eps: String, alpha: String, gamma: String },
    #[error("inequality I1 fails: 3ε ≤ 2α requires {lhs} ≤ {rhs}")]
    I1 { lhs: String, rhs: String },
    #[error("inequality I2 fails: 6α+3ε ≤ γ requires {lhs} ≤ {rhs}")]
    I2 { lhs: String, rhs: String },
    #[error("inequality I3 fails: 2α+3ε+γ ≤ 1 requires {lhs} ≤ {rhs}")]
    I3 { lhs: String, rhs: String },
    #[error("cannot parse parameters {0:?}: expected three rationals \"ε,α,γ\" such as \"1/18,1/12,2/3\"")]
    Parse(String),
}

/// The constants ε, α, γ, validated against I1–I3 on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct Params {
    eps: Rational,
    alpha: Rational,
    gamma: Rational,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    #[serde(with = "rat_str")]
    eps: Rational,
    #[serde(with = "rat_str")]
    alpha: Rational,
    #[serde(with = "rat_str")]
    gamma: Rational,
}

impl TryFrom<RawParams> for Params {
    type Error = ParamsError;

    fn try_from(r: RawParams) -> Result<Params, ParamsError> {
        Params::new(r.eps, r.alpha, r.gamma)
    }
}

impl From<Params> for RawParams {
    fn from(p: Params) -> RawParams {
        RawParams { eps: p.eps, alpha: p.alpha, gamma: p.gamma }
    }
}

impl Params {
    pub fn new(eps: Rational, alpha: Rational, gamma: Rational) -> Result<Params, ParamsError> {
        let zero = int(0);
        if eps <= zero || alpha <= zero || gamma <= zero {
            return Err(ParamsError::NotPositive { eps: fmt_rat(&eps), alpha: fmt_rat(&alpha), gamma: fmt_rat(&gamma) });
        }
        let three = int(3);
        let (l1, r1) = (three * eps, int(2) * alpha);
        if l1 > r1 {
            return Err(ParamsError::I1 { lhs: fmt_rat(&l1), rhs: fmt_rat(&r1) });
        }
        let l2 = int(6) * alpha + three * eps;
        if l2 > gamma {
            return Err(ParamsError::I2 { lhs: fmt_rat(&l2), rhs: fmt_rat(&gamma) });
        }
        let l3 = int(2) * alpha + three * eps + gamma;
        if l3 > int(1) {
            return Err(ParamsError::I3 { lhs: fmt_rat(&l3), rhs: "1".into() });
        }
        Ok(Params { eps, alpha, gamma })
    }

    /// ε = 1/18, α = 1/12, γ = 2/3.
    pub fn standard() -> Params {
        Params::new(rat(1, 18), rat(1, 12), rat(2, 3)).unwrap()
    }

    pub fn eps(&self) -> Rational {
        self.eps
    }

    pub fn alpha(&self) -> Rational {
        self.alpha
    }

    pub fn gamma(&self) -> Rational {
        self.gamma
    }

    /// 2α + ε, the potential cost of a single internal vertex.
    pub fn vertex_cost(&self) -> Rational {
        int(2) * self.alpha + self.eps
    }
}

impl Default for Params {
    fn default() -> Self {
        Params::standard()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", fmt_rat(&self.eps), fmt_rat(&self.alpha), fmt_rat(&self.gamma))
    }
}

impl FromStr for Params {
    type Err = ParamsError;

    fn from_str(s: &str) -> Result<Params, ParamsError> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(ParamsError::Parse(s.into()));
        }
        let mut vals = Vec::new();
        for p in parts {
            let r = Rational::from_str(p).map_err(|_| ParamsError::Parse(s.into()))?;
            vals.push(r);
        }
        Params::new(vals[0], vals[1], vals[2])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeficiencyReport {
    pub v: usize,
    pub def: i64,
    pub def_via_faces: i64,
    pub b: usize,
    pub q: usize,
    #[serde(with = "rat_str")]
    pub s: Rational,
    #[serde(with = "rat_str")]
    pub d: Rational,
    /// |f| − 3 for each internal face, in face-id order.
    pub face_terms: Vec<i64>,
}

/// def = |E(G) ∖ E(C)| − 3 v(G).
pub fn deficiency(t: &Canvas) -> i64 {
    let cyc = t.outer.edge_set();
    let off = t.graph.edges().into_iter().filter(|e| !cyc.contains(e)).count() as i64;
    off - 3 * t.internal_count() as i64
}

fn face_terms(t: &Canvas) -> Result<Vec<i64>, EmbeddingError> {
    let mut out = Vec::new();
    for f in t.graph.internal_faces()? {
        if !f.is_cycle() {
            return Err(EmbeddingError::FaceNotCycle(f.vertices()));
        }
        out.push(f.len() as i64 - 3);
    }
    Ok(out)
}

/// def = |C| − 3 − Σ (|f| − 3) over internal faces.
pub fn deficiency_via_faces(t: &Canvas) -> Result<i64, EmbeddingError> {
    let terms = face_terms(t)?;
    Ok(t.outer.len() as i64 - 3 - terms.iter().sum::<i64>())
}

/// B: internal vertices with a neighbor on C. Q: internal vertices sharing
/// a face with a vertex of C.
pub fn boundary_sets(t: &Canvas) -> Result<(BTreeSet<Vertex>, BTreeSet<Vertex>), EmbeddingError> {
    let on = t.outer_mask();
    let b: BTreeSet<Vertex> = t
        .internal_vertices()
        .into_iter()
        .filter(|&v| t.graph.rotation(v).iter().any(|&w| on[w]))
        .collect();
    let mut q = BTreeSet::new();
    for f in t.graph.trace_faces()? {
        let vs = f.vertices();
        if vs.iter().any(|&w| on[w]) {
            q.extend(vs.into_iter().filter(|&w| !on[w]));
        }
    }
    assert!(b.is_subset(&q), "boundary must lie inside the quasi-boundary");
    Ok((b, q))
}

/// s = ε v + α (b + q).
pub fn s_value(t: &Canvas, p: &Params) -> Result<Rational, EmbeddingError> {
    let (b, q) = boundary_sets(t)?;
    Ok(p.eps * int(t.internal_count() as i64) + p.alpha * int((b.len() + q.len()) as i64))
}

/// d = def − s.
pub fn d_value(t: &Canvas, p: &Params) -> Result<Rational, EmbeddingError> {
    Ok(int(deficiency(t)) - s_value(t, p)?)
}

pub fn report(t: &Canvas, p: &Params) -> Result<DeficiencyReport, EmbeddingError> {
    let (b, q) = boundary_sets(t)?;
    let v = t.internal_count();
    let def = deficiency(t);
    let s = p.eps * int(v as i64) + p.alpha * int((b.len() + q.len()) as i64);
    Ok(DeficiencyReport {
        v,
        def,
        def_via_faces: deficiency_via_faces(t)?,
        b: b.len(),
        q: q.len(),
        s,
        d: int(def) - s,
        face_terms: face_terms(t)?,
    })
}

/// The quantities of a canvas that decompose over faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quantities {
    pub def: i64,
    pub v: i64,
    pub b: i64,
    pub q: i64,
    #[serde(with = "rat_str")]
    pub s: Rational,
    #[serde(with = "rat_str")]
    pub d: Rational,
}

impl Quantities {
    pub fn of(t: &Canvas, p: &Params) -> Result<Quantities, EmbeddingError> {
        let r = report(t, p)?;
        Ok(Quantities { def: r.def, v: r.v as i64, b: r.b as i64, q: r.q as i64, s: r.s, d: r.d })
    }

    fn add(&self, o: &Quantities) -> Quantities {
        Quantities {
            def: self.def + o.def,
            v: self.v + o.v,
            b: self.b + o.b,
            q: self.q + o.q,
            s: self.s + o.s,
            d: self.d + o.d,
        }
    }
}

/// Whole canvas against a subcanvas G' plus the canvases of its internal
/// faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub whole: Quantities,
    /// G' plus the sum over its internal faces.
    pub parts: Quantities,
    pub def_equal: bool,
    pub v_equal: bool,
    pub b_le: bool,
    pub q_le: bool,
    pub s_le: bool,
    pub d_ge: bool,
}

impl DecompositionReport {
    pub fn all_hold(&self) -> bool {
        self.def_equal && self.v_equal && self.b_le && self.q_le && self.s_le && self.d_ge
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeficiencyError {
    #[error(transparent)]
    Canvas(#[from] CanvasError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
}

/// Compare G with G' and the disks G[f] of the internal faces f of G'.
pub fn decomposition_check(t: &Canvas, g2: &PlaneGraph, p: &Params) -> Result<DecompositionReport, DeficiencyError> {
    let sub = induced_subcanvas(t, g2)?;
    let whole = Quantities::of(t, p)?;
    let mut parts = Quantities::of(&sub, p)?;
    for f in sub.graph.internal_faces()? {
        let c = f.cycle()?;
        let piece = subcanvas_by_cycle(t, &c)?;
        parts = parts.add(&Quantities::of(&piece, p)?);
    }
    Ok(DecompositionReport {
        def_equal: whole.def == parts.def,
        v_equal: whole.v == parts.v,
        b_le: whole.b <= parts.b,
        q_le: whole.q <= parts.q,
        s_le: whole.s <= parts.s,
        d_ge: whole.d >= parts.d,
        whole,
        parts,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Split {
    Chord(Vertex, Vertex),
    /// Internal vertex `v` with two contacts on C.
    Vertex { v: Vertex, u1: Vertex, u2: Vertex },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitReport {
    pub split: Split,
    pub c1: CycleRef,
    pub c2: CycleRef,
    /// d of the canvas the bound is evaluated on (augmented when contact
    /// edges were missing).
    #[serde(with = "rat_str")]
    pub d_whole: Rational,
    /// d of the canvas as given.
    #[serde(with = "rat_str")]
    pub d_original: Rational,
    #[serde(with = "rat_str")]
    pub d1: Rational,
    #[serde(with = "rat_str")]
    pub d2: Rational,
    /// Right-hand side: d1 + d2 + 1 for a chord, d1 + d2 − 1 − (2α+ε) for a
    /// vertex.
    #[serde(with = "rat_str")]
    pub bound: Rational,
    #[serde(with = "rat_str")]
    pub slack: Rational,
    pub holds: bool,
    /// Contact edges that were absent and drawn in for the evaluation.
    pub virtual_edges: Vec<(Vertex, Vertex)>,
}

/// The two cycles of C + (u1 [v] u2) other than C, each traversed from u1
/// (respectively u2) along C.
pub fn split_cycles(c: &CycleRef, u1: Vertex, u2: Vertex, mid: Option<Vertex>) -> Option<(CycleRef, CycleRef)> {
    let vs = c.vertices();
    let k = vs.len();
    let i1 = vs.iter().position(|&x| x == u1)?;
    let i2 = vs.iter().position(|&x| x == u2)?;
    if i1 == i2 {
        return None;
    }
    let arc = |from: usize, to: usize| {
        let mut out = Vec::new();
        let mut i = from;
        loop {
            out.push(vs[i]);
            if i == to {
                break;
            }
            i = (i + 1) % k;
        }
        if let Some(m) = mid {
            out.push(m);
        }
        CycleRef::new(out)
    };
    Some((arc(i1, i2), arc(i2, i1)))
}

/// Draw the edge `a b` into the least internal face holding both ends.
pub fn add_virtual_edge(g: &PlaneGraph, a: Vertex, b: Vertex) -> Result<PlaneGraph, EmbeddingError> {
    let faces = g.internal_faces()?;
    let f = faces
        .iter()
        .find(|f| f.contains_vertex(a) && f.contains_vertex(b))
        .ok_or(EmbeddingError::NotOnFace(a, b))?;
    g.with_edge_in_face(f, a, b)
}

/// Evaluate the chord or two-contact split bound.
pub fn split_bounds_check(t: &Canvas, split: Split, p: &Params) -> Result<SplitReport, DeficiencyError> {
    let invalid = |m: &str| DeficiencyError::InvalidSplit(m.to_string());
    let on = t.outer_mask();
    let (graph, c1, c2, virtual_edges, bound_shift) = match split {
        Split::Chord(u, v) => {
            if !on[u] || !on[v] || !t.graph.has_edge(u, v) || t.outer.edge_set().contains(&edge(u, v)) {
                return Err(invalid("not a chord of the outer cycle"));
            }
            let (c1, c2) = split_cycles(&t.outer, u, v, None).ok_or_else(|| invalid("chord ends not on C"))?;
            (t.graph.clone(), c1, c2, Vec::new(), int(1))
        }
        Split::Vertex { v, u1, u2 } => {
            if on.get(v).copied().unwrap_or(true) || !t.graph.contains(v) {
                return Err(invalid("split vertex must be internal"));
            }
            if u1 == u2 || !on[u1] || !on[u2] {
                return Err(invalid("contacts must be two distinct vertices of C"));
            }
            let mut g = t.graph.clone();
            let mut added = Vec::new();
            for u in [u1, u2] {
                if !g.has_edge(u, v) {
                    g = add_virtual_edge(&g, u, v)?;
                    added.push(edge(u, v));
                }
            }
            let (c1, c2) = split_cycles(&t.outer, u1, u2, Some(v)).ok_or_else(|| invalid("contacts not on C"))?;
            (g, c1, c2, added, -(int(1) + p.vertex_cost()))
        }
    };
    let host = Canvas { graph, outer: t.outer.clone(), lists: t.lists.clone() };
    let d_whole = d_value(&host, p)?;
    let d1 = d_value(&subcanvas_by_cycle(&host, &c1)?, p)?;
    let d2 = d_value(&subcanvas_by_cycle(&host, &c2)?, p)?;
    let bound = d1 + d2 + bound_shift;
    Ok(SplitReport {
        split,
        c1,
        c2,
        d_whole,
        d_original: d_value(t, p)?,
        d1,
        d2,
        bound,
        slack: d_whole - bound,
        holds: d_whole >= bound,
        virtual_edges,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefboundReport {
    /// Every internal vertex has degree at least five.
    pub applicable: bool,
    pub def: i64,
    /// 2 v(G) − |E(G − V(C))|.
    pub rhs: i64,
    pub holds: bool,
    pub equality: bool,
    pub internal_all_degree_five: bool,
    pub all_degree_five: bool,
    pub chords: usize,
    /// Exact condition: internal degrees all five and no chords.
    pub equality_predicted: bool,
    /// The internal-degree reading of the equality condition disagrees with
    /// the outcome (happens exactly when chords are present).
    pub internal_reading_diverges: bool,
    /// The all-vertices reading disagrees with the internal-degree reading.
    pub readings_diverge: bool,
}

/// def ≥ 2v − |E(G − V(C))| when internal degrees are at least five.
pub fn defbound_check(t: &Canvas) -> DefboundReport {
    let on = t.outer_mask();
    let internal = t.internal_vertices();
    let applicable = internal.iter().all(|&v| t.graph.degree(v) >= 5);
    let def = deficiency(t);
    let inner_edges = t.graph.edges().iter().filter(|&&(u, v)| !on[u] && !on[v]).count() as i64;
    let rhs = 2 * internal.len() as i64 - inner_edges;
    let cyc = t.outer.edge_set();
    let chords = t
        .graph
        .edges()
        .iter()
        .filter(|&&(u, v)| on[u] && on[v] && !cyc.contains(&(u, v)))
        .count();
    let internal_all_degree_five = internal.iter().all(|&v| t.graph.degree(v) == 5);
    let all_degree_five = t.graph.vertices().all(|v| t.graph.degree(v) == 5);
    let equality = def == rhs;
    DefboundReport {
        applicable,
        def,
        rhs,
        holds: def >= rhs,
        equality,
        internal_all_degree_five,
        all_degree_five,
        chords,
        equality_predicted: internal_all_degree_five && chords == 0,
        internal_reading_diverges: internal_all_degree_five != equality,
        readings_diverge: internal_all_degree_five != all_degree_five,
    }
}
