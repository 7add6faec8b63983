//! Pictures of canvases for inspection: barycentric layout with the outer
//! cycle on a regular polygon, exported as SVG or Graphviz DOT.

use std::fmt::Write;

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::canvas::Canvas;
use crate::plane_graph::Vertex;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DrawError {
    #[error("cannot draw: graph is not 2-connected")]
    NotTwoConnected,
    #[error("cannot draw: layout system is singular")]
    Singular,
}

/// Tutte layout. Outer cycle vertices sit on the unit circle in walk order;
/// every internal vertex is the average of its neighbors.
pub fn tutte_layout(t: &Canvas) -> Result<Vec<Option<(f64, f64)>>, DrawError> {
    let g = &t.graph;
    if !g.is_two_connected() {
        return Err(DrawError::NotTwoConnected);
    }
    let outer = g.outer_cycle().map_err(|_| DrawError::NotTwoConnected)?;
    let mut pos = vec![None; g.n()];
    let k = outer.len() as f64;
    for (i, &v) in outer.vertices().iter().enumerate() {
        // counterclockwise from the top
        let a = std::f64::consts::FRAC_PI_2 + std::f64::consts::TAU * i as f64 / k;
        pos[v] = Some((a.cos(), a.sin()));
    }
    let inner: Vec<Vertex> = g.vertices().filter(|&v| pos[v].is_none()).collect();
    if inner.is_empty() {
        return Ok(pos);
    }
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in inner.iter().enumerate() {
        index[v] = i;
    }
    let m = inner.len();
    let mut a = DMatrix::<f64>::zeros(m, m);
    let mut bx = DVector::<f64>::zeros(m);
    let mut by = DVector::<f64>::zeros(m);
    for (i, &v) in inner.iter().enumerate() {
        a[(i, i)] = g.degree(v) as f64;
        for &w in g.rotation(v) {
            match pos[w] {
                Some((x, y)) => {
                    bx[i] += x;
                    by[i] += y;
                }
                None => a[(i, index[w])] -= 1.0,
            }
        }
    }
    let lu = a.lu();
    let xs = lu.solve(&bx).ok_or(DrawError::Singular)?;
    let ys = lu.solve(&by).ok_or(DrawError::Singular)?;
    for (i, &v) in inner.iter().enumerate() {
        pos[v] = Some((xs[i], ys[i]));
    }
    Ok(pos)
}

fn label(t: &Canvas, v: Vertex) -> String {
    let l: Vec<String> = t.lists.get(v).iter().map(|c| c.to_string()).collect();
    format!("{v}: {{{}}}", l.join(","))
}

pub fn to_svg(t: &Canvas) -> Result<String, DrawError> {
    let pos = tutte_layout(t)?;
    let (size, margin) = (480.0, 60.0);
    let scale = size / 2.0 - margin;
    let at = |v: Vertex| {
        let (x, y) = pos[v].expect("laid out");
        (size / 2.0 + scale * x, size / 2.0 - scale * y)
    };
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#).unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    let cycle = t.outer.edge_set();
    for (u, v) in t.graph.edges() {
        let ((x1, y1), (x2, y2)) = (at(u), at(v));
        let width = if cycle.contains(&(u, v)) { 2.5 } else { 1.2 };
        writeln!(s, r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="black" stroke-width="{width}"/>"#)
            .unwrap();
    }
    for v in t.graph.vertices() {
        let (x, y) = at(v);
        let fill = if t.outer.contains(v) { "#f0c040" } else { "#80b0e0" };
        writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="6" fill="{fill}" stroke="black"/>"#).unwrap();
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="11">{}</text>"#,
            x + 8.0,
            y - 8.0,
            label(t, v)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// DOT with pinned positions, for `neato -n`.
pub fn to_dot(t: &Canvas) -> Result<String, DrawError> {
    let pos = tutte_layout(t)?;
    let mut s = String::from("graph canvas {\n  node [shape=circle, fontsize=10];\n");
    for v in t.graph.vertices() {
        let (x, y) = pos[v].expect("laid out");
        let fill = if t.outer.contains(v) { "#f0c040" } else { "#80b0e0" };
        writeln!(
            s,
            "  {v} [label=\"{}\", pos=\"{:.2},{:.2}!\", style=filled, fillcolor=\"{fill}\"];",
            label(t, v),
            200.0 * x,
            200.0 * y
        )
        .unwrap();
    }
    let cycle = t.outer.edge_set();
    for (u, v) in t.graph.edges() {
        let attr = if cycle.contains(&(u, v)) { " [penwidth=2]" } else { "" };
        writeln!(s, "  {u} -- {v}{attr};").unwrap();
    }
    s.push_str("}\n");
    Ok(s)
}
