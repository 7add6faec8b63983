//! The canvas file format: a single JSON object with keys `n`, `rotation`,
//! `outer`, `lists` and optionally `name`, written compactly on one line.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canvas::{Canvas, Color, ListAssignment};
use crate::plane_graph::{CycleRef, Dart, PlaneGraph, Vertex};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed canvas file at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("malformed canvas file: {0}")]
    Shape(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CanvasFile {
    pub n: usize,
    pub rotation: Vec<Vec<Vertex>>,
    pub outer: Vec<Vertex>,
    pub lists: Vec<Vec<Color>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl CanvasFile {
    pub fn parse(text: &str) -> Result<CanvasFile, FormatError> {
        let f: CanvasFile = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        f.check_shape()?;
        Ok(f)
    }

    fn check_shape(&self) -> Result<(), FormatError> {
        let bad = |m: String| Err(FormatError::Shape(m));
        if self.rotation.len() != self.n {
            return bad(format!("rotation has {} entries, n = {}", self.rotation.len(), self.n));
        }
        if self.lists.len() != self.n {
            return bad(format!("lists has {} entries, n = {}", self.lists.len(), self.n));
        }
        for (v, r) in self.rotation.iter().enumerate() {
            if let Some(&w) = r.iter().find(|&&w| w >= self.n) {
                return bad(format!("vertex {v} lists unknown neighbor {w}"));
            }
        }
        if self.outer.len() < 3 {
            return bad("outer cycle needs at least three vertices".into());
        }
        if let Some(&w) = self.outer.iter().find(|&&w| w >= self.n) {
            return bad(format!("outer cycle names unknown vertex {w}"));
        }
        Ok(())
    }

    /// Canonical text: compact JSON, keys in fixed order, one trailing newline.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string(self).expect("canvas files always serialize");
        s.push('\n');
        s
    }

    /// The embedding, with the outer face chosen as whichever side of
    /// `outer[0] outer[1]` traces the given cycle.
    pub fn graph(&self) -> PlaneGraph {
        let (a, b) = (self.outer[0], self.outer[1]);
        let target = CycleRef::new(self.outer.clone());
        for d in [Dart(a, b), Dart(b, a)] {
            let g = PlaneGraph::new(self.rotation.clone(), Some(d));
            if let Ok(f) = g.outer_face() {
                if f.is_cycle() && CycleRef::new(f.vertices()).same_cycle(&target) {
                    return g;
                }
            }
        }
        PlaneGraph::new(self.rotation.clone(), Some(Dart(a, b)))
    }

    pub fn lists(&self) -> ListAssignment {
        ListAssignment::new(self.lists.clone())
    }

    /// Canvas with the declared outer cycle. Validation is left to
    /// [`crate::canvas::validate_canvas`].
    pub fn canvas_unchecked(&self) -> Canvas {
        Canvas { graph: self.graph(), outer: CycleRef::new(self.outer.clone()), lists: self.lists() }
    }

    /// File for a canvas. Absent vertex ids are squeezed out, keeping the
    /// order of the remaining ones.
    pub fn from_canvas(t: &Canvas, name: Option<String>) -> CanvasFile {
        let g = &t.graph;
        let mut map = vec![None; g.n()];
        let mut next = 0;
        for v in g.vertices() {
            map[v] = Some(next);
            next += 1;
        }
        let m = |v: Vertex| map[v].expect("vertex present");
        let rotation = g.vertices().map(|v| g.rotation(v).iter().map(|&w| m(w)).collect()).collect();
        let walk = g.outer_cycle().map(|c| c.vertices().to_vec()).unwrap_or_else(|_| t.outer.vertices().to_vec());
        let lists = g.vertices().map(|v| t.lists.get(v).to_vec()).collect();
        CanvasFile { n: next, rotation, outer: walk.into_iter().map(m).collect(), lists, name }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canvas::validate_canvas;
    use crate::fixtures;

    #[test]
    fn round_trip() {
        let t = fixtures::w5();
        let f = CanvasFile::from_canvas(&t, Some("w5".into()));
        let text = f.to_text();
        assert!(text.starts_with("{\"n\":6,\"rotation\":"));
        assert!(text.ends_with("\"name\":\"w5\"}\n"));
        let back = CanvasFile::parse(&text).unwrap();
        assert_eq!(back.to_text(), text);
        let c = back.canvas_unchecked();
        assert!(validate_canvas(&c.graph, &c.outer, &c.lists).ok);
    }

    #[test]
    fn reversed_outer_accepted() {
        let t = fixtures::double_wheel();
        let mut f = CanvasFile::from_canvas(&t, None);
        f.outer.reverse();
        let c = f.canvas_unchecked();
        assert!(c.validate().ok);
    }

    #[test]
    fn malformed() {
        let text = CanvasFile::from_canvas(&fixtures::c4e(), None).to_text();
        match CanvasFile::parse(&text[..text.len() / 2]) {
            Err(FormatError::Syntax { line, .. }) => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            CanvasFile::parse("{\"n\":2,\"rotation\":[],\"outer\":[],\"lists\":[]}"),
            Err(FormatError::Shape(_))
        ));
    }
}
