//! Canvases of list-colored plane graphs: embeddings, colorers, criticality,
//! the deficiency calculus and an exhaustive verification harness.

pub mod canvas;
pub mod colorer;
pub mod critical;
pub mod deficiency;
pub mod draw;
pub mod fixtures;
pub mod format;
pub mod genlab;
pub mod plane_graph;
pub mod structure;
pub mod verifier;
