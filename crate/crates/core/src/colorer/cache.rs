//! Memoized extension queries.
//!
//! Answers are keyed by a SHA-256 digest of the exact query (adjacency,
//! lists and precoloring). Since answers are deterministic, a shared or
//! stale cache can only return what a fresh search would.

use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;

use sha2::{Digest, Sha256};

use super::{extend_counted, ColorError, PartialColoring, SearchStats};
use crate::canvas::ListAssignment;
use crate::plane_graph::PlaneGraph;

pub const CACHE_DIR_ENV: &str = "CANVASLAB_CACHE_DIR";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OracleStats {
    /// Logical extension questions asked, hits included.
    pub queries: u64,
    pub cache_hits: u64,
    /// Search nodes spent on misses.
    pub nodes: u64,
}

#[derive(Debug, Default)]
pub struct ExtensionOracle {
    memo: Option<HashMap<[u8; 32], bool>>,
    disk: Option<PathBuf>,
    stats: OracleStats,
}

impl ExtensionOracle {
    /// Oracle without any caching.
    pub fn new() -> Self {
        Self::default()
    }

    /// Oracle with an in-memory memo table.
    pub fn with_memo() -> Self {
        ExtensionOracle { memo: Some(HashMap::new()), ..Self::default() }
    }

    /// In-memory memo plus the on-disk cache named by `CANVASLAB_CACHE_DIR`,
    /// when set.
    pub fn from_env() -> Self {
        let mut o = Self::with_memo();
        if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
            let dir = PathBuf::from(dir);
            if fs::create_dir_all(&dir).is_ok() {
                o.disk = Some(dir);
            }
        }
        o
    }

    pub fn stats(&self) -> OracleStats {
        self.stats
    }

    /// Does `phi` extend to an L-coloring of `g`? Unlike [`super::extend`],
    /// a precoloring that is proper on a subgraph but puts one color on both
    /// ends of some edge of `g` is answered `false` rather than rejected: a
    /// coloring of T never extends across a monochromatic edge.
    pub fn extends(&mut self, g: &PlaneGraph, lists: &ListAssignment, phi: &PartialColoring) -> Result<bool, ColorError> {
        self.stats.queries += 1;
        for (v, c) in phi.pairs() {
            if g.contains(v) && g.rotation(v).iter().any(|&w| phi.get(w) == Some(c)) {
                return Ok(false);
            }
        }
        if self.memo.is_none() && self.disk.is_none() {
            return self.search(g, lists, phi);
        }
        let key = query_key(g, lists, phi);
        if let Some(&hit) = self.memo.as_ref().and_then(|m| m.get(&key)) {
            self.stats.cache_hits += 1;
            return Ok(hit);
        }
        if let Some(hit) = self.read_disk(&key) {
            self.stats.cache_hits += 1;
            if let Some(m) = self.memo.as_mut() {
                m.insert(key, hit);
            }
            return Ok(hit);
        }
        let answer = self.search(g, lists, phi)?;
        if let Some(m) = self.memo.as_mut() {
            m.insert(key, answer);
        }
        self.write_disk(&key, answer);
        Ok(answer)
    }

    fn search(&mut self, g: &PlaneGraph, lists: &ListAssignment, phi: &PartialColoring) -> Result<bool, ColorError> {
        let mut s = SearchStats::default();
        let r = extend_counted(g, lists, phi, &mut s)?;
        self.stats.nodes += s.nodes;
        Ok(r.is_some())
    }

    fn path(&self, key: &[u8; 32]) -> Option<PathBuf> {
        self.disk.as_ref().map(|d| d.join(format!("{}.memo", hex::encode(key))))
    }

    fn read_disk(&self, key: &[u8; 32]) -> Option<bool> {
        let text = fs::read_to_string(self.path(key)?).ok()?;
        match text.trim() {
            "1" => Some(true),
            "0" => Some(false),
            _ => None,
        }
    }

    fn write_disk(&self, key: &[u8; 32], answer: bool) {
        if let Some(p) = self.path(key) {
            // write-then-rename keeps concurrent readers from seeing a torn file
            let tmp = p.with_extension(format!("tmp{}", std::process::id()));
            if fs::write(&tmp, if answer { "1\n" } else { "0\n" }).is_ok() {
                let _ = fs::rename(&tmp, &p);
            }
        }
    }
}

fn push(buf: &mut Vec<u8>, x: u64) {
    buf.extend_from_slice(&x.to_le_bytes());
}

/// Digest of everything an extension answer depends on.
pub fn query_key(g: &PlaneGraph, lists: &ListAssignment, phi: &PartialColoring) -> [u8; 32] {
    let mut buf = Vec::new();
    for v in g.vertices() {
        push(&mut buf, v as u64);
        let mut nb = g.rotation(v).to_vec();
        nb.sort_unstable();
        push(&mut buf, nb.len() as u64);
        for w in nb {
            push(&mut buf, w as u64);
        }
        let l = lists.get(v);
        push(&mut buf, l.len() as u64);
        for &c in l {
            push(&mut buf, c as u64);
        }
        push(&mut buf, phi.get(v).map_or(u64::MAX, |c| c as u64));
    }
    let digest = Sha256::digest(&buf);
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest);
    key
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorer::enumerate_boundary_colorings;
    use crate::fixtures;

    #[test]
    fn memo_hits_and_agrees() {
        let t = fixtures::w5();
        let phi = enumerate_boundary_colorings(&t).next().unwrap();
        let mut o = ExtensionOracle::with_memo();
        assert!(!o.extends(&t.graph, &t.lists, &phi).unwrap());
        assert!(!o.extends(&t.graph, &t.lists, &phi).unwrap());
        assert_eq!(o.stats().queries, 2);
        assert_eq!(o.stats().cache_hits, 1);
        let g2 = t.graph.without_edge(0, 5);
        assert!(o.extends(&g2, &t.lists, &phi).unwrap());
    }

    #[test]
    fn disk_cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("canvaslab-cache-test-{}", std::process::id()));
        let t = fixtures::w5();
        let phi = enumerate_boundary_colorings(&t).next().unwrap();
        let mut o = ExtensionOracle { disk: Some(dir.clone()), ..ExtensionOracle::default() };
        fs::create_dir_all(&dir).unwrap();
        assert!(!o.extends(&t.graph, &t.lists, &phi).unwrap());
        let mut o2 = ExtensionOracle { disk: Some(dir.clone()), ..ExtensionOracle::default() };
        assert!(!o2.extends(&t.graph, &t.lists, &phi).unwrap());
        assert_eq!(o2.stats().cache_hits, 1);
        fs::remove_dir_all(&dir).unwrap();
    }
}
