//! Limits for the exhaustive searches. Exceeding one is a structured
//! [`Error::Scale`](crate::Error::Scale), never a silent approximation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Vertices of a hypergraph handed to exact transversal search (after
    /// removing duplicate and dominated vertices).
    pub max_vertices: usize,
    /// Edges of a hypergraph handed to exact search. Hard ceiling of 64.
    pub max_edges: usize,
    /// Sets in a family whose intersecting subfamilies are enumerated.
    pub max_family: usize,
    /// Rainbow tuples enumerated by the colorful Helly check.
    pub max_rainbow: usize,
    /// Candidate lines or points kept (after reduction) for geometric cover
    /// numbers, where the vertex budget above would be far too small.
    pub max_candidates: usize,
    /// Nodes visited by any single branch-and-bound search.
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_vertices: 24,
            max_edges: 64,
            max_family: 16,
            max_rainbow: 100_000,
            max_candidates: 4096,
            max_nodes: 5_000_000,
        }
    }
}

impl Budget {
    /// Applies overrides of the form `vertices=32,family=24`. Keys: vertices,
    /// edges, family, rainbow, candidates, nodes.
    pub fn with_overrides(mut self, text: &str) -> Result<Self> {
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidInput(format!("budget override {part:?} is not key=value")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("budget value {value:?} is not an integer")))?;
            match key.trim() {
                "vertices" => self.max_vertices = value as usize,
                "edges" => self.max_edges = value.min(64) as usize,
                "family" => self.max_family = value as usize,
                "rainbow" => self.max_rainbow = value as usize,
                "candidates" => self.max_candidates = value as usize,
                "nodes" => self.max_nodes = value,
                other => return Err(Error::InvalidInput(format!("unknown budget key {other:?}"))),
            }
        }
        Ok(self)
    }

    pub(crate) fn check(what: &'static str, size: usize, limit: usize) -> Result<()> {
        if size > limit {
            Err(Error::Scale { what, size, limit })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let b = Budget::default().with_overrides("vertices=40, family=20").unwrap();
        assert_eq!(b.max_vertices, 40);
        assert_eq!(b.max_family, 20);
        assert_eq!(b.max_edges, 64);
        assert!(Budget::default().with_overrides("bogus=1").is_err());
        assert!(Budget::default().with_overrides("vertices").is_err());
    }
}
