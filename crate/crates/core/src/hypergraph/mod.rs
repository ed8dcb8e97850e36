//! Finite hypergraphs and their transversal and matching numbers, plus the
//! builders that turn families of convex sets into hypergraphs whose
//! transversals are point or flat covers.

mod builders;
mod fractional;
mod search;

pub use builders::{
    build_flat_hypergraph, build_point_hypergraph, hyperplane_candidates, hyperplane_cover_number, line_candidates,
    line_cover_number, piercing_number, CoverResult, LineCandidates,
};
pub(crate) use builders::{hyperplane_hypergraph, line_hypergraph, sub_cover, CrossingOracle};
pub use fractional::{duality_report, nu_star, tau_star, DualityReport, FractionalResult};
pub use search::{greedy_transversal, nu_b, tau, tau_with_limit, BMatching, SearchRecord, TransversalResult};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{AffineFlat, Point};

/// Geometric object attached to a hypergraph vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Point { point: Point },
    Flat { flat: AffineFlat },
}

/// Vertices `0..vertex_count` and a list of edges. Edges may repeat.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph {
    pub vertex_count: usize,
    pub edges: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_payload: Option<Vec<Payload>>,
}

impl Hypergraph {
    pub fn new(vertex_count: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let h = Hypergraph {
            vertex_count,
            edges,
            vertex_payload: None,
        };
        h.validate()?;
        Ok(h)
    }

    pub fn with_payload(mut self, payload: Vec<Payload>) -> Result<Self> {
        if payload.len() != self.vertex_count {
            return Err(Error::InvalidInput(format!(
                "{} payloads for {} vertices",
                payload.len(),
                self.vertex_count
            )));
        }
        self.vertex_payload = Some(payload);
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_empty() {
                return Err(Error::InvalidInput(format!("edge {i} is empty")));
            }
            if let Some(v) = e.iter().find(|&&v| v >= self.vertex_count) {
                return Err(Error::InvalidInput(format!("edge {i} names vertex {v} out of range")));
            }
        }
        if let Some(p) = &self.vertex_payload {
            if p.len() != self.vertex_count {
                return Err(Error::InvalidInput("payload length differs from vertex count".into()));
            }
        }
        Ok(())
    }

    /// Does `vertices` meet every edge?
    pub fn is_transversal(&self, vertices: &[usize]) -> bool {
        self.edges.iter().all(|e| e.iter().any(|v| vertices.contains(v)))
    }

    /// The same hypergraph with every edge repeated `times` times.
    pub fn scaled(&self, times: usize) -> Hypergraph {
        Hypergraph {
            vertex_count: self.vertex_count,
            edges: self.edges.iter().flat_map(|e| std::iter::repeat_n(e.clone(), times)).collect(),
            vertex_payload: self.vertex_payload.clone(),
        }
    }
}
