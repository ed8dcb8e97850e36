//! Exact transversal and b-matching numbers by branch and bound.

use serde::{Deserialize, Serialize};

use super::fractional::{fractional_cover_lp, nu_star};
use super::Hypergraph;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::rational::{serde_q, Rational};

/// How an exact transversal number was certified minimal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    /// Branch-and-bound nodes visited.
    pub nodes: u64,
    /// Fractional transversal number of the reduced hypergraph, used as the
    /// global lower bound.
    #[serde(with = "serde_q")]
    pub fractional_bound: Rational,
    pub reduced_vertices: usize,
    pub reduced_edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransversalResult {
    pub tau: usize,
    pub witness: Vec<usize>,
    /// Set when the value comes from a heuristic and is only an upper bound.
    pub upper_bound_only: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub record: Option<SearchRecord>,
}

impl TransversalResult {
    pub fn verify(&self, h: &Hypergraph) -> Result<(), String> {
        if self.witness.len() != self.tau {
            return Err("witness size differs from the reported value".into());
        }
        if !h.is_transversal(&self.witness) {
            return Err("witness misses an edge".into());
        }
        Ok(())
    }
}

/// Hypergraph after dropping duplicate/dominated vertices and edges. Edge
/// coverage of each surviving vertex is a bit mask.
pub(crate) struct Reduced {
    pub vertices: Vec<usize>,
    pub masks: Vec<u64>,
    pub edge_count: usize,
}

impl Reduced {
    fn full(&self) -> u64 {
        if self.edge_count == 64 {
            u64::MAX
        } else {
            (1u64 << self.edge_count) - 1
        }
    }

    pub fn edges(&self) -> Vec<Vec<usize>> {
        (0..self.edge_count)
            .map(|e| (0..self.vertices.len()).filter(|&v| self.masks[v] >> e & 1 == 1).collect())
            .collect()
    }
}

/// Removing an edge that contains another edge, or a vertex whose edges are
/// a subset of another vertex's, never changes the transversal number.
pub(crate) fn reduce(h: &Hypergraph, max_edges: usize) -> Result<Reduced> {
    h.validate()?;
    let mut alive = vec![false; h.vertex_count];
    let mut edges: Vec<Vec<usize>> = h
        .edges
        .iter()
        .map(|e| {
            let mut e = e.clone();
            e.sort_unstable();
            e.dedup();
            e
        })
        .collect();
    for e in &edges {
        for &v in e {
            alive[v] = true;
        }
    }
    loop {
        let before = (edges.len(), alive.iter().filter(|a| **a).count());
        // Edge dominance.
        edges.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let mut kept: Vec<Vec<usize>> = Vec::new();
        for e in edges {
            if !kept.iter().any(|k| is_subset(k, &e)) {
                kept.push(e);
            }
        }
        edges = kept;
        Budget::check("reduced edge set", edges.len(), max_edges.min(64))?;
        // Vertex dominance.
        let mut masks = vec![0u64; h.vertex_count];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                masks[v] |= 1 << i;
            }
        }
        let live: Vec<usize> = (0..h.vertex_count).filter(|&v| alive[v] && masks[v] != 0).collect();
        alive = vec![false; h.vertex_count];
        for &v in &live {
            let dominated = live.iter().any(|&u| {
                u != v && masks[v] & !masks[u] == 0 && (masks[u] != masks[v] || u < v)
            });
            if !dominated {
                alive[v] = true;
            }
        }
        for e in edges.iter_mut() {
            e.retain(|&v| alive[v]);
        }
        if before == (edges.len(), alive.iter().filter(|a| **a).count()) {
            let vertices: Vec<usize> = (0..h.vertex_count).filter(|&v| alive[v]).collect();
            let masks = vertices.iter().map(|&v| masks[v]).collect();
            return Ok(Reduced {
                vertices,
                masks,
                edge_count: edges.len(),
            });
        }
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    // Both sorted.
    let mut j = 0;
    for x in a {
        while j < b.len() && b[j] < *x {
            j += 1;
        }
        if j == b.len() || b[j] != *x {
            return false;
        }
    }
    true
}

/// Greedy transversal (most uncovered edges first). Upper bound only.
pub fn greedy_transversal(h: &Hypergraph) -> Result<TransversalResult> {
    h.validate()?;
    let mut uncovered: Vec<bool> = vec![true; h.edges.len()];
    let mut witness = Vec::new();
    while uncovered.iter().any(|u| *u) {
        let best = (0..h.vertex_count)
            .max_by_key(|&v| {
                let gain = h.edges.iter().zip(&uncovered).filter(|(e, u)| **u && e.contains(&v)).count();
                (gain, std::cmp::Reverse(v))
            })
            .expect("nonempty vertex set");
        witness.push(best);
        for (e, u) in h.edges.iter().zip(uncovered.iter_mut()) {
            if e.contains(&best) {
                *u = false;
            }
        }
    }
    witness.sort_unstable();
    Ok(TransversalResult {
        tau: witness.len(),
        witness,
        upper_bound_only: true,
        record: None,
    })
}

/// Exact transversal number under the default vertex budget.
pub fn tau(h: &Hypergraph, budget: &Budget) -> Result<TransversalResult> {
    tau_with_limit(h, budget.max_vertices, budget)
}

/// Exact transversal number allowing up to `vertex_limit` vertices after
/// reduction.
pub fn tau_with_limit(h: &Hypergraph, vertex_limit: usize, budget: &Budget) -> Result<TransversalResult> {
    if h.edges.is_empty() {
        h.validate()?;
        return Ok(TransversalResult {
            tau: 0,
            witness: Vec::new(),
            upper_bound_only: false,
            record: None,
        });
    }
    let red = reduce(h, budget.max_edges)?;
    Budget::check("reduced vertex set", red.vertices.len(), vertex_limit)?;
    let reduced_h = Hypergraph::new(red.vertices.len(), red.edges())?;
    let frac = fractional_cover_lp(&reduced_h)?.value;
    let global_lb = frac.ceil().to_integer().try_into().unwrap_or(usize::MAX);

    let greedy = greedy_transversal(&reduced_h)?;
    let mut bb = BranchAndBound {
        masks: &red.masks,
        edge_members: reduced_h.edges.clone(),
        full: red.full(),
        best: greedy.witness.clone(),
        global_lb,
        nodes: 0,
        node_limit: budget.max_nodes,
    };
    if bb.best.len() > global_lb {
        let mut excluded = vec![false; red.vertices.len()];
        bb.search(0, &mut Vec::new(), &mut excluded)?;
    }
    let mut witness: Vec<usize> = bb.best.iter().map(|&v| red.vertices[v]).collect();
    witness.sort_unstable();
    let result = TransversalResult {
        tau: witness.len(),
        witness,
        upper_bound_only: false,
        record: Some(SearchRecord {
            nodes: bb.nodes,
            fractional_bound: frac,
            reduced_vertices: red.vertices.len(),
            reduced_edges: red.edge_count,
        }),
    };
    result.verify(h).map_err(Error::TheoremViolation)?;
    Ok(result)
}

struct BranchAndBound<'a> {
    masks: &'a [u64],
    edge_members: Vec<Vec<usize>>,
    full: u64,
    best: Vec<usize>,
    global_lb: usize,
    nodes: u64,
    node_limit: u64,
}

impl BranchAndBound<'_> {
    fn search(&mut self, covered: u64, chosen: &mut Vec<usize>, excluded: &mut [bool]) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::Scale {
                what: "branch-and-bound nodes",
                size: self.nodes as usize,
                limit: self.node_limit as usize,
            });
        }
        if covered == self.full {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return Ok(());
        }
        if chosen.len() + self.packing_bound(covered, excluded) >= self.best.len() {
            return Ok(());
        }
        let branch_edge = (0..self.edge_members.len())
            .filter(|&e| covered >> e & 1 == 0)
            .min_by_key(|&e| self.edge_members[e].iter().filter(|&&v| !excluded[v]).count())
            .expect("some edge is uncovered");
        let mut options: Vec<usize> = self.edge_members[branch_edge].iter().copied().filter(|&v| !excluded[v]).collect();
        options.sort_by_key(|&v| std::cmp::Reverse((self.masks[v] & !covered).count_ones()));
        let mut newly_excluded = Vec::new();
        for v in options {
            chosen.push(v);
            let r = self.search(covered | self.masks[v], chosen, excluded);
            chosen.pop();
            if let Err(e) = r {
                for u in newly_excluded {
                    excluded[u] = false;
                }
                return Err(e);
            }
            if self.best.len() <= self.global_lb.max(chosen.len() + 1) {
                break;
            }
            excluded[v] = true;
            newly_excluded.push(v);
        }
        for u in newly_excluded {
            excluded[u] = false;
        }
        Ok(())
    }

    /// Uncovered edges with pairwise disjoint candidate sets each need their
    /// own vertex.
    fn packing_bound(&self, covered: u64, excluded: &[bool]) -> usize {
        let mut blocked = vec![false; self.masks.len()];
        let mut order: Vec<usize> = (0..self.edge_members.len()).filter(|&e| covered >> e & 1 == 0).collect();
        order.sort_by_key(|&e| self.edge_members[e].len());
        let mut count = 0;
        for e in order {
            let members: Vec<usize> = self.edge_members[e].iter().copied().filter(|&v| !excluded[v]).collect();
            if members.is_empty() {
                return usize::MAX / 2;
            }
            if members.iter().all(|&v| !blocked[v]) {
                count += 1;
                for v in members {
                    blocked[v] = true;
                }
            }
        }
        count
    }
}

/// A maximum `b`-matching: edge indices such that no vertex lies in more than
/// `b` of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BMatching {
    pub b: usize,
    pub value: usize,
    pub edges: Vec<usize>,
}

impl BMatching {
    pub fn verify(&self, h: &Hypergraph) -> Result<(), String> {
        if self.edges.len() != self.value {
            return Err("edge count differs from the reported value".into());
        }
        let mut load = vec![0usize; h.vertex_count];
        let mut seen = vec![false; h.edges.len()];
        for &e in &self.edges {
            if e >= h.edges.len() || seen[e] {
                return Err("edge index repeated or out of range".into());
            }
            seen[e] = true;
            for &v in &h.edges[e] {
                load[v] += 1;
                if load[v] > self.b {
                    return Err(format!("vertex {v} is used more than {} times", self.b));
                }
            }
        }
        Ok(())
    }
}

/// Exact `b`-matching number by include/exclude search with the bound
/// `floor(b nu*)`.
pub fn nu_b(h: &Hypergraph, b: usize, budget: &Budget) -> Result<BMatching> {
    h.validate()?;
    if b == 0 {
        return Err(Error::InvalidInput("b must be at least 1".into()));
    }
    if h.edges.is_empty() {
        return Err(Error::EmptyInput("edge list"));
    }
    Budget::check("edge list", h.edges.len(), budget.max_edges)?;
    let frac = nu_star(h)?.value * Rational::from_integer(b.into());
    let cap: usize = frac.floor().to_integer().try_into().unwrap_or(usize::MAX);
    let edges: Vec<Vec<usize>> = h
        .edges
        .iter()
        .map(|e| {
            let mut e = e.clone();
            e.sort_unstable();
            e.dedup();
            e
        })
        .collect();
    let mut state = MatchingSearch {
        edges: &edges,
        b,
        cap,
        load: vec![0; h.vertex_count],
        chosen: Vec::new(),
        best: Vec::new(),
        nodes: 0,
        node_limit: budget.max_nodes,
    };
    state.search(0)?;
    let result = BMatching {
        b,
        value: state.best.len(),
        edges: state.best,
    };
    result.verify(h).map_err(Error::TheoremViolation)?;
    Ok(result)
}

struct MatchingSearch<'a> {
    edges: &'a [Vec<usize>],
    b: usize,
    cap: usize,
    load: Vec<usize>,
    chosen: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    node_limit: u64,
}

impl MatchingSearch<'_> {
    fn search(&mut self, next: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::Scale {
                what: "b-matching search nodes",
                size: self.nodes as usize,
                limit: self.node_limit as usize,
            });
        }
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        if next == self.edges.len() || self.best.len() >= self.cap {
            return Ok(());
        }
        let remaining = self.edges.len() - next;
        if self.chosen.len() + remaining <= self.best.len() {
            return Ok(());
        }
        let e = &self.edges[next];
        if e.iter().all(|&v| self.load[v] < self.b) {
            for &v in e {
                self.load[v] += 1;
            }
            self.chosen.push(next);
            let r = self.search(next + 1);
            self.chosen.pop();
            for &v in e {
                self.load[v] -= 1;
            }
            r?;
        }
        self.search(next + 1)
    }
}
