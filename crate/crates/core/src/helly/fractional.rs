//! Search for the point-or-hyperplane alternative when only a fraction of
//! the pairs meet.

use serde::{Deserialize, Serialize};

use super::bounds::BoundFormulas;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::geometry::{intersect_refs, Hyperplane, Point, Polyhedron};
use crate::hypergraph::{build_point_hypergraph, hyperplane_candidates, CrossingOracle, Payload};
use crate::rational::{q, serde_q, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalTwoColorReport {
    pub dim: usize,
    #[serde(with = "serde_q")]
    pub alpha: Rational,
    pub meeting_pairs: usize,
    pub total_pairs: usize,
    #[serde(with = "serde_q")]
    pub gamma: Rational,
    #[serde(with = "serde_q")]
    pub lambda: Rational,
    /// The fractional Helly formula used inside `gamma`.
    pub beta: String,
    pub best_point: Point,
    pub point_coverage: usize,
    #[serde(with = "serde_q")]
    pub point_fraction: Rational,
    pub best_hyperplane: Option<Hyperplane>,
    pub hyperplane_coverage: usize,
    #[serde(with = "serde_q")]
    pub hyperplane_fraction: Rational,
    pub point_threshold_met: bool,
    pub hyperplane_threshold_met: bool,
}

/// Finds the point lying in the most members of `a` (over the maximal
/// intersecting subfamilies) and the candidate hyperplane crossing the most
/// members of `b`, then checks that one of them reaches its threshold:
/// `gamma |A|` for the point or `lambda |B|` for the hyperplane.
pub fn fractional_two_color_search(
    a: &[Polyhedron],
    b: &[Polyhedron],
    alpha: &Rational,
    formulas: &BoundFormulas,
    budget: &Budget,
) -> Result<FractionalTwoColorReport> {
    let dim = a.first().ok_or(Error::EmptyInput("first family"))?.dim;
    if b.is_empty() {
        return Err(Error::EmptyInput("second family"));
    }
    if let Some(s) = a.iter().chain(b).find(|s| s.dim != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: s.dim,
        });
    }
    let lambda = formulas.lambda(alpha, dim)?;
    let gamma = formulas.gamma(alpha, dim)?;
    let mut meeting = 0;
    for x in a {
        for y in b {
            if !intersect_refs(&[x, y])?.is_empty() {
                meeting += 1;
            }
        }
    }
    let total = a.len() * b.len();
    if q(meeting as i64) < alpha * q(total as i64) {
        return Err(Error::Precondition(format!(
            "only {meeting} of {total} pairs meet, fewer than alpha times the total"
        )));
    }

    let g0 = build_point_hypergraph(a, budget)?;
    let mut load = vec![0usize; g0.vertex_count];
    for e in &g0.edges {
        for &v in e {
            load[v] += 1;
        }
    }
    let best_v = (0..load.len()).max_by_key(|&v| (load[v], std::cmp::Reverse(v))).expect("nonempty family");
    let best_point = match &g0.vertex_payload.as_ref().expect("point payloads")[best_v] {
        Payload::Point { point } => point.clone(),
        Payload::Flat { .. } => unreachable!("point hypergraph carries points"),
    };
    let point_coverage = load[best_v];

    let oracle = CrossingOracle::new(b)?;
    let mut best_hyperplane = None;
    let mut hyperplane_coverage = 0;
    for h in hyperplane_candidates(b, budget)? {
        let mut count = 0;
        for i in 0..b.len() {
            if oracle.meets(i, &h)? {
                count += 1;
            }
        }
        if count > hyperplane_coverage {
            hyperplane_coverage = count;
            best_hyperplane = Some(h);
        }
    }

    let point_threshold_met = q(point_coverage as i64) >= &gamma * q(a.len() as i64);
    let hyperplane_threshold_met = q(hyperplane_coverage as i64) >= &lambda * q(b.len() as i64);
    if !point_threshold_met && !hyperplane_threshold_met {
        return Err(Error::TheoremViolation(format!(
            "best point covers {point_coverage} of {} and best hyperplane crosses {hyperplane_coverage} of {}, below both thresholds",
            a.len(),
            b.len()
        )));
    }
    Ok(FractionalTwoColorReport {
        dim,
        alpha: alpha.clone(),
        meeting_pairs: meeting,
        total_pairs: total,
        gamma,
        lambda,
        beta: formulas.beta.describe(),
        best_point,
        point_coverage,
        point_fraction: Rational::new((point_coverage as i64).into(), (a.len() as i64).into()),
        best_hyperplane,
        hyperplane_coverage,
        hyperplane_fraction: Rational::new((hyperplane_coverage as i64).into(), (b.len() as i64).into()),
        point_threshold_met,
        hyperplane_threshold_met,
    })
}
