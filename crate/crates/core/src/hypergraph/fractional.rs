//! Fractional transversal and matching numbers, and the duality sandwich
//! `nu_b / b <= nu* = tau* <= tau`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::search::{nu_b, tau, BMatching, TransversalResult};
use super::Hypergraph;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::lp::{lp_solve, LpOutcome, LpProblem};
use crate::rational::{serde_q, serde_qvec, Rational};

/// Optimal weights of a fractional transversal (per vertex) or fractional
/// matching (per edge).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalResult {
    #[serde(with = "serde_q")]
    pub value: Rational,
    #[serde(with = "serde_qvec")]
    pub weights: Vec<Rational>,
}

impl FractionalResult {
    /// Nonnegative vertex weights with every edge sum at least one.
    pub fn verify_transversal(&self, h: &Hypergraph) -> Result<(), String> {
        if self.weights.len() != h.vertex_count {
            return Err("one weight per vertex expected".into());
        }
        self.check_total()?;
        for (i, e) in h.edges.iter().enumerate() {
            let s: Rational = e.iter().map(|&v| &self.weights[v]).sum();
            if s < Rational::one() {
                return Err(format!("edge {i} has weight {s} < 1"));
            }
        }
        Ok(())
    }

    /// Nonnegative edge weights with every vertex load at most one.
    pub fn verify_matching(&self, h: &Hypergraph) -> Result<(), String> {
        if self.weights.len() != h.edges.len() {
            return Err("one weight per edge expected".into());
        }
        self.check_total()?;
        let mut load = vec![Rational::zero(); h.vertex_count];
        for (e, w) in h.edges.iter().zip(&self.weights) {
            for &v in e {
                load[v] += w;
            }
        }
        if let Some(v) = load.iter().position(|l| l > &Rational::one()) {
            return Err(format!("vertex {v} is overloaded"));
        }
        Ok(())
    }

    fn check_total(&self) -> Result<(), String> {
        if self.weights.iter().any(Signed::is_negative) {
            return Err("negative weight".into());
        }
        if self.weights.iter().sum::<Rational>() != self.value {
            return Err("weights do not sum to the value".into());
        }
        Ok(())
    }
}

pub(crate) fn fractional_cover_lp(h: &Hypergraph) -> Result<FractionalResult> {
    if h.edges.is_empty() {
        return Err(Error::EmptyInput("edge list"));
    }
    let n = h.vertex_count;
    let mut lp = LpProblem::new(n);
    for e in &h.edges {
        let mut row = vec![Rational::zero(); n];
        for &v in e {
            row[v] = Rational::one();
        }
        lp.ge(row, Rational::one());
    }
    for v in 0..n {
        lp.bound(v, Some(Rational::zero()), None);
    }
    lp.minimize(vec![Rational::one(); n]);
    match lp_solve(&lp)? {
        LpOutcome::Optimal { point, value, .. } => Ok(FractionalResult { value, weights: point }),
        other => Err(Error::TheoremViolation(format!("fractional cover LP returned {other:?}"))),
    }
}

/// Fractional transversal number with optimal vertex weights.
pub fn tau_star(h: &Hypergraph) -> Result<FractionalResult> {
    h.validate()?;
    let r = fractional_cover_lp(h)?;
    r.verify_transversal(h).map_err(Error::TheoremViolation)?;
    Ok(r)
}

/// Fractional matching number with optimal edge weights.
pub fn nu_star(h: &Hypergraph) -> Result<FractionalResult> {
    h.validate()?;
    if h.edges.is_empty() {
        return Err(Error::EmptyInput("edge list"));
    }
    let m = h.edges.len();
    let mut lp = LpProblem::new(m);
    for v in 0..h.vertex_count {
        let row: Vec<Rational> = h
            .edges
            .iter()
            .map(|e| if e.contains(&v) { Rational::one() } else { Rational::zero() })
            .collect();
        if row.iter().any(|c| !c.is_zero()) {
            lp.le(row, Rational::one());
        }
    }
    for e in 0..m {
        lp.bound(e, Some(Rational::zero()), None);
    }
    lp.maximize(vec![Rational::one(); m]);
    let r = match lp_solve(&lp)? {
        LpOutcome::Optimal { point, value, .. } => FractionalResult { value, weights: point },
        other => return Err(Error::TheoremViolation(format!("fractional matching LP returned {other:?}"))),
    };
    r.verify_matching(h).map_err(Error::TheoremViolation)?;
    Ok(r)
}

/// All four quantities of the duality sandwich for one hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub b: usize,
    pub nu_b: Option<BMatching>,
    pub nu_star: FractionalResult,
    pub tau_star: FractionalResult,
    pub tau: Option<TransversalResult>,
    /// Scale errors from the integral searches, if any.
    pub notes: Vec<String>,
    pub sandwich_holds: bool,
}

/// Computes `nu_b`, `nu*`, `tau*`, `tau` and checks
/// `nu_b / b <= nu* = tau* <= tau`. The LP pair is always reported; the
/// integral quantities are omitted (with a note) when they exceed the budget.
pub fn duality_report(h: &Hypergraph, b: usize, budget: &Budget) -> Result<DualityReport> {
    if b == 0 {
        return Err(Error::InvalidInput("b must be at least 1".into()));
    }
    let ts = tau_star(h)?;
    let ns = nu_star(h)?;
    let mut notes = Vec::new();
    let nb = match nu_b(h, b, budget) {
        Ok(r) => Some(r),
        Err(e) if e.is_scale() => {
            notes.push(format!("nu_b: {e}"));
            None
        }
        Err(e) => return Err(e),
    };
    let t = match tau(h, budget) {
        Ok(r) => Some(r),
        Err(e) if e.is_scale() => {
            notes.push(format!("tau: {e}"));
            None
        }
        Err(e) => return Err(e),
    };
    let mut holds = ns.value == ts.value;
    if let Some(nb) = &nb {
        holds &= Rational::new(nb.value.into(), b.into()) <= ns.value;
    }
    if let Some(t) = &t {
        holds &= ts.value <= Rational::from_integer(t.tau.into());
    }
    if !holds {
        return Err(Error::TheoremViolation(format!(
            "duality sandwich fails: nu_b={:?}, nu*={}, tau*={}, tau={:?}",
            nb.as_ref().map(|x| x.value),
            ns.value,
            ts.value,
            t.as_ref().map(|x| x.tau)
        )));
    }
    Ok(DualityReport {
        b,
        nu_b: nb,
        nu_star: ns,
        tau_star: ts,
        tau: t,
        notes,
        sandwich_holds: holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn hg(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn disjoint_singletons() {
        let h = hg(2, &[&[0], &[1]]);
        assert_eq!(tau_star(&h).unwrap().value, q(2));
        assert_eq!(nu_star(&h).unwrap().value, q(2));
    }

    #[test]
    fn triangle_is_three_halves() {
        let h = hg(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(tau_star(&h).unwrap().value, qf(3, 2));
        assert_eq!(nu_star(&h).unwrap().value, qf(3, 2));
        let r = duality_report(&h, 2, &Budget::default()).unwrap();
        assert_eq!(r.nu_b.unwrap().value, 3);
        assert_eq!(r.tau.unwrap().tau, 2);
    }

    #[test]
    fn singleton_edge_report() {
        let h = hg(1, &[&[0]]);
        for b in 1..4 {
            let r = duality_report(&h, b, &Budget::default()).unwrap();
            assert_eq!(r.nu_b.unwrap().value, 1);
            assert_eq!(r.nu_star.value, q(1));
            assert_eq!(r.tau.unwrap().tau, 1);
        }
    }

    #[test]
    fn scaling_edges_keeps_fractional_values() {
        let h = hg(4, &[&[0, 1], &[1, 2], &[2, 3], &[3, 0], &[0, 2]]);
        let base = tau_star(&h).unwrap().value;
        for k in 2..4 {
            let s = h.scaled(k);
            assert_eq!(tau_star(&s).unwrap().value, base);
            assert_eq!(nu_star(&s).unwrap().value, base);
        }
    }
}
