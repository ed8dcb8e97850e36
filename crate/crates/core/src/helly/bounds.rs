//! Bookkeeping for the constants of the iterated argument and the
//! fractional two-colored statement.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, nth_root_upper_bound, q, Rational};

/// A bound that is either an exact rational or an unevaluated expression.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundExpr {
    Value {
        #[serde(with = "crate::rational::serde_q")]
        value: Rational,
    },
    Symbol {
        expr: String,
    },
}

impl BoundExpr {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            BoundExpr::Value { value } => Some(value),
            BoundExpr::Symbol { .. } => None,
        }
    }
}

impl fmt::Display for BoundExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundExpr::Value { value } => f.write_str(&format_rational(value)),
            BoundExpr::Symbol { expr } => f.write_str(expr),
        }
    }
}

/// How the fractional Helly fraction `beta(alpha, d)` is evaluated. This is
/// a configuration choice; every report names the formula it used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BetaFormula {
    /// `1 - (1 - alpha)^(1/(d+1))`, rounded down by bisection on the root
    /// with the given number of bits.
    RootDefault { bits: u32 },
    /// `factor * alpha`.
    Linear {
        #[serde(with = "crate::rational::serde_q")]
        factor: Rational,
    },
}

impl Default for BetaFormula {
    fn default() -> Self {
        BetaFormula::RootDefault { bits: 64 }
    }
}

impl BetaFormula {
    pub fn eval(&self, alpha: &Rational, d: usize) -> Rational {
        match self {
            BetaFormula::RootDefault { bits } => {
                let rest = Rational::one() - alpha;
                if !rest.is_positive() {
                    return Rational::one();
                }
                let root = nth_root_upper_bound(&rest, (d + 1) as u32, *bits);
                (Rational::one() - root).max(Rational::zero())
            }
            BetaFormula::Linear { factor } => factor * alpha,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            BetaFormula::RootDefault { bits } => {
                format!("beta(a,d) = 1 - (1-a)^(1/(d+1)), root bracketed to {bits} bits (configuration)")
            }
            BetaFormula::Linear { factor } => format!("beta(a,d) = {} * a (configuration)", format_rational(factor)),
        }
    }
}

/// Evaluates the thresholds `lambda`, `gamma` and the flat-count recursion.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundFormulas {
    pub beta: BetaFormula,
}

impl BoundFormulas {
    pub fn new(beta: BetaFormula) -> Self {
        BoundFormulas { beta }
    }

    fn check_alpha(alpha: &Rational, d: usize) -> Result<()> {
        if d == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        if !alpha.is_positive() || alpha > &Rational::one() {
            return Err(Error::InvalidInput(format!(
                "alpha must lie in (0, 1], got {}",
                format_rational(alpha)
            )));
        }
        Ok(())
    }

    /// `alpha^(d+2) / (4d * 3^(d+1))`.
    pub fn lambda(&self, alpha: &Rational, d: usize) -> Result<Rational> {
        Self::check_alpha(alpha, d)?;
        let num = num_traits::pow(alpha.clone(), d + 2);
        let den = q(4 * d as i64) * num_traits::pow(q(3), d + 1);
        Ok(num / den)
    }

    /// `min(beta(d * lambda, d), alpha / (6d))`.
    pub fn gamma(&self, alpha: &Rational, d: usize) -> Result<Rational> {
        let lambda = self.lambda(alpha, d)?;
        let b = self.beta.eval(&(q(d as i64) * lambda), d);
        Ok(b.min(alpha / q(6 * d as i64)))
    }

    pub fn beta(&self, alpha: &Rational, d: usize) -> Result<Rational> {
        Self::check_alpha(alpha, d)?;
        Ok(self.beta.eval(alpha, d))
    }

    /// Number of flats after the `i`-th step of the iteration in `R^d`.
    /// Only the first two levels are numbers; later levels are expressions
    /// in the unevaluated step-down constant `G`.
    pub fn flat_count(&self, i: usize, d: usize) -> Result<BoundExpr> {
        let defined = (1..=2).contains(&i) && i <= d || (3..d).contains(&i);
        if !defined {
            return Err(Error::InvalidInput(format!("flat count M({i},{d}) is not defined")));
        }
        Ok(match i {
            1 => BoundExpr::Value { value: Rational::one() },
            2 => BoundExpr::Value { value: q(d as i64) },
            _ => BoundExpr::Symbol {
                expr: format!("G({}, {}, {d})", self.flat_count(i - 1, d)?, d - i + 2),
            },
        })
    }

    /// Point and line budgets of the general theorem; numeric only in the
    /// plane.
    pub fn transversal_budgets(&self, d: usize) -> (BoundExpr, BoundExpr) {
        if d == 2 {
            (
                BoundExpr::Value { value: Rational::one() },
                BoundExpr::Value { value: q(4) },
            )
        } else {
            (
                BoundExpr::Symbol {
                    expr: format!("max over 1 <= i <= {} of F(M(i,{d}), {d}-i+1, {d})", d.saturating_sub(1)),
                },
                BoundExpr::Symbol {
                    expr: format!("G(M({},{d}), 2, {d})", d.saturating_sub(1)),
                },
            )
        }
    }
}
