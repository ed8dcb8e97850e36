//! Certifying linear programming over exact rationals.
//!
//! [`lp_solve`] runs a two-phase primal simplex with Bland's rule on a dense
//! tableau. Free variables are split into positive and negative parts, every
//! `<=` row receives a slack, and rows without a usable slack start from an
//! artificial basis. Every outcome carries a certificate that is re-checked
//! against the original rows before it is returned:
//!
//! * `Feasible` / `Optimal`: a point satisfying every row exactly; optimal
//!   outcomes also carry dual multipliers `y` with `yA = c` and `yb = value`.
//! * `Infeasible`: Farkas multipliers `y` (nonnegative on `<=` rows, free on
//!   `=` rows) with `yA = 0` and `yb < 0`.
//! * `Unbounded`: a feasible point and a recession ray improving the objective.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{dot, serde_q, serde_qvec, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowKind {
    /// `coeffs . x <= rhs`
    Le,
    /// `coeffs . x = rhs`
    Eq,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpRow {
    #[serde(with = "serde_qvec")]
    pub coeffs: Vec<Rational>,
    pub kind: RowKind,
    #[serde(with = "serde_q")]
    pub rhs: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Objective {
    pub sense: Sense,
    #[serde(with = "serde_qvec")]
    pub coeffs: Vec<Rational>,
}

/// A linear program over free rational variables. Variable bounds are
/// ordinary rows (see [`LpProblem::bound`]).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpProblem {
    pub num_vars: usize,
    pub rows: Vec<LpRow>,
    pub objective: Option<Objective>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LpOutcome {
    Optimal {
        #[serde(with = "serde_qvec")]
        point: Vec<Rational>,
        #[serde(with = "serde_q")]
        value: Rational,
        #[serde(with = "serde_qvec")]
        duals: Vec<Rational>,
    },
    Feasible {
        #[serde(with = "serde_qvec")]
        point: Vec<Rational>,
    },
    Infeasible {
        #[serde(with = "serde_qvec")]
        farkas: Vec<Rational>,
    },
    Unbounded {
        #[serde(with = "serde_qvec")]
        point: Vec<Rational>,
        #[serde(with = "serde_qvec")]
        ray: Vec<Rational>,
    },
}

impl LpOutcome {
    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { point, .. }
            | LpOutcome::Feasible { point }
            | LpOutcome::Unbounded { point, .. } => Some(point),
            LpOutcome::Infeasible { .. } => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpOutcome::Infeasible { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("row {row} has {found} coefficients, expected {expected}")]
    RowDimension {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("objective has {found} coefficients, expected {expected}")]
    ObjectiveDimension { found: usize, expected: usize },
    #[error("solver produced an invalid certificate: {0}")]
    Certificate(String),
}

impl LpProblem {
    pub fn new(num_vars: usize) -> Self {
        LpProblem {
            num_vars,
            rows: Vec::new(),
            objective: None,
        }
    }

    pub fn le(&mut self, coeffs: Vec<Rational>, rhs: Rational) -> &mut Self {
        self.rows.push(LpRow {
            coeffs,
            kind: RowKind::Le,
            rhs,
        });
        self
    }

    /// Stored as the negated `<=` row.
    pub fn ge(&mut self, coeffs: Vec<Rational>, rhs: Rational) -> &mut Self {
        self.le(coeffs.into_iter().map(|c| -c).collect(), -rhs)
    }

    pub fn equal(&mut self, coeffs: Vec<Rational>, rhs: Rational) -> &mut Self {
        self.rows.push(LpRow {
            coeffs,
            kind: RowKind::Eq,
            rhs,
        });
        self
    }

    /// Adds `lower <= x_var <= upper` for whichever bounds are given.
    pub fn bound(&mut self, var: usize, lower: Option<Rational>, upper: Option<Rational>) -> &mut Self {
        let mut e = vec![Rational::zero(); self.num_vars];
        e[var] = Rational::one();
        if let Some(lo) = lower {
            self.ge(e.clone(), lo);
        }
        if let Some(hi) = upper {
            self.le(e, hi);
        }
        self
    }

    pub fn maximize(&mut self, coeffs: Vec<Rational>) -> &mut Self {
        self.objective = Some(Objective {
            sense: Sense::Maximize,
            coeffs,
        });
        self
    }

    pub fn minimize(&mut self, coeffs: Vec<Rational>) -> &mut Self {
        self.objective = Some(Objective {
            sense: Sense::Minimize,
            coeffs,
        });
        self
    }

    pub fn validate(&self) -> Result<(), LpError> {
        for (i, row) in self.rows.iter().enumerate() {
            if row.coeffs.len() != self.num_vars {
                return Err(LpError::RowDimension {
                    row: i,
                    found: row.coeffs.len(),
                    expected: self.num_vars,
                });
            }
        }
        if let Some(obj) = &self.objective {
            if obj.coeffs.len() != self.num_vars {
                return Err(LpError::ObjectiveDimension {
                    found: obj.coeffs.len(),
                    expected: self.num_vars,
                });
            }
        }
        Ok(())
    }

    /// Index of the first row violated by `point`, if any.
    pub fn first_violation(&self, point: &[Rational]) -> Option<usize> {
        self.rows.iter().position(|row| {
            let lhs = dot(&row.coeffs, point);
            match row.kind {
                RowKind::Le => lhs > row.rhs,
                RowKind::Eq => lhs != row.rhs,
            }
        })
    }

    /// Checks `y >= 0` on `<=` rows, `yA = 0` and `yb < 0`.
    pub fn check_farkas(&self, y: &[Rational]) -> Result<(), String> {
        if y.len() != self.rows.len() {
            return Err(format!("{} multipliers for {} rows", y.len(), self.rows.len()));
        }
        let mut combo = vec![Rational::zero(); self.num_vars];
        let mut rhs = Rational::zero();
        for (row, m) in self.rows.iter().zip(y) {
            if m.is_zero() {
                continue;
            }
            if row.kind == RowKind::Le && m.is_negative() {
                return Err("negative multiplier on an inequality row".into());
            }
            for (c, a) in combo.iter_mut().zip(&row.coeffs) {
                *c += m * a;
            }
            rhs += m * &row.rhs;
        }
        if combo.iter().any(|c| !c.is_zero()) {
            return Err("aggregated functional is not zero".into());
        }
        if !rhs.is_negative() {
            return Err("aggregated constant is not negative".into());
        }
        Ok(())
    }

    fn check_duals(&self, y: &[Rational], value: &Rational) -> Result<(), String> {
        let obj = self.objective.as_ref().ok_or("no objective")?;
        if y.len() != self.rows.len() {
            return Err("dual length mismatch".into());
        }
        let mut combo = vec![Rational::zero(); self.num_vars];
        let mut rhs = Rational::zero();
        for (row, m) in self.rows.iter().zip(y) {
            if row.kind == RowKind::Le {
                let wrong_sign = match obj.sense {
                    Sense::Maximize => m.is_negative(),
                    Sense::Minimize => m.is_positive(),
                };
                if wrong_sign {
                    return Err("dual multiplier has the wrong sign".into());
                }
            }
            for (c, a) in combo.iter_mut().zip(&row.coeffs) {
                *c += m * a;
            }
            rhs += m * &row.rhs;
        }
        if combo != obj.coeffs {
            return Err("duals do not reproduce the objective".into());
        }
        if &rhs != value {
            return Err("dual value differs from primal value".into());
        }
        Ok(())
    }

    /// Re-verifies an outcome against this problem with exact arithmetic.
    pub fn verify(&self, outcome: &LpOutcome) -> Result<(), String> {
        match outcome {
            LpOutcome::Feasible { point } => self.check_point(point),
            LpOutcome::Optimal {
                point,
                value,
                duals,
            } => {
                self.check_point(point)?;
                let obj = self.objective.as_ref().ok_or("optimal outcome without objective")?;
                if &dot(&obj.coeffs, point) != value {
                    return Err("objective value mismatch".into());
                }
                self.check_duals(duals, value)
            }
            LpOutcome::Infeasible { farkas } => self.check_farkas(farkas),
            LpOutcome::Unbounded { point, ray } => {
                self.check_point(point)?;
                let obj = self.objective.as_ref().ok_or("unbounded outcome without objective")?;
                for row in &self.rows {
                    let slope = dot(&row.coeffs, ray);
                    let ok = match row.kind {
                        RowKind::Le => !slope.is_positive(),
                        RowKind::Eq => slope.is_zero(),
                    };
                    if !ok {
                        return Err("ray leaves the feasible region".into());
                    }
                }
                let gain = dot(&obj.coeffs, ray);
                let improving = match obj.sense {
                    Sense::Maximize => gain.is_positive(),
                    Sense::Minimize => gain.is_negative(),
                };
                if improving {
                    Ok(())
                } else {
                    Err("ray does not improve the objective".into())
                }
            }
        }
    }

    fn check_point(&self, point: &[Rational]) -> Result<(), String> {
        if point.len() != self.num_vars {
            return Err("point has the wrong dimension".into());
        }
        match self.first_violation(point) {
            Some(i) => Err(format!("point violates row {i}")),
            None => Ok(()),
        }
    }
}

/// Solves `p` exactly. Deterministic for a fixed input.
pub fn lp_solve(p: &LpProblem) -> Result<LpOutcome, LpError> {
    p.validate()?;
    let outcome = Tableau::build(p).run(p);
    p.verify(&outcome).map_err(LpError::Certificate)?;
    Ok(outcome)
}

/// Convenience: is the row system feasible?
pub fn is_feasible(p: &LpProblem) -> Result<bool, LpError> {
    let mut q = p.clone();
    q.objective = None;
    Ok(!lp_solve(&q)?.is_infeasible())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ColKind {
    Pos(usize),
    Neg(usize),
    Slack,
    Artificial,
}

struct Tableau {
    m: usize,
    // Column layout: [pos vars | neg vars | slacks | artificials], rhs kept apart.
    cols: Vec<ColKind>,
    a: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    // Column that formed the identity basis for each row at the start.
    init_col: Vec<usize>,
    row_sign: Vec<Rational>,
    has_artificial: bool,
}

impl Tableau {
    fn build(p: &LpProblem) -> Tableau {
        let n = p.num_vars;
        let m = p.rows.len();
        let mut cols: Vec<ColKind> = (0..n).map(ColKind::Pos).chain((0..n).map(ColKind::Neg)).collect();
        let mut slack_of = vec![None; m];
        for (i, row) in p.rows.iter().enumerate() {
            if row.kind == RowKind::Le {
                slack_of[i] = Some(cols.len());
                cols.push(ColKind::Slack);
            }
        }
        let mut row_sign = Vec::with_capacity(m);
        let mut init_col = vec![0; m];
        let mut artificial_rows = Vec::new();
        for (i, row) in p.rows.iter().enumerate() {
            let sign = if row.rhs.is_negative() { -Rational::one() } else { Rational::one() };
            // A slack with coefficient +1 can start in the basis.
            match (slack_of[i], sign.is_positive()) {
                (Some(s), true) => init_col[i] = s,
                _ => {
                    init_col[i] = cols.len();
                    cols.push(ColKind::Artificial);
                    artificial_rows.push(i);
                }
            }
            row_sign.push(sign);
        }
        let width = cols.len();
        let mut a = vec![vec![Rational::zero(); width]; m];
        let mut rhs = Vec::with_capacity(m);
        for (i, row) in p.rows.iter().enumerate() {
            let s = &row_sign[i];
            for (j, c) in row.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    a[i][j] = c * s;
                    a[i][n + j] = -(c * s);
                }
            }
            if let Some(sc) = slack_of[i] {
                a[i][sc] = s.clone();
            }
            if cols[init_col[i]] == ColKind::Artificial {
                a[i][init_col[i]] = Rational::one();
            }
            rhs.push(&row.rhs * s);
        }
        Tableau {
            m,
            basis: init_col.clone(),
            init_col,
            cols,
            a,
            rhs,
            row_sign,
            has_artificial: !artificial_rows.is_empty(),
        }
    }

    fn width(&self) -> usize {
        self.cols.len()
    }

    /// Reduced-cost row for column costs `cost` under the current basis.
    /// Returns (reduced costs, current objective value).
    fn reduced_costs(&self, cost: &[Rational]) -> (Vec<Rational>, Rational) {
        let mut r = cost.to_vec();
        let mut value = Rational::zero();
        for i in 0..self.m {
            let cb = &cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (rj, aij) in r.iter_mut().zip(&self.a[i]) {
                if !aij.is_zero() {
                    *rj -= cb * aij;
                }
            }
            value += cb * &self.rhs[i];
        }
        (r, value)
    }

    fn pivot(&mut self, row: usize, col: usize, r: &mut [Rational], value: &mut Rational) {
        let inv = self.a[row][col].recip();
        if !inv.is_one() {
            for v in self.a[row].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
            self.rhs[row] *= &inv;
        }
        let prow = std::mem::take(&mut self.a[row]);
        let prhs = self.rhs[row].clone();
        let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
        for i in 0..self.m {
            if i == row || self.a[i][col].is_zero() {
                continue;
            }
            let f = self.a[i][col].clone();
            for &j in &nz {
                let d = &f * &prow[j];
                self.a[i][j] -= d;
            }
            if !prhs.is_zero() {
                let d = &f * &prhs;
                self.rhs[i] -= d;
            }
        }
        if !r[col].is_zero() {
            let f = r[col].clone();
            for &j in &nz {
                let d = &f * &prow[j];
                r[j] -= d;
            }
            // Objective value tracks c_B . x_B, so it moves with the rhs.
            *value += &f * &prhs;
        }
        self.a[row] = prow;
        self.basis[row] = col;
    }

    /// Bland's rule simplex minimizing the given reduced-cost row.
    /// Returns `Err(col)` if column `col` proves unboundedness.
    fn optimize(&mut self, r: &mut [Rational], value: &mut Rational, allowed: &dyn Fn(usize) -> bool) -> Result<(), usize> {
        loop {
            let Some(enter) = (0..self.width()).find(|&j| allowed(j) && r[j].is_negative()) else {
                return Ok(());
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.m {
                let aij = &self.a[i][enter];
                if !aij.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / aij;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return Err(enter),
                Some((row, _)) => self.pivot(row, enter, r, value),
            }
        }
    }

    fn primal_point(&self, n: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n];
        for i in 0..self.m {
            match self.cols[self.basis[i]] {
                ColKind::Pos(j) => x[j] += &self.rhs[i],
                ColKind::Neg(j) => x[j] -= &self.rhs[i],
                _ => {}
            }
        }
        x
    }

    /// Row multipliers `pi_i = c_init(i) - r_init(i)` read off the final
    /// reduced-cost row, mapped back through the row sign flips.
    fn row_duals(&self, r: &[Rational], cost: &[Rational]) -> Vec<Rational> {
        (0..self.m)
            .map(|i| {
                let c = self.init_col[i];
                (&cost[c] - &r[c]) * &self.row_sign[i]
            })
            .collect()
    }

    fn run(mut self, p: &LpProblem) -> LpOutcome {
        let n = p.num_vars;
        let width = self.width();
        if self.has_artificial {
            let cost: Vec<Rational> = self
                .cols
                .iter()
                .map(|c| if *c == ColKind::Artificial { Rational::one() } else { Rational::zero() })
                .collect();
            let (mut r, mut value) = self.reduced_costs(&cost);
            // Phase I is bounded below by zero.
            let _ = self.optimize(&mut r, &mut value, &|_| true);
            if value.is_positive() {
                // pi from phase I; Farkas multipliers are -pi (sign-mapped).
                let farkas = self.row_duals(&r, &cost).into_iter().map(|v| -v).collect();
                return LpOutcome::Infeasible { farkas };
            }
            self.expel_artificials();
        }
        let is_art = |j: usize, cols: &[ColKind]| cols[j] == ColKind::Artificial;
        let cols = self.cols.clone();
        let allowed = move |j: usize| !is_art(j, &cols);
        let Some(obj) = &p.objective else {
            return LpOutcome::Feasible {
                point: self.primal_point(n),
            };
        };
        // Internally always minimize.
        let flip = match obj.sense {
            Sense::Maximize => -Rational::one(),
            Sense::Minimize => Rational::one(),
        };
        let cost: Vec<Rational> = self
            .cols
            .iter()
            .map(|c| match c {
                ColKind::Pos(j) => &obj.coeffs[*j] * &flip,
                ColKind::Neg(j) => -(&obj.coeffs[*j] * &flip),
                _ => Rational::zero(),
            })
            .collect();
        debug_assert_eq!(cost.len(), width);
        let (mut r, mut value) = self.reduced_costs(&cost);
        match self.optimize(&mut r, &mut value, &allowed) {
            Ok(()) => {
                let point = self.primal_point(n);
                let value = dot(&obj.coeffs, &point);
                // min (flip c) x has duals pi with pi A = flip c; y = flip * pi.
                let duals = self.row_duals(&r, &cost).into_iter().map(|v| v * &flip).collect();
                LpOutcome::Optimal { point, value, duals }
            }
            Err(col) => {
                let point = self.primal_point(n);
                let mut ray = vec![Rational::zero(); n];
                let mut push = |kind: ColKind, amount: &Rational| match kind {
                    ColKind::Pos(j) => ray[j] += amount,
                    ColKind::Neg(j) => ray[j] -= amount,
                    _ => {}
                };
                push(self.cols[col], &Rational::one());
                for i in 0..self.m {
                    let a = &self.a[i][col];
                    if !a.is_zero() {
                        push(self.cols[self.basis[i]], &-a.clone());
                    }
                }
                LpOutcome::Unbounded { point, ray }
            }
        }
    }

    /// Pivots zero-level artificials out of the basis where possible. Rows
    /// where this is impossible are redundant; their artificial stays basic
    /// at zero and can never move because the row is zero elsewhere.
    fn expel_artificials(&mut self) {
        let mut dummy_r = vec![Rational::zero(); self.width()];
        let mut dummy_v = Rational::zero();
        for i in 0..self.m {
            if self.cols[self.basis[i]] != ColKind::Artificial {
                continue;
            }
            if let Some(j) = (0..self.width()).find(|&j| self.cols[j] != ColKind::Artificial && !self.a[i][j].is_zero()) {
                self.pivot(i, j, &mut dummy_r, &mut dummy_v);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn maximize_single_bound() {
        let mut p = LpProblem::new(1);
        p.le(v(&[1]), q(3)).maximize(v(&[1]));
        match lp_solve(&p).unwrap() {
            LpOutcome::Optimal { point, value, .. } => {
                assert_eq!(point, v(&[3]));
                assert_eq!(value, q(3));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn contradictory_pair_gives_unit_farkas() {
        let mut p = LpProblem::new(1);
        p.le(v(&[1]), q(0)).ge(v(&[1]), q(1));
        match lp_solve(&p).unwrap() {
            LpOutcome::Infeasible { farkas } => {
                // Positive multiples of (1, 1): x <= 0 plus -x <= -1 gives 0 <= -1.
                assert_eq!(farkas[0], farkas[1]);
                assert!(farkas[0].is_positive());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn simplex_facets_are_jointly_infeasible() {
        // Interior side of the 4 facets of the standard 3-simplex, with each
        // facet taken as the opposite closed halfspace: x_i <= -1 and sum >= 2.
        let mut p = LpProblem::new(3);
        p.le(v(&[1, 0, 0]), q(-1))
            .le(v(&[0, 1, 0]), q(-1))
            .le(v(&[0, 0, 1]), q(-1))
            .ge(v(&[1, 1, 1]), q(2));
        let out = lp_solve(&p).unwrap();
        let LpOutcome::Infeasible { farkas } = &out else {
            panic!("expected infeasible, got {out:?}");
        };
        p.check_farkas(farkas).unwrap();
    }

    #[test]
    fn unbounded_ray() {
        let mut p = LpProblem::new(2);
        p.le(v(&[1, -1]), q(1)).maximize(v(&[1, 1]));
        let out = lp_solve(&p).unwrap();
        assert!(matches!(out, LpOutcome::Unbounded { .. }));
    }

    #[test]
    fn minimize_with_equalities_and_duals() {
        // min x + 2y s.t. x + y = 4, x <= 3, y >= 0 -> x=3, y=1, value 5.
        let mut p = LpProblem::new(2);
        p.equal(v(&[1, 1]), q(4)).le(v(&[1, 0]), q(3)).ge(v(&[0, 1]), q(0)).minimize(v(&[1, 2]));
        match lp_solve(&p).unwrap() {
            LpOutcome::Optimal { point, value, .. } => {
                assert_eq!(point, v(&[3, 1]));
                assert_eq!(value, q(5));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn redundant_equalities_are_handled() {
        let mut p = LpProblem::new(2);
        p.equal(v(&[1, 1]), q(1)).equal(v(&[2, 2]), q(2)).ge(v(&[1, 0]), q(0)).ge(v(&[0, 1]), q(0)).maximize(vec![q(1), qf(1, 2)]);
        match lp_solve(&p).unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch_is_structured() {
        let mut p = LpProblem::new(2);
        p.le(v(&[1]), q(0));
        assert!(matches!(lp_solve(&p), Err(LpError::RowDimension { row: 0, .. })));
    }

    #[test]
    fn empty_system_is_feasible_and_unbounded_objective() {
        let p = LpProblem::new(2);
        assert!(matches!(lp_solve(&p).unwrap(), LpOutcome::Feasible { .. }));
        let mut p = LpProblem::new(2);
        p.minimize(v(&[0, 1]));
        assert!(matches!(lp_solve(&p).unwrap(), LpOutcome::Unbounded { .. }));
    }

    proptest::proptest! {
        // Every solver call self-verifies; random small systems exercise all
        // four outcome kinds and degenerate pivots.
        #[test]
        fn random_systems_certify(
            rows in proptest::collection::vec((proptest::collection::vec(-3i64..=3, 3), -4i64..=4, proptest::bool::ANY), 0..7),
            obj in proptest::collection::vec(-2i64..=2, 3),
            maximize in proptest::bool::ANY,
        ) {
            let mut p = LpProblem::new(3);
            for (coeffs, rhs, is_eq) in &rows {
                if *is_eq { p.equal(v(coeffs), q(*rhs)); } else { p.le(v(coeffs), q(*rhs)); }
            }
            if maximize { p.maximize(v(&obj)); } else { p.minimize(v(&obj)); }
            let out = lp_solve(&p).unwrap();
            proptest::prop_assert!(p.verify(&out).is_ok());
        }
    }
}
