//! Parallel projection along a direction by Fourier–Motzkin elimination.
//!
//! A point `x` is written uniquely as `lift(y) + t v`, where `lift` inserts a
//! zero at a pivot coordinate `j` with `v_j != 0`. Eliminating `t` from the
//! substituted system gives the shadow in the remaining `d - 1` coordinates.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::{AffineFlat, Halfspace, Hyperplane, Point, Polyhedron};
use crate::error::{Error, Result};
use crate::lp::{lp_solve, LpOutcome};
use crate::rational::{dot, is_zero_vec, Rational};

/// Coordinates for projecting `R^d` along `direction` onto `R^{d-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionFrame {
    pub direction: Vec<Rational>,
    pub pivot: usize,
}

impl ProjectionFrame {
    pub fn new(direction: Vec<Rational>) -> Result<Self> {
        if direction.len() < 2 {
            return Err(Error::InvalidInput("projection needs ambient dimension at least 2".into()));
        }
        let pivot = direction.iter().position(|c| !c.is_zero()).ok_or(Error::ZeroDirection)?;
        Ok(ProjectionFrame { direction, pivot })
    }

    pub fn dim(&self) -> usize {
        self.direction.len()
    }

    pub fn project_point(&self, x: &Point) -> Point {
        let t = &x.coords[self.pivot] / &self.direction[self.pivot];
        Point::new(
            (0..self.dim())
                .filter(|&i| i != self.pivot)
                .map(|i| &x.coords[i] - &t * &self.direction[i])
                .collect(),
        )
    }

    pub fn lift_point(&self, y: &Point) -> Point {
        let mut coords = y.coords.clone();
        coords.insert(self.pivot, Rational::zero());
        Point::new(coords)
    }

    /// The line parallel to the direction whose shadow is `y`.
    pub fn fiber(&self, y: &Point) -> AffineFlat {
        AffineFlat {
            dim: self.dim(),
            base: self.lift_point(y),
            directions: vec![self.direction.clone()],
        }
    }

    /// Exact H-representation of the shadow of `s`.
    pub fn project(&self, s: &Polyhedron) -> Result<Polyhedron> {
        if s.dim != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: s.dim,
            });
        }
        let out_dim = self.dim() - 1;
        // Rows over (y, t): coefficients on y, coefficient on t, rhs.
        let split = |n: &[Rational]| -> (Vec<Rational>, Rational) {
            let y: Vec<Rational> = (0..self.dim()).filter(|&i| i != self.pivot).map(|i| n[i].clone()).collect();
            (y, dot(n, &self.direction))
        };
        let mut ineqs: Vec<(Vec<Rational>, Rational, Rational)> = s
            .inequalities
            .iter()
            .map(|h| {
                let (y, t) = split(&h.normal);
                (y, t, h.offset.clone())
            })
            .collect();
        let mut eqs: Vec<(Vec<Rational>, Rational, Rational)> = s
            .equalities
            .iter()
            .map(|h| {
                let (y, t) = split(&h.normal);
                (y, t, h.offset.clone())
            })
            .collect();

        if let Some(k) = eqs.iter().position(|(_, t, _)| !t.is_zero()) {
            // t = (rhs - a.y) / c; substitute everywhere.
            let (a, c, r) = eqs.remove(k);
            let substitute = |row: &mut (Vec<Rational>, Rational, Rational)| {
                if row.1.is_zero() {
                    return;
                }
                let f = &row.1 / &c;
                for (x, ai) in row.0.iter_mut().zip(&a) {
                    *x -= &f * ai;
                }
                row.2 -= &f * &r;
                row.1 = Rational::zero();
            };
            ineqs.iter_mut().for_each(substitute);
            eqs.iter_mut().for_each(substitute);
        } else {
            let (pos, rest): (Vec<_>, Vec<_>) = ineqs.into_iter().partition(|r| r.1.is_positive());
            let (neg, zero): (Vec<_>, Vec<_>) = rest.into_iter().partition(|r| r.1.is_negative());
            ineqs = zero;
            for p in &pos {
                for n in &neg {
                    let (fp, fn_) = (p.1.recip(), -n.1.recip());
                    let y = p.0.iter().zip(&n.0).map(|(a, b)| a * &fp + b * &fn_).collect();
                    ineqs.push((y, Rational::zero(), &p.2 * &fp + &n.2 * &fn_));
                }
            }
        }

        let mut inequalities = Vec::new();
        let mut equalities = Vec::new();
        for (y, _, r) in ineqs {
            if is_zero_vec(&y) {
                if r.is_negative() {
                    return Ok(Polyhedron::empty(out_dim));
                }
            } else {
                inequalities.push(Halfspace { normal: y, offset: r });
            }
        }
        for (y, _, r) in eqs {
            if is_zero_vec(&y) {
                if !r.is_zero() {
                    return Ok(Polyhedron::empty(out_dim));
                }
            } else {
                equalities.push(Hyperplane { normal: y, offset: r });
            }
        }
        simplify(Polyhedron {
            dim: out_dim,
            inequalities,
            equalities,
        })
    }
}

/// Projects every set of a family along `direction`.
pub fn affine_project(fam: &[Polyhedron], direction: &[Rational]) -> Result<Vec<Polyhedron>> {
    let frame = ProjectionFrame::new(direction.to_vec())?;
    fam.iter().map(|s| frame.project(s)).collect()
}

/// Normalizes rows, merges opposite inequality pairs into equalities and
/// drops inequalities implied by the remaining rows (one LP each).
fn simplify(p: Polyhedron) -> Result<Polyhedron> {
    if p.is_empty()? {
        return Ok(Polyhedron::empty(p.dim));
    }
    let mut seen = BTreeSet::new();
    let mut ineqs: Vec<Halfspace> = Vec::new();
    for h in p.inequalities {
        let h = h.normalized();
        if seen.insert((h.normal.clone(), h.offset.clone())) {
            ineqs.push(h);
        }
    }
    let mut eq_seen = BTreeSet::new();
    let mut equalities = Vec::new();
    for h in p.equalities {
        let (n, o) = super::normalize_row(&h.normal, &h.offset);
        let (n, o) = orient(n, o);
        if eq_seen.insert((n.clone(), o.clone())) {
            equalities.push(Hyperplane { normal: n, offset: o });
        }
    }
    let mut paired = vec![false; ineqs.len()];
    for i in 0..ineqs.len() {
        for j in i + 1..ineqs.len() {
            let neg: Vec<Rational> = ineqs[j].normal.iter().map(|x| -x).collect();
            if !paired[i] && !paired[j] && ineqs[i].normal == neg && ineqs[i].offset == -ineqs[j].offset.clone() {
                paired[i] = true;
                paired[j] = true;
                let (n, o) = orient(ineqs[i].normal.clone(), ineqs[i].offset.clone());
                if eq_seen.insert((n.clone(), o.clone())) {
                    equalities.push(Hyperplane { normal: n, offset: o });
                }
            }
        }
    }
    let mut kept: Vec<Halfspace> = ineqs.into_iter().zip(paired).filter(|(_, p)| !p).map(|(h, _)| h).collect();
    let mut i = 0;
    while i < kept.len() {
        let candidate = kept.remove(i);
        let rest = Polyhedron {
            dim: p.dim,
            inequalities: kept.clone(),
            equalities: equalities.clone(),
        };
        let mut lp = rest.to_lp();
        lp.maximize(candidate.normal.clone());
        let implied = match lp_solve(&lp)? {
            LpOutcome::Optimal { value, .. } => value <= candidate.offset,
            _ => false,
        };
        if !implied {
            kept.insert(i, candidate);
            i += 1;
        }
    }
    Ok(Polyhedron {
        dim: p.dim,
        inequalities: kept,
        equalities,
    })
}

fn orient(n: Vec<Rational>, o: Rational) -> (Vec<Rational>, Rational) {
    match n.iter().find(|x| !x.is_zero()) {
        Some(lead) if lead.is_negative() => (n.iter().map(|x| -x).collect(), -o),
        _ => (n, o),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn pt(xs: &[i64]) -> Point {
        Point::new(xs.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn cube_shadow_is_square() {
        let cube = Polyhedron::axis_box(&[q(0), q(0), q(0)], &[q(1), q(1), q(1)]);
        let shadow = affine_project(&[cube], &[q(0), q(0), q(1)]).unwrap();
        let frame = ProjectionFrame::new(vec![q(0), q(0), q(1)]).unwrap();
        assert_eq!(frame.pivot, 2);
        assert!(shadow[0].same_set(&Polyhedron::axis_box(&[q(0), q(0)], &[q(1), q(1)])).unwrap());
    }

    #[test]
    fn segment_along_itself_is_a_point() {
        let seg = Polyhedron::from_vertices(2, &[pt(&[0, 0]), pt(&[2, 1])]).unwrap();
        let shadow = affine_project(&[seg], &[q(2), q(1)]).unwrap().remove(0);
        assert_eq!(shadow.dim, 1);
        let v = shadow.vertices();
        assert_eq!(v.len(), 1);
        assert!(shadow.contains(&v[0]));
        assert!(!shadow.contains(&Point::new(vec![&v[0].coords[0] + qf(1, 100)])));
    }

    #[test]
    fn zero_direction_rejected() {
        let cube = Polyhedron::axis_box(&[q(0), q(0)], &[q(1), q(1)]);
        assert_eq!(affine_project(&[cube], &[q(0), q(0)]), Err(Error::ZeroDirection));
    }

    #[test]
    fn fiber_meets_set_iff_shadow_contains() {
        let tri = Polyhedron::from_vertices(2, &[pt(&[0, 0]), pt(&[4, 0]), pt(&[0, 4])]).unwrap();
        let frame = ProjectionFrame::new(vec![q(1), q(3)]).unwrap();
        let shadow = frame.project(&tri).unwrap();
        for k in -20..20 {
            let y = Point::new(vec![qf(k, 3)]);
            let hits = crate::geometry::flat_crosses(&frame.fiber(&y), &tri).unwrap();
            assert_eq!(hits, shadow.contains(&y), "at {y}");
        }
        let x = pt(&[1, 1]);
        assert!(shadow.contains(&frame.project_point(&x)));
    }

    #[test]
    fn empty_set_projects_to_empty() {
        let e = Polyhedron::empty(3);
        let s = affine_project(&[e], &[q(1), q(1), q(1)]).unwrap().remove(0);
        assert!(s.is_empty().unwrap());
    }

    #[test]
    fn two_projections_compose_on_boxes() {
        let cube = Polyhedron::axis_box(&[q(0), q(-1), q(2)], &[q(1), q(3), q(5)]);
        let once = affine_project(&[cube], &[q(0), q(0), q(1)]).unwrap();
        let twice = affine_project(&once, &[q(0), q(1)]).unwrap();
        assert!(twice[0].same_set(&Polyhedron::axis_box(&[q(0)], &[q(1)])).unwrap());
    }
}
