use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{AffineFlat, Halfspace, Hyperplane, Point, Polyhedron};
use crate::certificate::EmptinessCertificate;
use crate::error::{Error, Result};
use crate::lp::{lp_solve, LpOutcome, LpProblem, RowKind};
use crate::rational::{dot, is_zero_vec, Rational};

/// Result of intersecting a list of polyhedra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Intersection {
    Common { point: Point },
    Empty { certificate: EmptinessCertificate },
}

impl Intersection {
    pub fn point(&self) -> Option<&Point> {
        match self {
            Intersection::Common { point } => Some(point),
            Intersection::Empty { .. } => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Intersection::Empty { .. })
    }
}

/// Decides whether the sets share a point. Returns either a common point or
/// Farkas multipliers split by originating set.
pub fn polyhedra_intersect(sets: &[Polyhedron]) -> Result<Intersection> {
    let refs: Vec<&Polyhedron> = sets.iter().collect();
    intersect_refs(&refs)
}

pub fn intersect_refs(sets: &[&Polyhedron]) -> Result<Intersection> {
    let Some(first) = sets.first() else {
        return Err(Error::EmptyInput("set list"));
    };
    let dim = first.dim;
    let mut lp = LpProblem::new(dim);
    for s in sets {
        if s.dim != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: s.dim,
            });
        }
        s.add_rows_to(&mut lp);
    }
    Ok(match lp_solve(&lp)? {
        LpOutcome::Infeasible { farkas } => Intersection::Empty {
            certificate: EmptinessCertificate::from_farkas(sets, &farkas),
        },
        outcome => Intersection::Common {
            point: Point::new(outcome.point().expect("feasible outcome").to_vec()),
        },
    })
}

/// The set restricted to the flat, as a system in the flat's parameters.
pub(crate) fn restrict_to_flat(f: &AffineFlat, s: &Polyhedron) -> LpProblem {
    let mut lp = LpProblem::new(f.k());
    let param_row = |n: &[Rational]| f.directions.iter().map(|d| dot(n, d)).collect::<Vec<_>>();
    for h in &s.inequalities {
        lp.le(param_row(&h.normal), &h.offset - dot(&h.normal, &f.base.coords));
    }
    for h in &s.equalities {
        lp.equal(param_row(&h.normal), &h.offset - dot(&h.normal, &f.base.coords));
    }
    lp
}

/// `s` intersected with the flat, in the flat's own coordinates, or `None`
/// when they miss.
pub fn flat_section(f: &AffineFlat, s: &Polyhedron) -> Result<Option<Polyhedron>> {
    check_dims(f, s)?;
    let lp = restrict_to_flat(f, s);
    if lp_solve(&lp)?.is_infeasible() {
        return Ok(None);
    }
    let mut inequalities = Vec::new();
    let mut equalities = Vec::new();
    for row in lp.rows {
        if is_zero_vec(&row.coeffs) {
            continue;
        }
        match row.kind {
            RowKind::Le => inequalities.push(Halfspace {
                normal: row.coeffs,
                offset: row.rhs,
            }),
            RowKind::Eq => equalities.push(Hyperplane {
                normal: row.coeffs,
                offset: row.rhs,
            }),
        }
    }
    Ok(Some(Polyhedron {
        dim: f.k(),
        inequalities,
        equalities,
    }))
}

fn check_dims(f: &AffineFlat, s: &Polyhedron) -> Result<()> {
    if f.dim != s.dim {
        return Err(Error::DimensionMismatch {
            expected: s.dim,
            found: f.dim,
        });
    }
    Ok(())
}

/// Flat parameters of some point of `f` inside `s`, if any.
pub fn flat_meet(f: &AffineFlat, s: &Polyhedron) -> Result<Option<Vec<Rational>>> {
    check_dims(f, s)?;
    match f.k() {
        0 => Ok(s.contains(&f.base).then(Vec::new)),
        1 => Ok(line_interval(f, s).map(|(lo, hi)| vec![pick_in_interval(lo, hi)])),
        _ => flat_meet_by_lp(f, s),
    }
}

pub fn flat_crosses(f: &AffineFlat, s: &Polyhedron) -> Result<bool> {
    Ok(flat_meet(f, s)?.is_some())
}

/// Same decision as [`flat_crosses`] but always through the LP solver.
pub fn flat_crosses_by_lp(f: &AffineFlat, s: &Polyhedron) -> Result<bool> {
    check_dims(f, s)?;
    Ok(flat_meet_by_lp(f, s)?.is_some())
}

fn flat_meet_by_lp(f: &AffineFlat, s: &Polyhedron) -> Result<Option<Vec<Rational>>> {
    let lp = restrict_to_flat(f, s);
    Ok(lp_solve(&lp)?.point().map(<[Rational]>::to_vec))
}

/// Parameter interval `[lo, hi]` (`None` = unbounded side) of a line inside
/// a polyhedron, or `None` if they miss.
pub(crate) fn line_interval(f: &AffineFlat, s: &Polyhedron) -> Option<(Option<Rational>, Option<Rational>)> {
    let dir = &f.directions[0];
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    let tighten_hi = |hi: &mut Option<Rational>, v: Rational| {
        if hi.as_ref().is_none_or(|h| v < *h) {
            *hi = Some(v);
        }
    };
    let tighten_lo = |lo: &mut Option<Rational>, v: Rational| {
        if lo.as_ref().is_none_or(|l| v > *l) {
            *lo = Some(v);
        }
    };
    for h in &s.inequalities {
        let c = dot(&h.normal, dir);
        let r = &h.offset - dot(&h.normal, &f.base.coords);
        if c.is_zero() {
            if r.is_negative() {
                return None;
            }
        } else if c.is_positive() {
            tighten_hi(&mut hi, r / c);
        } else {
            tighten_lo(&mut lo, r / c);
        }
    }
    for h in &s.equalities {
        let c = dot(&h.normal, dir);
        let r = &h.offset - dot(&h.normal, &f.base.coords);
        if c.is_zero() {
            if !r.is_zero() {
                return None;
            }
        } else {
            let t = r / c;
            tighten_hi(&mut hi, t.clone());
            tighten_lo(&mut lo, t);
        }
    }
    match (&lo, &hi) {
        (Some(l), Some(h)) if l > h => None,
        _ => Some((lo, hi)),
    }
}

fn pick_in_interval(lo: Option<Rational>, hi: Option<Rational>) -> Rational {
    match (lo, hi) {
        (Some(l), Some(h)) => (l + h) / Rational::from_integer(2.into()),
        (Some(l), None) => l,
        (None, Some(h)) => h,
        (None, None) => Rational::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn pt(xs: &[i64]) -> Point {
        Point::new(xs.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn opposite_halfplanes_meet_on_the_axis() {
        let a = Polyhedron::new(2, vec![Halfspace::new(vec![q(-1), q(0)], q(0)).unwrap()], vec![]).unwrap();
        let b = Polyhedron::new(2, vec![Halfspace::new(vec![q(1), q(0)], q(0)).unwrap()], vec![]).unwrap();
        let r = polyhedra_intersect(&[a, b]).unwrap();
        assert_eq!(r.point().unwrap().coords[0], q(0));
    }

    #[test]
    fn disjoint_intervals_certified() {
        let a = Polyhedron::axis_box(&[q(0)], &[q(1)]);
        let b = Polyhedron::axis_box(&[q(2)], &[q(3)]);
        let sets = [a, b];
        match polyhedra_intersect(&sets).unwrap() {
            Intersection::Empty { certificate } => certificate.verify(&sets.iter().collect::<Vec<_>>()).unwrap(),
            other => panic!("expected empty, got {other:?}"),
        }
    }

    #[test]
    fn empty_list_is_an_error() {
        assert_eq!(polyhedra_intersect(&[]), Err(Error::EmptyInput("set list")));
    }

    #[test]
    fn diagonal_line_meets_plane() {
        let line = AffineFlat::line(pt(&[0, 0, 0]), vec![q(1), q(1), q(1)]).unwrap();
        let plane = Hyperplane::new(vec![q(1), q(0), q(0)], q(5)).unwrap().as_polyhedron();
        assert!(flat_crosses(&line, &plane).unwrap());
        assert!(flat_crosses_by_lp(&line, &plane).unwrap());
    }

    #[test]
    fn x_axis_misses_square() {
        let line = AffineFlat::line(pt(&[0, 0]), vec![q(1), q(0)]).unwrap();
        let sq = Polyhedron::axis_box(&[q(2), q(2)], &[q(3), q(3)]);
        assert!(!flat_crosses(&line, &sq).unwrap());
        assert!(!flat_crosses_by_lp(&line, &sq).unwrap());
    }

    #[test]
    fn plane_flat_in_space() {
        let flat = AffineFlat::new(pt(&[0, 0, 7]), vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]).unwrap();
        let cube = Polyhedron::axis_box(&[q(0), q(0), q(0)], &[q(1), q(1), q(1)]);
        assert!(!flat_crosses(&flat, &cube).unwrap());
        let shifted = AffineFlat::new(pt(&[5, 5, 1]), flat.directions.clone()).unwrap();
        assert!(flat_crosses(&shifted, &cube).unwrap());
    }

    #[test]
    fn point_flat_is_membership() {
        let sq = Polyhedron::axis_box(&[q(0), q(0)], &[q(1), q(1)]);
        assert!(flat_crosses(&AffineFlat::point(pt(&[1, 1])), &sq).unwrap());
        assert!(!flat_crosses(&AffineFlat::point(pt(&[2, 1])), &sq).unwrap());
    }
}
