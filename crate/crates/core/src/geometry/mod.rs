//! Exact rational geometry: points, halfspaces, hyperplanes, H-polyhedra and
//! affine flats.
//!
//! Every convex set is a [`Polyhedron`] in H-representation. Flat sets
//! (segments in the plane, facets of a simplex) keep explicit equality rows
//! in the ambient space rather than being re-parametrized.

mod hull;
mod intersect;
mod projection;
mod vertices;

pub use hull::hull_from_vertices;
pub(crate) use hull::combinations;
pub use intersect::{
    flat_crosses, flat_crosses_by_lp, flat_meet, flat_section, intersect_refs, polyhedra_intersect, Intersection,
};
pub(crate) use intersect::line_interval;
pub use projection::{affine_project, ProjectionFrame};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{lp_solve, LpOutcome, LpProblem};
use crate::rational::{dot, format_rational, is_zero_vec, serde_q, serde_qmat, serde_qvec, DisplayVec, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point {
    #[serde(with = "serde_qvec")]
    pub coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point { coords }
    }

    pub fn origin(dim: usize) -> Self {
        Point::new(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        DisplayVec(&self.coords).fmt(f)
    }
}

/// `{x : normal . x <= offset}`
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Halfspace {
    #[serde(with = "serde_qvec")]
    pub normal: Vec<Rational>,
    #[serde(with = "serde_q")]
    pub offset: Rational,
}

impl Halfspace {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        if is_zero_vec(&normal) {
            return Err(Error::ZeroNormal);
        }
        Ok(Halfspace { normal, offset })
    }

    pub fn contains(&self, p: &Point) -> bool {
        dot(&self.normal, &p.coords) <= self.offset
    }

    pub fn boundary(&self) -> Hyperplane {
        Hyperplane {
            normal: self.normal.clone(),
            offset: self.offset.clone(),
        }
    }

    /// Same set with a primitive integer normal.
    pub fn normalized(&self) -> Halfspace {
        let (normal, offset) = normalize_row(&self.normal, &self.offset);
        Halfspace { normal, offset }
    }
}

/// `{x : normal . x = offset}`
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hyperplane {
    #[serde(with = "serde_qvec")]
    pub normal: Vec<Rational>,
    #[serde(with = "serde_q")]
    pub offset: Rational,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        if is_zero_vec(&normal) {
            return Err(Error::ZeroNormal);
        }
        Ok(Hyperplane { normal, offset })
    }

    pub fn contains(&self, p: &Point) -> bool {
        dot(&self.normal, &p.coords) == self.offset
    }

    pub fn as_polyhedron(&self) -> Polyhedron {
        Polyhedron {
            dim: self.normal.len(),
            inequalities: Vec::new(),
            equalities: vec![self.clone()],
        }
    }

    /// The hyperplane as an affine flat of dimension `d - 1`.
    pub fn to_flat(&self) -> AffineFlat {
        let d = self.normal.len();
        let j = self.normal.iter().position(|c| !c.is_zero()).expect("nonzero normal");
        let mut base = vec![Rational::zero(); d];
        base[j] = &self.offset / &self.normal[j];
        let directions = linalg::nullspace(&[self.normal.clone()], d);
        AffineFlat {
            dim: d,
            base: Point::new(base),
            directions,
        }
    }
}

/// Scales `(normal, offset)` so the normal is a primitive integer vector
/// with positive leading entry when `positive_lead`, else keeps orientation.
fn normalize_row(normal: &[Rational], offset: &Rational) -> (Vec<Rational>, Rational) {
    let prim = linalg::primitive_integer(normal);
    let lead = normal.iter().zip(&prim).find(|(a, _)| !a.is_zero());
    match lead {
        None => (normal.to_vec(), offset.clone()),
        Some((orig, p)) => {
            // factor maps original to primitive (may be negative); keep orientation.
            let factor = p / orig;
            let factor = factor.abs();
            (normal.iter().map(|x| x * &factor).collect(), offset * &factor)
        }
    }
}

/// A convex polyhedron `{x : A x <= b, E x = f}` over the rationals. It may
/// be empty, unbounded or lower dimensional.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Polyhedron {
    pub dim: usize,
    pub inequalities: Vec<Halfspace>,
    pub equalities: Vec<Hyperplane>,
}

impl Polyhedron {
    pub fn new(dim: usize, inequalities: Vec<Halfspace>, equalities: Vec<Hyperplane>) -> Result<Self> {
        for n in inequalities.iter().map(|h| &h.normal).chain(equalities.iter().map(|h| &h.normal)) {
            if n.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: n.len(),
                });
            }
            if is_zero_vec(n) {
                return Err(Error::ZeroNormal);
            }
        }
        Ok(Polyhedron {
            dim,
            inequalities,
            equalities,
        })
    }

    /// All of `R^dim`.
    pub fn universe(dim: usize) -> Self {
        Polyhedron {
            dim,
            inequalities: Vec::new(),
            equalities: Vec::new(),
        }
    }

    /// A canonical empty set: `x_0 <= 0` and `x_0 >= 1`.
    pub fn empty(dim: usize) -> Self {
        assert!(dim >= 1, "no empty polyhedron in dimension 0");
        let e = linalg::unit(dim, 0);
        Polyhedron {
            dim,
            inequalities: vec![
                Halfspace {
                    normal: e.clone(),
                    offset: Rational::zero(),
                },
                Halfspace {
                    normal: e.iter().map(|x| -x).collect(),
                    offset: -Rational::one(),
                },
            ],
            equalities: Vec::new(),
        }
    }

    /// Axis-aligned box `[lo_i, hi_i]`.
    pub fn axis_box(lo: &[Rational], hi: &[Rational]) -> Self {
        let dim = lo.len();
        let mut inequalities = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let e = linalg::unit(dim, i);
            inequalities.push(Halfspace {
                normal: e.iter().map(|x| -x).collect(),
                offset: -lo[i].clone(),
            });
            inequalities.push(Halfspace {
                normal: e,
                offset: hi[i].clone(),
            });
        }
        Polyhedron {
            dim,
            inequalities,
            equalities: Vec::new(),
        }
    }

    pub fn from_vertices(dim: usize, vertices: &[Point]) -> Result<Self> {
        hull_from_vertices(dim, vertices)
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.dim() == self.dim
            && self.inequalities.iter().all(|h| h.contains(p))
            && self.equalities.iter().all(|h| h.contains(p))
    }

    pub fn constraint_count(&self) -> usize {
        self.inequalities.len() + self.equalities.len()
    }

    /// Appends this set's rows to an LP whose first `dim` variables are the
    /// coordinates (extra trailing variables get zero coefficients).
    pub fn add_rows_to(&self, lp: &mut LpProblem) {
        let extra = lp.num_vars - self.dim;
        let pad = |n: &[Rational]| {
            let mut v = n.to_vec();
            v.extend(std::iter::repeat_n(Rational::zero(), extra));
            v
        };
        for h in &self.inequalities {
            lp.le(pad(&h.normal), h.offset.clone());
        }
        for h in &self.equalities {
            lp.equal(pad(&h.normal), h.offset.clone());
        }
    }

    pub fn to_lp(&self) -> LpProblem {
        let mut lp = LpProblem::new(self.dim);
        self.add_rows_to(&mut lp);
        lp
    }

    /// Some point of the set, or `None` when empty.
    pub fn feasible_point(&self) -> Result<Option<Point>> {
        Ok(lp_solve(&self.to_lp())?.point().map(|p| Point::new(p.to_vec())))
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.feasible_point()?.is_none())
    }

    /// `max direction . x` over the set: `Ok(None)` if empty, `Ok(Some(None))`
    /// if unbounded, otherwise the exact optimum and a maximizer.
    pub fn maximize(&self, direction: &[Rational]) -> Result<Option<Option<(Rational, Point)>>> {
        let mut lp = self.to_lp();
        lp.maximize(direction.to_vec());
        Ok(match lp_solve(&lp)? {
            LpOutcome::Infeasible { .. } => None,
            LpOutcome::Unbounded { .. } => Some(None),
            LpOutcome::Optimal { point, value, .. } => Some(Some((value, Point::new(point)))),
            LpOutcome::Feasible { .. } => unreachable!("objective was set"),
        })
    }

    /// Is `self` a subset of `other`? Decided by one LP per row of `other`.
    pub fn is_subset_of(&self, other: &Polyhedron) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.is_empty()? {
            return Ok(true);
        }
        for h in &other.inequalities {
            match self.maximize(&h.normal)? {
                Some(Some((v, _))) if v <= h.offset => {}
                _ => return Ok(false),
            }
        }
        for h in &other.equalities {
            let neg: Vec<Rational> = h.normal.iter().map(|x| -x).collect();
            let hi = self.maximize(&h.normal)?;
            let lo = self.maximize(&neg)?;
            match (hi, lo) {
                (Some(Some((a, _))), Some(Some((b, _)))) if a == h.offset && -b.clone() == h.offset => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    pub fn same_set(&self, other: &Polyhedron) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    pub fn intersect(&self, other: &Polyhedron) -> Polyhedron {
        debug_assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        out.inequalities.extend(other.inequalities.iter().cloned());
        out.equalities.extend(other.equalities.iter().cloned());
        out
    }

    pub fn with_inequality(mut self, h: Halfspace) -> Polyhedron {
        self.inequalities.push(h);
        self
    }

    /// The image of the set under `x -> x + shift`.
    pub fn translate(&self, shift: &[Rational]) -> Polyhedron {
        let move_row = |n: &[Rational], o: &Rational| o + dot(n, shift);
        Polyhedron {
            dim: self.dim,
            inequalities: self
                .inequalities
                .iter()
                .map(|h| Halfspace {
                    normal: h.normal.clone(),
                    offset: move_row(&h.normal, &h.offset),
                })
                .collect(),
            equalities: self
                .equalities
                .iter()
                .map(|h| Hyperplane {
                    normal: h.normal.clone(),
                    offset: move_row(&h.normal, &h.offset),
                })
                .collect(),
        }
    }

    /// Vertices of the set (exact, brute force over constraint subsets).
    /// Empty for sets without vertices (e.g. halfspaces, slabs).
    pub fn vertices(&self) -> Vec<Point> {
        vertices::enumerate_vertices(self)
    }

    /// Is the set bounded (and nonempty)? Decided by `2 dim` LPs.
    pub fn is_bounded(&self) -> Result<bool> {
        for i in 0..self.dim {
            for sign in [1i64, -1] {
                let mut dir = vec![Rational::zero(); self.dim];
                dir[i] = Rational::from_integer(sign.into());
                match self.maximize(&dir)? {
                    Some(Some(_)) => {}
                    Some(None) => return Ok(false),
                    None => return Ok(true),
                }
            }
        }
        Ok(true)
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        for h in &self.inequalities {
            parts.push(format!("{}.x <= {}", DisplayVec(&h.normal), format_rational(&h.offset)));
        }
        for h in &self.equalities {
            parts.push(format!("{}.x = {}", DisplayVec(&h.normal), format_rational(&h.offset)));
        }
        if parts.is_empty() {
            format!("R^{}", self.dim)
        } else {
            parts.join(", ")
        }
    }
}

/// A `k`-dimensional affine subspace `base + span(directions)` of `R^dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineFlat {
    pub dim: usize,
    pub base: Point,
    #[serde(with = "serde_qmat")]
    pub directions: Vec<Vec<Rational>>,
}

impl AffineFlat {
    pub fn new(base: Point, directions: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = base.dim();
        for d in &directions {
            if d.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: d.len(),
                });
            }
        }
        if directions.len() >= dim.max(1) && dim > 0 {
            return Err(Error::InvalidInput(format!(
                "a flat in R^{dim} must have fewer than {dim} directions"
            )));
        }
        if linalg::rank(&directions) != directions.len() {
            return Err(Error::DependentDirections);
        }
        Ok(AffineFlat {
            dim,
            base,
            directions,
        })
    }

    pub fn point(p: Point) -> Self {
        AffineFlat {
            dim: p.dim(),
            base: p,
            directions: Vec::new(),
        }
    }

    pub fn line(base: Point, direction: Vec<Rational>) -> Result<Self> {
        if is_zero_vec(&direction) {
            return Err(Error::ZeroDirection);
        }
        AffineFlat::new(base, vec![direction])
    }

    /// Line through two distinct points.
    pub fn line_through(a: &Point, b: &Point) -> Result<Self> {
        AffineFlat::line(a.clone(), linalg::sub(&b.coords, &a.coords))
    }

    pub fn k(&self) -> usize {
        self.directions.len()
    }

    pub fn at(&self, params: &[Rational]) -> Point {
        let mut x = self.base.coords.clone();
        for (t, d) in params.iter().zip(&self.directions) {
            for (xi, di) in x.iter_mut().zip(d) {
                *xi += t * di;
            }
        }
        Point::new(x)
    }

    /// Canonical form for deduplication: primitive direction basis in RREF
    /// and the base point moved to have zeros at the pivot coordinates.
    pub fn canonical(&self) -> AffineFlat {
        if self.directions.is_empty() {
            return self.clone();
        }
        let (basis, pivots) = linalg::rref(&self.directions);
        let basis: Vec<Vec<Rational>> = basis.into_iter().take(pivots.len()).collect();
        let mut base = self.base.coords.clone();
        for (row, &p) in basis.iter().zip(&pivots) {
            let t = base[p].clone();
            if !t.is_zero() {
                for (b, r) in base.iter_mut().zip(row) {
                    *b -= &t * r;
                }
            }
        }
        AffineFlat {
            dim: self.dim,
            base: Point::new(base),
            directions: basis,
        }
    }

    /// Exact membership test.
    pub fn contains(&self, p: &Point) -> bool {
        let diff = linalg::sub(&p.coords, &self.base.coords);
        if self.directions.is_empty() {
            return is_zero_vec(&diff);
        }
        let cols: Vec<Vec<Rational>> = (0..self.dim)
            .map(|i| self.directions.iter().map(|d| d[i].clone()).collect())
            .collect();
        linalg::solve(&cols, &diff).is_some()
    }
}

impl std::fmt::Display for AffineFlat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.base)?;
        for d in &self.directions {
            write!(f, " + t{}", DisplayVec(d))?;
        }
        Ok(())
    }
}
