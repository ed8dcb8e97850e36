//! Triangles inscribed in a triangle with no three sharing a point, and the
//! segment family hugging the sides of the outer triangle.

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::no_three_meet;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::geometry::{intersect_refs, line_interval, AffineFlat, Point, Polyhedron};
use crate::helly::ColoredFamily;
use crate::hypergraph::{line_cover_number, piercing_number, CoverResult};
use crate::linalg::{add, scale, sub};
use crate::rational::{q, qf, serde_q, serde_qmat, serde_qvec, Rational};

/// Halving steps tried when searching for a small enough offset.
pub(crate) const MAX_HALVINGS: u32 = 48;

/// Placement of the inscribed triangles in the reference triangle
/// `(0,0), (1,0), (0,1)`. Triangle `k` has its top side at height
/// `heights[k]` between the two slanted sides and its bottom vertex at
/// `(apexes[k], 0)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrianglePlacement {
    #[serde(with = "serde_qvec")]
    pub apexes: Vec<Rational>,
    #[serde(with = "serde_qvec")]
    pub heights: Vec<Rational>,
    /// For `k >= 2`, the lowest point over all pairwise intersections of the
    /// earlier triangles; the new top side is placed at half of it.
    #[serde(with = "serde_qvec")]
    pub floors: Vec<Rational>,
}

impl TrianglePlacement {
    /// Vertices in reference coordinates: left, right, bottom.
    pub fn reference_vertices(&self, k: usize) -> [Point; 3] {
        let h = &self.heights[k];
        [
            Point::new(vec![Rational::zero(), h.clone()]),
            Point::new(vec![Rational::one() - h, h.clone()]),
            Point::new(vec![self.apexes[k].clone(), Rational::zero()]),
        ]
    }

    /// Vertices mapped into the triangle `(a, b, c)`, where `a b` plays the
    /// bottom side.
    pub fn mapped_vertices(&self, k: usize, a: &Point, b: &Point, c: &Point) -> [Point; 3] {
        self.reference_vertices(k).map(|p| {
            let along = scale(&sub(&b.coords, &a.coords), &p.coords[0]);
            let up = scale(&sub(&c.coords, &a.coords), &p.coords[1]);
            Point::new(add(&add(&a.coords, &along), &up))
        })
    }
}

fn reference_triangle(p: &TrianglePlacement, k: usize) -> Result<Polyhedron> {
    Polyhedron::from_vertices(2, &p.reference_vertices(k))
}

/// Places `m` triangles, each with a top side parallel to the bottom of the
/// reference triangle and vertices inside its three sides. Each new top
/// side goes below every pairwise intersection of the earlier triangles, so
/// no three triangles share a point.
pub fn place_triangles(m: usize, rng: &mut ChaCha8Rng) -> Result<TrianglePlacement> {
    if m < 2 {
        return Err(Error::InvalidInput("at least two triangles are placed".into()));
    }
    let mut grid: Vec<i64> = (1..64).collect();
    grid.shuffle(rng);
    let apexes: Vec<Rational> = grid[..m].iter().map(|&j| qf(j, 64)).collect();
    let mut starts: Vec<i64> = (4..13).collect();
    starts.shuffle(rng);
    let mut placement = TrianglePlacement {
        apexes,
        heights: vec![qf(starts[0], 16), qf(starts[1], 16)],
        floors: Vec::new(),
    };
    let mut placed = vec![reference_triangle(&placement, 0)?, reference_triangle(&placement, 1)?];
    for _ in 2..m {
        let mut floor: Option<Rational> = None;
        for i in 0..placed.len() {
            for j in 0..i {
                let meet = placed[i].intersect(&placed[j]);
                let low = match meet.maximize(&[q(0), q(-1)])? {
                    Some(Some((v, _))) => -v,
                    _ => return Err(Error::Generation(format!("triangles {j} and {i} do not meet"))),
                };
                floor = Some(match floor {
                    Some(f) if f <= low => f,
                    _ => low,
                });
            }
        }
        let floor = floor.expect("at least one pair");
        if !floor.is_positive() {
            return Err(Error::Generation("a pairwise intersection touches the bottom side".into()));
        }
        placement.heights.push(&floor / q(2));
        placement.floors.push(floor);
        placed.push(reference_triangle(&placement, placed.len())?);
    }
    Ok(placement)
}

/// Shrinks the side `p q` to the parameter range `[lo, hi]` (0 at `p`, 1 at
/// `q`) and returns `count` copies pushed by multiples of `step` along
/// `normal`.
pub(crate) fn side_copies(
    p: &Point,
    q_: &Point,
    lo: &Rational,
    hi: &Rational,
    normal: &[Rational],
    step: &Rational,
    count: usize,
) -> Result<Vec<Polyhedron>> {
    let dir = sub(&q_.coords, &p.coords);
    let a = add(&p.coords, &scale(&dir, lo));
    let b = add(&p.coords, &scale(&dir, hi));
    (1..=count)
        .map(|k| {
            let shift = scale(normal, &(step * q(k as i64)));
            Polyhedron::from_vertices(p.dim(), &[Point::new(add(&a, &shift)), Point::new(add(&b, &shift))])
        })
        .collect()
}

/// Parameter range of a side that keeps every contact with `sets`, moved
/// halfway towards the side's endpoints.
pub(crate) fn shrunk_range(p: &Point, q_: &Point, sets: &[Polyhedron]) -> Result<(Rational, Rational)> {
    let side = AffineFlat::line_through(p, q_)?;
    let (mut lo, mut hi) = (Rational::one(), Rational::zero());
    for (i, s) in sets.iter().enumerate() {
        let Some((Some(a), Some(b))) = line_interval(&side, s) else {
            return Err(Error::Generation(format!("set {i} misses a side of the outer triangle")));
        };
        if !a.is_positive() || b >= Rational::one() {
            return Err(Error::Generation(format!("set {i} touches a corner of the outer triangle")));
        }
        lo = lo.min(a);
        hi = hi.max(b);
    }
    Ok((&lo / q(2), (hi + Rational::one()) / q(2)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarAudit {
    pub placement: TrianglePlacement,
    /// Shrunk parameter range `[lo, hi]` per side (bottom, left,
    /// hypotenuse).
    #[serde(with = "serde_qmat")]
    pub side_ranges: Vec<Vec<Rational>>,
    /// Offset between consecutive segment copies, `1 / (m 2^exponent)`.
    #[serde(with = "serde_q")]
    pub step: Rational,
    pub step_exponent: u32,
    pub log: Vec<String>,
}

/// The planar lower-bound family: `2f` inscribed triangles and `3 * 2f`
/// pairwise disjoint segments, each meeting every triangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarConstruction {
    pub f: usize,
    pub m: usize,
    pub outer: [Point; 3],
    pub triangles: Vec<Polyhedron>,
    pub segments: Vec<Polyhedron>,
    pub audit: PlanarAudit,
}

impl PlanarConstruction {
    pub fn family(&self) -> ColoredFamily {
        ColoredFamily {
            dim: 2,
            classes: vec![self.triangles.clone(), self.segments.clone()],
        }
    }

    /// Re-checks every structural claim exactly.
    pub fn verify(&self) -> Result<(), String> {
        let e = |x: Error| x.to_string();
        if self.triangles.len() != self.m || self.segments.len() != 3 * self.m {
            return Err("wrong class sizes".into());
        }
        if let Some(t) = no_three_meet(&self.triangles).map_err(e)? {
            return Err(format!("triangles {t:?} share a point"));
        }
        for (i, t) in self.triangles.iter().enumerate() {
            for (j, s) in self.segments.iter().enumerate() {
                if intersect_refs(&[t, s]).map_err(e)?.is_empty() {
                    return Err(format!("segment {j} misses triangle {i}"));
                }
            }
        }
        for i in 0..self.segments.len() {
            for j in 0..i {
                if !intersect_refs(&[&self.segments[i], &self.segments[j]]).map_err(e)?.is_empty() {
                    return Err(format!("segments {j} and {i} meet"));
                }
            }
        }
        Ok(())
    }
}

/// Builds the planar family for `f >= 1` with `m = 2f`.
pub fn generate_planar(f: usize, seed: u64) -> Result<PlanarConstruction> {
    if f == 0 {
        return Err(Error::InvalidInput("f must be at least 1".into()));
    }
    let m = 2 * f;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let placement = place_triangles(m, &mut rng)?;
    let triangles: Vec<Polyhedron> = (0..m).map(|k| reference_triangle(&placement, k)).collect::<Result<_>>()?;
    let outer = [
        Point::new(vec![q(0), q(0)]),
        Point::new(vec![q(1), q(0)]),
        Point::new(vec![q(0), q(1)]),
    ];
    // Each side with the inward normal towards the opposite corner.
    let sides = [
        (&outer[0], &outer[1], vec![q(0), q(1)]),
        (&outer[0], &outer[2], vec![q(1), q(0)]),
        (&outer[1], &outer[2], vec![q(-1), q(-1)]),
    ];
    let mut ranges = Vec::new();
    for (p, q_, _) in &sides {
        let (lo, hi) = shrunk_range(p, q_, &triangles)?;
        ranges.push(vec![lo, hi]);
    }
    let mut log = Vec::new();
    for t in 1..=MAX_HALVINGS {
        let step = Rational::new(1.into(), num_bigint::BigInt::from(2u32).pow(t));
        let mut segments = Vec::with_capacity(3 * m);
        for ((p, q_, n), r) in sides.iter().zip(&ranges) {
            segments.extend(side_copies(p, q_, &r[0], &r[1], n, &(&step / q(m as i64)), m)?);
        }
        let c = PlanarConstruction {
            f,
            m,
            outer: outer.clone(),
            triangles: triangles.clone(),
            segments,
            audit: PlanarAudit {
                placement: placement.clone(),
                side_ranges: ranges.clone(),
                step: &step / q(m as i64),
                step_exponent: t,
                log: log.clone(),
            },
        };
        match c.verify() {
            Ok(()) => {
                let mut c = c;
                c.audit.log.push(format!("offset 1/(m*2^{t}) accepted"));
                return Ok(c);
            }
            Err(why) => log.push(format!("offset 1/(m*2^{t}) rejected: {why}")),
        }
    }
    Err(Error::Generation(format!(
        "no segment offset found: {}",
        log.last().cloned().unwrap_or_default()
    )))
}

/// Exact transversal numbers of the planar family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarLowerBounds {
    pub f: usize,
    pub triangle_piercing: CoverResult,
    pub segment_piercing: CoverResult,
    pub line_cover: CoverResult,
    pub triples_checked: usize,
}

impl PlanarLowerBounds {
    pub fn holds(&self) -> bool {
        self.triangle_piercing.transversal.tau >= self.f
            && self.segment_piercing.transversal.tau == 3 * 2 * self.f
            && self.line_cover.complete
            && self.line_cover.transversal.tau >= 2
    }
}

pub fn planar_lower_bounds(c: &PlanarConstruction, budget: &Budget) -> Result<PlanarLowerBounds> {
    c.verify().map_err(Error::TheoremViolation)?;
    let all: Vec<Polyhedron> = c.triangles.iter().chain(&c.segments).cloned().collect();
    Ok(PlanarLowerBounds {
        f: c.f,
        triangle_piercing: piercing_number(&c.triangles, budget)?,
        segment_piercing: piercing_number(&c.segments, budget)?,
        line_cover: line_cover_number(&all, budget)?,
        triples_checked: c.m * (c.m - 1) * (c.m - 2) / 6,
    })
}
