//! Cover numbers of planar families computed by brute force from raw vertex
//! lists, without the library's hypergraph machinery.

use helly_core::geometry::Point;
use helly_core::Rational;
use num_traits::{Signed, Zero};

use super::{min_union_cover, q};

fn cross(o: &Point, a: &Point, b: &Point) -> Rational {
    let (ox, oy) = (&o.coords[0], &o.coords[1]);
    (&a.coords[0] - ox) * (&b.coords[1] - oy) - (&a.coords[1] - oy) * (&b.coords[0] - ox)
}

/// Membership in the convex hull of vertices listed in cyclic order.
fn in_polygon(p: &Point, poly: &[Point]) -> bool {
    match poly.len() {
        1 => p == &poly[0],
        2 => {
            cross(&poly[0], &poly[1], p).is_zero()
                && (0..2).all(|i| {
                    let (a, b) = (&poly[0].coords[i], &poly[1].coords[i]);
                    a.min(b) <= &p.coords[i] && &p.coords[i] <= a.max(b)
                })
        }
        n => {
            let signs: Vec<Rational> = (0..n).map(|i| cross(&poly[i], &poly[(i + 1) % n], p)).collect();
            signs.iter().all(|s| !s.is_negative()) || signs.iter().all(|s| !s.is_positive())
        }
    }
}

/// `a x + b y = c` through two distinct points.
fn line_through(p: &Point, r: &Point) -> (Rational, Rational, Rational) {
    let a = &r.coords[1] - &p.coords[1];
    let b = &p.coords[0] - &r.coords[0];
    let c = &a * &p.coords[0] + &b * &p.coords[1];
    (a, b, c)
}

/// Lines carrying the boundary of each set, plus the two axis-parallel
/// lines through every vertex so that segment ends and points are
/// arrangement vertices too.
fn boundary_lines(polys: &[Vec<Point>]) -> Vec<(Rational, Rational, Rational)> {
    let mut lines = Vec::new();
    for poly in polys {
        for p in poly {
            lines.push((q(1), q(0), p.coords[0].clone()));
            lines.push((q(0), q(1), p.coords[1].clone()));
        }
        match poly.len() {
            1 => {}
            2 => lines.push(line_through(&poly[0], &poly[1])),
            n => lines.extend((0..n).map(|i| line_through(&poly[i], &poly[(i + 1) % n]))),
        }
    }
    lines
}

/// Piercing number over all vertices of the boundary-line arrangement.
pub fn arrangement_piercing(polys: &[Vec<Point>]) -> usize {
    let lines = boundary_lines(polys);
    let mut masks = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a1, b1, c1) = &lines[i];
            let (a2, b2, c2) = &lines[j];
            let det = a1 * b2 - a2 * b1;
            if det.is_zero() {
                continue;
            }
            let x = (c1 * b2 - c2 * b1) / &det;
            let y = (a1 * c2 - a2 * c1) / &det;
            let p = Point::new(vec![x, y]);
            masks.push(polys.iter().enumerate().filter(|(_, s)| in_polygon(&p, s)).fold(0u64, |m, (k, _)| m | 1 << k));
        }
    }
    min_union_cover(&masks, (1u64 << polys.len()) - 1).expect("every set contains an arrangement vertex")
}

/// Line cover number over lines through pairs of points of a half-integer
/// grid around the family.
pub fn grid_line_cover(polys: &[Vec<Point>]) -> usize {
    let coords: Vec<&Rational> = polys.iter().flatten().flat_map(|p| &p.coords).collect();
    let lo = coords.iter().map(|c| c.floor()).min().unwrap() - q(1);
    let hi = coords.iter().map(|c| c.ceil()).max().unwrap() + q(1);
    let half = Rational::new(1.into(), 2.into());
    let mut ticks = Vec::new();
    let mut t = lo.clone();
    while t <= hi {
        ticks.push(t.clone());
        t += &half;
    }
    let grid: Vec<Point> = ticks
        .iter()
        .flat_map(|x| ticks.iter().map(move |y| Point::new(vec![x.clone(), y.clone()])))
        .collect();
    let mut masks = std::collections::HashSet::new();
    for i in 0..grid.len() {
        for j in i + 1..grid.len() {
            let (a, b, c) = line_through(&grid[i], &grid[j]);
            let mut m = 0u64;
            for (k, poly) in polys.iter().enumerate() {
                let vals: Vec<Rational> = poly.iter().map(|p| &a * &p.coords[0] + &b * &p.coords[1] - &c).collect();
                if vals.iter().any(|v| !v.is_positive()) && vals.iter().any(|v| !v.is_negative()) {
                    m |= 1 << k;
                }
            }
            masks.insert(m);
        }
    }
    let masks: Vec<u64> = masks.into_iter().collect();
    min_union_cover(&masks, (1u64 << polys.len()) - 1).expect("grid lines cover")
}
