//! Vertex lists to H-representation.
//!
//! The points are expressed in coordinates of their affine hull, facets are
//! found there by brute force over affinely independent subsets, and both the
//! facet inequalities and the hull equalities are mapped back to the ambient
//! space. Above three hull dimensions only simplices and prisms are accepted.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::{Halfspace, Hyperplane, Point, Polyhedron};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{dot, Rational};

pub fn hull_from_vertices(dim: usize, vertices: &[Point]) -> Result<Polyhedron> {
    if vertices.is_empty() {
        return Err(Error::EmptyInput("vertex list"));
    }
    for v in vertices {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.dim(),
            });
        }
    }
    let mut pts: Vec<Point> = Vec::new();
    for v in vertices {
        if !pts.contains(v) {
            pts.push(v.clone());
        }
    }
    let origin = pts[0].clone();
    let diffs: Vec<Vec<Rational>> = pts[1..].iter().map(|p| linalg::sub(&p.coords, &origin.coords)).collect();

    // Independent differences form the basis of the hull's direction space.
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for d in &diffs {
        let mut trial = basis.clone();
        trial.push(d.clone());
        if linalg::rank(&trial) == trial.len() {
            basis = trial;
        }
    }
    let r = basis.len();
    if r > 3 && pts.len() > 2 * r {
        return Err(Error::Unsupported(format!(
            "vertex input with affine dimension {r} must be a simplex or prism"
        )));
    }

    let equalities: Vec<Hyperplane> = linalg::nullspace(&basis, dim)
        .into_iter()
        .map(|n| {
            let n = linalg::primitive_integer(&n);
            let offset = dot(&n, &origin.coords);
            Hyperplane { normal: n, offset }
        })
        .collect();
    if r == 0 {
        return Ok(Polyhedron {
            dim,
            inequalities: Vec::new(),
            equalities,
        });
    }

    // Local coordinates y with p - origin = sum_i y_i basis_i.
    let cols: Vec<Vec<Rational>> = (0..dim).map(|i| basis.iter().map(|b| b[i].clone()).collect()).collect();
    let local: Vec<Vec<Rational>> = std::iter::once(vec![Rational::zero(); r])
        .chain(diffs.iter().map(|d| linalg::solve(&cols, d).expect("difference lies in the hull span")))
        .collect();

    let gram: Vec<Vec<Rational>> = basis.iter().map(|a| basis.iter().map(|b| dot(a, b)).collect()).collect();
    let mut seen = BTreeSet::new();
    let mut inequalities = Vec::new();
    for subset in combinations(local.len(), r) {
        let anchor = &local[subset[0]];
        let span: Vec<Vec<Rational>> = subset[1..].iter().map(|&i| linalg::sub(&local[i], anchor)).collect();
        let normals = linalg::nullspace(&span, r);
        if normals.len() != 1 {
            continue;
        }
        let mut a = normals.into_iter().next().unwrap();
        let mut c = dot(&a, anchor);
        let (mut above, mut below) = (false, false);
        for p in &local {
            let s = dot(&a, p);
            above |= s > c;
            below |= s < c;
        }
        if above == below {
            continue;
        }
        if above {
            a = a.iter().map(|x| -x).collect();
            c = -c;
        }
        // a.y <= c with y = G^{-1} B^T (x - origin)  =>  (B w).x <= c + (B w).origin, G w = a
        let w = linalg::solve(&gram, &a).expect("gram matrix is invertible");
        let mut normal = vec![Rational::zero(); dim];
        for (wi, b) in w.iter().zip(&basis) {
            for (n, bj) in normal.iter_mut().zip(b) {
                *n += wi * bj;
            }
        }
        let offset = c + dot(&normal, &origin.coords);
        let h = Halfspace { normal, offset }.normalized();
        if seen.insert((h.normal.clone(), h.offset.clone())) {
            inequalities.push(h);
        }
    }
    Ok(Polyhedron {
        dim,
        inequalities,
        equalities,
    })
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
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
    fn triangle_has_three_facets() {
        let t = hull_from_vertices(2, &[pt(&[0, 0]), pt(&[6, 0]), pt(&[3, 6])]).unwrap();
        assert_eq!(t.inequalities.len(), 3);
        assert!(t.equalities.is_empty());
        assert!(t.contains(&pt(&[3, 3])));
        assert!(t.contains(&pt(&[6, 0])));
        assert!(!t.contains(&pt(&[0, 1])));
    }

    #[test]
    fn segment_in_plane_gets_an_equality() {
        let s = hull_from_vertices(2, &[pt(&[0, 0]), pt(&[2, 2])]).unwrap();
        assert_eq!(s.equalities.len(), 1);
        assert_eq!(s.inequalities.len(), 2);
        assert!(s.contains(&Point::new(vec![qf(1, 2), qf(1, 2)])));
        assert!(!s.contains(&pt(&[3, 3])));
        assert!(!s.contains(&pt(&[1, 0])));
    }

    #[test]
    fn interior_points_are_ignored() {
        let sq = hull_from_vertices(2, &[pt(&[0, 0]), pt(&[2, 0]), pt(&[2, 2]), pt(&[0, 2]), pt(&[1, 1]), pt(&[1, 0])]).unwrap();
        assert_eq!(sq.inequalities.len(), 4);
        assert!(sq.same_set(&Polyhedron::axis_box(&[q(0), q(0)], &[q(2), q(2)])).unwrap());
    }

    #[test]
    fn triangle_in_space() {
        let t = hull_from_vertices(3, &[pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 1])]).unwrap();
        assert_eq!(t.equalities.len(), 1);
        assert_eq!(t.inequalities.len(), 3);
        let c = Point::new(vec![qf(1, 3), qf(1, 3), qf(1, 3)]);
        assert!(t.contains(&c));
    }

    #[test]
    fn four_simplex_facets() {
        let mut v = vec![pt(&[0, 0, 0, 0])];
        for i in 0..4 {
            let mut c = vec![0; 4];
            c[i] = 1;
            v.push(pt(&c));
        }
        let s = hull_from_vertices(4, &v).unwrap();
        assert_eq!(s.inequalities.len(), 5);
        for p in &v {
            assert!(s.contains(p));
        }
    }

    #[test]
    fn single_point() {
        let p = hull_from_vertices(3, &[pt(&[1, 2, 3]), pt(&[1, 2, 3])]).unwrap();
        assert_eq!(p.equalities.len(), 3);
        assert!(p.contains(&pt(&[1, 2, 3])));
        assert!(!p.contains(&pt(&[1, 2, 4])));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }
}
