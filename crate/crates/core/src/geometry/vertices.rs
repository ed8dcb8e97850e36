//! Brute-force vertex enumeration: every choice of inequality rows that,
//! together with the equalities, pins down a unique point is tried, and the
//! feasible ones are kept.

use super::hull::combinations;
use super::{Point, Polyhedron};
use crate::linalg;
use crate::rational::Rational;

pub(crate) fn enumerate_vertices(p: &Polyhedron) -> Vec<Point> {
    let d = p.dim;
    let eq_rows: Vec<Vec<Rational>> = p.equalities.iter().map(|h| h.normal.clone()).collect();
    let eq_rank = linalg::rank(&eq_rows);
    if eq_rank == d {
        let rhs: Vec<Rational> = p.equalities.iter().map(|h| h.offset.clone()).collect();
        return match linalg::solve(&eq_rows, &rhs) {
            Some(x) if p.contains(&Point::new(x.clone())) => vec![Point::new(x)],
            _ => Vec::new(),
        };
    }
    let need = d - eq_rank;
    let mut found: Vec<Point> = Vec::new();
    for subset in combinations(p.inequalities.len(), need) {
        let mut rows = eq_rows.clone();
        let mut rhs: Vec<Rational> = p.equalities.iter().map(|h| h.offset.clone()).collect();
        for &i in &subset {
            rows.push(p.inequalities[i].normal.clone());
            rhs.push(p.inequalities[i].offset.clone());
        }
        if linalg::rank(&rows) != d {
            continue;
        }
        let Some(x) = linalg::solve(&rows, &rhs) else {
            continue;
        };
        let x = Point::new(x);
        if p.contains(&x) && !found.contains(&x) {
            found.push(x);
        }
    }
    found.sort_by(|a, b| a.coords.cmp(&b.coords));
    found
}

#[cfg(test)]
mod tests {
    use crate::geometry::{Point, Polyhedron};
    use crate::rational::q;

    fn pt(xs: &[i64]) -> Point {
        Point::new(xs.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn round_trip_with_hull() {
        let verts = vec![pt(&[0, 0]), pt(&[0, 6]), pt(&[3, 6]), pt(&[6, 0])];
        let poly = Polyhedron::from_vertices(2, &verts).unwrap();
        let mut expect = verts.clone();
        expect.sort_by(|a, b| a.coords.cmp(&b.coords));
        assert_eq!(poly.vertices(), expect);
    }

    #[test]
    fn segment_and_halfplane() {
        let seg = Polyhedron::from_vertices(3, &[pt(&[0, 0, 1]), pt(&[2, 2, 1])]).unwrap();
        assert_eq!(seg.vertices().len(), 2);
        assert!(Polyhedron::universe(2).vertices().is_empty());
        assert!(Polyhedron::empty(2).vertices().is_empty());
    }
}
