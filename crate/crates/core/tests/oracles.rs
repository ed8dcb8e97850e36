mod common;

use common::oracle::{arrangement_piercing, grid_line_cover};
use common::{q, small_planar_fixtures};
use helly_core::geometry::Point;
use helly_core::hypergraph::{line_cover_number, piercing_number};
use helly_core::Budget;

#[test]
fn corpus_has_small_planar_families() {
    assert!(small_planar_fixtures().len() >= 8);
}

#[test]
fn piercing_matches_arrangement_vertices() {
    for (name, polys, sets) in small_planar_fixtures() {
        let lib = piercing_number(&sets, &Budget::default()).unwrap();
        assert!(!lib.transversal.upper_bound_only, "{name}");
        assert_eq!(lib.transversal.tau, arrangement_piercing(&polys), "{name}");
    }
}

#[test]
fn line_cover_matches_grid_lines() {
    for (name, polys, sets) in small_planar_fixtures() {
        let lib = line_cover_number(&sets, &Budget::default()).unwrap();
        assert!(lib.complete, "{name}");
        assert_eq!(lib.transversal.tau, grid_line_cover(&polys), "{name}");
    }
}

#[test]
fn oracle_sanity() {
    let sq = |x: i64, y: i64| {
        vec![
            Point::new(vec![q(x), q(y)]),
            Point::new(vec![q(x + 1), q(y)]),
            Point::new(vec![q(x + 1), q(y + 1)]),
            Point::new(vec![q(x), q(y + 1)]),
        ]
    };
    let polys = vec![sq(0, 0), sq(3, 0), sq(6, 0), sq(0, 3)];
    assert_eq!(arrangement_piercing(&polys), 4);
    assert_eq!(grid_line_cover(&polys), 2);
}
