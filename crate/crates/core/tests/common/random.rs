//! Seeded random instances: small integer boxes and triangles, hypergraphs.

use helly_core::geometry::{intersect_refs, Point, Polyhedron};
use helly_core::helly::{check_ch, ColoredFamily};
use helly_core::hypergraph::Hypergraph;
use helly_core::Budget;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::q;

pub fn random_box(rng: &mut ChaCha8Rng, dim: usize) -> Polyhedron {
    let lo: Vec<i64> = (0..dim).map(|_| rng.gen_range(-5..=4)).collect();
    let hi: Vec<i64> = lo.iter().map(|&a| a + rng.gen_range(1..=6)).collect();
    Polyhedron::axis_box(&lo.iter().map(|&x| q(x)).collect::<Vec<_>>(), &hi.iter().map(|&x| q(x)).collect::<Vec<_>>())
}

/// A simplex with integer vertices, retried until full-dimensional.
pub fn random_simplex(rng: &mut ChaCha8Rng, dim: usize) -> Polyhedron {
    loop {
        let pts: Vec<Point> = (0..=dim)
            .map(|_| Point::new((0..dim).map(|_| q(rng.gen_range(-6..=6))).collect()))
            .collect();
        if let Ok(p) = Polyhedron::from_vertices(dim, &pts) {
            if p.equalities.is_empty() {
                return p;
            }
        }
    }
}

pub fn random_set(rng: &mut ChaCha8Rng, dim: usize) -> Polyhedron {
    if rng.gen_bool(0.5) {
        random_box(rng, dim)
    } else {
        random_simplex(rng, dim)
    }
}

pub fn meets(a: &Polyhedron, b: &Polyhedron) -> bool {
    !intersect_refs(&[a, b]).unwrap().is_empty()
}

/// Two classes where every cross pair meets and the first class has no
/// common point.
pub fn two_colored_without_common_point(rng: &mut ChaCha8Rng, dim: usize) -> (Vec<Polyhedron>, Vec<Polyhedron>) {
    loop {
        let a: Vec<Polyhedron> = (0..rng.gen_range(dim + 1..=dim + 3)).map(|_| random_set(rng, dim)).collect();
        if !intersect_refs(&a.iter().collect::<Vec<_>>()).unwrap().is_empty() {
            continue;
        }
        if let Some(b) = partners(rng, dim, &a) {
            return (a, b);
        }
    }
}

/// Two classes where every cross pair meets.
pub fn two_colored(rng: &mut ChaCha8Rng, dim: usize) -> (Vec<Polyhedron>, Vec<Polyhedron>) {
    loop {
        let a: Vec<Polyhedron> = (0..rng.gen_range(1..=4)).map(|_| random_set(rng, dim)).collect();
        if let Some(b) = partners(rng, dim, &a) {
            return (a, b);
        }
    }
}

fn partners(rng: &mut ChaCha8Rng, dim: usize, a: &[Polyhedron]) -> Option<Vec<Polyhedron>> {
    let want = rng.gen_range(1..=4);
    let mut b = Vec::new();
    for _ in 0..200 {
        let s = random_set(rng, dim);
        if a.iter().all(|x| meets(x, &s)) {
            b.push(s);
            if b.len() == want {
                return Some(b);
            }
        }
    }
    (!b.is_empty()).then_some(b)
}

pub fn random_hypergraph(rng: &mut ChaCha8Rng, max_vertices: usize, max_edges: usize) -> Hypergraph {
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(1..=max_edges);
    let edges = (0..m)
        .map(|_| {
            let size = rng.gen_range(1..=n.min(4));
            let mut e: Vec<usize> = Vec::new();
            while e.len() < size {
                let v = rng.gen_range(0..n);
                if !e.contains(&v) {
                    e.push(v);
                }
            }
            e.sort_unstable();
            e
        })
        .collect();
    Hypergraph::new(n, edges).unwrap()
}

/// A box or simplex large enough that rainbow selections usually meet.
pub fn wide_set(rng: &mut ChaCha8Rng, dim: usize) -> Polyhedron {
    if rng.gen_bool(0.6) {
        let lo: Vec<i64> = (0..dim).map(|_| rng.gen_range(-4..=0)).collect();
        let hi: Vec<i64> = lo.iter().map(|&a| a + rng.gen_range(3..=8)).collect();
        Polyhedron::axis_box(&lo.iter().map(|&x| q(x)).collect::<Vec<_>>(), &hi.iter().map(|&x| q(x)).collect::<Vec<_>>())
    } else {
        loop {
            let pts: Vec<Point> = (0..=dim)
                .map(|_| Point::new((0..dim).map(|_| q(rng.gen_range(-8..=8))).collect()))
                .collect();
            if let Ok(p) = Polyhedron::from_vertices(dim, &pts) {
                if p.equalities.is_empty() {
                    return p;
                }
            }
        }
    }
}

/// `dim + 1` classes with the colorful Helly property and no point common
/// to all sets, by rejection sampling.
pub fn colorful_family(rng: &mut ChaCha8Rng, dim: usize, budget: &Budget) -> (ColoredFamily, usize) {
    let mut tries = 0;
    loop {
        tries += 1;
        let classes: Vec<Vec<Polyhedron>> = (0..=dim)
            .map(|_| (0..rng.gen_range(1..=3)).map(|_| wide_set(rng, dim)).collect())
            .collect();
        let fam = ColoredFamily::new(dim, classes).unwrap();
        let all = fam.all_sets();
        if intersect_refs(&all.iter().collect::<Vec<_>>()).unwrap().is_empty() && check_ch(&fam, budget).unwrap().holds {
            return (fam, tries);
        }
    }
}
