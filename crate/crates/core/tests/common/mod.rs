#![allow(dead_code)]

pub mod oracle;
pub mod random;

use std::path::PathBuf;

use helly_core::document::{FamilyDocument, SetDocument};
use helly_core::geometry::{Point, Polyhedron};
use helly_core::helly::ColoredFamily;
use helly_core::hypergraph::Hypergraph;
use helly_core::Rational;
use num_bigint::BigInt;

pub fn fixture_dir(kind: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(kind)
}

fn json_files(kind: &str) -> Vec<(String, Vec<u8>)> {
    let mut out: Vec<(String, Vec<u8>)> = std::fs::read_dir(fixture_dir(kind))
        .expect("fixture directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
        .collect();
    out.sort();
    out
}

pub fn family_documents() -> Vec<(String, FamilyDocument)> {
    json_files("families")
        .into_iter()
        .map(|(n, b)| (n, serde_json::from_slice(&b).expect("family document")))
        .collect()
}

pub fn families() -> Vec<(String, ColoredFamily)> {
    family_documents()
        .into_iter()
        .map(|(n, d)| {
            let f = d.to_family().unwrap_or_else(|e| panic!("{n}: {e}"));
            (n, f)
        })
        .collect()
}

pub fn hypergraphs() -> Vec<(String, Hypergraph)> {
    json_files("hypergraphs")
        .into_iter()
        .map(|(n, b)| (n, serde_json::from_slice(&b).expect("hypergraph")))
        .collect()
}

/// Raw vertex lists (in cyclic order) of a planar family given entirely by
/// vertices, or `None` when some set is given by inequalities.
pub fn planar_vertex_lists(doc: &FamilyDocument) -> Option<Vec<Vec<Point>>> {
    if doc.dim != 2 {
        return None;
    }
    doc.classes
        .iter()
        .flat_map(|c| &c.sets)
        .map(|s| match s {
            SetDocument::Vrep(v) => Some(v.vertices.clone()),
            SetDocument::Hrep(_) => None,
        })
        .collect()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Smallest number of masks whose union is `full`, by plain enumeration.
pub fn min_union_cover(masks: &[u64], full: u64) -> Option<usize> {
    if full == 0 {
        return Some(0);
    }
    let mut masks: Vec<u64> = masks.iter().copied().filter(|&m| m != 0).collect();
    masks.sort_unstable();
    masks.dedup();
    for k in 1..=full.count_ones() as usize {
        for s in subsets(masks.len(), k) {
            if s.iter().fold(0, |a, &i| a | masks[i]) == full {
                return Some(k);
            }
        }
    }
    None
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Fixture families with at most five planar sets, all given by vertices.
pub fn small_planar_fixtures() -> Vec<(String, Vec<Vec<Point>>, Vec<Polyhedron>)> {
    family_documents()
        .into_iter()
        .filter_map(|(name, doc)| {
            let polys = planar_vertex_lists(&doc)?;
            (polys.len() <= 5).then(|| (name, polys, doc.to_family().unwrap().all_sets()))
        })
        .collect()
}
