//! Hypergraphs whose transversals are point or flat covers of a family.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::search::{tau, tau_with_limit, TransversalResult};
use super::{Hypergraph, Payload};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::geometry::{
    combinations, flat_crosses, flat_section, intersect_refs, line_interval, AffineFlat, Hyperplane, Point, Polyhedron,
};
use crate::linalg::{nullspace, primitive_integer, sub, unit};
use crate::rational::{dot, Rational};

/// An exact (or explicitly upper-bound-only) cover number with the
/// hypergraph it was computed on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverResult {
    pub hypergraph: Hypergraph,
    pub transversal: TransversalResult,
    /// The geometric objects of the witness, in witness order.
    pub cover: Vec<Payload>,
    /// Whether the candidate set provably contains an optimal cover. When
    /// false the transversal is flagged upper-bound-only.
    pub complete: bool,
}

fn check_family(fam: &[Polyhedron]) -> Result<usize> {
    let first = fam.first().ok_or(Error::EmptyInput("family"))?;
    for s in fam {
        if s.dim != first.dim {
            return Err(Error::DimensionMismatch {
                expected: first.dim,
                found: s.dim,
            });
        }
    }
    Ok(first.dim)
}

/// One vertex per maximal intersecting subfamily (with a common point as
/// payload); the edge of a set lists the subfamilies containing it.
pub fn build_point_hypergraph(fam: &[Polyhedron], budget: &Budget) -> Result<Hypergraph> {
    check_family(fam)?;
    Budget::check("family", fam.len(), budget.max_family)?;
    let n = fam.len();
    let mut adjacent = vec![vec![false; n]; n];
    for i in 0..n {
        adjacent[i][i] = !intersect_refs(&[&fam[i]])?.is_empty();
        if !adjacent[i][i] {
            return Err(Error::InvalidInput(format!("set {i} is empty and cannot be pierced")));
        }
        for j in 0..i {
            let meet = !intersect_refs(&[&fam[i], &fam[j]])?.is_empty();
            adjacent[i][j] = meet;
            adjacent[j][i] = meet;
        }
    }
    let mut found: Vec<(Vec<usize>, Point)> = Vec::new();
    let mut enumerator = MaximalSubfamilies {
        fam,
        adjacent: &adjacent,
        found: &mut found,
    };
    enumerator.extend(&mut Vec::new(), (0..n).collect(), Vec::new(), None)?;
    found.sort_by(|a, b| a.0.cmp(&b.0));
    let edges: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..found.len()).filter(|&v| found[v].0.contains(&a)).collect())
        .collect();
    let n = found.len();
    let payload = found.into_iter().map(|(_, point)| Payload::Point { point }).collect();
    Hypergraph::new(n, edges)?.with_payload(payload)
}

/// Bron–Kerbosch style enumeration for the hereditary property "has a
/// common point": `candidates` extend the current subfamily, `excluded`
/// extend it but were already explored.
struct MaximalSubfamilies<'a> {
    fam: &'a [Polyhedron],
    adjacent: &'a [Vec<bool>],
    found: &'a mut Vec<(Vec<usize>, Point)>,
}

impl MaximalSubfamilies<'_> {
    fn extends(&self, current: &[usize], u: usize) -> Result<bool> {
        if current.iter().any(|&c| !self.adjacent[c][u]) {
            return Ok(false);
        }
        if current.len() <= 1 {
            return Ok(true);
        }
        let sets: Vec<&Polyhedron> = current.iter().chain(std::iter::once(&u)).map(|&i| &self.fam[i]).collect();
        Ok(!intersect_refs(&sets)?.is_empty())
    }

    fn extend(
        &mut self,
        current: &mut Vec<usize>,
        candidates: Vec<usize>,
        mut excluded: Vec<usize>,
        point: Option<Point>,
    ) -> Result<()> {
        if candidates.is_empty() {
            if excluded.is_empty() {
                let mut members = current.clone();
                members.sort_unstable();
                let point = point.expect("maximal subfamilies are nonempty");
                self.found.push((members, point));
            }
            return Ok(());
        }
        let mut remaining = candidates;
        while let Some(v) = remaining.first().copied() {
            remaining.remove(0);
            current.push(v);
            let sets: Vec<&Polyhedron> = current.iter().map(|&i| &self.fam[i]).collect();
            let p = intersect_refs(&sets)?.point().cloned().expect("candidate keeps a common point");
            let mut next_c = Vec::new();
            for &u in &remaining {
                if self.extends(current, u)? {
                    next_c.push(u);
                }
            }
            let mut next_x = Vec::new();
            for &u in &excluded {
                if self.extends(current, u)? {
                    next_x.push(u);
                }
            }
            self.extend(current, next_c, next_x, Some(p))?;
            current.pop();
            excluded.push(v);
        }
        Ok(())
    }
}

/// Exact piercing number of a family: transversal number of its point
/// hypergraph.
pub fn piercing_number(fam: &[Polyhedron], budget: &Budget) -> Result<CoverResult> {
    let h = build_point_hypergraph(fam, budget)?;
    let t = tau(&h, budget)?;
    Ok(finish(h, t, true))
}

fn finish(h: Hypergraph, mut t: TransversalResult, complete: bool) -> CoverResult {
    let payload = h.vertex_payload.as_ref().expect("builders attach payloads");
    let cover = t.witness.iter().map(|&v| payload[v].clone()).collect();
    t.upper_bound_only |= !complete;
    CoverResult {
        hypergraph: h,
        transversal: t,
        cover,
        complete,
    }
}

/// Candidate transversal lines for a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineCandidates {
    pub lines: Vec<AffineFlat>,
    /// Pool points the lines were generated from.
    pub pool: Vec<Point>,
    /// True when some minimum line cover is guaranteed to use only these
    /// lines (planar families of bounded sets).
    pub complete: bool,
}

/// Lines through every pair of distinct pool points (vertices of the sets,
/// or an interior point for sets without vertices), plus a fallback line
/// through each pool point.
///
/// For bounded planar sets this is complete: a transversal line can be
/// translated until it touches a vertex and rotated about it until it
/// touches a second one, without losing any closed set it crosses.
pub fn line_candidates(fam: &[Polyhedron]) -> Result<LineCandidates> {
    let dim = check_family(fam)?;
    if dim < 2 {
        return Err(Error::Unsupported("line covers need ambient dimension at least 2".into()));
    }
    let (pool, bounded) = vertex_pool(fam)?;
    let mut seen: BTreeSet<(Vec<Rational>, Vec<Vec<Rational>>)> = BTreeSet::new();
    let mut lines = Vec::new();
    let mut push = |line: AffineFlat| {
        let c = line.canonical();
        if seen.insert((c.base.coords.clone(), c.directions.clone())) {
            lines.push(line);
        }
    };
    for i in 0..pool.len() {
        for j in i + 1..pool.len() {
            push(AffineFlat::line_through(&pool[i], &pool[j])?);
        }
    }
    let fallback = vec![Rational::from_integer(1.into()); dim];
    for p in &pool {
        push(AffineFlat::line(p.clone(), fallback.clone())?);
    }
    Ok(LineCandidates {
        lines,
        pool,
        complete: dim == 2 && bounded,
    })
}

/// Sorted distinct vertices of all sets (a feasible point for sets without
/// vertices), and whether every set is bounded.
pub(crate) fn vertex_pool(fam: &[Polyhedron]) -> Result<(Vec<Point>, bool)> {
    let mut pool: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let mut bounded = true;
    for (i, s) in fam.iter().enumerate() {
        let verts = s.vertices();
        if verts.is_empty() {
            let p = s
                .feasible_point()?
                .ok_or_else(|| Error::InvalidInput(format!("set {i} is empty and cannot be crossed")))?;
            pool.insert(p.coords);
        } else {
            pool.extend(verts.into_iter().map(|p| p.coords));
        }
        if !s.is_bounded()? {
            bounded = false;
        }
    }
    Ok((pool.into_iter().map(Point::new).collect(), bounded))
}

pub(crate) fn line_hypergraph(fam: &[Polyhedron], lines: Vec<AffineFlat>) -> Result<Hypergraph> {
    let mut edges = vec![Vec::new(); fam.len()];
    for (v, line) in lines.iter().enumerate() {
        for (i, s) in fam.iter().enumerate() {
            if line_interval(line, s).is_some() {
                edges[i].push(v);
            }
        }
    }
    let n = lines.len();
    let payload = lines.into_iter().map(|flat| Payload::Flat { flat }).collect();
    Hypergraph::new(n, edges)?.with_payload(payload)
}

/// Minimum number of lines crossing every set, over the candidate scheme of
/// [`line_candidates`]. Exact for bounded planar families; otherwise the
/// result is flagged upper-bound-only.
pub fn line_cover_number(fam: &[Polyhedron], budget: &Budget) -> Result<CoverResult> {
    let cands = line_candidates(fam)?;
    let h = line_hypergraph(fam, cands.lines)?;
    let t = tau_with_limit(&h, budget.max_candidates, budget)?;
    Ok(finish(h, t, cands.complete))
}

/// Cover number of the sets `members` using the candidate vertices of `h`,
/// whose edges are indexed like the full family.
pub(crate) fn sub_cover(h: &Hypergraph, members: &[usize], complete: bool, budget: &Budget) -> Result<CoverResult> {
    let sub = Hypergraph {
        vertex_count: h.vertex_count,
        edges: members.iter().map(|&i| h.edges[i].clone()).collect(),
        vertex_payload: h.vertex_payload.clone(),
    };
    let t = tau_with_limit(&sub, budget.max_candidates, budget)?;
    Ok(finish(sub, t, complete))
}

/// Hyperplanes through every affinely independent `d`-subset of the vertex
/// pool, plus the axis-orthogonal hyperplanes through each pool point.
/// Fails with a scale error when the number of subsets exceeds
/// `budget.max_candidates`.
pub fn hyperplane_candidates(fam: &[Polyhedron], budget: &Budget) -> Result<Vec<Hyperplane>> {
    let dim = check_family(fam)?;
    let (pool, _) = vertex_pool(fam)?;
    let subsets = binomial(pool.len(), dim);
    Budget::check("hyperplane candidate subsets", subsets, budget.max_candidates)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |h: Hyperplane| {
        let key = canonical_hyperplane(&h);
        if seen.insert(key) {
            out.push(h);
        }
    };
    for combo in combinations(pool.len(), dim) {
        let base = &pool[combo[0]].coords;
        let rows: Vec<Vec<Rational>> = combo[1..].iter().map(|&i| sub(&pool[i].coords, base)).collect();
        let null = nullspace(&rows, dim);
        if null.len() != 1 {
            continue;
        }
        let normal = null.into_iter().next().expect("one null vector");
        let offset = dot(&normal, base);
        push(Hyperplane::new(normal, offset)?);
    }
    for p in &pool {
        for axis in 0..dim {
            push(Hyperplane::new(unit(dim, axis), p.coords[axis].clone())?);
        }
    }
    Ok(out)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Primitive integer normal with positive leading coordinate, and the
/// matching offset.
fn canonical_hyperplane(h: &Hyperplane) -> (Vec<Rational>, Rational) {
    let prim = primitive_integer(&h.normal);
    let lead = h.normal.iter().position(|c| !c.is_zero()).expect("nonzero normal");
    let offset = &h.offset * &prim[lead] / &h.normal[lead];
    (prim, offset)
}

/// Decides whether hyperplanes meet a set, using the vertex range for
/// polytopes and an LP otherwise.
pub(crate) struct CrossingOracle<'a> {
    sets: &'a [Polyhedron],
    vertices: Vec<Option<Vec<Point>>>,
}

impl<'a> CrossingOracle<'a> {
    pub(crate) fn new(sets: &'a [Polyhedron]) -> Result<Self> {
        let mut vertices = Vec::with_capacity(sets.len());
        for s in sets {
            let verts = s.vertices();
            let polytope = !verts.is_empty() && s.is_bounded()?;
            vertices.push(polytope.then_some(verts));
        }
        Ok(CrossingOracle { sets, vertices })
    }

    pub(crate) fn meets(&self, i: usize, h: &Hyperplane) -> Result<bool> {
        match &self.vertices[i] {
            Some(verts) => {
                let (mut below, mut above) = (false, false);
                for v in verts {
                    match dot(&h.normal, &v.coords).cmp(&h.offset) {
                        std::cmp::Ordering::Equal => return Ok(true),
                        std::cmp::Ordering::Less => below = true,
                        std::cmp::Ordering::Greater => above = true,
                    }
                }
                Ok(below && above)
            }
            None => Ok(!intersect_refs(&[&self.sets[i], &h.as_polyhedron()])?.is_empty()),
        }
    }
}

/// Hypergraph whose vertices are hyperplane candidates, with hyperplanes
/// attached as `(d-1)`-flats.
pub(crate) fn hyperplane_hypergraph(fam: &[Polyhedron], planes: Vec<Hyperplane>) -> Result<Hypergraph> {
    let oracle = CrossingOracle::new(fam)?;
    let mut edges = vec![Vec::new(); fam.len()];
    for (v, h) in planes.iter().enumerate() {
        for (i, e) in edges.iter_mut().enumerate() {
            if oracle.meets(i, h)? {
                e.push(v);
            }
        }
    }
    let n = planes.len();
    let payload = planes.into_iter().map(|h| Payload::Flat { flat: h.to_flat() }).collect();
    Hypergraph::new(n, edges)?.with_payload(payload)
}

/// Minimum number of hyperplanes crossing every set over
/// [`hyperplane_candidates`]. In the plane this is the line cover number;
/// in higher dimension the result is flagged upper-bound-only.
pub fn hyperplane_cover_number(fam: &[Polyhedron], budget: &Budget) -> Result<CoverResult> {
    let dim = check_family(fam)?;
    if dim == 2 {
        return line_cover_number(fam, budget);
    }
    let planes = hyperplane_candidates(fam, budget)?;
    let h = hyperplane_hypergraph(fam, planes)?;
    let t = tau_with_limit(&h, budget.max_candidates, budget)?;
    Ok(finish(h, t, dim == 1))
}

/// Candidate `(k-1)`-flats inside the union of the carriers. Supported for
/// `k = 1` (points on carrier lines: interval endpoints, which is complete)
/// and `k = 2` (lines in carrier planes via the planar line scheme, complete
/// when every section is bounded). Returns the hypergraph and the
/// completeness flag.
pub fn build_flat_hypergraph(fam: &[Polyhedron], carriers: &[AffineFlat], k: usize) -> Result<(Hypergraph, bool)> {
    let dim = check_family(fam)?;
    if carriers.is_empty() {
        return Err(Error::EmptyInput("carrier list"));
    }
    for c in carriers {
        if c.dim != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: c.dim,
            });
        }
        if c.k() != k {
            return Err(Error::InvalidInput(format!("carrier has dimension {}, expected {k}", c.k())));
        }
    }
    let mut complete = true;
    let mut payload: Vec<Payload> = Vec::new();
    match k {
        1 => {
            let mut seen = BTreeSet::new();
            for c in carriers {
                for s in fam {
                    let Some((lo, hi)) = line_interval(c, s) else {
                        continue;
                    };
                    let ts: Vec<Rational> = match (lo, hi) {
                        (None, None) => vec![Rational::from_integer(0.into())],
                        (lo, hi) => lo.into_iter().chain(hi).collect(),
                    };
                    for t in ts {
                        let p = c.at(&[t]);
                        if seen.insert(p.coords.clone()) {
                            payload.push(Payload::Point { point: p });
                        }
                    }
                }
            }
        }
        2 => {
            let mut seen = BTreeSet::new();
            for c in carriers {
                let mut sections = Vec::new();
                for s in fam {
                    if let Some(sec) = flat_section(c, s)? {
                        sections.push(sec);
                    }
                }
                if sections.is_empty() {
                    continue;
                }
                let local = line_candidates(&sections)?;
                complete &= local.complete;
                for line in local.lines {
                    let base = c.at(&line.base.coords);
                    let mut dir = vec![Rational::from_integer(0.into()); dim];
                    for (t, d) in line.directions[0].iter().zip(&c.directions) {
                        for (x, di) in dir.iter_mut().zip(d) {
                            *x += t * di;
                        }
                    }
                    let flat = AffineFlat::line(base, dir)?;
                    let key = flat.canonical();
                    if seen.insert((key.base.coords, key.directions)) {
                        payload.push(Payload::Flat { flat });
                    }
                }
            }
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "no finite candidate scheme for covering by {}-flats",
                k.saturating_sub(1)
            )))
        }
    }
    let mut edges = vec![Vec::new(); fam.len()];
    for (v, p) in payload.iter().enumerate() {
        for (i, s) in fam.iter().enumerate() {
            let hit = match p {
                Payload::Point { point } => s.contains(point),
                Payload::Flat { flat } => flat_crosses(flat, s)?,
            };
            if hit {
                edges[i].push(v);
            }
        }
    }
    if let Some(i) = edges.iter().position(Vec::is_empty) {
        return Err(Error::InvalidInput(format!("set {i} meets no carrier")));
    }
    let n = payload.len();
    Ok((Hypergraph::new(n, edges)?.with_payload(payload)?, complete))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn pt(xs: &[i64]) -> Point {
        Point::new(xs.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn disjoint_intervals_need_two_points() {
        let fam = vec![Polyhedron::axis_box(&[q(0)], &[q(1)]), Polyhedron::axis_box(&[q(2)], &[q(3)])];
        let h = build_point_hypergraph(&fam, &Budget::default()).unwrap();
        assert_eq!(h.vertex_count, 2);
        assert_eq!(h.edges, vec![vec![0], vec![1]]);
        assert_eq!(piercing_number(&fam, &Budget::default()).unwrap().transversal.tau, 2);
    }

    #[test]
    fn two_meeting_triangles_need_one_point() {
        let a = Polyhedron::from_vertices(2, &[pt(&[0, 0]), pt(&[4, 0]), pt(&[0, 4])]).unwrap();
        let b = Polyhedron::from_vertices(2, &[pt(&[1, 1]), pt(&[5, 1]), pt(&[1, 5])]).unwrap();
        let h = build_point_hypergraph(&[a.clone(), b.clone()], &Budget::default()).unwrap();
        assert_eq!(h.vertex_count, 1);
        let r = piercing_number(&[a, b], &Budget::default()).unwrap();
        assert_eq!(r.transversal.tau, 1);
    }

    #[test]
    fn one_square() {
        let sq = vec![Polyhedron::axis_box(&[q(0), q(0)], &[q(1), q(1)])];
        assert_eq!(piercing_number(&sq, &Budget::default()).unwrap().transversal.tau, 1);
        let l = line_cover_number(&sq, &Budget::default()).unwrap();
        assert_eq!(l.transversal.tau, 1);
        assert!(l.complete);
    }

    #[test]
    fn points_on_a_carrier_line() {
        let seg = |a: i64, b: i64| Polyhedron::from_vertices(2, &[pt(&[a, 0]), pt(&[b, 0])]).unwrap();
        let axis = AffineFlat::line(pt(&[0, 0]), vec![q(1), q(0)]).unwrap();
        let (h, complete) = build_flat_hypergraph(&[seg(0, 1), seg(2, 3)], &[axis], 1).unwrap();
        assert!(complete);
        assert_eq!(tau(&h, &Budget::default()).unwrap().tau, 2);
    }

    #[test]
    fn unsupported_flat_dimension() {
        let sq = vec![Polyhedron::axis_box(&[q(0), q(0), q(0), q(0)], &[q(1), q(1), q(1), q(1)])];
        let carrier = AffineFlat::new(
            pt(&[0, 0, 0, 0]),
            vec![vec![q(1), q(0), q(0), q(0)], vec![q(0), q(1), q(0), q(0)], vec![q(0), q(0), q(1), q(0)]],
        )
        .unwrap();
        assert!(matches!(build_flat_hypergraph(&sq, &[carrier], 3), Err(Error::Unsupported(_))));
    }
}
