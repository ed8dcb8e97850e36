//! The `d`-colored family built from cones over inscribed triangles in the
//! 2-faces of a simplex, together with shifted copies of its facets.

use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::planar::{place_triangles, TrianglePlacement, MAX_HALVINGS};
use super::no_three_meet;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::geometry::{combinations, intersect_refs, AffineFlat, Halfspace, Hyperplane, Point, Polyhedron};
use crate::helly::{check_ch, ChReport, ColoredFamily};
use crate::hypergraph::{line_cover_number, piercing_number, CoverResult};
use crate::linalg::{add, scale, sub, unit};
use crate::lp::{lp_solve, LpOutcome, LpProblem};
use crate::rational::{dot, q, qf, serde_q, Rational};

/// Barycentric coordinate `a` of the standard simplex with vertices
/// `e_1, ..., e_d, 0`, as `(w, c)` with `lambda_a(x) = w . x + c`.
fn barycentric(d: usize, a: usize) -> (Vec<Rational>, Rational) {
    if a < d {
        (unit(d, a), Rational::zero())
    } else {
        (vec![q(-1); d], Rational::one())
    }
}

fn lambda(d: usize, a: usize, x: &[Rational]) -> Rational {
    let (w, c) = barycentric(d, a);
    dot(&w, x) + c
}

fn simplex_vertices(d: usize) -> Vec<Point> {
    (0..d).map(|i| Point::new(unit(d, i))).chain(std::iter::once(Point::origin(d))).collect()
}

/// The facet opposite vertex `j`.
fn facet(d: usize, j: usize) -> Polyhedron {
    let (w, c) = barycentric(d, j);
    let mut ineq = Vec::new();
    for a in (0..=d).filter(|&a| a != j) {
        let (wa, ca) = barycentric(d, a);
        ineq.push(Halfspace {
            normal: wa.iter().map(|x| -x).collect(),
            offset: ca,
        });
    }
    Polyhedron {
        dim: d,
        inequalities: ineq,
        equalities: vec![Hyperplane { normal: w, offset: -c }],
    }
}

/// `lambda_a + lambda_b >= eps` for every pair: keeps the set `eps` away
/// from every codimension-2 face of the simplex.
fn shrink_rows(d: usize, eps: &Rational) -> Vec<Halfspace> {
    let mut rows = Vec::new();
    for pair in combinations(d + 1, 2) {
        let (wa, ca) = barycentric(d, pair[0]);
        let (wb, cb) = barycentric(d, pair[1]);
        rows.push(Halfspace {
            normal: add(&wa, &wb).iter().map(|x| -x).collect(),
            offset: ca + cb - eps,
        });
    }
    rows
}

fn shrunk(s: &Polyhedron, rows: &[Halfspace]) -> Polyhedron {
    let mut out = s.clone();
    out.inequalities.extend(rows.iter().cloned());
    out
}

/// Certificate that no line meets shifted facet copies from three
/// different facets: every copy of facet `j` has `lambda_j <= level_max`,
/// while every copy of any other facet has `lambda_j >= others_min`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetGroupSeparation {
    #[serde(with = "serde_q")]
    pub level_max: Rational,
    #[serde(with = "serde_q")]
    pub others_min: Rational,
}

impl FacetGroupSeparation {
    pub fn holds(&self) -> bool {
        self.level_max < self.others_min
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexConstruction {
    pub d: usize,
    pub f: usize,
    pub m: usize,
    pub vertices: Vec<Point>,
    /// Triangle placement inside the 2-face spanned by vertices
    /// `i, i+1, i+2`, one per cone class.
    pub placements: Vec<TrianglePlacement>,
    /// Cones before shrinking, one list per class `0..d-1`.
    pub cones: Vec<Vec<Polyhedron>>,
    /// Facets before shrinking; facet `j` omits vertex `j`.
    pub facets: Vec<Polyhedron>,
    #[serde(with = "serde_q")]
    pub shrink: Rational,
    #[serde(with = "serde_q")]
    pub offset: Rational,
    /// Final classes; the last holds `m` shifted copies of each shrunk facet.
    pub classes: Vec<Vec<Polyhedron>>,
    /// Facet index of every set in the last class.
    pub copy_facet: Vec<usize>,
    pub separation: FacetGroupSeparation,
    pub log: Vec<String>,
}

impl SimplexConstruction {
    pub fn family(&self) -> ColoredFamily {
        ColoredFamily {
            dim: self.d,
            classes: self.classes.clone(),
        }
    }

    /// Re-checks the colorful Helly property, the no-three condition in the
    /// cone classes, disjointness inside each facet group and the group
    /// separation.
    pub fn verify(&self, budget: &Budget) -> Result<(), String> {
        let e = |x: Error| x.to_string();
        let ch = check_ch(&self.family(), budget).map_err(e)?;
        if !ch.holds {
            return Err(format!("rainbow {:?} is empty", ch.violating_rainbow.unwrap_or_default()));
        }
        for (i, class) in self.classes[..self.d - 1].iter().enumerate() {
            if let Some(t) = no_three_meet(class).map_err(e)? {
                return Err(format!("sets {t:?} of class {i} share a point"));
            }
        }
        let last = &self.classes[self.d - 1];
        for i in 0..last.len() {
            for j in 0..i {
                if self.copy_facet[i] == self.copy_facet[j] && !intersect_refs(&[&last[i], &last[j]]).map_err(e)?.is_empty() {
                    return Err(format!("copies {j} and {i} of the same facet meet"));
                }
            }
        }
        let sep = group_separation(self.d, last, &self.copy_facet).map_err(e)?;
        if sep != self.separation || !sep.holds() {
            return Err("facet copies from different facets are not separated".into());
        }
        Ok(())
    }
}

fn group_separation(d: usize, copies: &[Polyhedron], copy_facet: &[usize]) -> Result<FacetGroupSeparation> {
    let mut level_max: Option<Rational> = None;
    let mut others_min: Option<Rational> = None;
    for (s, &j) in copies.iter().zip(copy_facet) {
        let verts = s.vertices();
        if verts.is_empty() {
            return Err(Error::Generation("facet copy without vertices".into()));
        }
        for v in &verts {
            for a in 0..=d {
                let l = lambda(d, a, &v.coords);
                if a == j {
                    level_max = Some(level_max.map_or(l.clone(), |m| m.max(l)));
                } else {
                    others_min = Some(others_min.map_or(l.clone(), |m| m.min(l)));
                }
            }
        }
    }
    Ok(FacetGroupSeparation {
        level_max: level_max.expect("copies are nonempty"),
        others_min: others_min.expect("copies are nonempty"),
    })
}

fn pow2(t: u32) -> Rational {
    Rational::from_integer(num_bigint::BigInt::from(2u32).pow(t))
}

/// Builds the family in `R^d` for `2 <= d <= 4` and `f >= 1`, `m = 2f`.
/// The shrink and the copy offset are found by halving until every
/// checked property holds.
pub fn generate_simplex_family(d: usize, f: usize, seed: u64, budget: &Budget) -> Result<SimplexConstruction> {
    if !(2..=4).contains(&d) {
        return Err(Error::InvalidInput(format!("dimension {d} is outside 2..=4")));
    }
    if f == 0 {
        return Err(Error::InvalidInput("f must be at least 1".into()));
    }
    let m = 2 * f;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertices = simplex_vertices(d);
    let mut placements = Vec::new();
    let mut cones = Vec::new();
    for i in 0..d - 1 {
        let p = place_triangles(m, &mut rng)?;
        let apexes: Vec<Point> = (0..=d).filter(|a| !(i..i + 3).contains(a)).map(|a| vertices[a].clone()).collect();
        let mut class = Vec::with_capacity(m);
        for k in 0..m {
            let tri = p.mapped_vertices(k, &vertices[i], &vertices[i + 1], &vertices[i + 2]);
            let pts: Vec<Point> = apexes.iter().cloned().chain(tri).collect();
            class.push(Polyhedron::from_vertices(d, &pts)?);
        }
        placements.push(p);
        cones.push(class);
    }
    let facets: Vec<Polyhedron> = (0..=d).map(|j| facet(d, j)).collect();
    let mut log = Vec::new();

    let unshrunk = ColoredFamily {
        dim: d,
        classes: cones.iter().cloned().chain(std::iter::once(facets.clone())).collect(),
    };
    let ch = check_ch(&unshrunk, budget)?;
    if !ch.holds {
        return Err(Error::Generation(format!(
            "unshrunk rainbow {:?} is empty",
            ch.violating_rainbow.unwrap_or_default()
        )));
    }
    log.push(format!("unshrunk family: all {} rainbow selections meet", ch.tuples_checked));

    let mut shrink = None;
    for t in 2..=MAX_HALVINGS {
        let eps = Rational::one() / pow2(t);
        let rows = shrink_rows(d, &eps);
        let fam = ColoredFamily {
            dim: d,
            classes: unshrunk.classes.iter().map(|c| c.iter().map(|s| shrunk(s, &rows)).collect()).collect(),
        };
        let r = check_ch(&fam, budget)?;
        if r.holds {
            log.push(format!("shrink 1/2^{t} keeps every rainbow selection"));
            shrink = Some((eps, fam));
            break;
        }
        log.push(format!("shrink 1/2^{t} empties rainbow {:?}", r.violating_rainbow.unwrap_or_default()));
    }
    let (eps, shrunk_fam) = shrink.ok_or_else(|| Error::Generation(format!("no shrink found: {}", log.last().unwrap())))?;

    for t in 0..=MAX_HALVINGS {
        let offset = &eps / (q(4 * (m * d) as i64) * pow2(t));
        let mut copies = Vec::with_capacity((d + 1) * m);
        let mut copy_facet = Vec::with_capacity((d + 1) * m);
        for (j, s) in shrunk_fam.classes[d - 1].iter().enumerate() {
            let (w, _) = barycentric(d, j);
            for k in 1..=m {
                copies.push(s.translate(&scale(&w, &(&offset * q(k as i64)))));
                copy_facet.push(j);
            }
        }
        let separation = group_separation(d, &copies, &copy_facet)?;
        let mut classes = shrunk_fam.classes[..d - 1].to_vec();
        classes.push(copies);
        let c = SimplexConstruction {
            d,
            f,
            m,
            vertices: vertices.clone(),
            placements: placements.clone(),
            cones: cones.clone(),
            facets: facets.clone(),
            shrink: eps.clone(),
            offset,
            classes,
            copy_facet,
            separation,
            log: log.clone(),
        };
        match c.verify(budget) {
            Ok(()) => {
                let mut c = c;
                c.log.push(format!("copy offset shrink/(4md 2^{t}) accepted"));
                return Ok(c);
            }
            Err(why) => log.push(format!("copy offset shrink/(4md 2^{t}) rejected: {why}")),
        }
    }
    Err(Error::Generation(format!("no copy offset found: {}", log.last().unwrap())))
}

/// A point of `sets` on the carrier of `face` whose slack in every bounding
/// inequality of `face` is at least `margin > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelintCertificate {
    pub selection: Vec<usize>,
    pub point: Point,
    #[serde(with = "serde_q")]
    pub margin: Rational,
}

impl RelintCertificate {
    pub fn verify(&self, sets: &[&Polyhedron], face: &Polyhedron) -> Result<(), String> {
        if !self.margin.is_positive() {
            return Err("margin is not positive".into());
        }
        if let Some(i) = sets.iter().position(|s| !s.contains(&self.point)) {
            return Err(format!("point lies outside set {i}"));
        }
        if !face.equalities.iter().all(|h| h.contains(&self.point)) {
            return Err("point is off the face carrier".into());
        }
        for h in &face.inequalities {
            if &h.offset - dot(&h.normal, &self.point.coords) < self.margin {
                return Err("slack below the margin".into());
            }
        }
        Ok(())
    }
}

/// Maximizes the slack of a common point of `sets` inside `face`, whose
/// equalities are its carrier and whose inequalities bound it within the
/// carrier. Returns a certificate when the optimal slack is positive.
pub fn relint_check(sets: &[&Polyhedron], face: &Polyhedron, selection: Vec<usize>) -> Result<Option<RelintCertificate>> {
    let d = face.dim;
    let mut lp = LpProblem::new(d + 1);
    for s in sets {
        s.add_rows_to(&mut lp);
    }
    for h in &face.equalities {
        let mut row = h.normal.clone();
        row.push(Rational::zero());
        lp.equal(row, h.offset.clone());
    }
    for h in &face.inequalities {
        let mut row = h.normal.clone();
        row.push(Rational::one());
        lp.le(row, h.offset.clone());
    }
    lp.bound(d, None, Some(Rational::one()));
    let mut obj = vec![Rational::zero(); d];
    obj.push(Rational::one());
    lp.maximize(obj);
    match lp_solve(&lp)? {
        LpOutcome::Optimal { point, value, .. } if value.is_positive() => {
            let cert = RelintCertificate {
                selection,
                point: Point::new(point[..d].to_vec()),
                margin: value,
            };
            cert.verify(sets, face).map_err(Error::TheoremViolation)?;
            Ok(Some(cert))
        }
        LpOutcome::Optimal { .. } | LpOutcome::Infeasible { .. } => Ok(None),
        other => Err(Error::TheoremViolation(format!("bounded slack LP returned {other:?}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelintReport {
    pub d: usize,
    pub selections: usize,
    pub certificates: Vec<RelintCertificate>,
    /// Selections whose common part misses the relative interior.
    pub failures: Vec<Vec<usize>>,
}

impl RelintReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every selection of one unshrunk cone per class and one facet:
/// the cones' common part must meet the facet's relative interior.
pub fn verify_relint_property(c: &SimplexConstruction) -> Result<RelintReport> {
    relint_sweep(c.d, &c.cones, &c.facets)
}

/// The sweep over arbitrary cone classes, for probing modified inputs.
pub fn relint_sweep(d: usize, cones: &[Vec<Polyhedron>], facets: &[Polyhedron]) -> Result<RelintReport> {
    let mut sizes: Vec<usize> = cones.iter().map(Vec::len).collect();
    sizes.push(facets.len());
    let mut idx = vec![0usize; sizes.len()];
    let mut report = RelintReport {
        d,
        selections: 0,
        certificates: Vec::new(),
        failures: Vec::new(),
    };
    loop {
        let sets: Vec<&Polyhedron> = cones.iter().zip(&idx).map(|(c, &i)| &c[i]).collect();
        let face = &facets[*idx.last().expect("facet index")];
        report.selections += 1;
        match relint_check(&sets, face, idx.clone())? {
            Some(cert) => report.certificates.push(cert),
            None => report.failures.push(idx.clone()),
        }
        let mut c = idx.len();
        loop {
            if c == 0 {
                return Ok(report);
            }
            c -= 1;
            idx[c] += 1;
            if idx[c] < sizes[c] {
                break;
            }
            idx[c] = 0;
        }
    }
}

/// The largest number of facet relative interiors of a simplex met by one
/// line, over lines through pairs of vertices, facet centroids and
/// centroids pulled towards each vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetCrossingReport {
    pub d: usize,
    pub max_crossed: usize,
    pub lines_checked: usize,
    pub witness: AffineFlat,
    pub argument: String,
}

pub fn max_simplex_facets_crossed(d: usize) -> Result<FacetCrossingReport> {
    if !(2..=4).contains(&d) {
        return Err(Error::InvalidInput(format!("dimension {d} is outside 2..=4")));
    }
    let verts = simplex_vertices(d);
    let mut pts: Vec<Point> = verts.clone();
    for j in 0..=d {
        let others: Vec<&Point> = verts.iter().enumerate().filter(|(a, _)| *a != j).map(|(_, p)| p).collect();
        let mut c = vec![Rational::zero(); d];
        for p in &others {
            c = add(&c, &p.coords);
        }
        let centroid = scale(&c, &qf(1, d as i64));
        pts.push(Point::new(centroid.clone()));
        for v in &verts {
            pts.push(Point::new(add(&centroid, &scale(&sub(&v.coords, &centroid), &qf(1, 7)))));
        }
    }
    pts.sort_by(|a, b| a.coords.cmp(&b.coords));
    pts.dedup();
    let mut best = 0;
    let mut witness = None;
    let mut checked = 0;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let line = AffineFlat::line_through(&pts[i], &pts[j])?;
            checked += 1;
            let n = (0..=d).filter(|&k| line_meets_facet_interior(d, &line, k)).count();
            if n > best {
                best = n;
                witness = Some(line);
            }
        }
    }
    if best > 2 {
        return Err(Error::TheoremViolation(format!("a line meets {best} facet interiors")));
    }
    Ok(FacetCrossingReport {
        d,
        max_crossed: best,
        lines_checked: checked,
        witness: witness.expect("some line meets a facet"),
        argument: "a line meets the boundary of a convex body in at most two points or in one segment, \
                   and a boundary segment lies in a single facet"
            .into(),
    })
}

/// Whether `line` meets the relative interior of the facet opposite vertex
/// `j`: `lambda_j = 0` and every other coordinate strictly positive.
fn line_meets_facet_interior(d: usize, line: &AffineFlat, j: usize) -> bool {
    let p = &line.base.coords;
    let u = &line.directions[0];
    let at = |a: usize| {
        let (w, c) = barycentric(d, a);
        (dot(&w, p) + c, dot(&w, u))
    };
    let (lj0, lj1) = at(j);
    // Open interval of parameters where every other coordinate is positive.
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    let mut fixed: Option<Rational> = None;
    if lj1.is_zero() {
        if !lj0.is_zero() {
            return false;
        }
    } else {
        fixed = Some(-&lj0 / &lj1);
    }
    for a in (0..=d).filter(|&a| a != j) {
        let (c0, c1) = at(a);
        if let Some(t) = &fixed {
            if !(c0 + c1 * t).is_positive() {
                return false;
            }
            continue;
        }
        if c1.is_zero() {
            if !c0.is_positive() {
                return false;
            }
        } else {
            let root = -&c0 / &c1;
            if c1.is_positive() {
                lo = Some(lo.map_or(root.clone(), |l| l.max(root)));
            } else {
                hi = Some(hi.map_or(root.clone(), |h| h.min(root)));
            }
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) => fixed.is_some() || l < h,
        _ => true,
    }
}

/// Transversal bounds of the simplex family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexLowerBounds {
    pub d: usize,
    pub f: usize,
    pub ch: ChReport,
    /// Exact piercing number of each class, when within budget.
    pub class_piercing: Vec<Option<CoverResult>>,
    /// Lines needed because no line meets copies of three facets.
    pub line_lower_bound: usize,
    /// A line cover from the candidate scheme, when within budget.
    pub line_cover: Option<CoverResult>,
    pub facets: FacetCrossingReport,
    pub notes: Vec<String>,
}

impl SimplexLowerBounds {
    /// The line cover number when the certified lower bound meets the
    /// candidate upper bound.
    pub fn exact_line_cover(&self) -> Option<usize> {
        self.line_cover
            .as_ref()
            .map(|c| c.transversal.tau)
            .filter(|&t| t == self.line_lower_bound)
    }

    pub fn holds(&self) -> bool {
        self.ch.holds
            && self.class_piercing[..self.d - 1]
                .iter()
                .all(|p| p.as_ref().is_some_and(|p| p.transversal.tau >= self.f))
            && self.line_lower_bound >= self.d.div_ceil(2)
            && self.facets.max_crossed == 2
    }
}

pub fn simplex_lower_bounds(c: &SimplexConstruction, budget: &Budget) -> Result<SimplexLowerBounds> {
    c.verify(budget).map_err(Error::TheoremViolation)?;
    let mut notes = Vec::new();
    let ch = check_ch(&c.family(), budget)?;
    let mut class_piercing = Vec::new();
    for (i, class) in c.classes.iter().enumerate() {
        match piercing_number(class, budget) {
            Ok(r) => class_piercing.push(Some(r)),
            Err(e) if e.is_scale() => {
                notes.push(format!("class {i}: {e}"));
                class_piercing.push(None);
            }
            Err(e) => return Err(e),
        }
    }
    let line_lower_bound = if c.separation.holds() { (c.d + 1).div_ceil(2) } else { 1 };
    let all: Vec<Polyhedron> = c.classes.iter().flatten().cloned().collect();
    let line_cover = match line_cover_number(&all, budget) {
        Ok(r) => Some(r),
        Err(e) if e.is_scale() => {
            notes.push(format!("line cover: {e}"));
            None
        }
        Err(e) => return Err(e),
    };
    Ok(SimplexLowerBounds {
        d: c.d,
        f: c.f,
        ch,
        class_piercing,
        line_lower_bound,
        line_cover,
        facets: max_simplex_facets_crossed(c.d)?,
        notes,
    })
}
