//! Point-or-flat dichotomies for colored families.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::separation::{helly_witness, separating_halfspaces, SeparationCertificate};
use super::{check_ch, first_intersecting_class, ColoredFamily};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::geometry::{affine_project, flat_crosses, intersect_refs, AffineFlat, Hyperplane, Point, Polyhedron, ProjectionFrame};
use crate::hypergraph::{
    hyperplane_candidates, hyperplane_hypergraph, line_candidates, line_hypergraph, piercing_number, sub_cover,
    CoverResult, Hypergraph, Payload,
};
use crate::rational::{q, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DichotomyOutcome {
    /// Every set of `class` contains every listed point (one point suffices
    /// for the statements implemented here).
    PiercedClass { class: usize, points: Vec<Point> },
    /// Every set of every class meets one of the lines.
    LineCover { lines: Vec<AffineFlat> },
    /// Every set of `class` meets one of the hyperplanes. The hyperplanes
    /// bound all but the last halfspace of `separation`, whose sets are the
    /// members `witness` of the other class.
    HyperplaneCover {
        class: usize,
        hyperplanes: Vec<Hyperplane>,
        witness: Vec<usize>,
        separation: SeparationCertificate,
    },
    Unresolved { report: String },
}

impl DichotomyOutcome {
    /// Re-checks the outcome against the classes it speaks about.
    pub fn verify(&self, classes: &[&[Polyhedron]]) -> Result<(), String> {
        match self {
            DichotomyOutcome::PiercedClass { class, points } => {
                let sets = classes.get(*class).ok_or("class index out of range")?;
                if points.is_empty() {
                    return Err("no piercing point".into());
                }
                for (i, s) in sets.iter().enumerate() {
                    if !points.iter().any(|p| s.contains(p)) {
                        return Err(format!("set {i} of class {class} is not pierced"));
                    }
                }
                Ok(())
            }
            DichotomyOutcome::LineCover { lines } => {
                if lines.iter().any(|l| l.k() != 1) {
                    return Err("line cover contains a flat that is not a line".into());
                }
                for (c, sets) in classes.iter().enumerate() {
                    for (i, s) in sets.iter().enumerate() {
                        if !crossed(lines, s).map_err(|e| e.to_string())? {
                            return Err(format!("set {i} of class {c} meets no line"));
                        }
                    }
                }
                Ok(())
            }
            DichotomyOutcome::HyperplaneCover {
                class,
                hyperplanes,
                witness,
                separation,
            } => {
                separation.verify()?;
                if *class > 1 {
                    return Err("hyperplane covers relate exactly two classes".into());
                }
                let other = classes.get(1 - class).ok_or("missing separated class")?;
                if witness.len() != separation.sets.len()
                    || witness.iter().zip(&separation.sets).any(|(&w, s)| other.get(w) != Some(s))
                {
                    return Err("separation sets do not match the witness".into());
                }
                let expected: Vec<Hyperplane> = (0..witness.len().saturating_sub(1))
                    .map(|i| separation.halfspace(i).boundary())
                    .collect();
                if &expected != hyperplanes {
                    return Err("hyperplanes do not bound the separating halfspaces".into());
                }
                let flats: Vec<AffineFlat> = hyperplanes.iter().map(Hyperplane::to_flat).collect();
                let sets = classes.get(*class).ok_or("class index out of range")?;
                for (i, s) in sets.iter().enumerate() {
                    if !crossed(&flats, s).map_err(|e| e.to_string())? {
                        return Err(format!("set {i} of class {class} meets no hyperplane"));
                    }
                }
                Ok(())
            }
            DichotomyOutcome::Unresolved { .. } => Ok(()),
        }
    }
}

fn crossed(flats: &[AffineFlat], s: &Polyhedron) -> Result<bool> {
    for f in flats {
        if flat_crosses(f, s)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn check_pairs(a: &[Polyhedron], b: &[Polyhedron]) -> Result<()> {
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if intersect_refs(&[x, y])?.is_empty() {
                return Err(Error::DisjointPair {
                    first: (0, i),
                    second: (1, j),
                });
            }
        }
    }
    Ok(())
}

/// Given two families in which every `A` meets every `B`: either the `A`s
/// share a point, or at most `d` hyperplanes cross every `B`. The
/// hyperplanes bound all but one of the halfspaces separating a minimal
/// empty subfamily of `A`.
pub fn two_color_lemma(a: &[Polyhedron], b: &[Polyhedron]) -> Result<DichotomyOutcome> {
    let dim = a.first().ok_or(Error::EmptyInput("first family"))?.dim;
    if b.is_empty() {
        return Err(Error::EmptyInput("second family"));
    }
    if let Some(s) = a.iter().chain(b).find(|s| s.dim != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: s.dim,
        });
    }
    check_pairs(a, b)?;
    let refs: Vec<&Polyhedron> = a.iter().collect();
    let out = match intersect_refs(&refs)?.point() {
        Some(p) => DichotomyOutcome::PiercedClass {
            class: 0,
            points: vec![p.clone()],
        },
        None => {
            let witness = helly_witness(a)?;
            let chosen: Vec<Polyhedron> = witness.iter().map(|&i| a[i].clone()).collect();
            let separation = separating_halfspaces(&chosen)?;
            let hyperplanes: Vec<Hyperplane> = (0..witness.len() - 1)
                .map(|i| separation.halfspace(i).boundary())
                .collect();
            if hyperplanes.len() > dim {
                return Err(Error::TheoremViolation(format!(
                    "{} hyperplanes returned in dimension {dim}",
                    hyperplanes.len()
                )));
            }
            DichotomyOutcome::HyperplaneCover {
                class: 1,
                hyperplanes,
                witness,
                separation,
            }
        }
    };
    out.verify(&[a, b]).map_err(Error::TheoremViolation)?;
    Ok(out)
}

/// Two color classes in the plane with all pairs meeting: one class is
/// pierced by a single point, or both together are crossed by at most four
/// lines.
pub fn theorem_main_d2(fam: &ColoredFamily) -> Result<DichotomyOutcome> {
    fam.validate()?;
    if fam.dim != 2 || fam.class_count() != 2 {
        return Err(Error::InvalidInput(format!(
            "expected 2 color classes in the plane, found {} in dimension {}",
            fam.class_count(),
            fam.dim
        )));
    }
    let (f1, f2) = (&fam.classes[0], &fam.classes[1]);
    let mut lines = Vec::new();
    let mut seen = BTreeSet::new();
    for (class, (a, b)) in [(f1, f2), (f2, f1)].into_iter().enumerate() {
        match two_color_lemma(a, b)? {
            DichotomyOutcome::PiercedClass { points, .. } => {
                let out = DichotomyOutcome::PiercedClass { class, points };
                out.verify(&[f1, f2]).map_err(Error::TheoremViolation)?;
                return Ok(out);
            }
            DichotomyOutcome::HyperplaneCover { hyperplanes, .. } => {
                for h in hyperplanes {
                    let line = h.to_flat();
                    let key = line.canonical();
                    if seen.insert((key.base.coords, key.directions)) {
                        lines.push(line);
                    }
                }
            }
            other => return Err(Error::TheoremViolation(format!("unexpected outcome {other:?}"))),
        }
    }
    if lines.len() > 4 {
        return Err(Error::TheoremViolation(format!("{} lines returned", lines.len())));
    }
    let out = DichotomyOutcome::LineCover { lines };
    out.verify(&[f1, f2]).map_err(Error::TheoremViolation)?;
    Ok(out)
}

/// A class crossed by one line parallel to a sampled direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericLine {
    pub class: usize,
    pub line: AffineFlat,
    /// Number of directions tried, including the successful one.
    pub attempts: usize,
}

const GENERIC_ATTEMPTS: usize = 32;
const GRID: i64 = 1000;

/// For `d` classes in `R^d` with the colorful Helly property: projects
/// along a random integer direction, finds a class whose shadows share a
/// point, and lifts that point to a line crossing every set of the class.
/// The same seed always gives the same result.
pub fn generic_line_class(fam: &ColoredFamily, seed: u64, budget: &Budget) -> Result<GenericLine> {
    fam.validate()?;
    if fam.dim < 2 || fam.class_count() != fam.dim {
        return Err(Error::InvalidInput(format!(
            "expected {} color classes in dimension {} (at least 2)",
            fam.dim, fam.dim
        )));
    }
    let ch = check_ch(fam, budget)?;
    if !ch.holds {
        return Err(Error::Precondition(format!(
            "colorful Helly property fails at rainbow {:?}",
            ch.violating_rainbow.unwrap_or_default()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failed = Vec::new();
    for attempt in 1..=GENERIC_ATTEMPTS {
        let direction: Vec<Rational> = (0..fam.dim).map(|_| q(rng.gen_range(-GRID..=GRID))).collect();
        if direction.iter().all(|c| c == &q(0)) {
            failed.push("zero direction".to_string());
            continue;
        }
        match try_direction(fam, direction.clone())? {
            Some((class, line)) => return Ok(GenericLine { class, line, attempts: attempt }),
            None => failed.push(format!("{:?}", direction.iter().map(ToString::to_string).collect::<Vec<_>>())),
        }
    }
    Err(Error::RetriesExhausted {
        attempts: GENERIC_ATTEMPTS,
        directions: failed,
    })
}

fn try_direction(fam: &ColoredFamily, direction: Vec<Rational>) -> Result<Option<(usize, AffineFlat)>> {
    let frame = ProjectionFrame::new(direction.clone())?;
    let mut shadows = Vec::with_capacity(fam.class_count());
    for class in &fam.classes {
        shadows.push(affine_project(class, &direction)?);
    }
    let projected = ColoredFamily {
        dim: fam.dim - 1,
        classes: shadows,
    };
    let Some((class, y)) = first_intersecting_class(&projected)? else {
        return Ok(None);
    };
    let line = frame.fiber(&y);
    for s in &fam.classes[class] {
        if !flat_crosses(&line, s)? {
            return Ok(None);
        }
    }
    Ok(Some((class, line)))
}

/// One relabeling: the `pierced` classes against the `covered` ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitEntry {
    pub k: usize,
    pub pierced: Vec<usize>,
    pub covered: Vec<usize>,
    pub piercing: Option<CoverSummary>,
    pub cover: Option<CoverSummary>,
    /// Both numbers are known and within the budgets.
    pub satisfied: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// A cover number with its witness objects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSummary {
    pub size: usize,
    pub exact: bool,
    pub objects: Vec<Payload>,
}

impl CoverSummary {
    fn from_result(r: CoverResult) -> Self {
        CoverSummary {
            size: r.transversal.tau,
            exact: !r.transversal.upper_bound_only,
            objects: r.cover,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomyReport {
    pub dim: usize,
    pub f_budget: usize,
    pub g_budget: usize,
    pub entries: Vec<SplitEntry>,
}

impl DichotomyReport {
    pub fn satisfied(&self) -> impl Iterator<Item = &SplitEntry> {
        self.entries.iter().filter(|e| e.satisfied)
    }
}

/// For each `k` and each choice of `k` classes, the exact piercing number
/// of their union and the `k`-flat cover number of the remaining classes.
/// Lines and hyperplanes come from the candidate schemes; `k = d` flats are
/// the whole space. Splits that exceed the budgets are reported with notes.
pub fn dichotomy_report(fam: &ColoredFamily, f_budget: usize, g_budget: usize, budget: &Budget) -> Result<DichotomyReport> {
    fam.validate()?;
    let d = fam.dim;
    let classes = fam.class_count();
    if classes < 2 {
        return Err(Error::InvalidInput("at least two color classes are needed".into()));
    }
    let all = fam.all_sets();
    let mut offsets = Vec::with_capacity(classes);
    let mut start = 0;
    for c in &fam.classes {
        offsets.push(start);
        start += c.len();
    }
    let members = |cs: &[usize]| -> Vec<usize> {
        cs.iter().flat_map(|&c| offsets[c]..offsets[c] + fam.classes[c].len()).collect()
    };
    let mut lines: Option<Result<(Hypergraph, bool), String>> = None;
    let mut planes: Option<Result<Hypergraph, String>> = None;
    let mut entries = Vec::new();
    for k in 1..=d.min(classes - 1) {
        for pierced in crate::geometry::combinations(classes, k) {
            let covered: Vec<usize> = (0..classes).filter(|c| !pierced.contains(c)).collect();
            let mut notes = Vec::new();
            let union: Vec<Polyhedron> = members(&pierced).into_iter().map(|i| all[i].clone()).collect();
            let piercing = keep(piercing_number(&union, budget).map(CoverSummary::from_result), &mut notes)?;
            let rest = members(&covered);
            let cover = if k == d {
                Some(CoverSummary {
                    size: 1,
                    exact: true,
                    objects: Vec::new(),
                })
            } else if k == 1 {
                if lines.is_none() {
                    let built = line_candidates(&all).and_then(|c| Ok((line_hypergraph(&all, c.lines)?, c.complete)));
                    lines = Some(soft(built)?);
                }
                match lines.as_ref().expect("just built") {
                    Ok((h, complete)) => {
                        keep(sub_cover(h, &rest, *complete, budget).map(CoverSummary::from_result), &mut notes)?
                    }
                    Err(e) => {
                        notes.push(e.clone());
                        None
                    }
                }
            } else if k + 1 == d {
                if planes.is_none() {
                    let built = hyperplane_candidates(&all, budget).and_then(|c| hyperplane_hypergraph(&all, c));
                    planes = Some(soft(built)?);
                }
                match planes.as_ref().expect("just built") {
                    Ok(h) => keep(sub_cover(h, &rest, false, budget).map(CoverSummary::from_result), &mut notes)?,
                    Err(e) => {
                        notes.push(e.clone());
                        None
                    }
                }
            } else {
                notes.push(format!("no candidate scheme for covering by {k}-flats"));
                None
            };
            let satisfied = matches!((&piercing, &cover), (Some(p), Some(c)) if p.size <= f_budget && c.size <= g_budget);
            entries.push(SplitEntry {
                k,
                pierced,
                covered,
                piercing,
                cover,
                satisfied,
                notes,
            });
        }
    }
    Ok(DichotomyReport {
        dim: d,
        f_budget,
        g_budget,
        entries,
    })
}

/// Keeps scale and unsupported errors as messages; other errors propagate.
fn soft<T>(r: Result<T>) -> Result<Result<T, String>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e) if e.is_scale() || matches!(e, Error::Unsupported(_)) => Ok(Err(e.to_string())),
        Err(e) => Err(e),
    }
}

fn keep<T>(r: Result<T>, notes: &mut Vec<String>) -> Result<Option<T>> {
    Ok(soft(r)?.map_err(|e| notes.push(e)).ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Halfspace;

    fn bx(lo: &[i64], hi: &[i64]) -> Polyhedron {
        Polyhedron::axis_box(&lo.iter().map(|&x| q(x)).collect::<Vec<_>>(), &hi.iter().map(|&x| q(x)).collect::<Vec<_>>())
    }

    fn half(normal: &[i64], offset: i64) -> Polyhedron {
        Polyhedron::new(normal.len(), vec![Halfspace::new(normal.iter().map(|&x| q(x)).collect(), q(offset)).unwrap()], vec![]).unwrap()
    }

    #[test]
    fn nested_boxes_are_pierced() {
        let a = vec![bx(&[0, 0], &[4, 4]), bx(&[1, 1], &[3, 3])];
        let b = vec![bx(&[2, 2], &[9, 9])];
        match two_color_lemma(&a, &b).unwrap() {
            DichotomyOutcome::PiercedClass { class, points } => {
                assert_eq!(class, 0);
                assert!(a.iter().all(|s| s.contains(&points[0])));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn three_halfplanes_give_two_lines() {
        // x >= 0, y >= 0, x + y <= -1: pairwise meeting, jointly empty.
        let a = vec![half(&[-1, 0], 0), half(&[0, -1], 0), half(&[1, 1], -1)];
        let b = vec![bx(&[-3, -3], &[3, 3]), bx(&[-4, 2], &[0, 3]), bx(&[5, -9], &[6, 1])];
        let out = two_color_lemma(&a, &b).unwrap();
        match &out {
            DichotomyOutcome::HyperplaneCover { hyperplanes, witness, .. } => {
                assert_eq!(witness, &vec![0, 1, 2]);
                assert_eq!(hyperplanes.len(), 2);
            }
            other => panic!("{other:?}"),
        }
        out.verify(&[&a, &b]).unwrap();
    }

    #[test]
    fn disjoint_pair_is_rejected() {
        let a = vec![bx(&[0, 0], &[1, 1])];
        let b = vec![bx(&[0, 0], &[1, 1]), bx(&[5, 5], &[6, 6])];
        assert!(matches!(
            two_color_lemma(&a, &b),
            Err(Error::DisjointPair {
                first: (0, 0),
                second: (1, 1)
            })
        ));
    }

    #[test]
    fn planar_theorem_pierces_repeated_box() {
        let fam = ColoredFamily::new(2, vec![vec![bx(&[0, 0], &[1, 1]); 2], vec![bx(&[1, 1], &[2, 2])]]).unwrap();
        let out = theorem_main_d2(&fam).unwrap();
        assert!(matches!(out, DichotomyOutcome::PiercedClass { class: 0, .. }));
    }

    #[test]
    fn planar_theorem_line_cover() {
        // Two vertical and two horizontal strips, all crossing each other.
        let v1 = bx(&[0, -10], &[1, 10]);
        let v2 = bx(&[5, -10], &[6, 10]);
        let h1 = bx(&[-10, 0], &[10, 1]);
        let h2 = bx(&[-10, 5], &[10, 6]);
        let fam = ColoredFamily::new(2, vec![vec![v1, v2], vec![h1, h2]]).unwrap();
        match theorem_main_d2(&fam).unwrap() {
            DichotomyOutcome::LineCover { lines } => assert!(lines.len() <= 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn generic_line_through_slabs() {
        let slabs = vec![bx(&[0, -50], &[1, 50]), bx(&[3, -50], &[4, 50])];
        let fam = ColoredFamily::new(2, vec![slabs.clone(), vec![Polyhedron::universe(2)]]).unwrap();
        let a = generic_line_class(&fam, 7, &Budget::default()).unwrap();
        let b = generic_line_class(&fam, 7, &Budget::default()).unwrap();
        assert_eq!(a, b);
        for s in &fam.classes[a.class] {
            assert!(flat_crosses(&a.line, s).unwrap());
        }
    }

    #[test]
    fn identical_boxes_report() {
        let b = bx(&[0, 0], &[1, 1]);
        let fam = ColoredFamily::new(2, vec![vec![b.clone()], vec![b.clone()], vec![b]]).unwrap();
        let r = dichotomy_report(&fam, 1, 1, &Budget::default()).unwrap();
        assert_eq!(r.entries.len(), 3 + 3);
        assert!(r.entries.iter().all(|e| e.satisfied));
        let top = r.entries.iter().find(|e| e.k == 2).unwrap();
        assert_eq!(top.piercing.as_ref().unwrap().size, 1);
    }
}
