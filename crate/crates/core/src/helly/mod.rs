//! Colored families, the colorful Helly check, and the constructive
//! transversal statements built on it.

mod bounds;
mod dichotomy;
mod fractional;
mod separation;

pub use bounds::{BetaFormula, BoundExpr, BoundFormulas};
pub use dichotomy::{
    dichotomy_report, generic_line_class, theorem_main_d2, two_color_lemma, DichotomyOutcome, DichotomyReport,
    GenericLine, SplitEntry,
};
pub use fractional::{fractional_two_color_search, FractionalTwoColorReport};
pub use separation::{helly_witness, separating_halfspaces, SeparationCertificate};

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::certificate::EmptinessCertificate;
use crate::error::{Error, Result};
use crate::geometry::{intersect_refs, Intersection, Point, Polyhedron};

/// Sets grouped by color. Class index is the color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredFamily {
    pub dim: usize,
    pub classes: Vec<Vec<Polyhedron>>,
}

impl ColoredFamily {
    pub fn new(dim: usize, classes: Vec<Vec<Polyhedron>>) -> Result<Self> {
        let fam = ColoredFamily { dim, classes };
        fam.validate()?;
        Ok(fam)
    }

    pub fn validate(&self) -> Result<()> {
        if self.classes.is_empty() {
            return Err(Error::EmptyInput("color classes"));
        }
        for (c, class) in self.classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::InvalidInput(format!("color class {c} is empty")));
            }
            for s in class {
                if s.dim != self.dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim,
                        found: s.dim,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn rainbow_count(&self) -> usize {
        self.classes.iter().map(Vec::len).fold(1usize, |a, b| a.saturating_mul(b))
    }

    pub fn all_sets(&self) -> Vec<Polyhedron> {
        self.classes.iter().flatten().cloned().collect()
    }

    /// The same family with one class appended.
    pub fn with_class(mut self, class: Vec<Polyhedron>) -> Self {
        self.classes.push(class);
        self
    }
}

/// Outcome of checking that every rainbow selection has a common point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChReport {
    pub holds: bool,
    pub tuples_checked: usize,
    /// `(class, index within class)` for each member of the failing tuple.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violating_rainbow: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<EmptinessCertificate>,
}

/// Enumerates rainbow selections in lexicographic order and stops at the
/// first one with empty intersection.
pub fn check_ch(fam: &ColoredFamily, budget: &Budget) -> Result<ChReport> {
    fam.validate()?;
    Budget::check("rainbow selections", fam.rainbow_count(), budget.max_rainbow)?;
    let k = fam.class_count();
    let mut idx = vec![0usize; k];
    let mut checked = 0;
    loop {
        let sets: Vec<&Polyhedron> = idx.iter().enumerate().map(|(c, &i)| &fam.classes[c][i]).collect();
        checked += 1;
        if let Intersection::Empty { certificate } = intersect_refs(&sets)? {
            return Ok(ChReport {
                holds: false,
                tuples_checked: checked,
                violating_rainbow: Some(idx.iter().copied().enumerate().collect()),
                certificate: Some(certificate),
            });
        }
        // Odometer increment, last class fastest.
        let mut c = k;
        loop {
            if c == 0 {
                return Ok(ChReport {
                    holds: true,
                    tuples_checked: checked,
                    violating_rainbow: None,
                    certificate: None,
                });
            }
            c -= 1;
            idx[c] += 1;
            if idx[c] < fam.classes[c].len() {
                break;
            }
            idx[c] = 0;
        }
    }
}

/// For `d + 1` classes in `R^d` satisfying the colorful Helly property,
/// returns a class with a common point. Failure to find one is reported as
/// a theorem violation.
pub fn intersecting_class(fam: &ColoredFamily, budget: &Budget) -> Result<(usize, Point)> {
    fam.validate()?;
    if fam.class_count() != fam.dim + 1 {
        return Err(Error::InvalidInput(format!(
            "expected {} color classes in dimension {}, found {}",
            fam.dim + 1,
            fam.dim,
            fam.class_count()
        )));
    }
    let report = check_ch(fam, budget)?;
    if !report.holds {
        return Err(Error::Precondition(format!(
            "colorful Helly property fails at rainbow {:?}",
            report.violating_rainbow.unwrap_or_default()
        )));
    }
    first_intersecting_class(fam)?.ok_or_else(|| {
        Error::TheoremViolation("no color class has a common point although every rainbow selection does".into())
    })
}

pub(crate) fn first_intersecting_class(fam: &ColoredFamily) -> Result<Option<(usize, Point)>> {
    for (c, class) in fam.classes.iter().enumerate() {
        let refs: Vec<&Polyhedron> = class.iter().collect();
        if let Intersection::Common { point } = intersect_refs(&refs)? {
            debug_assert!(class.iter().all(|s| s.contains(&point)));
            return Ok(Some((c, point)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Halfspace;
    use crate::rational::q;

    fn unit_box() -> Polyhedron {
        Polyhedron::axis_box(&[q(0), q(0)], &[q(1), q(1)])
    }

    #[test]
    fn disjoint_halfplanes_fail() {
        let left = Polyhedron::new(2, vec![Halfspace::new(vec![q(1), q(0)], q(-1)).unwrap()], vec![]).unwrap();
        let right = Polyhedron::new(2, vec![Halfspace::new(vec![q(-1), q(0)], q(-1)).unwrap()], vec![]).unwrap();
        let fam = ColoredFamily::new(2, vec![vec![left.clone()], vec![right.clone()]]).unwrap();
        let r = check_ch(&fam, &Budget::default()).unwrap();
        assert!(!r.holds);
        assert_eq!(r.violating_rainbow, Some(vec![(0, 0), (1, 0)]));
        r.certificate.unwrap().verify(&[&left, &right]).unwrap();
    }

    #[test]
    fn identical_boxes_pick_class_zero() {
        let fam = ColoredFamily::new(2, vec![vec![unit_box()], vec![unit_box()], vec![unit_box()]]).unwrap();
        let (c, p) = intersecting_class(&fam, &Budget::default()).unwrap();
        assert_eq!(c, 0);
        assert!(unit_box().contains(&p));
    }

    #[test]
    fn wrong_class_count_is_rejected() {
        let fam = ColoredFamily::new(2, vec![vec![unit_box()]]).unwrap();
        assert!(matches!(intersecting_class(&fam, &Budget::default()), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn rainbow_budget() {
        let class = vec![unit_box(); 10];
        let fam = ColoredFamily::new(2, vec![class.clone(), class.clone(), class]).unwrap();
        let tight = Budget {
            max_rainbow: 999,
            ..Budget::default()
        };
        assert!(check_ch(&fam, &tight).unwrap_err().is_scale());
    }
}
