//! Minimal empty subfamilies and halfspaces separating them.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::certificate::{DerivedInequality, SetMultipliers};
use crate::error::{Error, Result};
use crate::geometry::{intersect_refs, Halfspace, Intersection, Polyhedron};
use crate::rational::{serde_qvec, Rational};

/// Indices of an inclusion-minimal subfamily with empty intersection,
/// found by a deletion filter in reverse index order. By Helly's theorem it
/// has at most `d + 1` members.
pub fn helly_witness(sets: &[Polyhedron]) -> Result<Vec<usize>> {
    let dim = sets.first().ok_or(Error::EmptyInput("set list"))?.dim;
    let all: Vec<&Polyhedron> = sets.iter().collect();
    if let Intersection::Common { point } = intersect_refs(&all)? {
        return Err(Error::CommonPoint { point });
    }
    let mut active: Vec<usize> = (0..sets.len()).collect();
    for i in (0..sets.len()).rev() {
        let trial: Vec<usize> = active.iter().copied().filter(|&j| j != i).collect();
        if trial.is_empty() {
            continue;
        }
        let refs: Vec<&Polyhedron> = trial.iter().map(|&j| &sets[j]).collect();
        if intersect_refs(&refs)?.is_empty() {
            active = trial;
        }
    }
    if active.len() > dim + 1 {
        return Err(Error::TheoremViolation(format!(
            "minimal empty subfamily of size {} exceeds {} in dimension {dim}",
            active.len(),
            dim + 1
        )));
    }
    Ok(active)
}

/// Halfspaces `H_i` containing the given sets whose nonnegative combination
/// with `weights` is the contradiction `0 . x <= c < 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationCertificate {
    pub sets: Vec<Polyhedron>,
    /// One halfspace per set, each derived from that set's rows.
    pub halfspaces: Vec<DerivedInequality>,
    #[serde(with = "serde_qvec")]
    pub weights: Vec<Rational>,
}

impl SeparationCertificate {
    pub fn halfspace(&self, i: usize) -> Halfspace {
        Halfspace {
            normal: self.halfspaces[i].normal.clone(),
            offset: self.halfspaces[i].offset.clone(),
        }
    }

    pub fn verify(&self) -> Result<(), String> {
        if self.sets.len() != self.halfspaces.len() || self.sets.len() != self.weights.len() {
            return Err("sets, halfspaces and weights differ in length".into());
        }
        let dim = self.sets.first().map_or(0, |s| s.dim);
        let mut normal = vec![Rational::zero(); dim];
        let mut offset = Rational::zero();
        for ((s, h), w) in self.sets.iter().zip(&self.halfspaces).zip(&self.weights) {
            h.verify(s)?;
            if h.normal.iter().all(Zero::is_zero) {
                return Err("a halfspace has zero normal".into());
            }
            if w.is_negative() {
                return Err("negative combination weight".into());
            }
            for (n, a) in normal.iter_mut().zip(&h.normal) {
                *n += w * a;
            }
            offset += w * &h.offset;
        }
        if normal.iter().any(|c| !c.is_zero()) || !offset.is_negative() {
            return Err("halfspaces do not combine to a contradiction".into());
        }
        Ok(())
    }
}

/// For sets with empty intersection, groups the Farkas multipliers of the
/// joint system by set. Each group aggregates to a halfspace containing its
/// set, and the aggregates sum to `0 . x <= c < 0`.
///
/// A group with zero normal (possible only for non-minimal inputs) is
/// dropped from the combination: the remaining aggregates are already
/// contradictory, so any halfspace containing the set will do, and one of
/// the set's own rows is used.
pub fn separating_halfspaces(sets: &[Polyhedron]) -> Result<SeparationCertificate> {
    let refs: Vec<&Polyhedron> = sets.iter().collect();
    let cert = match intersect_refs(&refs)? {
        Intersection::Common { point } => return Err(Error::CommonPoint { point }),
        Intersection::Empty { certificate } => certificate,
    };
    let aggs = cert.aggregates(&refs).map_err(Error::TheoremViolation)?;
    let mut halfspaces = Vec::with_capacity(sets.len());
    let mut weights = Vec::with_capacity(sets.len());
    for (i, ((normal, offset), mult)) in aggs.into_iter().zip(cert.per_set).enumerate() {
        if normal.iter().any(|c| !c.is_zero()) {
            halfspaces.push(DerivedInequality {
                normal,
                offset,
                multipliers: mult,
            });
            weights.push(Rational::one());
        } else if offset.is_negative() {
            return Err(Error::Precondition(format!("set {i} is empty")));
        } else {
            halfspaces.push(own_row(&sets[i]).ok_or_else(|| {
                Error::Precondition(format!("set {i} is the whole space and lies in no halfspace"))
            })?);
            weights.push(Rational::zero());
        }
    }
    let out = SeparationCertificate {
        sets: sets.to_vec(),
        halfspaces,
        weights,
    };
    out.verify().map_err(Error::TheoremViolation)?;
    Ok(out)
}

/// A row of `s` as a derived halfspace containing it.
fn own_row(s: &Polyhedron) -> Option<DerivedInequality> {
    let zeros = |n: usize| vec![Rational::zero(); n];
    if let Some(h) = s.inequalities.first() {
        let mut m = SetMultipliers {
            inequalities: zeros(s.inequalities.len()),
            equalities: zeros(s.equalities.len()),
        };
        m.inequalities[0] = Rational::one();
        return Some(DerivedInequality {
            normal: h.normal.clone(),
            offset: h.offset.clone(),
            multipliers: m,
        });
    }
    s.equalities.first().map(|h| {
        let mut m = SetMultipliers {
            inequalities: Vec::new(),
            equalities: zeros(s.equalities.len()),
        };
        m.equalities[0] = Rational::one();
        DerivedInequality {
            normal: h.normal.clone(),
            offset: h.offset.clone(),
            multipliers: m,
        }
    })
}
