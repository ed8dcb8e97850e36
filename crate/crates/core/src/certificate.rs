//! Self-contained certificates. Each one carries enough data to be
//! re-checked with exact arithmetic, without re-running any search.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::constructions::RelintCertificate;
use crate::geometry::{flat_meet, Point, Polyhedron};
use crate::helly::{DichotomyOutcome, SeparationCertificate};
use crate::hypergraph::{BMatching, FractionalResult, Hypergraph, Payload, TransversalResult};
use crate::rational::{serde_q, serde_qvec, Rational};

/// Multipliers for one set's rows: nonnegative on inequalities, free on
/// equalities.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SetMultipliers {
    #[serde(with = "serde_qvec")]
    pub inequalities: Vec<Rational>,
    #[serde(with = "serde_qvec")]
    pub equalities: Vec<Rational>,
}

impl SetMultipliers {
    pub fn is_zero(&self) -> bool {
        self.inequalities.iter().chain(&self.equalities).all(Zero::is_zero)
    }

    /// The implied inequality `normal . x <= offset`, valid on all of `set`.
    pub fn aggregate(&self, set: &Polyhedron) -> Result<(Vec<Rational>, Rational), String> {
        if self.inequalities.len() != set.inequalities.len() || self.equalities.len() != set.equalities.len() {
            return Err("multiplier count does not match the set's rows".into());
        }
        let mut normal = vec![Rational::zero(); set.dim];
        let mut offset = Rational::zero();
        for (y, h) in self.inequalities.iter().zip(&set.inequalities) {
            if y.is_negative() {
                return Err("negative multiplier on an inequality".into());
            }
            accumulate(&mut normal, &mut offset, y, &h.normal, &h.offset);
        }
        for (y, h) in self.equalities.iter().zip(&set.equalities) {
            accumulate(&mut normal, &mut offset, y, &h.normal, &h.offset);
        }
        Ok((normal, offset))
    }
}

fn accumulate(normal: &mut [Rational], offset: &mut Rational, y: &Rational, row: &[Rational], rhs: &Rational) {
    if y.is_zero() {
        return;
    }
    for (n, a) in normal.iter_mut().zip(row) {
        *n += y * a;
    }
    *offset += y * rhs;
}

/// Farkas multipliers proving that a list of sets has empty intersection:
/// the per-set aggregates sum to `0 . x <= c` with `c < 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmptinessCertificate {
    pub per_set: Vec<SetMultipliers>,
}

impl EmptinessCertificate {
    /// Splits multipliers of the concatenated system (each set's
    /// inequalities, then its equalities) by originating set.
    pub fn from_farkas(sets: &[&Polyhedron], farkas: &[Rational]) -> Self {
        let mut at = 0;
        let per_set = sets
            .iter()
            .map(|s| {
                let ni = s.inequalities.len();
                let ne = s.equalities.len();
                let m = SetMultipliers {
                    inequalities: farkas[at..at + ni].to_vec(),
                    equalities: farkas[at + ni..at + ni + ne].to_vec(),
                };
                at += ni + ne;
                m
            })
            .collect();
        EmptinessCertificate { per_set }
    }

    pub fn aggregates(&self, sets: &[&Polyhedron]) -> Result<Vec<(Vec<Rational>, Rational)>, String> {
        if sets.len() != self.per_set.len() {
            return Err(format!("{} multiplier groups for {} sets", self.per_set.len(), sets.len()));
        }
        self.per_set.iter().zip(sets).map(|(m, s)| m.aggregate(s)).collect()
    }

    /// Indices of sets that carry a nonzero multiplier.
    pub fn support(&self) -> Vec<usize> {
        (0..self.per_set.len()).filter(|&i| !self.per_set[i].is_zero()).collect()
    }

    pub fn verify(&self, sets: &[&Polyhedron]) -> Result<(), String> {
        let aggs = self.aggregates(sets)?;
        let dim = sets.first().map_or(0, |s| s.dim);
        let mut normal = vec![Rational::zero(); dim];
        let mut offset = Rational::zero();
        for (n, o) in &aggs {
            accumulate(&mut normal, &mut offset, &Rational::from_integer(1.into()), n, o);
        }
        if normal.iter().any(|c| !c.is_zero()) {
            return Err("aggregated functional is not zero".into());
        }
        if !offset.is_negative() {
            return Err("aggregated constant is not negative".into());
        }
        Ok(())
    }
}

/// A single inequality `normal . x <= offset` together with the multipliers
/// that derive it from a set's rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedInequality {
    #[serde(with = "serde_qvec")]
    pub normal: Vec<Rational>,
    #[serde(with = "serde_q")]
    pub offset: Rational,
    pub multipliers: SetMultipliers,
}

impl DerivedInequality {
    /// Checks that the multipliers derive a row at least as strong.
    pub fn verify(&self, set: &Polyhedron) -> Result<(), String> {
        let (n, o) = self.multipliers.aggregate(set)?;
        if n != self.normal {
            return Err("multipliers do not reproduce the normal".into());
        }
        if o > self.offset {
            return Err("multipliers give a larger offset".into());
        }
        Ok(())
    }
}

/// Every checkable claim the toolkit emits, bundled with the data it is
/// about so that [`Certificate::verify`] needs nothing else.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `point` lies in every set.
    CommonPoint { sets: Vec<Polyhedron>, point: Point },
    /// Farkas multipliers showing the sets have no common point.
    Emptiness {
        sets: Vec<Polyhedron>,
        certificate: EmptinessCertificate,
    },
    /// Halfspaces containing each set whose intersection is empty.
    SeparatingHalfspaces { separation: SeparationCertificate },
    /// Every set meets at least one of the points or flats.
    Transversal { sets: Vec<Polyhedron>, objects: Vec<Payload> },
    /// Vertex set hitting every edge.
    HypergraphTransversal {
        hypergraph: Hypergraph,
        transversal: TransversalResult,
    },
    FractionalTransversal {
        hypergraph: Hypergraph,
        result: FractionalResult,
    },
    FractionalMatching {
        hypergraph: Hypergraph,
        result: FractionalResult,
    },
    BMatching { hypergraph: Hypergraph, matching: BMatching },
    /// A point, line or hyperplane alternative for the listed classes.
    Dichotomy {
        classes: Vec<Vec<Polyhedron>>,
        outcome: DichotomyOutcome,
    },
    /// A point of the sets strictly inside `face` relative to its carrier.
    RelativeInterior {
        sets: Vec<Polyhedron>,
        face: Polyhedron,
        certificate: RelintCertificate,
    },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::CommonPoint { .. } => "common_point",
            Certificate::Emptiness { .. } => "emptiness",
            Certificate::SeparatingHalfspaces { .. } => "separating_halfspaces",
            Certificate::Transversal { .. } => "transversal",
            Certificate::HypergraphTransversal { .. } => "hypergraph_transversal",
            Certificate::FractionalTransversal { .. } => "fractional_transversal",
            Certificate::FractionalMatching { .. } => "fractional_matching",
            Certificate::BMatching { .. } => "b_matching",
            Certificate::Dichotomy { .. } => "dichotomy",
            Certificate::RelativeInterior { .. } => "relative_interior",
        }
    }

    pub fn verify(&self) -> Result<(), String> {
        match self {
            Certificate::CommonPoint { sets, point } => match sets.iter().position(|s| !s.contains(point)) {
                Some(i) => Err(format!("point lies outside set {i}")),
                None => Ok(()),
            },
            Certificate::Emptiness { sets, certificate } => {
                certificate.verify(&sets.iter().collect::<Vec<_>>())
            }
            Certificate::SeparatingHalfspaces { separation } => separation.verify(),
            Certificate::Transversal { sets, objects } => {
                for (i, s) in sets.iter().enumerate() {
                    let mut hit = false;
                    for o in objects {
                        if meets(o, s)? {
                            hit = true;
                            break;
                        }
                    }
                    if !hit {
                        return Err(format!("set {i} meets none of the objects"));
                    }
                }
                Ok(())
            }
            Certificate::HypergraphTransversal { hypergraph, transversal } => transversal.verify(hypergraph),
            Certificate::FractionalTransversal { hypergraph, result } => result.verify_transversal(hypergraph),
            Certificate::FractionalMatching { hypergraph, result } => result.verify_matching(hypergraph),
            Certificate::BMatching { hypergraph, matching } => matching.verify(hypergraph),
            Certificate::Dichotomy { classes, outcome } => {
                outcome.verify(&classes.iter().map(Vec::as_slice).collect::<Vec<_>>())
            }
            Certificate::RelativeInterior { sets, face, certificate } => {
                certificate.verify(&sets.iter().collect::<Vec<_>>(), face)
            }
        }
    }
}

/// Exact membership check of a witness point on the object.
fn meets(o: &Payload, s: &Polyhedron) -> Result<bool, String> {
    match o {
        Payload::Point { point } => Ok(s.contains(point)),
        Payload::Flat { flat } => match flat_meet(flat, s).map_err(|e| e.to_string())? {
            Some(params) => Ok(s.contains(&flat.at(&params))),
            None => Ok(false),
        },
    }
}
