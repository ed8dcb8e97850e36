//! JSON family documents. Numbers are exact strings such as `"3/7"` or
//! `"-1.25"`; sets are given by inequalities and equalities or by vertices.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geometry::{Halfspace, Hyperplane, Point, Polyhedron};
use crate::helly::ColoredFamily;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HRep {
    #[serde(default)]
    pub inequalities: Vec<Halfspace>,
    #[serde(default)]
    pub equalities: Vec<Hyperplane>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VRep {
    pub vertices: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetDocument {
    Hrep(HRep),
    Vrep(VRep),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDocument {
    #[serde(default)]
    pub label: String,
    pub sets: Vec<SetDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub schema_version: u32,
    pub dim: usize,
    pub classes: Vec<ClassDocument>,
}

impl FamilyDocument {
    /// Every set written in H-representation, classes labeled by index
    /// unless labels are given.
    pub fn from_family(fam: &ColoredFamily, labels: Option<&[String]>) -> Self {
        FamilyDocument {
            schema_version: SCHEMA_VERSION,
            dim: fam.dim,
            classes: fam
                .classes
                .iter()
                .enumerate()
                .map(|(i, c)| ClassDocument {
                    label: labels.and_then(|l| l.get(i).cloned()).unwrap_or_else(|| format!("class {i}")),
                    sets: c
                        .iter()
                        .map(|s| {
                            SetDocument::Hrep(HRep {
                                inequalities: s.inequalities.clone(),
                                equalities: s.equalities.clone(),
                            })
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Validates and converts. V-representations are turned into
    /// H-representations here.
    pub fn to_family(&self) -> Result<ColoredFamily, Error> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidInput(format!(
                "schema version {} is not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        let mut classes = Vec::with_capacity(self.classes.len());
        for class in &self.classes {
            let mut sets = Vec::with_capacity(class.sets.len());
            for s in &class.sets {
                sets.push(load_set(self.dim, s)?);
            }
            classes.push(sets);
        }
        ColoredFamily::new(self.dim, classes)
    }

    pub fn labels(&self) -> Vec<String> {
        self.classes.iter().map(|c| c.label.clone()).collect()
    }
}

fn load_set(dim: usize, s: &SetDocument) -> Result<Polyhedron, Error> {
    match s {
        SetDocument::Hrep(h) => {
            let ineq = h
                .inequalities
                .iter()
                .map(|r| Halfspace::new(r.normal.clone(), r.offset.clone()))
                .collect::<Result<_, _>>()?;
            let eq = h
                .equalities
                .iter()
                .map(|r| Hyperplane::new(r.normal.clone(), r.offset.clone()))
                .collect::<Result<_, _>>()?;
            Polyhedron::new(dim, ineq, eq)
        }
        SetDocument::Vrep(v) => {
            if dim > 3 {
                return Err(Error::InvalidInput("vertex lists are accepted only up to dimension 3".into()));
            }
            if let Some(p) = v.vertices.iter().find(|p| p.dim() != dim) {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            Polyhedron::from_vertices(dim, &v.vertices)
        }
    }
}

