//! Construction and report documents.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use helly_core::certificate::Certificate;
use helly_core::constructions::{PlanarConstruction, SimplexConstruction};

pub use helly_core::document::{FamilyDocument, SCHEMA_VERSION};

/// A generated family with everything needed to re-verify it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstructionDocument {
    Figure1 { d: usize, n: usize },
    Planar { construction: PlanarConstruction },
    Simplex { construction: SimplexConstruction },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// The claim was verified or the quantity computed.
    Verified,
    /// The property fails; the certificates show why.
    Refuted,
    /// A search budget was exceeded.
    Scale,
    /// The input could not be used.
    InputError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Verified => 0,
            Status::Refuted => 2,
            Status::Scale => 3,
            Status::InputError => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub command: String,
    /// SHA-256 of the input bytes, or of the parameters for generators.
    pub input_digest: String,
    #[serde(default)]
    pub seed: Option<u64>,
    pub status: Status,
    pub exit_code: i32,
    #[serde(default)]
    pub results: serde_json::Value,
    #[serde(default)]
    pub certificates: Vec<Certificate>,
    /// Quantities reported without a proof of optimality.
    #[serde(default)]
    pub upper_bound_only: Vec<String>,
    #[serde(default)]
    pub log: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub wall_time_ms: u128,
}

pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}
