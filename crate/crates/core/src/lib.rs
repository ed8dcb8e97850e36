//! Exact rational machinery for colorful Helly-type statements: certifying
//! linear programming, H-polyhedra, hypergraph transversals, colorful
//! transversal constructions and the lower-bound families that go with them.

pub mod budget;
pub mod certificate;
pub mod constructions;
pub mod document;
pub mod error;
pub mod geometry;
pub mod helly;
pub mod hypergraph;
pub mod linalg;
pub mod lp;
pub mod rational;

pub use budget::Budget;
pub use error::{Error, Result};
pub use rational::Rational;
