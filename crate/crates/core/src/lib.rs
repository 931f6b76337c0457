//! Exact computations with Hom-algebras over the rationals: right
//! Hom-alternative axioms, twisting by self-morphisms, Hom-power associativity,
//! Hom-Jordan admissibility, idempotent decompositions, multiplication
//! operator identities and a free multiplicative Hom-algebra engine.

pub mod algebra;
pub mod constructions;
pub mod error;
pub mod idempotents;
pub mod io;
pub mod jordan;
pub mod linalg;
pub mod operators;
pub mod polarize;
pub mod powers;
pub mod report;
pub mod symbolic;

pub use algebra::{Element, HomAlgebra, SpaceId};
pub use error::{AlgebraError, Result};
pub use linalg::{Matrix, Scalar, Vector};
pub use report::{CheckReport, Witness};
