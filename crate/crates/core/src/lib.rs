//! Exact-arithmetic toolkit for finite-dimensional hom-associative algebras
//! given by structure constants: axiom and identity checkers, derived
//! subspaces, twisting and de-twisting constructions, twist enumeration, and
//! a pruned exhaustive model search over small prime fields.
//!
//! Everything works over an exact base field (arbitrary-precision rationals
//! or GF(p) with p < 2^16); there is no floating point anywhere, so every
//! check is a proof at the chosen dimension.

pub mod algebra;
pub mod analysis;
pub mod field;
pub mod fixtures;
pub mod format;
pub mod generate;
pub mod linalg;
pub mod search;
pub mod truncated;
pub mod twisting;

pub use algebra::{
    Algebra, AlgebraError, CheckOutcome, Element, HomAlgebra, LinearMap, PairWitness,
    TripleWitness, UnitReport,
};
pub use field::{FieldError, FieldSpec, Scalar};
pub use linalg::{LinalgError, Matrix, Subspace, Vector};
