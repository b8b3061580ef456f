//! Quotient rings, finitely presented modules and finite-length modules.

mod finite;
mod hilbert;
mod module;
mod quotient;
#[cfg(test)]
mod tests;

pub use finite::{blocked_rank, tensor_map, Actor, FiniteLengthModule, Operator, SparseVec, Subspace};
pub use hilbert::{factor_one_minus_t, hilbert_numerator, HilbertSeries};
pub use module::{column_degree, FPModule, ResolutionLevel};
pub use quotient::{random_linear_forms, QuotientRing};

pub use module::finite_weights;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("the defining ideal is the unit ideal")]
    UnitIdeal,
    #[error("ideal is not primary to the maximal ideal of the variables")]
    NotMPrimary,
    #[error("positive-dimensional computations need a graded ring and graded module")]
    NotGraded,
    #[error("Artinian ring is not local at the origin")]
    NotLocal,
    #[error("ring is not Artinian")]
    NotArtinian,
    #[error("ring is not Gorenstein")]
    NotGorenstein,
    #[error("module is not maximal Cohen-Macaulay")]
    NotMaximalCohenMacaulay,
    #[error("modules live over different rings")]
    RingMismatch,
    #[error("shape mismatch: {0}")]
    Shape(String),
}
