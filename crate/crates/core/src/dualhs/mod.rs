//! Dual Hilbert-Samuel functions and the quantities built from them.

mod claims;
mod invariants;
mod numerical;
mod reduction;
mod semigroup;

use thiserror::Error;

use crate::homology::HomologyError;
use crate::ring::RingError;

pub use claims::{verify, Check, ClaimId, Instance, Verdict, VerificationReport};
pub use invariants::{
    delta, delta_target, dual_hilbert_coefficients, ext1_dual_function, fit_table, hilbert_coefficients, phi, ulrich_check,
    zero_dim_report, Coefficients, UlrichReport, ZeroDimReport,
};
pub use numerical::{binomial, fit_numerical, FitError, NumericalFunction, SeriesNumerator};
pub use reduction::{filtration_check, minimal_reduction, reduce_by, superficial_element, ReductionData, SuperficialOptions, SuperficialReport};
pub use semigroup::SemigroupQuotient;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Fit(#[from] FitError),
    #[error("postulation not reached within {nmax} values")]
    PostulationNotReached { nmax: usize },
    #[error("reduction not found after {attempts} attempts")]
    ReductionNotFound { attempts: usize },
    #[error("no superficial element needed in dimension 0")]
    ZeroDimensional,
    #[error("no superficial element found after {attempts} attempts")]
    SuperficialNotFound { attempts: usize },
    #[error("hypotheses unmet: {0}")]
    HypothesesUnmet(String),
    #[error("invalid semigroup data: {0}")]
    Semigroup(String),
}

/// Knobs shared by the randomized and table-driven computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub seed: u64,
    /// Window length for superficial-element checks.
    pub window: usize,
    /// Largest `n` a value table may be extended to; defaults to
    /// `4d + 2r + 16`.
    pub nmax: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 0, window: 6, nmax: None }
    }
}
