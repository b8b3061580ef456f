//! Exact commutative algebra for Hilbert-Samuel style invariants of modules
//! over quotients of polynomial rings.

pub mod dualhs;
pub mod groebner;
pub mod homology;
pub mod linalg;
pub mod poly;
pub mod ring;
pub mod scalar;

pub use scalar::{Fp, Rational, Scalar};

/// The prime field with 32003 elements.
pub type F32003 = Fp<32003>;
