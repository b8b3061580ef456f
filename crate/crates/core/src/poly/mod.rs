//! Multivariate polynomials with total term orders.

mod monomial;
mod parse;
mod polynomial;

pub use monomial::{monomials_of_degree, Monomial, MonomialOrder};
pub use polynomial::{ArithOp, PolyRing, Polynomial, RingSignature};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("invalid variable name `{0}`")]
    BadVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("polynomials belong to different rings")]
    SignatureMismatch,
}
