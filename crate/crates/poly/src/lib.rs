//! Exact polynomial and ideal arithmetic over the rationals.
//!
//! Polynomials are sparse maps from exponent vectors to [`Rational`] coefficients.
//! Ideals cache a reduced Gröbner basis under the default order of their
//! [`VarContext`] (graded reverse lexicographic, formal parameters in a last block).

mod context;
mod groebner;
mod ideal;
mod linalg;
mod monomial;
mod parse;
mod polynomial;
mod rational;
mod ratfun;
mod univariate;

pub use context::VarContext;
pub use groebner::{groebner_basis, normal_form};
pub use ideal::Ideal;
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_polynomial, parse_rational_function};
pub use polynomial::Polynomial;
pub use rational::{int, is_zero_or_one, parse_rational, rat, Rational};
pub use ratfun::RationalFunction;
pub use univariate::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("undefined substitution")]
    UndefinedSubstitution,
    #[error("ring mismatch: expected {expected} variables, found {found}")]
    RingMismatch { expected: usize, found: usize },
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("operation needs an ideal without formal parameters")]
    ParametersUnsupported,
    #[error("unsupported multiplicity")]
    UnsupportedMultiplicity,
}
