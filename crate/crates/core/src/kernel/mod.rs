//! Exact value domains: integers, rationals, sparse Laurent polynomials,
//! dense univariate polynomials and truncated ε-series.

mod laurent;
mod monomial;
pub mod qarith;
mod rational;
mod series;
pub mod text;
mod unipoly;
mod vars;

pub use laurent::{LaurentPoly, LaurentStats};
pub use monomial::Monomial;
pub use num_bigint::BigInt;
pub use rational::{bigint_log, parse_rational, rational_sqrt, rational_to_f64, Rational};
pub use series::{EpsSeries, DEFAULT_ORDER};
pub use text::ParseError;
pub use unipoly::{Degree, UniPoly};
pub use vars::{VarSet, MAX_VARS};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("division is not exact")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable {0} has a negative exponent and was assigned 0")]
    ZeroSubstitution(String),
    #[error("series divisor is zero to the stored order")]
    DivisorZeroToOrder,
    #[error("leading coefficient {0} is not the square of a rational")]
    NonSquareLeadingCoefficient(String),
    #[error("series valuation {0} is odd")]
    OddValuation(i64),
    #[error("wrong number of point values: expected {expected}, got {got}")]
    PointArity { expected: usize, got: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("value is not representable: {0}")]
    NotRepresentable(String),
}
