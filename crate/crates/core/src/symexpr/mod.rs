//! Exact polynomial arithmetic over a coordinate chart.
//!
//! Every other module computes with [`Poly`] components, so every "this tensor
//! vanishes" verdict reduces to an exact emptiness test on a term map.

mod chart;
mod parse;
mod poly;

use num_bigint::BigInt;
use thiserror::Error;

pub use chart::{ensure_same, is_identifier, same_chart, ChartSpace};
pub use parse::parse_expr;
pub use poly::{Monomial, Poly};

/// Reduced fraction with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for a small rational; panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("chart mismatch: {left} vs {right}")]
    ChartMismatch { left: String, right: String },
    #[error("coordinate index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("syntax error at column {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown identifier '{name}' at column {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("exponent at column {pos} is not a nonnegative integer literal")]
    BadExponent { pos: usize },
}
