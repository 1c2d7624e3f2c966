//! Exact arithmetic: rationals, multivariate polynomials, polynomial vector fields,
//! and the gap-interval construction for one-variable polynomial families.

mod field;
mod gap;
pub mod linalg;
mod parse;
mod poly;
pub mod rational;

pub use field::PolyVectorField;
pub use gap::{gap_intervals, gap_verify, GapIntervalSet, GapReport};
pub use parse::parse_poly;
pub use poly::{var_list, Exponent, MultiPoly, PolyF64};
pub use rational::{factorial, int, rat, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymError {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("cannot parse '{input}': {reason}")]
    Parse { input: String, reason: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("divisor does not divide the polynomial exactly")]
    NotDivisible,
    #[error("{0}")]
    Argument(String),
}
