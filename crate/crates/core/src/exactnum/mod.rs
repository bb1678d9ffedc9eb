//! Exact scalars and the polynomial rings built on them.
//!
//! Everything here is immutable once built and every operation is exact.

mod heugcd;
mod poly;
mod quadext;
mod ratfunc;
mod rational;
mod resultant;

pub(crate) use poly::format_terms;
pub use poly::Polynomial;
pub use quadext::QuadExt;
pub use ratfunc::RatFunc;
pub use rational::{abs, int, is_integral, parse_rational, rat, rational_pow, Rational};
pub use resultant::{poly_resultant, UPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("quadratic extension moduli differ")]
    ModulusMismatch,
    #[error("element has zero norm and cannot be inverted")]
    ZeroNorm,
    #[error("undefined resultant: both inputs are zero")]
    UndefinedResultant,
    #[error("cannot parse {0:?} as a rational")]
    Parse(String),
}
