//! Truncated series over the rationals.
//!
//! Every series carries the exponent from which its coefficients are unknown (`trunc`)
//! and all arithmetic propagates that bound pessimistically.

mod bivar;
mod laurent;
mod log;

pub use bivar::{bivar_newton_solve, BivarSeries};
pub use laurent::{LaurentSeries, Mismatch, SeriesRecord};
pub use log::LogSeries;

use thiserror::Error;

use crate::exactnum::{ExactError, Rational};

/// Working truncation order used when a caller does not choose one.
pub const DEFAULT_ORDER: i64 = 60;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("division by a series that vanishes below O(x^{trunc})")]
    DivisionByZero { trunc: i64 },
    #[error("cannot take power {exponent} of a series with non-positive leading constant {constant}")]
    NonPositiveBase { constant: Box<Rational>, exponent: Box<Rational> },
    #[error("leading constant {constant} has no rational power {exponent}")]
    IrrationalRoot { constant: Box<Rational>, exponent: Box<Rational> },
    #[error("valuation {valuation} times exponent {exponent} is not an integer (Puiseux series unsupported)")]
    FractionalValuation { valuation: i64, exponent: Box<Rational> },
    #[error("pullback must vanish at origin")]
    NonzeroConstant,
    #[error("outer series of a composition has negative valuation {valuation}")]
    NegativeOuterValuation { valuation: i64 },
    #[error("logarithmic obstruction: residue {residue} at x^-1")]
    LogarithmicObstruction { residue: Box<Rational> },
    #[error("insufficient precision: need {required} known coefficients, have {available}")]
    InsufficientPrecision { required: i64, available: i64 },
    #[error("fixed-point iteration did not settle within {iterations} rounds")]
    NoConvergence { iterations: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
}
