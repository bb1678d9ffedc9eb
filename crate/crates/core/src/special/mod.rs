//! Hypergeometric and Heun local series, and the catalog of named solutions built from them.

mod named;

pub use named::{build_named, catalog, nested_integral_pi_trans, Builder, NamedSeries, Nesting};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::diffop::OpError;
use crate::exactnum::{int, Rational};
use crate::paperdata::FixtureError;
use crate::series::{LaurentSeries, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecialError {
    #[error("lower parameter {0} is a nonpositive integer")]
    InvalidLowerParameter(Rational),
    #[error("Heun gamma = {0} is a nonpositive integer; no local solution at 0")]
    HeunGamma(Rational),
    #[error("Heun parameter a must be nonzero")]
    HeunSingularAtOrigin,
    #[error("order must be at least 1, got {0}")]
    InvalidOrder(i64),
    #[error("unknown named series {name:?}{}", hint(.near))]
    UnknownName { name: String, near: Vec<String> },
    #[error("could not reach x^{requested} for {name}: best working precision gave x^{reached}")]
    Precision { name: String, requested: i64, reached: i64 },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Op(#[from] OpError),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
}

fn hint(near: &[String]) -> String {
    if near.is_empty() {
        String::new()
    } else {
        format!("; did you mean {}?", near.join(", "))
    }
}

fn nonpositive_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_positive()
}

/// Parameters of a generalized hypergeometric series `pFq(upper; lower; z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypParams {
    upper: Vec<Rational>,
    lower: Vec<Rational>,
}

impl HypParams {
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>) -> Result<Self, SpecialError> {
        if let Some(bad) = lower.iter().find(|c| nonpositive_integer(c)) {
            return Err(SpecialError::InvalidLowerParameter(bad.clone()));
        }
        Ok(HypParams { upper, lower })
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }
}

/// `sum_n prod (upper)_n / prod (lower)_n * z^n / n!`, known below `z^order`.
pub fn hyp_series(p: &HypParams, order: i64) -> Result<LaurentSeries, SpecialError> {
    if order < 1 {
        return Err(SpecialError::InvalidOrder(order));
    }
    let mut cs = Vec::with_capacity(order as usize);
    let mut c = Rational::one();
    for n in 0..order {
        cs.push(c.clone());
        if c.is_zero() {
            continue;
        }
        let nn = int(n);
        let mut num = Rational::one();
        for a in &p.upper {
            num *= a + &nn;
        }
        let mut den = &nn + Rational::one();
        for b in &p.lower {
            den *= b + &nn;
        }
        c = c * num / den;
    }
    Ok(LaurentSeries::new(0, cs, order))
}

/// General Heun parameters; `epsilon` is fixed by `alpha + beta + 1 = gamma + delta + epsilon`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeunParams {
    pub a: Rational,
    pub q: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub delta: Rational,
}

impl HeunParams {
    pub fn new(
        a: Rational,
        q: Rational,
        alpha: Rational,
        beta: Rational,
        gamma: Rational,
        delta: Rational,
    ) -> Result<Self, SpecialError> {
        if a.is_zero() {
            return Err(SpecialError::HeunSingularAtOrigin);
        }
        if nonpositive_integer(&gamma) {
            return Err(SpecialError::HeunGamma(gamma));
        }
        Ok(HeunParams { a, q, alpha, beta, gamma, delta })
    }

    pub fn epsilon(&self) -> Rational {
        &self.alpha + &self.beta + Rational::one() - &self.gamma - &self.delta
    }
}

/// Local Heun solution at 0 with value 1. From the Heun equation,
/// `a (k+1)(k+gamma) c_{k+1} = [k((k-1+gamma)(1+a) + a delta + eps) + q] c_k - (k-1+alpha)(k-1+beta) c_{k-1}`.
pub fn heun_series(p: &HeunParams, order: i64) -> Result<LaurentSeries, SpecialError> {
    if order < 1 {
        return Err(SpecialError::InvalidOrder(order));
    }
    let eps = p.epsilon();
    let one = Rational::one();
    let mut cs: Vec<Rational> = vec![one.clone()];
    for k in 0..order - 1 {
        let kk = int(k);
        let km1 = &kk - &one;
        let mid = &kk * ((&km1 + &p.gamma) * (&one + &p.a) + &p.a * &p.delta + &eps) + &p.q;
        let mut num = mid * &cs[k as usize];
        if k > 0 {
            num -= (&km1 + &p.alpha) * (&km1 + &p.beta) * &cs[k as usize - 1];
        }
        let den = &p.a * (&kk + &one) * (&kk + &p.gamma);
        cs.push(num / den);
    }
    Ok(LaurentSeries::new(0, cs, order))
}
