use std::collections::BTreeMap;

use num_traits::Zero;

use super::{LaurentSeries, SeriesError};
use crate::exactnum::Rational;

/// Series in `x, y` truncated by total degree: only monomials with `i + j < trunc_total` are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivarSeries {
    coeffs: BTreeMap<(u32, u32), Rational>,
    trunc_total: u32,
}

impl BivarSeries {
    pub fn zero(trunc_total: u32) -> Self {
        BivarSeries { coeffs: BTreeMap::new(), trunc_total }
    }

    pub fn monomial(c: Rational, i: u32, j: u32, trunc_total: u32) -> Self {
        let mut s = Self::zero(trunc_total);
        if i + j < trunc_total && !c.is_zero() {
            s.coeffs.insert((i, j), c);
        }
        s
    }

    pub fn x(trunc_total: u32) -> Self {
        Self::monomial(Rational::from_integer(1.into()), 1, 0, trunc_total)
    }

    pub fn y(trunc_total: u32) -> Self {
        Self::monomial(Rational::from_integer(1.into()), 0, 1, trunc_total)
    }

    pub fn trunc_total(&self) -> u32 {
        self.trunc_total
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, rhs: &BivarSeries) -> Self {
        let t = self.trunc_total.min(rhs.trunc_total);
        let mut out = BTreeMap::new();
        for (&k, c) in self.coeffs.iter().chain(rhs.coeffs.iter()) {
            if k.0 + k.1 >= t {
                continue;
            }
            let e: &mut Rational = out.entry(k).or_insert_with(Rational::zero);
            *e += c;
        }
        out.retain(|_, c| !c.is_zero());
        BivarSeries { coeffs: out, trunc_total: t }
    }

    pub fn neg(&self) -> Self {
        BivarSeries { coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(), trunc_total: self.trunc_total }
    }

    pub fn sub(&self, rhs: &BivarSeries) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &BivarSeries) -> Self {
        let t = self.trunc_total.min(rhs.trunc_total);
        let mut out: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for (&(i1, j1), a) in &self.coeffs {
            for (&(i2, j2), b) in &rhs.coeffs {
                let k = (i1 + i2, j1 + j2);
                if k.0 + k.1 < t {
                    *out.entry(k).or_insert_with(Rational::zero) += a * b;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        BivarSeries { coeffs: out, trunc_total: t }
    }

    /// `P(x, x)` as a univariate series.
    pub fn diagonal(&self) -> LaurentSeries {
        let t = self.trunc_total as i64;
        let mut cs = vec![Rational::zero(); t as usize];
        for (&(i, j), c) in &self.coeffs {
            cs[(i + j) as usize] += c;
        }
        LaurentSeries::new(0, cs, t)
    }

    /// `P - (P + x)(P + y)`.
    pub fn staircase_residual(&self) -> Self {
        let t = self.trunc_total;
        let px = self.add(&Self::x(t));
        let py = self.add(&Self::y(t));
        self.sub(&px.mul(&py))
    }
}

/// The series `P(x, y)` with `P = (P + x)(P + y)`, by fixed-point iteration from `xy`.
/// Each round fixes at least one more total degree, so `trunc_total` rounds always suffice.
pub fn bivar_newton_solve(trunc_total: u32) -> Result<BivarSeries, SeriesError> {
    let x = BivarSeries::x(trunc_total);
    let y = BivarSeries::y(trunc_total);
    let mut p = x.mul(&y);
    let rounds = trunc_total as usize + 1;
    for _ in 0..rounds {
        let next = p.add(&x).mul(&p.add(&y));
        if next == p {
            return Ok(p);
        }
        p = next;
    }
    Err(SeriesError::NoConvergence { iterations: rounds })
}
