use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::SeriesError;
use crate::exactnum::{format_terms, rational_pow, Polynomial, RatFunc, Rational};

/// `sum c_k x^k` for `valuation <= k < trunc`, everything from `trunc` on unknown.
///
/// `coeffs` always spans exactly `valuation..trunc` and starts with a nonzero entry;
/// a series that vanishes below `trunc` has no coefficients and `valuation == trunc`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    val: i64,
    coeffs: Vec<Rational>,
    trunc: i64,
}

/// First exponent where two series differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub exponent: i64,
    pub expected: Rational,
    pub got: Rational,
}

/// Machine-readable form: `{"valuation", "trunc", "coeffs": ["p/q", ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub valuation: i64,
    pub trunc: i64,
    pub coeffs: Vec<String>,
}

fn lcm_denoms(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()))
}

fn scaled_ints(v: &[Rational], l: &BigInt) -> Vec<BigInt> {
    v.iter().map(|c| c.numer() * (l / c.denom())).collect()
}

impl LaurentSeries {
    pub fn new(val: i64, mut coeffs: Vec<Rational>, trunc: i64) -> Self {
        let want = (trunc - val).max(0) as usize;
        coeffs.resize(want, Rational::zero());
        let mut s = LaurentSeries { val, coeffs, trunc };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.val = self.trunc;
            }
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.val += k as i64;
            }
        }
    }

    pub fn from_integers(val: i64, cs: &[i64], trunc: i64) -> Self {
        Self::new(val, cs.iter().map(|&c| Rational::from_integer(c.into())).collect(), trunc)
    }

    pub fn zero(trunc: i64) -> Self {
        LaurentSeries { val: trunc, coeffs: Vec::new(), trunc }
    }

    pub fn constant(c: Rational, trunc: i64) -> Self {
        Self::new(0, vec![c], trunc)
    }

    pub fn one(trunc: i64) -> Self {
        Self::constant(Rational::one(), trunc)
    }

    pub fn x(trunc: i64) -> Self {
        Self::monomial(Rational::one(), 1, trunc)
    }

    pub fn monomial(c: Rational, k: i64, trunc: i64) -> Self {
        Self::new(k, vec![c], trunc)
    }

    pub fn from_poly(p: &Polynomial, trunc: i64) -> Self {
        Self::new(0, p.coeffs().to_vec(), trunc)
    }

    /// Laurent expansion at 0 of a rational function, known below `x^trunc`.
    pub fn from_ratfunc(r: &RatFunc, trunc: i64) -> Result<Self, SeriesError> {
        if r.is_zero() {
            return Ok(Self::zero(trunc));
        }
        let vd = r.den().valuation().expect("nonzero denominator");
        // at least one term so the unit part is invertible; the final truncate trims it back
        let work = (trunc + vd as i64).max(1);
        let unit = LaurentSeries::new(0, r.den().coeffs()[vd..].to_vec(), work);
        let num = Self::from_poly(r.num(), work);
        Ok(num.mul(&unit.inv()?).shift(-(vd as i64)).truncate(trunc))
    }

    /// `None` when the series vanishes below `trunc`.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// Coefficients from the valuation up to `trunc`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.first()
    }

    /// Coefficient of `x^e`; zero below the valuation, `None` from `trunc` on.
    pub fn get(&self, e: i64) -> Option<Rational> {
        if e >= self.trunc {
            None
        } else if e < self.val {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[(e - self.val) as usize].clone())
        }
    }

    /// Coefficient of `x^e`; panics past the truncation.
    pub fn coeff(&self, e: i64) -> Rational {
        self.get(e).unwrap_or_else(|| panic!("coefficient x^{e} requested beyond O(x^{})", self.trunc))
    }

    pub fn truncate(&self, t: i64) -> Self {
        if t >= self.trunc {
            return self.clone();
        }
        let keep = (t - self.val).max(0) as usize;
        LaurentSeries::new(self.val, self.coeffs[..keep.min(self.coeffs.len())].to_vec(), t)
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries { val: self.val + k, coeffs: self.coeffs.clone(), trunc: self.trunc + k }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.trunc);
        }
        LaurentSeries { val: self.val, coeffs: self.coeffs.iter().map(|a| a * c).collect(), trunc: self.trunc }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&Rational::from_integer(c.into()))
    }

    /// Product known below `min(cap, pessimistic bound)`.
    pub fn mul_capped(&self, rhs: &LaurentSeries, cap: i64) -> Self {
        let val = self.val + rhs.val;
        let trunc = (self.trunc + rhs.val).min(rhs.trunc + self.val).min(cap);
        if self.is_zero() || rhs.is_zero() || trunc <= val {
            return Self::zero(trunc);
        }
        let n = (trunc - val) as usize;
        let la = lcm_denoms(&self.coeffs);
        let lb = lcm_denoms(&rhs.coeffs);
        let a = scaled_ints(&self.coeffs[..n.min(self.coeffs.len())], &la);
        let b = scaled_ints(&rhs.coeffs[..n.min(rhs.coeffs.len())], &lb);
        let mut out = vec![BigInt::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n - i) {
                out[i + j] += x * y;
            }
        }
        let l = la * lb;
        LaurentSeries::new(val, out.into_iter().map(|c| Rational::new(c, l.clone())).collect(), trunc)
    }

    pub fn mul(&self, rhs: &LaurentSeries) -> Self {
        self.mul_capped(rhs, i64::MAX)
    }

    /// Multiplicative inverse, keeping the relative precision.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::DivisionByZero { trunc: self.trunc });
        }
        let n = self.coeffs.len();
        let c0 = self.coeffs[0].recip();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        out.push(c0.clone());
        for k in 1..n {
            let mut s = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s += &self.coeffs[j] * &out[k - j];
                }
            }
            out.push(-s * &c0);
        }
        Ok(LaurentSeries::new(-self.val, out, -self.val + n as i64))
    }

    pub fn div(&self, rhs: &LaurentSeries) -> Result<Self, SeriesError> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// `self^e` on the principal branch: the leading constant `c` must have a rational
    /// `e`-th power (positive `c` for non-integer `e`) and `valuation * e` must be an integer.
    pub fn pow(&self, e: &Rational) -> Result<Self, SeriesError> {
        if self.is_zero() {
            if !e.is_positive() {
                return Err(SeriesError::DivisionByZero { trunc: self.trunc });
            }
            let t = Rational::from_integer(self.trunc.into()) * e;
            return Ok(Self::zero(t.ceil().to_integer().try_into().unwrap_or(i64::MAX)));
        }
        let c = &self.coeffs[0];
        let ve = Rational::from_integer(self.val.into()) * e;
        if !ve.is_integer() {
            return Err(SeriesError::FractionalValuation { valuation: self.val, exponent: Box::new(e.clone()) });
        }
        let cpow = match rational_pow(c, e) {
            Some(v) => v,
            None if !e.is_integer() && !c.is_positive() => {
                return Err(SeriesError::NonPositiveBase {
                    constant: Box::new(c.clone()),
                    exponent: Box::new(e.clone()),
                })
            }
            None => {
                return Err(SeriesError::IrrationalRoot {
                    constant: Box::new(c.clone()),
                    exponent: Box::new(e.clone()),
                })
            }
        };
        let n = self.coeffs.len();
        let cinv = c.recip();
        let u: Vec<Rational> = self.coeffs.iter().map(|a| a * &cinv).collect();
        // J.C.P. Miller: u g' = e u' g with g_0 = 1
        let e1 = e + Rational::one();
        let mut g: Vec<Rational> = Vec::with_capacity(n);
        g.push(Rational::one());
        for k in 1..n {
            let mut s = Rational::zero();
            for j in 1..=k {
                if u[j].is_zero() {
                    continue;
                }
                let w = &e1 * Rational::from_integer(j.into()) - Rational::from_integer(k.into());
                s += w * &u[j] * &g[k - j];
            }
            g.push(s / Rational::from_integer(k.into()));
        }
        let v: i64 = ve.to_integer().try_into().expect("valuation fits in i64");
        Ok(LaurentSeries::new(v, g.into_iter().map(|a| a * &cpow).collect(), v + n as i64))
    }

    pub fn pow_int(&self, k: i64) -> Result<Self, SeriesError> {
        self.pow(&Rational::from_integer(k.into()))
    }

    pub fn derivative(&self) -> Self {
        let cs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * Rational::from_integer((self.val + i as i64).into()))
            .collect();
        LaurentSeries::new(self.val - 1, cs, self.trunc - 1)
    }

    /// Antiderivative with zero constant; fails on a nonzero `x^-1` coefficient.
    pub fn integrate(&self) -> Result<Self, SeriesError> {
        if let Some(r) = self.get(-1) {
            if !r.is_zero() {
                return Err(SeriesError::LogarithmicObstruction { residue: Box::new(r) });
            }
        }
        let cs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let e = self.val + i as i64;
                if e == -1 {
                    Rational::zero()
                } else {
                    c / Rational::from_integer((e + 1).into())
                }
            })
            .collect();
        Ok(LaurentSeries::new(self.val + 1, cs, self.trunc + 1))
    }

    /// `outer(inner(x))` by Horner's rule; `inner` must vanish at the origin.
    pub fn compose(&self, inner: &LaurentSeries) -> Result<Self, SeriesError> {
        if !self.is_zero() && self.val < 0 {
            return Err(SeriesError::NegativeOuterValuation { valuation: self.val });
        }
        if inner.val <= 0 && !inner.is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        let vi = inner.val.max(1);
        let target = inner.trunc.min(vi.saturating_mul(self.trunc));
        let terms = self.trunc.min((target + vi - 1) / vi).max(0);
        let mut acc = Self::zero(target);
        for k in (0..terms).rev() {
            let c = self.get(k).unwrap();
            acc = acc.mul_capped(inner, target);
            if !c.is_zero() {
                acc = &acc + &Self::constant(c, target);
            }
        }
        Ok(acc.truncate(target))
    }

    /// First exponent below both truncations (and `upto`, if given) where the series differ.
    pub fn first_mismatch(&self, expected: &LaurentSeries, upto: Option<i64>) -> Option<Mismatch> {
        let hi = self.trunc.min(expected.trunc).min(upto.unwrap_or(i64::MAX));
        let lo = self.val.min(expected.val);
        (lo..hi).find_map(|e| {
            let a = self.coeff(e);
            let b = expected.coeff(e);
            (a != b).then_some(Mismatch { exponent: e, expected: b, got: a })
        })
    }

    /// Exponent bound up to which two series can be compared.
    pub fn common_trunc(&self, other: &LaurentSeries) -> i64 {
        self.trunc.min(other.trunc)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// First exponent with a non-integer coefficient.
    pub fn first_non_integer(&self) -> Option<(i64, Rational)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_integer()).map(|(i, c)| (self.val + i as i64, c.clone()))
    }

    pub fn record(&self) -> SeriesRecord {
        SeriesRecord {
            valuation: self.val,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn from_record(r: &SeriesRecord) -> Result<Self, SeriesError> {
        let cs = r.coeffs.iter().map(|c| crate::exactnum::parse_rational(c)).collect::<Result<Vec<_>, _>>()?;
        Ok(LaurentSeries::new(r.valuation, cs, r.trunc))
    }

    /// Print as `c*v^k + ... + O(v^trunc)` in the variable `var`.
    pub fn render(&self, var: &str) -> String {
        let body = format_terms(self.coeffs.iter().enumerate().map(|(i, c)| (self.val + i as i64, c)), var);
        let o = match self.trunc {
            0 => "O(1)".to_string(),
            1 => format!("O({var})"),
            t => format!("O({var}^{t})"),
        };
        if body.is_empty() {
            o
        } else {
            format!("{body} + {o}")
        }
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

impl<'a> Add<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        let trunc = self.trunc.min(rhs.trunc);
        let val = self.val.min(rhs.val).min(trunc);
        let zero = Rational::zero();
        let cs = (val..trunc)
            .map(|e| {
                let a = if e >= self.val { &self.coeffs[(e - self.val) as usize] } else { &zero };
                let b = if e >= rhs.val { &rhs.coeffs[(e - rhs.val) as usize] } else { &zero };
                a + b
            })
            .collect();
        LaurentSeries::new(val, cs, trunc)
    }
}

impl<'a> Sub<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self + &(-rhs)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries { val: self.val, coeffs: self.coeffs.iter().map(|c| -c).collect(), trunc: self.trunc }
    }
}

impl Neg for LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        -&self
    }
}

impl<'a> Mul<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        LaurentSeries::mul(self, rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentSeries> for LaurentSeries {
            type Output = LaurentSeries;
            fn $m(self, rhs: LaurentSeries) -> LaurentSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
