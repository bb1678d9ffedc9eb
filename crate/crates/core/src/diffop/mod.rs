//! Linear differential operators `sum r_i(x) D^i` over a differential coefficient ring.

mod apply;
mod frobenius;
mod indicial;
mod ring;

pub use frobenius::FrobeniusSolution;
pub use indicial::{rational_roots, IndicialData, Point};
pub use ring::DiffRing;

use std::fmt;

use thiserror::Error;

use crate::exactnum::{int, ExactError, Polynomial, QuadExt, RatFunc, Rational};
use crate::series::{LaurentSeries, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("operator coefficients live in different rings")]
    RingMismatch,
    #[error("insufficient precision: need {required} known terms, have {available}")]
    InsufficientPrecision { required: i64, available: i64 },
    #[error("{point} is an irregular singular point")]
    IrregularSingularity { point: String },
    #[error("indicial exponents at 0 are not all integers (out of scope): residual factor {residual}")]
    NonIntegerExponents { residual: String },
    #[error("zero operator")]
    ZeroOperator,
    #[error("log tower exceeds the operator order")]
    LogOverflow,
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `coeffs[i]` multiplies `D^i`; trailing zero coefficients are dropped, so the
/// zero operator has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp<C> {
    coeffs: Vec<C>,
}

impl<C: DiffRing> DiffOp<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.ring_is_zero()) {
            coeffs.pop();
        }
        DiffOp { coeffs }
    }

    /// The operator `c` (order zero).
    pub fn multiplication(c: C) -> Self {
        Self::new(vec![c])
    }

    pub fn identity(like: &C) -> Self {
        Self::new(vec![like.ring_one_like()])
    }

    /// `D` itself.
    pub fn dx(like: &C) -> Self {
        Self::new(vec![like.ring_zero_like(), like.ring_one_like()])
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&C> {
        self.coeffs.get(i)
    }

    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, rhs: &DiffOp<C>) -> Result<Self, OpError> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.ring_add(b)?,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Ok(Self::new(out))
    }

    /// Noncommutative product `self * rhs`, using `D^i b = sum_k C(i,k) b^(k) D^(i-k)`.
    pub fn mul(&self, rhs: &DiffOp<C>) -> Result<Self, OpError> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(DiffOp { coeffs: Vec::new() });
        }
        let mut out: Vec<Option<C>> = vec![None; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (j, b) in rhs.coeffs.iter().enumerate() {
            let mut bk = b.clone();
            let mut derivs = Vec::with_capacity(self.coeffs.len());
            for _ in 0..self.coeffs.len() {
                derivs.push(bk.clone());
                bk = bk.ring_derivative();
            }
            for (i, a) in self.coeffs.iter().enumerate() {
                if a.ring_is_zero() {
                    continue;
                }
                let mut binom = int(1);
                for (k, bder) in derivs.iter().enumerate().take(i + 1) {
                    if k > 0 {
                        binom = binom * int((i + 1 - k) as i64) / int(k as i64);
                    }
                    if bder.ring_is_zero() {
                        continue;
                    }
                    let term = a.ring_mul(bder)?.ring_scale(&binom);
                    let slot = &mut out[i + j - k];
                    *slot = Some(match slot.take() {
                        None => term,
                        Some(acc) => acc.ring_add(&term)?,
                    });
                }
            }
        }
        let like = self.coeffs[0].ring_zero_like();
        Ok(Self::new(out.into_iter().map(|c| c.unwrap_or_else(|| like.clone())).collect()))
    }

    pub fn map<D: DiffRing, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<DiffOp<D>, E> {
        Ok(DiffOp::new(self.coeffs.iter().map(f).collect::<Result<Vec<_>, _>>()?))
    }
}

/// Whether `a * b == c * d` as operators, by exact coefficient comparison.
pub fn check_intertwiner<C: DiffRing>(
    a: &DiffOp<C>,
    b: &DiffOp<C>,
    c: &DiffOp<C>,
    d: &DiffOp<C>,
) -> Result<bool, OpError> {
    Ok(a.mul(b)? == c.mul(d)?)
}

impl DiffOp<RatFunc> {
    /// Build from `(power of D, numerator, denominator)` triples.
    pub fn from_parts(parts: &[(usize, Polynomial, Polynomial)]) -> Result<Self, OpError> {
        let n = parts.iter().map(|p| p.0).max().ok_or(OpError::ZeroOperator)?;
        let mut cs = vec![RatFunc::zero(); n + 1];
        for (i, num, den) in parts {
            cs[*i] = &cs[*i] + &RatFunc::new(num.clone(), den.clone())?;
        }
        Ok(Self::new(cs))
    }

    /// Cleared denominators, no common polynomial factor, primitive integer coefficients, positive top leading
    /// coefficient. Two operators differing by a rational-function factor share this form.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut l = Polynomial::one();
        for c in &self.coeffs {
            let g = l.gcd(c.den());
            l = &l * &c.den().div_exact(&g).unwrap();
        }
        let polys: Vec<Polynomial> = self.coeffs.iter().map(|c| c.num() * &l.div_exact(c.den()).unwrap()).collect();
        let g = polys.iter().fold(Polynomial::zero(), |g, p| g.gcd(p));
        let polys: Vec<Polynomial> = polys.iter().map(|p| p.div_exact(&g).unwrap()).collect();
        // the concatenation ends with the top leading coefficient, so its primitive
        // scale also fixes the sign
        let joined = Polynomial::new(polys.iter().flat_map(|p| p.coeffs().iter().cloned()).collect());
        let (s, _) = joined.primitive_integer();
        let inv = s.recip();
        DiffOp::new(polys.iter().map(|p| RatFunc::from_poly(p.scale(&inv))).collect())
    }

    /// Expand every coefficient at 0, each known below `x^trunc`.
    pub fn to_series(&self, trunc: i64) -> Result<DiffOp<LaurentSeries>, OpError> {
        self.map(|c| LaurentSeries::from_ratfunc(c, trunc).map_err(OpError::from))
    }

    /// Embed into `Q(x)[U]/(U^2 - d)`.
    pub fn to_quadext(&self, d: &Polynomial) -> DiffOp<QuadExt> {
        DiffOp::new(self.coeffs.iter().map(|c| QuadExt::from_ratfunc(c.clone(), d)).collect())
    }

    /// Substitute `x -> x + p`.
    pub fn shifted(&self, p: &Rational) -> Result<Self, OpError> {
        let lin = Polynomial::new(vec![p.clone(), int(1)]);
        self.map(|c| c.compose(&lin).map_err(OpError::from))
    }
}

impl<C: DiffRing + fmt::Display> fmt::Display for DiffOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.ring_is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*D")?,
                _ => write!(f, "({c})*D^{i}")?,
            }
        }
        Ok(())
    }
}
