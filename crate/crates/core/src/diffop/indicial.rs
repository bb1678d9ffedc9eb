use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{DiffOp, OpError};
use crate::exactnum::{int, Polynomial, RatFunc, Rational};
use crate::series::LaurentSeries;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Point {
    Finite(String),
    Infinity,
}

impl Point {
    pub fn finite(p: &Rational) -> Self {
        Point::Finite(p.to_string())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(p) => write!(f, "x = {p}"),
            Point::Infinity => write!(f, "x = infinity"),
        }
    }
}

/// Local exponents at a regular singular (or ordinary) point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicialData {
    pub point: Point,
    /// Indicial polynomial in the exponent variable.
    pub polynomial: Polynomial,
    /// Rational roots with multiplicity, ascending.
    pub exponents: Vec<Rational>,
    /// Monic factor carrying the irrational roots, if any.
    pub residual: Option<Polynomial>,
}

impl IndicialData {
    /// Multiset of exponents as `(root, multiplicity)`.
    pub fn multiplicities(&self) -> Vec<(Rational, usize)> {
        let mut out: Vec<(Rational, usize)> = Vec::new();
        for r in &self.exponents {
            match out.last_mut() {
                Some((v, m)) if v == r => *m += 1,
                _ => out.push((r.clone(), 1)),
            }
        }
        out
    }
}

/// `rho (rho-1) ... (rho-i+1)`.
pub(crate) fn falling_factorial(i: usize) -> Polynomial {
    let mut p = Polynomial::one();
    for k in 0..i {
        p = &p * &Polynomial::new(vec![int(-(k as i64)), int(1)]);
    }
    p
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rational roots with multiplicity (ascending) and the monic cofactor without rational roots.
pub fn rational_roots(p: &Polynomial) -> (Vec<Rational>, Option<Polynomial>) {
    let mut roots = Vec::new();
    let mut rest = p.clone();
    if rest.is_zero() {
        return (roots, None);
    }
    while rest.degree().unwrap_or(0) > 0 && rest.coeff(0).is_zero() {
        roots.push(Rational::zero());
        rest = rest.div_exact(&Polynomial::x()).unwrap();
    }
    if rest.degree().unwrap_or(0) > 0 {
        let (_, ints) = rest.primitive_integer();
        let lead = ints.last().unwrap().clone();
        let tail = ints[0].clone();
        let mut cands: Vec<Rational> = Vec::new();
        for q in divisors(&lead) {
            for pnum in divisors(&tail) {
                let r = Rational::new(pnum, q.clone());
                cands.push(r.clone());
                cands.push(-r);
            }
        }
        cands.sort();
        cands.dedup();
        for r in cands {
            let lin = Polynomial::new(vec![-r.clone(), int(1)]);
            while rest.degree().unwrap_or(0) > 0 && rest.eval(&r).is_zero() {
                roots.push(r.clone());
                rest = rest.div_exact(&lin).unwrap();
            }
        }
    }
    roots.sort();
    let residual = (rest.degree().unwrap_or(0) > 0).then(|| rest.monic());
    (roots, residual)
}

impl DiffOp<RatFunc> {
    /// Indicial data at `x = 0` for the operator as given.
    fn indicial_at_zero(&self, point: Point) -> Result<IndicialData, OpError> {
        let n = self.order().ok_or(OpError::ZeroOperator)?;
        let top = self.coeffs[n].clone();
        let mut poly = Polynomial::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let a = c.checked_div(&top)?;
            let Some(v) = a.valuation() else { continue };
            let need = i as i64 - n as i64;
            if v < need {
                return Err(OpError::IrregularSingularity { point: point.to_string() });
            }
            let s = LaurentSeries::from_ratfunc(&a, need + 1)?;
            let lead = s.coeff(need);
            poly = &poly + &falling_factorial(i).scale(&lead);
        }
        let (exponents, residual) = rational_roots(&poly);
        Ok(IndicialData { point, polynomial: poly, exponents, residual })
    }

    /// Exponents at a finite point; errors on an irregular singularity.
    pub fn indicial_exponents(&self, p: &Rational) -> Result<IndicialData, OpError> {
        let shifted = if p.is_zero() { self.clone() } else { self.shifted(p)? };
        shifted.indicial_at_zero(Point::finite(p))
    }

    /// Exponents at infinity, via `x = 1/t`, `D_x = -t^2 D_t`.
    pub fn indicial_at_infinity(&self) -> Result<IndicialData, OpError> {
        let one = RatFunc::one();
        let t2 = RatFunc::from_poly(Polynomial::monomial(int(-1), 2));
        let dx = DiffOp::new(vec![RatFunc::zero(), t2]);
        let mut power = DiffOp::identity(&one);
        let mut total: DiffOp<RatFunc> = DiffOp::new(Vec::new());
        for c in &self.coeffs {
            let term = DiffOp::multiplication(c.invert_variable()).mul(&power)?;
            total = total.add(&term)?;
            power = dx.mul(&power)?;
        }
        total.indicial_at_zero(Point::Infinity)
    }
}

pub(crate) fn small_int(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}
