use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// Arbitrary-precision rational; always stored reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let s = s.trim();
    let bad = || ExactError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ExactError::ZeroDenominator);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn exact_int_root(n: &BigInt, k: u32) -> Option<BigInt> {
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// `c^e` when the result is rational. For non-integer `e` only positive `c`
/// is accepted and the positive real root is returned.
pub fn rational_pow(c: &Rational, e: &Rational) -> Option<Rational> {
    if e.is_integer() {
        let k: i64 = e.to_integer().try_into().ok()?;
        if c.is_zero() {
            return if k > 0 { Some(Rational::zero()) } else { None };
        }
        return Some(num_traits::pow::Pow::pow(c, k as i32));
    }
    if !c.is_positive() {
        return None;
    }
    let q: u32 = e.denom().try_into().ok()?;
    let p: i64 = e.numer().try_into().ok()?;
    let rn = exact_int_root(c.numer(), q)?;
    let rd = exact_int_root(c.denom(), q)?;
    let root = Rational::new(rn, rd);
    Some(num_traits::pow::Pow::pow(&root, p as i32))
}

pub fn is_integral(c: &Rational) -> bool {
    c.denom().is_one()
}

pub fn abs(c: &Rational) -> Rational {
    c.abs()
}
