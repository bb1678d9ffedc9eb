use std::fmt;

use num_traits::One;

use super::{int, ExactError, Polynomial, RatFunc};

/// `a + b*U` in Q(x)[U]/(U^2 - d).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: RatFunc,
    b: RatFunc,
    d: Polynomial,
}

impl QuadExt {
    pub fn new(a: RatFunc, b: RatFunc, d: Polynomial) -> Self {
        QuadExt { a, b, d }
    }

    pub fn from_ratfunc(a: RatFunc, d: &Polynomial) -> Self {
        QuadExt { a, b: RatFunc::zero(), d: d.clone() }
    }

    /// The generator `U` itself.
    pub fn u(d: &Polynomial) -> Self {
        QuadExt { a: RatFunc::zero(), b: RatFunc::one(), d: d.clone() }
    }

    pub fn a(&self) -> &RatFunc {
        &self.a
    }

    pub fn b(&self) -> &RatFunc {
        &self.b
    }

    pub fn modulus(&self) -> &Polynomial {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn same(&self, rhs: &QuadExt) -> Result<(), ExactError> {
        if self.d == rhs.d {
            Ok(())
        } else {
            Err(ExactError::ModulusMismatch)
        }
    }

    pub fn add(&self, rhs: &QuadExt) -> Result<QuadExt, ExactError> {
        self.same(rhs)?;
        Ok(QuadExt { a: &self.a + &rhs.a, b: &self.b + &rhs.b, d: self.d.clone() })
    }

    pub fn sub(&self, rhs: &QuadExt) -> Result<QuadExt, ExactError> {
        self.same(rhs)?;
        Ok(QuadExt { a: &self.a - &rhs.a, b: &self.b - &rhs.b, d: self.d.clone() })
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }

    pub fn mul(&self, rhs: &QuadExt) -> Result<QuadExt, ExactError> {
        self.same(rhs)?;
        let dd = RatFunc::from_poly(self.d.clone());
        let a = &(&self.a * &rhs.a) + &(&(&self.b * &rhs.b) * &dd);
        let b = &(&self.a * &rhs.b) + &(&self.b * &rhs.a);
        Ok(QuadExt { a, b, d: self.d.clone() })
    }

    pub fn scale(&self, r: &RatFunc) -> QuadExt {
        QuadExt { a: &self.a * r, b: &self.b * r, d: self.d.clone() }
    }

    pub fn conj(&self) -> QuadExt {
        QuadExt { a: self.a.clone(), b: -&self.b, d: self.d.clone() }
    }

    /// `a^2 - b^2 d`.
    pub fn norm(&self) -> RatFunc {
        let dd = RatFunc::from_poly(self.d.clone());
        &(&self.a * &self.a) - &(&(&self.b * &self.b) * &dd)
    }

    pub fn inv(&self) -> Result<QuadExt, ExactError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ExactError::ZeroNorm);
        }
        Ok(self.conj().scale(&n.inv()?))
    }

    pub fn div(&self, rhs: &QuadExt) -> Result<QuadExt, ExactError> {
        self.same(rhs)?;
        self.mul(&rhs.inv()?)
    }

    pub fn pow(&self, k: u32) -> QuadExt {
        let mut out = QuadExt::from_ratfunc(RatFunc::one(), &self.d);
        for _ in 0..k {
            out = out.mul(self).unwrap();
        }
        out
    }

    /// d/dx with `U' = d'/(2d) * U`.
    pub fn derivative(&self) -> QuadExt {
        let dd = RatFunc::from_poly(self.d.clone());
        let half_log =
            RatFunc::from_poly(self.d.derivative()).checked_div(&dd.scale(&int(2))).expect("nonzero modulus");
        let b = &self.b.derivative() + &(&self.b * &half_log);
        QuadExt { a: self.a.derivative(), b, d: self.d.clone() }
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a == RatFunc::constant(One::one())
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] + [{}]*U", self.a, self.b)
    }
}
