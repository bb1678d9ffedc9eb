use std::fmt;

use super::OpError;
use crate::exactnum::{QuadExt, RatFunc, Rational};
use crate::series::LaurentSeries;

/// Coefficient ring of a [`DiffOp`](super::DiffOp): a commutative ring with a derivation.
pub trait DiffRing: Clone + fmt::Debug + PartialEq {
    fn ring_add(&self, rhs: &Self) -> Result<Self, OpError>;
    fn ring_mul(&self, rhs: &Self) -> Result<Self, OpError>;
    fn ring_scale(&self, c: &Rational) -> Self;
    fn ring_derivative(&self) -> Self;
    fn ring_is_zero(&self) -> bool;
    fn ring_zero_like(&self) -> Self;
    fn ring_one_like(&self) -> Self;
}

impl DiffRing for RatFunc {
    fn ring_add(&self, rhs: &Self) -> Result<Self, OpError> {
        Ok(self + rhs)
    }
    fn ring_mul(&self, rhs: &Self) -> Result<Self, OpError> {
        Ok(self * rhs)
    }
    fn ring_scale(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn ring_derivative(&self) -> Self {
        self.derivative()
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_zero_like(&self) -> Self {
        RatFunc::zero()
    }
    fn ring_one_like(&self) -> Self {
        RatFunc::one()
    }
}

impl DiffRing for QuadExt {
    fn ring_add(&self, rhs: &Self) -> Result<Self, OpError> {
        self.add(rhs).map_err(|_| OpError::RingMismatch)
    }
    fn ring_mul(&self, rhs: &Self) -> Result<Self, OpError> {
        self.mul(rhs).map_err(|_| OpError::RingMismatch)
    }
    fn ring_scale(&self, c: &Rational) -> Self {
        self.scale(&RatFunc::constant(c.clone()))
    }
    fn ring_derivative(&self) -> Self {
        self.derivative()
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_zero_like(&self) -> Self {
        QuadExt::from_ratfunc(RatFunc::zero(), self.modulus())
    }
    fn ring_one_like(&self) -> Self {
        QuadExt::from_ratfunc(RatFunc::one(), self.modulus())
    }
}

/// Truncated series coefficients; "zero" means zero below the truncation.
impl DiffRing for LaurentSeries {
    fn ring_add(&self, rhs: &Self) -> Result<Self, OpError> {
        Ok(self + rhs)
    }
    fn ring_mul(&self, rhs: &Self) -> Result<Self, OpError> {
        Ok(self * rhs)
    }
    fn ring_scale(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn ring_derivative(&self) -> Self {
        self.derivative()
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_zero_like(&self) -> Self {
        LaurentSeries::zero(self.trunc())
    }
    fn ring_one_like(&self) -> Self {
        LaurentSeries::one(self.trunc())
    }
}
