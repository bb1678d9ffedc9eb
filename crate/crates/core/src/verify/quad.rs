// Exact helpers over Q(x) and Q(x)[U]/(U^2 - d), d = 1 - 12x^2 - 64x^4.

use crate::diffop::{DiffOp, DiffRing};
use crate::exactnum::{ExactError, Polynomial, QuadExt, RatFunc};
use crate::paperdata::Curve;

pub(super) fn modulus() -> Polynomial {
    Polynomial::from_i64(&[1, 0, -12, 0, -64])
}

pub(super) fn qp(cs: &[i64]) -> QuadExt {
    QuadExt::from_ratfunc(RatFunc::from_poly(Polynomial::from_i64(cs)), &modulus())
}

pub(super) fn u() -> QuadExt {
    QuadExt::u(&modulus())
}

/// `1 - 4x^2 + sign U`.
pub(super) fn branch_base(sign: i64) -> Result<QuadExt, ExactError> {
    let su = if sign < 0 { u().neg() } else { u() };
    qp(&[1, 0, -4]).add(&su)
}

/// `4096 x^10 / (1 - 4x^2 + sign U)^4`.
pub(super) fn branch_pullback(sign: i64) -> Result<QuadExt, ExactError> {
    let mut x10 = vec![0; 11];
    x10[10] = 4096;
    qp(&x10).div(&branch_base(sign)?.pow(4))
}

/// `sum c_ij a^i b^j` in the extension.
pub(super) fn curve_at(curve: &Curve, a: &QuadExt, b: &QuadExt) -> Result<QuadExt, ExactError> {
    let mut acc = qp(&[0]);
    for ((i, j), c) in &curve.terms {
        let coef =
            QuadExt::from_ratfunc(RatFunc::from_poly(Polynomial::from_bigints(std::slice::from_ref(c))), &modulus());
        acc = acc.add(&coef.mul(&a.pow(*i))?.mul(&b.pow(*j))?)?;
    }
    Ok(acc)
}

/// `sum c_i f^(i)` for a rational function `f`.
pub(super) fn apply_exact(op: &DiffOp<RatFunc>, f: &RatFunc) -> RatFunc {
    let mut g = f.clone();
    let mut acc = RatFunc::zero();
    for c in op.coeffs() {
        acc = &acc + &(c * &g);
        g = g.derivative();
    }
    acc
}

/// Index of the first coefficient where two operators differ.
pub(super) fn first_difference<C: DiffRing>(a: &DiffOp<C>, b: &DiffOp<C>) -> Option<usize> {
    let n = a.coeffs().len().max(b.coeffs().len());
    (0..n).find(|&i| a.coeff(i) != b.coeff(i))
}
