use super::{ExactError, Polynomial, QuadExt, RatFunc};

/// Polynomial in `U` whose coefficients are polynomials in `x`; `coeffs[i]` multiplies `U^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    coeffs: Vec<Polynomial>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Polynomial>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    /// `a + b*U` with polynomial `a`, `b`; `None` if either part has a denominator.
    pub fn from_quadext(q: &QuadExt) -> Option<Self> {
        let part = |r: &RatFunc| r.is_polynomial().then(|| r.num().scale(&r.den().coeff(0).recip()));
        Some(Self::new(vec![part(q.a())?, part(q.b())?]))
    }

    /// `U^2 - d`.
    pub fn defining(d: &Polynomial) -> Self {
        Self::new(vec![-d, Polynomial::zero(), Polynomial::one()])
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn lc(&self) -> &Polynomial {
        self.coeffs.last().unwrap()
    }

    fn prem(&self, b: &UPoly) -> UPoly {
        let mut r = self.coeffs.clone();
        let lb = b.lc().clone();
        let db = b.coeffs.len();
        while r.len() >= db && !r.is_empty() {
            let lr = r.last().unwrap().clone();
            let shift = r.len() - db;
            for c in r.iter_mut() {
                *c = &*c * &lb;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[i + shift] = &r[i + shift] - &(&lr * bc);
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        UPoly::new(r)
    }

    fn div_coeffs(&self, q: &Polynomial) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| c.div_exact(q).unwrap()).collect())
    }
}

/// Resultant with respect to `U`, by the subresultant pseudo-remainder sequence over Q[x].
pub fn poly_resultant(p: &UPoly, q: &UPoly) -> Result<Polynomial, ExactError> {
    if p.is_zero() && q.is_zero() {
        return Err(ExactError::UndefinedResultant);
    }
    if p.is_zero() || q.is_zero() {
        return Ok(Polynomial::zero());
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut sign_neg = false;
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            sign_neg = true;
        }
    }
    let with_sign = |r: Polynomial, neg: bool| if neg { -r } else { r };
    if b.degree() == Some(0) {
        return Ok(with_sign(b.lc().pow(a.degree().unwrap() as u32), sign_neg));
    }
    let mut g = Polynomial::one();
    let mut h = Polynomial::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign_neg = !sign_neg;
        }
        let r = a.prem(&b);
        a = b;
        if r.is_zero() {
            return Ok(Polynomial::zero());
        }
        b = r.div_coeffs(&(&g * &h.pow(delta as u32)));
        g = a.lc().clone();
        h = if delta == 0 { h } else { g.pow(delta as u32).div_exact(&h.pow(delta as u32 - 1))? };
        if b.degree() == Some(0) {
            break;
        }
    }
    let da = a.degree().unwrap() as u32;
    let res = b.lc().pow(da).div_exact(&h.pow(da - 1))?;
    Ok(with_sign(res, sign_neg))
}
