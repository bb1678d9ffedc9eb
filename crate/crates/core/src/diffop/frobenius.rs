use std::collections::HashMap;

use num_traits::{One, Zero};

use super::indicial::{falling_factorial, rational_roots, small_int};
use super::{DiffOp, OpError};
use crate::exactnum::{int, Polynomial, RatFunc, Rational};
use crate::series::{LaurentSeries, LogSeries};

/// One formal solution `x^exponent * (sum_k log^k x * s_k)` at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusSolution {
    pub exponent: i64,
    pub solution: LogSeries,
}

impl FrobeniusSolution {
    pub fn log_degree(&self) -> usize {
        self.solution.log_degree().unwrap_or(0)
    }

    /// Coefficient series of the highest log power.
    pub fn top(&self) -> LaurentSeries {
        self.solution.part(self.log_degree())
    }
}

/// `p^(m)(n) / m!`.
fn taylor_at(p: &Polynomial, n: &Rational, m: usize) -> Rational {
    let mut acc = Rational::zero();
    for (k, c) in p.coeffs().iter().enumerate().skip(m) {
        if c.is_zero() {
            continue;
        }
        acc += c * binom(k, m) * num_traits::pow(n.clone(), k - m);
    }
    acc
}

fn binom(n: usize, k: usize) -> Rational {
    let mut r = Rational::one();
    for i in 0..k {
        r = r * int((n - i) as i64) / int((i + 1) as i64);
    }
    r
}

fn falling(k: usize, m: usize) -> Rational {
    (0..m).fold(Rational::one(), |a, i| a * int((k - i) as i64))
}

/// `P(n + d/dL) q` for `q` a polynomial in `L` stored as a coefficient vector, given the
/// Taylor coefficients `taylor[m] = P^(m)(n)/m!`.
fn shift_apply(taylor: &[Rational], q: &[Rational]) -> Vec<Rational> {
    let kk = q.len();
    let mut out = vec![Rational::zero(); kk];
    for (m, t) in taylor.iter().enumerate().take(kk) {
        if t.is_zero() {
            continue;
        }
        for k in m..kk {
            if !q[k].is_zero() {
                out[k - m] += t * &q[k] * falling(k, m);
            }
        }
    }
    out
}

impl DiffOp<LaurentSeries> {
    /// Local basis at 0 when all indicial roots are integers, `nterms` coefficients past the
    /// smallest root. Within each solution the top log part has leading coefficient 1;
    /// solutions are sorted by (exponent, log degree).
    pub fn frobenius_basis(&self, nterms: usize) -> Result<Vec<FrobeniusSolution>, OpError> {
        let order = self.order().ok_or(OpError::ZeroOperator)?;
        // theta form: r_i D^i = (r_i x^-i) * theta(theta-1)...(theta-i+1)
        let a: Vec<LaurentSeries> = self.coeffs.iter().enumerate().map(|(i, c)| c.shift(-(i as i64))).collect();
        let s = a.iter().filter_map(|c| c.valuation()).min().ok_or(OpError::ZeroOperator)?;
        let need = s + nterms as i64;
        for c in &a {
            if c.trunc() < need {
                return Err(OpError::InsufficientPrecision { required: need, available: c.trunc() });
            }
        }
        let ffs: Vec<Polynomial> = (0..=order).map(falling_factorial).collect();
        let pj: Vec<Polynomial> = (0..nterms)
            .map(|j| {
                let mut p = Polynomial::zero();
                for (i, c) in a.iter().enumerate() {
                    let co = c.coeff(s + j as i64);
                    if !co.is_zero() {
                        p = &p + &ffs[i].scale(&co);
                    }
                }
                p
            })
            .collect();
        let (roots, residual) = rational_roots(&pj[0]);
        if let Some(r) = residual {
            return Err(OpError::NonIntegerExponents { residual: r.to_string() });
        }
        let mut iroots: Vec<(i64, usize)> = Vec::new();
        for r in &roots {
            let v = small_int(r).ok_or_else(|| OpError::NonIntegerExponents { residual: format!("root {r}") })?;
            match iroots.last_mut() {
                Some((w, m)) if *w == v => *m += 1,
                _ => iroots.push((v, 1)),
            }
        }
        let mult = |n: i64| iroots.iter().find(|(r, _)| *r == n).map_or(0, |(_, m)| *m);
        let nmin = iroots[0].0;
        let kk = order;
        // Taylor data of pj[j] at n - j, shared by every solution
        let mut taylor: HashMap<(usize, i64), Vec<Rational>> = HashMap::new();
        let mut sols = Vec::new();
        for &(r0, mu) in &iroots {
            for idx in 0..mu {
                let mut q: Vec<Vec<Rational>> = Vec::with_capacity(nterms);
                for step in 0..nterms {
                    let n = nmin + step as i64;
                    if n < r0 {
                        q.push(vec![Rational::zero(); kk]);
                        continue;
                    }
                    let mut rhs = vec![Rational::zero(); kk];
                    for j in 1..=step {
                        let prev = &q[step - j];
                        if prev.iter().all(|c| c.is_zero()) || pj[j].is_zero() {
                            continue;
                        }
                        let at = n - j as i64;
                        let t = taylor
                            .entry((j, at))
                            .or_insert_with(|| (0..kk).map(|m| taylor_at(&pj[j], &int(at), m)).collect());
                        for (r, v) in rhs.iter_mut().zip(shift_apply(t, prev)) {
                            *r -= v;
                        }
                    }
                    let mu_n = mult(n);
                    let nn = int(n);
                    let tm: Vec<Rational> = (0..kk + mu_n).map(|m| taylor_at(&pj[0], &nn, m)).collect();
                    debug_assert!(tm[..mu_n].iter().all(|c| c.is_zero()));
                    let tp = &tm[mu_n..];
                    // inverse of the unit series tp(d) in d
                    let mut inv = vec![Rational::zero(); kk];
                    inv[0] = tp[0].recip();
                    for k in 1..kk {
                        let mut acc = Rational::zero();
                        for m in 1..=k {
                            acc += &tp[m] * &inv[k - m];
                        }
                        inv[k] = -acc * &inv[0];
                    }
                    let mut w = vec![Rational::zero(); kk];
                    for (m, im) in inv.iter().enumerate() {
                        if im.is_zero() {
                            continue;
                        }
                        for k in m..kk {
                            if !rhs[k].is_zero() {
                                w[k - m] += im * &rhs[k] * falling(k, m);
                            }
                        }
                    }
                    for _ in 0..mu_n {
                        if !w[kk - 1].is_zero() {
                            return Err(OpError::LogOverflow);
                        }
                        let mut nw = vec![Rational::zero(); kk];
                        for k in 0..kk - 1 {
                            nw[k + 1] = &w[k] / int((k + 1) as i64);
                        }
                        w = nw;
                    }
                    if n == r0 {
                        w[idx] += Rational::one();
                    }
                    q.push(w);
                }
                let parts = (0..kk)
                    .map(|k| LaurentSeries::new(nmin, q.iter().map(|v| v[k].clone()).collect(), nmin + nterms as i64))
                    .collect();
                let sol = LogSeries::new(parts);
                let sol = sol.normalized_top().unwrap_or(sol);
                sols.push(FrobeniusSolution { exponent: r0, solution: sol });
            }
        }
        sols.sort_by_key(|s| (s.exponent, s.log_degree()));
        Ok(sols)
    }
}

impl DiffOp<RatFunc> {
    /// [`DiffOp::<LaurentSeries>::frobenius_basis`] with coefficients expanded as needed.
    pub fn frobenius_basis(&self, nterms: usize) -> Result<Vec<FrobeniusSolution>, OpError> {
        let s = self
            .coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.valuation().map(|v| v - i as i64))
            .min()
            .ok_or(OpError::ZeroOperator)?;
        let ser = self.map(|c| LaurentSeries::from_ratfunc(c, s + nterms as i64 + self.coeffs.len() as i64))?;
        ser.frobenius_basis(nterms)
    }
}

impl DiffOp<RatFunc> {
    /// Product `factors[0] * factors[1] * ...` with every coefficient expanded at the origin and
    /// known below `x^trunc`. Multiplying expansions sidesteps the gcd cost of the exact product.
    pub fn product_series(factors: &[&DiffOp<RatFunc>], trunc: i64) -> Result<DiffOp<LaurentSeries>, OpError> {
        let total: i64 = factors.iter().map(|f| f.order().unwrap_or(0) as i64).sum();
        let poles: i64 =
            factors.iter().map(|f| -f.coeffs.iter().filter_map(|c| c.valuation()).min().unwrap_or(0).min(0)).sum();
        let mut margin = total + poles + 1;
        for _ in 0..8 {
            let mut acc: Option<DiffOp<LaurentSeries>> = None;
            for f in factors {
                let s = f.to_series(trunc + margin)?;
                acc = Some(match acc {
                    None => s,
                    Some(a) => a.mul(&s)?,
                });
            }
            let prod = acc.ok_or(OpError::ZeroOperator)?;
            if prod.coeffs.iter().all(|c| c.trunc() >= trunc) {
                return Ok(DiffOp::new(prod.coeffs.iter().map(|c| c.truncate(trunc)).collect()));
            }
            margin *= 2;
        }
        Err(OpError::InsufficientPrecision { required: trunc, available: trunc - margin })
    }

    /// Frobenius basis of a product of factors, built from [`DiffOp::product_series`].
    pub fn product_frobenius_basis(
        factors: &[&DiffOp<RatFunc>],
        nterms: usize,
    ) -> Result<Vec<FrobeniusSolution>, OpError> {
        let total: i64 = factors.iter().map(|f| f.order().unwrap_or(0) as i64).sum();
        let mut trunc = nterms as i64 + total + 1;
        for _ in 0..8 {
            match Self::product_series(factors, trunc)?.frobenius_basis(nterms) {
                Err(OpError::InsufficientPrecision { required, available }) => trunc += required - available,
                other => return other,
            }
        }
        Err(OpError::InsufficientPrecision { required: trunc, available: trunc })
    }
}
