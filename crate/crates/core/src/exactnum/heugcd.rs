// Heuristic gcd of integer polynomials: evaluate at a large integer, take the integer gcd,
// read the result back in balanced base-xi and keep it only if it divides both inputs.
// Coefficient vectors are lowest degree first, primitive, with positive leading entry.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn max_norm(p: &[BigInt]) -> BigInt {
    p.iter().map(|c| c.abs()).max().unwrap_or_default()
}

/// Balanced digits of `h` in base `x`.
fn interpolate(mut h: BigInt, x: &BigInt) -> Vec<BigInt> {
    let half = x / 2;
    let mut out = Vec::new();
    while !h.is_zero() {
        let mut g = h.mod_floor(x);
        if g > half {
            g -= x;
        }
        h = (&h - &g) / x;
        out.push(g);
    }
    out
}

/// `a / b` when `b` divides `a` exactly over the integers.
pub(super) fn int_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if b.is_empty() || a.len() < b.len() {
        return if a.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut r = a.to_vec();
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let top = &r[k + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (i, bc) in b.iter().enumerate() {
            r[k + i] -= &c * bc;
        }
        q[k] = c;
    }
    r.iter().all(|c| c.is_zero()).then_some(q)
}

fn normalize(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return v;
    }
    let g = if v.last().unwrap().sign() == Sign::Minus { -g } else { g };
    v.iter().map(|c| c / &g).collect()
}

/// Primitive gcd of two primitive polynomials, or `None` when the heuristic gives up.
pub(super) fn heu_gcd(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let (nf, ng) = (max_norm(f), max_norm(g));
    let bound: BigInt = BigInt::from(2) * nf.clone().min(ng.clone()) + 29;
    let from_bound: BigInt = bound.clone().min(BigInt::from(99) * bound.sqrt());
    let from_lead: BigInt = BigInt::from(2) * (&nf / f.last()?.abs()).min(&ng / g.last()?.abs()) + 2;
    let mut x = from_bound.max(from_lead);
    for _ in 0..6 {
        let (ff, gg) = (eval(f, &x), eval(g, &x));
        if !ff.is_zero() && !gg.is_zero() {
            let h = ff.gcd(&gg);
            let cand = normalize(interpolate(h.clone(), &x));
            if !cand.is_empty() && int_div_exact(f, &cand).is_some() && int_div_exact(g, &cand).is_some() {
                return Some(cand);
            }
            // the cofactors sometimes reconstruct when the gcd itself does not
            for (own, other, cof) in [(f, g, &ff / &h), (g, f, &gg / &h)] {
                let c = normalize(interpolate(cof, &x));
                if c.is_empty() {
                    continue;
                }
                if let Some(cand) = int_div_exact(own, &c).map(normalize) {
                    if int_div_exact(other, &cand).is_some() {
                        return Some(cand);
                    }
                }
            }
        }
        x = BigInt::from(73794) * &x * x.sqrt().sqrt() / 27011;
    }
    None
}
