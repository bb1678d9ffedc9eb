use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock};

use super::{heun_series, hyp_series, HeunParams, HypParams, SpecialError};
use crate::diffop::DiffOp;
use crate::exactnum::{int, rat, Rational};
use crate::paperdata::FixtureSet;
use crate::series::LaurentSeries;

/// A catalog series at a requested order, with the recipe it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedSeries {
    pub name: String,
    pub series: LaurentSeries,
    pub provenance: &'static str,
}

type Recipe = fn(&Builder, i64) -> Result<LaurentSeries, SpecialError>;

struct Entry {
    name: &'static str,
    recipe: &'static str,
    build: Recipe,
    /// Extra working terms to start from; doubled on each retry.
    margin: i64,
}

const CATALOG: &[Entry] = &[
    Entry { name: "U", recipe: "sqrt((1-16x^2)(1+4x^2)), U(0) = 1", build: u_series, margin: 0 },
    Entry { name: "P_S", recipe: "(1 - 2x - sqrt(1-4x))/2", build: p_s, margin: 0 },
    Entry { name: "P_T", recipe: "2 (P_I + x/sqrt(1-4x) - x)", build: p_t, margin: 0 },
    Entry { name: "P_I", recipe: "(P_I_alg + P_I_trans)/60", build: p_i, margin: 0 },
    Entry { name: "P_P", recipe: "-(x^2/2) P_S' + x^3/(1-4x) - P_I", build: p_p, margin: 1 },
    Entry {
        name: "P_I_alg",
        recipe: "135/8 + 59/4 r^2 + 15/8 r^4 - 85/16 r^-1 - 105/8 r - 65/16 r^3, r = sqrt(1-4x)",
        build: p_i_alg,
        margin: 0,
    },
    Entry { name: "P_I_trans", recipe: "-(19/2) Sol2_toplog - (3/2) Sol3_toplog", build: p_i_trans, margin: 0 },
    Entry {
        name: "P_I_trans_nested",
        recipe: "N1 solution times nested integrals of Sol(N2), SolN3/80 and the N2 wronskian",
        build: p_i_trans_nested,
        margin: 6,
    },
    Entry { name: "Sol2_toplog", recipe: "log^1 coefficient of the Frobenius basis of N2.N1, constant term 1", build: sol2_toplog, margin: 2 },
    Entry { name: "Sol3_toplog", recipe: "log^2 coefficient of the Frobenius basis of N3.N2.N1, constant term 1", build: sol3_toplog, margin: 2 },
    Entry { name: "H_cubic", recipe: "2F1([1/3,2/3],[1], 27x^3/(1-x)^3)", build: h_cubic, margin: 0 },
    Entry {
        name: "Sol2_closed",
        recipe: "(1+x+7x^2)/(18x(1-x)^2) (1-4x)^(-3/2) [(1-x)(1-4x)(1+45x^2+44x^3) H' + 18x(1-3x-13x^2) H]",
        build: sol2_closed,
        margin: 2,
    },
    Entry {
        name: "Sol2_contiguous",
        recipe: "(1-x)^-2 (1-4x)^(-3/2) [(x+45x^3+44x^4) 2F1([1/3,2/3],[2],z) + (1+x+7x^2)(1-3x-13x^2) H], z = 27x^3/(1-x)^3",
        build: sol2_contiguous,
        margin: 0,
    },
    Entry { name: "F18_plusU", recipe: "2F1([1/8,3/8],[1], 4096x^10/(1-4x^2+U)^4)", build: f18_plus, margin: 0 },
    Entry { name: "F18_minusU", recipe: "2F1([1/8,3/8],[1], 4096x^10/(1-4x^2-U)^4)", build: f18_minus, margin: 8 },
    Entry {
        name: "SolV2_plusU",
        recipe: "x U ((13-28x^2-12U)/(1+20x^2)^2)^(1/4) F18_plusU",
        build: solv2_plus,
        margin: 0,
    },
    Entry {
        name: "SolV2_minusU",
        recipe: "x U ((13-28x^2+12U)/(25(1+20x^2)^2))^(1/4) F18_minusU, the -U solution divided by -sqrt(5)",
        build: solv2_minus,
        margin: 8,
    },
    Entry {
        name: "SolV2_minusU_sq",
        recipe: "square of the -U solution: x^2 U^2 ((13-28x^2+12U)/(1+20x^2)^2)^(1/2) F18_minusU^2",
        build: solv2_minus_sq,
        margin: 8,
    },
    Entry { name: "SolV2_heun", recipe: "x U Heun(-1/4, 1/16, 3/8, 5/8, 1, 1/2; -4x^2)", build: solv2_heun, margin: 0 },
    Entry { name: "SolN3", recipe: "T2 applied to SolV2_plusU^2", build: sol_n3, margin: 8 },
    Entry { name: "W_N2", recipe: "wronskian of N2 from the fixture", build: w_n2, margin: 0 },
    Entry { name: "Q54_lhs", recipe: "2F1([1/3,2/3],[1], x)", build: q54_lhs, margin: 0 },
    Entry {
        name: "Q54_rhs",
        recipe: "Q^(-1/4) 2F1([1/12,5/12],[1], -64x(x-1)^3/(8x+1)^3), Q = 5 - 4 sqrt(1-4x(1-x))",
        build: q54_rhs,
        margin: 0,
    },
];

/// Names in the catalog, in listing order, with their recipes.
pub fn catalog() -> Vec<(&'static str, &'static str)> {
    CATALOG.iter().map(|e| (e.name, e.recipe)).collect()
}

/// Builds catalog series against a fixture set, memoising by name.
pub struct Builder {
    fixtures: Arc<FixtureSet>,
    cache: RwLock<HashMap<&'static str, LaurentSeries>>,
    // one build per name at a time, so concurrent callers reuse the memo
    building: Mutex<HashMap<&'static str, Arc<Mutex<()>>>>,
}

impl Default for Builder {
    fn default() -> Self {
        Self::new(Arc::new(FixtureSet::embedded().clone()))
    }
}

impl Builder {
    pub fn new(fixtures: Arc<FixtureSet>) -> Self {
        Builder { fixtures, cache: RwLock::new(HashMap::new()), building: Mutex::new(HashMap::new()) }
    }

    pub fn fixtures(&self) -> &FixtureSet {
        &self.fixtures
    }

    pub fn build(&self, name: &str, order: i64) -> Result<NamedSeries, SpecialError> {
        let entry = CATALOG.iter().find(|e| e.name == name).ok_or_else(|| unknown(name))?;
        Ok(NamedSeries { name: entry.name.to_string(), series: self.series(entry, order)?, provenance: entry.recipe })
    }

    /// The series alone, known below `x^order`.
    pub fn get(&self, name: &str, order: i64) -> Result<LaurentSeries, SpecialError> {
        let entry = CATALOG.iter().find(|e| e.name == name).ok_or_else(|| unknown(name))?;
        self.series(entry, order)
    }

    fn series(&self, entry: &Entry, order: i64) -> Result<LaurentSeries, SpecialError> {
        if order < 1 {
            return Err(SpecialError::InvalidOrder(order));
        }
        if let Some(s) = self.cached(entry.name, order) {
            return Ok(s);
        }
        let slot = self.building.lock().unwrap().entry(entry.name).or_default().clone();
        let _guard = slot.lock().unwrap();
        if let Some(s) = self.cached(entry.name, order) {
            return Ok(s);
        }
        let mut margin = entry.margin;
        let mut reached = i64::MIN;
        for _ in 0..6 {
            let s = (entry.build)(self, order + margin)?;
            if s.trunc() >= order {
                let mut cache = self.cache.write().unwrap();
                let keep = cache.get(entry.name).is_some_and(|c| c.trunc() >= s.trunc());
                if !keep {
                    cache.insert(entry.name, s.clone());
                }
                return Ok(s.truncate(order));
            }
            reached = reached.max(s.trunc());
            margin = (2 * margin).max(order - s.trunc() + margin + 1);
        }
        Err(SpecialError::Precision { name: entry.name.into(), requested: order, reached })
    }
}

impl Builder {
    fn cached(&self, name: &str, order: i64) -> Option<LaurentSeries> {
        let cache = self.cache.read().unwrap();
        cache.get(name).filter(|s| s.trunc() >= order).map(|s| s.truncate(order))
    }
}

fn unknown(name: &str) -> SpecialError {
    let mut near: Vec<(f64, &str)> = CATALOG
        .iter()
        .map(|e| (strsim::jaro_winkler(&name.to_lowercase(), &e.name.to_lowercase()), e.name))
        .filter(|(s, _)| *s > 0.75)
        .collect();
    near.sort_by(|a, b| b.0.total_cmp(&a.0));
    SpecialError::UnknownName { name: name.into(), near: near.iter().take(3).map(|(_, n)| n.to_string()).collect() }
}

/// Build one catalog series with the embedded fixtures.
pub fn build_named(name: &str, order: i64) -> Result<NamedSeries, SpecialError> {
    Builder::default().build(name, order)
}

fn poly(cs: &[i64], w: i64) -> LaurentSeries {
    LaurentSeries::from_integers(0, cs, w)
}

fn f2_1(a: Rational, b: Rational, c: Rational, w: i64) -> Result<LaurentSeries, SpecialError> {
    hyp_series(&HypParams::new(vec![a, b], vec![c])?, w)
}

/// `sqrt(1-4x)`.
fn root14(w: i64) -> Result<LaurentSeries, SpecialError> {
    Ok(poly(&[1, -4], w).pow(&rat(1, 2))?)
}

fn u_series(_: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    Ok(poly(&[1, 0, -12, 0, -64], w).pow(&rat(1, 2))?)
}

fn p_s(_: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    Ok((&poly(&[1, -2], w) - &root14(w)?).scale(&rat(1, 2)))
}

fn p_t(b: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    let x = LaurentSeries::x(w);
    let extra = &x.mul(&root14(w)?.inv()?) - &x;
    Ok((&b.get("P_I", w)? + &extra).scale_int(2))
}

fn p_i(b: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    Ok((&b.get("P_I_alg", w)? + &b.get("P_I_trans", w)?).scale(&rat(1, 60)))
}

fn p_p(b: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    let ps = b.get("P_S", w + 1)?;
    let first = LaurentSeries::monomial(rat(-1, 2), 2, w).mul(&ps.derivative());
    let second = LaurentSeries::monomial(int(1), 3, w).mul(&poly(&[1, -4], w).inv()?);
    Ok(&(&first + &second) - &b.get("P_I", w)?)
}

fn p_i_alg(_: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    let r = root14(w)?;
    let r2 = poly(&[1, -4], w);
    let terms = [
        (rat(135, 8), LaurentSeries::one(w)),
        (rat(59, 4), r2.clone()),
        (rat(15, 8), r2.mul(&r2)),
        (rat(-85, 16), r.inv()?),
        (rat(-105, 8), r.clone()),
        (rat(-65, 16), r2.mul(&r)),
    ];
    let mut acc = LaurentSeries::zero(w);
    for (c, s) in &terms {
        acc = &acc + &s.scale(c);
    }
    Ok(acc)
}

fn p_i_trans(b: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    let s2 = b.get("Sol2_toplog", w)?.scale(&rat(-19, 2));
    let s3 = b.get("Sol3_toplog", w)?.scale(&rat(-3, 2));
    Ok(&s2 + &s3)
}

fn p_i_trans_nested(b: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    nested_with(b, w, Nesting::Reduced)
}

fn normalized_top(sols: &[crate::diffop::FrobeniusSolution], degree: usize) -> Option<LaurentSeries> {
    let top = sols.iter().find(|s| s.log_degree() == degree)?.top();
    let lead = top.leading()?.clone();
    Some(top.scale(&lead.recip()))
}

fn frobenius_top(b: &Builder, names: &[&str], degree: usize, w: i64) -> Result<LaurentSeries, SpecialError> {
    let ops = names.iter().map(|n| b.fixtures.get(n).and_then(|f| f.operator())).collect::<Result<Vec<_>, _>>()?;
    let refs: Vec<&DiffOp<_>> = ops.iter().collect();
    let basis = DiffOp::product_frobenius_basis(&refs, w.max(1) as usize)?;
    // a missing tower is reported as a zero series, which every comparison will reject
    Ok(normalized_top(&basis, degree).unwrap_or_else(|| LaurentSeries::zero(w)))
}

fn sol2_toplog(b: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    frobenius_top(b, &["N2", "N1"], 1, w)
}

fn sol3_toplog(b: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    frobenius_top(b, &["N3", "N2", "N1"], 2, w)
}

/// `27x^3/(1-x)^3`.
fn cubic_pullback(w: i64) -> Result<LaurentSeries, SpecialError> {
    Ok(LaurentSeries::monomial(int(27), 3, w).mul(&poly(&[1, -1], w).pow_int(-3)?))
}

fn h_cubic(_: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    Ok(f2_1(rat(1, 3), rat(2, 3), int(1), w)?.compose(&cubic_pullback(w)?)?)
}

fn sol2_closed(b: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    let h = b.get("H_cubic", w + 1)?;
    let dh = h.derivative();
    let h = h.truncate(w);
    let bracket = &poly(&[1, -1], w).mul(&poly(&[1, -4], w)).mul(&poly(&[1, 0, 45, 44], w)).mul(&dh)
        + &poly(&[0, 18, -54, -234], w).mul(&h);
    let pre = poly(&[1, 1, 7], w).mul(&LaurentSeries::monomial(int(18), 1, w).mul(&poly(&[1, -2, 1], w)).inv()?);
    Ok(pre.mul(&poly(&[1, -4], w).pow(&rat(-3, 2))?).mul(&bracket))
}

fn sol2_contiguous(b: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    let f2 = f2_1(rat(1, 3), rat(2, 3), int(2), w)?.compose(&cubic_pullback(w)?)?;
    let h = b.get("H_cubic", w)?;
    let inner = &poly(&[0, 1, 0, 45, 44], w).mul(&f2) + &poly(&[1, 1, 7], w).mul(&poly(&[1, -3, -13], w)).mul(&h);
    let pre = poly(&[1, -1], w).pow_int(-2)?.mul(&poly(&[1, -4], w).pow(&rat(-3, 2))?);
    Ok(pre.mul(&inner))
}

fn f18(w: i64) -> Result<LaurentSeries, SpecialError> {
    f2_1(rat(1, 8), rat(3, 8), int(1), w)
}

/// `4096 x^10 / (1 - 4x^2 + sign U)^4`.
fn branch_pullback(b: &Builder, w: i64, sign: i64) -> Result<LaurentSeries, SpecialError> {
    let u = b.get("U", w)?.scale_int(sign);
    let base = &poly(&[1, 0, -4], w) + &u;
    Ok(LaurentSeries::monomial(int(4096), 10, w).mul(&base.pow_int(-4)?))
}

fn f18_plus(b: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    Ok(f18(w)?.compose(&branch_pullback(b, w, 1)?)?)
}

fn f18_minus(b: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    Ok(f18(w)?.compose(&branch_pullback(b, w, -1)?)?)
}

/// `(13 - 28x^2 + sign 12 U) / (scale (1+20x^2)^2)`.
fn branch_ratio(b: &Builder, w: i64, sign: i64, scale: i64) -> Result<LaurentSeries, SpecialError> {
    let u = b.get("U", w)?.scale_int(12 * sign);
    let num = &poly(&[13, 0, -28], w) + &u;
    Ok(num.div(&poly(&[1, 0, 20], w).pow_int(2)?.scale_int(scale))?)
}

fn x_times_u(b: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    Ok(LaurentSeries::x(w).mul(&b.get("U", w)?))
}

fn solv2_plus(b: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    let pre = branch_ratio(b, w, -1, 1)?.pow(&rat(1, 4))?;
    Ok(x_times_u(b, w)?.mul(&pre).mul(&b.get("F18_plusU", w)?))
}

fn solv2_minus(b: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    let pre = branch_ratio(b, w, 1, 25)?.pow(&rat(1, 4))?;
    Ok(x_times_u(b, w)?.mul(&pre).mul(&b.get("F18_minusU", w)?))
}

fn solv2_minus_sq(b: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    let xu = x_times_u(b, w)?;
    let f = b.get("F18_minusU", w)?;
    let pre = branch_ratio(b, w, 1, 1)?.pow(&rat(1, 2))?;
    Ok(xu.mul(&xu).mul(&pre).mul(&f.mul(&f)))
}

fn solv2_heun(b: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    let p = HeunParams::new(rat(-1, 4), rat(1, 16), rat(3, 8), rat(5, 8), int(1), rat(1, 2))?;
    let h = heun_series(&p, w)?.compose(&LaurentSeries::monomial(int(-4), 2, w))?;
    Ok(x_times_u(b, w)?.mul(&h))
}

fn sol_n3(b: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    let t2 = b.fixtures.get("T2")?.operator()?;
    let v = b.get("SolV2_plusU", w)?;
    Ok(t2.apply(&v.mul(&v))?)
}

fn w_n2(b: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    Ok(LaurentSeries::from_ratfunc(&b.fixtures.get("W_N2")?.ratfunc()?, w)?)
}

fn q54_lhs(_: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    f2_1(rat(1, 3), rat(2, 3), int(1), w)
}

fn q54_rhs(_: &Builder, w: i64) -> Result<LaurentSeries, SpecialError> {
    let q = &LaurentSeries::constant(int(5), w) - &poly(&[1, -4, 4], w).pow(&rat(1, 2))?.scale_int(4);
    let z =
        LaurentSeries::monomial(int(-64), 1, w).mul(&poly(&[-1, 1], w).pow_int(3)?).mul(&poly(&[1, 8], w).pow_int(-3)?);
    let f = f2_1(rat(1, 12), rat(5, 12), int(1), w)?.compose(&z)?;
    Ok(q.pow(&rat(-1, 4))?.mul(&f))
}

/// How the nested integrals of the closed form are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nesting {
    /// `-10 + 90 I2` with `I2 = int(W/y^2 * I1)`, `I1 = int(y g / W)`.
    Reduced,
    /// One more integral around `I2`.
    Triple,
}

fn nested_with(b: &Builder, w: i64, nesting: Nesting) -> Result<LaurentSeries, SpecialError> {
    let y1 = b.get("Sol2_closed", w)?;
    let g = b.get("SolN3", w)?.scale(&rat(1, 80));
    let wr = b.get("W_N2", w)?;
    let i1 = y1.mul(&g).div(&wr)?.integrate()?;
    let mut i2 = wr.div(&y1.mul(&y1))?.mul(&i1).integrate()?;
    if nesting == Nesting::Triple {
        i2 = i2.integrate()?;
    }
    let n1_sol = poly(&[1, -4], w);
    let inner = &LaurentSeries::constant(int(-10), w) + &i2.scale_int(90);
    let outer = y1.div(&n1_sol)?.mul(&inner).integrate()?;
    Ok(n1_sol.mul(&(&LaurentSeries::constant(int(-11), w) + &outer)))
}

/// The nested-integral construction of `P_I_trans` with zero integration constants.
pub fn nested_integral_pi_trans(order: i64, nesting: Nesting) -> Result<LaurentSeries, SpecialError> {
    let b = Builder::default();
    match nesting {
        Nesting::Reduced => b.get("P_I_trans_nested", order),
        Nesting::Triple => {
            let s = nested_with(&b, order + 8, nesting)?;
            if s.trunc() < order {
                return Err(SpecialError::Precision {
                    name: "P_I_trans_nested".into(),
                    requested: order,
                    reached: s.trunc(),
                });
            }
            Ok(s.truncate(order))
        }
    }
}
