//! Embedded fixtures: every printed polynomial, series, operator, curve and parametrization
//! the checks compare against.
//!
//! The source file is `data/fixtures.txt`, one record per line as `name | kind | anchor | data`.
//! The build script checks its sha256 and the double-entry evaluations of polynomial records
//! before anything here runs.

mod format;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::diffop::{DiffOp, OpError};
use crate::exactnum::{ExactError, Polynomial, RatFunc, Rational};
use crate::series::LaurentSeries;

const EMBEDDED: &str = include_str!("../../data/fixtures.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("unknown fixture {name:?}{}", near_hint(.near))]
    Unknown { name: String, near: Vec<String> },
    #[error("fixture {name} is a {found}, not a {expected}")]
    KindMismatch { name: String, expected: Kind, found: Kind },
    #[error("fixture {name} has no entry {key:?}")]
    MissingEntry { name: String, key: String },
    #[error("duplicate fixture {0}")]
    Duplicate(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Op(#[from] OpError),
}

fn near_hint(near: &[String]) -> String {
    if near.is_empty() {
        String::new()
    } else {
        format!("; did you mean {}?", near.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Polynomial,
    Series,
    Operator,
    Curve,
    RatfuncPair,
    Ratfunc,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Polynomial => "polynomial",
            Kind::Series => "series",
            Kind::Operator => "operator",
            Kind::Curve => "curve",
            Kind::RatfuncPair => "ratfunc-pair",
            Kind::Ratfunc => "ratfunc",
        }
    }

    fn parse(s: &str) -> Option<Kind> {
        [Kind::Polynomial, Kind::Series, Kind::Operator, Kind::Curve, Kind::RatfuncPair, Kind::Ratfunc]
            .into_iter()
            .find(|k| k.as_str() == s)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Integer numerator and denominator coefficient lists, kept as written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRatFunc {
    pub num: Vec<BigInt>,
    pub den: Vec<BigInt>,
}

impl RawRatFunc {
    pub fn to_ratfunc(&self) -> Result<RatFunc, ExactError> {
        RatFunc::new(Polynomial::from_bigints(&self.num), Polynomial::from_bigints(&self.den))
    }
}

/// Bivariate integer polynomial as a monomial map; `terms[(i, j)]` multiplies `v0^i v1^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub vars: [String; 2],
    pub terms: BTreeMap<(u32, u32), BigInt>,
}

impl Curve {
    /// Substitute two series; the result vanishes to its truncation iff the pair lies on the curve.
    pub fn eval_series(&self, a: &LaurentSeries, b: &LaurentSeries) -> LaurentSeries {
        let (ma, mb) = self.max_degrees();
        let pa = powers_series(a, ma);
        let pb = powers_series(b, mb);
        let floor = a.trunc().min(b.trunc());
        let mut acc: Option<LaurentSeries> = None;
        for ((i, j), c) in &self.terms {
            let mono = match (*i as usize, *j as usize) {
                (0, 0) => LaurentSeries::one(floor),
                (i, 0) => pa[i - 1].clone(),
                (0, j) => pb[j - 1].clone(),
                (i, j) => pa[i - 1].mul(&pb[j - 1]),
            };
            let term = mono.scale(&Rational::from_integer(c.clone()));
            acc = Some(match acc {
                None => term,
                Some(s) => &s + &term,
            });
        }
        acc.unwrap_or_else(|| LaurentSeries::zero(a.trunc().min(b.trunc())))
    }

    /// Numerator of the curve evaluated at two rational functions, after clearing
    /// `den_a^deg_a * den_b^deg_b`; zero iff the parametrization lies on the curve.
    pub fn eval_cleared(&self, a: &RatFunc, b: &RatFunc) -> Polynomial {
        let (ma, mb) = self.max_degrees();
        let pow_list = |p: &Polynomial, m: u32| {
            let mut v = vec![Polynomial::one()];
            for k in 0..m as usize {
                v.push(&v[k] * p);
            }
            v
        };
        let (na, da) = (pow_list(a.num(), ma), pow_list(a.den(), ma));
        let (nb, db) = (pow_list(b.num(), mb), pow_list(b.den(), mb));
        let mut acc = Polynomial::zero();
        for ((i, j), c) in &self.terms {
            let (i, j) = (*i as usize, *j as usize);
            let t = &(&na[i] * &da[ma as usize - i]) * &(&nb[j] * &db[mb as usize - j]);
            acc = &acc + &t.scale(&Rational::from_integer(c.clone()));
        }
        acc
    }

    fn max_degrees(&self) -> (u32, u32) {
        self.terms.keys().fold((0, 0), |(a, b), (i, j)| (a.max(*i), b.max(*j)))
    }
}

/// `s, s^2, ..., s^m`.
fn powers_series(s: &LaurentSeries, m: u32) -> Vec<LaurentSeries> {
    let mut v: Vec<LaurentSeries> = Vec::with_capacity(m as usize);
    for k in 0..m as usize {
        let next = if k == 0 { s.clone() } else { v[k - 1].mul(s) };
        v.push(next);
    }
    v
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    /// Coefficients from the constant term up, plus the recorded values at 1 and 2.
    Polynomial {
        coeffs: Vec<BigInt>,
        at1: BigInt,
        at2: BigInt,
    },
    Series {
        valuation: i64,
        trunc: i64,
        coeffs: Vec<Rational>,
    },
    /// `(power of D, coefficient)`.
    Operator(Vec<(usize, RawRatFunc)>),
    Curve(Curve),
    RatfuncPair {
        var: String,
        entries: Vec<(String, RawRatFunc)>,
    },
    Ratfunc(RawRatFunc),
}

impl Payload {
    pub fn kind(&self) -> Kind {
        match self {
            Payload::Polynomial { .. } => Kind::Polynomial,
            Payload::Series { .. } => Kind::Series,
            Payload::Operator(_) => Kind::Operator,
            Payload::Curve(_) => Kind::Curve,
            Payload::RatfuncPair { .. } => Kind::RatfuncPair,
            Payload::Ratfunc(_) => Kind::Ratfunc,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    /// Where the data comes from, as a short description.
    pub source: String,
    pub payload: Payload,
}

impl Fixture {
    pub fn kind(&self) -> Kind {
        self.payload.kind()
    }

    fn mismatch(&self, expected: Kind) -> FixtureError {
        FixtureError::KindMismatch { name: self.name.clone(), expected, found: self.kind() }
    }

    pub fn polynomial(&self) -> Result<Polynomial, FixtureError> {
        match &self.payload {
            Payload::Polynomial { coeffs, .. } => Ok(Polynomial::from_bigints(coeffs)),
            _ => Err(self.mismatch(Kind::Polynomial)),
        }
    }

    pub fn series(&self) -> Result<LaurentSeries, FixtureError> {
        match &self.payload {
            Payload::Series { valuation, trunc, coeffs } => Ok(LaurentSeries::new(*valuation, coeffs.clone(), *trunc)),
            _ => Err(self.mismatch(Kind::Series)),
        }
    }

    pub fn operator(&self) -> Result<DiffOp<RatFunc>, FixtureError> {
        match &self.payload {
            Payload::Operator(parts) => {
                let parts: Vec<(usize, Polynomial, Polynomial)> = parts
                    .iter()
                    .map(|(i, r)| (*i, Polynomial::from_bigints(&r.num), Polynomial::from_bigints(&r.den)))
                    .collect();
                Ok(DiffOp::from_parts(&parts)?)
            }
            _ => Err(self.mismatch(Kind::Operator)),
        }
    }

    pub fn curve(&self) -> Result<&Curve, FixtureError> {
        match &self.payload {
            Payload::Curve(c) => Ok(c),
            _ => Err(self.mismatch(Kind::Curve)),
        }
    }

    pub fn ratfunc(&self) -> Result<RatFunc, FixtureError> {
        match &self.payload {
            Payload::Ratfunc(r) => Ok(r.to_ratfunc()?),
            _ => Err(self.mismatch(Kind::Ratfunc)),
        }
    }

    /// One component of a parametrization, e.g. `C` of `CD_param`.
    pub fn entry(&self, key: &str) -> Result<RatFunc, FixtureError> {
        match &self.payload {
            Payload::RatfuncPair { entries, .. } => entries
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, r)| r.to_ratfunc().map_err(FixtureError::from))
                .unwrap_or_else(|| Err(FixtureError::MissingEntry { name: self.name.clone(), key: key.into() })),
            _ => Err(self.mismatch(Kind::RatfuncPair)),
        }
    }

    /// For table polynomials named `p<j>`, `q<j>`, `tp<j>`, `tq<j>`: the subscript `j`.
    pub fn subscript(&self) -> Option<usize> {
        if self.kind() != Kind::Polynomial {
            return None;
        }
        let rest = self.name.strip_prefix('t').unwrap_or(&self.name);
        let digits = rest.strip_prefix('p').or_else(|| rest.strip_prefix('q'))?;
        digits.parse().ok()
    }

    /// Human-readable rendering of the parsed payload.
    pub fn render(&self) -> Result<String, FixtureError> {
        Ok(match &self.payload {
            Payload::Polynomial { .. } => self.polynomial()?.to_string(),
            Payload::Series { .. } => self.series()?.to_string(),
            Payload::Operator(_) => self.operator()?.to_string(),
            Payload::Curve(c) => {
                let mut out = String::new();
                for ((i, j), coef) in c.terms.iter().rev() {
                    out.push_str(&format!("{coef:+}*{}^{i}*{}^{j} ", c.vars[0], c.vars[1]));
                }
                out.push_str("= 0");
                out
            }
            Payload::RatfuncPair { var, entries } => {
                let mut lines = Vec::new();
                for (k, r) in entries {
                    lines.push(format!("{k}({var}) = {}", r.to_ratfunc()?));
                }
                lines.join("\n")
            }
            Payload::Ratfunc(r) => r.to_ratfunc()?.to_string(),
        })
    }
}

/// An ordered collection of fixtures, as parsed from a fixture file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureSet {
    fixtures: Vec<Fixture>,
}

impl FixtureSet {
    pub fn parse(text: &str) -> Result<Self, FixtureError> {
        let mut fixtures: Vec<Fixture> = Vec::new();
        for (k, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let f = format::parse_record(line).map_err(|reason| FixtureError::Parse { line: k + 1, reason })?;
            if fixtures.iter().any(|g| g.name == f.name) {
                return Err(FixtureError::Duplicate(f.name));
            }
            fixtures.push(f);
        }
        Ok(FixtureSet { fixtures })
    }

    /// The file form; `parse(serialize(s)) == s` and the embedded file reproduces byte for byte.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for f in &self.fixtures {
            out.push_str(&format::write_record(f));
            out.push('\n');
        }
        out
    }

    /// The set compiled into the crate.
    pub fn embedded() -> &'static FixtureSet {
        static SET: OnceLock<FixtureSet> = OnceLock::new();
        SET.get_or_init(|| FixtureSet::parse(EMBEDDED).expect("embedded fixtures are validated at build time"))
    }

    pub fn embedded_text() -> &'static str {
        EMBEDDED
    }

    pub fn iter(&self) -> impl Iterator<Item = &Fixture> {
        self.fixtures.iter()
    }

    pub fn names(&self) -> Vec<&str> {
        self.fixtures.iter().map(|f| f.name.as_str()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&Fixture, FixtureError> {
        self.fixtures.iter().find(|f| f.name == name).ok_or_else(|| {
            let mut scored: Vec<(f64, &str)> = self
                .fixtures
                .iter()
                .map(|f| (strsim::jaro_winkler(&name.to_lowercase(), &f.name.to_lowercase()), f.name.as_str()))
                .filter(|(s, _)| *s > 0.75)
                .collect();
            scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(b.1)));
            FixtureError::Unknown {
                name: name.into(),
                near: scored.iter().take(3).map(|(_, n)| n.to_string()).collect(),
            }
        })
    }

    /// Copy with one payload replaced; used to inject faults into the checks.
    pub fn with_override(&self, name: &str, payload: Payload) -> Result<Self, FixtureError> {
        let mut out = self.clone();
        let slot = out.fixtures.iter_mut().find(|f| f.name == name);
        match slot {
            Some(f) => {
                f.payload = payload;
                Ok(out)
            }
            None => Err(self.get(name).unwrap_err()),
        }
    }
}

pub fn get_fixture(name: &str) -> Result<&'static Fixture, FixtureError> {
    FixtureSet::embedded().get(name)
}
