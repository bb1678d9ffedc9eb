//! The check catalog: each identity as an exactly decided check producing a [`CheckReport`].

mod checks;
mod quad;

use std::error::Error as StdError;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::Polynomial;
use crate::paperdata::FixtureSet;
use crate::series::LaurentSeries;
use crate::special::Builder;

pub const DEFAULT_ORDER: i64 = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown check {id:?}{}", hint(.near))]
    UnknownCheck { id: String, near: Vec<String> },
    #[error("order must be at least 1, got {0}")]
    InvalidOrder(i64),
}

fn hint(near: &[String]) -> String {
    if near.is_empty() {
        String::new()
    } else {
        format!("; did you mean {}?", near.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        })
    }
}

/// First disagreement found by a check. `exponent` is absent for structural (non-series)
/// comparisons and for computations that could not complete.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub part: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<i64>,
    pub expected: String,
    pub got: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            Some(e) => write!(f, "{}: at x^{e} expected {} got {}", self.part, self.expected, self.got),
            None => write!(f, "{}: expected {} got {}", self.part, self.expected, self.got),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub status: CheckStatus,
    /// Coefficients below this exponent were compared; 0 for exact identities.
    pub order_checked: i64,
    /// The relation was decided structurally (polynomials, rational functions, operators).
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    /// One JSON object on a single line.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scope = if self.exact { "exact".to_string() } else { format!("order {}", self.order_checked) };
        write!(f, "{:<4} {:<7} {scope}", self.id, self.status)?;
        if let Some(w) = &self.witness {
            write!(f, "\n     witness: {w}")?;
        }
        for n in &self.notes {
            write!(f, "\n     note: {n}")?;
        }
        Ok(())
    }
}

pub(crate) type Outcome = Result<(), Box<dyn StdError + Send + Sync>>;

/// Accumulates the parts of one check: the first failing part becomes the witness.
pub(crate) struct Probe {
    order_checked: i64,
    exact: bool,
    witness: Option<Witness>,
    notes: Vec<String>,
}

impl Probe {
    fn new(order: i64) -> Self {
        Probe { order_checked: order, exact: false, witness: None, notes: Vec::new() }
    }

    fn fail(&mut self, w: Witness) {
        if self.witness.is_none() {
            self.witness = Some(w);
        }
    }

    /// Marks the check as structural; the order argument does not apply.
    pub(crate) fn exact(&mut self) {
        self.exact = true;
        self.order_checked = 0;
    }

    pub(crate) fn cap(&mut self, order: i64) {
        self.order_checked = self.order_checked.min(order);
    }

    pub(crate) fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// `got == expected` on every exponent below `upto`; both sides must be known that far.
    pub(crate) fn series_eq(&mut self, part: &str, got: &LaurentSeries, expected: &LaurentSeries, upto: i64) {
        let known = got.trunc().min(expected.trunc());
        if let Some(m) = got.first_mismatch(expected, Some(upto)) {
            self.fail(Witness {
                part: part.into(),
                exponent: Some(m.exponent),
                expected: m.expected.to_string(),
                got: m.got.to_string(),
            });
        } else if known < upto {
            self.fail(Witness {
                part: part.into(),
                exponent: Some(known),
                expected: format!("coefficients known below x^{upto}"),
                got: format!("known below x^{known}"),
            });
        }
    }

    pub(crate) fn series_zero(&mut self, part: &str, got: &LaurentSeries, upto: i64) {
        self.series_eq(part, got, &LaurentSeries::zero(upto), upto);
    }

    pub(crate) fn integral(&mut self, part: &str, s: &LaurentSeries, upto: i64) {
        if let Some((e, c)) = s.truncate(upto).first_non_integer() {
            self.fail(Witness {
                part: part.into(),
                exponent: Some(e),
                expected: "an integer".into(),
                got: c.to_string(),
            });
        }
    }

    pub(crate) fn holds(&mut self, part: &str, ok: bool, expected: impl fmt::Display, got: impl fmt::Display) {
        if !ok {
            self.fail(Witness {
                part: part.into(),
                exponent: None,
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
    }

    /// The polynomial must vanish identically; the witness is its lowest nonzero coefficient.
    pub(crate) fn poly_zero(&mut self, part: &str, p: &Polynomial) {
        if let Some(v) = p.valuation() {
            self.fail(Witness {
                part: part.into(),
                exponent: Some(v as i64),
                expected: "0".into(),
                got: p.coeff(v).to_string(),
            });
        }
    }

    fn finish(self, id: &str) -> CheckReport {
        let status = if self.witness.is_some() { CheckStatus::Fail } else { CheckStatus::Pass };
        CheckReport {
            id: id.into(),
            status,
            order_checked: self.order_checked,
            exact: self.exact,
            witness: self.witness,
            notes: self.notes,
        }
    }
}

type CheckFn = fn(&Verifier, i64, &mut Probe) -> Outcome;

pub(crate) struct CheckDef {
    id: &'static str,
    statement: &'static str,
    run: CheckFn,
}

/// `(id, statement)` for every check, in report order.
pub fn catalog() -> Vec<(&'static str, &'static str)> {
    checks::CATALOG.iter().map(|c| (c.id, c.statement)).collect()
}

/// Runs checks against one fixture set, sharing a memo of built series between them.
#[derive(Default)]
pub struct Verifier {
    builder: Builder,
}

impl Verifier {
    pub fn new(fixtures: FixtureSet) -> Self {
        Verifier { builder: Builder::new(Arc::new(fixtures)) }
    }

    pub fn fixtures(&self) -> &FixtureSet {
        self.builder.fixtures()
    }

    pub(crate) fn builder(&self) -> &Builder {
        &self.builder
    }

    pub fn run_check(&self, id: &str, order: i64) -> Result<CheckReport, VerifyError> {
        if order < 1 {
            return Err(VerifyError::InvalidOrder(order));
        }
        let def = checks::CATALOG.iter().find(|c| c.id.eq_ignore_ascii_case(id)).ok_or_else(|| unknown(id))?;
        Ok(self.execute(def, order))
    }

    fn execute(&self, def: &CheckDef, order: i64) -> CheckReport {
        let mut probe = Probe::new(order);
        if let Err(e) = (def.run)(self, order, &mut probe) {
            probe.fail(Witness {
                part: "computation".into(),
                exponent: None,
                expected: "the computation to complete".into(),
                got: e.to_string(),
            });
        }
        probe.finish(def.id)
    }

    /// Every check at `order`, reported in catalog order whether or not they ran concurrently.
    pub fn run_all(&self, order: i64, parallel: bool) -> Result<Vec<CheckReport>, VerifyError> {
        if order < 1 {
            return Err(VerifyError::InvalidOrder(order));
        }
        Ok(if parallel {
            checks::CATALOG.par_iter().map(|d| self.execute(d, order)).collect()
        } else {
            checks::CATALOG.iter().map(|d| self.execute(d, order)).collect()
        })
    }
}

fn unknown(id: &str) -> VerifyError {
    let mut near: Vec<(f64, &str)> = checks::CATALOG
        .iter()
        .map(|c| (strsim::jaro_winkler(&id.to_uppercase(), c.id), c.id))
        .filter(|(s, _)| *s > 0.65)
        .collect();
    near.sort_by(|a, b| b.0.total_cmp(&a.0));
    VerifyError::UnknownCheck { id: id.into(), near: near.iter().take(3).map(|(_, n)| n.to_string()).collect() }
}

/// One check with the embedded fixtures.
pub fn run_check(id: &str, order: i64) -> Result<CheckReport, VerifyError> {
    Verifier::default().run_check(id, order)
}

/// The whole catalog with the embedded fixtures.
pub fn run_all(order: i64, parallel: bool) -> Result<Vec<CheckReport>, VerifyError> {
    Verifier::default().run_all(order, parallel)
}
