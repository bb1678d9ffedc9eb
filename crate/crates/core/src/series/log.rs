use std::fmt;

use num_traits::Zero;

use super::LaurentSeries;
use crate::exactnum::Rational;

/// `sum_k parts[k] * log(x)^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogSeries {
    parts: Vec<LaurentSeries>,
}

impl LogSeries {
    pub fn new(mut parts: Vec<LaurentSeries>) -> Self {
        while parts.len() > 1 && parts.last().is_some_and(|p| p.is_zero()) {
            parts.pop();
        }
        LogSeries { parts }
    }

    pub fn from_series(s: LaurentSeries) -> Self {
        LogSeries { parts: vec![s] }
    }

    pub fn parts(&self) -> &[LaurentSeries] {
        &self.parts
    }

    /// Coefficient series of `log^k`, zero when absent.
    pub fn part(&self, k: usize) -> LaurentSeries {
        self.parts.get(k).cloned().unwrap_or_else(|| LaurentSeries::zero(self.trunc()))
    }

    /// Highest power of `log x` with a nonzero coefficient series.
    pub fn log_degree(&self) -> Option<usize> {
        self.parts.iter().rposition(|p| !p.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.log_degree().is_none()
    }

    pub fn trunc(&self) -> i64 {
        self.parts.iter().map(|p| p.trunc()).min().unwrap_or(i64::MAX)
    }

    pub fn truncate(&self, t: i64) -> Self {
        LogSeries::new(self.parts.iter().map(|p| p.truncate(t)).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LogSeries::new(self.parts.iter().map(|p| p.scale(c)).collect())
    }

    /// Multiply every part by a log-free series.
    pub fn mul_series(&self, s: &LaurentSeries) -> Self {
        LogSeries::new(self.parts.iter().map(|p| p.mul(s)).collect())
    }

    pub fn add(&self, rhs: &LogSeries) -> Self {
        let n = self.parts.len().max(rhs.parts.len());
        let t = self.trunc().min(rhs.trunc());
        LogSeries::new((0..n).map(|k| &self.part(k).truncate(t) + &rhs.part(k).truncate(t)).collect())
    }

    /// `D(log^k x * s) = log^k x * s' + k log^{k-1} x * s / x`.
    pub fn derivative(&self) -> Self {
        let mut out: Vec<LaurentSeries> = self.parts.iter().map(|p| p.derivative()).collect();
        for k in 1..self.parts.len() {
            let extra = self.parts[k].shift(-1).scale(&Rational::from_integer((k as i64).into()));
            out[k - 1] = &out[k - 1] + &extra;
        }
        LogSeries::new(out)
    }

    /// Lowest exponent with a nonzero coefficient in any part.
    pub fn valuation(&self) -> Option<i64> {
        self.parts.iter().filter_map(|p| p.valuation()).min()
    }

    /// Rescale so the top log part has leading coefficient one.
    pub fn normalized_top(&self) -> Option<Self> {
        let k = self.log_degree()?;
        let lead = self.parts[k].leading()?.clone();
        if lead.is_zero() {
            return None;
        }
        Some(self.scale(&lead.recip()))
    }
}

impl fmt::Display for LogSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, p) in self.parts.iter().enumerate() {
            if p.is_zero() && k > 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({p})")?,
                1 => write!(f, "log(x)*({p})")?,
                _ => write!(f, "log(x)^{k}*({p})")?,
            }
        }
        Ok(())
    }
}
