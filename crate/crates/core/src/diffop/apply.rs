use super::{DiffOp, OpError};
use num_traits::Zero;

use crate::exactnum::{RatFunc, Rational};
use crate::series::{LaurentSeries, LogSeries};

// known terms count from x^0, or from the valuation when there is a principal part
fn check_precision(order: usize, known: i64) -> Result<(), OpError> {
    let required = order as i64 + 1;
    if known < required {
        return Err(OpError::InsufficientPrecision { required, available: known });
    }
    Ok(())
}

impl DiffOp<LaurentSeries> {
    /// `sum c_i f^(i)`; precision follows the series arithmetic.
    pub fn apply(&self, f: &LaurentSeries) -> Result<LaurentSeries, OpError> {
        let Some(order) = self.order() else { return Ok(LaurentSeries::zero(f.trunc())) };
        check_precision(order, f.trunc() - f.valuation().unwrap_or(0).min(0))?;
        let mut g = f.clone();
        let mut acc: Option<LaurentSeries> = None;
        for c in &self.coeffs {
            let term = c.mul(&g);
            acc = Some(match acc {
                None => term,
                Some(a) => &a + &term,
            });
            g = g.derivative();
        }
        Ok(acc.unwrap())
    }

    pub fn apply_log(&self, f: &LogSeries) -> Result<LogSeries, OpError> {
        let Some(order) = self.order() else { return Ok(f.scale(&Rational::zero())) };
        check_precision(order, f.trunc() - f.valuation().unwrap_or(0).min(0))?;
        let mut g = f.clone();
        let mut acc: Option<LogSeries> = None;
        for c in &self.coeffs {
            let term = g.mul_series(c);
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
            g = g.derivative();
        }
        Ok(acc.unwrap())
    }
}

impl DiffOp<RatFunc> {
    /// Expansion of every coefficient precise enough that `f`'s truncation is the only limit.
    fn series_for(&self, val: i64, trunc: i64) -> Result<DiffOp<LaurentSeries>, OpError> {
        self.map(|c| {
            let vc = c.valuation().unwrap_or(0);
            LaurentSeries::from_ratfunc(c, trunc - val + vc + 1).map_err(OpError::from)
        })
    }

    /// Image of a series; the result is known below `trunc(f) - i + val(r_i)` minimised over `i`.
    pub fn apply(&self, f: &LaurentSeries) -> Result<LaurentSeries, OpError> {
        let val = f.valuation().unwrap_or(f.trunc());
        self.series_for(val, f.trunc())?.apply(f)
    }

    pub fn apply_log(&self, f: &LogSeries) -> Result<LogSeries, OpError> {
        let val = f.valuation().unwrap_or(f.trunc());
        self.series_for(val, f.trunc())?.apply_log(f)
    }
}
