//! Inputs shared by the kernel benchmarks.

use stairgf::{DiffOp, FixtureSet, LaurentSeries, RatFunc};

/// Fixture operators by name, in the given order.
pub fn operators(names: &[&str]) -> Vec<DiffOp<RatFunc>> {
    let set = FixtureSet::embedded();
    names.iter().map(|n| set.get(n).and_then(|f| f.operator()).expect("embedded operator")).collect()
}

/// `1/sqrt(1 - 4x)` known below `x^order`: dense, with growing integer coefficients.
pub fn central_binomials(order: i64) -> LaurentSeries {
    LaurentSeries::from_integers(0, &[1, -4], order).pow(&stairgf::exactnum::rat(-1, 2)).expect("unit series")
}
