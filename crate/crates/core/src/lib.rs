//! Exact computer-algebra kernel for staircase-type polygon generating functions.
//!
//! The crate is layered bottom-up: [`exactnum`] supplies the scalar and polynomial rings,
//! [`series`] the truncated series, [`diffop`] linear differential operators over those rings,
//! [`special`] hypergeometric and Heun local series plus the catalog of named series,
//! [`polygons`] brute-force lattice enumerators, [`paperdata`] the embedded fixtures and
//! [`verify`] the catalog of identity checks tying everything together.

pub mod diffop;
pub mod exactnum;
pub mod paperdata;
pub mod polygons;
pub mod series;
pub mod special;
pub mod verify;

pub use diffop::{DiffOp, DiffRing, IndicialData, OpError, Point};
pub use exactnum::{poly_resultant, ExactError, Polynomial, QuadExt, RatFunc, Rational, UPoly};
pub use paperdata::{get_fixture, Fixture, FixtureError, FixtureSet, Payload};
pub use polygons::{CountTable, LatticePolygon, PolygonError};
pub use special::{build_named, HeunParams, HypParams, NamedSeries, SpecialError};
pub use verify::{run_all, run_check, CheckReport, CheckStatus, Verifier, VerifyError, Witness};

pub use series::{BivarSeries, LaurentSeries, LogSeries, SeriesError};
