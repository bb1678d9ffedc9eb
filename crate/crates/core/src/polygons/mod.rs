//! Brute-force lattice enumerators: staircase polygons, punctured staircase polygons and
//! three-choice closed traversals, counted by half-perimeter.

mod threechoice;

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::exactnum::Rational;
use crate::series::LaurentSeries;

pub use threechoice::{enumerate_three_choice, enumerate_three_choice_at, Convention, Counted};

pub type Point = (i64, i64);

pub const STAIRCASE_LIMIT: u32 = 14;
pub const PUNCTURED_LIMIT: u32 = 12;
pub const THREE_CHOICE_LIMIT: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("{class}: half-perimeter {requested} exceeds the brute-force limit {limit}")]
    LimitExceeded { class: &'static str, requested: u32, limit: u32 },
    #[error("a polygon needs at least 4 vertices, got {0}")]
    TooShort(usize),
    #[error("step {index} from {from:?} to {to:?} is not a unit axis-parallel step")]
    BadStep { index: usize, from: Point, to: Point },
    #[error("vertex {0:?} is visited twice")]
    RepeatedVertex(Point),
}

fn check_limit(class: &'static str, requested: u32, limit: u32) -> Result<(), PolygonError> {
    if requested > limit {
        return Err(PolygonError::LimitExceeded { class, requested, limit });
    }
    Ok(())
}

/// A closed self-avoiding lattice polygon, stored as its vertex cycle (the last vertex joins the first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolygon {
    vertices: Vec<Point>,
}

impl LatticePolygon {
    pub fn new(vertices: Vec<Point>) -> Result<Self, PolygonError> {
        let n = vertices.len();
        if n < 4 {
            return Err(PolygonError::TooShort(n));
        }
        let mut seen = HashSet::with_capacity(n);
        for (i, &v) in vertices.iter().enumerate() {
            if !seen.insert(v) {
                return Err(PolygonError::RepeatedVertex(v));
            }
            let w = vertices[(i + 1) % n];
            if (v.0 - w.0).abs() + (v.1 - w.1).abs() != 1 {
                return Err(PolygonError::BadStep { index: i, from: v, to: w });
            }
        }
        Ok(LatticePolygon { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn perimeter(&self) -> usize {
        self.vertices.len()
    }

    pub fn half_perimeter(&self) -> usize {
        self.vertices.len() / 2
    }

    /// `(min corner, max corner)`.
    pub fn bounding_box(&self) -> (Point, Point) {
        let xs = self.vertices.iter().map(|v| v.0);
        let ys = self.vertices.iter().map(|v| v.1);
        ((xs.clone().min().unwrap(), ys.clone().min().unwrap()), (xs.max().unwrap(), ys.max().unwrap()))
    }

    pub fn vertex_set(&self) -> HashSet<Point> {
        self.vertices.iter().copied().collect()
    }

    /// Edges as ordered endpoint pairs (smaller point first).
    pub fn edge_set(&self) -> HashSet<(Point, Point)> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect()
    }

    pub fn translated(&self, d: Point) -> Self {
        LatticePolygon { vertices: self.vertices.iter().map(|v| (v.0 + d.0, v.1 + d.1)).collect() }
    }

    /// Parity test for a lattice point not on the boundary: count vertical edges crossed by the
    /// ray going right at height `y + 1/2`.
    pub fn strictly_contains(&self, p: Point) -> bool {
        let n = self.vertices.len();
        let mut inside = false;
        for i in 0..n {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            if a.0 == b.0 && a.0 > p.0 && a.1.min(b.1) == p.1 {
                inside = !inside;
            }
        }
        inside && !self.vertices.contains(&p)
    }

    /// Lattice points strictly inside, i.e. enclosed and not on the boundary.
    pub fn interior_points(&self) -> HashSet<Point> {
        let (lo, hi) = self.bounding_box();
        let boundary = self.vertex_set();
        let mut out = HashSet::new();
        for x in lo.0 + 1..hi.0 {
            for y in lo.1 + 1..hi.1 {
                if !boundary.contains(&(x, y)) && self.strictly_contains((x, y)) {
                    out.insert((x, y));
                }
            }
        }
        out
    }
}

/// Counts indexed by half-perimeter over the contiguous range `1..=max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    counts: BTreeMap<u32, BigUint>,
}

impl CountTable {
    pub fn zeros(max: u32) -> Self {
        CountTable { counts: (1..=max).map(|n| (n, BigUint::zero())).collect() }
    }

    fn from_hist(max: u32, hist: &[u64]) -> Self {
        let mut t = CountTable::zeros(max);
        for (n, c) in hist.iter().enumerate().skip(1) {
            t.counts.insert(n as u32, BigUint::from(*c));
        }
        t
    }

    pub fn max(&self) -> u32 {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    pub fn get(&self, n: u32) -> Option<&BigUint> {
        self.counts.get(&n)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &BigUint)> {
        self.counts.iter().map(|(n, c)| (*n, c))
    }

    /// First nonzero entry.
    pub fn first_nonzero(&self) -> Option<u32> {
        self.iter().find(|(_, c)| !c.is_zero()).map(|(n, _)| n)
    }

    /// `sum count_n x^n`, known below `x^(max+1)`.
    pub fn to_series(&self) -> LaurentSeries {
        let max = self.max() as i64;
        let mut cs = vec![Rational::zero(); max as usize + 1];
        for (n, c) in self.iter() {
            cs[n as usize] = Rational::from_integer(c.clone().into());
        }
        LaurentSeries::new(0, cs, max + 1)
    }

    pub fn as_u64(&self) -> Vec<(u32, u64)> {
        self.iter().map(|(n, c)| (n, c.to_u64().unwrap_or(u64::MAX))).collect()
    }
}

impl fmt::Display for CountTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.iter() {
            writeln!(f, "{n} {c}")?;
        }
        Ok(())
    }
}

/// Staircase polygons of half-perimeter `<= max`, one per translation class, anchored at `origin`.
///
/// Each polygon is a pair of NE paths from the origin: the upper one starts north, the lower
/// one east, and they advance in lockstep along antidiagonals until they first meet again.
pub fn staircase_polygons(max: u32, origin: Point) -> Vec<LatticePolygon> {
    let mut out = Vec::new();
    let mut up = vec![origin, (origin.0, origin.1 + 1)];
    let mut lo = vec![origin, (origin.0 + 1, origin.1)];
    grow_paths(max as usize, &mut up, &mut lo, &mut |u, l| out.push(close_paths(u, l)));
    out
}

fn close_paths(up: &[Point], lo: &[Point]) -> LatticePolygon {
    // upper path forward, then the lower path back, skipping the shared endpoints
    let mut v: Vec<Point> = up.to_vec();
    v.extend(lo[1..lo.len() - 1].iter().rev());
    LatticePolygon { vertices: v }
}

fn grow_paths(max: usize, up: &mut Vec<Point>, lo: &mut Vec<Point>, emit: &mut dyn FnMut(&[Point], &[Point])) {
    let k = up.len() - 1;
    let (u, l) = (*up.last().unwrap(), *lo.last().unwrap());
    if k >= 2 && u == l {
        emit(up, lo);
        return;
    }
    // the gap along the antidiagonal shrinks by at most one per step
    let gap = (l.0 - u.0) as usize;
    if k >= max || gap > max - k {
        return;
    }
    for du in [(1, 0), (0, 1)] {
        for dl in [(1, 0), (0, 1)] {
            let (nu, nl) = ((u.0 + du.0, u.1 + du.1), (l.0 + dl.0, l.1 + dl.1));
            if nu.0 > nl.0 {
                continue;
            }
            up.push(nu);
            lo.push(nl);
            grow_paths(max, up, lo, emit);
            up.pop();
            lo.pop();
        }
    }
}

pub fn enumerate_staircase(max: u32) -> Result<CountTable, PolygonError> {
    enumerate_staircase_at(max, (0, 0))
}

/// As [`enumerate_staircase`], with every polygon built from `origin`; counts do not depend on it.
pub fn enumerate_staircase_at(max: u32, origin: Point) -> Result<CountTable, PolygonError> {
    check_limit("staircase", max, STAIRCASE_LIMIT)?;
    // split on the first two lockstep moves so each task owns a disjoint family
    let starts: Vec<(Vec<Point>, Vec<Point>)> = {
        let mut s = Vec::new();
        let (u, l) = ((origin.0, origin.1 + 1), (origin.0 + 1, origin.1));
        for du in [(1, 0), (0, 1)] {
            for dl in [(1, 0), (0, 1)] {
                let (nu, nl) = ((u.0 + du.0, u.1 + du.1), (l.0 + dl.0, l.1 + dl.1));
                if nu.0 <= nl.0 {
                    s.push((vec![origin, u, nu], vec![origin, l, nl]));
                }
            }
        }
        s
    };
    let hists: Result<Vec<Vec<u64>>, PolygonError> = starts
        .into_par_iter()
        .map(|(mut up, mut lo)| {
            let mut hist = vec![0u64; max as usize + 1];
            let mut bad = None;
            if max >= 2 {
                grow_paths(max as usize, &mut up, &mut lo, &mut |u, l| {
                    let p = close_paths(u, l);
                    match LatticePolygon::new(p.vertices) {
                        Ok(p) => hist[p.half_perimeter()] += 1,
                        Err(e) => bad = Some(e),
                    }
                });
            }
            bad.map_or(Ok(hist), Err)
        })
        .collect();
    Ok(CountTable::from_hist(max, &sum_hists(max, hists?)))
}

fn sum_hists(max: u32, hists: Vec<Vec<u64>>) -> Vec<u64> {
    let mut total = vec![0u64; max as usize + 1];
    for h in hists {
        for (t, c) in total.iter_mut().zip(h) {
            *t += c;
        }
    }
    total
}

pub fn enumerate_punctured(max: u32) -> Result<CountTable, PolygonError> {
    enumerate_punctured_at(max, (0, 0))
}

/// Pairs (outer, inner) of staircase polygons with the inner boundary strictly inside the outer
/// one and sharing no vertex with it, by total half-perimeter. Outer shapes are counted up to
/// translation, inner placements over all translations.
pub fn enumerate_punctured_at(max: u32, origin: Point) -> Result<CountTable, PolygonError> {
    check_limit("punctured", max, PUNCTURED_LIMIT)?;
    if max < 4 {
        return Ok(CountTable::zeros(max));
    }
    let outers = staircase_polygons(max - 2, origin);
    let inners = staircase_polygons(max - 2, (0, 0));
    let hists: Vec<Vec<u64>> = outers
        .par_iter()
        .map(|outer| {
            let mut hist = vec![0u64; max as usize + 1];
            let interior = outer.interior_points();
            let (olo, ohi) = outer.bounding_box();
            for inner in &inners {
                let total = outer.half_perimeter() + inner.half_perimeter();
                if total > max as usize {
                    continue;
                }
                let (ilo, ihi) = inner.bounding_box();
                // translations keeping the inner box strictly inside the outer box
                for dx in olo.0 + 1 - ilo.0..ohi.0 - ihi.0 {
                    for dy in olo.1 + 1 - ilo.1..ohi.1 - ihi.1 {
                        let fits = inner.vertices().iter().all(|v| interior.contains(&(v.0 + dx, v.1 + dy)));
                        if fits {
                            hist[total] += 1;
                        }
                    }
                }
            }
            hist
        })
        .collect();
    Ok(CountTable::from_hist(max, &sum_hists(max, hists)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_interior_is_empty() {
        let sq = LatticePolygon::new(vec![(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        assert!(sq.interior_points().is_empty());
        let big = LatticePolygon::new(vec![(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1)]).unwrap();
        assert_eq!(big.interior_points(), [(1, 1)].into_iter().collect());
    }
}
