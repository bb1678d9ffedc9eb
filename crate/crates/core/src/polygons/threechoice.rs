// Three-choice walks: no reversals, and no right turn straight after an east or west step.

use std::collections::HashSet;

use rayon::prelude::*;

use super::{check_limit, sum_hists, CountTable, LatticePolygon, Point, PolygonError, THREE_CHOICE_LIMIT};

// E N W S, so a left turn is +1 mod 4
const DIRS: [Point; 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

fn allowed(last: usize, next: usize) -> bool {
    next != (last + 2) % 4 && !(last.is_multiple_of(2) && next == (last + 3) % 4)
}

/// What gets counted at each half-perimeter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Counted {
    /// Closed walks starting at a fixed vertex: every (polygon, start vertex, orientation) that
    /// obeys the rule is one object.
    RootedTraversals,
    /// Translation classes of polygons admitting at least one admissible traversal.
    Polygons,
}

/// Counting convention for three-choice polygons.
///
/// The default (rooted traversals, closing turn unchecked) gives 4, 12, 42 at n = 2, 3, 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Convention {
    pub counted: Counted,
    /// Also apply the turn rule where the walk closes up (last step into the first).
    pub check_closing_turn: bool,
}

impl Default for Convention {
    fn default() -> Self {
        Convention { counted: Counted::RootedTraversals, check_closing_turn: false }
    }
}

impl Convention {
    pub fn strict() -> Self {
        Convention { counted: Counted::RootedTraversals, check_closing_turn: true }
    }

    pub fn polygons() -> Self {
        Convention { counted: Counted::Polygons, check_closing_turn: false }
    }
}

pub fn enumerate_three_choice(max: u32, convention: Convention) -> Result<CountTable, PolygonError> {
    enumerate_three_choice_at(max, convention, (0, 0))
}

struct Walk {
    max_len: usize,
    origin: Point,
    check_closing: bool,
    path: Vec<Point>,
    dirs: Vec<usize>,
    visited: HashSet<Point>,
}

impl Walk {
    fn run(&mut self, emit: &mut dyn FnMut(&[Point]) -> Result<(), PolygonError>) -> Result<(), PolygonError> {
        let k = self.dirs.len();
        let pos = *self.path.last().unwrap();
        let last = self.dirs[k - 1];
        for (d, step) in DIRS.iter().enumerate() {
            if !allowed(last, d) {
                continue;
            }
            let np = (pos.0 + step.0, pos.1 + step.1);
            if np == self.origin {
                if k + 1 >= 4 && (!self.check_closing || allowed(d, self.dirs[0])) {
                    emit(&self.path)?;
                }
                continue;
            }
            let back = (np.0 - self.origin.0).abs() + (np.1 - self.origin.1).abs();
            if k + 1 >= self.max_len || back as usize > self.max_len - k - 1 || self.visited.contains(&np) {
                continue;
            }
            self.visited.insert(np);
            self.path.push(np);
            self.dirs.push(d);
            self.run(emit)?;
            self.dirs.pop();
            self.path.pop();
            self.visited.remove(&np);
        }
        Ok(())
    }
}

/// Edge list of a polygon translated so its bounding box starts at the origin.
type Shape = Vec<(Point, Point)>;

/// Per-n traversal counts and shapes found from one first step.
type Tally = (Vec<u64>, Vec<HashSet<Shape>>);

fn canonical(p: &LatticePolygon) -> Shape {
    let (lo, _) = p.bounding_box();
    let mut edges: Vec<_> = p.translated((-lo.0, -lo.1)).edge_set().into_iter().collect();
    edges.sort_unstable();
    edges
}

/// Three-choice closed walks of length `<= 2 max` through `origin`, tallied under `convention`.
pub fn enumerate_three_choice_at(max: u32, convention: Convention, origin: Point) -> Result<CountTable, PolygonError> {
    check_limit("three-choice", max, THREE_CHOICE_LIMIT)?;
    let max_len = 2 * max as usize;
    let results: Result<Vec<Tally>, PolygonError> = (0..4usize)
        .into_par_iter()
        .map(|d0| {
            let mut hist = vec![0u64; max as usize + 1];
            let mut shapes: Vec<HashSet<Shape>> = vec![HashSet::new(); max as usize + 1];
            if max_len < 4 {
                return Ok((hist, shapes));
            }
            let first = (origin.0 + DIRS[d0].0, origin.1 + DIRS[d0].1);
            let mut w = Walk {
                max_len,
                origin,
                check_closing: convention.check_closing_turn,
                path: vec![origin, first],
                dirs: vec![d0],
                visited: [origin, first].into_iter().collect(),
            };
            w.run(&mut |path| {
                let p = LatticePolygon::new(path.to_vec())?;
                let n = p.half_perimeter();
                match convention.counted {
                    Counted::RootedTraversals => hist[n] += 1,
                    Counted::Polygons => {
                        shapes[n].insert(canonical(&p));
                    }
                }
                Ok(())
            })?;
            Ok((hist, shapes))
        })
        .collect();
    let results = results?;
    match convention.counted {
        Counted::RootedTraversals => {
            Ok(CountTable::from_hist(max, &sum_hists(max, results.into_iter().map(|r| r.0).collect())))
        }
        Counted::Polygons => {
            let mut all: Vec<HashSet<Shape>> = vec![HashSet::new(); max as usize + 1];
            for (_, shapes) in results {
                for (a, s) in all.iter_mut().zip(shapes) {
                    a.extend(s);
                }
            }
            let hist: Vec<u64> = all.iter().map(|s| s.len() as u64).collect();
            Ok(CountTable::from_hist(max, &hist))
        }
    }
}
