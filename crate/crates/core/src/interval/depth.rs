use std::collections::BTreeMap;

use serde::Serialize;

use super::set::IntervalSet;
use crate::error::{Error, Result};
use crate::exact::Rational;

/// One cell of the partition induced by all endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Point(Rational),
    Open(Rational, Rational),
}

impl Cell {
    pub fn left(&self) -> &Rational {
        match self {
            Cell::Point(x) | Cell::Open(x, _) => x,
        }
    }

    pub fn right(&self) -> &Rational {
        match self {
            Cell::Point(x) | Cell::Open(_, x) => x,
        }
    }
}

/// A maximal run of elementary cells with equal depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthCell {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
    pub depth: usize,
}

impl DepthCell {
    pub fn len(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed {
            x >= &self.lo
        } else {
            x > &self.lo
        };
        let below = if self.hi_closed {
            x <= &self.hi
        } else {
            x < &self.hi
        };
        above && below
    }
}

/// A point of depth at least `t` and `t` sets containing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeepWitness {
    pub point: Rational,
    pub members: Vec<usize>,
}

/// Elementary cells of `[min(0, endpoints), max(1, endpoints)]`, left to
/// right, each with the number of sets containing it.
pub fn elementary_cells(sets: &[IntervalSet]) -> Vec<(Cell, usize)> {
    // per endpoint: (intervals starting here, intervals ending here)
    let mut events: BTreeMap<Rational, (usize, usize)> = BTreeMap::new();
    events.entry(Rational::zero()).or_default();
    events.entry(Rational::one()).or_default();
    for s in sets {
        for iv in s.intervals() {
            events.entry(iv.lo.clone()).or_default().0 += 1;
            events.entry(iv.hi.clone()).or_default().1 += 1;
        }
    }
    let mut cells = Vec::with_capacity(2 * events.len());
    let mut open = 0usize;
    let mut prev: Option<Rational> = None;
    for (x, (starts, ends)) in events {
        if let Some(p) = prev.take() {
            cells.push((Cell::Open(p, x.clone()), open));
        }
        let at = open + starts;
        cells.push((Cell::Point(x.clone()), at));
        open = at - ends;
        prev = Some(x);
    }
    cells
}

/// Depth profile with equal-depth neighbours merged. An empty family gives
/// a single cell `[0, 1]` of depth 0.
pub fn depth_profile(sets: &[IntervalSet]) -> Vec<DepthCell> {
    let mut out: Vec<DepthCell> = Vec::new();
    for (cell, depth) in elementary_cells(sets) {
        let (lo, hi, closed) = match cell {
            Cell::Point(x) => (x.clone(), x, true),
            Cell::Open(a, b) => (a, b, false),
        };
        match out.last_mut() {
            Some(last) if last.depth == depth => {
                last.hi = hi;
                last.hi_closed = closed;
            }
            _ => out.push(DepthCell {
                lo,
                hi,
                lo_closed: closed,
                hi_closed: closed,
                depth,
            }),
        }
    }
    out
}

/// Leftmost point lying in at least `t` of the sets, with the first `t`
/// indices of sets that contain it.
///
/// The point is the left endpoint of the leftmost elementary cell of depth
/// `>= t`; sets are closed, so that endpoint is at least as deep as the cell.
pub fn deep_witness(sets: &[IntervalSet], t: usize) -> Result<Option<DeepWitness>> {
    if t == 0 {
        return Err(Error::ZeroDepth);
    }
    let Some((cell, _)) = elementary_cells(sets).into_iter().find(|(_, d)| *d >= t) else {
        return Ok(None);
    };
    let point = cell.left().clone();
    let members: Vec<usize> = sets
        .iter()
        .enumerate()
        .filter(|(_, s)| s.contains(&point))
        .map(|(k, _)| k)
        .take(t)
        .collect();
    debug_assert_eq!(members.len(), t);
    Ok(Some(DeepWitness { point, members }))
}
