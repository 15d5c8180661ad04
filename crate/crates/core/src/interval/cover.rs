use serde::{Deserialize, Serialize};

use super::set::IntervalSet;
use crate::error::{Error, Result};
use crate::exact::Rational;

/// An open cover of `[0, 1]` at one level `i`: intervals of length
/// `(1 - δ) / 2^i` centered on the grid `k · length / 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSpec {
    pub delta: Rational,
    pub level: u32,
    pub length: Rational,
    pub centers: Vec<Rational>,
}

pub fn validate_delta(delta: &Rational) -> Result<()> {
    if delta <= &Rational::zero() || delta >= &Rational::one() {
        return Err(Error::Config(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    Ok(())
}

impl CoverSpec {
    pub fn new(delta: &Rational, level: u32) -> Result<CoverSpec> {
        validate_delta(delta)?;
        if level == 0 {
            return Err(Error::Config("cover level must be positive".into()));
        }
        let length = (Rational::one() - delta) * Rational::pow2(-(level as i64));
        let step = &length / Rational::integer(2);
        let last = (Rational::integer(2) / &length).ceil();
        let last: usize = last
            .try_into()
            .map_err(|_| Error::Config("cover too fine".into()))?;
        let centers = (0..=last).map(|k| Rational::integer(k) * &step).collect();
        Ok(CoverSpec {
            delta: delta.clone(),
            level,
            length,
            centers,
        })
    }

    /// Number of intervals removed per set at this level.
    pub fn picks_per_set(&self) -> usize {
        1usize << self.level
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// Open interval `k` as `(lo, hi)`.
    pub fn open_interval(&self, k: usize) -> (Rational, Rational) {
        let half = &self.length / Rational::integer(2);
        (&self.centers[k] - &half, &self.centers[k] + &half)
    }

    /// Whether open interval `k` contains `x`.
    pub fn covers(&self, k: usize, x: &Rational) -> bool {
        let half = &self.length / Rational::integer(2);
        (&self.centers[k] - x).abs() < half
    }

    /// `[0, 1]` minus the union of the picked open intervals. Repeated
    /// indices are allowed.
    pub fn remove_intervals(&self, picks: &[usize]) -> Result<IntervalSet> {
        if picks.len() != self.picks_per_set() {
            return Err(Error::PickCount {
                expected: self.picks_per_set(),
                got: picks.len(),
            });
        }
        let mut open = Vec::with_capacity(picks.len());
        for &k in picks {
            if k >= self.centers.len() {
                return Err(Error::PickIndex {
                    index: k,
                    centers: self.centers.len(),
                });
            }
            open.push(self.open_interval(k));
        }
        open.sort();
        open.dedup();
        Ok(IntervalSet::complement_of_open(
            &Rational::zero(),
            &Rational::one(),
            &open,
        ))
    }
}

/// The cover used for level `i` of the compact family.
pub fn make_cover(delta: &Rational, level: u32) -> Result<CoverSpec> {
    CoverSpec::new(delta, level)
}

pub fn remove_intervals(cover: &CoverSpec, picks: &[usize]) -> Result<IntervalSet> {
    cover.remove_intervals(picks)
}
