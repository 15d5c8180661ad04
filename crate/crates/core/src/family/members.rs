//! Lazy enumeration of the sets `K ∈ 𝒦` that contain a target point and
//! avoid a list of excluded points.
//!
//! `𝒦` is enumerated level by level (`i = 1, 2, …`); within a level the
//! candidates are the nondecreasing pick tuples of length `2^i` over the
//! cover's intervals, in lexicographic order. A tuple qualifies when no
//! picked interval contains the target and every excluded point lies in
//! some picked interval. Instead of scanning all tuples, the search keeps an
//! exact feasibility test for prefixes (the minimum number of further
//! intervals needed to cover the still-uncovered points, computed greedily)
//! and jumps straight to the next qualifying tuple.

use crate::error::Result;
use crate::exact::Rational;
use crate::interval::{CoverSpec, IntervalSet};

/// Per-level data: the cover and, for each excluded point, the allowed
/// intervals containing it.
struct Level {
    cover: CoverSpec,
    allowed: Vec<bool>,
    /// For each excluded point (in increasing order), the allowed cover
    /// indices containing it, increasing.
    covering: Vec<Vec<usize>>,
    slots: usize,
}

impl Level {
    fn new(
        delta: &Rational,
        level: u32,
        target: &Rational,
        excluded: &[Rational],
    ) -> Result<Level> {
        let cover = CoverSpec::new(delta, level)?;
        let allowed: Vec<bool> = (0..cover.len()).map(|k| !cover.covers(k, target)).collect();
        let half = &cover.length / Rational::integer(2);
        let mut points = excluded.to_vec();
        points.sort();
        points.dedup();
        let covering = points
            .iter()
            .map(|x| {
                // centers c with |c - x| < half: a contiguous index range
                let lo = cover.centers.partition_point(|c| c <= &(x - &half));
                let hi = cover.centers.partition_point(|c| c < &(x + &half));
                (lo..hi).filter(|&k| allowed[k]).collect()
            })
            .collect();
        let slots = cover.picks_per_set();
        Ok(Level {
            cover,
            allowed,
            covering,
            slots,
        })
    }

    /// Minimum number of allowed intervals with index `>= lo` needed to
    /// cover every point whose count is zero; `None` if impossible.
    ///
    /// Greedy: for the leftmost uncovered point take the covering interval
    /// with the largest index (same lengths, so it reaches furthest right).
    fn min_cover(&self, counts: &[u32], lo: usize) -> Option<usize> {
        let mut used = 0;
        let mut reach: Option<usize> = None;
        for (p, cov) in self.covering.iter().enumerate() {
            if counts[p] > 0 {
                continue;
            }
            if let Some(k) = reach {
                if cov.binary_search(&k).is_ok() {
                    continue;
                }
            }
            let k = *cov.last().filter(|&&k| k >= lo)?;
            reach = Some(k);
            used += 1;
        }
        Some(used)
    }

    fn first_uncovered(&self, counts: &[u32]) -> Option<usize> {
        counts.iter().position(|&c| c == 0)
    }

    fn first_allowed_from(&self, lo: usize) -> Option<usize> {
        (lo..self.allowed.len()).find(|&k| self.allowed[k])
    }

    fn apply(&self, counts: &mut [u32], k: usize, add: bool) {
        for (p, cov) in self.covering.iter().enumerate() {
            if cov.binary_search(&k).is_ok() {
                if add {
                    counts[p] += 1;
                } else {
                    counts[p] -= 1;
                }
            }
        }
    }

    /// Whether the prefix (summarized by `counts`, last pick `last`, `filled`
    /// slots used) can be completed.
    fn feasible(&self, counts: &[u32], last: usize, filled: usize) -> bool {
        self.min_cover(counts, last)
            .is_some_and(|need| need <= self.slots - filled)
    }

    /// Smallest allowed `v >= lo` such that the prefix plus `v` is feasible.
    ///
    /// Only two kinds of candidates need checking: the smallest allowed
    /// index (which either covers nothing new, making it the cheapest way to
    /// spend a slot, or covers the leftmost uncovered point), and the
    /// intervals containing the leftmost uncovered point. Any other interval
    /// that covers something new lies entirely to the right of that point,
    /// which then could never be covered by a later, larger index.
    fn next_pick(&self, counts: &mut [u32], lo: usize, filled: usize) -> Option<usize> {
        let mut candidates: Vec<usize> = Vec::with_capacity(4);
        if let Some(k) = self.first_allowed_from(lo) {
            candidates.push(k);
        }
        if let Some(p) = self.first_uncovered(counts) {
            candidates.extend(self.covering[p].iter().copied().filter(|&k| k >= lo));
        }
        candidates.sort_unstable();
        candidates.dedup();
        for v in candidates {
            self.apply(counts, v, true);
            let ok = self.feasible(counts, v, filled + 1);
            self.apply(counts, v, false);
            if ok {
                return Some(v);
            }
        }
        None
    }

    /// Extends `picks` to the lexicographically smallest full qualifying
    /// tuple. The prefix must be feasible.
    fn complete(&self, picks: &mut Vec<usize>, counts: &mut [u32]) {
        while picks.len() < self.slots {
            let lo = picks.last().copied().unwrap_or(0);
            let v = self
                .next_pick(counts, lo, picks.len())
                .expect("feasible prefix has a completion");
            self.apply(counts, v, true);
            picks.push(v);
        }
    }

    fn first(&self) -> Option<Vec<usize>> {
        let mut counts = vec![0u32; self.covering.len()];
        if !self.feasible(&counts, 0, 0) || self.first_allowed_from(0).is_none() {
            return None;
        }
        let mut picks = Vec::with_capacity(self.slots);
        self.complete(&mut picks, &mut counts);
        Some(picks)
    }

    /// Lexicographic successor of a qualifying tuple.
    fn successor(&self, prev: &[usize]) -> Option<Vec<usize>> {
        let mut counts = vec![0u32; self.covering.len()];
        for &k in prev {
            self.apply(&mut counts, k, true);
        }
        let mut picks = prev.to_vec();
        while let Some(old) = picks.pop() {
            self.apply(&mut counts, old, false);
            if let Some(v) = self.next_pick(&mut counts, old + 1, picks.len()) {
                self.apply(&mut counts, v, true);
                picks.push(v);
                self.complete(&mut picks, &mut counts);
                return Some(picks);
            }
        }
        None
    }
}

/// Enumerator of the members of 𝒦 containing `target` and avoiding
/// `excluded`, in canonical order.
pub struct MemberSearch {
    delta: Rational,
    target: Rational,
    excluded: Vec<Rational>,
    level: Option<Level>,
    level_index: u32,
    last: Option<Vec<usize>>,
}

/// Levels beyond this are never reached in practice; the bound only keeps a
/// malformed request (a target that coincides with an excluded point) from
/// looping forever.
const MAX_LEVEL: u32 = 40;

impl MemberSearch {
    pub fn new(delta: Rational, target: Rational, mut excluded: Vec<Rational>) -> MemberSearch {
        excluded.sort();
        excluded.dedup();
        MemberSearch {
            delta,
            target,
            excluded,
            level: None,
            level_index: 0,
            last: None,
        }
    }

    /// Next qualifying `(level, picks, set)`. Distinct calls may yield equal
    /// sets; callers that need distinct sets filter them.
    pub fn next_member(&mut self) -> Result<Option<(u32, Vec<usize>, IntervalSet)>> {
        if self.excluded.contains(&self.target) {
            return Ok(None);
        }
        loop {
            if self.level.is_none() {
                if self.level_index >= MAX_LEVEL {
                    return Ok(None);
                }
                self.level_index += 1;
                self.level = Some(Level::new(
                    &self.delta,
                    self.level_index,
                    &self.target,
                    &self.excluded,
                )?);
                self.last = None;
            }
            let level = self.level.as_ref().expect("level set above");
            let next = match &self.last {
                None => level.first(),
                Some(prev) => level.successor(prev),
            };
            match next {
                Some(picks) => {
                    let set = level.cover.remove_intervals(&picks)?;
                    self.last = Some(picks.clone());
                    return Ok(Some((self.level_index, picks, set)));
                }
                None => self.level = None,
            }
        }
    }
}
