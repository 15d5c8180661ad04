use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// A closed interval `[lo, hi]`; `lo == hi` is a single point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Interval> {
        if lo > hi {
            return Err(Error::Config(format!("interval [{lo}, {hi}] has lo > hi")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn len(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// A finite union of closed rational intervals, stored sorted and pairwise
/// disjoint with strict gaps (`hi_j < lo_{j+1}`), so the representation of a
/// set is unique.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> IntervalSet {
        IntervalSet::default()
    }

    /// `[0, 1]`
    pub fn unit() -> IntervalSet {
        IntervalSet {
            intervals: vec![Interval {
                lo: Rational::zero(),
                hi: Rational::one(),
            }],
        }
    }

    pub fn point(x: Rational) -> IntervalSet {
        IntervalSet {
            intervals: vec![Interval {
                lo: x.clone(),
                hi: x,
            }],
        }
    }

    /// Builds the union of arbitrary closed intervals.
    pub fn from_intervals<I>(parts: I) -> Result<IntervalSet>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let mut parts = parts
            .into_iter()
            .map(|(lo, hi)| Interval::new(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        parts.sort_by(|a, b| a.lo.cmp(&b.lo));
        let mut out: Vec<Interval> = Vec::with_capacity(parts.len());
        for iv in parts {
            match out.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => out.push(iv),
            }
        }
        Ok(IntervalSet { intervals: out })
    }

    /// `[lo, hi]` minus the union of the given open intervals.
    pub fn complement_of_open(
        lo: &Rational,
        hi: &Rational,
        open: &[(Rational, Rational)],
    ) -> IntervalSet {
        let mut open: Vec<&(Rational, Rational)> = open.iter().filter(|(c, d)| c < d).collect();
        open.sort_by(|a, b| a.0.cmp(&b.0));
        // merge overlapping open intervals; touching ones keep their shared point
        let mut merged: Vec<(Rational, Rational)> = Vec::new();
        for (c, d) in open {
            match merged.last_mut() {
                Some(last) if c < &last.1 => {
                    if d > &last.1 {
                        last.1 = d.clone();
                    }
                }
                _ => merged.push((c.clone(), d.clone())),
            }
        }
        let mut out = Vec::new();
        let mut cursor = lo.clone();
        for (c, d) in merged {
            if &c > hi {
                break;
            }
            if c >= cursor {
                out.push(Interval {
                    lo: cursor.clone(),
                    hi: c,
                });
            }
            if d > cursor {
                cursor = d;
            }
        }
        if &cursor <= hi {
            out.push(Interval {
                lo: cursor,
                hi: hi.clone(),
            });
        }
        IntervalSet { intervals: out }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn min(&self) -> Option<&Rational> {
        self.intervals.first().map(|iv| &iv.lo)
    }

    pub fn max(&self) -> Option<&Rational> {
        self.intervals.last().map(|iv| &iv.hi)
    }

    /// Index of the interval containing `x`.
    pub fn locate(&self, x: &Rational) -> Option<usize> {
        let idx = self.intervals.partition_point(|iv| &iv.hi < x);
        (idx < self.intervals.len() && &self.intervals[idx].lo <= x).then_some(idx)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.locate(x).is_some()
    }

    /// The open gap `(hi_j, lo_{j+1})` containing `x`, if `x` lies strictly
    /// between two intervals of the set.
    pub fn gap_around(&self, x: &Rational) -> Option<(&Rational, &Rational)> {
        let idx = self.intervals.partition_point(|iv| &iv.hi < x);
        if idx == 0 || idx == self.intervals.len() || &self.intervals[idx].lo <= x {
            return None;
        }
        Some((&self.intervals[idx - 1].hi, &self.intervals[idx].lo))
    }

    /// Open gaps between consecutive intervals, left to right.
    pub fn gaps(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.intervals.windows(2).map(|w| (&w[0].hi, &w[1].lo))
    }

    pub fn measure(&self) -> Rational {
        self.intervals.iter().map(Interval::len).sum()
    }

    pub fn within_unit(&self) -> bool {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => lo >= &Rational::zero() && hi <= &Rational::one(),
            _ => true,
        }
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let (a, b) = (&self.intervals, &other.intervals);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let lo = if a[i].lo > b[j].lo {
                &a[i].lo
            } else {
                &b[j].lo
            };
            let hi = if a[i].hi < b[j].hi {
                &a[i].hi
            } else {
                &b[j].hi
            };
            if lo <= hi {
                out.push(Interval {
                    lo: lo.clone(),
                    hi: hi.clone(),
                });
            }
            if a[i].hi < b[j].hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet { intervals: out }
    }

    /// Canonical text key, used for hashing assigned sets.
    pub fn canonical_text(&self) -> String {
        let mut s = String::new();
        for iv in &self.intervals {
            s.push_str(&format!("[{},{}]", iv.lo, iv.hi));
        }
        s
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "∅");
        }
        for (k, iv) in self.intervals.iter().enumerate() {
            if k > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "[{}, {}]", iv.lo, iv.hi)?;
        }
        Ok(())
    }
}

/// Intersection of all sets in the list; the empty list has no defined
/// intersection and yields `None`.
pub fn intersect_many(sets: &[IntervalSet]) -> Option<IntervalSet> {
    let (first, rest) = sets.split_first()?;
    let mut acc = first.clone();
    for s in rest {
        if acc.is_empty() {
            break;
        }
        acc = acc.intersect(s);
    }
    Some(acc)
}

impl Serialize for IntervalSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[&Rational; 2]> = self.intervals.iter().map(|iv| [&iv.lo, &iv.hi]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntervalSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        // only canonical input: sorted, disjoint, not touching
        let pairs = Vec::<[Rational; 2]>::deserialize(d)?;
        let n = pairs.len();
        let set = IntervalSet::from_intervals(pairs.iter().map(|[a, b]| (a.clone(), b.clone())))
            .map_err(serde::de::Error::custom)?;
        let canonical = set.intervals().len() == n
            && set
                .intervals()
                .iter()
                .zip(&pairs)
                .all(|(iv, [a, b])| &iv.lo == a && &iv.hi == b);
        if !canonical {
            return Err(serde::de::Error::custom(
                "intervals must be sorted, disjoint and separated",
            ));
        }
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn set(parts: &[(&str, &str)]) -> IntervalSet {
        IntervalSet::from_intervals(parts.iter().map(|(a, b)| (r(a), r(b)))).unwrap()
    }

    #[test]
    fn normalization_merges_overlaps_and_touching() {
        let s = set(&[("1/2", "1"), ("0", "1/4"), ("1/4", "1/3"), ("3/4", "7/8")]);
        assert_eq!(s, set(&[("0", "1/3"), ("1/2", "1")]));
        assert!(IntervalSet::from_intervals([(r("1"), r("0"))]).is_err());
    }

    #[test]
    fn measure_examples() {
        assert_eq!(IntervalSet::unit().measure(), Rational::one());
        assert_eq!(set(&[("0", "1/4"), ("1/2", "1")]).measure(), r("3/4"));
        assert_eq!(IntervalSet::empty().measure(), Rational::zero());
        assert_eq!(IntervalSet::point(r("1/3")).measure(), Rational::zero());
    }

    #[test]
    fn intersection_examples() {
        let a = set(&[("0", "1/2")]);
        assert_eq!(
            intersect_many(&[a.clone(), set(&[("1/4", "3/4")])]).unwrap(),
            set(&[("1/4", "1/2")])
        );
        assert_eq!(
            intersect_many(&[a.clone(), set(&[("1/2", "1")])]).unwrap(),
            IntervalSet::point(r("1/2"))
        );
        assert!(
            intersect_many(&[set(&[("0", "1/4")]), set(&[("1/2", "1")])])
                .unwrap()
                .is_empty()
        );
        assert!(intersect_many(&[]).is_none());
    }

    #[test]
    fn membership_and_gaps() {
        let s = set(&[("0", "1/4"), ("1/2", "1/2"), ("3/4", "1")]);
        assert!(s.contains(&r("0")));
        assert!(s.contains(&r("1/2")));
        assert!(!s.contains(&r("1/3")));
        assert!(!s.contains(&r("-1")));
        assert_eq!(s.gap_around(&r("1/3")), Some((&r("1/4"), &r("1/2"))));
        assert_eq!(s.gap_around(&r("1/2")), None);
        assert_eq!(s.gap_around(&r("2")), None);
        assert_eq!(s.gaps().count(), 2);
    }

    #[test]
    fn complement_keeps_shared_points_of_touching_open_intervals() {
        let open = vec![(r("0"), r("1/4")), (r("1/4"), r("1/2"))];
        let c = IntervalSet::complement_of_open(&r("0"), &r("1"), &open);
        assert_eq!(c, set(&[("0", "0"), ("1/4", "1/4"), ("1/2", "1")]));
        let open = vec![(r("-1/8"), r("1/8")), (r("7/8"), r("9/8"))];
        let c = IntervalSet::complement_of_open(&r("0"), &r("1"), &open);
        assert_eq!(c, set(&[("1/8", "7/8")]));
        let c = IntervalSet::complement_of_open(&r("0"), &r("1"), &[(r("-1"), r("2"))]);
        assert!(c.is_empty());
    }

    #[test]
    fn json_form() {
        let s = set(&[("0", "1/16"), ("3/16", "5/16")]);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"[["0/1","1/16"],["3/16","5/16"]]"#);
        assert_eq!(serde_json::from_str::<IntervalSet>(&text).unwrap(), s);
        assert!(serde_json::from_str::<IntervalSet>(r#"[["1/2","1/4"]]"#).is_err());
    }
}
