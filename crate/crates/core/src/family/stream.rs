use std::collections::{HashMap, HashSet};

use sha2::{Digest, Sha256};

use super::body::{build_body, ConvexBody};
use super::enumeration::RationalEnumeration;
use super::members::MemberSearch;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::interval::{validate_delta, IntervalSet};

/// First dyadic offset used around each limit point: `q_m ± 2^-2`.
const FIRST_OFFSET_EXP: i64 = 2;

/// Generator of the sequence `q^m_1, q^m_2, …` converging to `q_m`:
/// candidates `q_m + 2^-j, q_m - 2^-j, q_m + 2^-(j+1), …`, dropping those
/// outside `[0, 1]`.
#[derive(Clone, Debug)]
struct OffsetGenerator {
    center: Rational,
    exp: i64,
    plus_next: bool,
}

impl OffsetGenerator {
    fn new(center: Rational) -> OffsetGenerator {
        OffsetGenerator {
            center,
            exp: FIRST_OFFSET_EXP,
            plus_next: true,
        }
    }

    fn candidate(&mut self) -> Rational {
        let step = Rational::pow2(-self.exp);
        let value = if self.plus_next {
            &self.center + step
        } else {
            &self.center - step
        };
        if !self.plus_next {
            self.exp += 1;
        }
        self.plus_next = !self.plus_next;
        value
    }
}

struct Limit {
    generator: OffsetGenerator,
    members: MemberSearch,
    emitted: usize,
}

/// Deterministic lazy enumeration of the family.
///
/// Emissions follow the pairs `(m, n)` ordered by `m + n`, then `m`; the
/// `n`-th emission for `m` draws the next fresh term of the sequence
/// converging to `q_m`, assigns it the next unused set of `𝒦` that contains
/// `q_m` and avoids `q_1, …, q_{m-1}`, and gives it tilt index `f` equal to
/// its position in the emission order.
pub struct FamilyStream {
    delta: Rational,
    q0: Vec<Rational>,
    q0_source: RationalEnumeration,
    limits: Vec<Limit>,
    /// every emitted `q` with its `(m, f)`
    registry: HashMap<Rational, (usize, usize)>,
    /// digests of assigned sets; a digest rather than the set keeps memory
    /// flat over long runs
    assigned: HashSet<[u8; 32]>,
    next_pair: (usize, usize),
    emitted: usize,
}

/// A stream position summary, for reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Emission {
    pub m: usize,
    pub n: usize,
    pub f: usize,
}

impl FamilyStream {
    pub fn new(delta: Rational) -> Result<FamilyStream> {
        validate_delta(&delta)?;
        Ok(FamilyStream {
            delta,
            q0: Vec::new(),
            q0_source: RationalEnumeration::new(),
            limits: Vec::new(),
            registry: HashMap::new(),
            assigned: HashSet::new(),
            next_pair: (1, 1),
            emitted: 0,
        })
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn emitted(&self) -> usize {
        self.emitted
    }

    /// `q_m` (1-based).
    pub fn q0(&mut self, m: usize) -> &Rational {
        while self.q0.len() < m {
            let q = self.q0_source.next().expect("enumeration is infinite");
            self.q0.push(q);
        }
        &self.q0[m - 1]
    }

    /// `(m, f)` of an emitted value.
    pub fn lookup(&self, q: &Rational) -> Option<(usize, usize)> {
        self.registry.get(q).copied()
    }

    fn limit(&mut self, m: usize) -> &mut Limit {
        while self.limits.len() < m {
            let k = self.limits.len() + 1;
            let center = self.q0(k).clone();
            let excluded = self.q0[..k - 1].to_vec();
            self.limits.push(Limit {
                generator: OffsetGenerator::new(center.clone()),
                members: MemberSearch::new(self.delta.clone(), center, excluded),
                emitted: 0,
            });
        }
        &mut self.limits[m - 1]
    }

    /// Next term of the sequence converging to `q_m`, registered as used.
    pub fn next_qm_term(&mut self, m: usize) -> Rational {
        assert!(m >= 1, "limit points are 1-based");
        let center = self.q0(m).clone();
        loop {
            let cand = self.limit(m).generator.candidate();
            if cand < Rational::zero() || cand > Rational::one() || cand == center {
                continue;
            }
            if self.registry.contains_key(&cand) {
                continue;
            }
            self.registry.insert(cand.clone(), (m, 0));
            return cand;
        }
    }

    /// The next unused member of 𝒦 containing `q_m` and avoiding
    /// `q_1, …, q_{m-1}`.
    pub fn assign_g(&mut self, q: &Rational, m: usize) -> Result<IntervalSet> {
        match self.registry.get(q) {
            Some((owner, _)) if *owner == m => {}
            _ => {
                return Err(Error::Config(format!(
                    "{q} was not emitted as a member of sequence {m}"
                )))
            }
        }
        loop {
            let found = self.limit(m).members.next_member()?;
            let Some((_, _, set)) = found else {
                return Err(Error::Config(format!("no members left for limit {m}")));
            };
            let digest: [u8; 32] = Sha256::digest(set.canonical_text().as_bytes()).into();
            if self.assigned.insert(digest) {
                return Ok(set);
            }
        }
    }

    fn advance_pair(&mut self) -> (usize, usize) {
        let (m, n) = self.next_pair;
        self.next_pair = if n == 1 { (1, m + 1) } else { (m + 1, n - 1) };
        (m, n)
    }

    /// Emits the next body.
    pub fn next_body(&mut self) -> Result<ConvexBody> {
        let (m, n) = self.advance_pair();
        let q = self.next_qm_term(m);
        let support = self.assign_g(&q, m)?;
        self.emitted += 1;
        let f = self.emitted;
        self.registry.insert(q.clone(), (m, f));
        let limit = self.limit(m);
        limit.emitted += 1;
        debug_assert_eq!(limit.emitted, n);
        build_body(q, m, f, support)
    }

    pub fn last_emission(&self) -> Option<Emission> {
        (self.emitted > 0).then(|| {
            let (m, n) = self.next_pair;
            // step the pair order back once
            let (pm, pn) = if m == 1 { (n - 1, 1) } else { (m - 1, n + 1) };
            Emission {
                m: pm,
                n: pn,
                f: self.emitted,
            }
        })
    }

    pub fn take_bodies(&mut self, count: usize) -> Result<Vec<ConvexBody>> {
        (0..count).map(|_| self.next_body()).collect()
    }
}

/// The first `count` bodies of the family for `delta`.
pub fn truncate_family(delta: &Rational, count: usize) -> Result<Vec<ConvexBody>> {
    FamilyStream::new(delta.clone())?.take_bodies(count)
}
