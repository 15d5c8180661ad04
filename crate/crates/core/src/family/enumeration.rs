use num::{BigInt, Integer};

use crate::exact::Rational;

/// The rationals of `[0, 1]` in a fixed order: `0, 1`, then reduced
/// fractions by increasing denominator and, within a denominator, by
/// increasing numerator. Indices start at 1.
#[derive(Clone, Debug)]
pub struct RationalEnumeration {
    den: u64,
    num: u64,
    started: u8,
}

impl Default for RationalEnumeration {
    fn default() -> Self {
        RationalEnumeration::new()
    }
}

impl RationalEnumeration {
    pub fn new() -> RationalEnumeration {
        RationalEnumeration {
            den: 2,
            num: 0,
            started: 0,
        }
    }
}

impl Iterator for RationalEnumeration {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        match self.started {
            0 => {
                self.started = 1;
                return Some(Rational::zero());
            }
            1 => {
                self.started = 2;
                return Some(Rational::one());
            }
            _ => {}
        }
        loop {
            self.num += 1;
            if self.num >= self.den {
                self.den += 1;
                self.num = 0;
                continue;
            }
            if self.num.gcd(&self.den) == 1 {
                return Some(Rational::frac(self.num as i64, self.den as i64));
            }
        }
    }
}

fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// `q_n`, the `n`-th rational of the enumeration (1-based).
pub fn enumerate_q0(n: usize) -> Rational {
    assert!(n >= 1, "enumeration is 1-based");
    match n {
        1 => return Rational::zero(),
        2 => return Rational::one(),
        _ => {}
    }
    let mut rest = (n - 2) as u64;
    let mut den = 2u64;
    loop {
        let phi = totient(den);
        if rest <= phi {
            break;
        }
        rest -= phi;
        den += 1;
    }
    let num = (1..den)
        .filter(|k| k.gcd(&den) == 1)
        .nth((rest - 1) as usize)
        .expect("rank within totient");
    Rational::frac(num as i64, den as i64)
}

/// Inverse of [`enumerate_q0`] for rationals in `[0, 1]`.
pub fn index_of(q: &Rational) -> Option<usize> {
    if q < &Rational::zero() || q > &Rational::one() {
        return None;
    }
    if q.is_zero() {
        return Some(1);
    }
    if q == &Rational::one() {
        return Some(2);
    }
    let den: u64 = q.denom().try_into().ok()?;
    let num: u64 = q.numer().try_into().ok()?;
    let before: u64 = (2..den).map(totient).sum();
    let rank = (1..=num).filter(|k| k.gcd(&den) == 1).count() as u64;
    usize::try_from(2 + before + rank).ok()
}

/// `ε_n = 4^-(n+2)`
pub fn eps_of(n: usize) -> Rational {
    assert!(n >= 1, "tilt sequence is 1-based");
    Rational::new(BigInt::from(1), BigInt::from(1) << (2 * (n + 2))).expect("nonzero")
}
