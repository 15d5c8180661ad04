use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::BigInt;

use super::rational::{Rational, Sign};
use crate::error::{Error, Result};

/// An element `a + b·√d` of a real quadratic extension of the rationals.
///
/// Construction normalizes: a zero `b` forces `d = 0`, a radicand that is the
/// square of a rational is folded into `a`, and a non-square radicand is
/// rescaled to an integer (`√(n/m) = √(nm)/m`). Values over different
/// radicands can be tested for equality, but arithmetic and ordering between
/// them is only defined when one side is rational or the radicands differ by a
/// rational square factor.
#[derive(Clone)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: Rational,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: Rational) -> Result<QuadExt> {
        if d.sign() == Sign::Negative {
            return Err(Error::NegativeRadicand(d.to_string()));
        }
        if b.is_zero() || d.is_zero() {
            return Ok(QuadExt::rational(a));
        }
        if let Some(root) = d.sqrt_exact() {
            return Ok(QuadExt::rational(a + b * root));
        }
        let m = Rational::integer(d.denom().clone());
        let n = Rational::integer(d.numer().clone());
        Ok(QuadExt {
            a,
            b: b / &m,
            d: n * m,
        })
    }

    pub fn rational(a: Rational) -> QuadExt {
        QuadExt {
            a,
            b: Rational::zero(),
            d: Rational::zero(),
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    /// Exact sign of `a + b·√d`.
    pub fn sign(&self) -> Sign {
        let sa = self.a.sign();
        let sb = self.b.sign();
        if sb == Sign::Zero {
            return sa;
        }
        if sa == Sign::Zero || sa == sb {
            return sb;
        }
        // opposite signs: the larger magnitude wins
        match self.a.square().cmp(&(self.b.square() * &self.d)) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Sign::Zero,
        }
    }

    /// Rewrites `other` over this value's radicand, if both are irrational
    /// and their radicands differ by a rational square.
    fn align(&self, other: &QuadExt) -> Result<(Rational, Rational, Rational)> {
        if other.is_rational() {
            return Ok((self.d.clone(), self.b.clone(), Rational::zero()));
        }
        if self.is_rational() {
            return Ok((other.d.clone(), Rational::zero(), other.b.clone()));
        }
        if self.d == other.d {
            return Ok((self.d.clone(), self.b.clone(), other.b.clone()));
        }
        match (&other.d / &self.d).sqrt_exact() {
            Some(t) => Ok((self.d.clone(), self.b.clone(), &other.b * t)),
            None => Err(Error::MixedRadicands(
                self.d.to_string(),
                other.d.to_string(),
            )),
        }
    }

    pub fn try_add(&self, other: &QuadExt) -> Result<QuadExt> {
        let (d, b1, b2) = self.align(other)?;
        QuadExt::new(&self.a + &other.a, b1 + b2, d)
    }

    pub fn try_sub(&self, other: &QuadExt) -> Result<QuadExt> {
        let (d, b1, b2) = self.align(other)?;
        QuadExt::new(&self.a - &other.a, b1 - b2, d)
    }

    pub fn try_mul(&self, other: &QuadExt) -> Result<QuadExt> {
        let (d, b1, b2) = self.align(other)?;
        let a = &self.a * &other.a + &b1 * &b2 * &d;
        let b = &self.a * &b2 + &b1 * &other.a;
        QuadExt::new(a, b, d)
    }

    /// Multiplicative inverse through the conjugate.
    pub fn recip(&self) -> Result<QuadExt> {
        let norm = self.a.square() - self.b.square() * &self.d;
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        QuadExt::new(
            self.a.checked_div(&norm)?,
            (-&self.b).checked_div(&norm)?,
            self.d.clone(),
        )
    }

    pub fn try_div(&self, other: &QuadExt) -> Result<QuadExt> {
        self.try_mul(&other.recip()?)
    }

    pub fn scale(&self, k: &Rational) -> QuadExt {
        QuadExt::new(&self.a * k, &self.b * k, self.d.clone()).expect("radicand unchanged")
    }

    pub fn add_rational(&self, k: &Rational) -> QuadExt {
        QuadExt {
            a: &self.a + k,
            b: self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn neg(&self) -> QuadExt {
        self.scale(&Rational::frac(-1, 1))
    }

    pub fn try_cmp(&self, other: &QuadExt) -> Result<Ordering> {
        Ok(match self.try_sub(other)?.sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        })
    }

    pub fn cmp_rational(&self, k: &Rational) -> Ordering {
        match self.add_rational(&-k).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }

    /// A rational within `10^-digits · (1 + |b|)` of the value.
    pub fn approx(&self, digits: u32) -> Rational {
        if self.is_rational() {
            return self.a.clone();
        }
        let scale = BigInt::from(10).pow(digits);
        // floor(√d · 10^digits), d is an integer after normalization
        let root = (self.d.numer() * &scale * &scale).sqrt();
        let sqrt_d = Rational::new(root, scale).expect("nonzero scale");
        &self.a + &self.b * sqrt_d
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        let extra = 10 + (self.b.abs().numer().bits() as u32 / 3);
        self.approx(digits as u32 + extra).to_decimal(digits)
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &QuadExt) -> bool {
        if self.a != other.a {
            return false;
        }
        match self.align(other) {
            Ok((_, b1, b2)) => b1 == b2,
            // 1, √d, √d' are linearly independent over ℚ
            Err(_) => false,
        }
    }
}

impl Eq for QuadExt {}

impl From<Rational> for QuadExt {
    fn from(a: Rational) -> QuadExt {
        QuadExt::rational(a)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QuadExt {
    type Err = Error;

    fn from_str(s: &str) -> Result<QuadExt> {
        let bad = || Error::Parse {
            what: "quadratic number",
            input: s.to_string(),
        };
        let (a, rest) = s.trim().split_once(" + ").ok_or_else(bad)?;
        let (b, rest) = rest.split_once("*sqrt(").ok_or_else(bad)?;
        let d = rest.strip_suffix(')').ok_or_else(bad)?;
        QuadExt::new(a.parse()?, b.parse()?, d.parse()?)
    }
}

/// Real roots of `A s² + B s + C = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootSet {
    None,
    One(QuadExt),
    /// Two distinct roots, smaller first.
    Two(QuadExt, QuadExt),
    /// The zero polynomial; every real is a root.
    All,
}

impl RootSet {
    pub fn roots(&self) -> Vec<QuadExt> {
        match self {
            RootSet::None | RootSet::All => Vec::new(),
            RootSet::One(r) => vec![r.clone()],
            RootSet::Two(r, s) => vec![r.clone(), s.clone()],
        }
    }
}

/// Solves `A s² + B s + C = 0` exactly. The zero polynomial is an error.
pub fn solve_quadratic(a: &Rational, b: &Rational, c: &Rational) -> Result<RootSet> {
    match solve_quadratic_allow_zero(a, b, c) {
        RootSet::All => Err(Error::DegenerateEquation),
        roots => Ok(roots),
    }
}

/// Like [`solve_quadratic`], but reports the zero polynomial as
/// [`RootSet::All`].
pub fn solve_quadratic_allow_zero(a: &Rational, b: &Rational, c: &Rational) -> RootSet {
    if a.is_zero() {
        if b.is_zero() {
            return if c.is_zero() {
                RootSet::All
            } else {
                RootSet::None
            };
        }
        return RootSet::One(QuadExt::rational(-(c / b)));
    }
    let disc = b.square() - Rational::integer(4) * a * c;
    let two_a = a + a;
    let mid = -(b / &two_a);
    match disc.sign() {
        Sign::Negative => RootSet::None,
        Sign::Zero => RootSet::One(QuadExt::rational(mid)),
        Sign::Positive => {
            let half = two_a.recip().expect("a is nonzero").abs();
            let lo = QuadExt::new(mid.clone(), -&half, disc.clone()).expect("positive radicand");
            let hi = QuadExt::new(mid, half, disc).expect("positive radicand");
            RootSet::Two(lo, hi)
        }
    }
}
