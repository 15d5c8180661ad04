#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use transversal_core::exact::Rational;
use transversal_core::geometry::{Line3, Point3};
use transversal_core::interval::{make_cover, IntervalSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn r(s: &str) -> Rational {
    s.parse().expect("rational literal")
}

/// `p/q` with `|p| <= num`, `1 <= q <= den`.
pub fn rational(rng: &mut impl Rng, num: i64, den: i64) -> Rational {
    Rational::frac(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

pub fn unit_rational(rng: &mut impl Rng, den: i64) -> Rational {
    let q = rng.gen_range(1..=den);
    Rational::frac(rng.gen_range(0..=q), q)
}

/// A member of 𝒦: `[0, 1]` minus `2^level` random intervals of the cover.
pub fn random_k(rng: &mut impl Rng, delta: &Rational, level: u32) -> IntervalSet {
    let cover = make_cover(delta, level).expect("valid delta");
    let picks: Vec<usize> = (0..cover.picks_per_set())
        .map(|_| rng.gen_range(0..cover.len()))
        .collect();
    cover.remove_intervals(&picks).expect("valid picks")
}

pub fn random_point(rng: &mut impl Rng, num: i64, den: i64) -> Point3 {
    Point3::new(
        rational(rng, num, den),
        rational(rng, num, den),
        rational(rng, num, den),
    )
}

/// A random line; about a third are rulings written in a disguised form
/// (arbitrary base point on the ruling, scaled direction).
pub fn random_line(rng: &mut impl Rng) -> Line3 {
    match rng.gen_range(0..6) {
        0 => {
            let c = rational(rng, 6, 5);
            let y0 = rational(rng, 6, 5);
            let k = nonzero(rng);
            Line3::new(
                Point3::new(c.clone(), y0.clone(), &c * &y0),
                Point3::new(Rational::zero(), k.clone(), &k * &c),
            )
            .unwrap()
        }
        1 => {
            let b = rational(rng, 6, 5);
            let x0 = rational(rng, 6, 5);
            let k = nonzero(rng);
            Line3::new(
                Point3::new(x0.clone(), b.clone(), &b * &x0),
                Point3::new(k.clone(), Rational::zero(), &k * &b),
            )
            .unwrap()
        }
        _ => loop {
            let d = random_point(rng, 4, 3);
            if !d.is_zero() {
                break Line3::new(random_point(rng, 6, 5), d).unwrap();
            }
        },
    }
}

pub fn nonzero(rng: &mut impl Rng) -> Rational {
    loop {
        let k = rational(rng, 5, 4);
        if !k.is_zero() {
            return k;
        }
    }
}

/// Generic line through the cube with rational data, never a ruling.
pub fn random_other_line(rng: &mut impl Rng) -> Line3 {
    loop {
        let l = random_line(rng);
        if !l.class().on_surface() {
            return l;
        }
    }
}
