//! The first bodies of the family: one per term of the sequences converging
//! to each rational, over a support that contains the limit and avoids all
//! earlier rationals.
//!
//!     cargo run --example build_family -- [count] [delta]

use transversal_core::commands::verify_family;
use transversal_core::exact::Rational;
use transversal_core::family::FamilyStream;

fn main() -> transversal_core::Result<()> {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().map_or(12, |s| s.parse().expect("count"));
    let delta: Rational = args
        .next()
        .map_or(Rational::frac(1, 2), |s| s.parse().expect("delta"));

    let mut stream = FamilyStream::new(delta.clone())?;
    let bodies = stream.take_bodies(count)?;
    println!(
        "{:>4} {:>3} {:>10} {:>12} {:>10}  support",
        "f", "m", "q", "eps", "max gap"
    );
    for b in &bodies {
        println!(
            "{:>4} {:>3} {:>10} {:>12} {:>10}  {}",
            b.f_index(),
            b.m(),
            b.q().to_string(),
            b.eps().to_decimal(3),
            b.max_vertical_distance().to_decimal(3),
            b.support()
        );
    }
    verify_family(&bodies, &delta)?;
    println!("all {} bodies check out", bodies.len());
    Ok(())
}
