//! The sets K: [0, 1] minus 2^i open intervals of one cover. Any n of them,
//! each of measure at least delta, share a point of depth at least n·delta.

use transversal_core::exact::Rational;
use transversal_core::interval::{deep_witness, depth_profile, make_cover, IntervalSet};

fn main() -> transversal_core::Result<()> {
    let delta = Rational::frac(1, 2);
    let cover = make_cover(&delta, 2)?;
    println!(
        "level 2: {} intervals of length {}, remove {} per set",
        cover.len(),
        cover.length,
        cover.picks_per_set()
    );

    let picks = [
        [0, 3, 7, 16],
        [1, 5, 9, 12],
        [2, 4, 8, 15],
        [6, 10, 13, 14],
        [0, 2, 11, 16],
    ];
    let sets: Vec<IntervalSet> = picks
        .iter()
        .map(|p| cover.remove_intervals(p))
        .collect::<Result<_, _>>()?;
    for (k, s) in sets.iter().enumerate() {
        println!("K{} = {s}  measure {}", k + 1, s.measure());
    }

    println!("depth profile:");
    for cell in depth_profile(&sets) {
        let (l, h) = (
            if cell.lo_closed { "[" } else { "(" },
            if cell.hi_closed { "]" } else { ")" },
        );
        println!("  {l}{}, {}{h}  depth {}", cell.lo, cell.hi, cell.depth);
    }

    // five sets of measure >= 1/2 have total mass >= 5/2, so some point
    // lies in at least three of them
    let w = deep_witness(&sets, 3)?.expect("pigeonhole");
    println!(
        "point {} lies in sets {:?}",
        w.point,
        w.members.iter().map(|k| k + 1).collect::<Vec<_>>()
    );
    Ok(())
}
