//! Piercing matrix of a family prefix against a pool of lines x = r, z = ry,
//! and the smallest subpool meeting every body.

use transversal_core::exact::Rational;
use transversal_core::family::truncate_family;
use transversal_core::geometry::Line3;
use transversal_core::pierce::{min_line_cover, piercing_matrix};

fn main() -> transversal_core::Result<()> {
    let bodies = truncate_family(&Rational::frac(1, 2), 12)?;
    let pool: Vec<Line3> = (0..=8)
        .map(|k| Line3::ruling_x(Rational::frac(k, 8)))
        .collect();
    let m = piercing_matrix(&bodies, &pool);
    println!("rows: bodies, columns: r = 0, 1/8, ..., 1");
    for (b, row) in bodies.iter().zip(&m.rows) {
        let cells: String = row.iter().map(|&h| if h { '#' } else { '.' }).collect();
        println!("  f={:>2} {cells}", b.f_index());
    }
    match min_line_cover(&m) {
        Ok(c) => {
            let rs: Vec<String> = c
                .columns
                .iter()
                .map(|&j| Rational::frac(j as i64, 8).to_string())
                .collect();
            println!(
                "minimum cover: {} lines, r in {{{}}} (exact: {})",
                c.size(),
                rs.join(", "),
                c.exact
            );
        }
        Err(e) => println!("{e}"),
    }
    Ok(())
}
