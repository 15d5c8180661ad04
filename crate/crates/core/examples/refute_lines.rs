//! Given finitely many lines, find a body of the family none of them meets,
//! with an exact certificate per line.
//!
//!     cargo run --example refute_lines -- [lines file]

use std::path::PathBuf;

use transversal_core::exact::Rational;
use transversal_core::family::FamilyStream;
use transversal_core::io::read_lines;
use transversal_core::pierce::{refute, verify_report, RefuteOutcome};

fn main() -> transversal_core::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/lines_mixed.jsonl")
        });
    let lines = read_lines(&path)?;
    println!("{} lines from {}", lines.len(), path.display());

    let mut stream = FamilyStream::new(Rational::frac(1, 2))?;
    match refute(&lines, &mut stream, 100_000)? {
        RefuteOutcome::Witness(rep) => {
            println!(
                "body f = {} (q = {}, sequence {}) after {} candidates",
                rep.f, rep.witness.q, rep.m, rep.searched
            );
            for e in &rep.lines {
                let c = &e.certificate;
                println!(
                    "  line {} [{}] {:?}: {}",
                    e.index, e.class, c.case, c.inequality
                );
            }
            verify_report(&rep, &lines)?;
            println!("certificates re-verified");
        }
        RefuteOutcome::Exhausted { budget, .. } => println!("no witness in {budget} bodies"),
    }
    Ok(())
}
