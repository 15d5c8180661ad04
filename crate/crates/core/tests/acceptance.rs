//! Acceptance criteria AC1–AC9, one line each. Run with
//! `cargo test --test acceptance`.

mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use common::{random_k, random_line, random_other_line, rng, unit_rational};
use rand::Rng;

use transversal_core::commands::{cmd_refute, verify_refutation, RunConfig};
use transversal_core::exact::{Rational, Sign};
use transversal_core::family::truncate_family;
use transversal_core::geometry::{
    line_surface_intersection, surface_offset, Line3, LineClass, SurfaceHit,
};
use transversal_core::interval::{deep_witness, IntervalSet};
use transversal_core::io;
use transversal_core::pierce::{min_line_cover, pierce, PiercingMatrix, RefuteOutcome};
use transversal_core::Error;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn frac(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

fn within(limit: Duration, start: Instant, detail: String) -> Check {
    let took = start.elapsed();
    if took <= limit {
        Ok(format!(
            "{detail} in {:.2}s (limit {}s)",
            took.as_secs_f64(),
            limit.as_secs()
        ))
    } else {
        Err(format!(
            "{detail} but took {:.2}s (limit {}s)",
            took.as_secs_f64(),
            limit.as_secs()
        ))
    }
}

fn ac1() -> Check {
    let start = Instant::now();
    let mut g = rng(101);
    let mut n = 0;
    for delta in [frac(1, 2), frac(3, 4)] {
        for level in 1..=5 {
            for _ in 0..200 {
                let k = random_k(&mut g, &delta, level);
                if k.measure() < delta || !k.within_unit() {
                    return Err(format!(
                        "delta {delta} level {level}: {k} has measure {}",
                        k.measure()
                    ));
                }
                n += 1;
            }
        }
    }
    within(
        Duration::from_secs(5),
        start,
        format!("{n} sets, all of measure >= delta"),
    )
}

/// Leftmost endpoint or cell midpoint of depth >= t.
fn oracle_witness(sets: &[IntervalSet], t: usize) -> Option<Rational> {
    let mut pts = vec![Rational::zero(), Rational::one()];
    for s in sets {
        for iv in s.intervals() {
            pts.push(iv.lo.clone());
            pts.push(iv.hi.clone());
        }
    }
    pts.sort();
    pts.dedup();
    let mids: Vec<Rational> = pts
        .windows(2)
        .map(|w| (&w[0] + &w[1]) / Rational::integer(2))
        .collect();
    pts.extend(mids);
    pts.sort();
    pts.into_iter()
        .find(|x| sets.iter().filter(|s| s.contains(x)).count() >= t)
}

fn ac2() -> Check {
    let start = Instant::now();
    let mut g = rng(102);
    let delta = frac(1, 2);
    let mut families = 0;
    for t in 2..=4 {
        let n = 2 * t - 1;
        for _ in 0..200 {
            let sets: Vec<IntervalSet> = (0..n)
                .map(|_| {
                    let level = g.gen_range(1..=5);
                    random_k(&mut g, &delta, level)
                })
                .collect();
            let got = deep_witness(&sets, t).map_err(|e| e.to_string())?;
            let want = oracle_witness(&sets, t);
            let Some(w) = got else {
                return Err(format!("t = {t}: no deep point among {n} sets"));
            };
            if Some(&w.point) != want.as_ref() {
                return Err(format!("t = {t}: witness {} vs oracle {want:?}", w.point));
            }
            if w.members.len() != t || !w.members.iter().all(|&k| sets[k].contains(&w.point)) {
                return Err(format!("t = {t}: bad members {:?}", w.members));
            }
            families += 1;
        }
    }
    within(
        Duration::from_secs(10),
        start,
        format!("{families} families, all agree with the oracle"),
    )
}

fn ac3() -> Check {
    let start = Instant::now();
    let mut g = rng(103);
    let bodies = truncate_family(&frac(1, 2), 50).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for b in &bodies {
        let s = b.support();
        let mut inside: Vec<Rational> = Vec::new();
        let mut outside: Vec<Rational> = Vec::new();
        for iv in s.intervals() {
            inside.push(iv.lo.clone());
            inside.push(iv.hi.clone());
        }
        for (a, c) in s.gaps() {
            outside.push((a + c) / Rational::integer(2));
        }
        outside.extend([frac(-1, 7), frac(8, 7), frac(-3, 1), frac(5, 2)]);
        let mut guard = 0;
        while inside.len() < 20 || outside.len() < 20 {
            let x = &unit_rational(&mut g, 2048) * frac(9, 8) - frac(1, 16);
            if s.contains(&x) {
                if inside.len() < 20 {
                    inside.push(x);
                }
            } else if outside.len() < 20 {
                outside.push(x);
            }
            guard += 1;
            if guard > 100_000 {
                return Err(format!("could not sample around body f = {}", b.f_index()));
            }
        }
        inside.truncate(20);
        outside.truncate(20);
        for (x, expect) in inside
            .iter()
            .map(|x| (x, true))
            .chain(outside.iter().map(|x| (x, false)))
        {
            let geometric = pierce(&Line3::ruling_x(x.clone()), b);
            if geometric != expect || s.contains(x) != expect {
                return Err(format!(
                    "body f = {}, r = {x}: pierce {geometric}, membership {expect}",
                    b.f_index()
                ));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} (body, r) pairs, zero discrepancies in {:.2}s",
        start.elapsed().as_secs_f64()
    ))
}

fn ac4() -> Check {
    let start = Instant::now();
    let bodies = truncate_family(&frac(1, 2), 100).map_err(|e| e.to_string())?;
    for b in &bodies {
        let closed = b.max_vertical_distance();
        if &closed > b.eps() {
            return Err(format!("f = {}: bound above eps", b.f_index()));
        }
        let (lo, hi) = (b.r_min().clone(), b.r_max().clone());
        let mut best = Rational::zero();
        // 40 abscissae (the midpoint among them) x 25 heights
        for i in 0..40 {
            let u = if i == 0 {
                (&lo + &hi) / Rational::integer(2)
            } else {
                &lo + (&hi - &lo) * frac(i - 1, 38)
            };
            let (wl, wt) = (b.lower_envelope(&u).expect("in range"), b.top_chord(&u));
            for j in 0..25 {
                let w = &wl + (&wt - &wl) * frac(j, 24);
                let off = surface_offset(&b.plane().lift(&u, &w));
                if off.sign() == Sign::Negative {
                    return Err(format!("f = {}: point below the surface", b.f_index()));
                }
                if i == 0 && j == 24 && off != closed {
                    return Err(format!(
                        "f = {}: chord midpoint {off} != {closed}",
                        b.f_index()
                    ));
                }
                best = best.max(off);
            }
        }
        if best > closed {
            return Err(format!(
                "f = {}: sample {best} above bound {closed}",
                b.f_index()
            ));
        }
    }
    within(
        Duration::from_secs(10),
        start,
        format!("{} bodies x 1000 samples within bound", bodies.len()),
    )
}

fn ac5() -> Check {
    let mut g = rng(105);
    let mut counts = [0usize; 4];
    for k in 0..1000 {
        let l = random_line(&mut g);
        let ruling = matches!(l.class(), LineClass::R1(_) | LineClass::R2(_));
        match line_surface_intersection(&l) {
            SurfaceHit::OnSurface if ruling => counts[3] += 1,
            SurfaceHit::Points(p) if !ruling && p.len() <= 2 => {
                for pt in &p {
                    let res = pt.surface_residual().map_err(|e| e.to_string())?;
                    if res.sign() != Sign::Zero {
                        return Err(format!("line {k}: residual {res}"));
                    }
                }
                counts[p.len()] += 1;
            }
            other => {
                return Err(format!(
                    "line {k}: {:?} vs class {}",
                    other.count(),
                    l.class().tag()
                ))
            }
        }
    }
    Ok(format!(
        "1000 lines: {} miss, {} one point, {} two points, {} on surface; residuals exactly zero",
        counts[0], counts[1], counts[2], counts[3]
    ))
}

/// Twenty seeded pools of one to five lines of all three kinds.
fn refute_fixtures() -> Vec<Vec<Line3>> {
    let mut g = rng(106);
    (0..20)
        .map(|k| {
            let n = 1 + k % 5;
            (0..n)
                .map(|j| match (j + k) % 3 {
                    0 => Line3::ruling_x(unit_rational(&mut g, 12)),
                    1 => Line3::ruling_y(unit_rational(&mut g, 12)),
                    _ => random_other_line(&mut g),
                })
                .collect()
        })
        .collect()
}

fn refute_checked(lines: &[Line3]) -> Result<usize, String> {
    let cfg = RunConfig {
        n_max: 100_000,
        ..RunConfig::default()
    };
    let out = cmd_refute(&cfg, lines).map_err(|e| e.to_string())?;
    match &out {
        RefuteOutcome::Witness(rep) => {
            verify_refutation(&cfg, &out, lines).map_err(|e| e.to_string())?;
            Ok(rep.f)
        }
        RefuteOutcome::Exhausted { budget, .. } => Err(format!("exhausted after {budget}")),
    }
}

fn ac6() -> Check {
    let mut worst = 0f64;
    let mut fs = Vec::new();
    for (k, lines) in refute_fixtures().iter().enumerate() {
        let start = Instant::now();
        let f = refute_checked(lines).map_err(|e| format!("fixture {}: {e}", k + 1))?;
        let took = start.elapsed().as_secs_f64();
        if took > 60.0 {
            return Err(format!("fixture {} took {took:.1}s", k + 1));
        }
        worst = worst.max(took);
        fs.push(f);
    }
    Ok(format!(
        "20 fixtures refuted and re-verified, witness indices {fs:?}, slowest {worst:.2}s"
    ))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn ac7() -> Check {
    let mut fs = Vec::new();
    let mut prev: Option<Vec<Line3>> = None;
    for size in [2, 4, 6] {
        let lines =
            io::read_lines(&data(&format!("pool_l1_{size}.jsonl"))).map_err(|e| e.to_string())?;
        if lines.len() != size || !lines.iter().all(|l| matches!(l.class(), LineClass::R1(_))) {
            return Err(format!("pool of size {size} is malformed"));
        }
        if let Some(p) = &prev {
            if lines[..p.len()] != p[..] {
                return Err(format!(
                    "pool of size {size} does not extend the previous one"
                ));
            }
        }
        fs.push(refute_checked(&lines)?);
        prev = Some(lines);
    }
    if fs.windows(2).all(|w| w[0] <= w[1]) {
        Ok(format!(
            "nested pools of 2, 4, 6 rulings: witness indices {fs:?}"
        ))
    } else {
        Err(format!("witness indices not monotone: {fs:?}"))
    }
}

fn ac8() -> Check {
    let start = Instant::now();
    let mut g = rng(108);
    for k in 0..100 {
        let rows = g.gen_range(1..=12);
        let cols = g.gen_range(1..=12);
        let density = g.gen_range(0.15..0.5);
        let m = PiercingMatrix::new(
            (0..rows)
                .map(|_| (0..cols).map(|_| g.gen_bool(density)).collect())
                .collect(),
            cols,
        );
        // brute force: subsets by size, then lexicographically
        let brute = (0..=cols).find_map(|size| {
            (0u32..1 << cols)
                .filter(|mask| mask.count_ones() as usize == size)
                .map(|mask| (0..cols).filter(|j| mask >> j & 1 == 1).collect::<Vec<_>>())
                .filter(|c| m.covers_all(c))
                .min()
        });
        let got = match min_line_cover(&m) {
            Ok(c) => Some(c.columns),
            Err(Error::Uncoverable(_)) => None,
            Err(e) => return Err(e.to_string()),
        };
        if got != brute {
            return Err(format!("matrix {k}: {got:?} vs brute force {brute:?}"));
        }
    }
    within(
        Duration::from_secs(30),
        start,
        "100 matrices, zero mismatches".into(),
    )
}

fn pipeline(dir: &Path) -> Result<Vec<Vec<u8>>, String> {
    let bin = env!("CARGO_BIN_EXE_transversal");
    let family = dir.join("family.jsonl");
    let lines = dir.join("lines.jsonl");
    let witness = dir.join("witness.json");
    let report = dir.join("report.json");
    io::write_lines(&lines, &refute_fixtures()[0]).map_err(|e| e.to_string())?;
    let p = |s: &Path| s.to_str().unwrap().to_string();
    let runs: [Vec<String>; 3] = [
        vec![
            "construct".into(),
            "-N".into(),
            "100".into(),
            "--out".into(),
            p(&family),
        ],
        vec![
            "witness".into(),
            "--t".into(),
            "3".into(),
            "--family".into(),
            p(&family),
            "--out".into(),
            p(&witness),
        ],
        vec![
            "refute".into(),
            "--lines".into(),
            p(&lines),
            "--out".into(),
            p(&report),
            "--verify".into(),
        ],
    ];
    for args in runs {
        let status = Command::new(bin)
            .args(&args)
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() {
            return Err(format!("{} exited with {status}", args[0]));
        }
    }
    [family, witness, report]
        .iter()
        .map(|f| fs::read(f).map_err(|e| e.to_string()))
        .collect()
}

fn ac9() -> Check {
    let a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let b = tempfile::tempdir().map_err(|e| e.to_string())?;
    let first = pipeline(a.path())?;
    let second = pipeline(b.path())?;
    if first == second {
        let sizes: Vec<usize> = first.iter().map(|f| f.len()).collect();
        Ok(format!(
            "construct/witness/refute artifacts byte-identical ({sizes:?} bytes)"
        ))
    } else {
        Err("artifacts differ between runs".into())
    }
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
        ("AC9", ac9),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(msg) => println!("{name} PASS  {msg}"),
            Err(msg) => {
                failed += 1;
                println!("{name} FAIL  {msg}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
