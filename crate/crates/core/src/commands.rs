//! The operations behind the `transversal` binary. Each command reads its
//! inputs through [`crate::io`], returns a serializable report, and has a
//! matching `verify_*` that re-checks the report with the exact predicates.

use std::collections::HashSet;
use std::path::PathBuf;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::family::{enumerate_q0, eps_of, ConvexBody, FamilyStream};
use crate::geometry::Line3;
use crate::interval::{deep_witness, validate_delta, IntervalSet};
use crate::pierce::{
    min_line_cover, pierce, piercing_matrix, refute, verify_report, RefuteOutcome,
};

pub const DEFAULT_NMAX: usize = 100_000;
pub const DEFAULT_PRECISION: usize = 12;
pub const DEFAULT_SAMPLES: usize = 64;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    /// refute budget exhausted, or no deep point in a family prefix
    pub const EXHAUSTED: i32 = 2;
    pub const INPUT: i32 = 3;
    pub const UNCOVERABLE: i32 = 4;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub delta: Rational,
    pub t: usize,
    pub count: usize,
    pub n_max: usize,
    pub family: Option<PathBuf>,
    pub lines: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub verify: bool,
    pub precision: usize,
    pub samples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            delta: Rational::frac(1, 2),
            t: 1,
            count: 1,
            n_max: DEFAULT_NMAX,
            family: None,
            lines: None,
            out: None,
            verify: false,
            precision: DEFAULT_PRECISION,
            samples: DEFAULT_SAMPLES,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        validate_delta(&self.delta)?;
        let positive = [
            (self.t, "t"),
            (self.count, "count"),
            (self.n_max, "nmax"),
            (self.precision, "precision"),
            (self.samples, "samples"),
        ];
        for (v, name) in positive {
            if v == 0 {
                return Err(Error::Config(format!("{name} must be at least 1")));
            }
        }
        Ok(())
    }

    fn family_path(&self) -> Result<&PathBuf> {
        self.family
            .as_ref()
            .ok_or_else(|| Error::Config("--family is required".into()))
    }

    fn lines_path(&self) -> Result<&PathBuf> {
        self.lines
            .as_ref()
            .ok_or_else(|| Error::Config("--lines is required".into()))
    }

    pub fn load_family(&self) -> Result<Vec<ConvexBody>> {
        crate::io::read_family(self.family_path()?)
    }

    pub fn load_lines(&self) -> Result<Vec<Line3>> {
        crate::io::read_lines(self.lines_path()?)
    }
}

/// The first `count` bodies.
pub fn cmd_construct(cfg: &RunConfig) -> Result<Vec<ConvexBody>> {
    cfg.validate()?;
    FamilyStream::new(cfg.delta.clone())?.take_bodies(cfg.count)
}

/// Re-checks the defining properties of every body: its support contains
/// `q_m`, avoids `q_1, …, q_{m-1}`, lies in `[0, 1]` with measure at least
/// `delta`; the tilt is `eps_of(f)`; values and tilt indices are distinct;
/// the body lies in `[0, 2]³`.
pub fn verify_family(bodies: &[ConvexBody], delta: &Rational) -> Result<()> {
    let mut qs = HashSet::new();
    let mut fs = HashSet::new();
    let mut supports = HashSet::new();
    let (zero, two) = (Rational::zero(), Rational::integer(2));
    for (k, b) in bodies.iter().enumerate() {
        let fail = |msg: &str| Error::Record {
            index: k + 1,
            message: msg.to_string(),
        };
        let s = b.support();
        if b.m() == 0 || b.f_index() == 0 {
            return Err(fail("indices are 1-based"));
        }
        if !s.contains(&enumerate_q0(b.m())) {
            return Err(fail("support misses its limit point"));
        }
        if (1..b.m()).any(|j| s.contains(&enumerate_q0(j))) {
            return Err(fail("support contains an earlier limit point"));
        }
        if !s.within_unit() || &s.measure() < delta {
            return Err(fail("support is not a measure-delta subset of [0, 1]"));
        }
        if b.eps() != &eps_of(b.f_index()) {
            return Err(fail("tilt does not match its index"));
        }
        if !b.within_cube(&zero, &two) {
            return Err(fail("body leaves [0, 2]^3"));
        }
        if !qs.insert(b.q().clone()) || !fs.insert(b.f_index()) {
            return Err(fail("repeated value or tilt index"));
        }
        if !supports.insert(s.clone()) {
            return Err(fail("repeated support"));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct PiercedBody {
    /// 0-based position in the family file
    pub index: usize,
    pub q: Rational,
    pub f: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum WitnessReport {
    /// The line `x = r, z = ry` pierces the listed bodies.
    Witness {
        t: usize,
        r: Rational,
        bodies: Vec<PiercedBody>,
    },
    NoWitnessInPrefix {
        t: usize,
        bodies: usize,
    },
}

impl WitnessReport {
    pub fn exit_code(&self) -> i32 {
        match self {
            WitnessReport::Witness { .. } => exit::SUCCESS,
            WitnessReport::NoWitnessInPrefix { .. } => exit::EXHAUSTED,
        }
    }
}

/// A ruling `l_r` through `t` bodies of the family, found at the leftmost
/// point of depth at least `t` in the supports.
pub fn cmd_witness(cfg: &RunConfig, bodies: &[ConvexBody]) -> Result<WitnessReport> {
    cfg.validate()?;
    let sets: Vec<IntervalSet> = bodies.iter().map(|b| b.support().clone()).collect();
    let Some(w) = deep_witness(&sets, cfg.t)? else {
        return Ok(WitnessReport::NoWitnessInPrefix {
            t: cfg.t,
            bodies: bodies.len(),
        });
    };
    let line = Line3::ruling_x(w.point.clone());
    let mut pierced = Vec::with_capacity(w.members.len());
    for &k in &w.members {
        let b = &bodies[k];
        if !pierce(&line, b) {
            return Err(Error::Config(format!(
                "deep point {} is not on body {}",
                w.point,
                k + 1
            )));
        }
        pierced.push(PiercedBody {
            index: k,
            q: b.q().clone(),
            f: b.f_index(),
        });
    }
    Ok(WitnessReport::Witness {
        t: cfg.t,
        r: w.point,
        bodies: pierced,
    })
}

pub fn verify_witness(report: &WitnessReport, bodies: &[ConvexBody]) -> Result<()> {
    let WitnessReport::Witness { t, r, bodies: hit } = report else {
        return Ok(());
    };
    let line = Line3::ruling_x(r.clone());
    let mut seen = HashSet::new();
    for p in hit {
        let ok = p.index < bodies.len()
            && seen.insert(p.index)
            && bodies[p.index].q() == &p.q
            && pierce(&line, &bodies[p.index]);
        if !ok {
            return Err(Error::Record {
                index: p.index + 1,
                message: "listed body is not pierced".into(),
            });
        }
    }
    if hit.len() != *t {
        return Err(Error::Config(format!(
            "{} bodies listed, {t} required",
            hit.len()
        )));
    }
    Ok(())
}

pub fn cmd_refute(cfg: &RunConfig, lines: &[Line3]) -> Result<RefuteOutcome> {
    cfg.validate()?;
    let mut stream = FamilyStream::new(cfg.delta.clone())?;
    refute(lines, &mut stream, cfg.n_max)
}

pub fn refute_exit_code(outcome: &RefuteOutcome) -> i32 {
    match outcome {
        RefuteOutcome::Witness(_) => exit::SUCCESS,
        RefuteOutcome::Exhausted { .. } => exit::EXHAUSTED,
    }
}

/// Re-checks a refutation witness: the body must be the stream element at
/// its recorded position, and every certificate must re-verify.
pub fn verify_refutation(cfg: &RunConfig, outcome: &RefuteOutcome, lines: &[Line3]) -> Result<()> {
    let Some(report) = outcome.witness() else {
        return Ok(());
    };
    verify_report(report, lines)?;
    let mut stream = FamilyStream::new(cfg.delta.clone())?;
    let mut body = None;
    for _ in 0..report.f {
        body = Some(stream.next_body()?);
    }
    if body.map(|b| b.record()).as_ref() != Some(&report.witness) {
        return Err(Error::Config(
            "witness is not the recorded stream element".into(),
        ));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum CoverReport {
    Cover {
        bodies: usize,
        lines: usize,
        size: usize,
        /// 0-based positions in the line file
        columns: Vec<usize>,
        exact: bool,
        lower_bound: usize,
    },
    /// 0-based positions of bodies no line pierces
    Uncoverable { rows: Vec<usize> },
}

impl CoverReport {
    pub fn exit_code(&self) -> i32 {
        match self {
            CoverReport::Cover { .. } => exit::SUCCESS,
            CoverReport::Uncoverable { .. } => exit::UNCOVERABLE,
        }
    }
}

pub fn cmd_cover(bodies: &[ConvexBody], lines: &[Line3]) -> Result<CoverReport> {
    let matrix = piercing_matrix(bodies, lines);
    match min_line_cover(&matrix) {
        Ok(c) => Ok(CoverReport::Cover {
            bodies: bodies.len(),
            lines: lines.len(),
            size: c.size(),
            columns: c.columns,
            exact: c.exact,
            lower_bound: c.lower_bound,
        }),
        Err(Error::Uncoverable(rows)) => Ok(CoverReport::Uncoverable { rows }),
        Err(e) => Err(e),
    }
}

pub fn verify_cover(report: &CoverReport, bodies: &[ConvexBody], lines: &[Line3]) -> Result<()> {
    match report {
        CoverReport::Cover { columns, .. } => {
            if columns.iter().any(|&c| c >= lines.len()) {
                return Err(Error::Config("column out of range".into()));
            }
            for (k, b) in bodies.iter().enumerate() {
                if !columns.iter().any(|&c| pierce(&lines[c], b)) {
                    return Err(Error::Record {
                        index: k + 1,
                        message: "body not pierced by the chosen lines".into(),
                    });
                }
            }
        }
        CoverReport::Uncoverable { rows } => {
            for &k in rows {
                if k >= bodies.len() || lines.iter().any(|l| pierce(l, &bodies[k])) {
                    return Err(Error::Record {
                        index: k + 1,
                        message: "listed body is pierced".into(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// CSV tables for plotting. Only this step renders rationals as decimals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlotData {
    /// `body,k,r,x,y,z,offset`: points of the arc over the support, spread
    /// evenly by measure; `offset = z - xy`
    pub arcs: String,
    /// `body,k,u,w,x,y,z`: closed hull boundary in plane coordinates and in
    /// space
    pub hull: String,
    /// `i,j,x,y,z`: grid on the surface over `[0, 2]²`
    pub surface: String,
}

pub const PLOT_FILES: [&str; 3] = ["arcs.csv", "hull.csv", "surface.csv"];

impl PlotData {
    pub fn files(&self) -> [(&'static str, &str); 3] {
        [
            (PLOT_FILES[0], &self.arcs),
            (PLOT_FILES[1], &self.hull),
            (PLOT_FILES[2], &self.surface),
        ]
    }
}

/// `n` support parameters spread evenly by measure; support components of
/// zero length are reached only through the endpoints of the others.
pub fn arc_samples(support: &IntervalSet, n: usize) -> Vec<Rational> {
    let lo = support.min().expect("nonempty support").clone();
    let total = support.measure();
    if n == 1 || total.is_zero() {
        return vec![lo; n];
    }
    let step = &total / Rational::integer(n as i64 - 1);
    let mut out = Vec::with_capacity(n);
    let ivs = support.intervals();
    let (mut idx, mut before) = (0, Rational::zero());
    for k in 0..n {
        let target = &step * Rational::integer(k as i64);
        // advance to the interval holding cumulative measure `target`
        while idx + 1 < ivs.len() && &before + ivs[idx].len() < target {
            before = &before + ivs[idx].len();
            idx += 1;
        }
        let r = (&ivs[idx].lo + (&target - &before)).min(ivs[idx].hi.clone());
        out.push(r);
    }
    out
}

pub fn cmd_export_plot(cfg: &RunConfig, bodies: &[ConvexBody]) -> Result<PlotData> {
    cfg.validate()?;
    let d = |x: &Rational| x.to_decimal(cfg.precision);
    let mut arcs = String::from("body,k,r,x,y,z,offset\n");
    let mut hull = String::from("body,k,u,w,x,y,z\n");
    for (bi, b) in bodies.iter().enumerate() {
        let samples = arc_samples(b.support(), cfg.samples);
        for (k, r) in samples.iter().enumerate() {
            let p = b.arc_point(r);
            let offset = crate::geometry::surface_offset(&p);
            arcs.push_str(&format!(
                "{},{k},{},{},{},{},{}\n",
                bi + 1,
                d(r),
                d(&p.x),
                d(&p.y),
                d(&p.z),
                d(&offset)
            ));
        }
        // lower boundary: the arc samples plus every interval endpoint (gap
        // chords are straight), then back to the start along the top chord
        let mut us: Vec<Rational> = samples;
        for iv in b.support().intervals() {
            us.push(iv.lo.clone());
            us.push(iv.hi.clone());
        }
        us.sort();
        us.dedup();
        us.push(b.r_min().clone());
        for (k, u) in us.iter().enumerate() {
            let w = b.lower_envelope(u).expect("within support range");
            let p = b.plane().lift(u, &w);
            hull.push_str(&format!(
                "{},{k},{},{},{},{},{}\n",
                bi + 1,
                d(u),
                d(&w),
                d(&p.x),
                d(&p.y),
                d(&p.z)
            ));
        }
    }
    let mut surface = String::from("i,j,x,y,z\n");
    let n = cfg.samples.max(2);
    let step = Rational::frac(2, n as i64 - 1);
    for i in 0..n {
        let x = &step * Rational::integer(i as i64);
        for j in 0..n {
            let y = &step * Rational::integer(j as i64);
            let z = &x * &y;
            surface.push_str(&format!("{i},{j},{},{},{}\n", d(&x), d(&y), d(&z)));
        }
    }
    Ok(PlotData {
        arcs,
        hull,
        surface,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn cfg() -> RunConfig {
        RunConfig::default()
    }

    #[test]
    fn config_validation() {
        assert!(cfg().validate().is_ok());
        let bad = RunConfig {
            delta: r("0"),
            ..cfg()
        };
        assert!(bad.validate().is_err());
        let bad = RunConfig { t: 0, ..cfg() };
        assert!(bad.validate().is_err());
        let bad = RunConfig { count: 0, ..cfg() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn construct_and_verify() {
        let c = RunConfig { count: 10, ..cfg() };
        let fam = cmd_construct(&c).unwrap();
        assert_eq!(fam.len(), 10);
        verify_family(&fam, &c.delta).unwrap();
        assert!(fam.iter().all(|b| b.support().measure() >= r("1/2")));
    }

    #[test]
    fn witness_three_of_five() {
        let c = RunConfig {
            count: 5,
            t: 3,
            ..cfg()
        };
        let fam = cmd_construct(&c).unwrap();
        let rep = cmd_witness(&c, &fam).unwrap();
        verify_witness(&rep, &fam).unwrap();
        assert_eq!(rep.exit_code(), exit::SUCCESS);
    }

    #[test]
    fn witness_t1_is_first_body() {
        let c = RunConfig { count: 4, ..cfg() };
        let fam = cmd_construct(&c).unwrap();
        match cmd_witness(&c, &fam).unwrap() {
            WitnessReport::Witness {
                r: point, bodies, ..
            } => {
                assert_eq!(bodies[0].index, 0);
                assert_eq!(&point, fam[0].r_min());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cover_grid_and_uncoverable() {
        let fam = cmd_construct(&RunConfig { count: 4, ..cfg() }).unwrap();
        let pool: Vec<Line3> = (0..8)
            .map(|k| Line3::ruling_x(Rational::frac(k, 7)))
            .collect();
        let rep = cmd_cover(&fam, &pool).unwrap();
        verify_cover(&rep, &fam, &pool).unwrap();
        let far = vec![Line3::ruling_x(r("5"))];
        let rep = cmd_cover(&fam, &far).unwrap();
        assert_eq!(rep.exit_code(), exit::UNCOVERABLE);
        verify_cover(&rep, &fam, &far).unwrap();
    }

    #[test]
    fn plot_row_counts() {
        let c = RunConfig { count: 1, ..cfg() };
        let fam = cmd_construct(&c).unwrap();
        let plot = cmd_export_plot(&c, &fam).unwrap();
        assert_eq!(plot.arcs.lines().count(), 1 + 64);
        assert_eq!(plot.surface.lines().count(), 1 + 64 * 64);
        // arc points are on the surface exactly
        assert!(plot.arcs.lines().skip(1).all(|l| l.ends_with(",0")));
    }

    #[test]
    fn arc_samples_follow_measure() {
        let s = IntervalSet::from_intervals([(r("0"), r("1/4")), (r("3/4"), r("1"))]).unwrap();
        assert_eq!(
            arc_samples(&s, 5),
            vec![r("0"), r("1/8"), r("1/4"), r("7/8"), r("1")]
        );
        assert_eq!(
            arc_samples(&IntervalSet::point(r("1/3")), 3),
            vec![r("1/3"); 3]
        );
    }
}
