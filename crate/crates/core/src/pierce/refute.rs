use serde::Serialize;

use super::predicate::{explain_miss, pierce, slab_miss, verify_certificate, MissCertificate};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::family::{BodyRecord, ConvexBody, FamilyStream};
use crate::geometry::{line_surface_intersection, Line3, LineClass, QPoint3, SurfaceHit};

/// Per-line entry of a report.
#[derive(Clone, Debug, Serialize)]
pub struct LineEntry {
    pub index: usize,
    /// `L1` (`x = r, z = ry`), `L2` (`y = b, z = bx`) or `L3`
    pub class: &'static str,
    /// `r` or `b` for the two ruling classes
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter: Option<Rational>,
    /// ruling parameter outside `[0, 1]`
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub out_of_range: bool,
    /// where an `L3` line meets the surface (at most two points)
    #[serde(skip_serializing_if = "Option::is_none")]
    pub surface_points: Option<Vec<QPoint3>>,
    pub certificate: MissCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct RefutationReport {
    pub witness: BodyRecord,
    /// position of the witness in the stream: sequence `m`, term `n`
    pub m: usize,
    pub n: usize,
    pub f: usize,
    /// stream elements examined by this search, the witness included
    pub searched: usize,
    pub skipped_by_ruling_x: usize,
    pub skipped_by_ruling_y: usize,
    pub rejected_by_other_lines: usize,
    pub lines: Vec<LineEntry>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum RefuteOutcome {
    Witness(Box<RefutationReport>),
    Exhausted {
        budget: usize,
        skipped_by_ruling_x: usize,
        skipped_by_ruling_y: usize,
        rejected_by_other_lines: usize,
    },
}

impl RefuteOutcome {
    pub fn witness(&self) -> Option<&RefutationReport> {
        match self {
            RefuteOutcome::Witness(r) => Some(r),
            RefuteOutcome::Exhausted { .. } => None,
        }
    }
}

fn in_unit(x: &Rational) -> bool {
    x >= &Rational::zero() && x <= &Rational::one()
}

/// Searches the stream, from its current position, for the first body missed
/// by every line, examining at most `n_max` bodies.
pub fn refute(lines: &[Line3], stream: &mut FamilyStream, n_max: usize) -> Result<RefuteOutcome> {
    if n_max == 0 {
        return Err(Error::Config("search budget must be positive".into()));
    }
    let mut xs: Vec<&Rational> = Vec::new();
    let mut ys: Vec<&Rational> = Vec::new();
    let mut others: Vec<&Line3> = Vec::new();
    for line in lines {
        match line.class() {
            LineClass::R1(r) => xs.push(r),
            LineClass::R2(b) => ys.push(b),
            LineClass::Other => others.push(line),
        }
    }
    // out-of-range rulings never meet a body over [0, 1]
    xs.retain(|r| in_unit(r));
    ys.retain(|b| in_unit(b));

    let (mut skip_x, mut skip_y, mut reject) = (0, 0, 0);
    for searched in 1..=n_max {
        let body = stream.next_body()?;
        if xs.iter().any(|r| body.support().contains(r)) {
            skip_x += 1;
            continue;
        }
        let (y_lo, y_hi) = body.y_range();
        if ys.iter().any(|b| **b >= y_lo && **b <= y_hi) {
            skip_y += 1;
            continue;
        }
        if others.iter().any(|l| pierce(l, &body)) {
            reject += 1;
            continue;
        }
        let Some(entries) = certify(lines, &body) else {
            // filters and the predicate disagree; keep searching and let
            // verification flag the inconsistency if it ever matters
            reject += 1;
            continue;
        };
        let emission = stream.last_emission().expect("a body was emitted");
        return Ok(RefuteOutcome::Witness(Box::new(RefutationReport {
            witness: body.record(),
            m: emission.m,
            n: emission.n,
            f: emission.f,
            searched,
            skipped_by_ruling_x: skip_x,
            skipped_by_ruling_y: skip_y,
            rejected_by_other_lines: reject,
            lines: entries,
        })));
    }
    Ok(RefuteOutcome::Exhausted {
        budget: n_max,
        skipped_by_ruling_x: skip_x,
        skipped_by_ruling_y: skip_y,
        rejected_by_other_lines: reject,
    })
}

/// Certificates for every line, or `None` if some line meets the body.
pub fn certify(lines: &[Line3], body: &ConvexBody) -> Option<Vec<LineEntry>> {
    lines
        .iter()
        .enumerate()
        .map(|(index, line)| {
            let (parameter, out_of_range, surface_points, certificate) = match line.class() {
                LineClass::R1(r) => (
                    Some(r.clone()),
                    !in_unit(r),
                    None,
                    explain_miss(line, body)?,
                ),
                LineClass::R2(b) => (Some(b.clone()), !in_unit(b), None, slab_miss(line, body)?),
                LineClass::Other => {
                    let pts = match line_surface_intersection(line) {
                        SurfaceHit::Points(p) => p,
                        SurfaceHit::OnSurface => unreachable!("surface lines are rulings"),
                    };
                    (None, false, Some(pts), explain_miss(line, body)?)
                }
            };
            Some(LineEntry {
                index,
                class: line.class().tag(),
                parameter,
                out_of_range,
                surface_points,
                certificate,
            })
        })
        .collect()
}

/// Independent re-check of a report against its input lines: rebuilds the
/// witness body from its record, confirms no line pierces it, and re-derives
/// each certificate.
pub fn verify_report(report: &RefutationReport, lines: &[Line3]) -> Result<()> {
    let body = ConvexBody::from_record(report.witness.clone())?;
    if report.lines.len() != lines.len() {
        return Err(Error::Record {
            index: report.lines.len().min(lines.len()),
            message: format!(
                "{} certificates for {} lines",
                report.lines.len(),
                lines.len()
            ),
        });
    }
    for (entry, line) in report.lines.iter().zip(lines) {
        let fail = |message: &str| Error::Record {
            index: entry.index + 1,
            message: message.to_string(),
        };
        if pierce(line, &body) {
            return Err(fail("line pierces the witness body"));
        }
        if entry.class != line.class().tag() {
            return Err(fail("line class mismatch"));
        }
        if !verify_certificate(line, &body, &entry.certificate) {
            return Err(fail("certificate does not re-verify"));
        }
    }
    Ok(())
}
