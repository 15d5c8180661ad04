//! File formats.
//!
//! * family files: one [`BodyRecord`] JSON object per line;
//! * line files: a JSON array of line records, or one record per line. A
//!   record is `{"base": [x, y, z], "dir": [dx, dy, dz]}`, or a ruling
//!   shorthand `{"x": r}` (the line `x = r, z = ry`) or `{"y": b}`
//!   (`y = b, z = bx`). Coordinates are `"num/den"` strings.
//!
//! Readers report the 1-based record number of the first bad record.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::family::{BodyRecord, ConvexBody};
use crate::geometry::{Line3, LineRecord};

pub fn family_to_string(bodies: &[ConvexBody]) -> String {
    let mut out = String::new();
    for b in bodies {
        out.push_str(&serde_json::to_string(&b.record()).expect("records serialize"));
        out.push('\n');
    }
    out
}

pub fn parse_family(text: &str) -> Result<Vec<ConvexBody>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(k, l)| {
            let rec: BodyRecord = serde_json::from_str(l).map_err(|e| record_error(k, e))?;
            ConvexBody::from_record(rec).map_err(|e| record_error(k, e))
        })
        .collect()
}

pub fn write_family(path: &Path, bodies: &[ConvexBody]) -> Result<()> {
    write_text(path, &family_to_string(bodies))
}

pub fn read_family(path: &Path) -> Result<Vec<ConvexBody>> {
    parse_family(&fs::read_to_string(path)?)
}

#[derive(Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum LineInput {
    Full(Box<LineRecord>),
    RulingX { x: Rational },
    RulingY { y: Rational },
}

impl LineInput {
    fn into_line(self) -> Result<Line3> {
        match self {
            LineInput::Full(rec) => Line3::try_from(*rec),
            LineInput::RulingX { x } => Ok(Line3::ruling_x(x)),
            LineInput::RulingY { y } => Ok(Line3::ruling_y(y)),
        }
    }
}

fn parse_line_value(k: usize, v: serde_json::Value) -> Result<Line3> {
    let input: LineInput = serde_json::from_value(v).map_err(|e| record_error(k, e))?;
    input.into_line().map_err(|e| record_error(k, e))
}

pub fn parse_lines(text: &str) -> Result<Vec<Line3>> {
    let trimmed = text.trim_start();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    if trimmed.starts_with('[') {
        let values: Vec<serde_json::Value> =
            serde_json::from_str(text).map_err(|e| Error::Record {
                index: 0,
                message: format!("not a JSON array of line records: {e}"),
            })?;
        return values
            .into_iter()
            .enumerate()
            .map(|(k, v)| parse_line_value(k, v))
            .collect();
    }
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(k, l)| {
            let v = serde_json::from_str(l).map_err(|e| record_error(k, e))?;
            parse_line_value(k, v)
        })
        .collect()
}

pub fn lines_to_string(lines: &[Line3]) -> String {
    let mut out = String::new();
    for l in lines {
        out.push_str(&serde_json::to_string(l).expect("lines serialize"));
        out.push('\n');
    }
    out
}

pub fn read_lines(path: &Path) -> Result<Vec<Line3>> {
    parse_lines(&fs::read_to_string(path)?)
}

pub fn write_lines(path: &Path, lines: &[Line3]) -> Result<()> {
    write_text(path, &lines_to_string(lines))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(text.as_bytes())?;
    Ok(())
}

fn record_error(k: usize, e: impl std::fmt::Display) -> Error {
    Error::Record {
        index: k + 1,
        message: e.to_string(),
    }
}
