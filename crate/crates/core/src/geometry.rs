//! Exact geometry of the saddle `z = xy`, its two families of ruling lines,
//! rational lines in space and the tilted planes `y = q + ε·x`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{solve_quadratic_allow_zero, QuadExt, Rational, RootSet, Sign};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[Rational; 3]", into = "[Rational; 3]")]
pub struct Point3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Point3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Point3 {
        Point3 { x, y, z }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// `self + s · dir`
    pub fn offset(&self, dir: &Point3, s: &Rational) -> Point3 {
        Point3 {
            x: &self.x + s * &dir.x,
            y: &self.y + s * &dir.y,
            z: &self.z + s * &dir.z,
        }
    }
}

impl From<[Rational; 3]> for Point3 {
    fn from([x, y, z]: [Rational; 3]) -> Point3 {
        Point3 { x, y, z }
    }
}

impl From<Point3> for [Rational; 3] {
    fn from(p: Point3) -> [Rational; 3] {
        [p.x, p.y, p.z]
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// A point whose coordinates lie in one quadratic extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoint3 {
    pub x: QuadExt,
    pub y: QuadExt,
    pub z: QuadExt,
}

impl QPoint3 {
    /// `z - xy`, computed exactly.
    pub fn surface_residual(&self) -> Result<QuadExt> {
        self.z.try_sub(&self.x.try_mul(&self.y)?)
    }
}

impl Serialize for QPoint3 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x.to_string(), self.y.to_string(), self.z.to_string()].serialize(s)
    }
}

/// Which ruling family of `z = xy` a line belongs to, if any.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LineClass {
    /// `x = c, z = c·y`
    R1(Rational),
    /// `y = b, z = b·x`
    R2(Rational),
    Other,
}

impl LineClass {
    pub fn on_surface(&self) -> bool {
        !matches!(self, LineClass::Other)
    }

    pub fn tag(&self) -> &'static str {
        match self {
            LineClass::R1(_) => "L1",
            LineClass::R2(_) => "L2",
            LineClass::Other => "L3",
        }
    }
}

/// A rational line `base + s·dir`. The ruling class is derived on
/// construction and never taken from input.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LineRecord", into = "LineRecord")]
pub struct Line3 {
    base: Point3,
    dir: Point3,
    class: LineClass,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LineRecord {
    pub base: Point3,
    pub dir: Point3,
}

impl TryFrom<LineRecord> for Line3 {
    type Error = Error;
    fn try_from(rec: LineRecord) -> Result<Line3> {
        Line3::new(rec.base, rec.dir)
    }
}

impl From<Line3> for LineRecord {
    fn from(l: Line3) -> LineRecord {
        LineRecord {
            base: l.base,
            dir: l.dir,
        }
    }
}

impl Line3 {
    pub fn new(base: Point3, dir: Point3) -> Result<Line3> {
        if dir.is_zero() {
            return Err(Error::ZeroDirection);
        }
        let class = classify(&base, &dir);
        Ok(Line3 { base, dir, class })
    }

    /// The ruling `x = c, z = c·y`.
    pub fn ruling_x(c: Rational) -> Line3 {
        let base = Point3::new(c.clone(), Rational::zero(), Rational::zero());
        let dir = Point3::new(Rational::zero(), Rational::one(), c.clone());
        Line3 {
            base,
            dir,
            class: LineClass::R1(c),
        }
    }

    /// The ruling `y = b, z = b·x`.
    pub fn ruling_y(b: Rational) -> Line3 {
        let base = Point3::new(Rational::zero(), b.clone(), Rational::zero());
        let dir = Point3::new(Rational::one(), Rational::zero(), b.clone());
        Line3 {
            base,
            dir,
            class: LineClass::R2(b),
        }
    }

    pub fn base(&self) -> &Point3 {
        &self.base
    }

    pub fn dir(&self) -> &Point3 {
        &self.dir
    }

    pub fn class(&self) -> &LineClass {
        &self.class
    }

    pub fn point_at(&self, s: &Rational) -> Point3 {
        self.base.offset(&self.dir, s)
    }

    /// Coefficients of `z(s) - x(s)·y(s) = A s² + B s + C` along the line,
    /// negated so that roots are the surface crossings: returns
    /// `(dx·dy, px·dy + py·dx - dz, px·py - pz)`.
    pub fn surface_quadratic(&self) -> (Rational, Rational, Rational) {
        let (p, d) = (&self.base, &self.dir);
        let a = &d.x * &d.y;
        let b = &p.x * &d.y + &p.y * &d.x - &d.z;
        let c = &p.x * &p.y - &p.z;
        (a, b, c)
    }
}

impl fmt::Display for Line3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + s·{}", self.base, self.dir)
    }
}

fn classify(base: &Point3, dir: &Point3) -> LineClass {
    if dir.x.is_zero() && !dir.y.is_zero() {
        let c = &base.x;
        if dir.z == c * &dir.y && base.z == c * &base.y {
            return LineClass::R1(c.clone());
        }
    }
    if dir.y.is_zero() && !dir.x.is_zero() {
        let b = &base.y;
        if dir.z == b * &dir.x && base.z == b * &base.x {
            return LineClass::R2(b.clone());
        }
    }
    LineClass::Other
}

pub fn classify_line(l: &Line3) -> LineClass {
    classify(&l.base, &l.dir)
}

/// How a line meets the surface `z = xy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceHit {
    OnSurface,
    /// Zero, one (tangency) or two crossing points, ordered by line
    /// parameter.
    Points(Vec<QPoint3>),
}

impl SurfaceHit {
    pub fn count(&self) -> Option<usize> {
        match self {
            SurfaceHit::OnSurface => None,
            SurfaceHit::Points(p) => Some(p.len()),
        }
    }
}

pub fn line_surface_intersection(l: &Line3) -> SurfaceHit {
    let (a, b, c) = l.surface_quadratic();
    let roots = match solve_quadratic_allow_zero(&a, &b, &c) {
        RootSet::All => return SurfaceHit::OnSurface,
        roots => roots.roots(),
    };
    let (p, d) = (&l.base, &l.dir);
    let points = roots
        .iter()
        .map(|s| QPoint3 {
            x: s.scale(&d.x).add_rational(&p.x),
            y: s.scale(&d.y).add_rational(&p.y),
            z: s.scale(&d.z).add_rational(&p.z),
        })
        .collect();
    SurfaceHit::Points(points)
}

/// The plane `y = q + eps·x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlaneRhoQ {
    q: Rational,
    eps: Rational,
}

impl PlaneRhoQ {
    pub fn new(q: Rational, eps: Rational) -> Result<PlaneRhoQ> {
        if eps.sign() != Sign::Positive {
            return Err(Error::Config(format!(
                "plane tilt must be positive, got {eps}"
            )));
        }
        Ok(PlaneRhoQ { q, eps })
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn eps(&self) -> &Rational {
        &self.eps
    }

    pub fn y_at(&self, x: &Rational) -> Rational {
        &self.q + &self.eps * x
    }

    pub fn contains(&self, pt: &Point3) -> bool {
        pt.y == self.y_at(&pt.x)
    }

    /// Chart coordinates `(u, w) = (x, z)` of a point on the plane.
    pub fn chart(&self, pt: &Point3) -> Result<(Rational, Rational)> {
        if !self.contains(pt) {
            return Err(Error::OffPlane(pt.to_string()));
        }
        Ok((pt.x.clone(), pt.z.clone()))
    }

    /// Inverse of [`PlaneRhoQ::chart`].
    pub fn lift(&self, u: &Rational, w: &Rational) -> Point3 {
        Point3::new(u.clone(), self.y_at(u), w.clone())
    }

    /// `w` of the parabola `plane ∩ {z = xy}` over chart abscissa `u`:
    /// `q·u + eps·u²`.
    pub fn parabola(&self, u: &Rational) -> Rational {
        u * &self.y_at(u)
    }
}

pub fn plane_coords(p: &PlaneRhoQ, pt: &Point3) -> Result<(Rational, Rational)> {
    p.chart(pt)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinePlane {
    Point(Point3),
    Contained,
    Parallel,
}

pub fn line_plane_intersection(l: &Line3, p: &PlaneRhoQ) -> LinePlane {
    let (b, d) = (&l.base, &l.dir);
    let denom = &d.y - &p.eps * &d.x;
    let rhs = &p.q + &p.eps * &b.x - &b.y;
    if denom.is_zero() {
        if rhs.is_zero() {
            LinePlane::Contained
        } else {
            LinePlane::Parallel
        }
    } else {
        LinePlane::Point(l.point_at(&(rhs / denom)))
    }
}

/// Signed offset `z - xy` from the surface.
pub fn surface_offset(pt: &Point3) -> Rational {
    &pt.z - &pt.x * &pt.y
}

/// `|z - xy|`
pub fn vertical_distance(pt: &Point3) -> Rational {
    surface_offset(pt).abs()
}
