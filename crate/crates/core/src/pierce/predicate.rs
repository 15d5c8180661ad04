use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::Rational;
use crate::family::ConvexBody;
use crate::geometry::{line_plane_intersection, Line3, LineClass, LinePlane};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = "!=")]
    Ne,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Lt => "<",
            Relation::Gt => ">",
            Relation::Ne => "!=",
        })
    }
}

/// An exact strict inequality `lhs rel rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequality {
    pub lhs: Rational,
    pub rel: Relation,
    pub rhs: Rational,
}

impl Inequality {
    fn new(lhs: Rational, rel: Relation, rhs: Rational) -> Inequality {
        Inequality { lhs, rel, rhs }
    }

    pub fn holds(&self) -> bool {
        match self.rel {
            Relation::Lt => self.lhs < self.rhs,
            Relation::Gt => self.lhs > self.rhs,
            Relation::Ne => self.lhs != self.rhs,
        }
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.rel, self.rhs)
    }
}

/// Why a line misses a body.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MissCase {
    /// The line is parallel to the body's plane and off it; the inequality
    /// is `q + eps·px - py != 0`.
    Parallel,
    /// The crossing point's chart abscissa is left of the support.
    LeftOfHull,
    RightOfHull,
    /// The crossing point is above the top chord.
    AboveTop,
    /// The crossing point is below the lower boundary (parabola or gap
    /// chord).
    BelowLower,
    /// The line lies in the plane and stays strictly above the top chord over
    /// the support range; the inequality bounds the smallest gap.
    InPlaneAboveTop,
    /// The line lies in the plane and, wherever it is under the top chord,
    /// stays strictly below the lower boundary.
    InPlaneBelowLower,
    /// A line `y = b, z = bx` with `b` outside the body's `y` range.
    Slab,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MissCertificate {
    pub case: MissCase,
    #[serde(flatten)]
    pub inequality: Inequality,
}

impl MissCertificate {
    fn new(case: MissCase, lhs: Rational, rel: Relation, rhs: Rational) -> MissCertificate {
        MissCertificate {
            case,
            inequality: Inequality::new(lhs, rel, rhs),
        }
    }
}

/// Exact test whether a line meets a body.
pub fn pierce(line: &Line3, body: &ConvexBody) -> bool {
    explain_miss(line, body).is_none()
}

/// A certificate that `line` misses `body`, or `None` if it pierces it.
pub fn explain_miss(line: &Line3, body: &ConvexBody) -> Option<MissCertificate> {
    match line_plane_intersection(line, body.plane()) {
        LinePlane::Parallel => {
            let (b, plane) = (line.base(), body.plane());
            let offset = plane.y_at(&b.x) - &b.y;
            Some(MissCertificate::new(
                MissCase::Parallel,
                offset,
                Relation::Ne,
                Rational::zero(),
            ))
        }
        LinePlane::Point(p) => {
            let (u, w) = (p.x, p.z);
            point_miss(body, &u, &w)
        }
        LinePlane::Contained => in_plane_miss(line, body),
    }
}

fn point_miss(body: &ConvexBody, u: &Rational, w: &Rational) -> Option<MissCertificate> {
    if u < body.r_min() {
        return Some(MissCertificate::new(
            MissCase::LeftOfHull,
            u.clone(),
            Relation::Lt,
            body.r_min().clone(),
        ));
    }
    if u > body.r_max() {
        return Some(MissCertificate::new(
            MissCase::RightOfHull,
            u.clone(),
            Relation::Gt,
            body.r_max().clone(),
        ));
    }
    let top = body.top_chord(u);
    if w > &top {
        return Some(MissCertificate::new(
            MissCase::AboveTop,
            w.clone(),
            Relation::Gt,
            top,
        ));
    }
    let lower = body.lower_envelope(u).expect("u within support range");
    if w < &lower {
        return Some(MissCertificate::new(
            MissCase::BelowLower,
            w.clone(),
            Relation::Lt,
            lower,
        ));
    }
    None
}

/// The line lies in the body's plane. In the chart it is either vertical
/// (`u` fixed) or the graph `w = alpha + beta·u`; the hull is convex, so the
/// question reduces to one-variable inequalities on `[r_min, r_max]`.
fn in_plane_miss(line: &Line3, body: &ConvexBody) -> Option<MissCertificate> {
    let (b, d) = (line.base(), line.dir());
    if d.x.is_zero() {
        // vertical in the chart: meets the hull iff u is in [r_min, r_max]
        return point_range_miss(body, &b.x);
    }
    let beta = &d.z / &d.x;
    let alpha = &b.z - &beta * &b.x;
    let line_w = |u: &Rational| &alpha + &beta * u;

    // top(u) - line(u) is affine in u; keep the part of [r_min, r_max]
    // where it is >= 0
    let (lo, hi) = (body.r_min().clone(), body.r_max().clone());
    let g_lo = body.top_chord(&lo) - line_w(&lo);
    let g_hi = body.top_chord(&hi) - line_w(&hi);
    if g_lo.sign() == crate::exact::Sign::Negative && g_hi.sign() == crate::exact::Sign::Negative {
        return Some(MissCertificate::new(
            MissCase::InPlaneAboveTop,
            g_lo.max(g_hi),
            Relation::Lt,
            Rational::zero(),
        ));
    }
    let (sub_lo, sub_hi) = if lo == hi {
        (lo, hi)
    } else {
        // root of the affine function, clipped to the range
        let slope = (&g_hi - &g_lo) / (&hi - &lo);
        let root = if slope.is_zero() {
            None
        } else {
            Some(&lo - &g_lo / &slope)
        };
        match (g_lo.sign(), g_hi.sign(), root) {
            (crate::exact::Sign::Negative, _, Some(r)) => (r, hi),
            (_, crate::exact::Sign::Negative, Some(r)) => (lo, r),
            _ => (lo, hi),
        }
    };

    // min over [sub_lo, sub_hi] of lower(u) - line(u)
    let mut best: Option<Rational> = None;
    let mut consider = |v: Rational| {
        best = Some(match best.take() {
            Some(b) => b.min(v),
            None => v,
        });
    };
    let support = body.support();
    let mut prev_hi: Option<&Rational> = None;
    for iv in support.intervals() {
        if let Some(gap_lo) = prev_hi {
            // gap (gap_lo, iv.lo): chord minus line is affine, min at an end
            let a = gap_lo.clone().max(sub_lo.clone());
            let c = iv.lo.clone().min(sub_hi.clone());
            if a <= c {
                for u in [&a, &c] {
                    consider(body.chord(gap_lo, &iv.lo, u) - line_w(u));
                }
            }
        }
        prev_hi = Some(&iv.hi);
        let a = iv.lo.clone().max(sub_lo.clone());
        let c = iv.hi.clone().min(sub_hi.clone());
        if a > c {
            continue;
        }
        // parabola minus line: eps·u² + (q - beta)·u - alpha, convex with
        // vertex (beta - q) / (2 eps)
        let vertex = (&beta - body.q()) / (Rational::integer(2) * body.eps());
        let u = vertex.max(a).min(c);
        consider(body.parabola(&u) - line_w(&u));
    }
    let min_gap = best.expect("range inside support hull is nonempty");
    if min_gap.sign() == crate::exact::Sign::Positive {
        Some(MissCertificate::new(
            MissCase::InPlaneBelowLower,
            min_gap,
            Relation::Gt,
            Rational::zero(),
        ))
    } else {
        None
    }
}

fn point_range_miss(body: &ConvexBody, u: &Rational) -> Option<MissCertificate> {
    if u < body.r_min() {
        Some(MissCertificate::new(
            MissCase::LeftOfHull,
            u.clone(),
            Relation::Lt,
            body.r_min().clone(),
        ))
    } else if u > body.r_max() {
        Some(MissCertificate::new(
            MissCase::RightOfHull,
            u.clone(),
            Relation::Gt,
            body.r_max().clone(),
        ))
    } else {
        None
    }
}

/// For a line `y = b, z = bx`: a certificate that `b` lies outside the
/// body's exact `y` range, which rules out any contact.
pub fn slab_miss(line: &Line3, body: &ConvexBody) -> Option<MissCertificate> {
    let LineClass::R2(b) = line.class() else {
        return None;
    };
    let (y_lo, y_hi) = body.y_range();
    if b < &y_lo {
        Some(MissCertificate::new(
            MissCase::Slab,
            b.clone(),
            Relation::Lt,
            y_lo,
        ))
    } else if b > &y_hi {
        Some(MissCertificate::new(
            MissCase::Slab,
            b.clone(),
            Relation::Gt,
            y_hi,
        ))
    } else {
        None
    }
}

/// Re-derives a certificate from scratch and checks it, together with the
/// pierce predicate itself.
pub fn verify_certificate(line: &Line3, body: &ConvexBody, cert: &MissCertificate) -> bool {
    if !cert.inequality.holds() || pierce(line, body) {
        return false;
    }
    let again = match cert.case {
        MissCase::Slab => slab_miss(line, body),
        _ => explain_miss(line, body),
    };
    again.as_ref() == Some(cert)
}

/// Largest vertical distance from the body to the surface.
pub fn max_vertical_distance(body: &ConvexBody) -> Rational {
    body.max_vertical_distance()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point3;
    use crate::interval::IntervalSet;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn set(parts: &[(&str, &str)]) -> IntervalSet {
        IntervalSet::from_intervals(parts.iter().map(|(a, b)| (r(a), r(b)))).unwrap()
    }

    fn body(q: &str, eps: &str, support: IntervalSet) -> ConvexBody {
        ConvexBody::new(r(q), 1, 1, r(eps), support).unwrap()
    }

    fn line(b: [&str; 3], d: [&str; 3]) -> Line3 {
        Line3::new(
            Point3::new(r(b[0]), r(b[1]), r(b[2])),
            Point3::new(r(d[0]), r(d[1]), r(d[2])),
        )
        .unwrap()
    }

    #[test]
    fn rulings_in_support_pierce() {
        let c = body("1/2", "1/64", set(&[("0", "1/4"), ("3/4", "1")]));
        for s in ["0", "1/8", "1/4", "3/4", "1"] {
            assert!(pierce(&Line3::ruling_x(r(s)), &c), "r = {s}");
        }
    }

    #[test]
    fn ruling_in_gap_misses_below_chord() {
        let c = body("1/2", "1/64", set(&[("0", "1/4"), ("3/4", "1")]));
        let cert = explain_miss(&Line3::ruling_x(r("1/2")), &c).unwrap();
        assert_eq!(cert.case, MissCase::BelowLower);
        assert_eq!(cert.inequality.lhs, c.parabola(&r("1/2")));
        assert_eq!(
            cert.inequality.rhs,
            c.chord(&r("1/4"), &r("3/4"), &r("1/2"))
        );
        assert!(verify_certificate(&Line3::ruling_x(r("1/2")), &c, &cert));
        let cert = explain_miss(&Line3::ruling_x(r("3/2")), &c).unwrap();
        assert_eq!(cert.case, MissCase::RightOfHull);
    }

    #[test]
    fn second_ruling_outside_slab() {
        let c = body("1/2", "1/64", IntervalSet::unit());
        let l = Line3::ruling_y(r("1/3"));
        assert!(!pierce(&l, &c));
        let cert = slab_miss(&l, &c).unwrap();
        assert_eq!(cert.inequality.rhs, r("1/2"));
        assert!(verify_certificate(&l, &c, &cert));
        // inside the slab the ruling meets the body
        assert!(slab_miss(&Line3::ruling_y(r("129/256")), &c).is_none());
        assert!(pierce(&Line3::ruling_y(r("129/256")), &c));
    }

    #[test]
    fn parallel_line() {
        let c = body("1/2", "1/16", IntervalSet::unit());
        let l = line(["0", "0", "0"], ["1", "1/16", "0"]);
        let cert = explain_miss(&l, &c).unwrap();
        assert_eq!(cert.case, MissCase::Parallel);
        assert_eq!(cert.inequality.lhs, r("1/2"));
    }

    #[test]
    fn vertical_line_in_plane() {
        let c = body("1/2", "1/16", set(&[("1/4", "3/4")]));
        // x = 1/2, y = 1/2 + 1/32, any z
        assert!(pierce(&line(["1/2", "17/32", "7"], ["0", "0", "1"]), &c));
        let cert = explain_miss(&line(["1/8", "65/128", "0"], ["0", "0", "1"]), &c).unwrap();
        assert_eq!(cert.case, MissCase::LeftOfHull);
    }

    #[test]
    fn in_plane_lines() {
        let c = body("1/2", "1/16", set(&[("0", "1/4"), ("3/4", "1")]));
        // chart line w = 10: far above the top chord
        let high = line(["0", "1/2", "10"], ["1", "1/16", "0"]);
        assert_eq!(
            explain_miss(&high, &c).unwrap().case,
            MissCase::InPlaneAboveTop
        );
        // chart line w = -1: below everything
        let low = line(["0", "1/2", "-1"], ["1", "1/16", "0"]);
        assert_eq!(
            explain_miss(&low, &c).unwrap().case,
            MissCase::InPlaneBelowLower
        );
        // chart line w = 1/4: crosses the body
        let mid = line(["0", "1/2", "1/4"], ["1", "1/16", "0"]);
        assert!(pierce(&mid, &c));
        // tangent to the parabola at u = 1/8: w = P(1/8) + P'(1/8)(u - 1/8)
        let u0 = r("1/8");
        let slope = c.q() + Rational::integer(2) * c.eps() * &u0;
        let w0 = c.parabola(&u0) - &slope * &u0;
        let tangent = Line3::new(
            Point3::new(r("0"), r("1/2"), w0.clone()),
            Point3::new(r("1"), r("1/16"), slope.clone()),
        )
        .unwrap();
        assert!(pierce(&tangent, &c));
        // the same line shifted down by a hair misses
        let below = Line3::new(
            Point3::new(r("0"), r("1/2"), w0 - r("1/1000000")),
            Point3::new(r("1"), r("1/16"), slope),
        )
        .unwrap();
        let cert = explain_miss(&below, &c).unwrap();
        assert_eq!(cert.case, MissCase::InPlaneBelowLower);
        assert!(verify_certificate(&below, &c, &cert));
    }

    #[test]
    fn in_plane_line_through_gap_only() {
        // support [0,1/4] ∪ [3/4,1]; the chord across the gap is above the
        // parabola, so a line just under the gap chord but above the
        // parabola in the gap still misses if it is under the hull there
        let c = body("0", "1", set(&[("0", "1/4"), ("3/4", "1")]));
        // gap chord: w = u² + (u - 1/4)(3/4 - u) = u - 3/16
        // line w = u - 3/16 - 1/100 lies below the chord on the gap; on the
        // support pieces u² >= u - 3/16 - 1/100 iff (u - 1/2)² + 1/16 + 1/100 > 0
        let l = line(["0", "0", "-19/100"], ["1", "1", "1"]);
        let cert = explain_miss(&l, &c).unwrap();
        assert_eq!(cert.case, MissCase::InPlaneBelowLower);
        // the chord itself touches the hull
        let l = line(["0", "0", "-3/16"], ["1", "1", "1"]);
        assert!(pierce(&l, &c));
    }

    #[test]
    fn max_vertical_distance_examples() {
        assert_eq!(
            max_vertical_distance(&body("1/2", "1/64", IntervalSet::unit())),
            r("1/256")
        );
        assert_eq!(
            max_vertical_distance(&body("1/2", "1/64", IntervalSet::point(r("1/3")))),
            Rational::zero()
        );
    }

    #[test]
    fn certificate_json() {
        let cert = MissCertificate::new(MissCase::Slab, r("1/3"), Relation::Lt, r("1/2"));
        let text = serde_json::to_string(&cert).unwrap();
        assert_eq!(text, r#"{"case":"slab","lhs":"1/3","rel":"<","rhs":"1/2"}"#);
        assert_eq!(
            serde_json::from_str::<MissCertificate>(&text).unwrap(),
            cert
        );
    }
}
