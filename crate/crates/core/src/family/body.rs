use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Rational, Sign};
use crate::geometry::{PlaneRhoQ, Point3};
use crate::interval::IntervalSet;

/// One body of the family: the convex hull, inside the plane
/// `y = q + eps·x`, of the points `(r, q + eps·r, r·(q + eps·r))` for `r` in
/// the support set.
///
/// In the plane chart `(u, w) = (x, z)` those points lie on the convex
/// parabola `w = q·u + eps·u²`, so the hull is bounded above by the chord
/// between the extreme support points and below by the parabola over the
/// support and by chords across the support's gaps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexBody {
    q: Rational,
    m: usize,
    f_index: usize,
    support: IntervalSet,
    plane: PlaneRhoQ,
    r_min: Rational,
    r_max: Rational,
}

/// On-disk form of a body, one JSON object per line of a family file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BodyRecord {
    pub q: Rational,
    pub m: usize,
    pub f: usize,
    pub eps: Rational,
    pub support: IntervalSet,
}

impl ConvexBody {
    pub fn new(
        q: Rational,
        m: usize,
        f_index: usize,
        eps: Rational,
        support: IntervalSet,
    ) -> Result<ConvexBody> {
        let (Some(r_min), Some(r_max)) = (support.min().cloned(), support.max().cloned()) else {
            return Err(Error::EmptySupport);
        };
        let plane = PlaneRhoQ::new(q.clone(), eps)?;
        Ok(ConvexBody {
            q,
            m,
            f_index,
            support,
            plane,
            r_min,
            r_max,
        })
    }

    pub fn from_record(rec: BodyRecord) -> Result<ConvexBody> {
        ConvexBody::new(rec.q, rec.m, rec.f, rec.eps, rec.support)
    }

    pub fn record(&self) -> BodyRecord {
        BodyRecord {
            q: self.q.clone(),
            m: self.m,
            f: self.f_index,
            eps: self.eps().clone(),
            support: self.support.clone(),
        }
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    /// Index of the limit point `q_m` whose sequence this body belongs to.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn f_index(&self) -> usize {
        self.f_index
    }

    pub fn eps(&self) -> &Rational {
        self.plane.eps()
    }

    pub fn support(&self) -> &IntervalSet {
        &self.support
    }

    pub fn plane(&self) -> &PlaneRhoQ {
        &self.plane
    }

    pub fn r_min(&self) -> &Rational {
        &self.r_min
    }

    pub fn r_max(&self) -> &Rational {
        &self.r_max
    }

    /// Parabola height `q·u + eps·u²`.
    pub fn parabola(&self, u: &Rational) -> Rational {
        self.plane.parabola(u)
    }

    /// Chord of the parabola between abscissae `a` and `b`, evaluated at `u`.
    /// Equals `parabola(u) + eps·(u - a)·(b - u)`.
    pub fn chord(&self, a: &Rational, b: &Rational, u: &Rational) -> Rational {
        self.parabola(u) + self.eps() * (u - a) * (b - u)
    }

    pub fn top_chord(&self, u: &Rational) -> Rational {
        self.chord(&self.r_min, &self.r_max, u)
    }

    /// Lower boundary of the hull over `u`, or `None` outside
    /// `[r_min, r_max]`.
    pub fn lower_envelope(&self, u: &Rational) -> Option<Rational> {
        if u < &self.r_min || u > &self.r_max {
            return None;
        }
        match self.support.gap_around(u) {
            Some((a, b)) => Some(self.chord(a, b, u)),
            None => Some(self.parabola(u)),
        }
    }

    /// The hull point of the support parameter `r`, on the line `x = r, z = ry`.
    pub fn arc_point(&self, r: &Rational) -> Point3 {
        self.plane.lift(r, &self.parabola(r))
    }

    /// Hull membership of a chart point.
    pub fn contains_chart(&self, u: &Rational, w: &Rational) -> bool {
        match self.lower_envelope(u) {
            Some(lo) => &lo <= w && w <= &self.top_chord(u),
            None => false,
        }
    }

    pub fn contains(&self, pt: &Point3) -> bool {
        match self.plane.chart(pt) {
            Ok((u, w)) => self.contains_chart(&u, &w),
            Err(_) => false,
        }
    }

    /// `[q + eps·r_min, q + eps·r_max]`, the exact `y` extent of the body.
    pub fn y_range(&self) -> (Rational, Rational) {
        (self.plane.y_at(&self.r_min), self.plane.y_at(&self.r_max))
    }

    /// Axis-aligned bounding box `(min corner, max corner)`.
    ///
    /// Supports lie in `[0, 1]` in every constructed family, where `y` and
    /// `z = x·y` are nondecreasing along the arc; for general supports the
    /// box is taken over the extreme arc points of every support interval.
    pub fn bounding_box(&self) -> (Point3, Point3) {
        let mut pts = Vec::new();
        for iv in self.support.intervals() {
            pts.push(self.arc_point(&iv.lo));
            pts.push(self.arc_point(&iv.hi));
            // z = q·u + eps·u² has its vertex at -q / (2 eps)
            let vertex = -(self.q() / (Rational::integer(2) * self.eps()));
            if iv.contains(&vertex) {
                pts.push(self.arc_point(&vertex));
            }
        }
        let pick = |f: fn(&Point3) -> &Rational, take_max: bool| {
            pts.iter()
                .map(f)
                .cloned()
                .reduce(|a, b| if take_max { a.max(b) } else { a.min(b) })
                .expect("nonempty support")
        };
        (
            Point3::new(
                pick(|p| &p.x, false),
                pick(|p| &p.y, false),
                pick(|p| &p.z, false),
            ),
            Point3::new(
                pick(|p| &p.x, true),
                pick(|p| &p.y, true),
                pick(|p| &p.z, true),
            ),
        )
    }

    /// Whether the body lies in the cube `[lo, hi]³`.
    pub fn within_cube(&self, lo: &Rational, hi: &Rational) -> bool {
        let (a, b) = self.bounding_box();
        [&a.x, &a.y, &a.z].iter().all(|c| *c >= lo) && [&b.x, &b.y, &b.z].iter().all(|c| *c <= hi)
    }

    /// Exact maximum of `z - xy` over the body: `eps·(r_max - r_min)²/4`,
    /// reached at the midpoint of the top chord. The minimum is 0, on the
    /// arc, so this is also the largest vertical distance to the surface.
    pub fn max_vertical_distance(&self) -> Rational {
        self.eps() * (&self.r_max - &self.r_min).square() / Rational::integer(4)
    }

    /// Sign of `lower_envelope(u) - w`, i.e. whether a chart point is below
    /// (`Positive`), on, or above the lower boundary.
    pub fn below_lower(&self, u: &Rational, w: &Rational) -> Option<Sign> {
        self.lower_envelope(u).map(|lo| (lo - w).sign())
    }
}

/// Builds the body for `q` with tilt index `f_index` over `support`.
pub fn build_body(
    q: Rational,
    m: usize,
    f_index: usize,
    support: IntervalSet,
) -> Result<ConvexBody> {
    ConvexBody::new(q, m, f_index, super::eps_of(f_index), support)
}
