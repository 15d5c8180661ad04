//! Lines against the surface z = xy: the two rulings through each point, and
//! at most two crossings for every other line.

use transversal_core::exact::Rational;
use transversal_core::geometry::{
    line_plane_intersection, line_surface_intersection, Line3, LinePlane, PlaneRhoQ, Point3,
    SurfaceHit,
};

fn r(s: &str) -> Rational {
    s.parse().expect("rational literal")
}

fn main() -> transversal_core::Result<()> {
    let lines = [
        Line3::ruling_x(r("1/2")),
        Line3::ruling_y(r("2/3")),
        Line3::new(
            Point3::new(r("0"), r("0"), r("1")),
            Point3::new(r("1"), r("1"), r("0")),
        )?,
        Line3::new(
            Point3::new(r("0"), r("0"), r("0")),
            Point3::new(r("1"), r("1"), r("1")),
        )?,
        Line3::new(
            Point3::new(r("1"), r("0"), r("0")),
            Point3::new(r("0"), r("1"), r("1")),
        )?,
    ];
    for l in &lines {
        let hits = match line_surface_intersection(l) {
            SurfaceHit::OnSurface => "lies on the surface".to_string(),
            SurfaceHit::Points(p) => {
                let pts: Vec<String> = p
                    .iter()
                    .map(|q| format!("({}, {}, {})", q.x, q.y, q.z))
                    .collect();
                format!("{} point(s) {}", p.len(), pts.join(" "))
            }
        };
        println!("{}: {l} -> {hits}", l.class().tag());
    }

    // the plane y = 1/2 + x/64 and its parabola
    let plane = PlaneRhoQ::new(r("1/2"), r("1/64"))?;
    for l in &lines[..2] {
        match line_plane_intersection(l, &plane) {
            LinePlane::Point(p) => {
                let (u, w) = plane.chart(&p)?;
                println!(
                    "{} meets the plane at chart ({u}, {w}); parabola there {}",
                    l.class().tag(),
                    plane.parabola(&u)
                );
            }
            other => println!("{} vs plane: {other:?}", l.class().tag()),
        }
    }
    Ok(())
}
