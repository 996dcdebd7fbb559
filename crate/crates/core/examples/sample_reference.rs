//! Sampling curves into polylines and the checks applied to the result.

use std::f64::consts::PI;

use frenet_kappa::curve::ReferenceCurve;
use frenet_kappa::geometry::Vec2;
use frenet_kappa::polyline::sample_polyline;

fn main() {
    let arc = ReferenceCurve::arc(Vec2::ZERO, 10.0, 0.0, PI).unwrap();
    for spacing in [0.5, 1.0, 2.0] {
        match sample_polyline(&arc, spacing) {
            Ok(p) => println!(
                "R=10 spacing {spacing}: ok, {} points, length {:.4} (curve {:.4})",
                p.len(),
                p.total_length(),
                arc.length()
            ),
            Err(e) => println!("R=10 spacing {spacing}: rejected: {e}"),
        }
    }
    let gentle = ReferenceCurve::arc(Vec2::ZERO, 15.0, 0.0, PI).unwrap();
    if let Err(e) = sample_polyline(&gentle, 2.0) {
        println!("R=15 spacing 2: rejected: {e}");
    }

    let spline = ReferenceCurve::spline(vec![
        Vec2::new(0.0, 0.0),
        Vec2::new(20.0, 0.0),
        Vec2::new(35.0, 8.0),
        Vec2::new(45.0, 22.0),
        Vec2::new(60.0, 30.0),
    ])
    .unwrap();
    let (kmax, at) = spline.curvature_peak();
    let p = sample_polyline(&spline, 0.5).unwrap();
    println!(
        "spline: length {:.3} m, peak curvature {kmax:.4} 1/m at s = {at:.2}, {} samples",
        spline.length(),
        p.len()
    );
    for s in [0.0, 10.0, 30.0, 50.0] {
        let (r, t) = (spline.position(s), spline.tangent(s));
        println!(
            "  s = {s:>4}: r = ({:.3}, {:.3}), t = ({:.3}, {:.3}), κ = {:.5}",
            r.x,
            r.y,
            t.x,
            t.y,
            spline.curvature_at(s).unwrap()
        );
    }
}
