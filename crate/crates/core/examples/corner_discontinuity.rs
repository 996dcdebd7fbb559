//! A chord cutting across a tight corner: the projected station jumps over
//! the whole bend.

use std::f64::consts::PI;

use frenet_kappa::curve::ReferenceCurve;
use frenet_kappa::geometry::Vec2;
use frenet_kappa::polyline::sample_polyline;
use frenet_kappa::projection::check_following;

fn main() {
    let corner = ReferenceCurve::composite(vec![
        ReferenceCurve::line(Vec2::new(0.0, 0.0), Vec2::new(20.0, 0.0)).unwrap(),
        ReferenceCurve::arc(Vec2::new(20.0, 2.0), 2.0, -PI / 2.0, PI / 2.0).unwrap(),
        ReferenceCurve::line(Vec2::new(22.0, 2.0), Vec2::new(22.0, 22.0)).unwrap(),
    ])
    .unwrap();
    let poly = sample_polyline(&corner, 0.1).unwrap();
    let (a, b) = (Vec2::new(10.0, 0.0), Vec2::new(22.0, 12.0));
    let path: Vec<Vec2> = (0..=340).map(|i| a.lerp(b, i as f64 / 340.0)).collect();
    let r = check_following(&poly, &path);
    let (i, jump) = r
        .stations
        .windows(2)
        .map(|w| w[1] - w[0])
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(&y.1))
        .unwrap();
    println!(
        "station jumps from {:.3} to {:.3} ({jump:.3} m) between path points {i} and {}",
        r.stations[i],
        r.stations[i + 1],
        i + 1
    );
    println!("discontinuity detected: {}", r.discontinuity_detected);
}
