//! A path at constant lateral offset from an arc: below the radius the
//! projection follows it, beyond the radius it runs backward.

use frenet_kappa::geometry::Vec2;
use frenet_kappa::planner::Planner;
use frenet_kappa::projection::check_following;
use frenet_kappa::scenario::Scenario;

fn main() {
    let planner = Planner::new(Scenario::fig3b()).unwrap();
    let curve = planner.curve();
    let radius = 1.0 / curve.kappa_max();
    for &d in &planner.scenario().probe_offsets {
        let path: Vec<Vec2> = (0..=400)
            .map(|i| {
                let s = curve.length() * i as f64 / 400.0;
                curve.position(s) + curve.normal(s) * d
            })
            .collect();
        let r = check_following(planner.polyline(), &path);
        println!(
            "offset {d:>5} (κ·d = {:.2}): reversal {}, discontinuity {}, largest station step {:.3} m",
            d / radius,
            r.reversal_detected,
            r.discontinuity_detected,
            r.largest_gap
        );
        let first: Vec<String> = r.stations.iter().step_by(50).map(|s| format!("{s:.2}")).collect();
        println!("  stations every 50 samples: {}", first.join(", "));
    }
}
