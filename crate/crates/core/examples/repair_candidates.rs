//! Baseline corridor samples against their repaired versions on the
//! widened U-road.

use frenet_kappa::planner::Planner;
use frenet_kappa::scenario::Scenario;
use frenet_kappa::trajectory::{generate_baseline, repair_trajectory, validate_candidate};

fn main() {
    let p = Planner::new(Scenario::u_road_wide()).unwrap();
    let poly = p.polyline();
    let seeds = 200;
    let mut tally = [[0usize; 3]; 2];
    for seed in 0..seeds {
        let base = generate_baseline(poly, p.corridor(), seed);
        let fixed = repair_trajectory(p.curve(), poly, &base);
        for (row, t) in [&base, &fixed].into_iter().enumerate() {
            let r = validate_candidate(poly, t);
            tally[row][0] += usize::from(!r.monotone);
            tally[row][1] += usize::from(r.following.reversal_detected);
            tally[row][2] += usize::from(r.self_intersection);
        }
        if seed == 0 {
            println!(
                "seed 0: {} baseline points, {} after repair, first re-projected station {:?}",
                base.points.len(),
                fixed.points.len(),
                fixed.points.iter().find(|f| !base.points.contains(f)).map(|f| f.s)
            );
        }
    }
    println!("{seeds} seeds        non-monotone  reversal  self-intersection");
    for (name, row) in ["baseline", "repaired"].iter().zip(tally) {
        println!("{name:<14} {:>12} {:>9} {:>18}", row[0], row[1], row[2]);
    }
}
