//! Full planning runs on the widened U-road with and without repair.

use frenet_kappa::planner::{path_collides, Planner};
use frenet_kappa::scenario::Scenario;

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let mut scenario = Scenario::u_road_wide();
    scenario.planner.base_seed = seed;
    let planner = Planner::new(scenario).unwrap();
    let obstacle = planner.scenario().obstacle.unwrap();
    for use_repair in [false, true] {
        let trace = match planner.run(use_repair) {
            Ok(t) => t,
            Err(frenet_kappa::planner::SimulationError::NoFeasibleCandidate { trace, .. }) => *trace,
        };
        println!(
            "{:<9} seed {seed}: {:?} after {} ticks; {} anomalous selections, {} anomalous candidates, collision {}",
            if use_repair { "repaired" } else { "baseline" },
            trace.outcome,
            trace.ticks.len(),
            trace.anomalous_selections(),
            trace.anomalous_candidates(),
            path_collides(&trace.executed_path, &obstacle)
        );
        if let Some(t) = trace.ticks.iter().find(|t| t.selected.as_ref().is_some_and(|s| s.report.is_anomalous())) {
            let r = &t.selected.as_ref().unwrap().report;
            println!(
                "  first anomalous selection at tick {} (station {:.2}): reversal {}, self-intersection {}",
                t.tick, t.agent.station, r.following.reversal_detected, r.self_intersection
            );
        }
    }
}
