use frenet_kappa::planner::{path_collides, Outcome, Planner};
use frenet_kappa::scenario::Scenario;

fn with_seed(mut s: Scenario, seed: u64) -> Planner {
    s.planner.base_seed = seed;
    Planner::new(s).unwrap()
}

#[test]
fn repaired_u_road_with_obstacle_reaches_goal_cleanly() {
    let p = with_seed(Scenario::u_road(), 7);
    let trace = p.run(true).unwrap();
    assert_eq!(trace.outcome, Outcome::GoalReached);
    assert_eq!(trace.anomalous_selections(), 0);
    assert!(!path_collides(&trace.executed_path, p.scenario().obstacle.as_ref().unwrap()));
    for t in &trace.ticks {
        let sel = t.selected.as_ref().unwrap();
        assert!(sel.frenet.windows(2).all(|w| w[1].s > w[0].s));
        assert!(!sel.report.self_intersection);
    }
}

#[test]
fn wide_baseline_shows_anomalous_candidates_at_arc_entry() {
    let p = with_seed(Scenario::u_road_wide(), 0);
    // Agent just before the arc, on the centerline.
    let start = p.polyline().points()[p.polyline().nearest_station_index(28.0)];
    let agent = frenet_kappa::planner::AgentState {
        position: start,
        heading: 0.0,
        station: 28.0,
    };
    let base = p.plan_step(&agent, 0, false).unwrap();
    assert!(base.diagnostics.anomalous >= 1);
    let fixed = p.plan_step(&agent, 0, true).unwrap();
    assert_eq!(fixed.diagnostics.reversals, 0);
    assert_eq!(fixed.diagnostics.non_monotone, 0);
    assert!(fixed.diagnostics.anomalous < base.diagnostics.anomalous);
    assert!(!fixed.selected.report.is_anomalous());
    assert!(fixed.selected.frenet.windows(2).all(|w| w[1].s > w[0].s));
}

#[test]
fn straight_baseline_step_is_clean() {
    let p = with_seed(Scenario::straight(), 3);
    let step = p.plan_step(&p.initial_state(), 0, false).unwrap();
    assert_eq!(step.diagnostics.anomalous, 0);
    assert!(step.selected.frenet.iter().all(|f| f.d.abs() <= 6.0));
}

#[test]
fn scaling_weights_keeps_every_selection() {
    let p = with_seed(Scenario::u_road_wide(), 42);
    let trace = p.run(false).unwrap();
    for k in [0.5, 2.0, 10.0, 1e3] {
        let w = p.scenario().weights.scaled(k);
        for t in &trace.ticks {
            let step = p.plan_step_weighted(&t.agent, t.tick, false, &w).unwrap();
            assert_eq!(step.selected.seed, t.selected.as_ref().unwrap().seed, "k={k} tick {}", t.tick);
        }
    }
}

#[test]
fn identical_inputs_give_identical_traces() {
    for repair in [false, true] {
        let a = with_seed(Scenario::u_road_wide(), 11).run(repair).unwrap();
        let b = with_seed(Scenario::u_road_wide(), 11).run(repair).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn candidate_seeds_do_not_overlap_between_ticks() {
    let p = with_seed(Scenario::u_road(), 1000);
    let trace = p.run(true).unwrap();
    let mut seen = std::collections::HashSet::new();
    for t in &trace.ticks {
        for c in &t.candidates {
            assert!(seen.insert(c.seed));
        }
    }
}
