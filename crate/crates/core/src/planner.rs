//! Receding-horizon planning loop for a point agent.
//!
//! Each tick draws a batch of corridor candidates over a window of stations
//! ahead of the agent, optionally repairs them, scores them and moves the
//! agent a fixed number of points along the cheapest one.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{CurveError, ReferenceCurve};
use crate::geometry::{Segment, Vec2};
use crate::polyline::{frenet_to_cartesian, sample_polyline, FrenetCoord, PolylineRef, SamplingError};
use crate::projection::transf_kappa;
use crate::scenario::{CostWeights, Obstacle, Scenario};
use crate::trajectory::{
    generate_baseline_window, repair_trajectory, validate_candidate, CandidateTrajectory, CorridorBounds,
    CorridorError, ValidationReport,
};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("reference: {0}")]
    Curve(#[from] CurveError),
    #[error("sampling: {0}")]
    Sampling(#[from] SamplingError),
    #[error("corridor: {0}")]
    Corridor(#[from] CorridorError),
    #[error("corridor is blocked at station {station:.3} (index {index}): obstacle leaves no lateral gap")]
    Infeasible { index: usize, station: f64 },
    #[error("planner.{field}: must be at least 1")]
    ZeroParameter { field: &'static str },
}

#[derive(Debug, Error)]
pub enum SimulationError {
    #[error("no collision-free candidate at tick {tick}")]
    NoFeasibleCandidate { tick: usize, trace: Box<PlanTrace> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgentState {
    pub position: Vec2,
    pub heading: f64,
    pub station: f64,
}

/// Per-candidate record kept in the trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateSummary {
    pub seed: u64,
    #[serde(with = "crate::output::float_or_inf")]
    pub cost: f64,
    pub monotone: bool,
    pub self_intersection: bool,
    pub reversal: bool,
    pub discontinuity: bool,
    pub max_kappa_d: f64,
    pub bound_excess: f64,
    pub collision: bool,
}

impl CandidateSummary {
    pub fn is_anomalous(&self) -> bool {
        !self.monotone || self.self_intersection || self.reversal
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectedTrajectory {
    pub seed: u64,
    pub cost: f64,
    pub frenet: Vec<FrenetCoord>,
    pub cartesian: Vec<Vec2>,
    pub report: ValidationReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Diagnostics {
    pub reversals: usize,
    pub self_intersections: usize,
    pub non_monotone: usize,
    pub anomalous: usize,
    pub collisions: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TickRecord {
    pub tick: usize,
    pub agent: AgentState,
    pub selected: Option<SelectedTrajectory>,
    pub candidates: Vec<CandidateSummary>,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    GoalReached,
    StepLimit,
    NoFeasibleCandidate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanTrace {
    pub use_repair: bool,
    pub ticks: Vec<TickRecord>,
    pub outcome: Outcome,
    /// Every point the agent passed through, starting at its initial position.
    pub executed_path: Vec<Vec2>,
}

impl PlanTrace {
    /// Ticks whose selected trajectory fails validation.
    pub fn anomalous_selections(&self) -> usize {
        self.ticks
            .iter()
            .filter(|t| t.selected.as_ref().is_some_and(|s| s.report.is_anomalous()))
            .count()
    }

    pub fn anomalous_candidates(&self) -> usize {
        self.ticks.iter().map(|t| t.diagnostics.anomalous).sum()
    }
}

/// Result of one planning step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepResult {
    pub selected: SelectedTrajectory,
    pub candidates: Vec<CandidateSummary>,
    pub diagnostics: Diagnostics,
}

/// Lateral corridor per station: `[-w, w]`, widened on the inner side of
/// curved stretches when configured, and shrunk away from the inflated
/// obstacle wherever a station's lateral slice crosses it.
pub fn build_corridor(scenario: &Scenario, polyline: &PolylineRef) -> Result<CorridorBounds, ScenarioError> {
    let w = scenario.lane_half_width;
    let n = polyline.len();
    let mut lower = vec![-w; n];
    let mut upper = vec![w; n];
    if let Some(inner) = scenario.curved_inner_half_width {
        for (c, &k) in polyline.vertex_curvature().iter().enumerate() {
            if k > 0.0 {
                upper[c] = upper[c].max(inner);
            } else if k < 0.0 {
                lower[c] = lower[c].min(-inner);
            }
        }
    }
    if let Some(obstacle) = &scenario.obstacle {
        let cum = polyline.cumulative_s();
        for c in 0..n {
            let origin = polyline.points()[c];
            let step = frenet_to_cartesian(polyline, FrenetCoord::new(cum[c], 1.0)) - origin;
            let Some((t1, t2)) = slice_hits(origin, step, obstacle) else { continue };
            if t2 < lower[c] || t1 > upper[c] {
                continue;
            }
            if 0.5 * (t1 + t2) >= 0.0 {
                upper[c] = upper[c].min(t1);
            } else {
                lower[c] = lower[c].max(t2);
            }
            if lower[c] > upper[c] {
                return Err(ScenarioError::Infeasible { index: c, station: cum[c] });
            }
        }
    }
    Ok(CorridorBounds::new(lower, upper)?)
}

/// Parameters `t1 <= t2` where `origin + t * step` meets the inflated disc.
fn slice_hits(origin: Vec2, step: Vec2, obstacle: &Obstacle) -> Option<(f64, f64)> {
    let rho = obstacle.inflated_radius();
    let f = origin - obstacle.center;
    let a = step.norm_squared();
    let b = 2.0 * f.dot(step);
    let c = f.norm_squared() - rho * rho;
    let disc = b * b - 4.0 * a * c;
    if disc <= 0.0 {
        return None;
    }
    let root = disc.sqrt();
    Some(((-b - root) / (2.0 * a), (-b + root) / (2.0 * a)))
}

/// Whether the path comes closer than the inflated radius to the obstacle.
pub fn path_collides(path: &[Vec2], obstacle: &Obstacle) -> bool {
    let rho = obstacle.inflated_radius();
    if path.len() == 1 {
        return path[0].distance(obstacle.center) < rho;
    }
    path.windows(2).any(|w| match Segment::new(w[0], w[1]) {
        Ok(seg) => seg.clamped_distance(obstacle.center) < rho,
        Err(_) => w[0].distance(obstacle.center) < rho,
    })
}

/// `w1 Σ|Δd| + w2 Σd² + w3 · bound_excess`, or infinity on collision.
pub fn score_candidate(
    t: &CandidateTrajectory,
    polyline: &PolylineRef,
    corridor: &CorridorBounds,
    weights: &CostWeights,
    collision: bool,
) -> f64 {
    if collision {
        return f64::INFINITY;
    }
    let smooth: f64 = t.points.windows(2).map(|w| (w[1].d - w[0].d).abs()).sum();
    let adherence: f64 = t.points.iter().map(|f| f.d * f.d).sum();
    weights.smoothness * smooth + weights.adherence * adherence + weights.bound_violation * t.bound_excess(polyline, corridor)
}

#[derive(Debug, Clone)]
pub struct Planner {
    scenario: Scenario,
    curve: ReferenceCurve,
    polyline: PolylineRef,
    corridor: CorridorBounds,
    goal_station: f64,
}

impl Planner {
    pub fn new(scenario: Scenario) -> Result<Self, ScenarioError> {
        for (field, v) in [
            ("num_candidates", scenario.planner.num_candidates),
            ("horizon_stations", scenario.planner.horizon_stations),
            ("replan_stride", scenario.planner.replan_stride),
        ] {
            if v == 0 {
                return Err(ScenarioError::ZeroParameter { field });
            }
        }
        let curve = scenario.reference.build()?;
        let polyline = sample_polyline(&curve, scenario.spacing)?;
        let corridor = build_corridor(&scenario, &polyline)?;
        let goal_station = scenario.goal_station.unwrap_or(polyline.total_length());
        Ok(Self {
            scenario,
            curve,
            polyline,
            corridor,
            goal_station,
        })
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn curve(&self) -> &ReferenceCurve {
        &self.curve
    }

    pub fn polyline(&self) -> &PolylineRef {
        &self.polyline
    }

    pub fn corridor(&self) -> &CorridorBounds {
        &self.corridor
    }

    pub fn goal_station(&self) -> f64 {
        self.goal_station
    }

    pub fn initial_state(&self) -> AgentState {
        let (position, heading) = match self.scenario.agent_start {
            Some(start) => (start.position, start.heading),
            None => (self.polyline.points()[0], self.polyline.segment_dir(0).angle()),
        };
        AgentState {
            position,
            heading,
            station: transf_kappa(&self.polyline, position).s,
        }
    }

    /// Station indices planned over from `station`.
    pub fn window(&self, station: f64) -> std::ops::Range<usize> {
        let n = self.polyline.len();
        let k0 = self
            .polyline
            .cumulative_s()
            .partition_point(|&c| c < station - 1e-9)
            .min(n - 2);
        k0..(k0 + self.scenario.planner.horizon_stations).min(n)
    }

    fn seed(&self, tick: usize, index: usize) -> u64 {
        let p = &self.scenario.planner;
        p.base_seed
            .wrapping_add(index as u64)
            .wrapping_add((tick as u64).wrapping_mul(p.num_candidates as u64))
    }

    /// Generates, validates and scores one batch of candidates and returns
    /// the cheapest (ties go to the smaller seed).
    pub fn plan_step(&self, agent: &AgentState, tick: usize, use_repair: bool) -> Option<StepResult> {
        self.plan_step_weighted(agent, tick, use_repair, &self.scenario.weights)
    }

    pub fn plan_step_weighted(
        &self,
        agent: &AgentState,
        tick: usize,
        use_repair: bool,
        weights: &CostWeights,
    ) -> Option<StepResult> {
        let window = self.window(agent.station);
        let evaluated: Vec<(CandidateTrajectory, Vec<Vec2>, ValidationReport, CandidateSummary)> = (0..self
            .scenario
            .planner
            .num_candidates)
            .into_par_iter()
            .map(|idx| {
                let seed = self.seed(tick, idx);
                let base = generate_baseline_window(&self.polyline, &self.corridor, seed, window.clone());
                let t = if use_repair {
                    repair_trajectory(&self.curve, &self.polyline, &base)
                } else {
                    base
                };
                let path = t.render(&self.polyline);
                let report = validate_candidate(&self.polyline, &t);
                let collision = self.scenario.obstacle.as_ref().is_some_and(|o| {
                    let mut full = Vec::with_capacity(path.len() + 1);
                    full.push(agent.position);
                    full.extend_from_slice(&path);
                    path_collides(&full, o)
                });
                let cost = score_candidate(&t, &self.polyline, &self.corridor, weights, collision);
                let summary = CandidateSummary {
                    seed,
                    cost,
                    monotone: report.monotone,
                    self_intersection: report.self_intersection,
                    reversal: report.following.reversal_detected,
                    discontinuity: report.following.discontinuity_detected,
                    max_kappa_d: report.max_kappa_d,
                    bound_excess: t.bound_excess(&self.polyline, &self.corridor),
                    collision,
                };
                (t, path, report, summary)
            })
            .collect();

        let mut diagnostics = Diagnostics::default();
        for (_, _, _, s) in &evaluated {
            diagnostics.reversals += usize::from(s.reversal);
            diagnostics.self_intersections += usize::from(s.self_intersection);
            diagnostics.non_monotone += usize::from(!s.monotone);
            diagnostics.anomalous += usize::from(s.is_anomalous());
            diagnostics.collisions += usize::from(s.collision);
        }
        let best = evaluated
            .iter()
            .enumerate()
            .filter(|(_, e)| e.3.cost.is_finite() && !e.0.points.is_empty())
            .min_by(|(_, a), (_, b)| a.3.cost.total_cmp(&b.3.cost).then(a.3.seed.cmp(&b.3.seed)))
            .map(|(i, _)| i)?;
        let candidates = evaluated.iter().map(|e| e.3.clone()).collect();
        let (t, path, report, summary) = evaluated.into_iter().nth(best).unwrap();
        Some(StepResult {
            selected: SelectedTrajectory {
                seed: summary.seed,
                cost: summary.cost,
                frenet: t.points,
                cartesian: path,
                report,
            },
            candidates,
            diagnostics,
        })
    }

    /// Runs until the goal station, the tick limit or a tick without any
    /// feasible candidate.
    pub fn run(&self, use_repair: bool) -> Result<PlanTrace, SimulationError> {
        let mut agent = self.initial_state();
        let mut trace = PlanTrace {
            use_repair,
            ticks: Vec::new(),
            outcome: Outcome::StepLimit,
            executed_path: vec![agent.position],
        };
        let stride = self.scenario.planner.replan_stride;
        for tick in 0..self.scenario.planner.max_ticks {
            if agent.station >= self.goal_station - 1e-9 {
                trace.outcome = Outcome::GoalReached;
                return Ok(trace);
            }
            let Some(step) = self.plan_step(&agent, tick, use_repair) else {
                trace.ticks.push(TickRecord {
                    tick,
                    agent,
                    selected: None,
                    candidates: Vec::new(),
                    diagnostics: Diagnostics::default(),
                });
                trace.outcome = Outcome::NoFeasibleCandidate;
                return Err(SimulationError::NoFeasibleCandidate {
                    tick,
                    trace: Box::new(trace),
                });
            };
            let path = &step.selected.cartesian;
            let k = stride.min(path.len() - 1);
            trace.executed_path.extend_from_slice(&path[..=k]);
            let from = agent.position;
            let to = path[k];
            let heading = match (to - from).normalized() {
                Some(dir) => dir.angle(),
                None => agent.heading,
            };
            trace.ticks.push(TickRecord {
                tick,
                agent,
                selected: Some(step.selected),
                candidates: step.candidates,
                diagnostics: step.diagnostics,
            });
            agent = AgentState {
                position: to,
                heading,
                station: transf_kappa(&self.polyline, to).s,
            };
        }
        if agent.station >= self.goal_station - 1e-9 {
            trace.outcome = Outcome::GoalReached;
        }
        Ok(trace)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn planner(s: Scenario) -> Planner {
        Planner::new(s).unwrap()
    }

    #[test]
    fn plain_corridor_without_obstacle() {
        let p = planner(Scenario::straight());
        let c = p.corridor();
        assert!(c.lower().iter().all(|&a| a == -6.0));
        assert!(c.upper().iter().all(|&b| b == 6.0));
    }

    #[test]
    fn obstacle_outside_corridor_changes_nothing() {
        let mut s = Scenario::straight();
        s.obstacle = Some(Obstacle {
            center: Vec2::new(30.0, 20.0),
            radius: 1.0,
            clearance: 0.5,
        });
        let p = planner(s);
        assert!(p.corridor().upper().iter().all(|&b| b == 6.0));
    }

    #[test]
    fn obstacle_on_left_caps_upper_bound() {
        let mut s = Scenario::straight();
        s.lane_half_width = 3.0;
        s.obstacle = Some(Obstacle {
            center: Vec2::new(30.0, 1.5),
            radius: 1.0,
            clearance: 0.25,
        });
        let p = planner(s);
        let c = p.corridor();
        let idx = p.polyline().nearest_station_index(30.0);
        assert_eq!(c.interval(idx), (-3.0, 1.5 - 1.0 - 0.25));
        // Stations whose slice misses the disc are untouched.
        assert_eq!(c.interval(0), (-3.0, 3.0));
        // Off-center slices are capped by the disc chord.
        let near = idx + 1;
        let expected = 1.5 - (1.25f64.powi(2) - 0.5f64.powi(2)).sqrt();
        assert!((c.interval(near).1 - expected).abs() < 1e-12);
    }

    #[test]
    fn full_width_obstacle_is_infeasible() {
        let mut s = Scenario::straight();
        s.obstacle = Some(Obstacle {
            center: Vec2::new(30.0, 0.0),
            radius: 7.0,
            clearance: 0.0,
        });
        assert!(matches!(Planner::new(s), Err(ScenarioError::Infeasible { .. })));
    }

    #[test]
    fn wide_variant_widens_inner_side_on_arc_only() {
        let p = planner(Scenario::u_road_wide());
        let c = p.corridor();
        let arc_mid = p.polyline().nearest_station_index(30.0 + 7.5 * std::f64::consts::PI);
        assert_eq!(c.interval(arc_mid).1, 20.0);
        assert_eq!(c.interval(5), (-6.0, 6.0));
    }

    #[test]
    fn scoring_examples() {
        let p = planner(Scenario::straight());
        let w = CostWeights::default();
        let line = |d: f64| CandidateTrajectory {
            points: (0..10).map(|i| FrenetCoord::new(i as f64 * 0.5, d)).collect(),
            provenance: crate::trajectory::Provenance::Baseline,
            seed: 0,
        };
        assert_eq!(score_candidate(&line(0.0), p.polyline(), p.corridor(), &w, false), 0.0);
        assert!(score_candidate(&line(0.0), p.polyline(), p.corridor(), &w, true).is_infinite());
        let near = score_candidate(&line(1.0), p.polyline(), p.corridor(), &w, false);
        let far = score_candidate(&line(2.0), p.polyline(), p.corridor(), &w, false);
        assert!(far > near);
    }

    #[test]
    fn straight_run_reaches_goal_in_expected_ticks() {
        let p = planner(Scenario::straight());
        let trace = p.run(false).unwrap();
        assert_eq!(trace.outcome, Outcome::GoalReached);
        let stations = p.polyline().len() - 1;
        assert_eq!(trace.ticks.len(), stations.div_ceil(5));
        assert_eq!(trace.anomalous_selections(), 0);
        for t in &trace.ticks {
            assert!(t.selected.as_ref().unwrap().frenet.iter().all(|f| f.d.abs() <= 6.0));
        }
    }

    #[test]
    fn ticks_are_consecutive_and_deterministic() {
        let p = planner(Scenario::u_road());
        let a = p.run(true).unwrap();
        let b = p.run(true).unwrap();
        assert_eq!(a, b);
        for (i, t) in a.ticks.iter().enumerate() {
            assert_eq!(t.tick, i);
        }
    }

    #[test]
    fn single_candidate_collision_reports_no_feasible() {
        let mut s = Scenario::straight();
        s.planner.num_candidates = 1;
        s.lane_half_width = 3.0;
        // Disc reaching the corridor only between stations 0 and 1 is missed
        // by the slices but hit by every path from the agent.
        s.obstacle = Some(Obstacle {
            center: Vec2::new(0.25, 3.4),
            radius: 0.35,
            clearance: 0.0,
        });
        s.agent_start = Some(crate::scenario::AgentStart {
            position: Vec2::new(0.25, 10.0),
            heading: 0.0,
        });
        let p = planner(s);
        match p.run(false) {
            Err(SimulationError::NoFeasibleCandidate { tick, trace }) => {
                assert_eq!(tick, 0);
                assert_eq!(trace.outcome, Outcome::NoFeasibleCandidate);
            }
            other => panic!("{other:?}"),
        }
    }
}
