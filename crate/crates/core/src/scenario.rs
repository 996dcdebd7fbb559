//! Scenario definitions and the bundled presets.

use serde::{Deserialize, Serialize};

use crate::curve::CurveSpec;
use crate::geometry::Vec2;

/// Static disc obstacle. Candidates must keep `radius + clearance` away
/// from `center`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Obstacle {
    pub center: Vec2,
    pub radius: f64,
    pub clearance: f64,
}

impl Obstacle {
    pub fn inflated_radius(&self) -> f64 {
        self.radius + self.clearance
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgentStart {
    pub position: Vec2,
    /// Heading in radians.
    pub heading: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlannerParams {
    pub num_candidates: usize,
    pub horizon_stations: usize,
    pub replan_stride: usize,
    pub base_seed: u64,
    pub max_ticks: usize,
}

impl Default for PlannerParams {
    fn default() -> Self {
        Self {
            num_candidates: 64,
            horizon_stations: 40,
            replan_stride: 5,
            base_seed: 0,
            max_ticks: 400,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostWeights {
    pub smoothness: f64,
    pub adherence: f64,
    pub bound_violation: f64,
}

impl Default for CostWeights {
    fn default() -> Self {
        Self {
            smoothness: 1.0,
            adherence: 0.1,
            bound_violation: 100.0,
        }
    }
}

impl CostWeights {
    pub fn scaled(self, k: f64) -> Self {
        Self {
            smoothness: self.smoothness * k,
            adherence: self.adherence * k,
            bound_violation: self.bound_violation * k,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub reference: CurveSpec,
    pub spacing: f64,
    pub lane_half_width: f64,
    /// Half width on the inner side of curved stretches, when wider than
    /// the lane.
    pub curved_inner_half_width: Option<f64>,
    pub obstacle: Option<Obstacle>,
    /// Defaults to the start of the reference, facing along it.
    pub agent_start: Option<AgentStart>,
    /// Defaults to the polyline length.
    pub goal_station: Option<f64>,
    pub planner: PlannerParams,
    pub weights: CostWeights,
    /// Constant lateral offsets used by the following check.
    pub probe_offsets: Vec<f64>,
}

pub const BUNDLED: [&str; 4] = ["straight", "u_road", "u_road_wide", "fig3b"];

impl Scenario {
    fn preset(name: &str, reference: CurveSpec) -> Self {
        Self {
            name: name.to_owned(),
            reference,
            spacing: 0.5,
            lane_half_width: 6.0,
            curved_inner_half_width: None,
            obstacle: None,
            agent_start: None,
            goal_station: None,
            planner: PlannerParams::default(),
            weights: CostWeights::default(),
            probe_offsets: Vec::new(),
        }
    }

    /// Preset defaults around a user-defined reference.
    pub fn custom(reference: CurveSpec) -> Self {
        Self::preset("custom", reference)
    }

    /// 60 m straight road without obstacles.
    pub fn straight() -> Self {
        Self::preset(
            "straight",
            CurveSpec::Line {
                start: [0.0, 0.0],
                end: [60.0, 0.0],
            },
        )
    }

    /// Two 30 m straights joined by a radius-15 semicircle, with an
    /// obstacle just outside the apex.
    pub fn u_road() -> Self {
        let mut s = Self::preset(
            "u_road",
            CurveSpec::URoad {
                straight_length: 30.0,
                radius: 15.0,
            },
        );
        s.obstacle = Some(Obstacle {
            center: Vec2::new(47.5, 15.0),
            radius: 1.5,
            clearance: 0.5,
        });
        s
    }

    /// `u_road` with the corridor widened to 20 m on the inside of the arc.
    pub fn u_road_wide() -> Self {
        let mut s = Self::u_road();
        s.name = "u_road_wide".to_owned();
        s.curved_inner_half_width = Some(20.0);
        s
    }

    /// Radius-10 semicircle with probe offsets at twice and half the radius.
    pub fn fig3b() -> Self {
        let mut s = Self::preset(
            "fig3b",
            CurveSpec::Arc {
                center: [0.0, 0.0],
                radius: 10.0,
                start_angle_deg: 0.0,
                sweep_deg: 180.0,
            },
        );
        s.probe_offsets = vec![20.0, 5.0];
        s
    }

    pub fn bundled(name: &str) -> Option<Self> {
        match name {
            "straight" => Some(Self::straight()),
            "u_road" => Some(Self::u_road()),
            "u_road_wide" => Some(Self::u_road_wide()),
            "fig3b" => Some(Self::fig3b()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_bundled_name_resolves() {
        for name in BUNDLED {
            assert_eq!(Scenario::bundled(name).unwrap().name, name);
        }
        assert!(Scenario::bundled("nope").is_none());
    }

    #[test]
    fn obstacle_leaves_a_gap() {
        // Apex of the arc is (45, 15); the inflated disc spans lateral
        // offsets [-4.5, -0.5], inside the [-6, 6] lane with room on both sides.
        let o = Scenario::u_road().obstacle.unwrap();
        let lateral = 45.0 - o.center.x;
        assert!(lateral - o.inflated_radius() > -6.0);
        assert!(lateral + o.inflated_radius() < 6.0);
    }
}
