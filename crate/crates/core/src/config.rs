//! TOML run configuration.
//!
//! A config names a bundled scenario (`straight`, `u_road`, `u_road_wide`,
//! `fig3b`) and/or defines its own `[reference]`; every other table
//! overrides fields of that base. See `configs/` for complete examples.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::CurveSpec;
use crate::planner::{Planner, ScenarioError};
use crate::polyline::SamplingError;
use crate::scenario::{AgentStart, Obstacle, Scenario, BUNDLED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Baseline,
    Repaired,
    Both,
}

impl Mode {
    /// `use_repair` flags to run, in order.
    pub fn variants(self) -> &'static [bool] {
        match self {
            Mode::Baseline => &[false],
            Mode::Repaired => &[true],
            Mode::Both => &[false, true],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EmitFlags {
    pub trace_csv: bool,
    pub trace_json: bool,
    pub svg_frames: bool,
}

impl Default for EmitFlags {
    fn default() -> Self {
        Self {
            trace_csv: true,
            trace_json: true,
            svg_frames: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub mode: Mode,
    pub output_dir: PathBuf,
    pub emit: EmitFlags,
    pub seed: u64,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(#[from] toml::de::Error),
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
    #[error("sampling.spacing: {0}")]
    Sampling(SamplingError),
    #[error("{0}")]
    Scenario(ScenarioError),
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    scenario: Option<String>,
    mode: Option<Mode>,
    seed: Option<i64>,
    output_dir: Option<PathBuf>,
    emit: Option<EmitFlags>,
    reference: Option<CurveSpec>,
    sampling: Option<RawSampling>,
    corridor: Option<RawCorridor>,
    obstacle: Option<RawObstacle>,
    planner: Option<RawPlanner>,
    weights: Option<RawWeights>,
    agent: Option<RawAgent>,
    probes: Option<Vec<f64>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSampling {
    spacing: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCorridor {
    lane_half_width: Option<f64>,
    curved_inner_half_width: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawObstacle {
    enabled: Option<bool>,
    center: Option<[f64; 2]>,
    radius: Option<f64>,
    clearance: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPlanner {
    num_candidates: Option<i64>,
    horizon_stations: Option<i64>,
    replan_stride: Option<i64>,
    max_ticks: Option<i64>,
    goal_station: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWeights {
    smoothness: Option<f64>,
    adherence: Option<f64>,
    bound_violation: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAgent {
    position: [f64; 2],
    heading_deg: f64,
}

fn positive(field: &str, v: f64) -> Result<f64, ConfigError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(invalid(field, format!("must be positive, got {v}")))
    }
}

fn non_negative(field: &str, v: f64) -> Result<f64, ConfigError> {
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(invalid(field, format!("must be non-negative, got {v}")))
    }
}

fn count(field: &str, v: i64) -> Result<usize, ConfigError> {
    if v >= 1 {
        Ok(v as usize)
    } else {
        Err(invalid(field, format!("must be at least 1, got {v}")))
    }
}

fn finite_point(field: &str, p: [f64; 2]) -> Result<[f64; 2], ConfigError> {
    if p.iter().all(|c| c.is_finite()) {
        Ok(p)
    } else {
        Err(invalid(field, "coordinates must be finite"))
    }
}

/// Checks curve parameters that have a natural field path.
fn check_curve(path: &str, spec: &CurveSpec) -> Result<(), ConfigError> {
    match spec {
        CurveSpec::Line { start, end } => {
            finite_point(&format!("{path}.start"), *start)?;
            finite_point(&format!("{path}.end"), *end)?;
            if start == end {
                return Err(invalid(format!("{path}.end"), "must differ from start"));
            }
        }
        CurveSpec::Arc {
            center,
            radius,
            start_angle_deg,
            sweep_deg,
        } => {
            finite_point(&format!("{path}.center"), *center)?;
            positive(&format!("{path}.radius"), *radius)?;
            if !start_angle_deg.is_finite() {
                return Err(invalid(format!("{path}.start_angle_deg"), "must be finite"));
            }
            if !(sweep_deg.is_finite() && *sweep_deg != 0.0 && sweep_deg.abs() < 360.0) {
                return Err(invalid(
                    format!("{path}.sweep_deg"),
                    format!("must be nonzero and below 360 in magnitude, got {sweep_deg}"),
                ));
            }
        }
        CurveSpec::Spline { waypoints } => {
            if waypoints.len() < 3 {
                return Err(invalid(
                    format!("{path}.waypoints"),
                    format!("need at least 3 waypoints, got {}", waypoints.len()),
                ));
            }
            for (i, w) in waypoints.iter().enumerate() {
                finite_point(&format!("{path}.waypoints[{i}]"), *w)?;
            }
        }
        CurveSpec::URoad {
            straight_length,
            radius,
        } => {
            positive(&format!("{path}.straight_length"), *straight_length)?;
            positive(&format!("{path}.radius"), *radius)?;
        }
        CurveSpec::Composite { pieces } => {
            if pieces.is_empty() {
                return Err(invalid(format!("{path}.pieces"), "must not be empty"));
            }
            for (i, p) in pieces.iter().enumerate() {
                check_curve(&format!("{path}.pieces[{i}]"), p)?;
            }
        }
    }
    Ok(())
}

/// Parses and validates config text. The scenario is fully built (curve,
/// sampling, corridor) so that every error surfaces here.
pub fn parse_config_str(text: &str) -> Result<RunConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text)?;
    resolve(raw)
}

/// Reads a config file. A bare bundled scenario name (with no file of that
/// name present) stands for a config containing only `scenario = "<name>"`.
pub fn parse_config(path: &Path) -> Result<RunConfig, ConfigError> {
    if !path.exists() {
        if let Some(name) = path.to_str().filter(|n| BUNDLED.contains(n)) {
            return resolve(RawConfig {
                scenario: Some(name.to_owned()),
                ..RawConfig::default()
            });
        }
    }
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_config_str(&text)
}

fn resolve(raw: RawConfig) -> Result<RunConfig, ConfigError> {
    let mut scenario = match (&raw.scenario, &raw.reference) {
        (Some(name), _) => Scenario::bundled(name).ok_or_else(|| {
            invalid("scenario", format!("unknown scenario {name:?}; expected one of {}", BUNDLED.join(", ")))
        })?,
        (None, Some(reference)) => Scenario::custom(reference.clone()),
        (None, None) => {
            return Err(invalid(
                "scenario",
                "name a bundled scenario or define a [reference] table",
            ))
        }
    };
    if let Some(reference) = raw.reference {
        check_curve("reference", &reference)?;
        scenario.reference = reference;
    }
    if let Some(s) = raw.sampling.and_then(|s| s.spacing) {
        scenario.spacing = positive("sampling.spacing", s)?;
    }
    if let Some(c) = raw.corridor {
        if let Some(w) = c.lane_half_width {
            scenario.lane_half_width = positive("corridor.lane_half_width", w)?;
        }
        if let Some(w) = c.curved_inner_half_width {
            scenario.curved_inner_half_width = Some(positive("corridor.curved_inner_half_width", w)?);
        }
    }
    if let Some(o) = raw.obstacle {
        if o.enabled == Some(false) {
            scenario.obstacle = None;
        } else {
            let base = scenario.obstacle;
            let center = o.center.or(base.map(|b| b.center.into()));
            let radius = o.radius.or(base.map(|b| b.radius));
            let (Some(center), Some(radius)) = (center, radius) else {
                return Err(invalid("obstacle", "center and radius are required"));
            };
            scenario.obstacle = Some(Obstacle {
                center: finite_point("obstacle.center", center)?.into(),
                radius: positive("obstacle.radius", radius)?,
                clearance: non_negative(
                    "obstacle.clearance",
                    o.clearance.or(base.map(|b| b.clearance)).unwrap_or(0.0),
                )?,
            });
        }
    }
    if let Some(p) = raw.planner {
        let params = &mut scenario.planner;
        if let Some(v) = p.num_candidates {
            params.num_candidates = count("planner.num_candidates", v)?;
        }
        if let Some(v) = p.horizon_stations {
            params.horizon_stations = count("planner.horizon_stations", v)?;
        }
        if let Some(v) = p.replan_stride {
            params.replan_stride = count("planner.replan_stride", v)?;
        }
        if let Some(v) = p.max_ticks {
            params.max_ticks = count("planner.max_ticks", v)?;
        }
        if let Some(v) = p.goal_station {
            scenario.goal_station = Some(non_negative("planner.goal_station", v)?);
        }
    }
    if let Some(w) = raw.weights {
        let weights = &mut scenario.weights;
        if let Some(v) = w.smoothness {
            weights.smoothness = non_negative("weights.smoothness", v)?;
        }
        if let Some(v) = w.adherence {
            weights.adherence = non_negative("weights.adherence", v)?;
        }
        if let Some(v) = w.bound_violation {
            weights.bound_violation = non_negative("weights.bound_violation", v)?;
        }
    }
    if let Some(a) = raw.agent {
        if !a.heading_deg.is_finite() {
            return Err(invalid("agent.heading_deg", "must be finite"));
        }
        scenario.agent_start = Some(AgentStart {
            position: finite_point("agent.position", a.position)?.into(),
            heading: a.heading_deg.to_radians(),
        });
    }
    if let Some(p) = raw.probes {
        scenario.probe_offsets = p;
    }
    let seed = match raw.seed {
        Some(s) if s < 0 => return Err(invalid("seed", format!("must be non-negative, got {s}"))),
        Some(s) => s as u64,
        None => 0,
    };
    scenario.planner.base_seed = seed;
    check_scenario(&scenario)?;
    Ok(RunConfig {
        scenario,
        mode: raw.mode.unwrap_or(Mode::Repaired),
        output_dir: raw.output_dir.unwrap_or_else(|| PathBuf::from("out")),
        emit: raw.emit.unwrap_or_default(),
        seed,
    })
}

/// Builds the scenario once to surface curve, sampling and corridor errors.
pub fn check_scenario(scenario: &Scenario) -> Result<(), ConfigError> {
    match Planner::new(scenario.clone()) {
        Ok(_) => Ok(()),
        Err(ScenarioError::Sampling(e)) => Err(ConfigError::Sampling(e)),
        Err(e) => Err(ConfigError::Scenario(e)),
    }
}

impl RunConfig {
    /// Replaces the base seed everywhere it is used.
    pub fn set_seed(&mut self, seed: u64) {
        self.seed = seed;
        self.scenario.planner.base_seed = seed;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_uses_defaults() {
        let c = parse_config_str(r#"scenario = "u_road""#).unwrap();
        assert_eq!(c.scenario, Scenario::u_road());
        assert_eq!(c.mode, Mode::Repaired);
        assert_eq!(c.seed, 0);
        assert_eq!(c.emit, EmitFlags::default());
        assert_eq!(c.scenario.planner.num_candidates, 64);
        assert_eq!(c.scenario.planner.horizon_stations, 40);
        assert_eq!(c.scenario.planner.replan_stride, 5);
        assert_eq!(c.scenario.spacing, 0.5);
    }

    #[test]
    fn bare_bundled_name_resolves() {
        let c = parse_config(Path::new("u_road_wide")).unwrap();
        assert_eq!(c.scenario.name, "u_road_wide");
    }

    #[test]
    fn negative_radius_names_field() {
        let err = parse_config_str(
            r#"
            [reference]
            kind = "arc"
            center = [0.0, 0.0]
            radius = -5.0
            start_angle_deg = 0.0
            sweep_deg = 90.0
            "#,
        )
        .unwrap_err();
        assert!(err.to_string().starts_with("reference.radius: must be positive"), "{err}");
    }

    #[test]
    fn spacing_against_curvature_reports_values() {
        // Radius 15 with spacing 2: angle per joint 7.64° passes, 2/15 > 0.1 fails.
        let err = parse_config_str(
            r#"
            scenario = "fig3b"
            [reference]
            kind = "arc"
            center = [0.0, 0.0]
            radius = 15.0
            start_angle_deg = 0.0
            sweep_deg = 180.0
            [sampling]
            spacing = 2.0
            "#,
        )
        .unwrap_err();
        match err {
            ConfigError::Sampling(SamplingError::CurvatureSpacing { spacing, curvature, .. }) => {
                assert_eq!(spacing, 2.0);
                assert!((curvature - 1.0 / 15.0).abs() < 1e-12);
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn unknown_keys_and_scenarios_are_rejected() {
        assert!(parse_config_str("scenario = \"u_road\"\nbogus = 1").is_err());
        let err = parse_config_str(r#"scenario = "loop""#).unwrap_err();
        assert!(err.to_string().starts_with("scenario:"));
        let err = parse_config_str("scenario = \"u_road\"\nseed = -1").unwrap_err();
        assert!(err.to_string().starts_with("seed:"));
        let err = parse_config_str("scenario = \"u_road\"\n[planner]\nreplan_stride = 0").unwrap_err();
        assert!(err.to_string().starts_with("planner.replan_stride:"));
    }

    #[test]
    fn overrides_apply() {
        let c = parse_config_str(
            r#"
            scenario = "u_road"
            mode = "both"
            seed = 42
            [obstacle]
            enabled = false
            [weights]
            adherence = 0.5
            [emit]
            svg_frames = true
            "#,
        )
        .unwrap();
        assert_eq!(c.mode, Mode::Both);
        assert_eq!(c.scenario.planner.base_seed, 42);
        assert!(c.scenario.obstacle.is_none());
        assert_eq!(c.scenario.weights.adherence, 0.5);
        assert!(c.emit.svg_frames && c.emit.trace_csv);
    }
}
