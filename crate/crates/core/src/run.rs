//! Executes a [`RunConfig`] and writes its outputs.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use crate::config::{Mode, RunConfig};
use crate::output::{write_csv, write_frames, write_json, Scene};
use crate::planner::{Outcome, PlanTrace, Planner, SimulationError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeSummary {
    pub mode: String,
    pub outcome: Outcome,
    pub goal_reached: bool,
    pub ticks: usize,
    /// Ticks whose selected trajectory fails validation.
    pub anomalous_selected: usize,
    /// Anomalous candidates summed over all ticks.
    pub anomalous_candidates: usize,
    pub reversal_candidates: usize,
    pub self_intersection_candidates: usize,
    pub final_station: f64,
    pub goal_station: f64,
    pub runtime_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub scenario: String,
    pub seed: u64,
    pub modes: Vec<ModeSummary>,
    pub runtime_ms: f64,
}

impl RunSummary {
    /// 0 when every mode reached the goal, 2 if any mode ran out of
    /// feasible candidates, 3 if any mode hit the tick limit.
    pub fn exit_code(&self) -> i32 {
        if self.modes.iter().any(|m| m.outcome == Outcome::NoFeasibleCandidate) {
            2
        } else if self.modes.iter().any(|m| m.outcome == Outcome::StepLimit) {
            3
        } else {
            0
        }
    }
}

fn mode_name(use_repair: bool) -> &'static str {
    if use_repair {
        "repaired"
    } else {
        "baseline"
    }
}

/// Runs every mode in `config` and writes traces under its output
/// directory (one subdirectory per mode when running both).
pub fn run(config: &RunConfig) -> Result<RunSummary> {
    let start = Instant::now();
    let planner = Planner::new(config.scenario.clone()).context("building scenario")?;
    fs::create_dir_all(&config.output_dir)
        .with_context(|| format!("creating output directory {}", config.output_dir.display()))?;
    let mut modes = Vec::new();
    for &use_repair in config.mode.variants() {
        let t0 = Instant::now();
        let trace = match planner.run(use_repair) {
            Ok(t) => t,
            Err(SimulationError::NoFeasibleCandidate { trace, .. }) => *trace,
        };
        let dir = mode_dir(config, use_repair);
        emit(config, &planner, &trace, &dir)?;
        let final_station = trace
            .executed_path
            .last()
            .map_or(0.0, |&p| crate::projection::transf_kappa(planner.polyline(), p).s);
        modes.push(ModeSummary {
            mode: mode_name(use_repair).to_owned(),
            outcome: trace.outcome,
            goal_reached: trace.outcome == Outcome::GoalReached,
            ticks: trace.ticks.len(),
            anomalous_selected: trace.anomalous_selections(),
            anomalous_candidates: trace.anomalous_candidates(),
            reversal_candidates: trace.ticks.iter().map(|t| t.diagnostics.reversals).sum(),
            self_intersection_candidates: trace.ticks.iter().map(|t| t.diagnostics.self_intersections).sum(),
            final_station,
            goal_station: planner.goal_station(),
            runtime_ms: t0.elapsed().as_secs_f64() * 1e3,
        });
    }
    let summary = RunSummary {
        scenario: config.scenario.name.clone(),
        seed: config.seed,
        modes,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    let path = config.output_dir.join("summary.json");
    let file = File::create(&path).with_context(|| format!("writing {}", path.display()))?;
    serde_json::to_writer_pretty(BufWriter::new(file), &summary)?;
    Ok(summary)
}

/// Directory receiving the outputs of one mode.
pub fn mode_dir(config: &RunConfig, use_repair: bool) -> PathBuf {
    if config.mode == Mode::Both {
        config.output_dir.join(mode_name(use_repair))
    } else {
        config.output_dir.clone()
    }
}

fn emit(config: &RunConfig, planner: &Planner, trace: &PlanTrace, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    if config.emit.trace_csv {
        let path = dir.join("trace.csv");
        let file = File::create(&path).with_context(|| format!("writing {}", path.display()))?;
        write_csv(trace, BufWriter::new(file)).with_context(|| format!("writing {}", path.display()))?;
    }
    if config.emit.trace_json {
        let path = dir.join("trace.json");
        let file = File::create(&path).with_context(|| format!("writing {}", path.display()))?;
        write_json(trace, BufWriter::new(file)).with_context(|| format!("writing {}", path.display()))?;
    }
    if config.emit.svg_frames {
        let scene = Scene {
            polyline: planner.polyline(),
            obstacle: config.scenario.obstacle.as_ref(),
        };
        write_frames(&scene, trace, dir).with_context(|| format!("writing frames under {}", dir.display()))?;
    }
    Ok(())
}
