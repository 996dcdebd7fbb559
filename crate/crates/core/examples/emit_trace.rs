//! Writes CSV, JSON and SVG frames for a repaired U-road run into a
//! directory (default `target/example-trace`).

use std::path::PathBuf;

use frenet_kappa::config::{parse_config_str, Mode};
use frenet_kappa::run::run;

fn main() -> anyhow::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("target/example-trace"));
    let mut config = parse_config_str(
        r#"
        scenario = "u_road"
        seed = 3
        [emit]
        svg_frames = true
        "#,
    )?;
    config.mode = Mode::Repaired;
    config.output_dir = out.clone();
    let summary = run(&config)?;
    for m in &summary.modes {
        println!("{}: {:?}, {} ticks", m.mode, m.outcome, m.ticks);
    }
    let frames = std::fs::read_dir(out.join("frames"))?.count();
    println!("wrote {} (trace.csv, trace.json, summary.json, {frames} frames)", out.display());
    Ok(())
}
