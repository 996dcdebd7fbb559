//! A scenario defined entirely in TOML, including a deliberately invalid
//! variant to show the error messages.

use frenet_kappa::config::parse_config_str;
use frenet_kappa::planner::Planner;

const CONFIG: &str = r#"
[reference]
kind = "composite"
pieces = [
    { kind = "line", start = [0.0, 0.0], end = [25.0, 0.0] },
    { kind = "arc", center = [25.0, 20.0], radius = 20.0, start_angle_deg = -90.0, sweep_deg = 90.0 },
    { kind = "line", start = [45.0, 20.0], end = [45.0, 50.0] },
]

[corridor]
lane_half_width = 4.0

[obstacle]
center = [39.0, 7.0]
radius = 1.0
clearance = 0.5

[planner]
num_candidates = 32
"#;

fn main() {
    let config = parse_config_str(CONFIG).unwrap();
    let planner = Planner::new(config.scenario).unwrap();
    let trace = planner.run(true).unwrap();
    println!(
        "custom road: {:.2} m, {:?} in {} ticks",
        planner.polyline().total_length(),
        trace.outcome,
        trace.ticks.len()
    );

    for bad in [
        CONFIG.replace("radius = 20.0", "radius = -20.0"),
        CONFIG.replace("[planner]", "[sampling]\nspacing = 3.0\n[planner]"),
        CONFIG.replace("lane_half_width = 4.0", "lane_width = 4.0"),
    ] {
        println!("error: {}", parse_config_str(&bad).unwrap_err());
    }
}
