use std::fs;
use std::path::Path;
use std::process::Command;

use frenet_kappa::planner::TickRecord;
use frenet_kappa::run::RunSummary;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_frenet-kappa"))
}

fn run(args: &[&str], out: &Path) -> std::process::Output {
    bin().arg("run").args(args).arg("--out").arg(out).output().unwrap()
}

#[test]
fn repaired_u_road_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["--config", "u_road", "--mode", "repaired", "--seed", "3"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let summary: RunSummary = serde_json::from_slice(&fs::read(dir.path().join("summary.json")).unwrap()).unwrap();
    assert!(summary.modes[0].goal_reached);
    assert!(dir.path().join("trace.csv").exists());
    assert!(dir.path().join("trace.json").exists());
}

#[test]
fn wide_both_reports_baseline_anomalies() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["--config", "u_road_wide", "--mode", "both", "--seed", "42"], dir.path());
    assert!(out.status.code().is_some());
    let summary: RunSummary = serde_json::from_slice(&fs::read(dir.path().join("summary.json")).unwrap()).unwrap();
    let baseline = summary.modes.iter().find(|m| m.mode == "baseline").unwrap();
    let repaired = summary.modes.iter().find(|m| m.mode == "repaired").unwrap();
    assert!(baseline.anomalous_selected >= 1);
    assert_eq!(repaired.anomalous_selected, 0);
}

#[test]
fn csv_and_json_carry_identical_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["--config", "u_road_wide", "--mode", "baseline", "--seed", "5"], dir.path());
    assert!(out.status.code().is_some());
    let ticks: Vec<TickRecord> = serde_json::from_slice(&fs::read(dir.path().join("trace.json")).unwrap()).unwrap();
    let mut reader = csv::Reader::from_path(dir.path().join("trace.csv")).unwrap();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();

    let mut candidates = rows.iter().filter(|r| &r[0] == "candidate");
    let mut selected = rows.iter().filter(|r| &r[0] == "selected");
    for t in &ticks {
        for c in &t.candidates {
            let r = candidates.next().unwrap();
            assert_eq!(r[1].parse::<usize>().unwrap(), t.tick);
            assert_eq!(r[2].parse::<u64>().unwrap(), c.seed);
            assert_eq!(r[3].parse::<f64>().unwrap().to_bits(), c.cost.to_bits());
            assert_eq!(r[8].parse::<f64>().unwrap().to_bits(), c.max_kappa_d.to_bits());
            assert_eq!(r[9].parse::<f64>().unwrap().to_bits(), c.bound_excess.to_bits());
        }
        let sel = t.selected.as_ref().unwrap();
        for (f, p) in sel.frenet.iter().zip(&sel.cartesian) {
            let r = selected.next().unwrap();
            let nums: Vec<u64> = (12..16).map(|i| r[i].parse::<f64>().unwrap().to_bits()).collect();
            assert_eq!(nums, vec![f.s.to_bits(), f.d.to_bits(), p.x.to_bits(), p.y.to_bits()]);
        }
    }
    assert!(candidates.next().is_none() && selected.next().is_none());
}

#[test]
fn svg_frame_count_matches_ticks() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["--config", "straight", "--mode", "baseline", "--svg"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let ticks: Vec<TickRecord> = serde_json::from_slice(&fs::read(dir.path().join("trace.json")).unwrap()).unwrap();
    let frames = fs::read_dir(dir.path().join("frames")).unwrap().count();
    assert_eq!(frames, ticks.len());
    assert!(dir.path().join("frames/tick_0000.svg").exists());
}

#[test]
fn unwritable_output_dir_fails() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "not a directory").unwrap();
    let out = run(&["--config", "straight"], &blocker.join("sub"));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("output directory"));
}

#[test]
fn bad_config_reports_field() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    fs::write(
        &cfg,
        "[reference]\nkind = \"u_road\"\nstraight_length = 30.0\nradius = -1.0\n",
    )
    .unwrap();
    let out = run(&["--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("reference.radius"));
}

#[test]
fn bundled_config_files_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut count = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        frenet_kappa::config::parse_config(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        count += 1;
    }
    assert!(count >= 4);
}
