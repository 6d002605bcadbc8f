//! End-to-end checks of the command-line binary.

use std::fs;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_elastic-hull"))
}

#[test]
fn hull_verb_prints_canonical_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let points = dir.path().join("points.txt");
    fs::write(&points, "# unit-ish square with an interior point\n0 0\n4 0\n4 4\n0 4\n2 2\n").unwrap();
    let out = bin().arg("hull").arg("--points").arg(&points).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("4 hull vertices"));
    assert_eq!(
        text.lines().skip(1).collect::<Vec<_>>(),
        vec!["0 0", "4 0", "4 4", "0 4"]
    );
}

#[test]
fn malformed_points_exit_with_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let points = dir.path().join("points.txt");
    fs::write(&points, "1 2\nthree four\n").unwrap();
    let out = bin().arg("hull").arg("--points").arg(&points).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "stderr: {err}");
}

#[test]
fn simulate_writes_frames_metrics_and_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    let points = dir.path().join("points.txt");
    fs::write(&points, "70 70\n130 80\n100 130\n").unwrap();
    let out_dir = dir.path().join("out");
    let out = bin()
        .args(["simulate", "--frames", "500", "--format", "svg"])
        .arg("--points")
        .arg(&points)
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("converged"), "stdout: {text}");
    assert!(text.contains("matches the exact oracle"), "stdout: {text}");

    let ticks: u64 = text
        .split(" after ")
        .nth(1)
        .and_then(|s| s.split(' ').next())
        .unwrap()
        .parse()
        .unwrap();
    let frames = fs::read_dir(&out_dir)
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| {
            let n = e.file_name().to_string_lossy().into_owned();
            n.starts_with("frame_") && n.ends_with(".svg")
        })
        .count() as u64;
    assert_eq!(frames, ticks.div_ceil(500) + 1);
    assert!(out_dir.join("metrics.csv").exists());
    assert!(out_dir.join("trajectory.jsonl").exists());

    // re-render from the stored trajectory and compare one frame byte for byte
    let render_dir = dir.path().join("render");
    let out = bin()
        .arg("render")
        .arg("--trajectory")
        .arg(out_dir.join("trajectory.jsonl"))
        .arg("--out")
        .arg(&render_dir)
        .args(["--format", "svg"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let original = fs::read(out_dir.join("frame_00000000.svg")).unwrap();
    let rerendered = fs::read(render_dir.join("frame_00000000.svg")).unwrap();
    assert_eq!(original, rerendered);
}

#[test]
fn simulate_reports_non_convergence_via_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let points = dir.path().join("points.txt");
    fs::write(&points, "70 70\n130 80\n100 130\n").unwrap();
    let out = bin()
        .args(["simulate", "--max-ticks", "10"])
        .arg("--points")
        .arg(&points)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_verb_runs_a_small_campaign() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["verify", "--seed", "7", "--instances", "3", "--n-points", "5"])
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(dir.path().join("campaign.csv")).unwrap();
    assert!(csv.starts_with("instance,seed,n_points,converged,ticks,hull_match"));
    assert_eq!(csv.lines().count(), 4);
}
