//! End-to-end tests of the command-line interface: output formats, exit
//! codes, and file writing.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scenes() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/scenes")
}

fn conic2d(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conic2d"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn eval_square_closed_matches_formula() {
    let scene = scenes().join("square_uniform.json");
    let out = conic2d(&[
        "eval",
        "--scene",
        scene.to_str().unwrap(),
        "--point",
        "0.5,0.5",
        "--method",
        "closed",
    ]);
    assert!(out.status.success());
    let value: f64 = stdout_of(&out).trim().parse().unwrap();
    assert!((value - 0.5).abs() < 1e-3, "got {value}");
}

#[test]
fn eval_methods_agree() {
    let scene = scenes().join("square_uniform.json");
    let run = |method: &str| -> f64 {
        let out = conic2d(&[
            "eval",
            "--scene",
            scene.to_str().unwrap(),
            "--point",
            "0.3,0.7",
            "--method",
            method,
        ]);
        assert!(out.status.success());
        stdout_of(&out).trim().parse().unwrap()
    };
    assert!((run("direct") - run("closed")).abs() < 2e-3);
}

#[test]
fn malformed_scene_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    let out = conic2d(&["eval", "--scene", bad.to_str().unwrap(), "--point", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty(), "diagnostic goes to stderr");
}

#[test]
fn unknown_scene_field_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("unknown.json");
    std::fs::write(
        &bad,
        r#"{"body": {"shape": "rectangle", "xmin": 0, "ymin": 0, "xmax": 1, "ymax": 1},
            "measure": {"kind": "uniform", "resolutoin": 64}}"#,
    )
    .unwrap();
    let out = conic2d(&["eval", "--scene", bad.to_str().unwrap(), "--point", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(
        err.contains("resolutoin"),
        "names the offending field: {err}"
    );
}

#[test]
fn minimize_oracle_square_and_triangle() {
    let out = conic2d(&[
        "minimize",
        "--scene",
        scenes().join("square_uniform.json").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(
        text.contains("minimizer: (0.500000000000, 0.500000000000)"),
        "{text}"
    );
    assert!(text.contains("unique: true"));

    let out = conic2d(&[
        "minimize",
        "--scene",
        scenes().join("triangle_uniform.json").to_str().unwrap(),
    ]);
    let text = stdout_of(&out);
    assert!(text.contains("minimizer: (0.292893"), "{text}");
}

#[test]
fn minimize_rm_two_steps_reproduces_example() {
    let dir = tempfile::tempdir().unwrap();
    let traj = dir.path().join("traj.csv");
    let out = conic2d(&[
        "minimize",
        "--scene",
        scenes().join("square_uniform.json").to_str().unwrap(),
        "--mode",
        "rm",
        "--x0",
        "0,0",
        "--t1",
        "1",
        "--gamma",
        "1",
        "--iters",
        "2",
        "--seed",
        "123",
        "--out",
        traj.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&traj).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# seed=123"));
    assert!(lines[2].starts_with("# fixture_hash="));
    assert_eq!(lines[3], "k,t_k,x1,x2");
    assert_eq!(lines[4], "0,0,0,0");
    assert_eq!(lines[5], "1,1,1,1");
    assert_eq!(lines[6], "2,0.5,0.5,0.5");
}

#[test]
fn diagnose_rejects_single_replication() {
    let dir = tempfile::tempdir().unwrap();
    let out = conic2d(&[
        "diagnose",
        "--scene",
        scenes().join("square_uniform.json").to_str().unwrap(),
        "--reps",
        "1",
        "--iters",
        "100",
        "--out",
        dir.path().join("r.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn diagnose_writes_schema_versioned_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let curves = dir.path().join("curves.csv");
    let out = conic2d(&[
        "diagnose",
        "--scene",
        scenes().join("square_uniform.json").to_str().unwrap(),
        "--x0",
        "0,0",
        "--iters",
        "500",
        "--reps",
        "4",
        "--seed",
        "9",
        "--checkpoints",
        "100,500",
        "--out",
        report.to_str().unwrap(),
        "--csv",
        curves.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(parsed["schema_version"], 1);
    assert_eq!(parsed["replications"], 4);
    assert!(parsed["fixture_hash"].is_string());
    let text = std::fs::read_to_string(&curves).unwrap();
    assert!(text.starts_with("checkpoint,l1_mean,l1_se,l2_mean,l2_se,f_gap_mean,f_gap_se"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn xray_square_is_constant_one() {
    let out = conic2d(&[
        "xray",
        "--scene",
        scenes().join("square_product.json").to_str().unwrap(),
        "--axis",
        "1",
        "--grid",
        "16",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let mut rows = text.lines();
    assert_eq!(rows.next(), Some("t,value"));
    for row in rows {
        let value: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(value, 1.0, "row {row}");
    }
}

#[test]
fn xray_requires_product_measure() {
    let out = conic2d(&[
        "xray",
        "--scene",
        scenes().join("square_uniform.json").to_str().unwrap(),
        "--axis",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn compare_xray_verdicts() {
    let out = conic2d(&[
        "compare-xray",
        "--scene-a",
        scenes().join("switch_a.json").to_str().unwrap(),
        "--scene-b",
        scenes().join("switch_b.json").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("verdict: equivalent"));

    let out = conic2d(&[
        "compare-xray",
        "--scene-a",
        scenes().join("square_product.json").to_str().unwrap(),
        "--scene-b",
        scenes().join("disk_product.json").to_str().unwrap(),
    ]);
    assert!(stdout_of(&out).contains("verdict: distinct"));
}

#[test]
fn density_scene_with_csv_table_loads() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("f1.csv"), "0.0,0.5,1.5\n0.5,1.0,0.5\n").unwrap();
    let scene = dir.path().join("scene.json");
    std::fs::write(
        &scene,
        r#"{
  "body": {"shape": "rectangle", "xmin": 0, "ymin": 0, "xmax": 1, "ymax": 1},
  "measure": {
    "kind": "product",
    "f1": {"family": "table_csv", "path": "f1.csv"},
    "f2": {"family": "const", "lo": 0.0, "hi": 1.0, "value": 1.0},
    "resolution": 256
  }
}"#,
    )
    .unwrap();
    let out = conic2d(&[
        "xray",
        "--scene",
        scene.to_str().unwrap(),
        "--axis",
        "2",
        "--grid",
        "4",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    // Horizontal X-ray integrates f1 over [0,1]: 0.75 + 0.25 = 1.
    let text = stdout_of(&out);
    for row in text.lines().skip(1) {
        let value: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
        assert!((value - 1.0).abs() < 1e-12, "row {row}");
    }
}
