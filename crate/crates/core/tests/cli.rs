use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semiaxis-gabor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn certify_frame() {
    let o = run(&["certify", "--window", "one-sided-exp:1", "--alpha", "1", "--beta", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "Frame");
    assert_eq!(v["reason"], "certified");
    assert!(v["certified_epsilon"].as_f64().unwrap() > 0.0);
    for key in ["certified_A", "empirical_A", "empirical_B", "certificate", "diagnostics"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["diagnostics"]["per_x"].as_array().unwrap().len(), 32);
}

#[test]
fn certify_not_frame_exits_2() {
    let o = run(&["certify", "--window", "trunc-linear:1", "--alpha", "1", "--beta", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "NotFrame");
    assert_eq!(v["reason"], "boundary_rule");
    assert!(v["certified_epsilon"].is_null());
}

#[test]
fn dominance_test_summary() {
    let o = run(&["dominance-test", "--delta", "1", "--C", "2", "--lambda", "0.5", "--count", "200", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("violations: 0"));
    assert!(stdout(&o).contains("matrices: 200"));
}

#[test]
fn errors_exit_1() {
    assert_eq!(run(&["certify", "--window", "gauss:1", "--alpha", "1", "--beta", "1"]).status.code(), Some(1));
    assert_eq!(run(&["certify", "--window", "one-sided-exp:1", "--alpha", "1"]).status.code(), Some(1));
    assert_eq!(run(&["certify", "--alpha", "nope"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&[]).status.code(), Some(1));
    let o = run(&["demo", "incompleteness", "--window", "trunc-linear:1", "--alpha", "1", "--beta", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("precondition"));
}

#[test]
fn help_exits_0() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dominance-test"));
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "# certify on Z x Z\ncommand = certify\nwindow = one-sided-exp:1\nalpha = 1.2\nbeta = 1\nx-grid = 4\ntruncation = 8\n",
    )
    .unwrap();
    let c = cfg.to_str().unwrap();
    let o = run(&["--config", c]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stdout(&o).contains("product_rule"));
    let o = run(&["--config", c, "--alpha", "0.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("\"certified\""));

    std::fs::write(&cfg, "command = certify\nwindow = one-sided-exp:1\nalhpa = 1\n").unwrap();
    let o = run(&["--config", c]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3") && stderr(&o).contains("alhpa"), "{}", stderr(&o));

    std::fs::write(&cfg, "command = certify\nalpha = 1\nbeta = fast\n").unwrap();
    let o = run(&["--config", c]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3") && stderr(&o).contains("beta"), "{}", stderr(&o));
}

fn run_to(dir: &Path, name: &str, args: &[&str]) -> Vec<u8> {
    let out = dir.join(name);
    let mut full: Vec<&str> = args.to_vec();
    let out_str = out.to_str().unwrap().to_string();
    full.extend(["--output", &out_str]);
    let o = run(&full);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    std::fs::read(out).unwrap()
}

#[test]
fn sweep_csv_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "sweep", "--window", "trunc-linear:1", "--alpha-range", "0.25:1.5:0.25", "--beta-range", "0.5:1.5:0.5",
        "--x-grid", "4", "--truncation", "8",
    ];
    let a = run_to(dir.path(), "a.csv", &args);
    let mut with_workers = args.to_vec();
    with_workers.extend(["--workers", "3"]);
    let b = run_to(dir.path(), "b.csv", &with_workers);
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("alpha,beta,verdict,certified_A,empirical_A,empirical_B"));
    assert_eq!(lines.count(), 18);
    assert!(text.contains("1.5,0.5,NotFrame,"));
    assert!(text.contains("0.5,1,Frame,"));
}

#[test]
fn bounds_csv() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["bounds", "--window", "one-sided-exp:1", "--alpha", "1", "--beta", "1", "--x-grid", "8", "--truncation", "16"];
    let a = run_to(dir.path(), "a.csv", &args);
    assert_eq!(a, run_to(dir.path(), "b.csv", &args));
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("x,sigma_min,sigma_max\n"));
    assert_eq!(text.lines().count(), 9);
}

#[test]
fn demos() {
    let dir = tempfile::tempdir().unwrap();
    let w = run_to(
        dir.path(),
        "w.json",
        &["demo", "incompleteness", "--window", "trunc-linear:1", "--alpha", "1.5", "--beta", "0.5"],
    );
    let v: serde_json::Value = serde_json::from_slice(&w).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["witness"]["start"], 1.125);
    assert_eq!(v["witness"]["end"], 1.375);

    let b = run_to(dir.path(), "b.csv", &["demo", "boundary", "--window", "trunc-linear:1", "--beta", "1"]);
    let text = String::from_utf8(b).unwrap();
    assert!(text.starts_with("epsilon,frame_sum,ratio\n"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn irregular_generated_and_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["irregular", "--window", "one-sided-exp:1", "--beta", "1", "--seed", "3", "--x-grid", "8"];
    let a = run_to(dir.path(), "a.json", &args);
    assert_eq!(a, run_to(dir.path(), "b.json", &args));
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["reason"], "certified");
    assert!(v["diagnostics"]["notes"].to_string().contains("truncation lowered"));

    let pts = dir.path().join("points.csv");
    let list: Vec<f64> = (0..60).map(|i| 0.8 * i as f64).collect();
    semiaxis_gabor::grids::write_points(std::fs::File::create(&pts).unwrap(), &list).unwrap();
    let o = run_to(
        dir.path(),
        "c.json",
        &["irregular", "--window", "one-sided-exp:1", "--beta", "1", "--points", pts.to_str().unwrap(), "--truncation", "8"],
    );
    let v: serde_json::Value = serde_json::from_slice(&o).unwrap();
    assert_eq!(v["verdict"], "Frame");
}
