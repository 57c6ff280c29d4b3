use std::path::Path;
use std::process::{Command, Output};

use majorana_lab::sweep::{self, Mode};

const BIN: &str = env!("CARGO_BIN_EXE_majorana-lab");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn recipe(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("recipes").join(name).display().to_string()
}

#[test]
fn output_is_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "2", "4"] {
        let out = dir.path().join(format!("qfi_{threads}.csv"));
        let o = run(&[
            "qfi-series", "--q", "1,3", "--gamma0", "0.5,1.6", "--t-max", "5", "--n-grid", "101",
            "--parallel", threads, "--out", out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        outputs.push(std::fs::read(&out).unwrap());
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn csv_metadata_reproduces_the_run() {
    let o = run(&["corr-series", "--q", "0:3:1.5", "--gamma0", "1.6", "--t-max", "2", "--n-grid", "21"]);
    assert!(o.status.success());
    let csv = String::from_utf8(o.stdout).unwrap();
    assert!(csv.starts_with("# tool: majorana-lab "));
    let spec = sweep::spec_from_csv(&csv).unwrap();
    assert_eq!(spec.mode, Mode::CorrSeries);
    assert_eq!(spec.q_values, vec![0.0, 1.5, 3.0]);
    let again = sweep::run(&spec).unwrap().to_csv().unwrap();
    assert_eq!(again, csv);

    let body: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body[0], "Q,gamma0,t,alpha,concurrence,discord,lqu,tnd,coherence");
    assert_eq!(body.len(), 1 + 3 * 21);
}

#[test]
fn flags_override_spec_file() {
    let o = run(&["corr-series", "--spec", &recipe("fig4.json"), "--q", "2", "--n-grid", "5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let spec = sweep::spec_from_csv(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert_eq!(spec.q_values, vec![2.0]);
    assert_eq!(spec.n_grid, 5);
    assert_eq!(spec.t_max, Some(2.0));
}

#[test]
fn json_format() {
    let o = run(&["state-dump", "--q", "3", "--gamma0", "1", "--t-max", "1", "--n-grid", "3", "--format", "json"]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["meta"]["tool"], "majorana-lab");
    assert_eq!(doc["meta"]["spec"]["mode"], "state-dump");
    assert!(doc["meta"]["wall_time_s"].as_f64().unwrap() >= 0.0);
    assert_eq!(doc["columns"].as_array().unwrap().len(), 4 + 32);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    // t = 0: α = 1 and ρ₁₁ = cos²(π/4)
    assert_eq!(rows[0][3], 1.0);
    assert!((rows[0][4].as_f64().unwrap() - 0.5).abs() < 1e-15);
}

#[test]
fn bad_specs_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"mode\": \"nm-scan\",\n  \"q_values\": [1,\n}").unwrap();
    let o = run(&["nm-scan", "--spec", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));

    let unknown = dir.path().join("unknown.json");
    std::fs::write(&unknown, r#"{"q_values": [1], "gamma0_values": [1], "bogus": 3}"#).unwrap();
    assert_eq!(run(&["nm-scan", "--spec", unknown.to_str().unwrap()]).status.code(), Some(2));

    assert_eq!(run(&["nm-scan", "--q", "", "--gamma0", "1"]).status.code(), Some(2));
    assert_eq!(run(&["nm-scan", "--q", "1", "--gamma0", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["nm-scan", "--q", "1"]).status.code(), Some(2));
    assert_eq!(run(&["warp-drive", "--q", "1", "--gamma0", "1"]).status.code(), Some(2));
    assert_eq!(run(&["qfi-series", "--q", "1", "--gamma0", "1", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_with_code_four() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("out.csv");
    let o = run(&["qfi-series", "--q", "1", "--gamma0", "1", "--t-max", "1", "--n-grid", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn recipes_parse() {
    for name in ["fig1.json", "fig4.json", "fig5.json", "fig7.json", "fig8.json"] {
        sweep::parse_spec(Some(Path::new(&recipe(name))), Default::default()).unwrap();
    }
}
