use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_resgame"));
    c.env_remove("RESGAME_ENUM_CAP");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

struct Fixture {
    _dir: tempfile::TempDir,
    p3: String,
    two_gap: String,
    root: PathBuf,
}

fn fixture() -> Fixture {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path().to_path_buf();
    let p3 = write(&root, "p3.txt", "# path\n0 1\n1 2\n");
    let two_gap = write(
        &root,
        "two_gap.json",
        r#"{"n":5,"edges":[[0,1],[0,2],[0,3],[1,4]]}"#,
    );
    Fixture {
        p3: p3.display().to_string(),
        two_gap: two_gap.display().to_string(),
        root,
        _dir: dir,
    }
}

#[test]
fn centrality_of_path() {
    let fx = fixture();
    let r = json(&run(&["centrality", "--graph", &fx.p3, "--effective"]));
    assert_eq!(r["center"], serde_json::json!([1]));
    assert_eq!(r["effective_center"], serde_json::json!([1]));
    assert_eq!(r["delta1"], 2.0);
}

#[test]
fn centrality_csv() {
    let fx = fixture();
    let out = run(&["centrality", "--graph", &fx.p3, "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "node,degree,eccentricity\n0,1,2\n1,2,1\n2,1,2\n");
}

#[test]
fn h2_closed_forms() {
    let fx = fixture();
    let base = [
        "h2",
        "--graph",
        &fx.p3,
        "--gain",
        "1",
        "--defense",
        "1",
        "--attack",
        "1",
    ];
    let r = json(&run(&[&base[..], &["--law", "1"]].concat()));
    assert_eq!(r["closed_form"]["value_sq"], 0.75);
    let r = json(&run(&[&base[..], &["--law", "2"]].concat()));
    assert!((r["closed_form"]["value_sq"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn h2_oracle_reports_relative_error() {
    let fx = fixture();
    let r = json(&run(&[
        "h2",
        "--graph",
        &fx.p3,
        "--law",
        "2",
        "--gain",
        "1",
        "--defense",
        "1",
        "--attack",
        "0",
        "--oracle",
    ]));
    assert!(r["relative_error"].as_f64().unwrap() < 1e-6);
    assert_eq!(r["agrees"], true);

    // undefended law 1 agrees; the defended case is reported, not hidden
    let r = json(&run(&[
        "h2", "--graph", &fx.p3, "--law", "1", "--gain", "1", "--attack", "1", "--oracle",
    ]));
    assert_eq!(r["agrees"], true);
    let r = json(&run(&[
        "h2",
        "--graph",
        &fx.p3,
        "--law",
        "1",
        "--gain",
        "1",
        "--defense",
        "1",
        "--attack",
        "1",
        "--oracle",
    ]));
    assert_eq!(r["agrees"], false);
    assert!(r["lyapunov"]["residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn solve_examples() {
    let fx = fixture();
    let r = json(&run(&[
        "solve", "--graph", &fx.p3, "--law", "1", "--gain", "0.4", "--f", "1",
    ]));
    assert_eq!(r["kind"], "nash");
    assert_eq!(r["defender_set"], serde_json::json!([1]));
    assert!((r["value"].as_f64().unwrap() - 3.0 / 2.8).abs() < 1e-15);
    assert_eq!(r["predicted_witness"]["matches"], true);

    let r = json(&run(&[
        "solve", "--graph", &fx.p3, "--law", "1", "--gain", "1", "--f", "1",
    ]));
    assert_eq!(r["kind"], "stackelberg_defender_leader");
    assert_eq!(r["value"], 1.0);
}

#[test]
fn solve_from_config_with_relative_graph() {
    let fx = fixture();
    let cfg = write(
        &fx.root,
        "run.json",
        r#"{"graph": "p3.txt", "law": 2, "gain": 1.5, "f": 1}"#,
    );
    let r = json(&run(&["solve", "--config", &cfg.display().to_string()]));
    assert_eq!(r["defender_set"], serde_json::json!([1]));
    assert_eq!(r["predicted_witness"]["theorem"], "graph_center_leader");
    // flags override the file
    let r = json(&run(&[
        "solve",
        "--config",
        &cfg.display().to_string(),
        "--law",
        "1",
    ]));
    assert_eq!(r["law"], 1);
}

#[test]
fn matrix_csv_and_json() {
    let fx = fixture();
    let out = run(&[
        "matrix", "--graph", &fx.p3, "--law", "1", "--gain", "0.5", "--f", "1", "--format", "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "defender\\attacker,0:[0],1:[1],2:[2]"
    );
    assert!(lines
        .next()
        .unwrap()
        .starts_with("0:[0],0.6666666666666666,1.5,1"));

    let r = json(&run(&[
        "matrix", "--graph", &fx.p3, "--law", "2", "--gain", "1", "--f", "2",
    ]));
    assert_eq!(r["subsets"].as_array().unwrap().len(), 3);
}

#[test]
fn sweep_crossover() {
    let fx = fixture();
    let out = run(&[
        "sweep",
        "--graph",
        &fx.two_gap,
        "--law",
        "1",
        "--f",
        "1",
        "--gains",
        "0.2,0.5",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text,
        "kappa,defender,attacker,value\n0.2,0,0,1.6666666666666667\n0.5,0,1,1.5\n"
    );

    let r = json(&run(&[
        "sweep",
        "--graph",
        &fx.two_gap,
        "--law",
        "1",
        "--f",
        "1",
        "--defense",
        "0",
        "--grid",
        "0.1:1:10",
        "--format",
        "json",
    ]));
    let c = &r["crossovers"][0];
    assert!((c["kappa"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    assert_eq!(c["from"], serde_json::json!([0]));
    assert_eq!(c["to"], serde_json::json!([1]));
}

#[test]
fn sweep_writes_out_file() {
    let fx = fixture();
    let out = fx.root.join("sweep.csv");
    let status = run(&[
        "sweep",
        "--graph",
        &fx.p3,
        "--law",
        "2",
        "--f",
        "1",
        "--grid",
        "0.5:2:4",
        "--out",
        &out.display().to_string(),
    ]);
    assert!(status.status.success());
    let s = resgame::io::read_sweep_csv(&out).unwrap();
    assert_eq!(s.rows.len(), 4);
    assert!(s.rows.iter().all(|r| r.defender == vec![1]));
}

#[test]
fn validation_errors_exit_one_and_list_every_problem() {
    let fx = fixture();
    let out = run(&[
        "solve", "--graph", &fx.p3, "--law", "2", "--gain", "-1", "--f", "4",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("gain must be positive"), "{err}");
    assert!(err.contains("exceeds n = 3"), "{err}");

    let out = run(&["solve", "--law", "3"]);
    assert_eq!(out.status.code(), Some(1));

    let disconnected = write(&fx.root, "split.txt", "0 1\n2 3\n");
    let out = run(&["centrality", "--graph", &disconnected.display().to_string()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("disconnected"));

    let bad = write(&fx.root, "bad.txt", "0 1\n1 2 heavy\n");
    let out = run(&["centrality", "--graph", &bad.display().to_string()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2"));

    let out = run(&[
        "sweep",
        "--graph",
        &fx.p3,
        "--law",
        "1",
        "--f",
        "1",
        "--defense",
        "0,1",
        "--gains",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn enumeration_cap_exits_two() {
    let fx = fixture();
    let out = bin()
        .env("RESGAME_ENUM_CAP", "2")
        .args([
            "solve", "--graph", &fx.p3, "--law", "1", "--gain", "1", "--f", "1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("enumeration limit"));
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = ["verify", "--seed", "7", "--trials", "4"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stderr)
    );
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["passed"], true);
}

#[test]
fn verify_catches_injected_fault() {
    let out = run(&[
        "verify",
        "--trials",
        "4",
        "--inject-fault",
        "wrong-sign-laplacian",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    let failed: Vec<&str> = r["suites"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| s["passed"] == false)
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"laplacian_psd"), "{failed:?}");
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("FAIL laplacian_psd"));
}
