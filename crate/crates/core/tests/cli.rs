use std::process::{Command, Output};

use serde_json::Value;

fn opmeans(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opmeans"))
        .args(args)
        .env_remove("OPMEANS_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn bounds_from_spectrum() {
    let out = opmeans(&["bounds", "--m", "1", "--M", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["lambda"], 1.25);
    assert_eq!(v["mu"], 1.25);
    assert_eq!(v["h"], 4.0);
    assert_eq!(v["corollary_lambda"], 1.25);
    assert_eq!(v["kantorovich"], 1.5625);
    assert!((v["specht_h"].as_f64().unwrap() - 1.2637407212158112).abs() < 1e-15);
}

#[test]
fn bounds_usage_errors() {
    assert_eq!(opmeans(&["bounds", "--s", "0.5"]).status.code(), Some(2));
    assert_eq!(opmeans(&["bounds"]).status.code(), Some(2));
    assert_eq!(opmeans(&["bounds", "--s", "2", "--t", "1"]).status.code(), Some(2));
    assert_eq!(opmeans(&["bounds", "--s", "0.5", "--t", "2", "--alpha", "3"]).status.code(), Some(2));
    assert_eq!(opmeans(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn means_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    std::fs::write(&a, "[[1, 0], [0, 1]]").unwrap();
    std::fs::write(&b, r#"{"dim": 2, "re": [[4, 0], [0, 9]]}"#).unwrap();
    let out = opmeans(&["means", "--a", a.to_str().unwrap(), "--b", b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["arithmetic"]["re"], serde_json::json!([[2.5, 0.0], [0.0, 5.0]]));
    let g = &v["geometric"]["re"];
    assert!((g[0][0].as_f64().unwrap() - 2.0).abs() < 1e-15);
    assert!((g[1][1].as_f64().unwrap() - 3.0).abs() < 1e-15);
    assert_eq!(v["sandwich"]["s"], 4.0);
    assert_eq!(v["sandwich"]["t"], 9.0);
    assert!(v["chain"]["geometric<=arithmetic"].as_f64().unwrap() > 0.0);

    // indefinite input
    std::fs::write(&b, "[[1, 2], [2, 1]]").unwrap();
    let out = opmeans(&["means", "--a", a.to_str().unwrap(), "--b", b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not strictly positive"));

    // unreadable and malformed input
    let missing = dir.path().join("missing.json");
    let out = opmeans(&["means", "--a", a.to_str().unwrap(), "--b", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::write(&b, "[[1, 2]").unwrap();
    let out = opmeans(&["means", "--a", a.to_str().unwrap(), "--b", b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn kwong_verdicts() {
    let v = json(&opmeans(&["kwong", "--fn", "square"]));
    assert_eq!(v["verdict"], "refuted");
    assert!(v["witness"]["min_eigenvalue"].as_f64().unwrap() < 0.0);
    let v = json(&opmeans(&["kwong", "--fn", "sinh_inv"]));
    assert_eq!(v["verdict"], "consistent");
    let out = opmeans(&["kwong", "--fn", "sinh_inv", "--audenaert"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["audenaert"]["coherent"], true);
    let v = json(&opmeans(&["kwong", "--fn", "power:3", "--test", "convex"]));
    assert_eq!(v["verdict"], "refuted");
    assert_eq!(opmeans(&["kwong", "--fn", "nope"]).status.code(), Some(2));
}

#[test]
fn catalog_lists_claims() {
    let v = json(&opmeans(&["catalog", "--json"]));
    let entries = v.as_array().unwrap();
    let find = |id: &str| entries.iter().find(|e| e["id"] == id).unwrap().clone();
    assert_eq!(find("sinh_inv")["claims"]["kwong"], true);
    assert_eq!(find("square")["claims"]["kwong"], false);
    assert_eq!(find("square")["claims"]["operator_convex"], true);
    let text = opmeans(&["catalog"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("sinh_inv"));
}

#[test]
fn verify_passes_and_is_reproducible() {
    let args = ["verify", "--theorem", "thm-2.1", "--dim", "2,4", "--trials", "200", "--seed", "42"];
    let one = opmeans(&args);
    assert_eq!(one.status.code(), Some(0));
    let two = opmeans(&args);
    assert_eq!(one.stdout, two.stdout);
    let v = json(&one);
    assert_eq!(v["pass"], true);
    assert_eq!(v["elapsed_ms"], 0);
    assert_eq!(v["results"].as_array().unwrap().len(), 2);
    assert_eq!(v["config"]["seed"], 42);
}

#[test]
fn seed_falls_back_to_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_opmeans"));
        cmd.args(["verify", "--theorem", "young", "--dim", "2", "--trials", "20"]).args(extra);
        match env {
            Some(s) => cmd.env("OPMEANS_SEED", s),
            None => cmd.env_remove("OPMEANS_SEED"),
        };
        cmd.output().unwrap().stdout
    };
    assert_eq!(run(Some("7"), &[]), run(None, &["--seed", "7"]));
    assert_ne!(run(Some("7"), &[]), run(None, &[]));
}

#[test]
fn verify_failure_exit_and_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let csv = dir.path().join("summary.csv");
    let out = opmeans(&[
        "verify",
        "--theorem",
        "cor-3.8[g=inverse,p=0.5]",
        "--theorem",
        "young",
        "--dim",
        "2",
        "--trials",
        "100",
        "--out",
        report.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.lines().any(|l| l.starts_with("cor-3.8[g=inverse,p=0.5] dim=2") && l.ends_with("FAIL")));
    assert!(stdout.lines().any(|l| l.starts_with("young dim=2") && l.ends_with("pass")));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["pass"], false);
    let w = &v["results"][0]["failures"][0];
    assert!(w["A"]["dim"] == 2 && w["slack"].as_f64().unwrap() < 0.0);
    let rows = std::fs::read_to_string(&csv).unwrap();
    let mut lines = rows.lines();
    assert_eq!(lines.next(), Some("theorem,trials,dim,min_slack,failures"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn verify_usage_errors() {
    assert_eq!(opmeans(&["verify", "--theorem", "thm-9.9"]).status.code(), Some(2));
    assert_eq!(opmeans(&["verify", "--dim", "0", "--trials", "1"]).status.code(), Some(2));
    assert_eq!(opmeans(&["verify", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(opmeans(&["verify", "--theorem", "cor-3.5[p=2]"]).status.code(), Some(2));
    assert_eq!(opmeans(&["verify", "--m", "1"]).status.code(), Some(2));
}

#[test]
fn bad_representing_function_exits_one() {
    // exp(1) != 1
    let out = opmeans(&["verify", "--theorem", "remark-2.2[sigma=exp,tau=harmonic]", "--dim", "2", "--trials", "5"]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("representing"));
}
