use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn write_config(name: &str, body: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn cmd(cfg: Option<&PathBuf>, args: &[&str]) -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_polystrata"));
    c.env_remove("POLYSTRATA_STEP_BUDGET");
    if let Some(cfg) = cfg {
        c.arg("--config").arg(cfg);
    }
    c.args(args);
    c
}

fn run(cfg: Option<&PathBuf>, args: &[&str]) -> Output {
    cmd(cfg, args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

/// Subsets of `{Ω_i, y_i, x_i}` with `y_i` or `x_i` present exactly when `Ω_i` and `Ω_{i-1}` are.
fn brute_force_count(n: usize) -> usize {
    (0u32..1 << (3 * n))
        .filter(|&m| {
            let bit = |i: usize, k: usize| m >> (3 * (i - 1) + k) & 1 == 1;
            (1..=n).all(|i| (bit(i, 1) || bit(i, 2)) == (bit(i, 0) && (i == 1 || bit(i - 1, 0))))
        })
        .count()
}

#[test]
fn bracket_on_generators() {
    let a = config("poisson_a.json");
    let out = run(Some(&a), &["bracket", "x2", "y2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["result"], "7*y2*x2 + 3*y1*x1");
    assert_eq!(v["expr"], "{x2, y2}");

    let out = run(Some(&a), &["bracket", "-y1", "x1"]);
    assert_eq!(json(&out)["result"], "5*y1*x1");
}

#[test]
fn normal_forms() {
    let a = config("poisson_a.json");
    assert_eq!(json(&run(Some(&a), &["nf", "Omega1"]))["normal_form"], "3*y1*x1");
    assert_eq!(
        json(&run(Some(&a), &["nf", "y1^2 x1 - (1/3) Omega1"]))["normal_form"],
        "y1^2*x1 - y1*x1"
    );
    let out = run(Some(&a), &["nf", "y1 x1 + x2", "--modulo", "Omega1,y1"]);
    assert_eq!(json(&out)["normal_form"], "x2");

    let q = config("quantum.json");
    let v = json(&run(Some(&q), &["nf", "x1 y1"]));
    assert_eq!((v["side"].as_str(), v["normal_form"].as_str()), (Some("quantum"), Some("4*y1*x1")));
    assert_eq!(json(&run(Some(&q), &["nf", "x2 y2"]))["normal_form"], "32*y2*x2 + 2*y1*x1");
}

#[test]
fn admissible_counts() {
    for n in 1..=4 {
        let out = run(None, &["admissible", "--count", "--n", &n.to_string()]);
        assert_eq!(json(&out)["count"], brute_force_count(n), "n = {n}");
    }
    let a = config("poisson_a.json");
    assert_eq!(json(&run(Some(&a), &["admissible", "--count"]))["count"], 14);

    let v = json(&run(Some(&config("poisson_phi3.json")), &["admissible", "--list"]));
    assert_eq!(v["source"], "config");
    assert_eq!(v["sets"].as_array().unwrap().len(), 3);
    assert_eq!(v["sets"][2]["gk_dim"], 4);

    let dot = run(None, &["admissible", "--n", "2", "--poset", "--dot"]);
    let text = String::from_utf8(dot.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("->").count(), json(&run(None, &["admissible", "--n", "2", "--poset"]))["edges"].as_array().unwrap().len());
}

#[test]
fn matrices() {
    let v = json(&run(Some(&config("poisson_a.json")), &["matrices", "--r"]));
    let labels: Vec<&str> = v["labels"].as_array().unwrap().iter().map(|l| l.as_str().unwrap()).collect();
    assert_eq!(labels, ["Y1", "X1", "Y2", "X2"]);
    let r = v["r"].as_array().unwrap();
    assert_eq!(r.len(), 4);
    assert_eq!(r[0][1], "-5");
    for i in 0..4 {
        for j in 0..4 {
            let a: polystrata::Rational = r[i][j].as_str().unwrap().parse().unwrap();
            let b: polystrata::Rational = r[j][i].as_str().unwrap().parse().unwrap();
            assert_eq!(a, -b);
        }
    }
    assert!(v.get("s").is_none());

    let v = json(&run(Some(&config("paired.json")), &["matrices"]));
    assert!(v["r"].is_array() && v["s"].is_array());
    let out = run(Some(&config("quantum.json")), &["matrices", "--r"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_all_paired() {
    let out = run(Some(&config("paired.json")), &["verify", "all", "--trials", "20"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["ok"], true);
    assert_eq!(v["summary"]["pass"], 7);

    let out = run(Some(&config("quantum.json")), &["verify", "all", "--trials", "5"]);
    let v = json(&out);
    assert_eq!(code(&out), 0);
    assert_eq!(v["summary"]["skipped"], 5);

    let out = run(Some(&config("paired.json")), &["--pretty", "verify", "psi"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1 passed, 0 failed, 0 skipped"), "{text}");
}

#[test]
fn map_report_is_byte_stable() {
    let p = config("paired.json");
    let a = run(Some(&p), &["map-report"]);
    let b = run(Some(&p), &["map-report"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["grade"], "homeomorphism");
    assert_eq!(v["strata"].as_array().unwrap().len(), 14);
    assert_eq!(v["strata"][0]["T"], serde_json::json!([]));
}

#[test]
fn errors_are_json_with_exit_codes() {
    let a = config("poisson_a.json");
    let out = run(Some(&a), &["bracket", "{y1,", "x1"]);
    assert_eq!(code(&out), 2);
    let v = json(&out);
    assert_eq!(v["error"]["kind"], "syntax");
    assert_eq!(v["error"]["offset"], 4);

    let out = run(Some(&a), &["nf", "y3"]);
    assert_eq!((code(&out), json(&out)["error"]["kind"].clone()), (2, "unknown_variable".into()));

    let out = run(Some(&config("quantum.json")), &["bracket", "y1", "x1"]);
    assert_eq!(code(&out), 2);

    let out = run(Some(&a), &["verify", "nope"]);
    assert_eq!(json(&out)["error"]["kind"], "usage");

    let out = run(None, &["bracket", "y1", "x1"]);
    assert_eq!(code(&out), 2);

    let bad = write_config("bad.json", r#"{"mode":"paired","gamma":["2"],"p":["2","3"],"q":["4","9"]}"#);
    let out = run(Some(&bad), &["matrices"]);
    assert_eq!((code(&out), json(&out)["error"]["kind"].clone()), (2, "config".into()));

    let out = run(Some(&PathBuf::from("/nonexistent.json")), &["matrices"]);
    assert_eq!(code(&out), 2);

    let out = run(None, &["frobnicate"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn step_budget_from_env() {
    let q = config("quantum.json");
    let heavy = ["nf", "x2^3 y2^3 x1^2 y1^2"];
    let out = cmd(Some(&q), &heavy).env("POLYSTRATA_STEP_BUDGET", "3").output().unwrap();
    assert_eq!((code(&out), json(&out)["error"]["kind"].clone()), (1, "budget".into()));
    let out = cmd(Some(&q), &heavy).env("POLYSTRATA_STEP_BUDGET", "many").output().unwrap();
    assert_eq!((code(&out), json(&out)["error"]["kind"].clone()), (2, "config".into()));
    assert_eq!(code(&run(Some(&q), &heavy)), 0);
}
