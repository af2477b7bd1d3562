use std::path::Path;
use std::process::{Command, Output};

fn disq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_disq")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    disq(args).status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn exit_code_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let tampered = write(dir.path(), "tampered.json", r#"{"nodes":["-1/2","1/8","3/8"],"weights":["-3/2","51/100","1/2"]}"#);
    let broken = write(dir.path(), "broken.json", r#"{"nodes":["-1/2"],"weights":"#);
    let unknown_field = write(dir.path(), "extra.json", r#"{"nodes":["0"],"weights":["1"],"x":1}"#);
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["corpus", "ex1"], 0),
        (vec!["corpus", "ex2"], 0),
        (vec!["corpus", "bogus"], 2),
        (vec!["corpus", "ex1", "--params", "2,3,1"], 2),
        (vec!["corpus", "ex1", "--params", "2,3,1", "--allow-outside"], 0),
        (vec!["verify", "ex1", "ex1-negative"], 0),
        (vec!["verify", "ex1", "ex1-positive"], 0),
        (vec!["verify", "ex1", &tampered], 1),
        (vec!["verify", "ex2", "ex2-nine"], 1),
        (vec!["verify", "ex1", &broken], 2),
        (vec!["verify", "ex1", &unknown_field], 2),
        (vec!["verify", "ex1", "no-such-rule"], 2),
        (vec!["verify", "nowhere", "ex1-negative"], 2),
        (vec!["gram", "ex1"], 0),
        (vec!["gram", "ex2"], 0),
        (vec!["min", "ex1"], 0),
        (vec!["min", "ex1", "--mode", "positive"], 0),
        (vec!["min", "ex1", "--mode", "sideways"], 2),
        (vec!["min", "ex1", "--max-subsets", "4"], 2),
        (vec!["min", "ex1", "--max-subsets", "0"], 2),
        (vec!["min", "ex2"], 3),
        (vec!["grid", "ex1", "--candidates", "-1/2,1/8,3/8,5/8,7/8", "--m", "3", "--mode", "positive"], 0),
        (vec!["grid", "ex1", "--candidates", "-1/2,x", "--m", "1"], 2),
        (vec!["grid", "ex2", "--candidates", "ex2-nine", "--m", "9", "--exclude-pair", "h0,h1"], 0),
        (vec!["grid", "ex2", "--candidates", "ex2-nine", "--m", "9", "--exclude-pair", "h0"], 2),
        (vec!["reduce", "ex1", "ex1-positive", "--mode", "positive"], 0),
        (vec!["reduce", "ex1", "ex1-negative", "--mode", "positive"], 2),
        (vec!["bound", "ex2", "--witness", "h0", "--targets", "h4,h5,h6,h7", "--refine", "h0,h1"], 0),
        (vec!["bound", "ex2", "--witness", "h0", "--targets", "h1,h2"], 2),
        (vec!["bound", "ex2", "--witness", "nope", "--targets", "h4"], 2),
        (vec!["frobnicate"], 2),
    ];
    for (args, expect) in cases {
        assert_eq!(code(&args), expect, "{args:?}");
    }
}

#[test]
fn json_reports_carry_the_expected_values() {
    let out = disq(&["gram", "ex1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "gram");
    assert_eq!(v["matrix"][1][1]["exact"], "15/2");
    assert_eq!(v["matrix"][0][1]["exact"], "0");

    let out = disq(&["min", "ex1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["m_min"], 3);
    assert_eq!(v["exhaustion"][0]["count"], 5);
    assert_eq!(v["exhaustion"][1]["count"], 15);

    let out = disq(&["bound", "ex2", "--witness", "h0", "--targets", "h4,h5,h6,h7", "--refine", "h0,h1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "lowerbound");
    assert_eq!(v["bound"], 8);
    assert_eq!(v["final_bound"], 9);

    let out = disq(&["verify", "ex2", "ex2-nine", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], false);
    assert_eq!(v["failing"], serde_json::json!([["h0", "h1"]]));
}

#[test]
fn outputs_do_not_depend_on_parallelism() {
    let commands: Vec<Vec<&str>> = vec![
        vec!["corpus", "ex1"],
        vec!["corpus", "ex2"],
        vec!["verify", "ex1", "ex1-negative"],
        vec!["verify", "ex2", "ex2-nine"],
        vec!["gram", "ex2"],
        vec!["min", "ex1"],
        vec!["min", "ex1", "--mode", "positive"],
        vec!["grid", "ex1", "--candidates", "-1/2,1/8,3/8,5/8,7/8", "--m", "3"],
        vec!["grid", "ex1", "--candidates", "-1/2,1/8,3/8,5/8,7/8", "--m", "3", "--mode", "positive"],
        vec!["reduce", "ex1", "ex1-positive", "--mode", "positive"],
        vec!["bound", "ex2", "--witness", "h0", "--targets", "h4,h5,h6,h7", "--refine", "h0,h1"],
    ];
    for cmd in commands {
        let run = |jobs: &str| {
            let mut args = cmd.clone();
            args.extend(["--format", "json", "--jobs", jobs]);
            disq(&args).stdout
        };
        let one = run("1");
        assert!(!one.is_empty(), "{cmd:?}");
        assert_eq!(one, run("4"), "{cmd:?}");
        assert_eq!(one, run("1"), "{cmd:?} repeat");
    }
}

#[test]
fn corpus_files_round_trip_through_the_other_commands() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = disq(&["corpus", "ex1", "--output", d]);
    assert!(out.status.success());
    let sub = format!("{d}/ex1.json");
    let rule = format!("{d}/ex1-negative.json");
    assert_eq!(code(&["verify", &sub, &rule]), 0);
    // the written files are byte-identical on a second run
    let first = std::fs::read(&sub).unwrap();
    disq(&["corpus", "ex1", "--output", d]);
    assert_eq!(first, std::fs::read(&sub).unwrap());
    let report = format!("{d}/report.json");
    assert_eq!(code(&["min", &sub, "--format", "json", "--output", &report]), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(v["kind"], "min");
}

#[test]
fn outside_parameters_are_flagged() {
    let out = disq(&["corpus", "ex1", "--params", "2,3,1", "--allow-outside"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["subspace"]["flags"], serde_json::json!(["params-outside-paper"]));
}

#[test]
fn precision_variable_does_not_change_results() {
    let base = disq(&["verify", "ex2", "ex2-nine", "--format", "json"]).stdout;
    let low = Command::new(env!("CARGO_BIN_EXE_disq"))
        .args(["verify", "ex2", "ex2-nine", "--format", "json"])
        .env("DISQ_PRECISION_BITS", "8")
        .output()
        .unwrap();
    assert_eq!(low.stdout, base);
}

#[test]
fn min_on_continuous_basis_points_to_grid() {
    let out = disq(&["min", "ex2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("disq grid"));
}
