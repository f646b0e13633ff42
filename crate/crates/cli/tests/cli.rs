use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn psl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psl"))
        .args(args)
        .output()
        .expect("psl runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.extend(["--output", "json"]);
    let out = psl(&full);
    (
        serde_json::from_slice(&out.stdout).unwrap(),
        out.status.code().unwrap(),
    )
}

#[test]
fn ps_text_output() {
    let out = psl(&["ps", "--group", "A2", "--u", "perm:213", "--w", "perm:321"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("D = x1*x2 + 1/2*x2^2"), "{text}");
    assert!(text.contains("chains = 2"));
    assert!(text.contains("methods_agree = true"));

    let text = stdout(&psl(&[
        "ps", "--group", "A2", "--u", "perm:213", "--w", "perm:213",
    ]));
    assert!(text.starts_with("D = 1\n"), "{text}");

    let out = psl(&["ps", "--group", "A2", "--u", "perm:231", "--w", "perm:312"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0 (incomparable)"));
}

#[test]
fn ps_json_output() {
    let (v, code) = json(&["ps", "--group", "a2", "--u", "id", "--w", "word:1,2,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["poly_text"], "1/2*x1^2*x2 + 1/2*x1*x2^2");
    assert_eq!(v["chain_count"], "4");
    assert_eq!(v["degree"], 3);
    assert_eq!(v["comparable"], true);
    assert_eq!(v["w"], "perm:321");
}

#[test]
fn degree_command() {
    let out = psl(&[
        "degree", "--group", "A2", "--u", "perm:213", "--w", "perm:321", "--lambda", "1,1",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "3");

    let out = psl(&[
        "degree", "--group", "A2", "--u", "perm:231", "--w", "perm:312", "--lambda", "1,1",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("0 (empty Richardson variety"));

    let out = psl(&[
        "degree", "--group", "A2", "--u", "id", "--w", "perm:321", "--lambda", "-1,1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = psl(&[
        "degree", "--group", "A2", "--u", "id", "--w", "perm:321", "--lambda", "1,1,1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn chains_and_interval() {
    let out = psl(&[
        "chains",
        "--group",
        "A2",
        "--u",
        "perm:123",
        "--w",
        "perm:321",
        "--count-only",
    ]);
    assert_eq!(stdout(&out).trim(), "4");

    let text = stdout(&psl(&[
        "chains", "--group", "A2", "--u", "perm:123", "--w", "perm:321",
    ]));
    assert_eq!(
        text.lines().filter(|l| l.starts_with("perm:123")).count(),
        4
    );

    let (v, _) = json(&["interval", "--group", "B2", "--u", "id", "--w", "word:1,2"]);
    assert_eq!(v["strata"].as_array().unwrap().len(), 3);
    assert_eq!(v["edges"].as_array().unwrap().len(), 4);
}

#[test]
fn lorentzian_command() {
    let sum_of_squares = r#"{"vars":2,"terms":[{"exp":[2,0],"num":"1","den":"1"},{"exp":[0,2],"num":"1","den":"1"}]}"#;
    let out = psl(&["lorentzian", "--poly", sum_of_squares]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("lorentzian: false"));
    assert!(text.contains("support-not-M-convex"));

    let product = r#"{"vars":2,"terms":[{"exp":[1,1],"num":"1","den":"1"}]}"#;
    let (v, code) = json(&["lorentzian", "--poly", product, "--spot-check", "10"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["verdict"], true);
    assert_eq!(v["spot_check"], true);

    let out = psl(&["lorentzian", "--poly", "{not json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_theorem_small_groups() {
    for (group, pairs) in [("A1", 3), ("A2", 19)] {
        let (v, code) = json(&["verify-theorem", "--group", group]);
        assert_eq!(code, 0);
        assert_eq!(v["pairs_tested"], pairs);
        assert_eq!(v["passed"], true);
        assert!(v["failure"].is_null());
    }
    let out = psl(&["verify-theorem", "--group", "B2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("all comparable pairs pass"));
}

#[test]
fn oversized_groups_are_refused() {
    let out = psl(&["verify-theorem", "--group", "E8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("smaller rank"));
    let out = psl(&["verify-theorem", "--group", "B3", "--max-order", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors() {
    assert_eq!(
        psl(&["ps", "--group", "Q3", "--u", "id", "--w", "id"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        psl(&["ps", "--group", "A2", "--u", "perm:12", "--w", "id"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        psl(&["ps", "--group", "B2", "--u", "perm:12", "--w", "id"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(psl(&["bogus"]).status.code(), Some(2));
}

#[test]
fn sweep_reads_stdin_and_keeps_order() {
    let tasks = r#"[
        {"type": "A2", "u": "perm:213", "w": "perm:321", "lambda": [1, 1]},
        {"type": "G2", "u": "id", "w": "word:1,2"},
        {"type": "A2", "u": "perm:231", "w": "perm:312"}
    ]"#;
    let mut child = Command::new(env!("CARGO_BIN_EXE_psl"))
        .args(["sweep", "--jobs", "3"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(tasks.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let results = v.as_array().unwrap();
    assert_eq!(results.len(), 3);
    assert_eq!(results[0]["poly_text"], "x1*x2 + 1/2*x2^2");
    assert_eq!(results[0]["degree"], "3");
    assert_eq!(results[1]["type"], "G2");
    assert_eq!(results[1]["methods_agree"], true);
    assert_eq!(results[2]["comparable"], false);
    assert_eq!(results[2]["poly_text"], "0");
}

#[test]
fn sweep_reports_bad_tasks() {
    let dir = std::env::temp_dir().join(format!("psl-sweep-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tasks.json");
    std::fs::write(&path, r#"[{"type": "A9000", "u": "id", "w": "id"}]"#).unwrap();
    let out = psl(&["sweep", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v[0]["error"].is_string());
    std::fs::remove_dir_all(&dir).unwrap();
}
