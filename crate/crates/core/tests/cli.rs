use std::process::Command;

use serde_json::Value;

fn verify(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_verify")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn without_times(text: &str) -> Value {
    let mut v: Value = serde_json::from_str(text).unwrap();
    for c in v["checks"].as_array_mut().unwrap() {
        c.as_object_mut().unwrap().remove("wall_time_ms");
    }
    v
}

#[test]
fn passing_suite_exits_zero_with_json() {
    let (code, out, _) = verify(&["hopf", "--group", "u2", "--theta", "1/3", "--max-degree", "1", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    let checks = v["checks"].as_array().unwrap();
    let names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    for c in checks {
        for key in ["name", "anchor", "samples", "status", "wall_time_ms"] {
            assert!(c.get(key).is_some(), "{key} missing");
        }
    }
}

#[test]
fn reruns_are_identical_modulo_timing() {
    let args = ["sphere", "--theta", "[[0,1/4],[-1/4,0]]", "--seed", "11", "--samples", "30", "--format", "json"];
    let (_, a, _) = verify(&args);
    let (_, b, _) = verify(&args);
    assert_eq!(without_times(&a), without_times(&b));
    let (_, c, _) = verify(&["sphere", "--theta", "[[0,1/4],[-1/4,0]]", "--seed", "12", "--samples", "30", "--format", "json"]);
    assert_eq!(without_times(&c)["passed"], true);
}

#[test]
fn negative_control_exits_one() {
    let (code, out, _) = verify(&["chern", "--theta", "1/3", "--k", "1", "--negative-control"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL  projector-certified"));
}

#[test]
fn config_errors_exit_two() {
    for args in [
        vec!["nonsense"],
        vec!["cocycle", "--theta", "[[0,1],[1,0]]"],
        vec!["spin", "--l", "7"],
        vec!["chern", "--k", "3"],
        vec!["hopf", "--group", "sl2"],
        vec!["spin", "--schatten", "0"],
        vec!["cocycle", "--theta", "[[0,1/3],[-1/3,0]]", "--l", "3"],
        vec![],
    ] {
        let (code, _, err) = verify(&args);
        assert_eq!(code, 2, "{args:?}: {err}");
    }
}

#[test]
fn writes_report_csv_and_reads_config() {
    let dir = std::env::temp_dir().join(format!("verify-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let report = dir.join("r.json");
    let csv = dir.join("sv.csv");
    let (code, _, err) = verify(&[
        "spin",
        "--l",
        "2",
        "--N",
        "3",
        "--theta",
        "1/3",
        "--schatten",
        "1,2,4",
        "--samples",
        "2",
        "--format",
        "json",
        "--out",
        report.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let table = &v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "schatten-theta-independence").unwrap()["detail"]["table"];
    assert_eq!(table.as_array().unwrap().len(), 3);
    let lines = std::fs::read_to_string(&csv).unwrap();
    assert!(lines.starts_with("cutoff,element,index,deformed,undeformed"));

    let cfg = dir.join("c.json");
    std::fs::write(&cfg, r#"{"suite": "homog", "space": "u2-flag", "theta": "2/7"}"#).unwrap();
    let (code, out, _) = verify(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("flag-commutative"));
    std::fs::remove_dir_all(&dir).ok();
}
