use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde_json::Value;

fn problem(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("problems").join(name)
}

fn gkz(args: &[&str], stdin: Option<&str>) -> (i32, Value, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gkz"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.unwrap_or("").as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let stderr = String::from_utf8(out.stderr).unwrap();
    let json = if stdout.is_empty() {
        serde_json::from_str(&stderr).unwrap()
    } else {
        serde_json::from_str(&stdout).unwrap()
    };
    (out.status.code().unwrap(), json, stdout)
}

fn on_file(cmd: &str, name: &str) -> (i32, Value, String) {
    gkz(&[cmd, problem(name).to_str().unwrap()], None)
}

#[test]
fn dim_of_the_small_example() {
    let (code, out, _) = on_file("dim", "small.json");
    assert_eq!(code, 0);
    assert_eq!(out["result"]["dimension"], 2);
    assert_eq!(out["result"]["breakdown"]["formula"], "(2−2·1+1) + 2·(1−1) + 1");
    let (_, out, _) = on_file("dim", "small_reversed.json");
    assert_eq!(out["result"]["dimension"], 1);
}

#[test]
fn rank_of_the_rank_eleven_example() {
    let (code, out, _) = on_file("rank", "rank11.json");
    assert_eq!(code, 0);
    assert_eq!(out["result"]["rank"], 11);
    assert_eq!(out["result"]["volume"], 9);
    assert_eq!(out["result"]["exceptional"], true);
}

#[test]
fn isomorphism_fingerprints() {
    let (code, out, _) = on_file("iso", "small.json");
    assert_eq!(code, 0);
    assert_eq!(out["result"]["isomorphic"], false);
}

#[test]
fn problems_on_standard_input() {
    let input = r#"{"A": [[1, 1, 1], [0, 1, 2]], "beta": ["1", "1"], "w": ["0", "1", "0"]}"#;
    let (code, out, _) = gkz(&["dim"], Some(input));
    assert_eq!(code, 0);
    assert_eq!(out["result"]["dimension"], 2);
}

#[test]
fn exit_codes() {
    let (code, out, _) = gkz(&["dim"], Some("not json"));
    assert_eq!(code, 1);
    assert_eq!(out["error"]["kind"], "Parse");

    let mismatch = r#"{"A": [[1, 1, 1], [0, 1, 2]], "beta": ["1"], "w": ["0", "1", "0"]}"#;
    let (code, out, _) = gkz(&["dim"], Some(mismatch));
    assert_eq!(code, 1);
    assert_eq!(out["error"]["kind"], "DimensionMismatch");

    let square = r#"{"A": [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1]], "beta": ["1", "1", "1"]}"#;
    let (code, out, _) = gkz(&["rank"], Some(square));
    assert_eq!(code, 2);
    assert_eq!(out["error"]["kind"], "NotSimplex");

    let path = problem("rank11.json");
    let (code, out, _) = gkz(&["--budget", "1", "rank", path.to_str().unwrap()], None);
    assert_eq!(code, 3);
    assert_eq!(out["error"]["kind"], "BudgetExceeded");
}

#[test]
fn output_is_deterministic() {
    for cmd in ["triangulate", "faces", "etau", "dim", "series"] {
        let (c1, _, a) = on_file(cmd, "small.json");
        let (c2, _, b) = on_file(cmd, "small.json");
        assert_eq!((c1, c2), (0, 0), "{cmd}");
        assert_eq!(a, b, "{cmd}");
    }
}

#[test]
fn self_checks_pass() {
    let (code, out, _) = gkz(&["verify"], None);
    assert_eq!(code, 0);
    let checks = out["result"]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["passed"] == true));
}
