use std::process::{Command, Output};

fn quadmult(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadmult")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_plus_json_above_the_spurious_range() {
    let o = quadmult(&["classify", "--form", "1,1,1", "--limit", "150", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["leaves"].as_array().unwrap().len(), 1);
    assert_eq!(v["leaves"][0]["families"], serde_json::json!(["identity"]));
    assert_eq!(v["leaves"][0]["values"]["f(8)"], 8);
}

#[test]
fn classify_reports_unexplained_leaves_with_exit_2() {
    let o = quadmult(&["classify", "--form", "1,1,1", "--limit", "100"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("families: NONE"));
}

#[test]
fn classify_incomplete_takes_precedence() {
    let o = quadmult(&["classify", "--form", "1,-1,1", "--limit", "60", "--max-branches", "2"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn classify_output_is_byte_identical_across_threads() {
    let a = quadmult(&["classify", "--form", "1,-1,1", "--limit", "100", "--json"]);
    let b = quadmult(&["classify", "--form", "1,-1,1", "--limit", "100", "--json", "--threads", "4"]);
    let c = quadmult(&["classify", "--form", "1,-1,1", "--limit", "100", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn verify_witness_and_exit_codes() {
    let o = quadmult(&["verify", "--form", "1,-1,1", "--family", "fp:7", "--bound", "10"]);
    assert_eq!(o.status.code(), Some(1));
    let o = quadmult(&["verify", "--form", "1,-1,1", "--family", "fp:7", "--bound", "10", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "fail");
    let (x, y) = (v["x"].as_i64().unwrap(), v["y"].as_i64().unwrap());
    assert_eq!(x * x - x * y + y * y, 7);
    assert_eq!(quadmult(&["verify", "--form", "1,1,1", "--family", "identity"]).status.code(), Some(0));
}

#[test]
fn represent_lists_pairs() {
    let o = quadmult(&["represent", "--form", "1,-1,1", "--n", "7", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["representations"], serde_json::json!([[1, 3], [2, 3], [3, 1], [3, 2]]));
}

#[test]
fn replay_and_identities_succeed() {
    for args in [&["replay", "--theorem", "1"][..], &["replay", "--theorem", "2"], &["identities", "--kmax", "2000"]] {
        let o = quadmult(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn eisenstein_table() {
    let o = quadmult(&["eisenstein", "--prime-table", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("inert"));
    assert!(out.contains("N(3 + 1ω) = 7"));
}

#[test]
fn usage_errors_exit_3() {
    for args in [
        &["classify", "--form", "1,1"][..],
        &["classify", "--form", "1,1,1", "--degree-cap", "0"],
        &["verify", "--form", "1,1,1", "--family", "fp:4"],
        &["replay", "--theorem", "3"],
        &[],
    ] {
        assert_eq!(quadmult(args).status.code(), Some(3), "{args:?}");
    }
}
