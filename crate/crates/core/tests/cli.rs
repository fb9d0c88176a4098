use std::process::{Command, Output};

use serde_json::Value;

const F1: &str = "Y^8 - 2*X1*X2*Y^4 + X1^2*X2^2 - X1^3*X2^2";
const F2: &str = "Y^8 - 2*X1*X2*Y^4 + X1^2*X2^2 - X1^4*X2^2 - X1^5*X2^3";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quasiord")).args(args).env_remove("QF_MAX_DEGREE").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn test_command_exit_codes() {
    let o = run(&["test", F1]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("characteristic exponents: (1/4,1/4), (3/4,1/4)"));
    let o = run(&["test", F2]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("INDEX_MISMATCH"));
    let o = run(&["test", "Y^2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("NOT_CHAIN"));
    let o = run(&["test", "Y^2 + 1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a Weierstrass polynomial"));
    assert_eq!(run(&["test", "Y^2 - Z"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn test_json_is_deterministic() {
    let a = run(&["test", F1, "--json"]);
    let b = run(&["test", F1, "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["verdict"], "IRREDUCIBLE_QO");
    assert_eq!(v["H"], serde_json::json!([1, 4, 8]));
}

#[test]
fn disc_command() {
    assert_eq!(stdout(&run(&["disc", "Y^2 - X^3"])).trim(), "4*X^3 + 4*V");
    assert_eq!(stdout(&run(&["disc", "Y"])).trim(), "1");
    assert_eq!(stdout(&run(&["disc", "Y^2 - X1^3", "--d", "2"])).trim(), "4*X1^3 + 4*V");
}

#[test]
fn polytope_and_decompose_commands() {
    assert_eq!(stdout(&run(&["polytope", F1])).trim(), "vertices: (0,0,7) (6,6,4) (18,14,0)");
    let o = run(&["decompose", F1]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("{(6,6)/3} + {(12,8)/4}"));
}

#[test]
fn degree_guard() {
    let o = Command::new(env!("CARGO_BIN_EXE_quasiord")).args(["test", F1]).env("QF_MAX_DEGREE", "4").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds the configured limit 4"));
}

#[test]
fn generate_tree_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let p = path.to_str().unwrap();
    let o = run(&["generate", "(1/4,1/4);(3/4,1/4)", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("degree: 8"));
    let o = run(&["test", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("characteristic exponents: (1/4,1/4), (3/4,1/4)"));
    let tree = stdout(&run(&["tree", p]));
    assert!(tree.contains("tree type: (1/4,1/4);(3/4,1/4)"));
    assert!(tree.contains("polytope: {(6,6)/3} + {(12,8)/4}"));
    let o = run(&["verify", p]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));

    // a bare roots file works as well
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let roots = dir.path().join("roots.json");
    std::fs::write(&roots, v["roots"].to_string()).unwrap();
    assert!(stdout(&run(&["tree", roots.to_str().unwrap()])).contains("conjugates=4"));
}

#[test]
fn generate_rejects_invalid_sequences() {
    let o = run(&["generate", "(1/2,0);(1,0)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("(C2) violated at i=2"));
    assert_eq!(stdout(&run(&["generate", "3/2"])).lines().next().unwrap(), "f = -X^3 + Y^2");
}

#[test]
fn tree_rejects_bad_roots() {
    let dir = tempfile::tempdir().unwrap();
    let roots = dir.path().join("bad.json");
    // contact of X1^(1/2) and X2^(1/2) is not comparable
    std::fs::write(
        &roots,
        r#"{"d":2,"k":2,"roots":[[{"exp":["1/2","0"],"coef":{"k":2,"c":["1"]}}],[{"exp":["0","1/2"],"coef":{"k":2,"c":["1"]}}]]}"#,
    )
    .unwrap();
    assert_eq!(run(&["tree", roots.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_and_fitting_on_a_unit_multiple() {
    let o = run(&["verify", "(1+Y)*(Y^2-X^3)", "--trunc", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS unit-invariance"));
    let o = run(&["fitting", "(1+Y)*(Y^2-X^3)", "--trunc", "12", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["truncOrder"], 12);
    assert_eq!(v["newton"]["flagged"], false);
    assert_eq!(v["newton"]["certified"], serde_json::json!([[0, 1], [3, 0]]));
    let o = run(&["fitting", "Y^2"]);
    assert!(stdout(&o).starts_with("fitting discriminant: 4*V\n"));
}

#[test]
fn verify_reports_projections_with_seed() {
    let a = stdout(&run(&["verify", "Y^2 - X1^3*X2", "--seed", "3"]));
    let b = stdout(&run(&["verify", "Y^2 - X1^3*X2", "--seed", "3"]));
    assert_eq!(a, b);
    assert_eq!(a.matches("projection c=").count(), 3);
    assert!(!a.contains("FAIL"));
}
