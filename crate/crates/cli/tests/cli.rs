use std::path::PathBuf;
use std::process::{Command, Output};

fn rzw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rzw"))
        .args(args)
        .env_remove("RZW_FUEL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rzw-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const MODEL: &str = "use opca builtin:s2
pred U : A = e {e} ; t {e t}
pred N : A = e {} ; t {}
asm Y = y1 {e t} ; y2 {e}
asm Z = z1 {e}
map f : Y -> Z = y1 z1 ; y2 z1
";

#[test]
fn traced_reduction_of_k() {
    let o = rzw(&["term", "reduce", "k a b", "--trace"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().collect::<Vec<_>>(), ["k a b", "a"]);
}

#[test]
fn validate_bundled_structure() {
    let o = rzw(&["opca", "validate", "builtin:s2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "valid (preorder closed, monotone, filter ok)");
}

#[test]
fn non_monotone_structure_is_a_property_failure() {
    let p = scratch("bad.opca", "elements e t\nle e t\napp t t t\nmode standard\nphi inhabited\n");
    let o = rzw(&["opca", "validate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("invalid"));
}

#[test]
fn malformed_input_exits_two() {
    assert_eq!(rzw(&["term", "parse", "((("]).status.code(), Some(2));
    assert_eq!(rzw(&["opca", "validate", "/no/such/file"]).status.code(), Some(2));
    assert_eq!(rzw(&["frobnicate"]).status.code(), Some(2));
    let p = scratch("m.rz", MODEL);
    assert_eq!(rzw(&["logic", "valid", p.to_str().unwrap(), "forall x:A. ("]).status.code(), Some(2));
}

#[test]
fn intersection_validity_matches_phi() {
    let p = scratch("m.rz", MODEL);
    let m = p.to_str().unwrap();
    let o = rzw(&["logic", "valid", m, "exists x:A. C(x) /\\ U(x)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("true"));
    let o = rzw(&["logic", "valid", m, "exists x:A. C(x) /\\ N(x)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("false"));
}

#[test]
fn json_output_has_stable_keys() {
    let o = rzw(&["--format", "json", "k1", "apply", "2", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"], "22");
    assert_eq!(v["diverges"], false);
    let again = rzw(&["--format", "json", "k1", "apply", "2", "3"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn fuel_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_rzw"))
        .args(["term", "reduce", "w w (w w)"])
        .env("RZW_FUEL", "7")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("after 7 steps"));
}

#[test]
fn assembly_verbs() {
    let p = scratch("m.rz", MODEL);
    let m = p.to_str().unwrap();
    let o = rzw(&["asm", "trackers", m, "f"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("tracked: yes"));
    let o = rzw(&["asm", "check", m, "Y"]);
    assert!(stdout(&o).contains("partitioned: yes") && stdout(&o).contains("modest: no"));
    assert!(rzw(&["asm", "product", m, "Y", "Z"]).status.success());
}

#[test]
fn identity_applicative_morphism() {
    let o = rzw(&["appmorph", "check", "builtin:s3", "builtin:s3", "identity"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("valid: yes\n"));
}

#[test]
fn classical_verbs() {
    let o = rzw(&["cr", "trace", "callcc", "M", "N", "P"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("reached in"));
    let o = rzw(&["cr", "entails", "builtin:s2", "--pole", "from-downset {e}", "{e}", "{e t}"]);
    assert!(o.status.success());
    assert!(rzw(&["cr", "orthogonal", "builtin:s2", "--pole", "from-downset {e}", "{t}"]).status.success());
}

#[test]
fn suite_runs_by_name() {
    let o = rzw(&["suite", "run", "downset-adjunction"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("PASS [3]"));
    assert_eq!(rzw(&["suite", "run", "nonsense"]).status.code(), Some(2));
}
