use std::process::{Command, Output};

use serde_json::Value;

fn rtt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rtt")).args(args).output().expect("spawn rtt")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn factors_file(name: &str, body: &str) -> std::path::PathBuf {
    let p = std::env::temp_dir().join(format!("rtt-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn ybe_lists_every_sequence() {
    let out = rtt(&["ybe", "--m", "2", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let seqs: Vec<&str> = v["sequences"].as_array().unwrap().iter().map(|r| r["s"].as_str().unwrap()).collect();
    assert_eq!(seqs, ["001", "010", "100"]);
    assert!(v["sequences"].as_array().unwrap().iter().all(|r| r["pass"] == true));
}

#[test]
fn output_is_deterministic_and_reparses() {
    let a = rtt(&["module", "--s", "010", "--weights", "+q^2,+q^0,+q^0"]);
    let b = rtt(&["module", "--s", "010", "--weights", "+q^2,+q^0,+q^0"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("rtt-cli-{}-out.json", std::process::id()));
    let out = rtt(&["classify", "--s", "01", "--weights", "+q^2,+q^0", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["finite"], true);
    std::fs::remove_file(path).ok();
}

#[test]
fn classify_expectation_sets_exit_code() {
    assert_eq!(rtt(&["classify", "--s", "00", "--weights", "+q^2,+q^0", "--expect", "finite"]).status.code(), Some(0));
    assert_eq!(rtt(&["classify", "--s", "00", "--weights", "+q^0,+q^2", "--expect", "finite"]).status.code(), Some(1));
    assert_eq!(rtt(&["classify", "--s", "00", "--weights", "+q^0,+q^2", "--expect", "infinite"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(rtt(&["classify", "--s", "0x", "--weights", "1"]).status.code(), Some(2));
    assert_eq!(rtt(&["classify", "--s", "01", "--weights", "+q^2"]).status.code(), Some(2));
    assert_eq!(rtt(&["evalrep", "--s", "01", "--weights", "+q^2,+q^0", "--a", "0"]).status.code(), Some(2));
    assert_eq!(rtt(&["normalize", "--s", "01", "--expr", "t[3,1]"]).status.code(), Some(2));
    assert_eq!(rtt(&["bogus"]).status.code(), Some(2));
}

#[test]
fn infinite_module_is_a_math_failure() {
    assert_eq!(rtt(&["module", "--s", "00", "--weights", "+q^0,+q^2", "--cap", "6"]).status.code(), Some(1));
    assert_eq!(rtt(&["evalrep", "--s", "00", "--weights", "+q^0,+q^2", "--a", "2"]).status.code(), Some(1));
}

#[test]
fn normalize_straightens() {
    let out = rtt(&["normalize", "--s", "00", "--expr", "t[1,1]*tb[1,1]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["normal_form"], "(1)");
}

#[test]
fn braid_verify_all_positions() {
    let out = rtt(&["braid-verify", "--s", "011"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["reflections"].as_array().unwrap().len(), 2);
}

#[test]
fn evalrep_checks_relations() {
    let out = rtt(&["evalrep", "--s", "01", "--weights", "+q^2,+q^0", "--a", "q^3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["relations"]["failures"].as_array().unwrap().len(), 0);
    assert_eq!(v["highest_weight"]["outcome"], "found");
}

#[test]
fn tensor_certificate_and_scan() {
    let f = factors_file(
        "t1",
        r#"{"s":"01","factors":[{"weights":"+q^2,+q^0","a":"q"},{"weights":"+q^1,+q^(-1)","a":"q^2"}]}"#,
    );
    let out = rtt(&["tensor", "--factors", f.to_str().unwrap(), "--scan-a", "-2..2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dim"], 4);
    assert_eq!(v["certificates"]["certificate"]["kind"], "T1");
    assert_eq!(v["certificates"]["certificate"]["k"], 2);
    let scan = v["scan"].as_array().unwrap();
    assert_eq!(scan.len(), 25);
    assert!(scan.iter().any(|r| r["irreducible"] == false));
    std::fs::remove_file(f).ok();
}

#[test]
fn tensor_rejects_bad_factor_files() {
    let f = factors_file("bad", r#"{"s":"01","factors":[]}"#);
    assert_eq!(rtt(&["tensor", "--factors", f.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_file(f).ok();
}

#[test]
fn evalrep_representation_reparses() {
    let out = rtt(&["evalrep", "--s", "001", "--weights", "+q^2,+q^0,+q^1", "--a", "-2*q"]);
    assert_eq!(out.status.code(), Some(0));
    let dumped = json(&out)["representation"].clone();
    let rep = rtt_core::affine::AffineRep::from_json(&dumped).unwrap();
    assert_eq!(rep.to_json(), dumped);
}
