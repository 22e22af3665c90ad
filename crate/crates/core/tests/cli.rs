use std::path::Path;
use std::process::{Command, Output};

fn qgms(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgms"))
        .args(args)
        .current_dir(dir)
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .env_remove("QGMS_QUBIT_CAP")
        .output()
        .expect("binary runs")
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn synth_writes_netlist_and_profiles() {
    let dir = tempfile::tempdir().unwrap();
    let out = qgms(&["synth", "qge", "--n", "3", "--out", "o"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("o/qge_n3.txt").exists());
    let r = json(&dir.path().join("o/qge_n3.json"));
    assert_eq!(r["schema"], 1);
    assert_eq!(r["stage_sum"]["cnot"], r["constructed"]["cnot"]);

    assert_eq!(qgms(&["synth", "qgje", "--n", "8", "--out", "o"], dir.path()).status.code(), Some(0));
    let r = json(&dir.path().join("o/qgje_n8.json"));
    assert_eq!(r["closed_form"]["cnot"], 2828);
    assert_eq!(r["constructed"]["cnot"], 2828);
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = qgms(&["synth", "qge", "--n", "1"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid dimensions"));
    assert_eq!(qgms(&["verify", "everything"], dir.path()).status.code(), Some(2));
    assert_eq!(qgms(&["gms", "--m", "2"], dir.path()).status.code(), Some(2));
    assert_eq!(qgms(&["--help"], dir.path()).status.code(), Some(0));
}

#[test]
fn cap_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = qgms(&["gms", "--m", "8", "--n", "8", "--l", "8"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("136 qubits"));
}

#[test]
fn verify_counting_and_deferred() {
    let dir = tempfile::tempdir().unwrap();
    let out = qgms(&["verify", "counting", "--out", "c.json"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = json(&dir.path().join("c.json"));
    assert_eq!(r["report"]["passed"], true);
    assert!(r["report"]["failures"].as_array().unwrap().is_empty());
    let out = qgms(&["verify", "deferred", "--n", "2", "--l", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn gms_is_byte_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["gms", "--m", "2", "--n", "2", "--l", "2", "--t-max", "20", "--seed", "7", "--out"];
    let run = |sub: &str| {
        let mut a = args.to_vec();
        a.push(sub);
        assert_eq!(qgms(&a, dir.path()).status.code(), Some(0));
        let stem = dir.path().join(sub).join("gms_m2_n2_l2_seed7");
        (std::fs::read(stem.with_extension("json")).unwrap(), std::fs::read(stem.with_extension("csv")).unwrap())
    };
    let (a, b) = (run("a"), run("b"));
    assert_eq!(a, b);
    let r: serde_json::Value = serde_json::from_slice(&a.0).unwrap();
    assert!(r["p_max"].as_f64().unwrap() > 0.0);
    assert_eq!(r["manifest"]["timestamp"], 1_700_000_000);
    assert_eq!(String::from_utf8_lossy(&a.1).lines().count(), 22);
}
