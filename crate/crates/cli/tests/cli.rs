use std::process::{Command, Output};

use serde_json::Value;

fn twistfloer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistfloer"))
        .args(args)
        .env_remove("TWISTFLOER_CONFIG")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = twistfloer(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["--genus", "2", "-m", "2", "-n", "3", "coproduct"][..],
        &["-m", "2", "-n", "3", "verify-nocrossing", "--bound", "4"][..],
        &["-m", "2", "-n", "3", "ode"][..],
    ] {
        let a = twistfloer(args);
        let b = twistfloer(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn coproduct_row_of_interior_elliptic() {
    let v = json(&["--genus", "2", "-m", "2", "-n", "3", "coproduct"]);
    let row = v["images"]
        .as_array()
        .unwrap()
        .iter()
        .find(|i| i["input"] == "e^5_2")
        .expect("e^5_2 has an image");
    let mut got: Vec<&str> = row["output"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    got.sort();
    // Boundary slices of the twist region resolve to the point class.
    let mut want = vec!["c1.pt⊗c1.pt", "c1.pt⊗e^3_2", "e^2_1⊗e^3_1"];
    want.sort();
    assert_eq!(got, want);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn exit_codes() {
    assert_eq!(twistfloer(&["-m", "0", "hf"]).status.code(), Some(2));
    assert_eq!(twistfloer(&["--genus", "0", "hf"]).status.code(), Some(3));
    assert_eq!(twistfloer(&["--bogus"]).status.code(), Some(2));
    assert_eq!(twistfloer(&["ode", "--k-inf", "4", "--k1", "1", "--k2", "2"]).status.code(), Some(2));
}

#[test]
fn config_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "[surface]\ngenus = 3\n[powers]\nm = 2\nn = 2\n").unwrap();
    let path = cfg.to_str().unwrap();
    let v = json(&["--config", path, "hf"]);
    assert_eq!(v["power"], 2);
    let from_file = json(&["--config", path, "homology"]);
    let overridden = json(&["--config", path, "--genus", "1", "homology"]);
    assert_ne!(from_file["dims_by_degree"], overridden["dims_by_degree"]);

    std::fs::write(&cfg, "[surface]\ngenus = 3\nbogus = 1\n").unwrap();
    assert_eq!(twistfloer(&["--config", path, "hf"]).status.code(), Some(2));
}

#[test]
fn certificate_and_out_files() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let out = dir.path().join("out.json");
    let o = twistfloer(&[
        "-m", "1", "-n", "2", "--out", out.to_str().unwrap(),
        "verify-nocrossing", "--bound", "3", "--certificate", cert.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let written: Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    let certificate: Value = serde_json::from_slice(&std::fs::read(&cert).unwrap()).unwrap();
    assert_eq!(written, certificate);
    assert_eq!(written["empty"], true);
}

#[test]
fn relaxed_search_finds_survivors() {
    let v = json(&["-m", "2", "-n", "3", "verify-nocrossing", "--bound", "3", "--relaxed"]);
    assert_eq!(v["empty"], false);
}

#[test]
fn separating_split_flag() {
    let v = json(&["--genus", "4", "--curve", "sep", "--split", "2,0,2,0", "-m", "1", "-n", "2", "-p", "1", "product"]);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    assert_eq!(twistfloer(&["--curve", "sep", "--split", "1,0,1", "hf"]).status.code(), Some(2));
    assert_eq!(twistfloer(&["--curve", "sep", "--split", "1,0,1,0", "hf"]).status.code(), Some(3));
}
