use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn nilgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilgeo"))
        .args(args)
        .env("NILGEO_COLOR", "0")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn inspect_catalog_pair() {
    let o = nilgeo(&["inspect", "--catalog", "paper-nj", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["properties"]["type_a"], true);
    assert_eq!(v["properties"]["scalar_j"], "-2");
    assert_eq!(v["properties"]["scalar_b"], "4");
    assert_eq!(v["naturally_reductive"]["outcome"], "structure");

    let o = nilgeo(&["inspect", "--catalog", "paper-njprime", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["naturally_reductive"]["outcome"], "obstruction");
    assert_eq!(v["naturally_reductive"]["pair"], serde_json::json!([0, 1]));

    let text = nilgeo(&["inspect", "--catalog", "paper-nj"]);
    assert_eq!(code(&text), 0);
    assert!(!stdout(&text).contains('\u{1b}'));
}

#[test]
fn inspect_rejects_non_skew_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    fs::write(
        &path,
        r#"{ "dim_v": 2, "dim_z": 1, "j": [ [ ["0", "1"], ["1", "0"] ] ] }"#,
    )
    .unwrap();
    let o = nilgeo(&["inspect", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("skew"), "{err}");
    assert!(err.contains("$.j"), "{err}");
}

#[test]
fn unknown_catalog_is_input_error() {
    assert_eq!(code(&nilgeo(&["inspect", "--catalog", "nope"])), 2);
    assert_eq!(code(&nilgeo(&["inspect"])), 2);
}

#[test]
fn isospec_exit_codes() {
    let o = nilgeo(&["isospec", "--catalog", "paper-nj", "--catalog", "paper-njprime"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let o = nilgeo(&[
        "isospec",
        "--catalog",
        "paper-nj",
        "--catalog",
        "paper-njprime",
        "--lattice-L",
        "2,2,2",
        "--json",
    ]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["criterion_ii"]["status"], "fail");
    assert_eq!(v["criterion_ii"]["witness"]["kind"], "bracket-outside-lattice");

    let o = nilgeo(&["isospec", "--catalog", "paper-nj", "--catalog", "paper-nj"]);
    assert_eq!(code(&o), 0);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h3.json");
    fs::write(
        &path,
        r#"{ "dim_v": 2, "dim_z": 1, "j": [ [ ["0", "1"], ["-1", "0"] ] ] }"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    // Unit lattices put [v_1, v_2] = z outside 2L.
    assert_eq!(code(&nilgeo(&["isospec", p, p])), 1);
    assert_eq!(code(&nilgeo(&["isospec", p, p, "--lattice-L", "1/2"])), 0);
    assert_eq!(code(&nilgeo(&["isospec", p])), 2);
}

#[test]
fn isospec_sampled_mode_records_sample() {
    let o = nilgeo(&["isospec", "--mode", "sampled", "--bound", "16", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["sample"]["count"], 342);
    assert_eq!(nilgeo(&["isospec", "--mode", "bogus"]).status.code(), Some(2));
}

#[test]
fn nr_check_exit_codes() {
    assert_eq!(code(&nilgeo(&["nr-check", "--catalog", "paper-nj"])), 0);
    let o = nilgeo(&["nr-check", "--catalog", "paper-njprime"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("Z_i"));
}

#[test]
fn verify_suite_text_and_json_agree() {
    let text = nilgeo(&["paper-verify"]);
    assert_eq!(code(&text), 0);
    let out = stdout(&text);
    assert!(!out.contains("FAIL"), "{out}");

    let o = nilgeo(&["paper-verify", "--json"]);
    assert_eq!(code(&o), 0);
    let rows = json(&o);
    let rows = rows.as_array().unwrap();
    assert!(rows.iter().all(|r| r["pass"] == true));
    assert_eq!(out.matches("PASS").count(), rows.len());
}

#[test]
fn fuzz_is_deterministic() {
    let args = ["fuzz", "--seed", "1", "--count", "12", "--n", "4", "--m", "2", "--json"];
    let a = nilgeo(&args);
    let b = nilgeo(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["discrepancies"].as_array().unwrap().len(), 0);
    assert_eq!(v["count"], 12);
}

#[test]
fn fuzz_rejects_zero_count() {
    assert_eq!(code(&nilgeo(&["fuzz", "--count", "0"])), 2);
}
