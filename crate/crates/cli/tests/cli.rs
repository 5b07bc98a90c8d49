use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn spec_file(json: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

fn crg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crg"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const G4: &str = r#"{"kind":"exceptional","st":4}"#;
const B2: &str = r#"{"kind":"imprimitive","d":2,"e":1,"r":2}"#;
const TWO_LINES: &str = r#"{"kind":"explicit","dim":2,"cyclotomic_order":1,"generators":[[[-1,0],[0,1]],[[1,0],[0,-1]]]}"#;

#[test]
fn verify_g4_reports_kappa_and_period() {
    let f = spec_file(G4);
    let o = crg(&["verify", f.path().to_str().unwrap(), "--suite", "all"]);
    let out = stdout(&o);
    assert!(out.contains("kappa: 6"));
    assert!(out.contains("period: 6"));
    assert!(out.contains("parabolic_restriction: pass"));
    assert!(out.contains("central_loop: pass"));
    // the last row of the decomposition table does not hold
    assert!(out.contains("g4_table: fail"));
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("FAIL g4_table"));
}

#[test]
fn verify_g4_kappa_suite_passes() {
    let f = spec_file(G4);
    let o = crg(&["verify", f.path().to_str().unwrap(), "--suite", "kappa"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn reducible_analysis() {
    let f = spec_file(TWO_LINES);
    let o = crg(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("irreducible: false"));
    assert!(out.contains("phi.surjective: false"));
}

#[test]
fn json_is_deterministic_and_versioned() {
    let f = spec_file(G4);
    let path = f.path().to_str().unwrap();
    let a = crg(&[
        "--json",
        "--seed",
        "3",
        "verify",
        path,
        "--suite",
        "monodromy",
    ]);
    let b = crg(&[
        "verify",
        path,
        "--suite",
        "monodromy",
        "--json",
        "--seed",
        "3",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["seed"], 3);
    let c = crg(&[
        "--json",
        "--seed",
        "4",
        "verify",
        path,
        "--suite",
        "monodromy",
    ]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn json_round_trips_through_the_report_type() {
    let f = spec_file(B2);
    let o = crg(&["--json", "analyze", f.path().to_str().unwrap()]);
    let r: crg_core::report::Report = serde_json::from_slice(&o.stdout).unwrap();
    let again = serde_json::to_string_pretty(&r).unwrap();
    assert_eq!(
        again.trim_end(),
        String::from_utf8(o.stdout).unwrap().trim_end()
    );
}

#[test]
fn chi_table_for_b2() {
    let f = spec_file(B2);
    let o = crg(&[
        "chi",
        f.path().to_str().unwrap(),
        "--n-range",
        "0..3",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let chi = &v["chi"];
    assert_eq!(chi["n_values"], serde_json::json!([0, 1, 2, 3]));
    assert_eq!(chi["classes"].as_array().unwrap().len(), 5);
    assert_eq!(chi["classes"][0]["representative"], "1");
    // χ₀(1) = χ₁(1) = |𝒜|
    assert_eq!(chi["classes"][0]["values"][0], "4");
    assert_eq!(chi["classes"][0]["values"][1], "4");
    assert_eq!(chi["period"], 2);
}

#[test]
fn kappa_table_even_family_matches_formula() {
    let o = crg(&[
        "kappa-table",
        "--family",
        "2..2,1..3,2..3",
        "--no-reference",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("G(6,3,3)"));
}

#[test]
fn kappa_table_flags_odd_de() {
    let o = crg(&["kappa-table", "--family", "1..3,1..3,2..3", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["kappa_table"].as_array().unwrap();
    let g312 = rows.iter().find(|r| r["group"] == "G(3,1,2)").unwrap();
    assert_eq!(g312["kappa"], 6);
    assert_eq!(g312["formula"], 3);
    assert!(rows
        .iter()
        .any(|r| r["group"] == "G37" && r["source"] == "reference"));
}

#[test]
fn poincare_of_the_xyz_arrangement() {
    let f = spec_file(r#"{"dim":3,"hyperplanes":[[1,0,0],[0,1,0],[0,0,1],[1,-1,0],[0,1,-1]]}"#);
    let o = crg(&["poincare", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("poincare: 1 5 8 4"));
    assert!(out.contains("phi.rank: 5 of 6"));
}

#[test]
fn bad_input_exits_two() {
    let f = spec_file(r#"{"kind":"exceptional","st":31}"#);
    let o = crg(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let f = spec_file("not json");
    assert_eq!(
        crg(&["analyze", f.path().to_str().unwrap()]).status.code(),
        Some(2)
    );
    let f = spec_file(r#"{"kind":"imprimitive","d":1,"e":1,"r":2}"#);
    assert_eq!(
        crg(&["analyze", f.path().to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        crg(&["analyze", "/nonexistent/spec.json"]).status.code(),
        Some(2)
    );
    let f = spec_file(G4);
    assert_eq!(
        crg(&["chi", f.path().to_str().unwrap(), "--n-range", "5..2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn order_bound_is_enforced() {
    let f = spec_file(r#"{"kind":"imprimitive","d":2,"e":1,"r":4}"#);
    let o = crg(&[
        "--order-bound",
        "100",
        "analyze",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}
