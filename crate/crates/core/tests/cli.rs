use std::io::Write;
use std::process::{Command, Output, Stdio};

use foldbetti::cli::{parse_instance, FieldSpec, FormSpec, InstanceFile};
use foldbetti::exactlin::Rational;
use num_bigint::BigInt;
use proptest::prelude::*;
use serde_json::{json, Value};

const EXAMPLE: &str = r#"{
  "field": "rational",
  "k": 3,
  "forms": [
    {"coeffs": ["1", "0", "0"], "mult": 2},
    {"coeffs": ["0", "1", "0"], "mult": 1},
    {"coeffs": ["0", "0", "1"], "mult": 1},
    {"coeffs": ["1", "0", "-1"], "mult": 1},
    {"coeffs": ["0", "1", "1"], "mult": 1},
    {"coeffs": ["1", "2", "5"], "mult": 1}
  ]
}"#;

fn foldbetti(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_foldbetti"))
        .args(args)
        .args(["--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn verify_all_folds() {
    let out = foldbetti(&["verify", "--all-folds", "--json"], EXAMPLE);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    let results = report["results"].as_array().unwrap();
    assert!(results.iter().all(|r| r["verdict"] == "agree"));
    let b1: Vec<u64> = results.iter().map(|r| r["methods"]["oracle"]["b"][0].as_u64().unwrap()).collect();
    assert_eq!(b1, [3, 6, 10, 14, 14, 6, 1]);
    assert_eq!(report["hamming"], json!([3, 5, 7]));
}

#[test]
fn betti_fold_six() {
    let out = foldbetti(&["betti", "--fold", "6", "--json"], EXAMPLE);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    assert_eq!(report["results"][0]["methods"]["auto"], json!({"a": 6, "k": 3, "b": [6, 5, 0]}));
}

#[test]
fn tutte_shifted_polynomial() {
    let out = foldbetti(&["tutte", "--json"], EXAMPLE);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    assert_eq!(
        report["tutte"]["shifted_text"],
        "x^3 + x^2*y + 6*x^2 + x*y^2 + 6*x*y + 13*x + y^4 + 3*y^3 + 6*y^2 + 9*y + 8"
    );
    let terms = report["tutte"]["shifted"]["terms"].as_array().unwrap();
    assert!(terms.contains(&json!({"x": 0, "y": 0, "c": "8"})));
}

#[test]
fn hilbert_and_height() {
    let out = foldbetti(&["hilbert", "--fold", "3", "--degrees", "3..5", "--json"], EXAMPLE);
    assert_eq!(json_of(&out)["results"][0]["hilbert"]["hf"], json!({"3": 10, "4": 15, "5": 21}));
    let out = foldbetti(&["height", "--json"], EXAMPLE);
    let heights: Vec<u64> = json_of(&out)["results"].as_array().unwrap().iter().map(|r| r["height"].as_u64().unwrap()).collect();
    assert_eq!(heights, [3, 3, 3, 2, 2, 1, 1]);
}

#[test]
fn output_is_byte_identical_and_sorted() {
    let a = foldbetti(&["verify", "--json"], EXAMPLE).stdout;
    let b = foldbetti(&["verify", "--json"], EXAMPLE).stdout;
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    let top: Vec<&str> = text.lines().filter(|l| l.starts_with("  \"")).collect();
    let mut sorted = top.clone();
    sorted.sort();
    assert_eq!(top, sorted);
}

#[test]
fn trivial_folds_need_a_flag() {
    let out = foldbetti(&["betti", "--fold", "8"], EXAMPLE);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--allow-trivial"));
    let out = foldbetti(&["betti", "--fold", "8", "--allow-trivial", "--json"], EXAMPLE);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["results"][0]["methods"]["auto"]["b"], json!([0, 0, 0]));
}

#[test]
fn bad_instances_exit_with_two() {
    let out = foldbetti(&["betti"], r#"{"k":3,"forms":[{"coeffs":["1","0"],"mult":1}]}"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("forms[0].coeffs"));
}

#[test]
fn guardrail_skip_keeps_verify_green_but_fails_a_direct_request() {
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_foldbetti"))
            .args(args)
            .args(["--input", "-", "--json"])
            .env("FOLDBETTI_ORACLE_CELL_LIMIT", "1")
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .and_then(|mut c| {
                c.stdin.take().unwrap().write_all(EXAMPLE.as_bytes())?;
                c.wait_with_output()
            })
            .unwrap()
    };
    let out = run(&["verify", "--fold", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    assert!(report["results"][0]["methods"]["oracle"]["skipped"].is_string());
    assert_eq!(report["results"][0]["methods"]["recursion"]["b"], json!([14, 22, 9]));
    let out = run(&["betti", "--fold", "4", "--method", "oracle"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn prime_field_verify_warns() {
    let gf = EXAMPLE.replace("\"rational\"", "\"gf(101)\"");
    let out = foldbetti(&["verify"], &gf);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

fn instance() -> impl Strategy<Value = InstanceFile> {
    let field = prop_oneof![Just(FieldSpec::Rational), Just(FieldSpec::Prime(7)), Just(FieldSpec::Prime(101))];
    (field, 1usize..=4).prop_flat_map(|(field, k)| {
        let coeff = (-20i64..=20, 1i64..=6).prop_map(|(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)).unwrap());
        let form = (proptest::collection::vec(coeff, k), 1usize..=4).prop_map(|(coeffs, mult)| FormSpec { coeffs, mult });
        proptest::collection::vec(form, 1..=6).prop_map(move |forms| InstanceFile { field, k, forms })
    })
}

proptest! {
    #[test]
    fn parse_serialize_round_trip(inst in instance()) {
        match parse_instance(inst.to_json().as_bytes()) {
            Ok(parsed) => prop_assert_eq!(parsed, inst),
            // zero forms (possibly only modulo p) are rejected on both sides
            Err(e) => prop_assert!(e.to_string().contains("zero"), "{}", e),
        }
    }
}
