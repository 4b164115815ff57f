use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use walshcode::FunctionDescriptor;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).to_string_lossy().into_owned()
}

fn golden(name: &str) -> String {
    fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

/// Runs in-process; returns (exit code, stdout, stderr).
fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = walshcode::run(std::iter::once("walshcode").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn walsh_reports_spectrum() {
    let (code, out, _) = run(&["walsh", "--kind", "monomial", "--n", "5", "--d", "3", "--alpha", "01"]);
    assert_eq!(code, 0);
    assert!(out.contains("spectrum [-8]^6 [0]^16 [8]^10\n"), "{out}");
    assert!(out.contains("W_f(0) = 0\n"));
    assert!(out.contains("class semibent\n"));
    assert!(out.contains("admissible t: 1\n"));
}

#[test]
fn walsh_of_zero_function() {
    let (code, out, _) = run(&["walsh", "--kind", "raw", "--n", "6", "--table", "0000000000000000", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["spectrum"], serde_json::json!([{"w": 0, "mult": 63}, {"w": 64, "mult": 1}]));
    assert_eq!(v["w_at_zero"], 64);
}

#[test]
fn walsh_dump_is_limited() {
    let (code, out, _) = run(&["walsh", "--kind", "monomial", "--n", "3", "--d", "3", "--dump", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["walsh"].as_array().unwrap().len(), 8);
    assert_eq!(v["walsh"][0], v["w_at_zero"]);
    let (code, _, err) = run(&["walsh", "--kind", "monomial", "--n", "21", "--d", "3", "--dump"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn parse_errors_exit_2() {
    let (code, _, err) = run(&["walsh", "--kind", "monomial", "--n", "5", "--d", "3", "--alpha", "0x1"]);
    assert_eq!(code, 2);
    assert!(err.contains("position 2"), "{err}");
    assert_eq!(run(&["walsh", "--spec", "{\"kind\":\"monomial\"}"]).0, 2);
    assert_eq!(run(&["walsh", "--spec", "{\"kind\":\"raw\",\"n\":3,\"truth_table_hex\":\"00\",\"extra\":1}"]).0, 2);
    assert_eq!(run(&["walsh", "--kind", "raw", "--n", "3", "--table", "000"]).0, 2);
    assert_eq!(run(&["walsh"]).0, 2);
    assert_eq!(run(&["bogus"]).0, 2);
    // reducible polynomial
    assert_eq!(run(&["walsh", "--kind", "monomial", "--n", "4", "--d", "3", "--poly", "15"]).0, 2);
}

#[test]
fn unsupported_n_exits_3() {
    assert_eq!(run(&["walsh", "--kind", "monomial", "--n", "25", "--d", "3"]).0, 3);
    assert_eq!(run(&["build", "--kind", "monomial", "--n", "1", "--d", "1", "--t", "1"]).0, 3);
}

#[test]
fn dillon_code_has_16_rows() {
    let (code, out, _) = run(&["build", "--descriptor", &fixture("dillon_gf16.json"), "--t", "2", "--reduced"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows.len(), 16);
    assert!(rows.iter().all(|r| r.split(',').count() == 4));
    assert_eq!(rows[0], "0,0,0,0");
}

#[test]
fn golden_enumerators() {
    let (_, out, _) = run(&["build", "--descriptor", &fixture("cube_gf32.json"), "--t", "1", "--emit", "json"]);
    assert_eq!(out, golden("cube_gf32_t1_full.json"));
    let args = ["build", "--descriptor", &fixture("dillon_gf16.json"), "--t", "2", "--reduced", "--emit"];
    let (_, out, _) = run(&[&args[..], &["json"]].concat());
    assert_eq!(out, golden("dillon_gf16_t2_reduced.json"));
    let (_, out, _) = run(&[&args[..], &["genmatrix"]].concat());
    assert_eq!(out, golden("dillon_gf16_t2_reduced.gen"));
}

#[test]
fn hypothesis_failures_exit_4() {
    let (code, _, err) = run(&["build", "--kind", "monomial", "--n", "5", "--d", "3", "--t", "2"]);
    assert_eq!(code, 4);
    assert!(err.contains("t does not divide n"), "{err}");
    let spec = r#"{"kind":"product","f1":{"kind":"monomial","n":4,"d":3,"alpha_hex":"1"},"f2":{"kind":"monomial","n":2,"d":1,"alpha_hex":"1"}}"#;
    let (code, _, err) = run(&["build", "--spec", spec, "--t", "2"]);
    assert_eq!(code, 4);
    assert!(err.contains("factor f2"), "{err}");
    let (code, _, err) = run(&["certify", "--kind", "monomial", "--n", "6", "--d", "1", "--t", "3"]);
    assert_eq!(code, 4, "{err}");
}

#[test]
fn shipped_fixtures_certify() {
    let cases = [
        ("cube_gf32.json", "1"),
        ("dillon_gf16.json", "1"),
        ("dillon_gf16.json", "2"),
        ("gold_gf256.json", "2"),
        ("binary_quadratic_gf1024.json", "2"),
        ("dillon_times_zero.json", "2"),
        ("series5_gf128.json", "1"),
        ("monomial_gf64_poly.json", "1"),
    ];
    for (file, t) in cases {
        let (code, out, err) = run(&["certify", "--descriptor", &fixture(file), "--t", t]);
        assert_eq!(code, 0, "{file} t = {t}: {out}{err}");
        assert!(out.trim_end().ends_with("certified"));
        assert!(err.starts_with("q = "), "{err}");
        assert!(err.contains("wall time"));
    }
}

#[test]
fn corrupted_table_fails_certification() {
    let (_, out, _) = run(&["walsh", "--kind", "monomial", "--n", "4", "--d", "3", "--alpha", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let table = v["truth_table_hex"].as_str().unwrap().to_string();
    let mut digits: Vec<u32> = table.chars().map(|c| c.to_digit(16).unwrap()).collect();
    digits[1] ^= 1;
    let corrupted: String = digits.iter().map(|&d| char::from_digit(d, 16).unwrap()).collect();

    let dir = tempfile::tempdir().unwrap();
    let reference = dir.path().join("bent.json");
    fs::write(&reference, format!(r#"{{"kind":"raw","n":4,"truth_table_hex":"{table}"}}"#)).unwrap();
    let reference = reference.to_string_lossy().into_owned();
    let (code, out, err) =
        run(&["certify", "--kind", "raw", "--n", "4", "--table", &corrupted, "--t", "1", "--reference", &reference]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL full length: predicted 9 observed 10"), "{out}");
    assert!(err.contains("certification failed: full length"), "{err}");

    let (code, out, _) = run(&["certify", "--kind", "raw", "--n", "4", "--table", &corrupted, "--t", "1", "--reference", &reference, "--json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(v["observed"]["full"]["provenance"], "bruteforce");
    assert_eq!(v["predicted"]["full"]["provenance"], "general");

    // The untouched table against its own spectrum is fine.
    let (code, _, _) = run(&["certify", "--kind", "raw", "--n", "4", "--table", &table, "--t", "1", "--reference", &reference]);
    assert_eq!(code, 0);
}

#[test]
fn families_commands() {
    let (code, out, _) = run(&["families", "conditions", "--name", "series6", "--l", "0", "--n", "85"]);
    assert_eq!(code, 0);
    assert!(out.contains("h = 21"));
    assert!(out.contains("5 | n: ok"));
    assert!(out.contains("n | 4h + 1: ok"));
    assert!(out.contains("field not built"));
    let (code, out, _) = run(&["families", "conditions", "--name", "series6", "--l", "0", "--n", "86", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kind"], "family");
    assert_eq!(v["conditions"][0]["holds"], false);

    let (code, out, _) = run(&["families", "list"]);
    assert_eq!(code, 0);
    let section = |title: &str| {
        out.split('\n')
            .skip_while(|l| !l.starts_with(title))
            .skip(1)
            .take_while(|l| l.starts_with("  "))
            .count()
    };
    assert_eq!(section("bent"), 5);
    assert_eq!(section("three-valued"), 6);
    assert_eq!(section("quadratic"), 7);

    assert_eq!(run(&["families", "conditions", "--name", "nope", "--n", "4"]).0, 2);

    let (code, out, _) = run(&["families", "conditions", "--name", "dillon", "--n", "4", "--alpha", "6", "--t", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("Kloosterman sum = -1: ok"), "{out}");
    assert!(out.contains("certification (bent, values ±4): passed"), "{out}");
    assert!(!out.contains("not evaluated"));
}

#[test]
fn descriptors_round_trip() {
    for entry in fs::read_dir(fixtures()).unwrap() {
        let text = fs::read_to_string(entry.unwrap().path()).unwrap();
        let d = FunctionDescriptor::parse(&text).unwrap();
        assert_eq!(FunctionDescriptor::parse(&d.to_json()).unwrap(), d);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_value(&d).unwrap(), value);
    }
}

#[test]
fn output_is_worker_independent() {
    let dillon = fixture("dillon_times_zero.json");
    let gold = fixture("gold_gf256.json");
    let commands: Vec<Vec<&str>> = vec![
        vec!["build", "--descriptor", &dillon, "--t", "2"],
        vec!["build", "--descriptor", &gold, "--t", "2", "--reduced"],
        vec!["build", "--descriptor", &gold, "--t", "1", "--emit", "json"],
        vec!["certify", "--descriptor", &gold, "--t", "2", "--json"],
        vec!["certify", "--descriptor", &dillon, "--t", "1"],
    ];
    for cmd in commands {
        let outputs: Vec<String> = ["1", "2", "8"]
            .iter()
            .map(|w| run(&[&cmd[..], &["--workers", w]].concat()).1)
            .collect();
        assert!(!outputs[0].is_empty());
        assert!(outputs.iter().all(|o| *o == outputs[0]), "{cmd:?}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_walshcode");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code().unwrap();
    assert_eq!(status(&["walsh", "--kind", "monomial", "--n", "5", "--d", "3"]), 0);
    assert_eq!(status(&["walsh", "--kind", "monomial", "--n", "5", "--d", "3", "--alpha", "z"]), 2);
    assert_eq!(status(&["walsh", "--kind", "monomial", "--n", "30", "--d", "3"]), 3);
    assert_eq!(status(&["build", "--kind", "monomial", "--n", "5", "--d", "3", "--t", "2"]), 4);
    let out = Command::new(bin).args(["families", "list"]).output().unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("bent monomials"));
}
