use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn fihom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fihom")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = fihom(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    });
    (v, out.status.code().unwrap())
}

fn temp_file(name: &str, text: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("fihom-cli-{}-{name}", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(text.as_bytes()).unwrap();
    path
}

#[test]
fn bounds_thresholds_for_d_one() {
    let (v, code) = json(&["bounds", "--d", "1", "--kmax", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "bounds");
    assert_eq!(v["result"]["thresholds"], serde_json::json!([11, 22, 44]));
    assert_eq!(v["status"], "pass");
}

#[test]
fn catalan_sigma_two_four() {
    let (v, code) = json(&["catalan", "--a", "2", "--b", "4"]);
    assert_eq!(code, 0);
    let sets: Vec<&str> = v["result"]["sets"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert_eq!(sets, ["1234", "1235", "1236", "1237", "1245", "1246", "1247", "1256", "1257"]);
}

#[test]
fn homology_of_sharpness_example() {
    let (v, code) = json(&["homology", "--preset", "sharpness:1,2", "--ring", "Z", "--pmax", "2"]);
    assert_eq!(code, 0);
    let h = &v["result"]["homology"];
    assert_eq!(h["degrees"][0]["degree"], 1);
    assert_eq!(h["degrees"][0]["truncation_limited"], false);
    let w3 = &v["result"]["module"]["groups"]["W"][3];
    assert_eq!(w3["free_rank"], 0);
    assert_eq!(w3["torsion"], serde_json::json!([2]));
    let tsv = String::from_utf8(fihom(&["homology", "--preset", "sharpness:1,2", "--pmax", "2", "--tsv"]).stdout).unwrap();
    assert!(tsv.lines().any(|l| l == "W\t3\tZ/2"), "{tsv}");
}

#[test]
fn emitted_description_round_trips() {
    let (v, code) = json(&["validate", "--preset", "sharpness:2,3", "--ring", "Q", "--trunc", "5"]);
    assert_eq!(code, 0);
    let canonical = serde_json::to_string_pretty(&v["result"]["canonical"]).unwrap();
    assert_eq!(v["input"], v["result"]["canonical"]);
    let path = temp_file("roundtrip.json", &canonical);
    let (again, code) = json(&["validate", "--input", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    assert_eq!(again["result"]["canonical"], v["result"]["canonical"]);
    assert_eq!(again["result"]["groups"], v["result"]["groups"]);
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        &["degrees", "--preset", "sharpness:1,3", "--ring", "Q"][..],
        &["saturate", "--preset", "principal:1", "--trunc", "4"][..],
        &["verify-props", "--suite", "all", "--size", "4", "--trunc", "5"][..],
    ] {
        let a = fihom(args);
        let b = fihom(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
    }
}

#[test]
fn colimit_matches_homology_degrees() {
    let (v, code) = json(&["colimit", "--preset", "sharpness:1,2", "--ring", "Q"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["minimal_degree"]["n"], 2);
    assert_eq!(v["result"]["agrees"], true);
}

#[test]
fn malformed_subset_is_an_input_error() {
    let text = r#"{
        "ring": "Z", "truncation": 3,
        "fb_generators": [{"degree": 2, "preset": "trivial"}],
        "elements": [{"degree": 2, "terms": [{"m": 2, "subset": [1, 1], "j": 1, "coeff": 1}]}]
    }"#;
    let path = temp_file("bad.json", text);
    let out = fihom(&["homology", "--input", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("elements[0]"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(fihom(&["homology"]).status.code(), Some(2));
    assert_eq!(fihom(&["catalan", "--a", "3", "--b", "2"]).status.code(), Some(2));
    assert_eq!(fihom(&["catalan", "--a", "1", "--b", "2", "--preset", "principal:1"]).status.code(), Some(2));
    assert_eq!(fihom(&["degrees", "--preset", "principal:1", "--json", "--tsv"]).status.code(), Some(2));
    assert_eq!(fihom(&["degrees", "--preset", "nonsense"]).status.code(), Some(2));
    assert_eq!(fihom(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn saturation_below_threshold_is_inconclusive() {
    // sharpness:1,2 has k = 1, d = 2, so nothing is claimed up to degree 3
    let out = fihom(&["saturate", "--preset", "sharpness:1,2", "--trunc", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "inconclusive");
    assert!(!v["caveats"].as_array().unwrap().is_empty());
}
