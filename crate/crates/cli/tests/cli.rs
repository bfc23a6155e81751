//! End-to-end tests driving the homalg binary: exit codes, report shapes
//! and file round trips.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn homalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homalg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn check_hom_associative_on_fixture_passes() {
    let out = homalg(&["check", "fixture:ex-non-adjoint", "--hom-associative"]);
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn check_unital_identities_on_fixture_fails_with_witness() {
    let out = homalg(&["check", "fixture:ex-non-adjoint", "--unital-identities", "--json"]);
    assert_eq!(exit_code(&out), 1);
    let doc = stdout_json(&out);
    assert_eq!(doc["ok"], Value::Bool(false));
    let swap = doc["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["name"] == "alpha-swap")
        .expect("swap identity reported");
    assert_eq!(swap["status"], "fail");
    assert!(swap["detail"]["lhs"].is_object() || swap["detail"]["lhs"].is_array() || !swap["detail"].is_null());
}

#[test]
fn malformed_alpha_shape_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"field":"Q","dim":2,"alpha":[["1","0"],["0","1"],["0","0"]]}"#,
    )
    .unwrap();
    let out = homalg(&["check", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn unknown_fixture_is_a_usage_error() {
    let out = homalg(&["fixture", "no-such-fixture"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn fixture_save_then_load_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gf2.json");
    let out = homalg(&["fixture", "gf2-componentwise", "--out", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let saved = std::fs::read_to_string(&path).unwrap();
    let out = homalg(&["check", path.to_str().unwrap(), "--associative", "--commutative"]);
    assert_eq!(exit_code(&out), 0);
    // saving the loaded file again is byte-identical (canonical form)
    let second = dir.path().join("gf2-two.json");
    let loaded = homalg_load(&path);
    homalg_core::format::save(&loaded, &second).unwrap();
    assert_eq!(saved, std::fs::read_to_string(&second).unwrap());
}

fn homalg_load(path: &Path) -> homalg_core::format::LoadedAlgebra {
    homalg_core::format::load(path).unwrap()
}

#[test]
fn twist_then_detwist_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let twisted = dir.path().join("twisted.json");
    let out = homalg(&[
        "twist",
        "fixture:dual-numbers-q",
        "--mode",
        "yau",
        "--out",
        twisted.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let out = homalg(&["detwist", twisted.to_str().unwrap(), "--json"]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    let round_trip = doc["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["name"] == "round-trip")
        .expect("round trip reported");
    assert_eq!(round_trip["status"], "pass");
    // the de-twisted product is the original dual-number product
    let products = &doc["result"]["products"];
    assert_eq!(products.as_array().unwrap().len(), 3);
}

#[test]
fn twist_with_non_endomorphism_reports_failure() {
    let dir = tempfile::tempdir().unwrap();
    let alpha = dir.path().join("alpha.json");
    // t -> 1 is not multiplicative on the dual numbers
    std::fs::write(&alpha, r#"[["1","1"],["0","0"]]"#).unwrap();
    let out = homalg(&[
        "twist",
        "fixture:dual-numbers-q",
        "--mode",
        "yau",
        "--alpha",
        alpha.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn enumerate_twists_counts_componentwise_maps() {
    let out = homalg(&["enumerate-twists", "fixture:gf2-componentwise", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["result"]["count"], 4);
    assert_eq!(doc["result"]["complete"], true);
}

#[test]
fn enumerate_twists_over_q_needs_candidates() {
    let out = homalg(&["enumerate-twists", "fixture:dual-numbers-q"]);
    assert_eq!(exit_code(&out), 2);
    let out = homalg(&[
        "enumerate-twists",
        "fixture:dual-numbers-q",
        "--candidate",
        "1,0",
        "--candidate",
        "0,1",
        "--json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["result"]["count"], 2);
    assert_eq!(doc["result"]["complete"], false);
}

#[test]
fn search_spec_file_runs_to_exhaustion() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{
            "field": {"GF": 2},
            "dim": 2,
            "constraints": ["hom-associative", {"unital-at": 0}, "not-associative"],
            "goal": "find-model",
            "budget": 100000
        }"#,
    )
    .unwrap();
    let out = homalg(&["search", spec.to_str().unwrap(), "--json"]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["result"]["status"], "exhausted-none");
}

#[test]
fn search_with_bad_spec_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(&spec, r#"{"field": "Q", "dim": 2}"#).unwrap();
    let out = homalg(&["search", spec.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn generated_inputs_are_seed_addressable() {
    let args = [
        "check",
        "random:yau:GF5:3",
        "--seed",
        "7",
        "--hom-associative",
        "--units",
        "--json",
    ];
    let out1 = homalg(&args);
    assert_eq!(exit_code(&out1), 0);
    let out2 = homalg(&args);
    assert_eq!(out1.stdout, out2.stdout);
}

#[test]
fn analyze_identity_twist_reports_codim_zero() {
    let out = homalg(&["analyze", "fixture:gf2-componentwise", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    let codim = doc["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["name"] == "codim")
        .expect("codim entry");
    assert_eq!(codim["detail"]["codim_im_alpha"], 0);
    assert_eq!(codim["detail"]["alpha_injective"], true);
}

#[test]
fn analyze_unital_nonassoc_reports_codim_three() {
    let out = homalg(&["analyze", "fixture:unital-nonassoc-3d", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    let codim = doc["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["name"] == "codim")
        .expect("codim entry");
    assert_eq!(codim["detail"]["codim_im_alpha"], 3);
    assert_eq!(codim["detail"]["actual_associative"], false);
    assert_eq!(codim["detail"]["predicted_associative"], false);
}

#[test]
fn truncated_fixture_analyze_reports_kernel() {
    let out = homalg(&["analyze", "fixture:ex-dim-two-kernel", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    let kernel = doc["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["name"] == "twist-kernel")
        .expect("kernel entry");
    assert!(kernel["text"].as_str().unwrap().contains("dimension 2"));
}

#[test]
fn truncated_fixture_cannot_be_exported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trunc.json");
    let out = homalg(&["fixture", "ex-dim-two-kernel", "--out", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
}

/// Every command that accepts every fixture must emit parseable JSON with
/// the documented envelope: command, ok, entries[{name, status, text}].
#[test]
fn json_reports_have_the_documented_shape_on_all_fixtures() {
    let fixtures = [
        "ex-non-adjoint",
        "ex-dim-two-kernel",
        "unital-nonassoc-3d",
        "gf2-componentwise",
        "mat2-gf2",
        "dual-numbers-q",
    ];
    for fixture in fixtures {
        let arg = format!("fixture:{fixture}");
        let mut invocations: Vec<Vec<&str>> = vec![
            vec!["check", &arg, "--json"],
            vec!["analyze", &arg, "--json"],
            vec!["fixture", fixture, "--json"],
        ];
        if fixture == "gf2-componentwise" || fixture == "mat2-gf2" {
            invocations.push(vec!["enumerate-twists", &arg, "--json"]);
        }
        for args in invocations {
            let out = homalg(&args);
            let code = exit_code(&out);
            assert!(code == 0 || code == 1, "{args:?} exited {code}");
            let doc = stdout_json(&out);
            assert!(doc["command"].is_string(), "{args:?}");
            assert!(doc["ok"].is_boolean(), "{args:?}");
            for entry in doc["entries"].as_array().expect("entries array") {
                assert!(entry["name"].is_string());
                assert!(
                    matches!(
                        entry["status"].as_str(),
                        Some("pass" | "fail" | "info" | "skip")
                    ),
                    "{args:?}: {entry}"
                );
                assert!(entry["text"].is_string());
            }
        }
    }
}
