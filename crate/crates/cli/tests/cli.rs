use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn quiver(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../quivers");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn coha(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coha"))
        .args(args)
        .env_remove("COHA_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn info_reports_total_negativity_and_classes() {
    let out = coha(&["--quiver", &quiver("s2.json"), "info"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["metadata"]["totally_negative"], Value::Bool(true));

    let out = coha(&["--quiver", &quiver("jordan.json"), "info"]);
    let v = json(&out);
    assert_eq!(v["metadata"]["totally_negative"], Value::Bool(false));
    assert_eq!(v["rows"][0][2], "isotropic");
}

#[test]
fn malformed_quiver_is_an_input_error_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"vertices\": [\"v\"],\n \"arrows\": [[\"v\" \"v\"]]}").unwrap();
    let out = coha(&["--quiver", path.to_str().unwrap(), "info"]);
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn cuspidal_coefficients_are_nonnegative_integers() {
    let out = coha(&["--quiver", &quiver("s2.json"), "--box", "3", "cuspidal"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for row in rows {
        for c in row[1].as_object().unwrap().values() {
            let n: i64 = c.as_str().unwrap().parse().unwrap();
            assert!(n > 0);
        }
    }
    assert_eq!(rows[0][1]["2"], "1");
}

#[test]
fn pbw_check_passes_every_cell() {
    let out = coha(&["--quiver", &quiver("s2.json"), "--box", "2", "--fields", "2,3", "pbw-check"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r[4] == "PASS"));
}

#[test]
fn totally_negative_only_refuses_jordan_quiver() {
    let out = coha(&["--quiver", &quiver("jordan.json"), "--box", "2", "--totally-negative-only", "kac"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(out.stdout.is_empty());
    let out = coha(&["--quiver", &quiver("jordan.json"), "--box", "2", "kac"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn budget_exhaustion_has_its_own_exit_code() {
    let out = coha(&[
        "--quiver",
        &quiver("s2.json"),
        "--box",
        "2",
        "--fields",
        "3",
        "--budget-enum",
        "10",
        "count",
        "--strategy",
        "elementwise",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn invalid_configuration_is_rejected() {
    for args in [
        vec!["--fields", "2,6", "selfcheck"],
        vec!["--fields", "2,2", "selfcheck"],
        vec!["--budget-enum", "0", "selfcheck"],
        vec!["--no-such-flag", "selfcheck"],
    ] {
        assert_eq!(coha(&args).status.code(), Some(4), "{args:?}");
    }
    let out = coha(&["--quiver", &quiver("s2.json"), "--box", "1,1", "kac"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["--quiver", &quiver("two_vertex.json"), "--box", "1,1", "--cache-dir", cache, "ip"];
    let cold = coha(&args);
    assert_eq!(cold.status.code(), Some(0));
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let warm = coha(&args);
    assert_eq!(cold.stdout, warm.stdout);

    let entry = entries[0].as_ref().unwrap().path();
    std::fs::write(&entry, "truncated").unwrap();
    let repaired = coha(&args);
    assert_eq!(cold.stdout, repaired.stdout);

    let via_env = Command::new(env!("CARGO_BIN_EXE_coha"))
        .args(["--quiver", &quiver("two_vertex.json"), "--box", "1,1", "ip"])
        .env("COHA_CACHE_DIR", cache)
        .output()
        .unwrap();
    assert_eq!(cold.stdout, via_env.stdout);
}

#[test]
fn output_is_independent_of_thread_count() {
    let base = ["--quiver", &quiver("s2.json"), "--box", "2", "kac"];
    let one = coha(&[&base[..], &["--threads", "1"]].concat());
    let two = coha(&[&base[..], &["--threads", "3"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
}

#[test]
fn csv_flattens_polynomials() {
    let out = coha(&["--quiver", &quiver("s2.json"), "--box", "2", "--format", "csv", "cuspidal"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "d,C_abs\n1,1*q^2\n2,1*q^3+1*q^5\n");
}

#[test]
fn bb_matches_composition_counts() {
    let out = coha(&["--quiver", &quiver("s3.json"), "--box", "6", "bb"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for row in v["rows"].as_array().unwrap() {
        assert_eq!(row[3]["0"], row[4]);
    }
}

#[test]
fn selfcheck_depends_only_on_seed() {
    let a = coha(&["--seed", "7", "selfcheck", "--cases", "20"]);
    let b = coha(&["--seed", "7", "selfcheck", "--cases", "20"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sigma_table_for_two_vertex_quiver() {
    let out = coha(&["--quiver", &quiver("two_vertex.json"), "--max-norm", "2", "--format", "text", "sigma"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1,1  8   true       false"), "{text}");
    assert!(text.contains("0,2  10  true       true"), "{text}");
}
