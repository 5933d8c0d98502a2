use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn polychrome(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polychrome")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn verify_fixture_specs() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["chi26", "chi36a", "chi36b", "chi46c"] {
        let spec = polychrome(&["fixture", name]);
        assert_eq!(code(&spec), 0);
        let path = write(dir.path(), &format!("{name}.json"), &String::from_utf8_lossy(&spec.stdout));
        let out = polychrome(&["verify", &path, "--d", "6"]);
        assert_eq!(code(&out), 0, "{name}: {}", stderr(&out));
        assert_eq!(json(&out)["status"], "polychromatic");
    }
    // the published formula for the 9-color Q_4 coloring misses a color
    let out = polychrome(&["verify", "--fixture", "chi46", "--d", "6"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["witness"], serde_json::json!([0, 0, 0, 0, 0, 1, 0]));
}

#[test]
fn verify_zero_matrix_gives_witness() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "zero.json", r#"{"ell": 2, "moduli": [2], "columns": [[0], [0], [0]]}"#);
    let out = polychrome(&["verify", &spec, "--d", "3"]);
    assert_eq!(code(&out), 1);
    let cert = json(&out);
    assert_eq!(cert["status"], "not_polychromatic");
    assert_eq!(cert["witness"], serde_json::json!([0, 0, 0, 0]));
    assert_eq!(cert["missing_colors"], serde_json::json!([[1]]));
}

#[test]
fn verify_input_errors_are_distinct() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("malformed.json", r#"{"ell": 2, "moduli": [4,"#, "EOF"),
        ("modulus.json", r#"{"ell": 1, "moduli": [1], "columns": [[0], [0]]}"#, "below 2"),
        ("length.json", r#"{"ell": 1, "moduli": [4, 4], "columns": [[0, 1], [1]]}"#, "entries"),
        ("count.json", r#"{"ell": 2, "moduli": [4], "columns": [[0], [1]]}"#, "columns"),
    ];
    let mut messages = Vec::new();
    for (file, text, needle) in cases {
        let spec = write(dir.path(), file, text);
        let out = polychrome(&["verify", &spec, "--d", "3"]);
        assert_eq!(code(&out), 2, "{file}");
        let msg = stderr(&out);
        assert!(msg.contains(needle), "{file}: {msg}");
        messages.push(msg);
    }
    messages.dedup();
    assert_eq!(messages.len(), cases.len());

    let no_d = write(dir.path(), "nod.json", r#"{"ell": 1, "moduli": [2], "columns": [[0], [1]]}"#);
    assert_eq!(code(&polychrome(&["verify", &no_d])), 2);
    assert_eq!(code(&polychrome(&["verify", "--fixture", "nope", "--d", "3"])), 2);
    assert_eq!(code(&polychrome(&["search", "--ell", "2"])), 2);
}

#[test]
fn certificates_round_trip_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let cert_s = cert.to_string_lossy().into_owned();
    let out = polychrome(&["search", "--ell", "2", "--d", "4", "--colors", "6", "--threads", "1", "--out", &cert_s]);
    assert_eq!(code(&out), 0);
    // the certificate carries its own d
    let again = polychrome(&["verify", &cert_s]);
    assert_eq!(code(&again), 0, "{}", stderr(&again));
    assert_eq!(json(&again)["colors"], 6);
}

#[test]
fn search_exit_codes() {
    let out = polychrome(&["search", "--ell", "2", "--d", "4", "--colors", "7"]);
    assert_eq!(code(&out), 1);
    let cert = json(&out);
    assert_eq!(cert["status"], "none_exists");
    assert_eq!(cert["exhaustion"]["colors"], 7);
    assert_eq!(code(&polychrome(&["search", "--ell", "2", "--d", "3", "--colors", "3"])), 1);
    assert_eq!(code(&polychrome(&["search", "--ell", "2", "--d", "3", "--colors", "3", "--no-prune"])), 1);

    let out = polychrome(&["search", "--ell", "2", "--d", "4", "--colors", "7", "--budget", "10"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["status"], "undecided");
    assert_eq!(code(&polychrome(&["search", "--ell", "3", "--d", "2", "--colors", "2"])), 2);
}

#[test]
fn checkpointed_search_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("cp.json").to_string_lossy().into_owned();
    let base = ["search", "--ell", "2", "--d", "5", "--colors", "12", "--threads", "1", "--block-size", "64", "--budget", "200", "--checkpoint", &cp];
    let mut rounds = 0;
    let last = loop {
        let out = polychrome(&base);
        rounds += 1;
        if code(&out) != 3 {
            break out;
        }
        assert!(rounds < 500);
    };
    assert!(rounds > 1);
    assert_eq!(code(&last), 1);
    // a finished checkpoint answers immediately
    assert_eq!(code(&polychrome(&base)), 1);
}

#[test]
fn plin_reports_value_and_exhaustion() {
    let out = polychrome(&["plin", "--ell", "2", "--d", "4"]);
    assert_eq!(code(&out), 0);
    let bundle = json(&out);
    assert_eq!(bundle["result"]["value"], 6);
    let ms: Vec<u64> = bundle["exhaustion"].as_array().unwrap().iter().map(|c| c["colors"].as_u64().unwrap()).collect();
    assert_eq!(ms, vec![7, 8, 9, 10]);
    assert_eq!(bundle["certificate"]["status"], "polychromatic");

    let out = polychrome(&["plin", "--ell", "2", "--d", "4", "--budget", "5"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["result"]["undecided"], serde_json::json!([1, 10]));
}

#[test]
fn adversary_examples() {
    let out = polychrome(&["adversary", "--d", "3", "--moduli", "3", "--h", "1", "0", "0"]);
    assert_eq!(code(&out), 0);
    let w = json(&out);
    assert_eq!(w["x"], serde_json::json!([0, 0, 0, 0]));
    assert_eq!(w["g"], serde_json::json!([2]));

    let out = polychrome(&["adversary", "--d", "3", "--moduli", "3", "--h", "1", "2", "1"]);
    assert_eq!(json(&out)["x"], serde_json::json!([0, 1, 1, 0]));

    let out = polychrome(&["adversary", "--d", "3", "--moduli", "2", "2", "--h", "1,0", "0,1", "-1,1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let out = polychrome(&["adversary", "--d", "3", "--moduli", "2", "--h", "1", "0", "0"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("at least 3 colors"));
}

#[test]
fn oracle_and_bounds() {
    let out = polychrome(&["oracle", "--fixture", "chi26", "--n", "7", "--d", "6"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["all_qd_count"], 14);
    let out = polychrome(&["oracle", "--fixture", "chi46", "--n", "7", "--d", "6"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["failing_qd"], "*****1*");
    assert_eq!(code(&polychrome(&["oracle", "--fixture", "chi26", "--n", "30", "--d", "6"])), 3);

    let out = polychrome(&["bounds", "--ell", "2", "--d", "4..6", "--json"]);
    assert_eq!(code(&out), 0);
    let rows = json(&out);
    let triples: Vec<(u64, u64, u64)> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["chen_lower"].as_u64().unwrap(), r["known_plin"]["value"].as_u64().unwrap(), r["upper_os"].as_u64().unwrap()))
        .collect();
    assert_eq!(triples, vec![(6, 6, 10), (9, 9, 20), (15, 16, 35)]);
    let text = polychrome(&["bounds", "--ell", "2", "--d", "4..6"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("910/27"));
}

#[test]
fn crossval_is_seeded() {
    let a = polychrome(&["crossval", "--samples", "20", "--seed", "7"]);
    let b = polychrome(&["crossval", "--samples", "20", "--seed", "7"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["oracle_disagreements"], 0);
}
