use std::process::{Command, Output};

use hyperop_core::HyperForest;

fn hyperop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperop"))
        .args(args)
        .env_remove("HYPEROP_BFILE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = hyperop(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn compose_example() {
    assert_eq!(stdout(&["compose", "--family", "FH", "1<3>", "1", "1<2>"]).trim(), "1<2<3>> + 1<2><3>");
    assert_eq!(stdout(&["compose", "--family", "FH", "1<2>", "2", "{1,2}"]).trim(), "1<2,3>");
}

#[test]
fn cohomology_json() {
    let out = stdout(&["cohomology", "--arity", "3", "--convention", "dgComGreg", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["betti"], serde_json::json!([9, 0, 0]));
    assert_eq!(v["euler_char"], 9);
    assert_eq!(v["arity"], 3);
    assert!(v["dims_per_degree"].is_array() && v["elapsed_ms"].is_number());
}

#[test]
fn dumped_matrices() {
    let dir = std::env::temp_dir().join(format!("hyperop-dump-{}", std::process::id()));
    stdout(&["cohomology", "--arity", "2", "--dump-matrices", dir.to_str().unwrap()]);
    let text = std::fs::read_to_string(dir.join("d_0.triplets")).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn enumeration_round_trips() {
    let out = stdout(&["enumerate", "--family", "FH", "--arity", "2"]);
    assert_eq!(out.lines().count(), 3);
    let out = stdout(&["enumerate", "--family", "FRG", "--arity", "3"]);
    for line in out.lines() {
        assert_eq!(HyperForest::parse(line).unwrap().to_string(), line);
    }
    let v: serde_json::Value = serde_json::from_str(&stdout(&["enumerate", "--family", "Greg", "--arity", "3", "--format", "json"])).unwrap();
    assert_eq!(v["count"], 22);
}

#[test]
fn reduce_and_diff() {
    assert_eq!(stdout(&["reduce", "B<1,2><3>"]).trim(), "{1,B<2><3>} + {2,B<1><3>}");
    assert_eq!(stdout(&["diff", "1<2>"]).trim(), "B<1><2>");
    assert_eq!(stdout(&["diff", "--convention", "greg-1", "1<2>"]).trim(), "-B<1><2>");
    assert_eq!(stdout(&["diff", "1<2>", "2<1>"]).trim(), "2*B<1><2>");
}

#[test]
fn series_table() {
    let out = stdout(&["series", "--family", "FMan", "--order", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["egf_coefficients"][3], "2 + 6*u + u^2");
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["enumerate", "--family", "FH"][..],
        &["enumerate", "--family", "XX", "--arity", "2"],
        &["compose", "--family", "RT", "1<2,3>", "1", "1"],
        &["diff", "1<2"],
        &["series", "--family", "nope"],
        &["series", "--oeis"],
    ] {
        assert_eq!(hyperop(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_small() {
    let out = hyperop(&["verify", "--max-arity", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 20231);
    assert_eq!(v["checks"].as_array().unwrap().len(), 11);
    let out = hyperop(&["verify", "--max-arity", "3", "--oeis"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2-oeis"));
}
