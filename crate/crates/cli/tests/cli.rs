//! End-to-end checks of the binary: output contracts, exit codes,
//! determinism across thread counts.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

fn sboxtab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sboxtab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn analyze_power_map_examples() {
    let v = stdout_json(&sboxtab(&["analyze", "-n", "6", "-d", "7"]));
    assert_eq!(v["delta"], 6);
    assert_eq!(v["boomerang"], 4);
    assert_eq!(v["permutation"], false);
    assert_eq!(v["locally_apn"], true);

    let v = stdout_json(&sboxtab(&["analyze", "-n", "8", "-d", "15"]));
    assert_eq!(v["delta"], 14);
    assert_eq!(v["boomerang"], 2);
}

#[test]
fn analyze_degenerate_exponent_warns() {
    let out = sboxtab(&["analyze", "-n", "4", "-d", "0"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["degenerate"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate"));
}

#[test]
fn analyze_lut_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cube.lut");
    let field = sboxtab::Field::new(4, None).unwrap();
    let mut file = std::fs::File::create(&path).unwrap();
    writeln!(file, "# x^3 over GF(2^4)").unwrap();
    for x in 0..16u32 {
        writeln!(file, "{:#x}", field.pow(x, 3)).unwrap();
    }
    drop(file);
    let v = stdout_json(&sboxtab(&["analyze", "-n", "4", "--lut", path.to_str().unwrap()]));
    assert_eq!(v["apn"], true);
    assert_eq!(v["d"], "lut");
    assert_eq!(v["locally_apn"], serde_json::Value::Null);
}

#[test]
fn usage_errors_exit_2() {
    // Neither -d nor --lut.
    assert_eq!(sboxtab(&["analyze", "-n", "6"]).status.code(), Some(2));
    // Both at once.
    assert_eq!(
        sboxtab(&["analyze", "-n", "6", "-d", "7", "--lut", "x"]).status.code(),
        Some(2)
    );
    // Out-of-range max_m.
    assert_eq!(sboxtab(&["verify", "--max-m", "9"]).status.code(), Some(2));
    assert_eq!(sboxtab(&["verify", "--max-m", "1"]).status.code(), Some(2));
    // Bad modulus.
    assert_eq!(
        sboxtab(&["analyze", "-n", "4", "-d", "3", "--modulus", "0x13000"])
            .status
            .code(),
        Some(2)
    );
    // Reducible modulus.
    assert_eq!(
        sboxtab(&["analyze", "-n", "4", "-d", "3", "--modulus", "x^4+x"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn table_csv_rows_sum_to_q() {
    let out = sboxtab(&["table", "ddt", "-n", "4", "-d", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.contains("kind=ddt"));
    assert!(header.contains("d=3"));
    let mut rows = 0;
    for line in lines {
        let sum: u64 = line.split(',').map(|c| c.parse::<u64>().unwrap()).sum();
        assert_eq!(sum, 16);
        rows += 1;
    }
    assert_eq!(rows, 16);
}

#[test]
fn table_json_spectrum_contains_peak() {
    let out = sboxtab(&["table", "bct", "-n", "6", "-d", "7", "--format", "json"]);
    let v = stdout_json(&out);
    assert_eq!(v["kind"], "bct");
    assert_eq!(v["max_nontrivial"], 4);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 64);
    assert!(rows[1]["spectrum"]
        .as_array()
        .unwrap()
        .iter()
        .any(|pair| pair[0] == 4));
}

#[test]
fn table_csv_over_threshold_is_refused_with_exit_3() {
    let out = sboxtab(&["table", "bct", "-n", "12", "-d", "63", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("spectra"), "stderr: {err}");
}

#[test]
fn search_budget_exit_3() {
    assert_eq!(sboxtab(&["search", "-n", "11"]).status.code(), Some(3));
}

#[test]
fn verify_passes_and_writes_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("manifest.json");
    let out = sboxtab(&["verify", "--max-m", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["toolkit"], "sboxtab");
    let ids: Vec<&str> = v["outcomes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| o["claim_id"].as_str().unwrap())
        .collect();
    assert!(ids.contains(&"ddt-row-profile-m2"));
    assert!(ids.contains(&"boomerang-4-odd-m3"));
    assert!(ids.contains(&"boomerang-2-even-m2"));
    assert!(ids.contains(&"example-n6-d7"));
}

#[test]
fn search_output_lists_known_hit() {
    let v = stdout_json(&sboxtab(&["search", "-n", "6"]));
    let hit = v
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["d"] == 7)
        .expect("d=7 present");
    assert_eq!(hit["delta"], 6);
    assert_eq!(hit["boomerang"], 4);
}

#[test]
fn outputs_are_identical_across_thread_counts() {
    for args in [
        vec!["table", "bct", "-n", "6", "-d", "7", "--format", "json"],
        vec!["table", "ddt", "-n", "8", "-d", "45", "--format", "csv"],
        vec!["search", "-n", "6"],
    ] {
        let mut one = args.clone();
        one.extend(["--threads", "1"]);
        let mut four = args.clone();
        four.extend(["--threads", "4"]);
        assert_eq!(
            sboxtab(&one).stdout,
            sboxtab(&four).stdout,
            "args: {args:?}"
        );
    }
}

#[test]
fn csv_round_trip_reproduces_uniformity() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let out = sboxtab(&[
        "table", "ddt", "-n", "6", "-d", "7", "--format", "csv", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let file = std::fs::File::open(Path::new(&path)).unwrap();
    let table = sboxtab::export::read_table_csv(std::io::BufReader::new(file)).unwrap();
    assert_eq!(sboxtab::ddt::differential_uniformity(&table).unwrap(), 6);
}

#[test]
fn custom_modulus_flag() {
    // x^6+x^3+1 is the next irreducible sextic after the default.
    let v = stdout_json(&sboxtab(&[
        "analyze", "-n", "6", "-d", "7", "--modulus", "x^6+x^3+1",
    ]));
    assert_eq!(v["modulus"], "0x49");
    assert_eq!(v["delta"], 6);
    assert_eq!(v["boomerang"], 4);
}
