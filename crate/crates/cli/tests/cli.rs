// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::process::{Command, Output};

fn spon(args: &[&str]) -> Output {
    spon_in(args, None)
}

fn spon_in(args: &[&str], out_dir_env: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spon"));
    cmd.args(args).env_remove("SPON_OUT_DIR");
    if let Some(dir) = out_dir_env {
        cmd.env("SPON_OUT_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_record(o: &Output) -> serde_json::Value {
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    let line = err.lines().last().expect("stderr has a record");
    serde_json::from_str(line).expect("last stderr line is JSON")
}

#[test]
fn power_preset_prints_headline_numbers() {
    let o = spon(&["power", "--preset", "paper-1m3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "device_w,wall_w,synapse_events_per_s,events_per_s_per_w_device,events_per_s_per_w_wall,brain_events_per_s_per_w"
    );
    assert_eq!(lines.next().unwrap(), "1.96,1960,9.8e16,5e16,5e13,7e12");
}

#[test]
fn spike_prob_csv_has_one_row_per_point() {
    let o = spon(&["spike-prob", "--trials", "200", "--bias", "0.3,0.9", "--photons", "0,20,2000", "--seed", "9"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "bias_fraction,n_photons,probability");
    assert_eq!(rows.len(), 7);
    assert!(rows.contains(&"0.3,0,0"));
    assert!(rows.contains(&"0.9,2000,1"));
}

#[test]
fn missing_config_is_an_io_error() {
    let o = spon(&["simulate", "--config", "/definitely/missing.json"]);
    assert_eq!(o.status.code(), Some(4));
    let rec = error_record(&o);
    assert_eq!(rec["error"], "io");
    assert_eq!(rec["exit_code"], 4);
}

#[test]
fn unknown_keys_and_mismatched_commands_are_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"experiment": {"energy": {"colling": 3}}}"#).unwrap();
    let o = spon(&["energy", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_record(&o)["error"], "config");

    let good = dir.path().join("good.json");
    std::fs::write(&good, r#"{"experiment": {"energy": {}}}"#).unwrap();
    let o = spon(&["power", "--config", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let o = spon(&["energy", "--no-such-flag"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_three() {
    let o = spon(&["threshold-scan", "--bias", "0.05", "--cap", "2", "--trials", "50"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(error_record(&o)["error"], "domain");

    let o = spon(&["spike-prob", "--alpha", "1.5", "--trials", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn run_record_replays_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.csv");
    let o = spon(&["simulate", "--until", "400", "--sweep", "2", "--seed", "17", "--out", first.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let record = dir.path().join("first.run.json");
    let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(&record).unwrap()).unwrap();
    assert_eq!(doc["seed"], 17);
    assert_eq!(doc["experiment"]["simulate"]["sweep"], 2);

    let second = dir.path().join("second.csv");
    let o = spon(&["simulate", "--config", record.to_str().unwrap(), "--out", second.to_str().unwrap()]);
    assert!(o.status.success());
    let a = std::fs::read(&first).unwrap();
    assert!(a.len() > 40);
    assert_eq!(a, std::fs::read(&second).unwrap());
}

#[test]
fn sequential_flag_does_not_change_results() {
    let args = ["absorb-stats", "--trials", "300", "--incident", "50,500", "--seed", "2"];
    let par = stdout(&spon(&args));
    let mut seq_args = args.to_vec();
    seq_args.push("--sequential");
    assert_eq!(par, stdout(&spon(&seq_args)));
}

#[test]
fn out_dir_env_is_used_after_flags() {
    let env_dir = tempfile::tempdir().unwrap();
    let o = spon_in(&["floorplan", "--format", "json"], Some(env_dir.path()));
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let doc: serde_json::Value =
        serde_json::from_slice(&std::fs::read(env_dir.path().join("floorplan.json")).unwrap()).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 14);
    assert!(env_dir.path().join("floorplan.run.json").exists());

    let flag_dir = tempfile::tempdir().unwrap();
    let o = spon_in(&["floorplan", "--out-dir", flag_dir.path().to_str().unwrap()], Some(env_dir.path()));
    assert!(o.status.success());
    assert!(flag_dir.path().join("floorplan.csv").exists());
    assert!(!env_dir.path().join("floorplan.csv").exists());
}

#[test]
fn binary_traces_match_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run.csv");
    let o = spon(&["simulate", "--until", "500", "--binary-trace", "--seed", "5", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let bytes = std::fs::read(dir.path().join("run.trace.bin")).unwrap();
    let rows = std::fs::read_to_string(&out).unwrap().lines().count() - 1;
    assert_eq!(bytes.len(), rows * 16);

    let o = spon(&["simulate", "--binary-trace"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn info_lists_defaults() {
    let o = spon(&["info"]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(doc["defaults"]["spike-prob"]["trials"].is_u64());
    assert!(doc["parallel"].is_boolean());
}
