//! CLI behavior: exit codes, error messages, help/schema agreement.

use std::path::Path;
use std::process::{Command, Output};
use vernier_tdc::CONFIG_KEYS;

fn tdc_sim(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tdc-sim"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn convert_defaults_reproduce_the_reference_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = tdc_sim(&["convert", "2500", "4000"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "2500000,4000000,59,0111011,-,1487500\n");
}

#[test]
fn convert_equal_edges_is_code_zero_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = tdc_sim(&["convert", "1000", "1000"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("1000000,1000000,0,"));
}

#[test]
fn convert_underrange_prints_the_row_and_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = tdc_sim(&["convert", "4000", "2500"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let row = stdout(&out);
    assert!(row.contains("underrange"), "row: {row}");
    assert!(row.starts_with("4000000,2500000,0,"));
}

#[test]
fn convert_overrange_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = tdc_sim(&["convert", "0", "99999"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("overrange"));
}

#[test]
fn unknown_config_key_exits_1_naming_it() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.cfg"), "tau_slw_ps = 102.7\n").unwrap();
    let out = tdc_sim(&["convert", "--config", "bad.cfg", "0", "100"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("tau_slw_ps"), "stderr: {}", stderr(&out));
    assert!(stdout(&out).is_empty());
}

#[test]
fn missing_config_file_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = tdc_sim(&["info", "--config", "nope.cfg"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("nope.cfg"));
}

#[test]
fn bad_time_literal_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = tdc_sim(&["convert", "2500", "4000.0001"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("4000.0001"));
}

#[test]
fn unwritable_out_dir_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    // a file where the out directory should go
    std::fs::write(dir.path().join("blocked"), "").unwrap();
    let out = tdc_sim(&["characterize", "--out", "blocked/sub"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("blocked"));
}

#[test]
fn jittered_characterize_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("j.cfg"), "jitter_sigma_ps = 2\n").unwrap();
    let out = tdc_sim(&["characterize", "--config", "j.cfg"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("jitter"));
}

#[test]
fn characterize_reports_the_reference_summary_line() {
    let dir = tempfile::tempdir().unwrap();
    let out = tdc_sim(&["characterize", "--out", "o"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "lsb_fs=25000 dnl_peak=0.000 inl_peak=0.000\n");
    assert!(dir.path().join("o/transfer_curve.csv").exists());
    assert!(dir.path().join("o/nonlinearity.json").exists());
    assert!(!dir.path().join("o/transfer_curve.svg").exists());
}

#[test]
fn characterize_flash_reports_its_stage_delay() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("f.cfg"),
        "architecture = flash\ntau_ps = 100\nn_stages = 16\n",
    )
    .unwrap();
    let out = tdc_sim(&["characterize", "--config", "f.cfg", "--out", "o"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("lsb_fs=100000 "));
}

#[test]
fn svg_flag_adds_plots() {
    let dir = tempfile::tempdir().unwrap();
    let out = tdc_sim(&["characterize", "--out", "o", "--svg"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("o/transfer_curve.svg").exists());
    std::fs::write(dir.path().join("t.cfg"), "n_events = 50\n").unwrap();
    let out = tdc_sim(&["tof", "--config", "t.cfg", "--out", "t", "--svg"], dir.path());
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(dir.path().join("t/error_histogram.svg").exists());
}

#[test]
fn tof_probe_mode_reports_the_displacement() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("probe.cfg"),
        "c_mm_per_ns = 300\nprobe_dt_ps = 66\n",
    )
    .unwrap();
    let out = tdc_sim(&["tof", "--config", "probe.cfg"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "probe_dt_ps=66 dd_mm=9.900\n");
}

#[test]
fn default_tof_run_respects_the_quantization_bound() {
    let dir = tempfile::tempdir().unwrap();
    let out = tdc_sim(&["tof", "--out", "o"], dir.path());
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let summary = stdout(&out);
    let max_abs: f64 = summary
        .split_whitespace()
        .find_map(|kv| kv.strip_prefix("max_abs_err_mm="))
        .expect("summary has max_abs_err_mm")
        .parse()
        .unwrap();
    assert!(max_abs <= 1.88, "max_abs_err_mm {max_abs}");
    let csv = std::fs::read_to_string(dir.path().join("o/events.csv")).unwrap();
    assert_eq!(csv.lines().count(), 10_001, "header plus 10^4 events");
}

#[test]
fn tof_single_fixed_event_writes_one_data_row() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("one.cfg"),
        "n_events = 1\nposition = fixed\nposition_mm = 0\n",
    )
    .unwrap();
    let out = tdc_sim(&["tof", "--config", "one.cfg", "--out", "o"], dir.path());
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let csv = std::fs::read_to_string(dir.path().join("o/events.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 2, "header plus one row: {csv}");
    assert!(lines[0].starts_with("event_id,"));
}

#[test]
fn seed_flag_overrides_the_config() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("s.cfg"), "seed = 7\n").unwrap();
    let with_cfg = tdc_sim(&["info", "--config", "s.cfg"], dir.path());
    assert!(stdout(&with_cfg).contains("seed=7"));
    let with_flag = tdc_sim(&["info", "--config", "s.cfg", "--seed", "99"], dir.path());
    assert!(stdout(&with_flag).contains("seed=99"));
}

#[test]
fn help_lists_exactly_the_config_schema() {
    let dir = tempfile::tempdir().unwrap();
    for sub in ["convert", "characterize", "tof", "info"] {
        let out = tdc_sim(&[sub, "--help"], dir.path());
        assert_eq!(out.status.code(), Some(0));
        let help = stdout(&out);
        let listed: Vec<&str> = help
            .lines()
            .skip_while(|l| !l.starts_with("Config file keys"))
            .skip(1)
            .take_while(|l| l.starts_with("  "))
            .filter_map(|l| l.split_whitespace().next())
            .collect();
        let schema: Vec<&str> = CONFIG_KEYS.iter().map(|k| k.name).collect();
        assert_eq!(listed, schema, "{sub} --help config keys drifted");
    }
}

#[test]
fn usage_errors_exit_1_and_help_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let out = tdc_sim(&["convert", "--no-such-flag"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let out = tdc_sim(&["--help"], dir.path());
    assert_eq!(out.status.code(), Some(0));
}
