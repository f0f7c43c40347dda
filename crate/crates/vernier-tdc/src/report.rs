//! Deterministic report emission.
//!
//! Every emitter produces the same bytes for the same inputs: `.` decimal
//! separator, LF line endings, fixed column orders. Files are written to a
//! temporary sibling and renamed into place so readers never observe a
//! partial report.

use crate::characterization::{NonlinearityReport, PrecisionReport, TransferCurve};
use crate::tdc::ConversionResult;
use crate::time::Time;
use crate::tofpet::ExperimentResult;
use serde::Serialize;
use std::fmt::Write as _;
use std::io;
use std::path::Path;

pub const CONVERSION_CSV_HEADER: &str = "t_start_fs,t_stop_fs,code,bits,flags,dt_est_fs";
pub const CURVE_CSV_HEADER: &str = "dt_fs,code";
pub const EVENTS_CSV_HEADER: &str = "event_id,x_true_mm,t1_fs,t2_fs,code,x_est_mm,err_mm";

/// One conversion as a CSV row (no header, no newline).
pub fn conversion_csv_row(t_start: Time, t_stop: Time, result: &ConversionResult) -> String {
    format!(
        "{},{},{},{},{},{}",
        t_start.as_fs(),
        t_stop.as_fs(),
        result.code.value,
        result.code.bit_string(),
        result.code.flags,
        result.delta_t_estimate.as_fs()
    )
}

pub fn transfer_curve_csv(curve: &TransferCurve) -> String {
    let mut out = String::with_capacity(16 * curve.points().len() + 16);
    out.push_str(CURVE_CSV_HEADER);
    out.push('\n');
    for &(dt, code) in curve.points() {
        let _ = writeln!(out, "{},{}", dt.as_fs(), code);
    }
    out
}

pub fn events_csv(result: &ExperimentResult) -> String {
    let mut out = String::with_capacity(48 * result.records.len() + 48);
    out.push_str(EVENTS_CSV_HEADER);
    out.push('\n');
    for r in &result.records {
        let _ = writeln!(
            out,
            "{},{:.6},{},{},{},{:.6},{:.6}",
            r.event_id,
            r.x_true_mm,
            r.t1.as_fs(),
            r.t2.as_fs(),
            r.code,
            r.x_est_mm,
            r.err_mm
        );
    }
    out
}

pub fn nonlinearity_json(report: &NonlinearityReport) -> String {
    to_json(report)
}

pub fn precision_json(report: &PrecisionReport) -> String {
    to_json(report)
}

/// Experiment summary with the error histogram inlined.
pub fn experiment_json(result: &ExperimentResult) -> String {
    #[derive(Serialize)]
    struct Doc<'a> {
        n_events: u64,
        mean_abs_err_mm: f64,
        max_abs_err_mm: f64,
        fwhm_mm: f64,
        histogram: &'a crate::tofpet::ErrorHistogram,
    }
    to_json(&Doc {
        n_events: result.summary.n_events,
        mean_abs_err_mm: result.summary.mean_abs_err_mm,
        max_abs_err_mm: result.summary.max_abs_err_mm,
        fwhm_mm: result.summary.fwhm_mm,
        histogram: &result.histogram,
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    text
}

/// Writes via a temporary sibling plus rename, so the final path appears
/// atomically.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delay_line::DelayLineSpec;
    use crate::rng::Seed;
    use crate::tdc::{Tdc, VernierTdc, VernierTdcConfig};
    use crate::time::Duration;

    fn converted(dt_fs: i64) -> (Time, Time, ConversionResult) {
        let cfg = VernierTdcConfig::new(
            DelayLineSpec::ideal(8, Duration::from_fs(102_700)).unwrap(),
            DelayLineSpec::ideal(8, Duration::from_fs(77_700)).unwrap(),
        )
        .unwrap();
        let tdc = VernierTdc::realize(cfg, Seed(0)).unwrap();
        let (start, stop) = (Time::from_fs(0), Time::from_fs(dt_fs));
        let result = tdc.convert(start, stop, Seed(0)).unwrap();
        (start, stop, result)
    }

    #[test]
    fn conversion_row_has_the_documented_columns() {
        let (start, stop, result) = converted(110_000);
        assert_eq!(
            conversion_csv_row(start, stop, &result),
            "0,110000,4,0100,-,112500"
        );
    }

    #[test]
    fn flagged_conversion_rows_name_the_flags() {
        let (start, stop, result) = converted(-5_000);
        assert_eq!(
            conversion_csv_row(start, stop, &result),
            "0,-5000,0,0000,underrange,12500"
        );
    }

    #[test]
    fn nonlinearity_json_has_the_documented_keys() {
        let report = NonlinearityReport {
            lsb_fs: 25_000,
            transitions_fs: vec![25_001, 50_001],
            dnl: vec![0.0],
            inl: vec![0.0, 0.0],
            dnl_peak: 0.0,
            inl_peak: 0.0,
        };
        let json = nonlinearity_json(&report);
        for key in ["lsb_fs", "transitions_fs", "dnl", "inl", "dnl_peak", "inl_peak"] {
            assert!(json.contains(&format!("\"{key}\"")), "missing {key}");
        }
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["lsb_fs"], 25_000);
    }

    #[test]
    fn precision_json_carries_the_histogram() {
        use crate::characterization::single_shot;
        let cfg = VernierTdcConfig::new(
            DelayLineSpec::new(
                8,
                Duration::from_fs(102_700),
                Duration::from_fs(0),
                Duration::from_fs(2_000),
            )
            .unwrap(),
            DelayLineSpec::new(
                8,
                Duration::from_fs(77_700),
                Duration::from_fs(0),
                Duration::from_fs(2_000),
            )
            .unwrap(),
        )
        .unwrap();
        let tdc = VernierTdc::realize(cfg, Seed(0)).unwrap();
        let report = single_shot(&tdc, Duration::from_fs(100_000), 200, Seed(4)).unwrap();
        assert_eq!(report.histogram.values().sum::<u64>(), report.n_trials);
        let json = precision_json(&report);
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["n_trials"], 200);
        assert!(parsed["histogram"].is_object());
    }

    #[test]
    fn atomic_write_replaces_and_leaves_no_temp() {
        let dir = std::env::temp_dir().join(format!("vtdc-report-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("report.csv");
        write_atomic(&path, "first\n").unwrap();
        write_atomic(&path, "second\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "second\n");
        assert!(!dir.join("report.csv.tmp").exists());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
