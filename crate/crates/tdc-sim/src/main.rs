//! `tdc-sim`: reproducible converter runs from one invocation.
//!
//! Subcommands: `convert` one interval to a CSV row, `characterize` a
//! configuration into transfer-curve/nonlinearity files, `tof` a detector
//! pair experiment into event/summary files, `info` the static metrics.
//! Every subcommand is a pure function of (config file, flags): re-running
//! with the same inputs produces byte-identical output.
//!
//! Exit codes: 0 success, 1 configuration or I/O error, 2 success with a
//! flagged conversion (under/overrange); the row is still printed.

use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use vernier_tdc::{
    characterization, report, svg, Architecture, RunConfig, Seed, Tdc, Time, CONFIG_KEYS,
};

fn config_key_help() -> String {
    let mut out = String::from("Config file keys (key = value, `#` comments):\n");
    for key in CONFIG_KEYS {
        out.push_str(&format!("  {:<18} {}\n", key.name, key.doc));
    }
    out
}

#[derive(Parser)]
#[command(name = "tdc-sim", version, about = "Behavioral Vernier delay-line TDC simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Configuration file (defaults to the built-in reference design).
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output directory for report files.
    #[arg(long, value_name = "DIR", default_value = "out")]
    out: PathBuf,

    /// Override the config seed.
    #[arg(long, value_name = "U64")]
    seed: Option<u64>,

    /// Also emit SVG plots alongside the reports.
    #[arg(long)]
    svg: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Convert one start/stop pair and print the result as a CSV row.
    #[command(after_help = config_key_help())]
    Convert {
        #[command(flatten)]
        common: Common,
        /// Start edge in picoseconds (e.g. 2500).
        t_start_ps: String,
        /// Stop edge in picoseconds (e.g. 4000).
        t_stop_ps: String,
    },
    /// Sweep the transfer curve and report transitions, DNL and INL.
    #[command(after_help = config_key_help())]
    Characterize {
        #[command(flatten)]
        common: Common,
    },
    /// Run a detector-pair localization experiment (or a single probe).
    #[command(after_help = config_key_help())]
    Tof {
        #[command(flatten)]
        common: Common,
    },
    /// Print the converter metrics for a configuration.
    #[command(after_help = config_key_help())]
    Info {
        #[command(flatten)]
        common: Common,
    },
}

enum CmdError {
    /// Anything that should exit 1 with a message on stderr.
    Fail(String),
}

impl<E: std::fmt::Display> From<E> for CmdError {
    fn from(e: E) -> Self {
        CmdError::Fail(e.to_string())
    }
}

fn load_config(common: &Common) -> Result<RunConfig, CmdError> {
    let mut cfg = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CmdError::Fail(format!("cannot read {}: {e}", path.display())))?;
            RunConfig::parse_str(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(seed) = common.seed {
        cfg.seed = Seed(seed);
    }
    Ok(cfg)
}

fn ensure_out_dir(dir: &Path) -> Result<(), CmdError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CmdError::Fail(format!("cannot create {}: {e}", dir.display())))
}

fn write_report(dir: &Path, name: &str, contents: &str) -> Result<(), CmdError> {
    let path = dir.join(name);
    report::write_atomic(&path, contents)
        .map_err(|e| CmdError::Fail(format!("cannot write {}: {e}", path.display())))
}

/// Renders a measured-LSB style value: integral femtoseconds print bare,
/// anything else with two decimals.
fn format_fs_value(fs: f64) -> String {
    if fs.fract() == 0.0 {
        format!("{}", fs as i64)
    } else {
        format!("{fs:.2}")
    }
}

fn cmd_convert(common: &Common, t_start_ps: &str, t_stop_ps: &str) -> Result<u8, CmdError> {
    let cfg = load_config(common)?;
    let tdc = cfg.build_tdc()?;
    let t_start = Time::from_ps(t_start_ps)?;
    let t_stop = Time::from_ps(t_stop_ps)?;
    let result = tdc.convert(t_start, t_stop, cfg.seed)?;
    println!("{}", report::conversion_csv_row(t_start, t_stop, &result));
    Ok(if result.code.flags.any() { 2 } else { 0 })
}

fn cmd_characterize(common: &Common) -> Result<u8, CmdError> {
    let cfg = load_config(common)?;
    let tdc = cfg.build_tdc()?;
    let metrics = tdc.metrics();
    let (min, max, step) = cfg.sweep_grid(&tdc);

    let curve = characterization::sweep_transfer(&tdc, min, max, step)?;
    let transitions = characterization::measure_transitions(&tdc)?;
    let nonlinearity = characterization::dnl_inl(&transitions, metrics.lsb)?;

    ensure_out_dir(&common.out)?;
    write_report(&common.out, "transfer_curve.csv", &report::transfer_curve_csv(&curve))?;
    write_report(
        &common.out,
        "nonlinearity.json",
        &report::nonlinearity_json(&nonlinearity),
    )?;
    if common.svg {
        write_report(&common.out, "transfer_curve.svg", &svg::transfer_curve_svg(&curve))?;
    }

    // measured LSB = mean transition spacing, exact for a uniform staircase
    let spacing_fs = (nonlinearity.transitions_fs[nonlinearity.transitions_fs.len() - 1]
        - nonlinearity.transitions_fs[0]) as f64
        / (nonlinearity.transitions_fs.len() - 1) as f64;
    println!(
        "lsb_fs={} dnl_peak={:.3} inl_peak={:.3}",
        format_fs_value(spacing_fs),
        nonlinearity.dnl_peak,
        nonlinearity.inl_peak
    );
    Ok(0)
}

fn cmd_tof(common: &Common) -> Result<u8, CmdError> {
    let cfg = load_config(common)?;
    let geom = cfg.geometry()?;

    if let Some(dt) = cfg.probe_dt {
        // probe mode: map one timing difference to displacement, no events
        let dd = vernier_tdc::displacement(dt, &geom);
        println!("probe_dt_ps={} dd_mm={dd:.3}", dt.format_ps());
        return Ok(0);
    }

    let tdc = cfg.build_tdc()?;
    let sampler = cfg.sampler(&geom, &tdc)?;
    let result = vernier_tdc::run_experiment(&geom, &tdc, cfg.n_events, &sampler, cfg.seed)?;

    ensure_out_dir(&common.out)?;
    write_report(&common.out, "events.csv", &report::events_csv(&result))?;
    write_report(&common.out, "tof_summary.json", &report::experiment_json(&result))?;
    if common.svg {
        write_report(
            &common.out,
            "error_histogram.svg",
            &svg::error_histogram_svg(&result.histogram),
        )?;
    }
    println!(
        "n_events={} mean_abs_err_mm={:.6} max_abs_err_mm={:.6} fwhm_mm={:.6}",
        result.summary.n_events,
        result.summary.mean_abs_err_mm,
        result.summary.max_abs_err_mm,
        result.summary.fwhm_mm
    );
    Ok(0)
}

fn cmd_info(common: &Common) -> Result<u8, CmdError> {
    let cfg = load_config(common)?;
    let tdc = cfg.build_tdc()?;
    let metrics = tdc.metrics();
    let architecture = match cfg.architecture {
        Architecture::Vernier => "vernier",
        Architecture::Flash => "flash",
    };
    println!("architecture={architecture}");
    println!("n_stages={}", metrics.n_stages);
    println!("lsb_fs={}", metrics.lsb.as_fs());
    println!("lsb_ps={}", metrics.lsb.format_ps());
    println!("full_scale_range_fs={}", metrics.full_scale_range.as_fs());
    println!("n_codes={}", metrics.n_codes);
    println!("seed={}", cfg.seed.0);
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version are successful exits; usage errors are not
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Convert {
            common,
            t_start_ps,
            t_stop_ps,
        } => cmd_convert(common, t_start_ps, t_stop_ps),
        Command::Characterize { common } => cmd_characterize(common),
        Command::Tof { common } => cmd_tof(common),
        Command::Info { common } => cmd_info(common),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(CmdError::Fail(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
