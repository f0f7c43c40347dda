//! Run configuration: a flat `key = value` text format with `#` comments.
//!
//! Times are entered in picoseconds as decimal strings with at most three
//! fractional digits (the lossless femtosecond syntax), lengths in
//! millimetres. Every key is optional; the defaults reproduce the reference
//! converter (64 Vernier stages of 102.7 ps / 77.7 ps, noise-free). Unknown
//! keys, duplicate keys and keys that do not apply to the selected
//! architecture or position mode are hard errors, so a typo can never be
//! silently ignored.

use crate::delay_line::DelayLineSpec;
use crate::error::Error;
use crate::rng::Seed;
use crate::tdc::{AnyTdc, FlashTdc, FlashTdcConfig, Tdc, VernierTdc, VernierTdcConfig};
use crate::time::{parse_ps_fs, Duration};
use crate::tofpet::{measurable_half_window_mm, DetectorGeometry, PositionSampler, C_MM_PER_NS};
use std::collections::BTreeMap;
use thiserror::Error as ThisError;

#[derive(Debug, Clone, PartialEq, ThisError)]
pub enum ConfigError {
    #[error("unknown config key `{0}`")]
    UnknownKey(String),

    #[error("duplicate config key `{0}`")]
    DuplicateKey(String),

    #[error("config line {line} is not `key = value`: {text:?}")]
    Syntax { line: usize, text: String },

    #[error("invalid value for `{key}`: {reason}")]
    InvalidValue { key: &'static str, reason: String },

    #[error("config key `{key}` does not apply: {reason}")]
    Inapplicable { key: &'static str, reason: String },

    #[error(transparent)]
    Domain(#[from] Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Architecture {
    Vernier,
    Flash,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PositionMode {
    Uniform,
    Fixed,
}

/// One accepted configuration key, for help text and schema tests.
pub struct KeyDoc {
    pub name: &'static str,
    pub doc: &'static str,
}

/// The complete config schema. Help output is generated from this table, so
/// the accepted-key set and the documented set cannot drift apart.
pub const CONFIG_KEYS: &[KeyDoc] = &[
    KeyDoc { name: "architecture", doc: "converter kind: vernier | flash (default vernier)" },
    KeyDoc { name: "n_stages", doc: "delay line stages, >= 1 (default 64)" },
    KeyDoc { name: "tau_slow_ps", doc: "vernier start-line stage delay in ps (default 102.7)" },
    KeyDoc { name: "tau_fast_ps", doc: "vernier stop-line stage delay in ps (default 77.7)" },
    KeyDoc { name: "tau_ps", doc: "flash stage delay in ps (default 100)" },
    KeyDoc { name: "mismatch_sigma_ps", doc: "static per-stage mismatch sigma in ps (default 0)" },
    KeyDoc { name: "jitter_sigma_ps", doc: "per-edge jitter sigma in ps (default 0)" },
    KeyDoc { name: "seed", doc: "base seed, unsigned 64-bit (default 1)" },
    KeyDoc { name: "sweep_min_ps", doc: "characterize: sweep start in ps (default 0)" },
    KeyDoc { name: "sweep_max_ps", doc: "characterize: sweep end in ps (default range + 1 LSB)" },
    KeyDoc { name: "sweep_step_ps", doc: "characterize: sweep step in ps (default LSB/10)" },
    KeyDoc { name: "separation_mm", doc: "detector separation in mm (default 800)" },
    KeyDoc { name: "c_mm_per_ns", doc: "speed of light in mm/ns (default 299.792458)" },
    KeyDoc { name: "n_events", doc: "tof: number of events (default 10000)" },
    KeyDoc { name: "position", doc: "tof event positions: uniform | fixed (default uniform)" },
    KeyDoc { name: "position_mm", doc: "tof fixed position in mm (default 0)" },
    KeyDoc { name: "position_min_mm", doc: "tof uniform lower bound in mm (default: measurable window)" },
    KeyDoc { name: "position_max_mm", doc: "tof uniform upper bound in mm (default: measurable window)" },
    KeyDoc { name: "probe_dt_ps", doc: "tof: skip the experiment and report c*dt/2 for this dt" },
];

/// Parsed and validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub architecture: Architecture,
    pub n_stages: usize,
    pub tau_slow: Duration,
    pub tau_fast: Duration,
    pub tau: Duration,
    pub mismatch_sigma: Duration,
    pub jitter_sigma: Duration,
    pub seed: Seed,
    pub sweep_min: Duration,
    pub sweep_max: Option<Duration>,
    pub sweep_step: Option<Duration>,
    pub separation_mm: f64,
    pub c_mm_per_ns: f64,
    pub n_events: u64,
    pub position: PositionMode,
    pub position_mm: f64,
    pub position_min_mm: Option<f64>,
    pub position_max_mm: Option<f64>,
    pub probe_dt: Option<Duration>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            architecture: Architecture::Vernier,
            n_stages: 64,
            tau_slow: Duration::from_fs(102_700),
            tau_fast: Duration::from_fs(77_700),
            tau: Duration::from_fs(100_000),
            mismatch_sigma: Duration::from_fs(0),
            jitter_sigma: Duration::from_fs(0),
            seed: Seed(1),
            sweep_min: Duration::from_fs(0),
            sweep_max: None,
            sweep_step: None,
            separation_mm: 800.0,
            c_mm_per_ns: C_MM_PER_NS,
            n_events: 10_000,
            position: PositionMode::Uniform,
            position_mm: 0.0,
            position_min_mm: None,
            position_max_mm: None,
            probe_dt: None,
        }
    }
}

fn parse_ps_key(key: &'static str, value: &str) -> Result<Duration, ConfigError> {
    parse_ps_fs(value)
        .map(Duration::from_fs)
        .map_err(|e| ConfigError::InvalidValue {
            key,
            reason: e.to_string(),
        })
}

fn parse_f64_key(key: &'static str, value: &str) -> Result<f64, ConfigError> {
    value
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| ConfigError::InvalidValue {
            key,
            reason: format!("expected a finite number, got {value:?}"),
        })
}

impl RunConfig {
    /// Parses the `key = value` text format. Unknown or duplicate keys and
    /// malformed values are errors naming the key.
    pub fn parse_str(text: &str) -> Result<Self, ConfigError> {
        let mut seen: BTreeMap<String, String> = BTreeMap::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line = raw_line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::Syntax {
                    line: idx + 1,
                    text: raw_line.to_string(),
                });
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if !CONFIG_KEYS.iter().any(|k| k.name == key) {
                return Err(ConfigError::UnknownKey(key));
            }
            if seen.insert(key.clone(), value).is_some() {
                return Err(ConfigError::DuplicateKey(key));
            }
        }
        Self::from_entries(&seen)
    }

    fn from_entries(entries: &BTreeMap<String, String>) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        let get = |name: &str| entries.get(name).map(String::as_str);

        if let Some(v) = get("architecture") {
            cfg.architecture = match v {
                "vernier" => Architecture::Vernier,
                "flash" => Architecture::Flash,
                other => {
                    return Err(ConfigError::InvalidValue {
                        key: "architecture",
                        reason: format!("expected `vernier` or `flash`, got {other:?}"),
                    })
                }
            };
        }
        if let Some(v) = get("n_stages") {
            cfg.n_stages = v
                .parse::<usize>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| ConfigError::InvalidValue {
                    key: "n_stages",
                    reason: format!("expected an integer >= 1, got {v:?}"),
                })?;
        }
        if let Some(v) = get("tau_slow_ps") {
            cfg.tau_slow = parse_ps_key("tau_slow_ps", v)?;
        }
        if let Some(v) = get("tau_fast_ps") {
            cfg.tau_fast = parse_ps_key("tau_fast_ps", v)?;
        }
        if let Some(v) = get("tau_ps") {
            cfg.tau = parse_ps_key("tau_ps", v)?;
        }
        if let Some(v) = get("mismatch_sigma_ps") {
            cfg.mismatch_sigma = parse_ps_key("mismatch_sigma_ps", v)?;
        }
        if let Some(v) = get("jitter_sigma_ps") {
            cfg.jitter_sigma = parse_ps_key("jitter_sigma_ps", v)?;
        }
        if let Some(v) = get("seed") {
            cfg.seed = Seed(v.parse::<u64>().map_err(|_| ConfigError::InvalidValue {
                key: "seed",
                reason: format!("expected an unsigned 64-bit integer, got {v:?}"),
            })?);
        }
        if let Some(v) = get("sweep_min_ps") {
            cfg.sweep_min = parse_ps_key("sweep_min_ps", v)?;
        }
        if let Some(v) = get("sweep_max_ps") {
            cfg.sweep_max = Some(parse_ps_key("sweep_max_ps", v)?);
        }
        if let Some(v) = get("sweep_step_ps") {
            cfg.sweep_step = Some(parse_ps_key("sweep_step_ps", v)?);
        }
        if let Some(v) = get("separation_mm") {
            cfg.separation_mm = parse_f64_key("separation_mm", v)?;
        }
        if let Some(v) = get("c_mm_per_ns") {
            cfg.c_mm_per_ns = parse_f64_key("c_mm_per_ns", v)?;
        }
        if let Some(v) = get("n_events") {
            cfg.n_events = v.parse::<u64>().map_err(|_| ConfigError::InvalidValue {
                key: "n_events",
                reason: format!("expected an unsigned integer, got {v:?}"),
            })?;
        }
        if let Some(v) = get("position") {
            cfg.position = match v {
                "uniform" => PositionMode::Uniform,
                "fixed" => PositionMode::Fixed,
                other => {
                    return Err(ConfigError::InvalidValue {
                        key: "position",
                        reason: format!("expected `uniform` or `fixed`, got {other:?}"),
                    })
                }
            };
        }
        if let Some(v) = get("position_mm") {
            cfg.position_mm = parse_f64_key("position_mm", v)?;
        }
        if let Some(v) = get("position_min_mm") {
            cfg.position_min_mm = Some(parse_f64_key("position_min_mm", v)?);
        }
        if let Some(v) = get("position_max_mm") {
            cfg.position_max_mm = Some(parse_f64_key("position_max_mm", v)?);
        }
        if let Some(v) = get("probe_dt_ps") {
            cfg.probe_dt = Some(parse_ps_key("probe_dt_ps", v)?);
        }

        // architecture- and mode-specific keys must not be set when unused
        match cfg.architecture {
            Architecture::Vernier => {
                if entries.contains_key("tau_ps") {
                    return Err(ConfigError::Inapplicable {
                        key: "tau_ps",
                        reason: "architecture is vernier; use tau_slow_ps / tau_fast_ps".into(),
                    });
                }
            }
            Architecture::Flash => {
                for key in ["tau_slow_ps", "tau_fast_ps"] {
                    if entries.contains_key(key) {
                        return Err(ConfigError::Inapplicable {
                            key: if key == "tau_slow_ps" { "tau_slow_ps" } else { "tau_fast_ps" },
                            reason: "architecture is flash; use tau_ps".into(),
                        });
                    }
                }
            }
        }
        match cfg.position {
            PositionMode::Uniform => {
                if entries.contains_key("position_mm") {
                    return Err(ConfigError::Inapplicable {
                        key: "position_mm",
                        reason: "position is uniform; use position_min_mm / position_max_mm".into(),
                    });
                }
            }
            PositionMode::Fixed => {
                for (key, name) in [
                    ("position_min_mm", "position_min_mm"),
                    ("position_max_mm", "position_max_mm"),
                ] {
                    if entries.contains_key(key) {
                        return Err(ConfigError::Inapplicable {
                            key: name,
                            reason: "position is fixed; use position_mm".into(),
                        });
                    }
                }
            }
        }

        Ok(cfg)
    }

    /// Realizes the configured converter (mismatch drawn from `seed`).
    pub fn build_tdc(&self) -> Result<AnyTdc, ConfigError> {
        match self.architecture {
            Architecture::Vernier => {
                let slow = DelayLineSpec::new(
                    self.n_stages,
                    self.tau_slow,
                    self.mismatch_sigma,
                    self.jitter_sigma,
                )?;
                let fast = DelayLineSpec::new(
                    self.n_stages,
                    self.tau_fast,
                    self.mismatch_sigma,
                    self.jitter_sigma,
                )?;
                let cfg = VernierTdcConfig::new(slow, fast)?;
                Ok(AnyTdc::Vernier(VernierTdc::realize(cfg, self.seed)?))
            }
            Architecture::Flash => {
                let line = DelayLineSpec::new(
                    self.n_stages,
                    self.tau,
                    self.mismatch_sigma,
                    self.jitter_sigma,
                )?;
                let cfg = FlashTdcConfig::new(line)?;
                Ok(AnyTdc::Flash(FlashTdc::realize(cfg, self.seed)?))
            }
        }
    }

    pub fn geometry(&self) -> Result<DetectorGeometry, ConfigError> {
        Ok(DetectorGeometry::new(self.separation_mm, self.c_mm_per_ns)?)
    }

    /// Resolves the event-position sampler; uniform bounds default to the
    /// converter's measurable window.
    pub fn sampler(
        &self,
        geom: &DetectorGeometry,
        tdc: &AnyTdc,
    ) -> Result<PositionSampler, ConfigError> {
        match self.position {
            PositionMode::Fixed => Ok(PositionSampler::Fixed(self.position_mm)),
            PositionMode::Uniform => {
                let window = measurable_half_window_mm(geom, tdc);
                Ok(PositionSampler::Uniform {
                    min_mm: self.position_min_mm.unwrap_or(-window),
                    max_mm: self.position_max_mm.unwrap_or(window),
                })
            }
        }
    }

    /// Characterize-sweep grid with defaults derived from the metrics:
    /// 0 to one LSB past full scale, stepped at LSB/10.
    pub fn sweep_grid(&self, tdc: &AnyTdc) -> (Duration, Duration, Duration) {
        let metrics = tdc.metrics();
        let max = self.sweep_max.unwrap_or(Duration::from_fs(
            metrics.full_scale_range.as_fs() + metrics.lsb.as_fs(),
        ));
        let step = self
            .sweep_step
            .unwrap_or(Duration::from_fs((metrics.lsb.as_fs() / 10).max(1)));
        (self.sweep_min, max, step)
    }
}
