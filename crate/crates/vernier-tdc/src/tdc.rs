//! Complete converter models.
//!
//! [`VernierTdc`] races the start edge down a slow delay line against the
//! stop edge down a slightly faster one; stage k's arbiter fires 1 exactly
//! when `k * (tau_slow - tau_fast) < stop - start`, so the effective
//! resolution is the *difference* of the two stage delays, below a single
//! gate delay. [`FlashTdc`] is the single-line baseline: the start edge is
//! tapped every `tau` and compared against the undelayed stop edge, so its
//! resolution is the full stage delay. Comparing the two on the same
//! interval shows the Vernier gain directly.
//!
//! Conventions shared by both converters:
//! * A stop edge strictly before the start edge clamps the code to 0 and
//!   sets the underrange flag.
//! * An interval that saturates all stages keeps value N and sets overrange.
//! * The interval estimate is the bin midpoint `(value + 1/2) * LSB`,
//!   computed exactly in fs when the LSB is even and rounded toward zero
//!   otherwise.

use crate::delay_line::{realize_delay_line, tap_times, DelayLineInstance, DelayLineSpec};
use crate::error::{Error, Result};
use crate::rng::{sub_seed, Seed};
use crate::sampler::{priority_encode, sample_bank, BinaryCode, ThermometerCode};
use crate::time::{Duration, Time};

/// Configuration of a Vernier converter: two delay lines with equal stage
/// counts, the start (slow) line strictly slower per stage than the stop
/// (fast) line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VernierTdcConfig {
    pub slow_line: DelayLineSpec,
    pub fast_line: DelayLineSpec,
}

impl VernierTdcConfig {
    pub fn new(slow_line: DelayLineSpec, fast_line: DelayLineSpec) -> Result<Self> {
        if slow_line.n_stages != fast_line.n_stages {
            return Err(Error::InvalidSpec(format!(
                "delay lines must have equal stage counts ({} vs {})",
                slow_line.n_stages, fast_line.n_stages
            )));
        }
        if slow_line.nominal_stage_delay <= fast_line.nominal_stage_delay {
            return Err(Error::InvalidSpec(format!(
                "slow stage delay ({} fs) must exceed fast stage delay ({} fs), otherwise the LSB is not positive",
                slow_line.nominal_stage_delay.as_fs(),
                fast_line.nominal_stage_delay.as_fs()
            )));
        }
        Ok(VernierTdcConfig {
            slow_line,
            fast_line,
        })
    }

    /// The converter from the reference design: 102.7 ps / 77.7 ps stages
    /// (25 ps LSB), 64 stages, no mismatch, no jitter.
    pub fn reference_design() -> Self {
        VernierTdcConfig {
            slow_line: DelayLineSpec::ideal(64, Duration::from_fs(102_700))
                .expect("valid constant"),
            fast_line: DelayLineSpec::ideal(64, Duration::from_fs(77_700))
                .expect("valid constant"),
        }
    }

    pub fn n_stages(&self) -> usize {
        self.slow_line.n_stages
    }
}

/// Configuration of the single-line flash baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlashTdcConfig {
    pub line: DelayLineSpec,
}

impl FlashTdcConfig {
    pub fn new(line: DelayLineSpec) -> Result<Self> {
        Ok(FlashTdcConfig { line })
    }

    pub fn n_stages(&self) -> usize {
        self.line.n_stages
    }
}

/// Static figures of a converter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TdcMetrics {
    /// Time width of one code bin.
    pub lsb: Duration,
    /// `n_stages * lsb`: intervals beyond this saturate.
    pub full_scale_range: Duration,
    /// `n_stages + 1` distinct output codes.
    pub n_codes: u32,
    pub n_stages: usize,
}

/// One completed conversion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConversionResult {
    pub code: BinaryCode,
    pub thermometer: ThermometerCode,
    /// Bin-midpoint reconstruction `(value + 1/2) * LSB`.
    pub delta_t_estimate: Duration,
}

/// A realized time-to-digital converter: immutable after construction,
/// conversions are pure functions of (instance, edges, seed).
pub trait Tdc {
    fn convert(&self, t_start: Time, t_stop: Time, seed: Seed) -> Result<ConversionResult>;
    fn metrics(&self) -> TdcMetrics;
    /// Largest per-edge jitter sigma of any internal line; sweeps demand 0.
    fn jitter_sigma(&self) -> Duration;
}

fn midpoint_estimate(value: u32, lsb: Duration) -> Result<Duration> {
    // (2v + 1) * lsb / 2, truncated toward zero when lsb is odd
    let numerator = lsb.checked_mul(2 * value as i64 + 1)?;
    Ok(Duration::from_fs(numerator.as_fs() / 2))
}

fn encode(
    thermometer: ThermometerCode,
    underrange: bool,
    lsb: Duration,
) -> Result<ConversionResult> {
    let mut code = priority_encode(&thermometer);
    if underrange {
        code.value = 0;
        code.flags.underrange = true;
        code.flags.overrange = false;
    }
    let delta_t_estimate = midpoint_estimate(code.value, lsb)?;
    Ok(ConversionResult {
        code,
        thermometer,
        delta_t_estimate,
    })
}

/// A realized Vernier converter.
#[derive(Debug, Clone)]
pub struct VernierTdc {
    config: VernierTdcConfig,
    slow: DelayLineInstance,
    fast: DelayLineInstance,
}

impl VernierTdc {
    /// Realizes both lines, drawing static mismatch once. The slow line uses
    /// sub-stream 0 of `seed`, the fast line sub-stream 1.
    pub fn realize(config: VernierTdcConfig, seed: Seed) -> Result<Self> {
        let slow = realize_delay_line(&config.slow_line, sub_seed(seed, 0))?;
        let fast = realize_delay_line(&config.fast_line, sub_seed(seed, 1))?;
        Ok(VernierTdc { config, slow, fast })
    }

    pub fn config(&self) -> &VernierTdcConfig {
        &self.config
    }

    pub fn slow_line(&self) -> &DelayLineInstance {
        &self.slow
    }

    pub fn fast_line(&self) -> &DelayLineInstance {
        &self.fast
    }
}

impl Tdc for VernierTdc {
    /// Propagates start down the slow line and stop down the fast line,
    /// samples the arbiter bank, and encodes. Per-edge jitter streams derive
    /// from `seed`: sub-stream 0 for the start edge, 1 for the stop edge.
    fn convert(&self, t_start: Time, t_stop: Time, seed: Seed) -> Result<ConversionResult> {
        let start_taps = tap_times(
            &self.slow,
            t_start,
            self.config.slow_line.jitter_sigma,
            sub_seed(seed, 0),
        )?;
        let stop_taps = tap_times(
            &self.fast,
            t_stop,
            self.config.fast_line.jitter_sigma,
            sub_seed(seed, 1),
        )?;
        let thermometer = sample_bank(&start_taps, &stop_taps)?;
        encode(thermometer, t_stop < t_start, self.metrics().lsb)
    }

    fn metrics(&self) -> TdcMetrics {
        let lsb = Duration::from_fs(
            self.config.slow_line.nominal_stage_delay.as_fs()
                - self.config.fast_line.nominal_stage_delay.as_fs(),
        );
        let n_stages = self.config.n_stages();
        TdcMetrics {
            lsb,
            full_scale_range: Duration::from_fs(lsb.as_fs() * n_stages as i64),
            n_codes: n_stages as u32 + 1,
            n_stages,
        }
    }

    fn jitter_sigma(&self) -> Duration {
        Duration::from_fs(
            self.config
                .slow_line
                .jitter_sigma
                .as_fs()
                .max(self.config.fast_line.jitter_sigma.as_fs()),
        )
    }
}

/// A realized single-line flash converter.
#[derive(Debug, Clone)]
pub struct FlashTdc {
    config: FlashTdcConfig,
    line: DelayLineInstance,
}

impl FlashTdc {
    pub fn realize(config: FlashTdcConfig, seed: Seed) -> Result<Self> {
        let line = realize_delay_line(&config.line, sub_seed(seed, 0))?;
        Ok(FlashTdc { config, line })
    }

    pub fn config(&self) -> &FlashTdcConfig {
        &self.config
    }
}

impl Tdc for FlashTdc {
    /// Taps the start edge every stage and compares each tap against the
    /// undelayed stop edge.
    fn convert(&self, t_start: Time, t_stop: Time, seed: Seed) -> Result<ConversionResult> {
        let start_taps = tap_times(
            &self.line,
            t_start,
            self.config.line.jitter_sigma,
            sub_seed(seed, 0),
        )?;
        let stop_taps = vec![t_stop; start_taps.len()];
        let thermometer = sample_bank(&start_taps, &stop_taps)?;
        encode(thermometer, t_stop < t_start, self.metrics().lsb)
    }

    fn metrics(&self) -> TdcMetrics {
        let lsb = self.config.line.nominal_stage_delay;
        let n_stages = self.config.n_stages();
        TdcMetrics {
            lsb,
            full_scale_range: Duration::from_fs(lsb.as_fs() * n_stages as i64),
            n_codes: n_stages as u32 + 1,
            n_stages,
        }
    }

    fn jitter_sigma(&self) -> Duration {
        self.config.line.jitter_sigma
    }
}

/// Either converter behind one type, for configuration-driven callers.
#[derive(Debug, Clone)]
pub enum AnyTdc {
    Vernier(VernierTdc),
    Flash(FlashTdc),
}

impl Tdc for AnyTdc {
    fn convert(&self, t_start: Time, t_stop: Time, seed: Seed) -> Result<ConversionResult> {
        match self {
            AnyTdc::Vernier(t) => t.convert(t_start, t_stop, seed),
            AnyTdc::Flash(t) => t.convert(t_start, t_stop, seed),
        }
    }

    fn metrics(&self) -> TdcMetrics {
        match self {
            AnyTdc::Vernier(t) => t.metrics(),
            AnyTdc::Flash(t) => t.metrics(),
        }
    }

    fn jitter_sigma(&self) -> Duration {
        match self {
            AnyTdc::Vernier(t) => t.jitter_sigma(),
            AnyTdc::Flash(t) => t.jitter_sigma(),
        }
    }
}

/// Closed-form code of the noise-free quantizer: the number of stages k in
/// `1..=N` with `k * lsb < delta_t`, clamped to `[0, N]`.
///
/// This is the independent oracle the event-level converters are tested
/// against; it never touches taps or arbiters.
pub fn ideal_code(metrics: &TdcMetrics, delta_t: Duration) -> u32 {
    let lsb = metrics.lsb.as_fs();
    let dt = delta_t.as_fs();
    debug_assert!(lsb > 0);
    let mut count = 0u32;
    for k in 1..=metrics.n_stages as i64 {
        if k * lsb < dt {
            count += 1;
        } else {
            break;
        }
    }
    count
}
