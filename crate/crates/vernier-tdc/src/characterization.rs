//! Converter characterization: transfer curve, code transitions, DNL/INL and
//! single-shot precision.
//!
//! Sweeps demand a jitter-free converter so the curve is a deterministic
//! staircase; static mismatch is fine. Noise statistics belong to
//! [`single_shot`], which runs repeated conversions with per-trial sub-seeds.
//!
//! Nonlinearity uses the transition-point convention: `T_k` is the smallest
//! interval producing code ≥ k, `DNL_k = (T_{k+1} - T_k)/LSB - 1` and
//! `INL_k = (T_k - T_1)/LSB - (k - 1)`. Because the timebase is integer
//! femtoseconds and the noise-free code is monotone in the interval,
//! [`measure_transitions`] can bisect every transition down to 1 fs and the
//! reported nonlinearities are exact, not grid-limited.

use crate::error::{Error, Result};
use crate::rng::{sub_seed, Seed};
use crate::tdc::Tdc;
use crate::time::{Duration, Time};
use serde::Serialize;
use std::collections::BTreeMap;

/// Code versus interval, sampled on a regular grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferCurve {
    points: Vec<(Duration, u32)>,
}

impl TransferCurve {
    pub fn points(&self) -> &[(Duration, u32)] {
        &self.points
    }
}

/// Transition positions and the derived nonlinearity metrics, in LSB units.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonlinearityReport {
    pub lsb_fs: i64,
    pub transitions_fs: Vec<i64>,
    pub dnl: Vec<f64>,
    pub inl: Vec<f64>,
    pub dnl_peak: f64,
    pub inl_peak: f64,
}

/// Code statistics of repeated conversions of one interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrecisionReport {
    pub delta_t_fs: i64,
    pub n_trials: u64,
    pub code_mean: f64,
    pub code_std: f64,
    pub histogram: BTreeMap<u32, u64>,
}

fn require_jitter_free(tdc: &impl Tdc) -> Result<()> {
    let sigma = tdc.jitter_sigma();
    if sigma.as_fs() != 0 {
        return Err(Error::JitteredSweep {
            sigma_fs: sigma.as_fs(),
        });
    }
    Ok(())
}

/// Converts once per grid point `t_min, t_min + step, ..` (inclusive of
/// `t_max` when the grid lands on it), with the start edge fixed at 0.
pub fn sweep_transfer(
    tdc: &impl Tdc,
    t_min: Duration,
    t_max: Duration,
    step: Duration,
) -> Result<TransferCurve> {
    require_jitter_free(tdc)?;
    if step.as_fs() < 1 {
        return Err(Error::InvalidSweepStep {
            step_fs: step.as_fs(),
        });
    }
    if t_min > t_max {
        return Err(Error::EmptySweepGrid {
            t_min_fs: t_min.as_fs(),
            t_max_fs: t_max.as_fs(),
        });
    }
    let mut points = Vec::new();
    let mut dt = t_min;
    while dt <= t_max {
        let code = tdc
            .convert(Time::from_fs(0), Time::from_fs(dt.as_fs()), Seed(0))?
            .code
            .value;
        points.push((dt, code));
        dt = dt.checked_add(step)?;
    }
    Ok(TransferCurve { points })
}

/// Extracts `T_k` = first grid interval whose code reaches k, for
/// k = 1..=max observed code. Codes already reached at the first grid point
/// report that point. The curve must be monotone; a decreasing code is
/// rejected (only possible with noise, which sweeps already exclude).
pub fn find_transitions(curve: &TransferCurve) -> Result<Vec<Duration>> {
    let mut transitions = Vec::new();
    let mut reached = 0u32;
    let mut last_code = None;
    for (index, &(dt, code)) in curve.points.iter().enumerate() {
        if let Some(p) = last_code {
            if code < p {
                return Err(Error::NonMonotoneCurve { index });
            }
        }
        while reached < code {
            reached += 1;
            transitions.push(dt);
        }
        last_code = Some(code);
    }
    Ok(transitions)
}

/// Measures every transition of a jitter-free converter exactly.
///
/// Coarse sweep at LSB/10 over one full range plus a guard LSB, then each
/// code change is bisected on the integer femtosecond lattice; monotonicity
/// of the noise-free code makes the bisection exact, so the returned `T_k`
/// are the true smallest intervals with code ≥ k.
pub fn measure_transitions(tdc: &impl Tdc) -> Result<Vec<Duration>> {
    require_jitter_free(tdc)?;
    let metrics = tdc.metrics();
    let coarse = Duration::from_fs((metrics.lsb.as_fs() / 10).max(1));
    let top = metrics.full_scale_range.checked_add(metrics.lsb)?;

    let eval = |dt_fs: i64| -> Result<u32> {
        Ok(tdc
            .convert(Time::from_fs(0), Time::from_fs(dt_fs), Seed(0))?
            .code
            .value)
    };

    let mut transitions = Vec::new();
    let mut lo_fs = 0i64;
    let mut lo_code = eval(lo_fs)?;
    let mut dt_fs = 0i64;
    while dt_fs < top.as_fs() {
        dt_fs += coarse.as_fs();
        let code = eval(dt_fs)?;
        if code < lo_code {
            return Err(Error::NonMonotoneCurve {
                index: transitions.len(),
            });
        }
        for k in lo_code + 1..=code {
            // invariant: eval(lo) < k <= eval(hi)
            let (mut lo, mut hi) = (lo_fs, dt_fs);
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if eval(mid)? >= k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            transitions.push(Duration::from_fs(hi));
            lo_fs = hi - 1; // next k still brackets
        }
        lo_fs = dt_fs;
        lo_code = code;
    }
    Ok(transitions)
}

/// Computes DNL/INL from transition positions against the nominal LSB.
pub fn dnl_inl(transitions: &[Duration], lsb: Duration) -> Result<NonlinearityReport> {
    if transitions.len() < 2 {
        return Err(Error::TooFewTransitions(transitions.len()));
    }
    let lsb_fs = lsb.as_fs() as f64;
    let t_fs: Vec<i64> = transitions.iter().map(|t| t.as_fs()).collect();
    let dnl: Vec<f64> = t_fs
        .windows(2)
        .map(|w| (w[1] - w[0]) as f64 / lsb_fs - 1.0)
        .collect();
    let inl: Vec<f64> = t_fs
        .iter()
        .enumerate()
        .map(|(i, &t)| (t - t_fs[0]) as f64 / lsb_fs - i as f64)
        .collect();
    let peak = |v: &[f64]| v.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
    Ok(NonlinearityReport {
        lsb_fs: lsb.as_fs(),
        transitions_fs: t_fs,
        dnl_peak: peak(&dnl),
        inl_peak: peak(&inl),
        dnl,
        inl,
    })
}

/// Repeats one conversion `n_trials` times with per-trial sub-seeds and
/// histograms the codes. Identical arguments give identical reports.
pub fn single_shot(
    tdc: &impl Tdc,
    delta_t: Duration,
    n_trials: u64,
    seed: Seed,
) -> Result<PrecisionReport> {
    if n_trials < 1 {
        return Err(Error::EmptyRun { what: "n_trials" });
    }
    let mut histogram: BTreeMap<u32, u64> = BTreeMap::new();
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for trial in 0..n_trials {
        let code = tdc
            .convert(
                Time::from_fs(0),
                Time::from_fs(delta_t.as_fs()),
                sub_seed(seed, trial),
            )?
            .code
            .value;
        *histogram.entry(code).or_insert(0) += 1;
        sum += code as f64;
        sum_sq += code as f64 * code as f64;
    }
    let n = n_trials as f64;
    let mean = sum / n;
    let variance = (sum_sq / n - mean * mean).max(0.0);
    Ok(PrecisionReport {
        delta_t_fs: delta_t.as_fs(),
        n_trials,
        code_mean: mean,
        code_std: variance.sqrt(),
        histogram,
    })
}
