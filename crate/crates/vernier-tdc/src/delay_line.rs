//! Delay-line realization and edge propagation.
//!
//! A delay line is a chain of buffer stages. Its specification carries the
//! nominal per-stage delay plus two noise knobs: `mismatch_sigma` is the
//! standard deviation of a static per-stage offset drawn once when the line
//! is realized (process variation), and `jitter_sigma` is the standard
//! deviation of a random offset drawn fresh for every edge at every stage
//! (dynamic noise). Both default to zero, which reproduces the ideal circuit.

use crate::error::{Error, Result};
use crate::rng::{Rng, Seed};
use crate::time::{Duration, Time};

/// Specification of a delay chain before realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DelayLineSpec {
    pub n_stages: usize,
    pub nominal_stage_delay: Duration,
    pub mismatch_sigma: Duration,
    pub jitter_sigma: Duration,
}

impl DelayLineSpec {
    /// Noise-free line with `n_stages` stages of `nominal` delay each.
    pub fn ideal(n_stages: usize, nominal: Duration) -> Result<Self> {
        Self::new(n_stages, nominal, Duration::from_fs(0), Duration::from_fs(0))
    }

    pub fn new(
        n_stages: usize,
        nominal_stage_delay: Duration,
        mismatch_sigma: Duration,
        jitter_sigma: Duration,
    ) -> Result<Self> {
        if n_stages < 1 {
            return Err(Error::InvalidSpec("n_stages must be at least 1".into()));
        }
        if !nominal_stage_delay.is_positive() {
            return Err(Error::InvalidSpec(format!(
                "nominal stage delay must be positive, got {} fs",
                nominal_stage_delay.as_fs()
            )));
        }
        if mismatch_sigma.is_negative() {
            return Err(Error::InvalidSpec("mismatch sigma must be >= 0".into()));
        }
        if jitter_sigma.is_negative() {
            return Err(Error::InvalidSpec("jitter sigma must be >= 0".into()));
        }
        Ok(DelayLineSpec {
            n_stages,
            nominal_stage_delay,
            mismatch_sigma,
            jitter_sigma,
        })
    }
}

/// One realized delay chain: the per-stage delays with static mismatch
/// frozen in. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelayLineInstance {
    stage_delays: Vec<Duration>,
}

impl DelayLineInstance {
    pub fn stage_delays(&self) -> &[Duration] {
        &self.stage_delays
    }

    pub fn n_stages(&self) -> usize {
        self.stage_delays.len()
    }

    /// Builds an instance directly from per-stage delays (test rigs, replay).
    pub fn from_stage_delays(stage_delays: Vec<Duration>) -> Result<Self> {
        for (i, d) in stage_delays.iter().enumerate() {
            if !d.is_positive() {
                return Err(Error::NonPositiveStageDelay {
                    stage: i + 1,
                    value_fs: d.as_fs(),
                });
            }
        }
        if stage_delays.is_empty() {
            return Err(Error::InvalidSpec("a delay line needs at least 1 stage".into()));
        }
        Ok(DelayLineInstance { stage_delays })
    }
}

/// Draws one realization of `spec`.
///
/// Stage delays are `nominal + offset_i` with `offset_i ~ N(0, mismatch_sigma)`
/// rounded to integer femtoseconds. With zero mismatch the seed is ignored and
/// the result is exactly the nominal vector. A realization whose mismatch
/// drives any stage to a non-positive delay is rejected, naming the stage
/// (1-based, matching tap numbering).
pub fn realize_delay_line(spec: &DelayLineSpec, seed: Seed) -> Result<DelayLineInstance> {
    let nominal = spec.nominal_stage_delay.as_fs();
    if spec.mismatch_sigma.as_fs() == 0 {
        return Ok(DelayLineInstance {
            stage_delays: vec![spec.nominal_stage_delay; spec.n_stages],
        });
    }
    let mut rng = Rng::new(seed);
    let mut stage_delays = Vec::with_capacity(spec.n_stages);
    for stage in 1..=spec.n_stages {
        let offset = rng.next_gaussian_fs(spec.mismatch_sigma.as_fs());
        let value = nominal.checked_add(offset).ok_or(Error::TimeOverflow)?;
        if value <= 0 {
            return Err(Error::NonPositiveStageDelay {
                stage,
                value_fs: value,
            });
        }
        stage_delays.push(Duration::from_fs(value));
    }
    Ok(DelayLineInstance { stage_delays })
}

/// Propagates an edge through the chain and returns the tap instants.
///
/// `tap[k] = edge + Σ_{i=1..k} (stage_delay_i + jitter_i)` where each
/// `jitter_i ~ N(0, jitter_sigma)` is drawn fresh for this edge, in stage
/// order, from a stream seeded by `seed`. With zero jitter no draw happens
/// and the taps are the exact cumulative sums.
pub fn tap_times(
    line: &DelayLineInstance,
    edge: Time,
    jitter_sigma: Duration,
    seed: Seed,
) -> Result<Vec<Time>> {
    let mut rng = Rng::new(seed);
    let sigma_fs = jitter_sigma.as_fs();
    let mut taps = Vec::with_capacity(line.n_stages());
    let mut at = edge;
    for delay in line.stage_delays() {
        let jitter = Duration::from_fs(rng.next_gaussian_fs(sigma_fs));
        at = at.checked_add(*delay)?.checked_add(jitter)?;
        taps.push(at);
    }
    Ok(taps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::time::FS_PER_PS;
    use proptest::prelude::*;

    fn ps(v: i64) -> Duration {
        Duration::from_fs(v * FS_PER_PS)
    }

    #[test]
    fn zero_mismatch_realization_is_nominal_and_seed_free() {
        let spec = DelayLineSpec::ideal(3, ps(100)).unwrap();
        let a = realize_delay_line(&spec, Seed(1)).unwrap();
        let b = realize_delay_line(&spec, Seed(999)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.stage_delays(), &[ps(100), ps(100), ps(100)]);
    }

    #[test]
    fn reference_slow_line_is_uniform_102_7_ps() {
        let spec = DelayLineSpec::ideal(64, Duration::from_ps("102.7").unwrap()).unwrap();
        let line = realize_delay_line(&spec, Seed(0)).unwrap();
        assert_eq!(line.n_stages(), 64);
        assert!(line
            .stage_delays()
            .iter()
            .all(|d| d.as_fs() == 102_700));
    }

    #[test]
    fn mismatched_realization_is_reproducible_with_sane_mean() {
        let spec = DelayLineSpec::new(8, ps(100), ps(2), Duration::from_fs(0)).unwrap();
        let a = realize_delay_line(&spec, Seed(42)).unwrap();
        let b = realize_delay_line(&spec, Seed(42)).unwrap();
        assert_eq!(a, b);
        let mean_fs =
            a.stage_delays().iter().map(|d| d.as_fs()).sum::<i64>() as f64 / 8.0;
        assert!(
            (mean_fs - 100_000.0).abs() < 3_000.0,
            "mean {mean_fs} fs strays more than 3 ps from nominal"
        );
        let c = realize_delay_line(&spec, Seed(43)).unwrap();
        assert_ne!(a, c, "different seeds should give different mismatch");
    }

    #[test]
    fn impossible_realization_names_the_stage() {
        // 1 fs nominal with 100 ps mismatch: some stage goes non-positive
        // almost surely; seed 1 does deterministically.
        let spec = DelayLineSpec::new(64, Duration::from_fs(1), ps(100), Duration::from_fs(0))
            .unwrap();
        match realize_delay_line(&spec, Seed(1)) {
            Err(Error::NonPositiveStageDelay { stage, value_fs }) => {
                assert!((1..=64).contains(&stage));
                assert!(value_fs <= 0);
            }
            other => panic!("expected NonPositiveStageDelay, got {other:?}"),
        }
    }

    #[test]
    fn taps_are_cumulative_sums() {
        let line = DelayLineInstance::from_stage_delays(vec![ps(100); 3]).unwrap();
        let taps = tap_times(&line, Time::from_fs(0), Duration::from_fs(0), Seed(0)).unwrap();
        let want: Vec<Time> = [100, 200, 300].iter().map(|&p| Time::from_fs(p * FS_PER_PS)).collect();
        assert_eq!(taps, want);
    }

    #[test]
    fn first_taps_match_start_and_stop_edges() {
        let slow = DelayLineInstance::from_stage_delays(vec![Duration::from_ps("102.7").unwrap(); 4]).unwrap();
        let taps = tap_times(&slow, Time::from_ps("2500").unwrap(), Duration::from_fs(0), Seed(0)).unwrap();
        assert_eq!(taps[0], Time::from_ps("2602.7").unwrap());

        let fast = DelayLineInstance::from_stage_delays(vec![Duration::from_ps("77.7").unwrap(); 4]).unwrap();
        let taps = tap_times(&fast, Time::from_ps("4000").unwrap(), Duration::from_fs(0), Seed(0)).unwrap();
        assert_eq!(taps[0], Time::from_ps("4077.7").unwrap());
    }

    #[test]
    fn tap_overflow_is_reported() {
        let line = DelayLineInstance::from_stage_delays(vec![ps(100); 2]).unwrap();
        let result = tap_times(
            &line,
            Time::from_fs(i64::MAX - 10),
            Duration::from_fs(0),
            Seed(0),
        );
        assert_eq!(result, Err(Error::TimeOverflow));
    }

    #[test]
    fn jittered_taps_are_reproducible() {
        let line = DelayLineInstance::from_stage_delays(vec![ps(100); 16]).unwrap();
        let a = tap_times(&line, Time::from_fs(0), ps(2), Seed(9)).unwrap();
        let b = tap_times(&line, Time::from_fs(0), ps(2), Seed(9)).unwrap();
        assert_eq!(a, b);
        let c = tap_times(&line, Time::from_fs(0), ps(2), Seed(10)).unwrap();
        assert_ne!(a, c);
    }

    proptest! {
        #[test]
        fn noise_free_taps_strictly_increase(
            delays in proptest::collection::vec(1_i64..=500_000, 1..40),
        ) {
            let line = DelayLineInstance::from_stage_delays(
                delays.into_iter().map(Duration::from_fs).collect(),
            ).unwrap();
            let taps = tap_times(&line, Time::from_fs(0), Duration::from_fs(0), Seed(0)).unwrap();
            for pair in taps.windows(2) {
                prop_assert!(pair[0] < pair[1]);
            }
        }

        #[test]
        fn taps_shift_with_the_edge(
            delays in proptest::collection::vec(1_i64..=500_000, 1..40),
            edge in -1_000_000_000_i64..=1_000_000_000,
            shift in -1_000_000_000_i64..=1_000_000_000,
        ) {
            let line = DelayLineInstance::from_stage_delays(
                delays.into_iter().map(Duration::from_fs).collect(),
            ).unwrap();
            let base = tap_times(&line, Time::from_fs(edge), Duration::from_fs(0), Seed(0)).unwrap();
            let moved = tap_times(&line, Time::from_fs(edge + shift), Duration::from_fs(0), Seed(0)).unwrap();
            for (b, m) in base.iter().zip(&moved) {
                prop_assert_eq!(m.as_fs(), b.as_fs() + shift);
            }
        }
    }
}
