//! Cross-module invariants exercised end to end through the public API.

use proptest::prelude::*;
use vernier_tdc::{
    arrival_times, delta_t, dnl_inl, ideal_code, localize, measure_transitions, run_experiment,
    AnnihilationEvent, DelayLineSpec, DetectorGeometry, Duration, PositionSampler, RunConfig,
    Seed, Tdc, Time, VernierTdc, VernierTdcConfig, C_ROUND_MM_PER_NS,
};

fn vernier(n: usize, tau_slow_fs: i64, tau_fast_fs: i64) -> VernierTdc {
    let cfg = VernierTdcConfig::new(
        DelayLineSpec::ideal(n, Duration::from_fs(tau_slow_fs)).unwrap(),
        DelayLineSpec::ideal(n, Duration::from_fs(tau_fast_fs)).unwrap(),
    )
    .unwrap();
    VernierTdc::realize(cfg, Seed(0)).unwrap()
}

proptest! {
    /// The event-level converter equals the closed-form quantizer for any
    /// noise-free geometry, including ties and negative intervals.
    #[test]
    fn converter_matches_ideal_code(
        n in 1usize..=96,
        tau_fast_fs in 1i64..=200_000,
        lsb_fs in 1i64..=50_000,
        dt_scale in -0.25f64..=1.25,
        offset_fs in -1_000_000i64..=1_000_000,
    ) {
        let tdc = vernier(n, tau_fast_fs + lsb_fs, tau_fast_fs);
        let metrics = tdc.metrics();
        let dt = Duration::from_fs((metrics.full_scale_range.as_fs() as f64 * dt_scale) as i64);
        let start = Time::from_fs(offset_fs);
        let stop = start.checked_add(dt).unwrap();
        let result = tdc.convert(start, stop, Seed(0)).unwrap();
        prop_assert_eq!(result.code.value, ideal_code(&metrics, dt));
        if dt.is_negative() {
            prop_assert!(result.code.flags.underrange);
            prop_assert_eq!(result.code.value, 0);
        }
        if result.code.flags.overrange {
            prop_assert_eq!(result.code.value, n as u32);
        }
    }

    /// Exact LSB multiples tie down to code k-1 in both routes.
    #[test]
    fn lsb_multiples_tie_low(n in 2usize..=64, lsb_fs in 1i64..=50_000, k in 1i64..=64) {
        prop_assume!(k <= n as i64);
        let tdc = vernier(n, 100_000 + lsb_fs, 100_000);
        let metrics = tdc.metrics();
        let dt = Duration::from_fs(k * lsb_fs);
        let result = tdc.convert(Time::from_fs(0), Time::from_fs(dt.as_fs()), Seed(0)).unwrap();
        prop_assert_eq!(result.code.value as i64, k - 1);
        prop_assert_eq!(ideal_code(&metrics, dt) as i64, k - 1);
    }

    /// Noise-free codes never decrease as the interval grows.
    #[test]
    fn code_is_monotone(
        dt_a in -100_000i64..=2_000_000,
        dt_b in -100_000i64..=2_000_000,
    ) {
        let tdc = vernier(32, 102_700, 77_700);
        let (lo, hi) = if dt_a <= dt_b { (dt_a, dt_b) } else { (dt_b, dt_a) };
        let code_lo = tdc.convert(Time::from_fs(0), Time::from_fs(lo), Seed(0)).unwrap().code.value;
        let code_hi = tdc.convert(Time::from_fs(0), Time::from_fs(hi), Seed(0)).unwrap().code.value;
        prop_assert!(code_lo <= code_hi);
    }

    /// The reconstruction error of an in-range, noise-free event never
    /// exceeds half a quantization bin plus arrival rounding.
    #[test]
    fn localization_error_is_bounded(x in -239.0f64..=239.0) {
        let geom = DetectorGeometry::new(800.0, C_ROUND_MM_PER_NS).unwrap();
        let tdc = vernier(64, 102_700, 77_700);
        let rec = arrival_times(&geom, &AnnihilationEvent {
            position_mm: x,
            emission_time: Time::from_fs(0),
        }).unwrap();
        let loc = localize(&geom, &rec, &tdc, Seed(0)).unwrap();
        let bound = 1.875 + C_ROUND_MM_PER_NS * 1e-6;
        prop_assert!(
            (loc.position_estimate_mm - x).abs() <= bound,
            "err {} at x {}", (loc.position_estimate_mm - x).abs(), x
        );
    }
}

#[test]
fn measured_lsb_reproduces_nominal_resolution_for_several_sizes() {
    for n in [4usize, 16, 64] {
        let tdc = vernier(n, 102_700, 77_700);
        let transitions = measure_transitions(&tdc).unwrap();
        assert_eq!(transitions.len(), n);
        for pair in transitions.windows(2) {
            assert_eq!(pair[1].as_fs() - pair[0].as_fs(), 25_000);
        }
        let report = dnl_inl(&transitions, tdc.metrics().lsb).unwrap();
        assert_eq!(report.dnl_peak, 0.0);
        assert_eq!(report.inl_peak, 0.0);
    }
}

#[test]
fn config_pipeline_is_deterministic_end_to_end() {
    let text = "n_stages = 32\nmismatch_sigma_ps = 1.5\nseed = 77\n";
    let run = || {
        let cfg = RunConfig::parse_str(text).unwrap();
        let tdc = cfg.build_tdc().unwrap();
        let transitions = measure_transitions(&tdc).unwrap();
        dnl_inl(&transitions, tdc.metrics().lsb).unwrap()
    };
    let a = run();
    let b = run();
    assert_eq!(a, b);
    assert!(a.dnl_peak > 0.0, "1.5 ps mismatch must disturb the staircase");
}

#[test]
fn kinematics_round_trip_defines_the_sign_convention() {
    let geom = DetectorGeometry::new(800.0, C_ROUND_MM_PER_NS).unwrap();
    let tdc = vernier(64, 102_700, 77_700);
    for x in [-200.0, -31.4, 10.0, 150.0] {
        let rec = arrival_times(&geom, &AnnihilationEvent {
            position_mm: x,
            emission_time: Time::from_fs(123_456),
        })
        .unwrap();
        // delta_t is -2x/c, so detector 2 fires first for positive x
        let dt = delta_t(&rec);
        assert_eq!(dt.as_fs() < 0, x > 0.0);
        let loc = localize(&geom, &rec, &tdc, Seed(0)).unwrap();
        assert_eq!(loc.position_estimate_mm.signum(), x.signum());
    }
}

#[test]
fn coarser_lsb_coarsens_the_experiment_error() {
    let geom = DetectorGeometry::new(800.0, C_ROUND_MM_PER_NS).unwrap();
    let sampler = PositionSampler::Uniform {
        min_mm: -200.0,
        max_mm: 200.0,
    };
    let fine = run_experiment(&geom, &vernier(64, 102_700, 77_700), 4_000, &sampler, Seed(5))
        .unwrap()
        .summary;
    let coarse = run_experiment(&geom, &vernier(64, 127_700, 77_700), 4_000, &sampler, Seed(5))
        .unwrap()
        .summary;
    assert!(coarse.max_abs_err_mm >= 2.0 * fine.max_abs_err_mm * 0.999);
    assert!(coarse.mean_abs_err_mm > 1.5 * fine.mean_abs_err_mm);
}
