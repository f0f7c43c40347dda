//! Time-of-flight localization end to end: annihilation events on a
//! detector pair, arrival-time differences through the converter, and the
//! reconstructed positions with their quantization-limited errors.
//!
//! Run: cargo run -p vernier-tdc --example tof_localization

use vernier_tdc::{
    arrival_times, displacement, localize, measurable_half_window_mm, run_experiment,
    AnnihilationEvent, DetectorGeometry, Duration, PositionSampler, Seed, Tdc, Time, VernierTdc,
    VernierTdcConfig, C_ROUND_MM_PER_NS,
};

fn main() {
    // c = 3e8 m/s keeps the arithmetic round: 66 ps <-> 9.9 mm
    let geom = DetectorGeometry::new(800.0, C_ROUND_MM_PER_NS).unwrap();
    let tdc = VernierTdc::realize(VernierTdcConfig::reference_design(), Seed(0)).unwrap();
    let metrics = tdc.metrics();

    println!("detector pair: separation {} mm, c = {} mm/ns", geom.separation_mm, geom.c_mm_per_ns);
    println!(
        "converter: LSB {} ps -> position bins of c*LSB/2 = {} mm",
        metrics.lsb.format_ps(),
        displacement(metrics.lsb, &geom)
    );
    let benchmark = displacement(Duration::from_ps("66").unwrap(), &geom);
    println!("benchmark: 66 ps of timing resolution <-> {benchmark} mm of space");
    println!();

    // a few single events, traced through the pipeline
    println!("x true (mm) | t1 - t2 (ps) | code | x est (mm) | err (mm)");
    for x in [-150.0, -40.0, 0.0, 12.5, 93.75, 200.0] {
        let event = AnnihilationEvent {
            position_mm: x,
            emission_time: Time::from_fs(0),
        };
        let rec = arrival_times(&geom, &event).unwrap();
        let loc = localize(&geom, &rec, &tdc, Seed(0)).unwrap();
        println!(
            "{:>11} | {:>12} | {:>4} | {:>10.3} | {:>+8.3}",
            x,
            Duration::from_fs(rec.t1.as_fs() - rec.t2.as_fs()).format_ps(),
            loc.measured_code,
            loc.position_estimate_mm,
            loc.position_estimate_mm - x
        );
    }
    println!();

    // a full experiment across the measurable window
    let window = measurable_half_window_mm(&geom, &tdc);
    let result = run_experiment(
        &geom,
        &tdc,
        10_000,
        &PositionSampler::Uniform {
            min_mm: -window,
            max_mm: window,
        },
        Seed(42),
    )
    .unwrap();
    println!("10000 uniform events over +/-{window:.1} mm:");
    println!("  mean |err| {:.4} mm", result.summary.mean_abs_err_mm);
    println!("  max  |err| {:.4} mm (bound c*LSB/4 = {} mm)", result.summary.max_abs_err_mm, displacement(metrics.lsb, &geom) / 2.0);
    println!("  FWHM       {:.4} mm", result.summary.fwhm_mm);
}
