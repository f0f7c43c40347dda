//! One conversion through the reference design, opened up step by step.
//!
//! The start edge at 2.5 ns races down the slow line (102.7 ps per stage),
//! the stop edge at 4 ns down the fast line (77.7 ps per stage). Each stage
//! eats 25 ps of the start edge's 1.5 ns head start, so stage k's arbiter
//! sees the edges 1.5 ns - k*25 ps apart and the thermometer code flips from
//! 1 to 0 where that difference crosses zero: after 59 stages.
//!
//! Run: cargo run -p vernier-tdc --example reference_conversion

use vernier_tdc::{tap_times, Duration, Seed, Tdc, Time, VernierTdc, VernierTdcConfig};

fn main() {
    let config = VernierTdcConfig::reference_design();
    let tdc = VernierTdc::realize(config, Seed(0)).expect("valid reference design");
    let metrics = tdc.metrics();

    println!("reference Vernier TDC");
    println!("  stages          : {}", metrics.n_stages);
    println!("  slow stage delay: {} ps", config.slow_line.nominal_stage_delay.format_ps());
    println!("  fast stage delay: {} ps", config.fast_line.nominal_stage_delay.format_ps());
    println!("  LSB             : {} ps", metrics.lsb.format_ps());
    println!("  full-scale range: {} ps", metrics.full_scale_range.format_ps());
    println!();

    let t_start = Time::from_ps("2500").expect("literal");
    let t_stop = Time::from_ps("4000").expect("literal");
    println!("start edge {} ps, stop edge {} ps, interval {} ps", t_start.format_ps(), t_stop.format_ps(), Duration::from_fs(t_stop.as_fs() - t_start.as_fs()).format_ps());
    println!();

    // peek at the first taps of each line
    let start_taps = tap_times(tdc.slow_line(), t_start, Duration::from_fs(0), Seed(0)).unwrap();
    let stop_taps = tap_times(tdc.fast_line(), t_stop, Duration::from_fs(0), Seed(0)).unwrap();
    println!("stage | start tap (ps) | stop tap (ps) | start first?");
    for k in (0..8).chain(56..64) {
        println!(
            "  {:>3} | {:>14} | {:>13} | {}",
            k + 1,
            start_taps[k].format_ps(),
            stop_taps[k].format_ps(),
            if start_taps[k] < stop_taps[k] { "1" } else { "0" }
        );
        if k == 7 {
            println!("  ... |            ... |           ... | ...");
        }
    }
    println!();

    let result = tdc.convert(t_start, t_stop, Seed(0)).expect("in range");
    println!("thermometer : {}", result.thermometer);
    println!("binary code : {} (value {})", result.code.bit_string(), result.code.value);
    println!("dt estimate : {} ps (bin midpoint)", result.delta_t_estimate.format_ps());
    println!("flags       : {}", result.code.flags);
}
