//! The digitization back end on its own: arbiter decisions, thermometer
//! codes, leading-ones detection, and what a bubble looks like.
//!
//! Run: cargo run -p vernier-tdc --example thermometer_encoding

use vernier_tdc::{arbiter_sample, leading_ones, priority_encode, sample_bank, ThermometerCode, Time};

fn show(label: &str, code: &ThermometerCode) {
    let encoded = priority_encode(code);
    println!(
        "{label:<26} {code}  ->  value {:>2}  bits {}  flags {}",
        encoded.value,
        encoded.bit_string(),
        encoded.flags
    );
}

fn main() {
    // one arbiter: data edge vs clock edge, strict, ties to 0
    println!("arbiter_sample(1 ps, 2 ps) = {}", arbiter_sample(Time::from_fs(1000), Time::from_fs(2000)) as u8);
    println!("arbiter_sample(2 ps, 1 ps) = {}", arbiter_sample(Time::from_fs(2000), Time::from_fs(1000)) as u8);
    println!("arbiter_sample(5 ps, 5 ps) = {} (tie resolves to 0)", arbiter_sample(Time::from_fs(5000), Time::from_fs(5000)) as u8);
    println!();

    // a bank of 8 arbiters sampling ideal Vernier taps for a 110 ps interval
    let starts: Vec<Time> = (1..=8).map(|k| Time::from_fs(k * 102_700)).collect();
    let stops: Vec<Time> = (1..=8).map(|k| Time::from_fs(110_000 + k * 77_700)).collect();
    let sampled = sample_bank(&starts, &stops).expect("equal lengths");
    println!("110 ps through 102.7/77.7 ps stages samples as {sampled}");
    println!();

    // the transient case: five early start arrivals digitize to binary 101
    let transient = ThermometerCode::from_bit_str("11111000").unwrap();
    let (count, bubble) = leading_ones(&transient);
    println!("leading_ones(11111000) = ({count}, bubble={bubble})");
    println!();

    println!("{:<26} {:<10}     encoded", "case", "code");
    show("clean mid-scale", &transient);
    show("all zeros", &ThermometerCode::from_bit_str("00000000").unwrap());
    show("all ones (overrange)", &ThermometerCode::from_bit_str("11111111").unwrap());
    show("bubble after the run", &ThermometerCode::from_bit_str("11011000").unwrap());
    show("stray one at the top", &ThermometerCode::from_bit_str("11111001").unwrap());
    println!();
    println!("bubbled codes keep the leading-run value and raise the flag;");
    println!("nothing is silently corrected.");
}
