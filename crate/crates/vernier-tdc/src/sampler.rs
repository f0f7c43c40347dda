//! Arbiter bank, thermometer code and priority encoding.
//!
//! Each stage of the converter ends in an arbiter (a D flip-flop in the
//! circuit): the delayed start edge drives the data input, the delayed stop
//! edge the clock. If the start edge arrives strictly first the stage
//! samples logic 1, otherwise 0. An exact tie resolves to 0, which reads
//! the rule "start arrived before stop" strictly. Metastability is not
//! modeled; the deterministic tie rule stands in for it.
//!
//! The bank's outputs form a thermometer code whose leading run of 1s is the
//! measured magnitude. A 1 appearing after the first 0 (a bubble) is flagged,
//! never silently corrected.

use crate::error::{Error, Result};
use crate::time::Time;
use std::fmt;

/// Ordered sampler outputs; bit k (1-based) is stage k's arbiter decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThermometerCode {
    bits: Vec<bool>,
}

impl ThermometerCode {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        ThermometerCode { bits }
    }

    /// Parses "11110000"-style strings, bit 1 leftmost.
    pub fn from_bit_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => {
                    return Err(Error::InvalidSpec(format!(
                        "invalid thermometer bit {c:?} in {s:?}"
                    )))
                }
            }
        }
        Ok(ThermometerCode { bits })
    }

    /// The canonical clean code of `count` ones followed by zeros.
    pub fn canonical(count: usize, n_stages: usize) -> Self {
        ThermometerCode {
            bits: (0..n_stages).map(|i| i < count).collect(),
        }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

impl fmt::Display for ThermometerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Status flags attached to an encoded code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CodeFlags {
    /// Code saturated at the top of the range (value == N).
    pub overrange: bool,
    /// Stop edge preceded the start edge; set by the converter layer.
    pub underrange: bool,
    /// The thermometer code was not monotone.
    pub bubble: bool,
}

impl CodeFlags {
    pub fn any(&self) -> bool {
        self.overrange || self.underrange || self.bubble
    }
}

impl fmt::Display for CodeFlags {
    /// Compact rendering for CSV: flag names joined by `|`, or `-`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.any() {
            return f.write_str("-");
        }
        let mut first = true;
        for (set, name) in [
            (self.underrange, "underrange"),
            (self.overrange, "overrange"),
            (self.bubble, "bubble"),
        ] {
            if set {
                if !first {
                    f.write_str("|")?;
                }
                f.write_str(name)?;
                first = false;
            }
        }
        Ok(())
    }
}

/// Encoded converter output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinaryCode {
    /// Leading-ones count, in `0..=N`.
    pub value: u32,
    /// Output word width: `ceil(log2(N + 1))` bits cover the N+1 codes.
    pub width: u32,
    pub flags: CodeFlags,
}

impl BinaryCode {
    /// MSB-first bit string zero-padded to the code width
    /// (value 5, width 3 → "101").
    pub fn bit_string(&self) -> String {
        (0..self.width)
            .rev()
            .map(|i| if self.value >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

/// Width of the binary output word for an `n_stages`-bit thermometer.
pub fn code_width(n_stages: usize) -> u32 {
    // smallest w with 2^w >= n_stages + 1
    let codes = n_stages as u64 + 1;
    (u64::BITS - (codes - 1).leading_zeros()).max(1)
}

/// One arbiter decision: 1 iff the data edge beats the clock edge strictly.
pub fn arbiter_sample(data_edge: Time, clock_edge: Time) -> bool {
    data_edge < clock_edge
}

/// Samples the whole bank: bit k compares start tap k against stop tap k.
pub fn sample_bank(start_taps: &[Time], stop_taps: &[Time]) -> Result<ThermometerCode> {
    if start_taps.len() != stop_taps.len() || start_taps.is_empty() {
        return Err(Error::TapCountMismatch {
            starts: start_taps.len(),
            stops: stop_taps.len(),
        });
    }
    Ok(ThermometerCode {
        bits: start_taps
            .iter()
            .zip(stop_taps)
            .map(|(&s, &c)| arbiter_sample(s, c))
            .collect(),
    })
}

/// Length of the initial run of 1s, plus whether a stray 1 follows it.
pub fn leading_ones(code: &ThermometerCode) -> (u32, bool) {
    let count = code.bits.iter().take_while(|&&b| b).count();
    let bubble = code.bits[count..].iter().any(|&b| b);
    (count as u32, bubble)
}

/// Thermometer → binary: the value is the leading-run length.
///
/// The underrange flag is owned by the converter layer (negative intervals)
/// and always false here.
pub fn priority_encode(code: &ThermometerCode) -> BinaryCode {
    let n = code.len();
    let (value, bubble) = leading_ones(code);
    BinaryCode {
        value,
        width: code_width(n),
        flags: CodeFlags {
            overrange: value as usize == n,
            underrange: false,
            bubble,
        },
    }
}
