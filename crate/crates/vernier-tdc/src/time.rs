//! Exact integer timebase.
//!
//! Every instant and interval in the simulator is a signed femtosecond count.
//! The quantities the delay lines are built from (102.7 ps, 77.7 ps, 25 ps)
//! are exact integers in femtoseconds, so arbiter decisions at code
//! transitions never depend on float rounding. Arithmetic is checked:
//! overflow is reported, never wrapped.
//!
//! The human-facing syntax is a decimal picosecond string `±D[.DDD]` with at
//! most 3 fractional digits, which converts losslessly to femtoseconds
//! (`"102.7"` ↔ 102 700 fs).

use crate::error::{Error, Result};
use std::fmt;
use std::ops::Neg;

pub const FS_PER_PS: i64 = 1_000;
pub const FS_PER_NS: i64 = 1_000_000;

/// An absolute instant, in femtoseconds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Time(pub i64);

/// A signed interval, in femtoseconds. May be negative (stop before start).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Duration(pub i64);

impl Time {
    pub const fn from_fs(fs: i64) -> Self {
        Time(fs)
    }

    pub const fn as_fs(self) -> i64 {
        self.0
    }

    /// Parses a decimal picosecond string; see [`parse_ps_fs`].
    pub fn from_ps(text: &str) -> Result<Self> {
        parse_ps_fs(text).map(Time)
    }

    pub fn checked_add(self, d: Duration) -> Result<Self> {
        self.0.checked_add(d.0).map(Time).ok_or(Error::TimeOverflow)
    }

    /// Interval from `earlier` to `self` (`self - earlier`).
    pub fn checked_sub_time(self, earlier: Time) -> Result<Duration> {
        self.0
            .checked_sub(earlier.0)
            .map(Duration)
            .ok_or(Error::TimeOverflow)
    }

    /// Canonical picosecond rendering; see [`format_ps_fs`].
    pub fn format_ps(self) -> String {
        format_ps_fs(self.0)
    }
}

impl Duration {
    pub const fn from_fs(fs: i64) -> Self {
        Duration(fs)
    }

    pub const fn as_fs(self) -> i64 {
        self.0
    }

    pub fn from_ps(text: &str) -> Result<Self> {
        parse_ps_fs(text).map(Duration)
    }

    pub fn checked_add(self, other: Duration) -> Result<Self> {
        self.0
            .checked_add(other.0)
            .map(Duration)
            .ok_or(Error::TimeOverflow)
    }

    pub fn checked_sub(self, other: Duration) -> Result<Self> {
        self.0
            .checked_sub(other.0)
            .map(Duration)
            .ok_or(Error::TimeOverflow)
    }

    pub fn checked_mul(self, factor: i64) -> Result<Self> {
        self.0
            .checked_mul(factor)
            .map(Duration)
            .ok_or(Error::TimeOverflow)
    }

    pub const fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub const fn is_negative(self) -> bool {
        self.0 < 0
    }

    pub fn format_ps(self) -> String {
        format_ps_fs(self.0)
    }
}

impl Neg for Duration {
    type Output = Duration;
    fn neg(self) -> Duration {
        Duration(-self.0)
    }
}

impl fmt::Display for Time {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fs", self.0)
    }
}

impl fmt::Display for Duration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fs", self.0)
    }
}

/// Parses `±D[.DDD]` picoseconds into exact femtoseconds.
///
/// At most 3 fractional digits are accepted; a fourth would need sub-fs
/// resolution and is rejected rather than rounded.
pub fn parse_ps_fs(text: &str) -> Result<i64> {
    let err = |reason: &'static str| Error::InvalidTimeLiteral {
        input: text.to_string(),
        reason,
    };

    let (negative, digits) = match text.as_bytes().first() {
        Some(b'-') => (true, &text[1..]),
        Some(b'+') => (false, &text[1..]),
        _ => (false, text),
    };

    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (digits, None),
    };

    if int_part.is_empty() || !int_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err("expected decimal digits before the point"));
    }
    if let Some(frac) = frac_part {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("expected decimal digits after the point"));
        }
        if frac.len() > 3 {
            return Err(err(
                "more than 3 fractional picosecond digits would lose femtosecond precision",
            ));
        }
    }

    let int_ps: i64 = int_part.parse().map_err(|_| err("integer part overflows"))?;
    let mut fs = int_ps
        .checked_mul(FS_PER_PS)
        .ok_or_else(|| err("value overflows the femtosecond range"))?;

    if let Some(frac) = frac_part {
        // "7" -> 700 fs, "70" -> 700 fs, "007" -> 7 fs
        let scale = 10_i64.pow(3 - frac.len() as u32);
        let frac_fs: i64 = frac.parse::<i64>().expect("digits checked above") * scale;
        fs = fs
            .checked_add(frac_fs)
            .ok_or_else(|| err("value overflows the femtosecond range"))?;
    }

    Ok(if negative { -fs } else { fs })
}

/// Renders femtoseconds as the shortest picosecond literal that parses back
/// exactly: trailing fractional zeros are trimmed and the point dropped when
/// the value is a whole picosecond.
pub fn format_ps_fs(fs: i64) -> String {
    let sign = if fs < 0 { "-" } else { "" };
    let abs = fs.unsigned_abs();
    let int_ps = abs / FS_PER_PS as u64;
    let frac_fs = abs % FS_PER_PS as u64;
    if frac_fs == 0 {
        return format!("{sign}{int_ps}");
    }
    let frac = format!("{frac_fs:03}");
    format!("{sign}{int_ps}.{}", frac.trim_end_matches('0'))
}
