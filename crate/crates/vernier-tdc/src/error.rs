//! Error type shared by the simulation modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid picosecond literal `{input}`: {reason}")]
    InvalidTimeLiteral { input: String, reason: &'static str },

    #[error("time arithmetic overflowed the femtosecond range")]
    TimeOverflow,

    #[error("invalid configuration: {0}")]
    InvalidSpec(String),

    #[error("realized delay of stage {stage} is {value_fs} fs; every stage delay must be positive")]
    NonPositiveStageDelay { stage: usize, value_fs: i64 },

    #[error("sampler bank length mismatch: {starts} start taps vs {stops} stop taps")]
    TapCountMismatch { starts: usize, stops: usize },

    #[error("transfer sweeps require a jitter-free converter (jitter sigma is {sigma_fs} fs); use single_shot for noisy statistics")]
    JitteredSweep { sigma_fs: i64 },

    #[error("sweep grid is empty: t_min {t_min_fs} fs must not exceed t_max {t_max_fs} fs")]
    EmptySweepGrid { t_min_fs: i64, t_max_fs: i64 },

    #[error("sweep step must be at least 1 fs, got {step_fs} fs")]
    InvalidSweepStep { step_fs: i64 },

    #[error("transfer curve code decreases at point {index}; transition extraction needs a monotone curve")]
    NonMonotoneCurve { index: usize },

    #[error("nonlinearity analysis needs at least 2 transitions, got {0}")]
    TooFewTransitions(usize),

    #[error("interval exceeds the converter range (code saturated at {code})")]
    Overrange { code: u32 },

    #[error("event position {position_mm} mm lies outside the detector segment ±{half_separation_mm} mm")]
    PositionOutsideSegment {
        position_mm: f64,
        half_separation_mm: f64,
    },

    #[error("position window [{min_mm}, {max_mm}] mm exceeds the measurable window ±{limit_mm} mm")]
    PositionWindowOutOfRange {
        min_mm: f64,
        max_mm: f64,
        limit_mm: f64,
    },

    #[error("{what} must be at least 1")]
    EmptyRun { what: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;
