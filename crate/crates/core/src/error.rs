use alloc::boxed::Box;
use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The truncation does not determine the requested quantity.
    #[error("horizon exceeded: requested {requested}, set is only known up to {bound}")]
    Horizon { requested: u64, bound: u64 },
    #[error("series of length {len} is too short for difference order {order}")]
    Length { len: usize, order: usize },
    #[error("exact count does not fit in 64 bits")]
    Overflow,
    #[error("elements must be strictly increasing (violated at index {index})")]
    NotIncreasing { index: usize },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("degenerate construction: {0}")]
    Degenerate(String),
    #[error("{0}")]
    Sampling(Box<SamplingFailure>),
}

/// Diagnostics of the best trial when rejection sampling gives up.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingFailure {
    pub trials: u64,
    pub best_trial: u64,
    /// `max_n |R_C(n) - R_C(n-1)|` of the best trial.
    pub best_max_step: u64,
    /// `B(C, λ, M(d+1)-1)` of the best trial.
    pub best_blocks: u64,
    pub step_threshold: f64,
    pub block_threshold: f64,
}

impl core::fmt::Display for SamplingFailure {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "no accepted sample in {} trials; best trial {} had max step {} (threshold {:.3}) and {} blocks (threshold {:.3})",
            self.trials,
            self.best_trial,
            self.best_max_step,
            self.step_threshold,
            self.best_blocks,
            self.block_threshold
        )
    }
}

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
