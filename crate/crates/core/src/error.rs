use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: line {line}: malformed row: {reason}")]
    MalformedRow {
        path: PathBuf,
        line: usize,
        reason: String,
    },
    #[error("constellation is empty")]
    EmptyConstellation,
    #[error("negative probability {value} at point {index}")]
    NegativeProbability { index: usize, value: f64 },
    #[error("probabilities must sum to 1 (got {sum})")]
    ProbabilitySum { sum: f64 },
    #[error("constellation must be zero-mean (E{{ax}} = {mean_x}, E{{ay}} = {mean_y})")]
    NonZeroMean { mean_x: String, mean_y: String },
    #[error("moment order {order} exceeds 6")]
    MomentOrder { order: u32 },
    #[error("invalid link parameter: {0}")]
    InvalidLink(String),
    #[error("invalid pulse spectrum: {0}")]
    InvalidPulse(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("chi index {0} out of range 1..=11")]
    ChiIndex(usize),
    #[error("frequency {f} Hz outside the PSD support |f| <= {limit} Hz")]
    FrequencyRange { f: f64, limit: f64 },
    #[error("integration accuracy: residual imaginary part {imag:e} exceeds 1e-6 of {scale:e} at f = {f} Hz")]
    IntegrationAccuracy { f: f64, imag: f64, scale: f64 },
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("invalid oracle configuration: {0}")]
    InvalidOracle(String),
    #[error("W = {w} exceeds the brute-force limit {limit}")]
    TooLarge { w: usize, limit: usize },
    #[error("config: {0}")]
    Config(String),
    #[error("{0}")]
    Output(String),
}

pub type Result<T> = std::result::Result<T, Error>;
