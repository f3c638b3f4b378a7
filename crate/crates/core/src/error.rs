use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid shift {shift} for circulant size {p}")]
    InvalidShift { shift: u32, p: u32 },

    #[error("invalid parity-check matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("invalid fixed-point format: {0}")]
    InvalidFormat(String),

    #[error("no girth >= {min_girth} sample found in {attempts} attempts")]
    SamplingFailed { min_girth: u32, attempts: usize },

    #[error("dimension {0} exceeds oracle capacity")]
    Capacity(usize),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown built-in code {0:?}")]
    UnknownCode(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Dimension { expected, got })
    }
}
