use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("class (a={a}, b={b}) is empty for {n_sites} sites")]
    EmptyClass { a: usize, b: usize, n_sites: usize },

    #[error("requested size needs {required_bits} bits of basis states, cap is {cap_bits}")]
    CapExceeded { required_bits: u32, cap_bits: u32 },

    #[error("site window starting at {site} is out of range for {n_sites} sites")]
    SiteOutOfRange { site: usize, n_sites: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("bulk forms are not proportional: {0}")]
    FormsInequivalent(String),

    #[error("iterative eigensolver did not converge: {0}")]
    ConvergenceFailure(String),

    #[error("cut {cut} is out of range for {n_sites} sites")]
    CutOutOfRange { cut: usize, n_sites: usize },

    #[error("spectrum is not normalized (total weight {total})")]
    NotNormalized { total: f64 },

    #[error("verification mismatch: {0}")]
    MismatchDetected(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
