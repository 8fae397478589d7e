//! Crate-wide error type and the process exit-code contract.

use thiserror::Error;

/// Everything that can go wrong across the toolkit.
///
/// Errors split into two families with distinct exit codes for CI:
/// mathematical refusals (a hypothesis of the construction fails on the
/// given data) exit with 3, configuration and I/O problems exit with 2.
/// Residual failures are not errors; they are reported as failed bounds
/// and exit with 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left} vs {right}")]
    DimensionMismatch {
        op: &'static str,
        left: usize,
        right: usize,
    },

    #[error("operator is not hermitian: relative asymmetry {defect:.3e} exceeds {tol:.3e}")]
    NotHermitian { defect: f64, tol: f64 },

    #[error(
        "commutant condition [x x\u{2020}, h] = 0 violated: interior residual {residual:.3e} \
         exceeds {bound:.3e}"
    )]
    CommutantViolated { residual: f64, bound: f64 },

    #[error(
        "N1 = x\u{2020}x is numerically singular on the trusted block: min singular value \
         {min_singular:.3e} is below {bound:.3e}, and invertibility of N1 is required for \
         the partner construction"
    )]
    SingularN1 { min_singular: f64, bound: f64 },

    #[error(
        "N1 has a kernel and the system N1\u{b7}h2 = x\u{2020}h1x is inconsistent on it \
         (kernel leakage {leakage:.3e}); refusing to divide"
    )]
    InconsistentKernel { leakage: f64 },

    #[error(
        "eigenvalue #{index} lies in a degenerate cluster of size {size}; \
         this operation requires a nondegenerate eigenvalue"
    )]
    DegenerateEigenvalue { index: usize, size: usize },

    #[error("spectrum is degenerate: {size} eigenvalues cluster around index {index}")]
    DegenerateSpectrum { index: usize, size: usize },

    #[error("invalid parameter {name}: requires {requirement}")]
    InvalidParameter { name: String, requirement: String },

    #[error("not a factorized pair: {detail}; the superalgebra holds only when h1 = A\u{2020}A and h2 = AA\u{2020}")]
    NotFactorized { detail: String },

    #[error("J = {j} lies outside the convergence domain [0, {radius})")]
    OutsideConvergenceDomain { j: f64, radius: f64 },

    #[error("spectrum not admissible for coherent-state synthesis: {reason}")]
    InadmissibleSpectrum { reason: String },

    #[error("unknown scenario '{0}'")]
    UnknownScenario(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed operator file {path}: {detail}")]
    MalformedOperatorFile { path: String, detail: String },
}

impl Error {
    /// Exit code for the CLI: 2 for configuration/I-O problems, 3 for
    /// mathematical refusals.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DimensionMismatch { .. }
            | Error::UnknownScenario(_)
            | Error::Config(_)
            | Error::Io { .. }
            | Error::MalformedOperatorFile { .. } => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
