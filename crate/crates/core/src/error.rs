use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("argument {arg} sits on a pole")]
    Pole { arg: Complex64 },
    #[error("{what} did not converge (estimate {estimate:e})")]
    NonConvergence { what: &'static str, estimate: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("gamma product is not balanced: {0}")]
    Unbalanced(String),
    #[error("q-number [{k}]_q = {value:e} is not positive; q too close to a root of unity")]
    RootOfUnity { k: usize, value: f64 },
    #[error("operator is not scalar (off-scalar residual {residual:e})")]
    NotScalar { residual: f64 },
    #[error("Hilbert space dimension {dim} exceeds the cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },
    #[error("Bethe roots did not converge: best residual {residual:e}, max |root| {max_root:e}")]
    NoConvergence { residual: f64, max_root: f64 },
    #[error("singular Jacobian in the Bethe equations (coincident roots)")]
    SingularJacobian,
    #[error("representation mismatch: {0}")]
    RepMismatch(String),
    #[error("not realizable as a finite matrix: {0}")]
    NotRealizable(String),
    #[error("ambiguous eigenvalue matching (gap {gap:e})")]
    DegenerateSpectrum { gap: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
