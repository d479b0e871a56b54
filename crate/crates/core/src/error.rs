use thiserror::Error;

/// Everything that can go wrong when building or analysing two-qubit objects.
///
/// A failing verdict (e.g. a decomposition whose separable part is entangled)
/// is *not* an error; errors are reserved for inputs that violate an
/// operation's preconditions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unsupported matrix dimension {0} (expected 2, 3 or 4)")]
    UnsupportedDimension(usize),

    #[error("matrix is not Hermitian: max |M - M^dagger| = {asymmetry:e}")]
    NotHermitian { asymmetry: f64 },

    #[error("state is not normalized: sum |c_i|^2 = {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("trace must be 1, got {re} + {im}i")]
    BadTrace { re: f64, im: f64 },

    #[error(
        "matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:e} < -{tolerance:e}"
    )]
    NotPositive { min_eigenvalue: f64, tolerance: f64 },

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("invalid option: {0}")]
    InvalidOption(String),

    #[error("no feasible quasi-optimal decomposition at sin 2theta = {sin2theta}")]
    Infeasible { sin2theta: f64 },

    #[error("eigensolver residual {residual:e} exceeds the accepted bound")]
    Inaccurate { residual: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_range(
    name: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    range: &'static str,
) -> Result<f64> {
    if value.is_finite() && value >= lo && value <= hi {
        Ok(value)
    } else {
        Err(Error::OutOfRange { name, value, range })
    }
}
