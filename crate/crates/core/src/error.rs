use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// The expression has no formal adjoint inside the differential algebra.
    #[error("expression is outside the adjointable algebra: {0}")]
    NotInAlgebra(String),

    /// Peeling symmetric pieces left a nonzero remainder.
    #[error("expression is not formally symmetric: nonzero remainder at order {order}")]
    SymmetryViolation { order: usize },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// The leading coefficient has a root on (or numerically on) the unit circle.
    #[error("leading coefficient is not D-regular: root at distance {distance:.3e} from the unit circle")]
    NotRegular { distance: f64 },

    #[error("leading coefficient is not R-symmetric: {0}")]
    NotRSymmetric(String),

    /// The normalised leading symbol changes sign on the circle.
    #[error("leading symbol changes sign on the unit circle (min {min:.3e}, max {max:.3e})")]
    SignChange { min: f64, max: f64 },

    #[error("quadrature not resolved: {0}")]
    Quadrature(String),

    #[error("no convergence for a {size}x{size} problem: {reason}")]
    ConvergenceFailure { size: usize, reason: String },

    #[error("insufficient data: need {needed}, have {have}")]
    InsufficientData { needed: usize, have: usize },

    #[error("eigenvalue paths cannot be matched near t = {t}")]
    PathAmbiguity { t: f64 },

    #[error("recurrence breaks down at index {0}")]
    RecurrenceBreakdown(usize),

    /// A documented precondition does not hold.
    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
