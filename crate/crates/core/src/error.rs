use core::fmt;

/// Error type shared by the numerics and the physics layers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    Domain { what: String },
    /// A value failed construction-time validation.
    Invalid { what: String },
    /// Adaptive refinement hit its depth limit before meeting the tolerance.
    /// Carries the best available estimate and its a-posteriori error bound.
    Convergence {
        best: f64,
        error_bound: f64,
        evaluations: u32,
    },
}

impl Error {
    pub fn domain(what: impl Into<String>) -> Self {
        Error::Domain { what: what.into() }
    }

    pub fn invalid(what: impl Into<String>) -> Self {
        Error::Invalid { what: what.into() }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what } => write!(f, "domain error: {what}"),
            Error::Invalid { what } => write!(f, "invalid input: {what}"),
            Error::Convergence {
                best,
                error_bound,
                evaluations,
            } => write!(
                f,
                "quadrature did not converge after {evaluations} evaluations \
                 (best estimate {best:e}, error bound {error_bound:e})"
            ),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<V> = core::result::Result<V, Error>;
