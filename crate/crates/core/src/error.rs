use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of the numerical pipeline.
///
/// Numeric payloads are carried as `f64` regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid {field}: {reason}")]
    InvalidInput { field: &'static str, reason: String },

    #[error("rapidity {0} is outside the supported range |zeta| <= 20")]
    RapidityOutOfRange(f64),

    #[error("profile has not been normalized")]
    UnnormalizedProfile,

    #[error("integral not converged: relative change {change:e} under grid doubling exceeds {tol:e}")]
    NonConvergent { change: f64, tol: f64 },

    #[error("non-finite integrand at node p={p}, theta={theta}, phi={phi}")]
    NonFiniteIntegrand { p: f64, theta: f64, phi: f64 },

    #[error("state {index} violates density-matrix invariant: {reason}")]
    InvalidState { index: usize, reason: String },

    #[error("state {index} is not pure (purity {purity})")]
    NotPure { index: usize, purity: f64 },

    #[error("singular system, no finite dual frame (condition number {condition:e})")]
    SingularSystem { condition: f64 },

    #[error("optimality not certified: duality gap {gap:e} exceeds {tol:e}")]
    SolverGap { gap: f64, tol: f64 },
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidInput {
            field,
            reason: reason.into(),
        }
    }

    /// True for errors caused by bad user input rather than numerical failure.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput { .. }
                | Error::RapidityOutOfRange(_)
                | Error::UnnormalizedProfile
                | Error::NotPure { .. }
        )
    }

    /// Short machine-readable tag, e.g. for a CSV status column.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput { .. } => "invalid_input",
            Error::RapidityOutOfRange(_) => "rapidity_out_of_range",
            Error::UnnormalizedProfile => "unnormalized_profile",
            Error::NonConvergent { .. } => "non_convergent",
            Error::NonFiniteIntegrand { .. } => "non_finite_integrand",
            Error::InvalidState { .. } => "invalid_state",
            Error::NotPure { .. } => "not_pure",
            Error::SingularSystem { .. } => "singular_system",
            Error::SolverGap { .. } => "solver_gap",
        }
    }
}
