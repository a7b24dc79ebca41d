use thiserror::Error;

/// Errors produced anywhere in the simulation pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mixture is unstable: a12/a = {r12} must be below 1 (g1*g2 > g12^2)")]
    StabilityViolation { r12: f64 },

    #[error("only symmetric mixtures are supported: {0}")]
    NonSymmetricMixture(String),

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("frequency {omega} outside the tabulated dispersion range [{min}, {max}]")]
    OutOfRange { omega: f64, min: f64, max: f64 },

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("quadrature did not converge: value {value:e}, error estimate {error:e} after {levels} levels")]
    QuadratureFailure { value: f64, error: f64, levels: u32 },

    #[error("eigenvalue iteration failed (residual {residual:e})")]
    EigenFailure { residual: f64 },

    #[error("density matrix is not positive: minimum eigenvalue {min_eigenvalue:e}")]
    PositivityViolation { min_eigenvalue: f64 },

    #[error("time grid too coarse near t = {t}: sign structure of the decay rate unresolved")]
    GridTooCoarse { t: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and strictly positive",
        })
    }
}

pub(crate) fn ensure_non_negative(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and non-negative",
        })
    }
}
