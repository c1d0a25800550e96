use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the orbital kinematics, the necessary-condition
/// machinery, and the extremal propagator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The conic factor 1 + e cos(theta) is not positive, so the angular
    /// momentum and every radical built on it are undefined.
    #[error("conic factor 1 + e cos(theta) = {value:.6e} must be positive")]
    ConicDegenerate { value: f64 },

    /// The thrust angle left the admissible set where 1 - 3 cos^2(beta) >= 0.
    #[error("beta = {beta:.12} outside the admissible domain (1 - 3 cos^2 beta = {value:.3e})")]
    BetaOutsideDomain { beta: f64, value: f64 },

    /// Eccentricity too small for the thrust part of the true-anomaly rate.
    #[error("eccentricity {e:.3e} at or below floor {floor:.1e}; true-anomaly rate undefined under thrust")]
    DegenerateEccentricity { e: f64, floor: f64 },

    /// The optimal thrust direction p_v / |p_v| does not exist.
    #[error("velocity costate is zero; thrust direction undefined")]
    ZeroVelocityCostate,

    /// Reduced switching function cannot be classified.
    #[error("switching function indeterminate (|p_v| = 0 and p_m = 0)")]
    IndeterminateSwitching,

    #[error("invalid state: {0}")]
    InvalidState(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),

    #[error("propagation aborted at t = {t:.6e}: {reason}")]
    PropagationAborted { t: f64, reason: &'static str },

    /// The necessary-condition gate |psi| <= tol rejected the input.
    #[error("necessary-condition gate violated: |psi| = {psi:.3e} > {tol:.1e}")]
    GateViolated { psi: f64, tol: f64 },

    /// The enumerated zero count escaped the theoretical bounds, which
    /// indicates a scan-resolution failure rather than a property of the
    /// equation.
    #[error("root count {count} outside [6, 10] at e = {e:.6}, theta = {theta:.6} (scan resolution failure)")]
    RootCountViolation { count: usize, e: f64, theta: f64 },

    #[error("gravitational parameters disagree: point mu = {point_mu}, engine mu = {engine_mu}")]
    MuMismatch { point_mu: f64, engine_mu: f64 },
}
