//! The singular throttle factor c_s = B / A.
//!
//! Along a singular arc the defining identities can be differentiated once
//! more; the resulting expression is affine in the throttle, and solving
//! for it yields `c_s = B(|r|, e, m, theta, beta) / A(beta)` with
//! `A(beta) = (1 - 3 cos^2 beta) cos(beta) + 2 cos(beta) sin^2(beta)`.
//! Everything here is expressed in physical variables only; no costates
//! appear. The throttle is genuinely singular when it lands strictly
//! inside the throttle bounds; values outside are classified saturated,
//! and `A = 0` (only at beta = pi/2 + k pi on the admissible domain) is a
//! degeneracy with its own case analysis.

use crate::error::{Error, Result};
use crate::extremal::EngineParams;
use crate::orbit::{PlanarOrbitPoint, ThrustGeometry, E_FLOOR};
use crate::psi::{beta_radicand, psi, SignBranch};

/// |A| at or below this is treated as the analytic zero of A.
pub const A_TOL: f64 = 1e-9;
/// Gate on |psi| before evaluating the singular throttle.
pub const GATE_TOL: f64 = 1e-8;
/// Guard on 1 - 3 cos^2(beta) in denominators.
pub const DENOM_TOL: f64 = 1e-12;
/// Classification band: throttles within `epsilon` of the bounds are
/// saturated, not singular.
pub const SINGULAR_EPSILON: f64 = 1e-3;
/// Tolerance on cos(theta) and sin(theta) in the degeneracy case split.
pub const ANGLE_TOL: f64 = 1e-9;

/// A(beta) = (1 - 3 cos^2 beta) cos(beta) + 2 cos(beta) sin^2(beta).
///
/// Algebraically equal to cos(beta) (5 sin^2(beta) - 2); on the
/// admissible domain its only zeros are beta = pi/2 + k pi.
pub fn a_term(beta: f64) -> f64 {
    let (s, c) = beta.sin_cos();
    (1.0 - 3.0 * c * c) * c + 2.0 * c * s * s
}

/// Thrust-rate kernel H1 from the eccentricity-rate contribution to the
/// polar-angle acceleration.
pub fn h1(p: &PlanarOrbitPoint, beta: f64) -> Result<f64> {
    let ecf = p.conic_factor()?;
    let (st, ct) = p.theta.sin_cos();
    let (sb, cb) = beta.sin_cos();
    Ok((ct * st * cb + (ct * ct * (2.0 + p.e * ct) + p.e * ct) / ecf * sb) / (2.0 * p.r_norm))
}

/// Thrust-rate kernel H2 from the true-anomaly-rate contribution; the sum
/// H1 + H2 collapses to sin(beta)/|r|.
pub fn h2(p: &PlanarOrbitPoint, beta: f64) -> Result<f64> {
    let ecf = p.conic_factor()?;
    let (st, ct) = p.theta.sin_cos();
    let (sb, cb) = beta.sin_cos();
    Ok((-ct * st * cb + st * st * (2.0 + p.e * ct) / ecf * sb) / (2.0 * p.r_norm))
}

/// Second time derivative of the position polar angle, reduced form:
/// `-2 mu e sin(theta) / |r|^3 + c T_max sin(beta) / (m |r|)`.
pub fn alpha_ddot(p: &PlanarOrbitPoint, g: &ThrustGeometry) -> Result<f64> {
    p.conic_factor()?;
    Ok(-2.0 * p.mu / p.r_norm.powi(3) * p.e * p.theta.sin()
        + g.c * g.t_max / p.m * g.beta.sin() / p.r_norm)
}

/// The throttle-free part D of the thrust-angle acceleration
/// `beta_ddot = D - c T_max sin(beta) / (m |r|)`.
pub fn d_term(p: &PlanarOrbitPoint, beta: f64, branch: SignBranch) -> Result<f64> {
    let ecf = p.conic_factor()?;
    let w = beta_radicand(beta);
    if w <= DENOM_TOL {
        return Err(Error::BetaOutsideDomain { beta, value: w });
    }
    let red = branch.red.as_f64();
    let (sb, cb) = beta.sin_cos();
    let es = p.e * p.theta.sin();
    let q = (w / ecf).sqrt();
    let k = p.mu / p.r_norm.powi(3);
    Ok(k * (red * (6.0 * cb * sb * ecf.sqrt() * (-1.0 + red * q) - 3.0 * w * es / ecf.sqrt())
        / (2.0 * w.sqrt())
        + 2.0 * es))
}

/// Second time derivative of the thrust angle on the declared rate branch.
pub fn beta_ddot(p: &PlanarOrbitPoint, g: &ThrustGeometry, branch: SignBranch) -> Result<f64> {
    Ok(d_term(p, g.beta, branch)? - g.c * g.t_max / p.m * g.beta.sin() / p.r_norm)
}

struct StateFormTerms {
    /// Throttle-free additive terms.
    free: [f64; 7],
    /// Coefficient of the throttle: the full expression is
    /// `sum(free) + c_coeff * c`.
    c_coeff: f64,
}

fn state_form_terms(
    p: &PlanarOrbitPoint,
    beta: f64,
    branch: SignBranch,
    t_max: f64,
) -> Result<StateFormTerms> {
    let ecf = p.conic_factor()?;
    let w = beta_radicand(beta);
    if w <= DENOM_TOL {
        return Err(Error::BetaOutsideDomain { beta, value: w });
    }
    let red = branch.red.as_f64();
    let blue = branch.blue.as_f64();
    let (sb, cb) = beta.sin_cos();
    let cos2b = cb * cb - sb * sb;
    let es = p.e * p.theta.sin();
    let q = (w / ecf).sqrt();
    let m1 = -1.0 + red * q;
    let k = p.mu / p.r_norm.powi(3);
    let d = d_term(p, beta, branch)?;

    let free = [
        -6.0 * k * cb * cb * sb * sb,
        -blue * 2.0 * k * w.sqrt() * cos2b * ecf.sqrt() * m1,
        -k * w * es * es / ecf,
        -blue * 6.0 * k * cb * sb * w.sqrt() * es / ecf.sqrt(),
        -k * w * ((ecf * ecf + es * es) / ecf - 1.0),
        2.0 * k * cos2b * ecf * m1 * m1,
        2.0 * cb * sb * d,
    ];
    let c_coeff = -t_max / (p.m * p.r_norm) * (w * cb + 2.0 * cb * sb * sb);
    Ok(StateFormTerms { free, c_coeff })
}

/// B(|r|, e, m, theta, beta): the throttle-free side of the once-more
/// differentiated singular identity, scaled by |r| m / T_max.
pub fn b_term(p: &PlanarOrbitPoint, beta: f64, branch: SignBranch, t_max: f64) -> Result<f64> {
    let terms = state_form_terms(p, beta, branch, t_max)?;
    Ok(p.r_norm * p.m / t_max * terms.free.iter().sum::<f64>())
}

/// The state-variable form of the differentiated singular identity,
/// evaluated at throttle `c`. It vanishes exactly at `c = c_s` and is
/// affine in `c` with slope `-T_max A(beta) / (m |r|)`.
pub fn d3dot_state_form(
    p: &PlanarOrbitPoint,
    beta: f64,
    branch: SignBranch,
    c: f64,
    eng: &EngineParams,
) -> Result<f64> {
    check_mu(p, eng)?;
    let terms = state_form_terms(p, beta, branch, eng.t_max)?;
    Ok(terms.free.iter().sum::<f64>() + terms.c_coeff * c)
}

/// Magnitude of the largest additive term of the state form; the
/// reference scale for its residuals.
pub fn d3dot_state_scale(
    p: &PlanarOrbitPoint,
    beta: f64,
    branch: SignBranch,
    c: f64,
    eng: &EngineParams,
) -> Result<f64> {
    check_mu(p, eng)?;
    let terms = state_form_terms(p, beta, branch, eng.t_max)?;
    let mut scale = (terms.c_coeff * c).abs();
    for t in terms.free {
        scale = scale.max(t.abs());
    }
    Ok(scale)
}

fn check_mu(p: &PlanarOrbitPoint, eng: &EngineParams) -> Result<()> {
    if p.mu != eng.mu {
        return Err(Error::MuMismatch { point_mu: p.mu, engine_mu: eng.mu });
    }
    Ok(())
}

/// Classification of a singular-throttle evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThrottleClass {
    /// epsilon <= c_s <= 1 - epsilon.
    Singular,
    /// c_s > 1 - epsilon: the arc demands more than full thrust.
    SaturatedHigh,
    /// c_s < epsilon, including negative values.
    SaturatedLow,
    /// |A(beta)| <= tolerance; the throttle is not determined here.
    ADegenerate,
}

impl ThrottleClass {
    pub fn label(self) -> &'static str {
        match self {
            ThrottleClass::Singular => "singular",
            ThrottleClass::SaturatedHigh => "saturated_high",
            ThrottleClass::SaturatedLow => "saturated_low",
            ThrottleClass::ADegenerate => "a_degenerate",
        }
    }
}

/// Result of a singular-throttle evaluation.
///
/// `c_s = b_val / a_val` whenever `|a_val| > A_TOL`; in the degenerate
/// case `c_s` is NaN and the classification records the degeneracy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularEval {
    pub c_s: f64,
    pub a_val: f64,
    pub b_val: f64,
    pub d_val: f64,
    pub classification: ThrottleClass,
}

/// Evaluate the singular throttle at a configuration already known to
/// satisfy the necessary condition; `classify_epsilon` is normally
/// [`SINGULAR_EPSILON`].
pub fn singular_throttle_ungated(
    p: &PlanarOrbitPoint,
    beta: f64,
    branch: SignBranch,
    eng: &EngineParams,
) -> Result<SingularEval> {
    check_mu(p, eng)?;
    singular_throttle_with_epsilon(p, beta, branch, eng.t_max, SINGULAR_EPSILON)
}

/// Evaluate the singular throttle with an explicit classification band.
pub fn singular_throttle_with_epsilon(
    p: &PlanarOrbitPoint,
    beta: f64,
    branch: SignBranch,
    t_max: f64,
    epsilon: f64,
) -> Result<SingularEval> {
    let a_val = a_term(beta);
    let d_val = d_term(p, beta, branch)?;
    let b_val = b_term(p, beta, branch, t_max)?;
    if a_val.abs() <= A_TOL {
        return Ok(SingularEval {
            c_s: f64::NAN,
            a_val,
            b_val,
            d_val,
            classification: ThrottleClass::ADegenerate,
        });
    }
    let c_s = b_val / a_val;
    let classification = if c_s < epsilon {
        ThrottleClass::SaturatedLow
    } else if c_s > 1.0 - epsilon {
        ThrottleClass::SaturatedHigh
    } else {
        ThrottleClass::Singular
    };
    Ok(SingularEval { c_s, a_val, b_val, d_val, classification })
}

/// Evaluate the singular throttle, first checking the necessary-condition
/// gate `|psi(e, theta, beta)| <=` [`GATE_TOL`]. Use
/// [`singular_throttle_ungated`] to explore off the constraint surface.
pub fn singular_throttle(
    p: &PlanarOrbitPoint,
    beta: f64,
    branch: SignBranch,
    eng: &EngineParams,
) -> Result<SingularEval> {
    check_mu(p, eng)?;
    let residual = psi(p.e, p.theta, beta, branch)?;
    if residual.abs() > GATE_TOL {
        return Err(Error::GateViolated { psi: residual.abs(), tol: GATE_TOL });
    }
    singular_throttle_ungated(p, beta, branch, eng)
}

/// Case split of the A = 0 degeneracy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegeneracyKind {
    /// e = 0 and cos(theta) = 0: A may vanish on a whole sub-interval.
    PersistentPossible,
    /// A vanishes only at isolated instants (the anomaly rate sweeps
    /// the state through the zero).
    IsolatedOnly,
    /// cos(beta) bounded away from zero: A does not vanish at all.
    NonDegenerate,
}

/// Classify whether A(beta) = 0 can persist at this state.
pub fn a_degeneracy_analysis(p: &PlanarOrbitPoint, beta: f64) -> DegeneracyKind {
    if beta.cos().abs() > A_TOL {
        DegeneracyKind::NonDegenerate
    } else if p.e <= E_FLOOR && p.theta.cos().abs() <= ANGLE_TOL {
        DegeneracyKind::PersistentPossible
    } else {
        DegeneracyKind::IsolatedOnly
    }
}
