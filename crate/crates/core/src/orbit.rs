//! Planar two-body kinematics and the Gauss variational rates.
//!
//! Everything here is expressed in the physical variables of a planar
//! osculating conic: radius norm, eccentricity, true anomaly, plus the
//! spacecraft mass and the gravitational parameter. All quantities are
//! dimensionless; `mu = 1` is the canonical normalization.

use crate::error::{Error, Result};
use crate::vec3::Vec3;

/// Below this eccentricity the thrust part of the true-anomaly rate
/// (which divides by e) is treated as degenerate.
pub const E_FLOOR: f64 = 1e-8;

/// Below this extracted eccentricity the argument of periapsis is
/// reported as 0 by convention and the orbit flagged circular.
pub const E_CIRCULAR: f64 = 1e-12;

/// Instantaneous planar orbital state in element form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarOrbitPoint {
    /// Radius norm, > 0.
    pub r_norm: f64,
    /// Eccentricity, >= 0.
    pub e: f64,
    /// True anomaly, radians.
    pub theta: f64,
    /// Spacecraft mass, > 0.
    pub m: f64,
    /// Gravitational parameter, > 0.
    pub mu: f64,
}

impl PlanarOrbitPoint {
    pub fn new(r_norm: f64, e: f64, theta: f64, m: f64, mu: f64) -> Result<Self> {
        if !(r_norm > 0.0) {
            return Err(Error::InvalidParameter("r_norm must be positive"));
        }
        if !(e >= 0.0) {
            return Err(Error::InvalidParameter("eccentricity must be non-negative"));
        }
        if !(m > 0.0) {
            return Err(Error::InvalidParameter("mass must be positive"));
        }
        if !(mu > 0.0) {
            return Err(Error::InvalidParameter("mu must be positive"));
        }
        let p = PlanarOrbitPoint { r_norm, e, theta, m, mu };
        p.conic_factor()?;
        Ok(p)
    }

    /// Same point at a different radius; used by the radius sweeps, where
    /// (e, theta) fix the thrust angles and the radius only rescales.
    pub fn with_radius(self, r_norm: f64) -> Result<Self> {
        Self::new(r_norm, self.e, self.theta, self.m, self.mu)
    }

    /// 1 + e cos(theta). Every radical in the singular-arc algebra
    /// requires this to be positive.
    pub fn conic_factor(&self) -> Result<f64> {
        let value = 1.0 + self.e * self.theta.cos();
        if value > 0.0 {
            Ok(value)
        } else {
            Err(Error::ConicDegenerate { value })
        }
    }
}

/// In-plane thrust geometry: angle from the position vector to the thrust
/// direction, throttle factor, and maximum thrust.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThrustGeometry {
    /// Angle between thrust direction and position vector, radians,
    /// measured counterclockwise from r.
    pub beta: f64,
    /// Throttle factor in [0, 1].
    pub c: f64,
    /// Maximum thrust, >= 0.
    pub t_max: f64,
}

impl ThrustGeometry {
    pub fn new(beta: f64, c: f64, t_max: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&c) {
            return Err(Error::InvalidParameter("throttle factor must lie in [0, 1]"));
        }
        if !(t_max >= 0.0) {
            return Err(Error::InvalidParameter("t_max must be non-negative"));
        }
        Ok(ThrustGeometry { beta, c, t_max })
    }

    pub fn coasting() -> Self {
        ThrustGeometry { beta: 0.0, c: 0.0, t_max: 0.0 }
    }

    /// Radial and transverse thrust components (T_r, T_s).
    pub fn components(&self) -> (f64, f64) {
        let f = self.c * self.t_max;
        (f * self.beta.cos(), f * self.beta.sin())
    }
}

/// Norm of the specific angular momentum, sqrt(mu r (1 + e cos theta)).
pub fn angular_momentum(p: &PlanarOrbitPoint) -> Result<f64> {
    Ok((p.mu * p.r_norm * p.conic_factor()?).sqrt())
}

/// Radial and transverse velocity components plus the squared speed.
///
/// `v_sq` is the closed form mu/r * ((1+e cos)^2 + e^2 sin^2) / (1+e cos);
/// it equals `v_r^2 + v_perp^2` identically.
pub fn velocity_components(p: &PlanarOrbitPoint) -> Result<(f64, f64, f64)> {
    let ecf = p.conic_factor()?;
    let h = (p.mu * p.r_norm * ecf).sqrt();
    let v_r = p.mu / h * p.e * p.theta.sin();
    let v_perp = p.mu / h * ecf;
    let es = p.e * p.theta.sin();
    let v_sq = p.mu / p.r_norm * ((ecf * ecf + es * es) / ecf);
    Ok((v_r, v_perp, v_sq))
}

/// Rate of the position polar angle, |h| / r^2 = sqrt(mu (1+e cos) / r^3).
///
/// For planar transfers the perturbation parts of theta-dot and
/// omega-dot cancel, so this is the full alpha rate under thrust as well.
pub fn alpha_dot(p: &PlanarOrbitPoint) -> Result<f64> {
    Ok((p.mu * p.conic_factor()? / p.r_norm.powi(3)).sqrt())
}

/// Gauss variational rates (e_dot, theta_dot) under radial/transverse
/// thrust.
///
/// The true-anomaly rate carries a 1/e factor on its thrust part, so
/// thrusting at eccentricities at or below [`E_FLOOR`] is rejected.
pub fn gauss_rates(p: &PlanarOrbitPoint, g: &ThrustGeometry) -> Result<(f64, f64)> {
    let ecf = p.conic_factor()?;
    let (t_r, t_s) = g.components();
    let a_r = t_r / p.m;
    let a_s = t_s / p.m;
    let ct = p.theta.cos();
    let st = p.theta.sin();

    let e_dot = (p.r_norm * ecf / p.mu).sqrt() * st * a_r
        + (p.r_norm / (p.mu * ecf)).sqrt() * ((2.0 + p.e * ct) * ct + p.e) * a_s;

    let theta_dot_2b = (p.mu * ecf / p.r_norm.powi(3)).sqrt();
    let thrusting = g.c * g.t_max > 0.0;
    let theta_dot = if !thrusting {
        theta_dot_2b
    } else {
        if p.e <= E_FLOOR {
            return Err(Error::DegenerateEccentricity { e: p.e, floor: E_FLOOR });
        }
        theta_dot_2b
            + (p.r_norm / (p.mu * ecf)).sqrt() / p.e
                * (ecf * ct * a_r - (2.0 + p.e * ct) * st * a_s)
    };
    Ok((e_dot, theta_dot))
}

/// Cartesian position and velocity of a planar conic point.
///
/// The position polar angle is alpha = theta + omega; velocity is
/// decomposed into v_r along the radial direction and v_perp along the
/// transverse direction of a prograde (positive angular momentum) orbit.
pub fn cartesian_from_elements(p: &PlanarOrbitPoint, omega: f64) -> Result<(Vec3, Vec3)> {
    let (v_r, v_perp, _) = velocity_components(p)?;
    let alpha = p.theta + omega;
    let (sa, ca) = alpha.sin_cos();
    let r_hat = Vec3::new(ca, sa, 0.0);
    let t_hat = Vec3::new(-sa, ca, 0.0);
    Ok((r_hat * p.r_norm, r_hat * v_r + t_hat * v_perp))
}

/// Result of the inverse element extraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractedElements {
    pub point: PlanarOrbitPoint,
    /// Argument of periapsis; 0 by convention when the orbit is circular.
    pub omega: f64,
    /// True when e fell below [`E_CIRCULAR`] and omega is conventional.
    pub circular: bool,
}

/// Inverse of [`cartesian_from_elements`] via the eccentricity vector.
///
/// Requires a prograde planar state (positive z angular momentum).
pub fn elements_from_cartesian(r_vec: Vec3, v_vec: Vec3, mu: f64, m: f64) -> Result<ExtractedElements> {
    let r = r_vec.norm();
    if !(r > 0.0) {
        return Err(Error::InvalidState("zero position vector"));
    }
    let h_vec = r_vec.cross(v_vec);
    if !(h_vec.z > 0.0) {
        return Err(Error::InvalidState("state is not prograde planar"));
    }
    let e_vec = v_vec.cross(h_vec) * (1.0 / mu) - r_vec * (1.0 / r);
    let e = e_vec.norm();
    let alpha = r_vec.y.atan2(r_vec.x);
    let (omega, circular) = if e < E_CIRCULAR {
        (0.0, true)
    } else {
        (e_vec.y.atan2(e_vec.x), false)
    };
    let theta = wrap_angle(alpha - omega);
    let point = PlanarOrbitPoint::new(r, e, theta, m, mu)?;
    Ok(ExtractedElements { point, omega, circular })
}

/// Wrap an angle to [0, 2 pi).
pub fn wrap_angle(a: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let mut w = a % tau;
    if w < 0.0 {
        w += tau;
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn point(r: f64, e: f64, theta: f64) -> PlanarOrbitPoint {
        PlanarOrbitPoint::new(r, e, theta, 1.0, 1.0).unwrap()
    }

    #[test]
    fn angular_momentum_examples() {
        assert!((angular_momentum(&point(1.0, 0.0, 2.3)).unwrap() - 1.0).abs() < 1e-15);
        assert!((angular_momentum(&point(1.0, 0.2, 0.0)).unwrap() - 1.2f64.sqrt()).abs() < 1e-15);
        assert!((angular_momentum(&point(2.0, 0.5, PI)).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn conic_factor_guard() {
        let p = PlanarOrbitPoint { r_norm: 1.0, e: 1.5, theta: PI, m: 1.0, mu: 1.0 };
        assert!(matches!(angular_momentum(&p), Err(Error::ConicDegenerate { .. })));
        assert!(PlanarOrbitPoint::new(1.0, 1.5, PI, 1.0, 1.0).is_err());
    }

    #[test]
    fn velocity_examples() {
        let (v_r, v_p, v_sq) = velocity_components(&point(1.0, 0.0, 1.1)).unwrap();
        assert!(v_r.abs() < 1e-15);
        assert!((v_p - 1.0).abs() < 1e-15);
        assert!((v_sq - 1.0).abs() < 1e-15);

        let (v_r, v_p, v_sq) = velocity_components(&point(1.0, 0.2, FRAC_PI_2)).unwrap();
        assert!((v_r - 0.2).abs() < 1e-14);
        assert!((v_p - 1.0).abs() < 1e-14);
        assert!((v_sq - 1.04).abs() < 1e-14);
    }

    #[test]
    fn alpha_dot_examples() {
        assert!((alpha_dot(&point(1.0, 0.0, 0.4)).unwrap() - 1.0).abs() < 1e-15);
        assert!((alpha_dot(&point(4.0, 0.0, 0.4)).unwrap() - 0.125).abs() < 1e-15);
    }

    #[test]
    fn alpha_dot_matches_h_over_r_sq() {
        let mut s = 0.123_f64;
        for _ in 0..200 {
            s = (s * 9301.0 + 49297.0) % 233280.0;
            let e = s / 233280.0 * 0.85;
            s = (s * 9301.0 + 49297.0) % 233280.0;
            let theta = s / 233280.0 * std::f64::consts::TAU;
            s = (s * 9301.0 + 49297.0) % 233280.0;
            let r = 0.2 + s / 233280.0 * 10.0;
            let p = point(r, e, theta);
            let lhs = alpha_dot(&p).unwrap() * r * r;
            let rhs = angular_momentum(&p).unwrap();
            assert!((lhs - rhs).abs() <= 1e-14 * rhs.abs());
        }
    }

    #[test]
    fn gauss_rates_coasting() {
        let p = point(1.3, 0.4, 0.9);
        let (e_dot, theta_dot) = gauss_rates(&p, &ThrustGeometry::coasting()).unwrap();
        assert_eq!(e_dot, 0.0);
        assert!((theta_dot - alpha_dot(&p).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn gauss_rates_pure_radial_at_periapsis() {
        // sin(theta) = 0 kills the radial contribution to e_dot.
        let p = point(1.0, 0.2, 0.0);
        let g = ThrustGeometry::new(0.0, 1.0, 0.01).unwrap();
        let (e_dot, _) = gauss_rates(&p, &g).unwrap();
        assert!(e_dot.abs() < 1e-17);
    }

    #[test]
    fn gauss_rates_degenerate_eccentricity() {
        let p = point(1.0, 0.0, 0.7);
        let g = ThrustGeometry::new(1.2, 0.5, 1.0).unwrap();
        assert!(matches!(
            gauss_rates(&p, &g),
            Err(Error::DegenerateEccentricity { .. })
        ));
        // Coasting at e = 0 stays well defined.
        assert!(gauss_rates(&p, &ThrustGeometry::coasting()).is_ok());
    }

    #[test]
    fn cartesian_examples() {
        let (r, v) = cartesian_from_elements(&point(1.0, 0.0, 0.0), 0.0).unwrap();
        assert!((r - Vec3::new(1.0, 0.0, 0.0)).norm() < 1e-15);
        assert!((v - Vec3::new(0.0, 1.0, 0.0)).norm() < 1e-15);

        let (r, v) = cartesian_from_elements(&point(1.0, 0.2, FRAC_PI_2), 0.0).unwrap();
        assert!((r - Vec3::new(0.0, 1.0, 0.0)).norm() < 1e-15);
        assert!((v - Vec3::new(-1.0, 0.2, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn circular_extraction_is_flagged() {
        let p = point(1.0, 0.0, 0.0);
        let (r, v) = cartesian_from_elements(&p, 0.0).unwrap();
        let x = elements_from_cartesian(r, v, 1.0, 1.0).unwrap();
        assert!(x.circular);
        assert_eq!(x.omega, 0.0);
    }

    #[test]
    fn retrograde_rejected() {
        let r = Vec3::new(1.0, 0.0, 0.0);
        let v = Vec3::new(0.0, -1.0, 0.0);
        assert!(elements_from_cartesian(r, v, 1.0, 1.0).is_err());
    }
}
