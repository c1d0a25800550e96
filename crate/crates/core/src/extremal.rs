//! Full state + costate dynamics of the planar fuel-optimal problem and a
//! fixed-step RK4 propagator with switching-event localization.
//!
//! The maximum principle gives bang-bang throttle from the sign of the
//! switching function `S = |p_v|/m - p_m/(Isp g0)` with thrust along the
//! velocity costate. This module is the ground-truth engine behind the
//! finite-difference oracles: it integrates the 13-component extremal
//! system under a caller-supplied control policy.

use crate::error::{Error, Result};
use crate::vec3::Vec3;

/// Singular-candidate band on |S|; well above RK4 local error at default
/// steps, well below typical switching-function magnitudes.
pub const S_TOL: f64 = 1e-9;
/// Collision guard on the radius during propagation.
pub const R_MIN: f64 = 1e-6;
/// Switching events are bisected until |S| falls below this.
pub const EVENT_S_TOL: f64 = 1e-10;

/// Engine and environment constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineParams {
    /// Maximum thrust, >= 0.
    pub t_max: f64,
    /// Exhaust-velocity product Isp * g0, > 0.
    pub isp_g0: f64,
    /// Gravitational parameter, > 0.
    pub mu: f64,
}

impl Default for EngineParams {
    fn default() -> Self {
        EngineParams { t_max: 1.0, isp_g0: 1.0, mu: 1.0 }
    }
}

impl EngineParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_max >= 0.0) {
            return Err(Error::InvalidParameter("t_max must be non-negative"));
        }
        if !(self.isp_g0 > 0.0) {
            return Err(Error::InvalidParameter("isp_g0 must be positive"));
        }
        if !(self.mu > 0.0) {
            return Err(Error::InvalidParameter("mu must be positive"));
        }
        Ok(())
    }
}

/// Full Cartesian state and costates of an extremal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalState {
    pub r: Vec3,
    pub v: Vec3,
    pub m: f64,
    pub p_r: Vec3,
    pub p_v: Vec3,
    pub p_m: f64,
}

impl ExtremalState {
    pub fn validate(&self) -> Result<()> {
        if !(self.m > 0.0) {
            return Err(Error::InvalidState("mass must be positive"));
        }
        if !(self.r.norm() > 0.0) {
            return Err(Error::InvalidState("zero radius"));
        }
        if self.p_r == Vec3::ZERO && self.p_v == Vec3::ZERO && self.p_m == 0.0 {
            return Err(Error::InvalidState("trivial costates"));
        }
        Ok(())
    }

    /// Largest out-of-plane component over state and costates.
    pub fn planarity_defect(&self) -> f64 {
        self.r.z.abs().max(self.v.z.abs()).max(self.p_r.z.abs()).max(self.p_v.z.abs())
    }

    /// Two-body specific orbital energy |v|^2/2 - mu/|r|.
    pub fn specific_energy(&self, mu: f64) -> f64 {
        0.5 * self.v.norm_sq() - mu / self.r.norm()
    }

    pub fn to_array(&self) -> [f64; 13] {
        [
            self.r.x, self.r.y, self.r.z, self.v.x, self.v.y, self.v.z, self.m, self.p_r.x,
            self.p_r.y, self.p_r.z, self.p_v.x, self.p_v.y, self.p_v.z,
        ]
    }

    pub fn from_array(a: &[f64; 13], p_m: f64) -> Self {
        ExtremalState {
            r: Vec3::new(a[0], a[1], a[2]),
            v: Vec3::new(a[3], a[4], a[5]),
            m: a[6],
            p_r: Vec3::new(a[7], a[8], a[9]),
            p_v: Vec3::new(a[10], a[11], a[12]),
            p_m,
        }
    }
}

/// Reduced switching function value without classification; callers that
/// can prove |p_v| > 0 may use it directly.
pub fn reduced_switching(s: &ExtremalState, eng: &EngineParams) -> f64 {
    s.p_v.norm() / s.m - s.p_m / eng.isp_g0
}

/// Reduced switching function S = |p_v|/m - p_m/(Isp g0).
///
/// Indeterminate only when both |p_v| and p_m vanish, in which case the
/// general form offers no thrust direction to reduce along.
pub fn switching_function(s: &ExtremalState, eng: &EngineParams) -> Result<f64> {
    if s.p_v == Vec3::ZERO && s.p_m == 0.0 {
        return Err(Error::IndeterminateSwitching);
    }
    Ok(reduced_switching(s, eng))
}

/// Throttle regime from the sign of the switching function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Max,
    Coast,
    SingularCandidate,
}

/// Pointwise optimal control: bang throttle from sign(S), thrust along
/// p_v. Flags a singular candidate when |S| <= [`S_TOL`].
pub fn optimal_control(s: &ExtremalState, eng: &EngineParams) -> Result<(f64, Vec3, Regime)> {
    let n = s.p_v.try_normalized().ok_or(Error::ZeroVelocityCostate)?;
    let sw = reduced_switching(s, eng);
    let c = if sw > 0.0 { 1.0 } else { 0.0 };
    let regime = if sw.abs() <= S_TOL {
        Regime::SingularCandidate
    } else if sw > 0.0 {
        Regime::Max
    } else {
        Regime::Coast
    };
    Ok((c, n, regime))
}

/// Time derivative of the full extremal state.
///
/// State dynamics: two-body gravity plus thrust `c T_max n / m` and mass
/// flow `-c T_max / (Isp g0)`. Costate dynamics assume the optimal thrust
/// direction `n = p_v / |p_v|`:
/// `dp_r/dt = -3 mu (r . p_v) r / |r|^5 + mu p_v / |r|^3`,
/// `dp_v/dt = -p_r`, `dp_m/dt = c |p_v| T_max / m^2`.
///
/// The PMP throttle range is [0, 1]; the oracles probe outside it and the
/// rates remain well defined there.
pub fn extremal_derivative(s: &ExtremalState, c: f64, n: Vec3, eng: &EngineParams) -> ExtremalState {
    let r_norm = s.r.norm();
    let r3 = r_norm.powi(3);
    let r5 = r_norm.powi(5);
    let v_dot = s.r * (-eng.mu / r3) + n * (c * eng.t_max / s.m);
    let m_dot = -c * eng.t_max / eng.isp_g0;
    let p_r_dot = s.r * (-3.0 * eng.mu * s.r.dot(s.p_v) / r5) + s.p_v * (eng.mu / r3);
    let p_v_dot = -s.p_r;
    let p_m_dot = c * s.p_v.norm() * eng.t_max / (s.m * s.m);
    ExtremalState {
        r: s.v,
        v: v_dot,
        m: m_dot,
        p_r: p_r_dot,
        p_v: p_v_dot,
        p_m: p_m_dot,
    }
}

/// Hamiltonian of the extremal system for a given control.
pub fn hamiltonian(s: &ExtremalState, c: f64, n: Vec3, eng: &EngineParams) -> f64 {
    let r3 = s.r.norm().powi(3);
    s.p_r.dot(s.v) + s.p_v.dot(s.r * (-eng.mu / r3) + n * (c * eng.t_max / s.m))
        - s.p_m * c * eng.t_max / eng.isp_g0
}

/// How the throttle and thrust direction are chosen along a propagation.
pub enum ControlPolicy<'a> {
    /// Bang-bang from the maximum principle.
    Pmp,
    /// Constant throttle, thrust along p_v. `Fixed(0.0)` is a coast.
    Fixed(f64),
    /// Arbitrary schedule of (throttle, direction) over (t, state).
    Custom(&'a dyn Fn(f64, &ExtremalState) -> (f64, Vec3)),
}

impl ControlPolicy<'_> {
    fn control(&self, t: f64, s: &ExtremalState, eng: &EngineParams) -> Result<(f64, Vec3)> {
        match self {
            ControlPolicy::Pmp => {
                let (c, n, _) = optimal_control(s, eng)?;
                Ok((c, n))
            }
            ControlPolicy::Fixed(c) => {
                if *c == 0.0 {
                    let n = s.p_v.try_normalized().unwrap_or(Vec3::new(1.0, 0.0, 0.0));
                    Ok((0.0, n))
                } else {
                    let n = s.p_v.try_normalized().ok_or(Error::ZeroVelocityCostate)?;
                    Ok((*c, n))
                }
            }
            ControlPolicy::Custom(f) => Ok(f(t, s)),
        }
    }
}

/// One dense-output row of a propagation.
#[derive(Debug, Clone, Copy)]
pub struct TrajectorySample {
    pub t: f64,
    pub state: ExtremalState,
    /// Reduced switching function at the sample.
    pub s: f64,
    /// Throttle commanded at the sample.
    pub c: f64,
}

/// A switching-function sign change localized by bisection.
#[derive(Debug, Clone, Copy)]
pub struct SwitchingEvent {
    pub t: f64,
    pub state: ExtremalState,
    /// Sign of S before the event.
    pub from_positive: bool,
    /// |S| at the localized event.
    pub s_residual: f64,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
    pub events: Vec<SwitchingEvent>,
}

impl Trajectory {
    pub fn last(&self) -> &TrajectorySample {
        self.samples.last().expect("trajectory has at least the initial sample")
    }
}

fn rk4_step(
    s: &ExtremalState,
    t: f64,
    dt: f64,
    eng: &EngineParams,
    policy: &ControlPolicy<'_>,
) -> Result<ExtremalState> {
    let eval = |t: f64, st: &ExtremalState| -> Result<ExtremalState> {
        let (c, n) = policy.control(t, st, eng)?;
        Ok(extremal_derivative(st, c, n, eng))
    };
    let k1 = eval(t, s)?;
    let s2 = advance(s, &k1, 0.5 * dt);
    let k2 = eval(t + 0.5 * dt, &s2)?;
    let s3 = advance(s, &k2, 0.5 * dt);
    let k3 = eval(t + 0.5 * dt, &s3)?;
    let s4 = advance(s, &k3, dt);
    let k4 = eval(t + dt, &s4)?;
    let mut out = *s;
    out.r += (k1.r + (k2.r + k3.r) * 2.0 + k4.r) * (dt / 6.0);
    out.v += (k1.v + (k2.v + k3.v) * 2.0 + k4.v) * (dt / 6.0);
    out.m += (k1.m + 2.0 * (k2.m + k3.m) + k4.m) * (dt / 6.0);
    out.p_r += (k1.p_r + (k2.p_r + k3.p_r) * 2.0 + k4.p_r) * (dt / 6.0);
    out.p_v += (k1.p_v + (k2.p_v + k3.p_v) * 2.0 + k4.p_v) * (dt / 6.0);
    out.p_m += (k1.p_m + 2.0 * (k2.p_m + k3.p_m) + k4.p_m) * (dt / 6.0);
    Ok(out)
}

fn advance(s: &ExtremalState, rate: &ExtremalState, dt: f64) -> ExtremalState {
    ExtremalState {
        r: s.r + rate.r * dt,
        v: s.v + rate.v * dt,
        m: s.m + rate.m * dt,
        p_r: s.p_r + rate.p_r * dt,
        p_v: s.p_v + rate.p_v * dt,
        p_m: s.p_m + rate.p_m * dt,
    }
}

fn guard(state: &ExtremalState, t: f64) -> Result<()> {
    if !(state.m > 0.0) {
        return Err(Error::PropagationAborted { t, reason: "mass depleted" });
    }
    if state.r.norm() <= R_MIN {
        return Err(Error::PropagationAborted { t, reason: "radius below collision guard" });
    }
    Ok(())
}

/// Fixed-step RK4 propagation of the extremal system over `t_span`
/// (forward or backward) with dense output at the step points.
///
/// Sign changes of the reduced switching function between consecutive
/// steps are localized by bisection on re-integrated partial steps until
/// `|S| <` [`EVENT_S_TOL`].
pub fn propagate(
    s0: &ExtremalState,
    eng: &EngineParams,
    t_span: (f64, f64),
    dt: f64,
    policy: &ControlPolicy<'_>,
) -> Result<Trajectory> {
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter("dt must be positive"));
    }
    eng.validate()?;
    s0.validate()?;
    let (t0, t1) = t_span;
    let dir = if t1 >= t0 { 1.0 } else { -1.0 };
    let mut t = t0;
    let mut state = *s0;
    let mut samples = Vec::new();
    let mut events = Vec::new();

    let record = |t: f64, state: &ExtremalState, policy: &ControlPolicy<'_>| -> TrajectorySample {
        let c = policy.control(t, state, eng).map(|(c, _)| c).unwrap_or(0.0);
        TrajectorySample { t, state: *state, s: reduced_switching(state, eng), c }
    };
    samples.push(record(t, &state, policy));

    while (t1 - t) * dir > 1e-15 * (1.0 + t1.abs()) {
        let h = dir * dt.min((t1 - t).abs());
        let next = rk4_step(&state, t, h, eng, policy)?;
        guard(&next, t + h)?;

        let s_here = reduced_switching(&state, eng);
        let s_next = reduced_switching(&next, eng);
        if s_here != 0.0 && s_next != 0.0 && (s_here > 0.0) != (s_next > 0.0) {
            let ev = locate_switch(&state, t, h, eng, policy, s_here)?;
            events.push(ev);
        }

        t += h;
        state = next;
        samples.push(record(t, &state, policy));
    }
    Ok(Trajectory { samples, events })
}

fn locate_switch(
    start: &ExtremalState,
    t_start: f64,
    h: f64,
    eng: &EngineParams,
    policy: &ControlPolicy<'_>,
    s_start: f64,
) -> Result<SwitchingEvent> {
    let mut lo = 0.0_f64;
    let mut hi = h;
    let mut s_lo = s_start;
    let mut best: Option<(f64, ExtremalState, f64)> = None;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let st = rk4_step(start, t_start, mid, eng, policy)?;
        let s_mid = reduced_switching(&st, eng);
        if best.is_none_or(|(_, _, s)| s_mid.abs() < s.abs()) {
            best = Some((mid, st, s_mid));
        }
        if s_mid.abs() < EVENT_S_TOL {
            break;
        }
        if (s_lo > 0.0) != (s_mid > 0.0) {
            hi = mid;
        } else {
            lo = mid;
            s_lo = s_mid;
        }
        if (hi - lo).abs() < 1e-16 * h.abs().max(1e-30) {
            break;
        }
    }
    let (tau, state, s_mid) = best.expect("bisection ran");
    Ok(SwitchingEvent {
        t: t_start + tau,
        state,
        from_positive: s_start > 0.0,
        s_residual: s_mid.abs(),
    })
}
