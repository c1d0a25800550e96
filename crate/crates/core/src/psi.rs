//! The algebraic necessary condition for singular thrust arcs.
//!
//! On a singular arc of the planar fuel-optimal low-thrust problem, the
//! angle `beta` between the thrust direction and the position vector must
//! satisfy
//!
//! ```text
//! psi(e, theta, beta) =
//!     2 cos(beta) sin(beta) (-1 +- q -+ q) - (1 - 3 cos^2 beta) e sin(theta) / (1 + e cos(theta))
//! q = sqrt((1 - 3 cos^2 beta) / (1 + e cos(theta)))
//! ```
//!
//! where the two radical signs vary independently: one comes from the
//! branch of the beta rate, the other from the unknown orientation of the
//! position costate. The four sign assignments collapse to three distinct
//! shapes (both radicals positive, mixed, both negative). The condition is
//! real only where `1 - 3 cos^2 beta >= 0`, i.e. on two sub-intervals per
//! revolution, and the whole function is invariant under `beta -> beta + pi`,
//! so zeros come in mirrored pairs.
//!
//! For any fixed `(e, theta)` the three shapes together have at least 3 and
//! at most 5 zeros per sub-interval: the mixed and both-negative shapes have
//! exactly one zero each, the both-positive shape between one and three.
//! Counting both sub-intervals, the total is between 6 and 10.

use crate::error::{Error, Result};

/// Inset applied at the sub-domain endpoints, where the same-sign shape
/// derivatives diverge.
pub const BETA_ENDPOINT_INSET: f64 = 1e-9;
/// Default number of scan cells per sub-domain and shape.
pub const DEFAULT_SCAN_N: usize = 4096;
/// Default residual bound for accepted zeros.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
/// Values of 1 - 3 cos^2(beta) above this (negative) threshold are treated
/// as the rounding shadow of an exact domain endpoint and clamped to zero.
pub const W_NEGATIVE_TOL: f64 = 1e-12;
/// Eccentricity cap of the studied regime; callers may exceed it, the
/// count bounds still hold for any fixed (e, theta).
pub const SOFT_E_MAX: f64 = 0.9;

/// An independent +/- choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// The two independent sign choices of the necessary condition.
///
/// `red` selects the branch of the beta rate,
/// `beta_dot = -alpha_dot + red * sqrt(mu (1 - 3 cos^2 beta) / r^3)`.
/// `blue` selects the orientation of the position costate, which sits at
/// angle `beta + blue * pi/2` from the position vector.
///
/// Inside the condition the first radical carries the sign `red` and the
/// second carries `-blue`, so the shape is classified by the pair
/// `(red, -blue)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignBranch {
    pub red: Sign,
    pub blue: Sign,
}

/// The three distinct shapes the four sign assignments collapse to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PsiShape {
    /// Both radical coefficients positive: red = +, blue = -.
    BothPositive,
    /// Opposite radical coefficients; the radicals cancel.
    Mixed,
    /// Both radical coefficients negative: red = -, blue = +.
    BothNegative,
}

impl PsiShape {
    pub fn label(self) -> &'static str {
        match self {
            PsiShape::BothPositive => "both_positive",
            PsiShape::Mixed => "mixed",
            PsiShape::BothNegative => "both_negative",
        }
    }
}

impl SignBranch {
    pub const BOTH_POSITIVE: SignBranch = SignBranch { red: Sign::Plus, blue: Sign::Minus };
    pub const BOTH_NEGATIVE: SignBranch = SignBranch { red: Sign::Minus, blue: Sign::Plus };
    pub const MIXED_RED_PLUS: SignBranch = SignBranch { red: Sign::Plus, blue: Sign::Plus };
    pub const MIXED_RED_MINUS: SignBranch = SignBranch { red: Sign::Minus, blue: Sign::Minus };

    pub fn new(red: Sign, blue: Sign) -> Self {
        SignBranch { red, blue }
    }

    /// Coefficients of the two radicals as they appear in the condition.
    pub fn radical_signs(self) -> (f64, f64) {
        (self.red.as_f64(), -self.blue.as_f64())
    }

    pub fn shape(self) -> PsiShape {
        match (self.red, self.blue) {
            (Sign::Plus, Sign::Minus) => PsiShape::BothPositive,
            (Sign::Minus, Sign::Plus) => PsiShape::BothNegative,
            _ => PsiShape::Mixed,
        }
    }

    /// All four sign assignments.
    pub fn all() -> [SignBranch; 4] {
        [
            Self::BOTH_POSITIVE,
            Self::MIXED_RED_PLUS,
            Self::MIXED_RED_MINUS,
            Self::BOTH_NEGATIVE,
        ]
    }

    /// One representative per distinct shape.
    pub fn canonical() -> [SignBranch; 3] {
        [Self::BOTH_POSITIVE, Self::MIXED_RED_PLUS, Self::BOTH_NEGATIVE]
    }

    /// For a mixed assignment, the other assignment with the same zeros.
    pub fn mixed_partner(self) -> Option<SignBranch> {
        match self.shape() {
            PsiShape::Mixed => Some(SignBranch::new(self.red.flipped(), self.blue.flipped())),
            _ => None,
        }
    }

    /// Whether the declared beta-rate branch agrees with the rate the
    /// costate dynamics realize for this p_r orientation. Since
    /// p_r = -d(p_v)/dt, the realized rate sign is forced to `-blue`;
    /// only the same-sign shapes can be propagated as constructed.
    pub fn is_rate_consistent(self) -> bool {
        self.blue == self.red.flipped()
    }
}

/// Boundary angle beta_0 = arccos(sqrt(1/3)) of the admissible domain.
pub fn beta0() -> f64 {
    (1.0 / 3.0_f64.sqrt()).acos()
}

/// The admissible thrust-angle domain, where 1 - 3 cos^2(beta) >= 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaDomain {
    pub beta0: f64,
    /// [beta0, pi - beta0]; sin(beta) > 0 here.
    pub sub1: (f64, f64),
    /// [pi + beta0, 2 pi - beta0]; sin(beta) < 0 here.
    pub sub2: (f64, f64),
}

impl BetaDomain {
    pub fn standard() -> Self {
        let b0 = beta0();
        let pi = std::f64::consts::PI;
        BetaDomain {
            beta0: b0,
            sub1: (b0, pi - b0),
            sub2: (pi + b0, 2.0 * pi - b0),
        }
    }

    /// Membership of the wrapped angle in sub1 or sub2.
    pub fn contains(&self, beta: f64) -> bool {
        let w = crate::orbit::wrap_angle(beta);
        (self.sub1.0..=self.sub1.1).contains(&w) || (self.sub2.0..=self.sub2.1).contains(&w)
    }

    pub fn subdomain_of(&self, beta: f64) -> Option<Subdomain> {
        let w = crate::orbit::wrap_angle(beta);
        if (self.sub1.0..=self.sub1.1).contains(&w) {
            Some(Subdomain::One)
        } else if (self.sub2.0..=self.sub2.1).contains(&w) {
            Some(Subdomain::Two)
        } else {
            None
        }
    }
}

/// 1 - 3 cos^2(beta), the radicand shared by the whole derivation.
pub fn beta_radicand(beta: f64) -> f64 {
    let c = beta.cos();
    1.0 - 3.0 * c * c
}

fn checked_radicand(beta: f64) -> Result<f64> {
    let w = beta_radicand(beta);
    if w < -W_NEGATIVE_TOL {
        Err(Error::BetaOutsideDomain { beta, value: w })
    } else {
        Ok(w.max(0.0))
    }
}

/// The necessary condition itself.
pub fn psi(e: f64, theta: f64, beta: f64, branch: SignBranch) -> Result<f64> {
    let ecf = 1.0 + e * theta.cos();
    if ecf <= 0.0 {
        return Err(Error::ConicDegenerate { value: ecf });
    }
    let w = checked_radicand(beta)?;
    let q = (w / ecf).sqrt();
    let (c1, c2) = branch.radical_signs();
    let (sb, cb) = beta.sin_cos();
    Ok(2.0 * cb * sb * (-1.0 + (c1 + c2) * q) - w * e * theta.sin() / ecf)
}

/// Analytic derivative of [`psi`] with respect to beta.
///
/// The same-sign shapes diverge at the sub-domain endpoints, so the
/// derivative is only defined strictly inside the admissible domain.
pub fn psi_derivative(e: f64, theta: f64, beta: f64, branch: SignBranch) -> Result<f64> {
    let ecf = 1.0 + e * theta.cos();
    if ecf <= 0.0 {
        return Err(Error::ConicDegenerate { value: ecf });
    }
    let w = beta_radicand(beta);
    if w <= 0.0 {
        return Err(Error::BetaOutsideDomain { beta, value: w });
    }
    let (c1, c2) = branch.radical_signs();
    let (sb, cb) = beta.sin_cos();
    let cos2b = cb * cb - sb * sb;
    let gamma = e * theta.sin() / ecf;
    let q = (w / ecf).sqrt();
    let mut d = 2.0 * cos2b * (-1.0 + (c1 + c2) * q) - 6.0 * cb * sb * gamma;
    if c1 + c2 != 0.0 {
        d += (c1 + c2) * 6.0 * cb * cb * sb * sb / (w.sqrt() * ecf.sqrt());
    }
    Ok(d)
}

/// Which of the two admissible sub-intervals a zero lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subdomain {
    One,
    Two,
}

impl Subdomain {
    pub fn index(self) -> u8 {
        match self {
            Subdomain::One => 1,
            Subdomain::Two => 2,
        }
    }
}

/// A single zero of the necessary condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaRoot {
    pub beta: f64,
    pub branch: SignBranch,
    pub subdomain: Subdomain,
    pub psi_residual: f64,
}

/// All zeros of the condition for one `(e, theta)`.
///
/// `roots` holds one entry per distinct zero of each of the three shapes,
/// with mixed zeros carried under the canonical `MIXED_RED_PLUS`
/// assignment (the `MIXED_RED_MINUS` assignment shares them exactly).
/// `total_count` sums the three shapes over both sub-domains and is
/// always in [6, 10].
#[derive(Debug, Clone, PartialEq)]
pub struct BetaRootSet {
    pub e: f64,
    pub theta: f64,
    pub roots: Vec<BetaRoot>,
    pub total_count: usize,
}

impl BetaRootSet {
    /// Roots expanded over sign assignments: mixed zeros yield one entry
    /// per mixed assignment. This is the set the singular-throttle sweeps
    /// evaluate, since the throttle depends on the signs individually.
    pub fn expanded_roots(&self) -> Vec<BetaRoot> {
        let mut out = Vec::with_capacity(self.roots.len() * 2);
        for r in &self.roots {
            out.push(*r);
            if let Some(partner) = r.branch.mixed_partner() {
                out.push(BetaRoot { branch: partner, ..*r });
            }
        }
        out
    }

    pub fn roots_in(&self, sub: Subdomain) -> impl Iterator<Item = &BetaRoot> {
        self.roots.iter().filter(move |r| r.subdomain == sub)
    }
}

/// Bisect a bracketing interval down to `|f| < tol` (or to floating-point
/// resolution, whichever comes first).
fn bisect(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64, _fb: f64, tol: f64) -> (f64, f64) {
    let mut best = (a, fa);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm.abs() < best.1.abs() {
            best = (mid, fm);
        }
        if fm.abs() < tol {
            return (mid, fm);
        }
        if (fa > 0.0) != (fm > 0.0) {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    best
}

/// Uniform sign-change scan followed by bisection.
fn scan_roots(f: &impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize, tol: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut x_prev = lo;
    let mut f_prev = f(lo);
    for i in 1..=n {
        let x = lo + (hi - lo) * (i as f64) / (n as f64);
        let fx = f(x);
        if f_prev == 0.0 {
            out.push((x_prev, 0.0));
        } else if fx != 0.0 && (f_prev > 0.0) != (fx > 0.0) {
            out.push(bisect(f, x_prev, x, f_prev, fx, tol));
        }
        x_prev = x;
        f_prev = fx;
    }
    if f_prev == 0.0 {
        out.push((x_prev, 0.0));
    }
    out
}

/// Re-polish a root mirrored by the half-period symmetry; the pi shift
/// costs at most a few ulps but steep zeros can push the residual past
/// the accepted tolerance.
fn polish(f: &impl Fn(f64) -> f64, x0: f64, tol: f64) -> (f64, f64) {
    let f0 = f(x0);
    if f0.abs() < tol {
        return (x0, f0);
    }
    let mut delta = 1e-12;
    for _ in 0..8 {
        let (a, b) = (x0 - delta, x0 + delta);
        let (fa, fb) = (f(a), f(b));
        if fa == 0.0 {
            return (a, 0.0);
        }
        if fb != 0.0 && (fa > 0.0) != (fb > 0.0) {
            return bisect(f, a, b, fa, fb, tol);
        }
        delta *= 10.0;
    }
    (x0, f0)
}

fn shape_count_ok(shape: PsiShape, n: usize) -> bool {
    match shape {
        PsiShape::BothPositive => (1..=3).contains(&n),
        PsiShape::Mixed | PsiShape::BothNegative => n == 1,
    }
}

/// Enumerate every zero of the three shapes for a fixed `(e, theta)`.
///
/// The first sub-domain is scanned with `scan_n` cells per shape and each
/// sign change refined by bisection to `|psi| < root_tol`. Second
/// sub-domain zeros are the first's shifted by pi (half-period symmetry),
/// re-polished. When a shape count escapes its theoretical bounds the
/// scan is retried at 16x density; a persistent violation is a scan
/// failure and reported as an error.
pub fn enumerate_roots(e: f64, theta: f64, scan_n: usize, root_tol: f64) -> Result<BetaRootSet> {
    if !(e >= 0.0) {
        return Err(Error::InvalidParameter("eccentricity must be non-negative"));
    }
    let ecf = 1.0 + e * theta.cos();
    if ecf <= 0.0 {
        return Err(Error::ConicDegenerate { value: ecf });
    }
    let dom = BetaDomain::standard();
    let lo = dom.sub1.0 + BETA_ENDPOINT_INSET;
    let hi = dom.sub1.1 - BETA_ENDPOINT_INSET;
    let pi = std::f64::consts::PI;

    let mut roots = Vec::with_capacity(10);
    let mut per_shape = [0usize; 3];
    for (k, branch) in SignBranch::canonical().into_iter().enumerate() {
        let f = |b: f64| psi(e, theta, b, branch).expect("interior evaluation");
        let mut found = scan_roots(&f, lo, hi, scan_n, root_tol);
        if !shape_count_ok(branch.shape(), found.len()) {
            found = scan_roots(&f, lo, hi, scan_n * 16, root_tol);
        }
        if !shape_count_ok(branch.shape(), found.len()) {
            return Err(Error::RootCountViolation { count: 2 * found.len(), e, theta });
        }
        per_shape[k] = found.len();
        for (b, res) in found {
            roots.push(BetaRoot { beta: b, branch, subdomain: Subdomain::One, psi_residual: res });
            let f2 = |x: f64| psi(e, theta, x, branch).expect("interior evaluation");
            let (b2, res2) = polish(&f2, b + pi, root_tol);
            roots.push(BetaRoot { beta: b2, branch, subdomain: Subdomain::Two, psi_residual: res2 });
        }
    }

    let total_count = 2 * (per_shape[0] + per_shape[1] + per_shape[2]);
    if !(6..=10).contains(&total_count) {
        return Err(Error::RootCountViolation { count: total_count, e, theta });
    }

    roots.sort_by(|a, b| {
        (a.subdomain.index(), a.beta)
            .partial_cmp(&(b.subdomain.index(), b.beta))
            .unwrap()
    });
    Ok(BetaRootSet { e, theta, roots, total_count })
}

pub fn enumerate_roots_default(e: f64, theta: f64) -> Result<BetaRootSet> {
    enumerate_roots(e, theta, DEFAULT_SCAN_N, DEFAULT_ROOT_TOL)
}

/// One cell of a root-surface sweep.
#[derive(Debug, Clone)]
pub struct RootSurfaceCell {
    pub e: f64,
    pub theta: f64,
    pub outcome: Result<BetaRootSet>,
}

/// Enumerate roots over an (e, theta) grid. Cells are independent; with
/// the `parallel` feature they are evaluated concurrently and assembled
/// in grid order.
pub fn root_surface_sweep(
    e_values: &[f64],
    theta_values: &[f64],
    scan_n: usize,
    root_tol: f64,
) -> Vec<RootSurfaceCell> {
    let cells: Vec<(f64, f64)> = e_values
        .iter()
        .flat_map(|&e| theta_values.iter().map(move |&t| (e, t)))
        .collect();
    let eval = |&(e, theta): &(f64, f64)| RootSurfaceCell {
        e,
        theta,
        outcome: enumerate_roots(e, theta, scan_n, root_tol),
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        cells.par_iter().map(eval).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        cells.iter().map(eval).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn beta0_value() {
        let b0 = beta0();
        assert!((b0 - 0.9553166181245093).abs() < 1e-15);
        assert!(beta_radicand(b0).abs() < 1e-15);
        // tan(beta0) = sqrt(2)
        assert!((b0.tan() - 2.0_f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn domain_membership() {
        let dom = BetaDomain::standard();
        assert!(dom.contains(FRAC_PI_2));
        assert!(dom.contains(3.0 * FRAC_PI_2));
        assert!(!dom.contains(0.5));
        assert!(!dom.contains(PI));
        assert_eq!(dom.subdomain_of(FRAC_PI_2), Some(Subdomain::One));
        assert_eq!(dom.subdomain_of(3.0 * FRAC_PI_2), Some(Subdomain::Two));
    }

    #[test]
    fn psi_at_beta_half_pi() {
        // cos(beta) = 0 kills the radical terms, leaving -e sin(theta)/(1+e cos).
        for branch in SignBranch::all() {
            let v = psi(0.2, FRAC_PI_2, FRAC_PI_2, branch).unwrap();
            assert!((v + 0.2).abs() < 1e-14, "branch {branch:?}: {v}");
        }
    }

    #[test]
    fn psi_circular_mixed_zero() {
        let v = psi(0.0, 1.0, FRAC_PI_2, SignBranch::MIXED_RED_PLUS).unwrap();
        assert!(v.abs() < 1e-15);
    }

    #[test]
    fn psi_boundary_signs() {
        // At the endpoints the radicand vanishes: psi = -sin(2 beta), negative
        // at beta0 and positive at pi - beta0, on every branch.
        let b0 = beta0();
        for branch in SignBranch::all() {
            for (e, theta) in [(0.0, 1.0), (0.3, 2.0), (0.7, 5.0)] {
                let at_b0 = psi(e, theta, b0, branch).unwrap();
                let at_top = psi(e, theta, PI - b0, branch).unwrap();
                assert!(at_b0 < 0.0);
                assert!(at_top > 0.0);
                assert!((at_b0 + (2.0 * b0).sin()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn psi_domain_errors() {
        assert!(matches!(
            psi(0.2, 1.0, 0.3, SignBranch::BOTH_POSITIVE),
            Err(Error::BetaOutsideDomain { .. })
        ));
        assert!(matches!(
            psi(1.5, PI, FRAC_PI_2, SignBranch::BOTH_POSITIVE),
            Err(Error::ConicDegenerate { .. })
        ));
    }

    #[test]
    fn derivative_examples() {
        // Outside the domain.
        assert!(psi_derivative(0.0, 1.0, PI / 4.0, SignBranch::MIXED_RED_PLUS).is_err());
        // Mixed shape at beta = pi/2 with gamma = 0: -2 (cos^2 - sin^2) = 2.
        let d = psi_derivative(0.0, 1.0, FRAC_PI_2, SignBranch::MIXED_RED_PLUS).unwrap();
        assert!((d - 2.0).abs() < 1e-14);
    }

    #[test]
    fn derivative_matches_central_differences() {
        let h = 1e-6;
        let pts = [1.1, 1.3, FRAC_PI_2, 1.8, 2.0];
        for branch in SignBranch::canonical() {
            for &b in &pts {
                let exact = psi_derivative(0.35, 0.8, b, branch).unwrap();
                let fd = (psi(0.35, 0.8, b + h, branch).unwrap()
                    - psi(0.35, 0.8, b - h, branch).unwrap())
                    / (2.0 * h);
                assert!(
                    (fd - exact).abs() < 1e-8 * exact.abs().max(1.0),
                    "branch {branch:?} beta {b}: fd {fd} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn circular_roots_sit_at_half_pi() {
        let set = enumerate_roots_default(0.0, PI / 3.0).unwrap();
        let mixed: Vec<&BetaRoot> = set
            .roots
            .iter()
            .filter(|r| r.branch.shape() == PsiShape::Mixed)
            .collect();
        assert_eq!(mixed.len(), 2);
        assert!((mixed[0].beta - FRAC_PI_2).abs() < 1e-9);
        assert!((mixed[1].beta - 3.0 * FRAC_PI_2).abs() < 1e-9);
        // The both-positive shape picks up pi/3-family zeros where q = 1/2.
        assert_eq!(set.total_count, 10);
    }

    #[test]
    fn shape_counts_at_reference_point() {
        // e = 0.2, theta = 5 pi / 12: three zeros on the both-positive
        // shape, one each on mixed and both-negative, per sub-domain.
        let set = enumerate_roots_default(0.2, 5.0 * PI / 12.0).unwrap();
        let count = |shape: PsiShape| {
            set.roots_in(Subdomain::One)
                .filter(|r| r.branch.shape() == shape)
                .count()
        };
        assert_eq!(count(PsiShape::BothPositive), 3);
        assert_eq!(count(PsiShape::Mixed), 1);
        assert_eq!(count(PsiShape::BothNegative), 1);
        assert_eq!(set.total_count, 10);
    }

    #[test]
    fn ten_zeros_in_the_low_e_regime() {
        let set = enumerate_roots_default(0.3, 1.0).unwrap();
        assert_eq!(set.total_count, 10);
        assert_eq!(set.roots.len(), 10);
        for r in &set.roots {
            assert!(r.psi_residual.abs() < DEFAULT_ROOT_TOL);
            assert!(BetaDomain::standard().contains(r.beta));
        }
    }

    #[test]
    fn expanded_roots_double_the_mixed_entries() {
        let set = enumerate_roots_default(0.3, 1.0).unwrap();
        let expanded = set.expanded_roots();
        assert_eq!(expanded.len(), 12);
        let mixed_minus = expanded
            .iter()
            .filter(|r| r.branch == SignBranch::MIXED_RED_MINUS)
            .count();
        assert_eq!(mixed_minus, 2);
    }

    #[test]
    fn mirror_pairing() {
        let set = enumerate_roots_default(0.41, 2.3).unwrap();
        for r in set.roots_in(Subdomain::One) {
            let partner = set
                .roots_in(Subdomain::Two)
                .find(|p| p.branch == r.branch && (p.beta - (r.beta + PI)).abs() < 1e-9);
            assert!(partner.is_some(), "no mirror for {r:?}");
        }
    }

    #[test]
    fn rate_consistency_classification() {
        assert!(SignBranch::BOTH_POSITIVE.is_rate_consistent());
        assert!(SignBranch::BOTH_NEGATIVE.is_rate_consistent());
        assert!(!SignBranch::MIXED_RED_PLUS.is_rate_consistent());
        assert!(!SignBranch::MIXED_RED_MINUS.is_rate_consistent());
    }
}
