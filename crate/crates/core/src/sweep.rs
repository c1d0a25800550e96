//! Grid experiments: the root-surface sweep and the singular-control
//! percentage map over (radius, eccentricity).
//!
//! The percentage map enumerates the zeros of the necessary condition for
//! every (e, theta) cell, evaluates the singular throttle at every zero,
//! sign assignment, and radius, and aggregates per (r, e) the fraction of
//! evaluations classified singular. True anomaly and sign branches are
//! marginalized uniformly. The throttle scales with m / t_max, which the
//! underlying analysis leaves unspecified; results are reported together
//! with the assumed values.
//!
//! Two accountings are kept. The per-evaluation fraction counts every
//! (zero, sign assignment) in both sub-domains; since the throttle flips
//! sign under beta -> beta + pi, mirrored pairs can never both be
//! singular and this fraction is capped at one half. The pair accounting
//! asks, per thrust line (a zero and its mirror), whether either
//! orientation is singular, which is the physically realizable question.

use crate::error::Result;
use crate::orbit::PlanarOrbitPoint;
use crate::psi::{BetaRoot, RootSurfaceCell, Subdomain};
use crate::throttle::{singular_throttle_with_epsilon, ThrottleClass};

/// An inclusive uniform grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl GridSpec {
    pub fn new(min: f64, max: f64, n: usize) -> Self {
        GridSpec { min, max, n }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.n <= 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.n as f64 - 1.0);
        (0..self.n).map(|i| self.min + step * i as f64).collect()
    }
}

/// Configuration of the percentage sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub r_grid: GridSpec,
    pub e_grid: GridSpec,
    pub theta_grid: GridSpec,
    pub m: f64,
    pub t_max: f64,
    pub mu: f64,
    pub epsilon: f64,
    pub scan_n: usize,
    pub root_tol: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            r_grid: GridSpec::new(0.1, 15.0, 60),
            e_grid: GridSpec::new(1e-3, 0.9, 50),
            theta_grid: GridSpec::new(1e-2, 1.99 * std::f64::consts::PI, 100),
            m: 1.0,
            t_max: 1.0,
            mu: 1.0,
            epsilon: crate::throttle::SINGULAR_EPSILON,
            scan_n: crate::psi::DEFAULT_SCAN_N,
            root_tol: crate::psi::DEFAULT_ROOT_TOL,
        }
    }
}

impl SweepConfig {
    /// Grid-bound guards: the eccentricity floor and the true-anomaly
    /// endpoints keep the sweep away from the A-degeneracy loci e = 0 and
    /// sin(theta) = 0.
    pub fn validate(&self) -> Result<()> {
        use crate::error::Error;
        if !(self.e_grid.min > 0.0) {
            return Err(Error::InvalidParameter("e grid must start above zero"));
        }
        if !(self.theta_grid.min > 0.0 && self.theta_grid.max < std::f64::consts::TAU) {
            return Err(Error::InvalidParameter("theta grid must stay inside (0, 2 pi)"));
        }
        if self.theta_grid.min.sin() == 0.0 || self.theta_grid.max.sin() == 0.0 {
            return Err(Error::InvalidParameter("theta endpoints must avoid sin(theta) = 0"));
        }
        if !(self.r_grid.min > 0.0) {
            return Err(Error::InvalidParameter("r grid must be positive"));
        }
        if !(self.m > 0.0 && self.t_max > 0.0 && self.mu > 0.0) {
            return Err(Error::InvalidParameter("m, t_max, mu must be positive"));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 0.5) {
            return Err(Error::InvalidParameter("epsilon must lie in (0, 0.5)"));
        }
        Ok(())
    }
}

/// One throttle evaluation of the sweep.
#[derive(Debug, Clone, Copy)]
pub struct SweepRecord {
    pub r: f64,
    pub e: f64,
    pub theta: f64,
    pub beta: f64,
    pub branch: crate::psi::SignBranch,
    pub subdomain: Subdomain,
    pub c_s: f64,
    pub classification: ThrottleClass,
}

/// Per-(r, e) tallies of throttle evaluations.
#[derive(Debug, Clone, Copy, Default)]
pub struct PercentageCell {
    pub singular: usize,
    pub saturated_high: usize,
    pub saturated_low: usize,
    pub a_degenerate: usize,
    /// (e, theta) cells whose enumeration failed.
    pub errors: usize,
}

impl PercentageCell {
    /// Denominator: gated evaluations with a well-defined throttle.
    pub fn valid(&self) -> usize {
        self.singular + self.saturated_high + self.saturated_low
    }

    pub fn fraction(&self) -> f64 {
        let v = self.valid();
        if v == 0 {
            0.0
        } else {
            self.singular as f64 / v as f64
        }
    }
}

/// Per-(r, e) tallies over thrust-line pairs (a zero and its pi-mirror).
#[derive(Debug, Clone, Copy, Default)]
pub struct PairCell {
    /// Pairs where at least one orientation is singular.
    pub singular: usize,
    /// Pairs with a well-defined throttle.
    pub valid: usize,
    pub a_degenerate: usize,
}

impl PairCell {
    pub fn fraction(&self) -> f64 {
        if self.valid == 0 {
            0.0
        } else {
            self.singular as f64 / self.valid as f64
        }
    }
}

/// Output of the percentage sweep; matrices are indexed `[r][e]`.
#[derive(Debug, Clone)]
pub struct PercentageMap {
    pub r_values: Vec<f64>,
    pub e_values: Vec<f64>,
    pub cells: Vec<Vec<PercentageCell>>,
    pub pair_cells: Vec<Vec<PairCell>>,
    pub config: SweepConfig,
}

impl PercentageMap {
    pub fn fraction(&self, r_idx: usize, e_idx: usize) -> f64 {
        self.cells[r_idx][e_idx].fraction()
    }

    pub fn pair_fraction(&self, r_idx: usize, e_idx: usize) -> f64 {
        self.pair_cells[r_idx][e_idx].fraction()
    }

    /// Largest per-evaluation fraction over r <= r_band and e in [e_lo, e_hi].
    pub fn max_fraction_in_band(&self, r_band: f64, e_lo: f64, e_hi: f64) -> f64 {
        let mut max = 0.0_f64;
        for (ri, &r) in self.r_values.iter().enumerate() {
            if r > r_band {
                continue;
            }
            for (ei, &e) in self.e_values.iter().enumerate() {
                if e < e_lo || e > e_hi {
                    continue;
                }
                max = max.max(self.fraction(ri, ei));
            }
        }
        max
    }

    /// Smallest pair fraction along the largest radius row.
    pub fn min_pair_fraction_at_max_radius(&self) -> f64 {
        let ri = self.r_values.len() - 1;
        self.e_values
            .iter()
            .enumerate()
            .map(|(ei, _)| self.pair_fraction(ri, ei))
            .fold(f64::INFINITY, f64::min)
    }
}

struct Column {
    cells: Vec<PercentageCell>,
    pairs: Vec<PairCell>,
}

fn sweep_column(cfg: &SweepConfig, e: f64, r_values: &[f64], theta_values: &[f64]) -> Column {
    let mut cells = vec![PercentageCell::default(); r_values.len()];
    let mut pairs = vec![PairCell::default(); r_values.len()];
    for &theta in theta_values {
        let set = match crate::psi::enumerate_roots(e, theta, cfg.scan_n, cfg.root_tol) {
            Ok(set) => set,
            Err(_) => {
                for cell in cells.iter_mut() {
                    cell.errors += 1;
                }
                continue;
            }
        };
        let expanded = set.expanded_roots();
        for (ri, &r) in r_values.iter().enumerate() {
            let point = PlanarOrbitPoint { r_norm: r, e, theta, m: cfg.m, mu: cfg.mu };
            for root in &expanded {
                match singular_throttle_with_epsilon(&point, root.beta, root.branch, cfg.t_max, cfg.epsilon)
                {
                    Ok(eval) => match eval.classification {
                        ThrottleClass::Singular => cells[ri].singular += 1,
                        ThrottleClass::SaturatedHigh => cells[ri].saturated_high += 1,
                        ThrottleClass::SaturatedLow => cells[ri].saturated_low += 1,
                        ThrottleClass::ADegenerate => cells[ri].a_degenerate += 1,
                    },
                    Err(_) => cells[ri].errors += 1,
                }
            }
            // Pair accounting over sub-domain-one entries and their mirrors.
            for root in expanded.iter().filter(|r| r.subdomain == Subdomain::One) {
                let here = singular_throttle_with_epsilon(
                    &point, root.beta, root.branch, cfg.t_max, cfg.epsilon,
                );
                let mirror = singular_throttle_with_epsilon(
                    &point,
                    root.beta + std::f64::consts::PI,
                    root.branch,
                    cfg.t_max,
                    cfg.epsilon,
                );
                if let (Ok(a), Ok(b)) = (here, mirror) {
                    if a.classification == ThrottleClass::ADegenerate
                        || b.classification == ThrottleClass::ADegenerate
                    {
                        pairs[ri].a_degenerate += 1;
                    } else {
                        pairs[ri].valid += 1;
                        if a.classification == ThrottleClass::Singular
                            || b.classification == ThrottleClass::Singular
                        {
                            pairs[ri].singular += 1;
                        }
                    }
                }
            }
        }
    }
    Column { cells, pairs }
}

/// Run the percentage sweep. Columns (fixed e) are independent; with the
/// `parallel` feature they run concurrently and are assembled in grid
/// order, so the output is deterministic either way.
pub fn percentage_map(cfg: &SweepConfig) -> Result<PercentageMap> {
    cfg.validate()?;
    let r_values = cfg.r_grid.values();
    let e_values = cfg.e_grid.values();
    let theta_values = cfg.theta_grid.values();

    let eval = |&e: &f64| sweep_column(cfg, e, &r_values, &theta_values);
    #[cfg(feature = "parallel")]
    let columns: Vec<Column> = {
        use rayon::prelude::*;
        e_values.par_iter().map(eval).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let columns: Vec<Column> = e_values.iter().map(eval).collect();

    let mut cells = vec![vec![PercentageCell::default(); e_values.len()]; r_values.len()];
    let mut pair_cells = vec![vec![PairCell::default(); e_values.len()]; r_values.len()];
    for (ei, col) in columns.into_iter().enumerate() {
        for ri in 0..r_values.len() {
            cells[ri][ei] = col.cells[ri];
            pair_cells[ri][ei] = col.pairs[ri];
        }
    }
    Ok(PercentageMap { r_values, e_values, cells, pair_cells, config: cfg.clone() })
}

/// Every throttle evaluation of the sweep as a flat record list, in grid
/// order. Meant for small grids and record-level comparisons; the full
/// default grid produces millions of rows.
pub fn percentage_records(cfg: &SweepConfig) -> Result<Vec<SweepRecord>> {
    cfg.validate()?;
    let r_values = cfg.r_grid.values();
    let e_values = cfg.e_grid.values();
    let theta_values = cfg.theta_grid.values();
    let mut out = Vec::new();
    for &e in &e_values {
        for &theta in &theta_values {
            let set = match crate::psi::enumerate_roots(e, theta, cfg.scan_n, cfg.root_tol) {
                Ok(set) => set,
                Err(_) => continue,
            };
            for root in set.expanded_roots() {
                for &r in &r_values {
                    let point = PlanarOrbitPoint { r_norm: r, e, theta, m: cfg.m, mu: cfg.mu };
                    if let Ok(eval) = singular_throttle_with_epsilon(
                        &point, root.beta, root.branch, cfg.t_max, cfg.epsilon,
                    ) {
                        out.push(SweepRecord {
                            r,
                            e,
                            theta,
                            beta: root.beta,
                            branch: root.branch,
                            subdomain: root.subdomain,
                            c_s: eval.c_s,
                            classification: eval.classification,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Root-surface sweep over explicit grids (delegates to the enumeration).
pub fn root_surface(
    e_values: &[f64],
    theta_values: &[f64],
    scan_n: usize,
    root_tol: f64,
) -> Vec<RootSurfaceCell> {
    crate::psi::root_surface_sweep(e_values, theta_values, scan_n, root_tol)
}

/// Convenience: partition a root set's entries by the sign of sin(beta).
pub fn split_by_sin_sign(roots: &[BetaRoot]) -> (Vec<&BetaRoot>, Vec<&BetaRoot>) {
    roots.iter().partition(|r| r.beta.sin() > 0.0)
}
