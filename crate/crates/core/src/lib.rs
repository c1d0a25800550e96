//! Singular-arc analysis for planar two-body low-thrust trajectory
//! optimization.
//!
//! Fuel-optimal low-thrust transfers have bang-bang throttle except on
//! singular arcs, where the switching function vanishes identically. This
//! crate implements the complete pointwise characterization of those arcs
//! in the planar two-body problem:
//!
//! - the algebraic necessary condition `psi(e, theta, beta) = 0` relating
//!   the thrust angle to eccentricity and true anomaly, with its
//!   admissible domain and per-branch zero enumeration ([`psi`]);
//! - the singular throttle factor `c_s = B / A` in physical variables
//!   only, with saturation and degeneracy classification ([`throttle`]);
//! - the full state/costate extremal dynamics and an RK4 propagator with
//!   switching-event localization ([`extremal`]);
//! - an independent costate-level oracle that realizes singular
//!   configurations explicitly and cross-checks both formulations
//!   statically and by finite differences ([`oracle`]);
//! - grid sweeps producing root surfaces and singular-control percentage
//!   maps as CSV ([`sweep`], [`export`]).
//!
//! All quantities are dimensionless; `mu = 1` is the canonical scaling.

// Guards are written `!(x > 0.0)` so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod export;
pub mod extremal;
pub mod oracle;
pub mod orbit;
pub mod psi;
pub mod sweep;
pub mod throttle;
pub mod vec3;

pub use error::{Error, Result};
pub use extremal::{ControlPolicy, EngineParams, ExtremalState, Regime, Trajectory};
pub use orbit::{PlanarOrbitPoint, ThrustGeometry};
pub use psi::{BetaDomain, BetaRoot, BetaRootSet, PsiShape, Sign, SignBranch, Subdomain};
pub use throttle::{DegeneracyKind, SingularEval, ThrottleClass};
pub use oracle::SingularConfiguration;
pub use vec3::Vec3;
