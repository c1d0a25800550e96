//! Sampled verification run: construct costate realizations across the
//! validity domain, check the construction identities, the equivalence of
//! the costate-form D3 with the algebraic condition, and the
//! finite-difference behaviour of the throttle definition.

use singular_arcs::export::OracleReportRow;
use singular_arcs::extremal::EngineParams;
use singular_arcs::oracle::{
    d1_identity, d2_identity, d3_costate_form, d3_scale, d3dot_fd_converged,
    SingularConfiguration,
};
use singular_arcs::orbit::PlanarOrbitPoint;
use singular_arcs::psi::enumerate_roots_default;
use singular_arcs::throttle::singular_throttle_ungated;

pub struct Outcome {
    pub rows: Vec<OracleReportRow>,
    pub failures: Vec<String>,
}

/// Deterministic low-discrepancy sample over (e, theta, r).
fn golden(k: usize, offset: f64) -> f64 {
    let phi = 0.618_033_988_749_894_9_f64;
    (k as f64 * phi + offset).fract()
}

pub fn run(samples: usize, eng: &EngineParams) -> Outcome {
    let mut rows = Vec::with_capacity(samples);
    let mut failures = Vec::new();
    let mut k = 0usize;
    while rows.len() < samples && k < samples * 20 {
        k += 1;
        let e = 0.02 + 0.86 * golden(k, 0.17);
        let theta = 0.1 + (std::f64::consts::TAU - 0.2) * golden(k, 0.39);
        let r = 0.8 + 3.0 * golden(k, 0.71);
        let set = match enumerate_roots_default(e, theta) {
            Ok(s) => s,
            Err(err) => {
                failures.push(format!("enumeration failed at e={e} theta={theta}: {err}"));
                continue;
            }
        };
        let Some(root) = set
            .roots
            .iter()
            .find(|root| root.branch.is_rate_consistent())
        else {
            failures.push(format!("no rate-consistent zero at e={e} theta={theta}"));
            continue;
        };

        let point = match PlanarOrbitPoint::new(r, e, theta, 1.0, eng.mu) {
            Ok(p) => p,
            Err(err) => {
                failures.push(err.to_string());
                continue;
            }
        };
        let cfg = match SingularConfiguration::new(point, 0.0, root.beta, root.branch, 1.0, eng) {
            Ok(c) => c,
            Err(err) => {
                failures.push(format!("construction failed at e={e} theta={theta}: {err}"));
                continue;
            }
        };

        let soundness = cfg.soundness(eng);
        if !(soundness.s_residual < 1e-12
            && soundness.d1_residual < 1e-12
            && soundness.d2_residual < 1e-12)
        {
            failures.push(format!(
                "identity residuals at e={e} theta={theta}: S {:.1e} D1 {:.1e} D2 {:.1e}",
                soundness.s_residual, soundness.d1_residual, soundness.d2_residual
            ));
        }

        let d3 = d3_costate_form(&cfg);
        if d3.abs() > 1e-8 * d3_scale(&cfg) {
            failures.push(format!(
                "D3 fails to vanish at zero (e={e}, theta={theta}): {:.2e}",
                d3.abs() / d3_scale(&cfg)
            ));
        }

        let eval = match singular_throttle_ungated(&point, root.beta, root.branch, eng) {
            Ok(ev) => ev,
            Err(err) => {
                failures.push(err.to_string());
                continue;
            }
        };
        if !eval.c_s.is_finite() || eval.c_s.abs() > 5.0 {
            // Throttles far outside the unit range make the short-arc
            // differencing unresolvable; the static checks above already
            // covered this zero.
            continue;
        }
        match d3dot_fd_converged(&cfg, eval.c_s, eng) {
            Ok((report, _)) => {
                rows.push(OracleReportRow::from_fd(
                    e,
                    theta,
                    root.beta,
                    root.branch,
                    root.psi_residual,
                    d1_identity(&cfg.state),
                    d2_identity(&cfg.state, eng.mu, root.beta),
                    d3,
                    eval.c_s,
                    &report,
                ));
            }
            Err(err) => {
                failures.push(format!("fd study failed at e={e} theta={theta}: {err}"));
            }
        }
    }
    Outcome { rows, failures }
}
