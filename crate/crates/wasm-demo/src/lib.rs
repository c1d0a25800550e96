//! Browser bindings for exploring the singular-arc necessary condition.
//!
//! Three operations back the demo page: sampling the condition over the
//! admissible thrust-angle domain, enumerating its zeros, and evaluating
//! the singular throttle at every zero for a chosen radius. The `_impl`
//! functions hold the logic and are exercised by native tests; the
//! `wasm_bindgen` wrappers only translate errors.

use wasm_bindgen::prelude::*;

use singular_arcs::error::Error;
use singular_arcs::orbit::PlanarOrbitPoint;
use singular_arcs::psi::{beta0, enumerate_roots_default, psi, BetaRoot, SignBranch};
use singular_arcs::throttle::singular_throttle_with_epsilon;

fn shape_branch(shape: u8) -> Result<SignBranch, Error> {
    match shape {
        0 => Ok(SignBranch::BOTH_POSITIVE),
        1 => Ok(SignBranch::MIXED_RED_PLUS),
        2 => Ok(SignBranch::BOTH_NEGATIVE),
        _ => Err(Error::InvalidParameter("shape must be 0, 1, or 2")),
    }
}

/// Sample `psi` for one shape over the first sub-domain interior,
/// returned as interleaved `[beta, psi, beta, psi, ...]`. The second
/// sub-domain is the exact mirror at `beta + pi`.
pub fn psi_curve_impl(e: f64, theta: f64, shape: u8, n: usize) -> Result<Vec<f64>, Error> {
    let branch = shape_branch(shape)?;
    let n = n.clamp(2, 100_000);
    let b0 = beta0();
    let inset = 1e-6;
    let (lo, hi) = (b0 + inset, std::f64::consts::PI - b0 - inset);
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let beta = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        out.push(beta);
        out.push(psi(e, theta, beta, branch)?);
    }
    Ok(out)
}

fn json_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x}")
    } else {
        "null".to_string()
    }
}

fn root_json(root: &BetaRoot) -> String {
    format!(
        r#"{{"beta":{},"red":{},"blue":{},"subdomain":{},"shape":"{}","psi":{}}}"#,
        json_num(root.beta),
        root.branch.red.as_i8(),
        root.branch.blue.as_i8(),
        root.subdomain.index(),
        root.branch.shape().label(),
        json_num(root.psi_residual),
    )
}

/// Enumerate the zeros of the condition as a JSON object
/// `{"e":..,"theta":..,"total":..,"roots":[..]}`.
pub fn beta_roots_impl(e: f64, theta: f64) -> Result<String, Error> {
    let set = enumerate_roots_default(e, theta)?;
    let roots: Vec<String> = set.roots.iter().map(root_json).collect();
    Ok(format!(
        r#"{{"e":{},"theta":{},"total":{},"roots":[{}]}}"#,
        json_num(e),
        json_num(theta),
        set.total_count,
        roots.join(",")
    ))
}

/// Evaluate the singular throttle at every zero (both mixed sign
/// assignments included) for the given radius; JSON array of rows.
pub fn throttle_table_impl(
    r: f64,
    e: f64,
    theta: f64,
    t_max: f64,
    mass: f64,
) -> Result<String, Error> {
    let set = enumerate_roots_default(e, theta)?;
    let point = PlanarOrbitPoint::new(r, e, theta, mass, 1.0)?;
    let mut rows = Vec::new();
    for root in set.expanded_roots() {
        let eval = singular_throttle_with_epsilon(&point, root.beta, root.branch, t_max, 1e-3)?;
        rows.push(format!(
            r#"{{"beta":{},"red":{},"blue":{},"subdomain":{},"shape":"{}","c_s":{},"a":{},"b":{},"class":"{}"}}"#,
            json_num(root.beta),
            root.branch.red.as_i8(),
            root.branch.blue.as_i8(),
            root.subdomain.index(),
            root.branch.shape().label(),
            json_num(eval.c_s),
            json_num(eval.a_val),
            json_num(eval.b_val),
            eval.classification.label(),
        ));
    }
    Ok(format!("[{}]", rows.join(",")))
}

/// Domain boundary beta0 and the two admissible sub-intervals, flattened
/// as `[beta0, sub1_lo, sub1_hi, sub2_lo, sub2_hi]`.
pub fn beta_domain_impl() -> Vec<f64> {
    let d = singular_arcs::psi::BetaDomain::standard();
    vec![d.beta0, d.sub1.0, d.sub1.1, d.sub2.0, d.sub2.1]
}

fn js_err(e: Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

#[wasm_bindgen]
pub fn psi_curve(e: f64, theta: f64, shape: u8, n: usize) -> Result<Vec<f64>, JsValue> {
    psi_curve_impl(e, theta, shape, n).map_err(js_err)
}

#[wasm_bindgen]
pub fn beta_roots(e: f64, theta: f64) -> Result<String, JsValue> {
    beta_roots_impl(e, theta).map_err(js_err)
}

#[wasm_bindgen]
pub fn throttle_table(r: f64, e: f64, theta: f64, t_max: f64, mass: f64) -> Result<String, JsValue> {
    throttle_table_impl(r, e, theta, t_max, mass).map_err(js_err)
}

#[wasm_bindgen]
pub fn beta_domain() -> Vec<f64> {
    beta_domain_impl()
}
