//! CSV emission. All numeric fields are printed with 12 significant
//! digits so identical inputs produce byte-identical files.

use std::io::{self, Write};

use crate::extremal::Trajectory;
use crate::oracle::FdReport;
use crate::psi::{BetaRootSet, SignBranch};
use crate::sweep::{PercentageMap, SweepRecord};

/// 12-significant-digit scientific formatting.
pub fn sig12(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{:.11e}", x)
    }
}

fn branch_cols(b: SignBranch) -> String {
    format!("{:+},{:+}", b.red.as_i8(), b.blue.as_i8())
}

/// Roots CSV: `e, theta, branch_red, branch_blue, subdomain, beta,
/// psi_residual`, one row per distinct zero.
pub fn write_roots_csv<W: Write>(w: &mut W, sets: &[&BetaRootSet]) -> io::Result<()> {
    writeln!(w, "e,theta,branch_red,branch_blue,subdomain,beta,psi_residual")?;
    for set in sets {
        for r in &set.roots {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                sig12(set.e),
                sig12(set.theta),
                branch_cols(r.branch),
                r.subdomain.index(),
                sig12(r.beta),
                sig12(r.psi_residual)
            )?;
        }
    }
    Ok(())
}

/// Trajectory CSV with the full state, costates, switching function, and
/// commanded throttle.
pub fn write_trajectory_csv<W: Write>(w: &mut W, traj: &Trajectory) -> io::Result<()> {
    writeln!(
        w,
        "t,r_x,r_y,r_z,v_x,v_y,v_z,m,p_rx,p_ry,p_rz,p_vx,p_vy,p_vz,p_m,S,c"
    )?;
    for s in &traj.samples {
        let st = &s.state;
        let row = [
            s.t, st.r.x, st.r.y, st.r.z, st.v.x, st.v.y, st.v.z, st.m, st.p_r.x, st.p_r.y,
            st.p_r.z, st.p_v.x, st.p_v.y, st.p_v.z, st.p_m, s.s, s.c,
        ];
        let cols: Vec<String> = row.iter().map(|&x| sig12(x)).collect();
        writeln!(w, "{}", cols.join(","))?;
    }
    Ok(())
}

/// Percentage-map matrix CSV (rows r, columns e) with `#` metadata lines
/// recording the configuration and the assumption flags.
pub fn write_percentage_csv<W: Write>(
    w: &mut W,
    map: &PercentageMap,
    pair_accounting: bool,
) -> io::Result<()> {
    let cfg = &map.config;
    writeln!(w, "# singular-control percentage map")?;
    writeln!(
        w,
        "# assumed t_max = {} mu = {} m = {} (throttle scales with m / t_max; these are not fixed by the analysis)",
        sig12(cfg.t_max),
        sig12(cfg.mu),
        sig12(cfg.m)
    )?;
    writeln!(
        w,
        "# accounting: {}",
        if pair_accounting {
            "thrust-line pairs; a pair counts singular when either orientation is"
        } else {
            "per (theta, zero, sign assignment) evaluation; denominator excludes A-degenerate"
        }
    )?;
    writeln!(
        w,
        "# grids: r [{}, {}] n={} e [{}, {}] n={} theta [{}, {}] n={} epsilon = {}",
        sig12(cfg.r_grid.min),
        sig12(cfg.r_grid.max),
        cfg.r_grid.n,
        sig12(cfg.e_grid.min),
        sig12(cfg.e_grid.max),
        cfg.e_grid.n,
        sig12(cfg.theta_grid.min),
        sig12(cfg.theta_grid.max),
        cfg.theta_grid.n,
        sig12(cfg.epsilon)
    )?;
    let header: Vec<String> = std::iter::once("r\\e".to_string())
        .chain(map.e_values.iter().map(|&e| sig12(e)))
        .collect();
    writeln!(w, "{}", header.join(","))?;
    for (ri, &r) in map.r_values.iter().enumerate() {
        let row: Vec<String> = std::iter::once(sig12(r))
            .chain(map.e_values.iter().enumerate().map(|(ei, _)| {
                sig12(if pair_accounting {
                    map.pair_fraction(ri, ei)
                } else {
                    map.fraction(ri, ei)
                })
            }))
            .collect();
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

/// Flat record CSV backing the percentage map.
pub fn write_records_csv<W: Write>(w: &mut W, records: &[SweepRecord]) -> io::Result<()> {
    writeln!(w, "r,e,theta,beta,branch_red,branch_blue,subdomain,c_s,classification")?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            sig12(r.r),
            sig12(r.e),
            sig12(r.theta),
            sig12(r.beta),
            branch_cols(r.branch),
            r.subdomain.index(),
            sig12(r.c_s),
            r.classification.label()
        )?;
    }
    Ok(())
}

/// One row of the oracle verification report.
#[derive(Debug, Clone)]
pub struct OracleReportRow {
    pub e: f64,
    pub theta: f64,
    pub beta: f64,
    pub branch: SignBranch,
    pub psi: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    pub c_s: f64,
    pub d3dot_analytic: f64,
    pub d3dot_fd: f64,
    /// Finite-difference error ratio between the two largest steps;
    /// near 4 for second-order differences.
    pub conv_order: f64,
}

impl OracleReportRow {
    #[allow(clippy::too_many_arguments)]
    pub fn from_fd(
        e: f64,
        theta: f64,
        beta: f64,
        branch: SignBranch,
        psi: f64,
        d1: f64,
        d2: f64,
        d3: f64,
        c_s: f64,
        report: &FdReport,
    ) -> Self {
        let ratios = report.error_ratios();
        OracleReportRow {
            e,
            theta,
            beta,
            branch,
            psi,
            d1,
            d2,
            d3,
            c_s,
            d3dot_analytic: report.analytic,
            d3dot_fd: report.samples.first().map_or(f64::NAN, |s| s.estimate),
            conv_order: ratios.first().copied().unwrap_or(f64::NAN),
        }
    }
}

/// Oracle report CSV.
pub fn write_oracle_report_csv<W: Write>(w: &mut W, rows: &[OracleReportRow]) -> io::Result<()> {
    writeln!(w, "# conv_order: finite-difference error ratio between successive step halvings")?;
    writeln!(
        w,
        "e,theta,beta,branch_red,branch_blue,psi,d1,d2,d3,c_s,d3dot_analytic,d3dot_fd,conv_order"
    )?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            sig12(r.e),
            sig12(r.theta),
            sig12(r.beta),
            branch_cols(r.branch),
            sig12(r.psi),
            sig12(r.d1),
            sig12(r.d2),
            sig12(r.d3),
            sig12(r.c_s),
            sig12(r.d3dot_analytic),
            sig12(r.d3dot_fd),
            sig12(r.conv_order),
        )?;
    }
    Ok(())
}
