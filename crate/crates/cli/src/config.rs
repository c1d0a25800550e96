//! Flat key=value configuration files. Recognized keys: `mu`, `t_max`,
//! `mass`, `epsilon`, and the grids `r_grid`, `e_grid`, `theta_grid` as
//! `min,max,n`. Lines starting with `#` are comments. Command-line flags
//! override file values, which override the defaults.

use std::collections::HashMap;
use std::fs;

use singular_arcs::sweep::{GridSpec, SweepConfig};

use crate::PhysicalArgs;

#[derive(Debug, Clone)]
pub struct Merged {
    pub mu: f64,
    pub t_max: f64,
    pub mass: f64,
    pub epsilon: f64,
    pub r_grid: Option<GridSpec>,
    pub e_grid: Option<GridSpec>,
    pub theta_grid: Option<GridSpec>,
}

impl Merged {
    pub fn load(args: &PhysicalArgs) -> Result<Merged, String> {
        let file = match &args.config {
            Some(path) => parse_file(
                &fs::read_to_string(path)
                    .map_err(|e| format!("reading {}: {e}", path.display()))?,
            )?,
            None => HashMap::new(),
        };
        let scalar = |key: &str, flag: Option<f64>, default: f64| -> Result<f64, String> {
            if let Some(v) = flag {
                return Ok(v);
            }
            match file.get(key) {
                Some(raw) => raw.parse::<f64>().map_err(|e| format!("config key {key}: {e}")),
                None => Ok(default),
            }
        };
        let grid = |key: &str, flag: &Option<GridSpec>| -> Result<Option<GridSpec>, String> {
            if flag.is_some() {
                return Ok(*flag);
            }
            match file.get(key) {
                Some(raw) => crate::parse_grid(raw).map(Some).map_err(|e| format!("config key {key}: {e}")),
                None => Ok(None),
            }
        };
        Ok(Merged {
            mu: scalar("mu", args.mu, 1.0)?,
            t_max: scalar("t_max", args.tmax, 1.0)?,
            mass: scalar("mass", args.mass, 1.0)?,
            epsilon: scalar("epsilon", args.epsilon, singular_arcs::throttle::SINGULAR_EPSILON)?,
            r_grid: grid("r_grid", &args.r_grid)?,
            e_grid: grid("e_grid", &args.e_grid)?,
            theta_grid: grid("theta_grid", &args.theta_grid)?,
        })
    }

    /// Sweep configuration with the documented defaults filling any grid
    /// left unspecified.
    pub fn sweep_config(&self) -> SweepConfig {
        let defaults = SweepConfig::default();
        SweepConfig {
            r_grid: self.r_grid.unwrap_or(defaults.r_grid),
            e_grid: self.e_grid.unwrap_or(defaults.e_grid),
            theta_grid: self.theta_grid.unwrap_or(defaults.theta_grid),
            m: self.mass,
            t_max: self.t_max,
            mu: self.mu,
            epsilon: self.epsilon,
            ..defaults
        }
    }
}

fn parse_file(text: &str) -> Result<HashMap<String, String>, String> {
    let mut map = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value", lineno + 1))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_key_values() {
        let map = parse_file("# comment\nmu = 2.0\n\ne_grid = 0.1,0.5,7\n").unwrap();
        assert_eq!(map.get("mu").unwrap(), "2.0");
        assert_eq!(map.get("e_grid").unwrap(), "0.1,0.5,7");
    }

    #[test]
    fn flags_override_file() {
        let dir = std::env::temp_dir().join("singular_arcs_cli_cfg_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cfg.txt");
        std::fs::write(&path, "mu = 3.0\nmass = 2.0\n").unwrap();
        let args = PhysicalArgs { config: Some(path), mu: Some(5.0), ..Default::default() };
        let merged = Merged::load(&args).unwrap();
        assert_eq!(merged.mu, 5.0);
        assert_eq!(merged.mass, 2.0);
        assert_eq!(merged.t_max, 1.0);
    }
}
