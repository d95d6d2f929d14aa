//! Flat key-value run configuration.
//!
//! Every physical and numerical parameter of a run is one `key = value`
//! line; anything omitted takes the documented default, so an empty file
//! (or no file) reproduces the reference device. `#` starts a comment and
//! blank lines are skipped. Unknown keys are errors: a typo must not
//! silently fall back to a default.
//!
//! Values are SI, with the unit spelled in the key name where one applies.
//! Rendering a config and parsing it back reproduces the struct exactly.

use crate::domain::{DomainError, Footprint, Geometry, Grid};
use crate::hydro::SolveOptions;
use crate::wick::{WickError, WickSpec};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("config: unknown key `{key}` at line {line}")]
    UnknownKey { key: String, line: usize },
    #[error("config: malformed line {line}: expected `key = value`, got `{text}`")]
    MalformedLine { line: usize, text: String },
    #[error("config: invalid value for `{key}` at line {line}: {reason}")]
    InvalidValue {
        key: String,
        line: usize,
        reason: String,
    },
}

/// One run's worth of parameters, all defaulted.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub length_m: f64,
    pub width_m: f64,
    pub wick_thickness_m: f64,
    pub vapor_thickness_m: f64,
    pub wall_thickness_m: f64,
    pub evap_x0_m: f64,
    pub evap_y0_m: f64,
    pub evap_length_m: f64,
    pub evap_width_m: f64,
    pub cond_x0_m: f64,
    pub cond_y0_m: f64,
    pub cond_length_m: f64,
    pub cond_width_m: f64,
    pub sphere_diameter_m: f64,
    pub porosity: f64,
    pub wetting_angle_deg: f64,
    pub pore_radius_factor: f64,
    pub kozeny_constant: f64,
    pub grid_nx: usize,
    pub grid_ny: usize,
    pub solver_rel_tol: f64,
    /// Conjugate-gradient budget; 0 picks 50*(nx+ny) for the active grid.
    pub solver_max_iter: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            length_m: 0.044,
            width_m: 0.030,
            wick_thickness_m: 0.7e-3,
            vapor_thickness_m: 0.3e-3,
            wall_thickness_m: 0.8e-3,
            evap_x0_m: 0.0,
            evap_y0_m: 0.0,
            evap_length_m: 0.010,
            evap_width_m: 0.030,
            cond_x0_m: 0.034,
            cond_y0_m: 0.0,
            cond_length_m: 0.010,
            cond_width_m: 0.030,
            // Sphere diameter solved so the reference device carries 21 W
            // at 60 degC; see calibration.conf at the repo root.
            sphere_diameter_m: 9.36e-6,
            porosity: 0.4,
            wetting_angle_deg: 10.0,
            pore_radius_factor: 0.21,
            kozeny_constant: 150.0,
            grid_nx: 176,
            grid_ny: 120,
            solver_rel_tol: 1e-10,
            solver_max_iter: 0,
        }
    }
}

const KEYS: &[&str] = &[
    "length_m",
    "width_m",
    "wick_thickness_m",
    "vapor_thickness_m",
    "wall_thickness_m",
    "evap_x0_m",
    "evap_y0_m",
    "evap_length_m",
    "evap_width_m",
    "cond_x0_m",
    "cond_y0_m",
    "cond_length_m",
    "cond_width_m",
    "sphere_diameter_m",
    "porosity",
    "wetting_angle_deg",
    "pore_radius_factor",
    "kozeny_constant",
    "grid_nx",
    "grid_ny",
    "solver_rel_tol",
    "solver_max_iter",
];

fn invalid(key: &str, line: usize, reason: impl Into<String>) -> ConfigError {
    ConfigError::InvalidValue {
        key: key.to_string(),
        line,
        reason: reason.into(),
    }
}

fn parse_f64(key: &str, raw: &str, line: usize) -> Result<f64, ConfigError> {
    raw.parse::<f64>()
        .map_err(|_| invalid(key, line, format!("`{raw}` is not a number")))
}

fn parse_positive(key: &str, raw: &str, line: usize) -> Result<f64, ConfigError> {
    let v = parse_f64(key, raw, line)?;
    if !(v.is_finite() && v > 0.0) {
        return Err(invalid(key, line, format!("must be positive, got {raw}")));
    }
    Ok(v)
}

fn parse_nonnegative(key: &str, raw: &str, line: usize) -> Result<f64, ConfigError> {
    let v = parse_f64(key, raw, line)?;
    if !(v.is_finite() && v >= 0.0) {
        return Err(invalid(key, line, format!("must be >= 0, got {raw}")));
    }
    Ok(v)
}

fn parse_usize(key: &str, raw: &str, line: usize, min: usize) -> Result<usize, ConfigError> {
    let v: usize = raw
        .parse()
        .map_err(|_| invalid(key, line, format!("`{raw}` is not a non-negative integer")))?;
    if v < min {
        return Err(invalid(key, line, format!("must be at least {min}, got {raw}")));
    }
    Ok(v)
}

/// Parse a config file's text over the defaults.
pub fn parse_config(text: &str) -> Result<Config, ConfigError> {
    let mut config = Config::default();
    for (index, raw_line) in text.lines().enumerate() {
        let line = index + 1;
        let content = match raw_line.find('#') {
            Some(at) => &raw_line[..at],
            None => raw_line,
        };
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError::MalformedLine {
                line,
                text: content.to_string(),
            });
        };
        let key = key.trim();
        let value = value.trim();
        if value.is_empty() {
            return Err(ConfigError::MalformedLine {
                line,
                text: content.to_string(),
            });
        }
        match key {
            "length_m" => config.length_m = parse_positive(key, value, line)?,
            "width_m" => config.width_m = parse_positive(key, value, line)?,
            "wick_thickness_m" => config.wick_thickness_m = parse_positive(key, value, line)?,
            "vapor_thickness_m" => config.vapor_thickness_m = parse_positive(key, value, line)?,
            "wall_thickness_m" => config.wall_thickness_m = parse_positive(key, value, line)?,
            "evap_x0_m" => config.evap_x0_m = parse_nonnegative(key, value, line)?,
            "evap_y0_m" => config.evap_y0_m = parse_nonnegative(key, value, line)?,
            "evap_length_m" => config.evap_length_m = parse_positive(key, value, line)?,
            "evap_width_m" => config.evap_width_m = parse_positive(key, value, line)?,
            "cond_x0_m" => config.cond_x0_m = parse_nonnegative(key, value, line)?,
            "cond_y0_m" => config.cond_y0_m = parse_nonnegative(key, value, line)?,
            "cond_length_m" => config.cond_length_m = parse_positive(key, value, line)?,
            "cond_width_m" => config.cond_width_m = parse_positive(key, value, line)?,
            "sphere_diameter_m" => config.sphere_diameter_m = parse_positive(key, value, line)?,
            "porosity" => {
                let v = parse_f64(key, value, line)?;
                if !(v.is_finite() && v > 0.0 && v < 1.0) {
                    return Err(invalid(key, line, format!("must lie in (0, 1), got {value}")));
                }
                config.porosity = v;
            }
            "wetting_angle_deg" => {
                let v = parse_f64(key, value, line)?;
                if !(v.is_finite() && (0.0..90.0).contains(&v)) {
                    return Err(invalid(
                        key,
                        line,
                        format!("must lie in [0, 90) degrees, got {value}"),
                    ));
                }
                config.wetting_angle_deg = v;
            }
            "pore_radius_factor" => config.pore_radius_factor = parse_positive(key, value, line)?,
            "kozeny_constant" => config.kozeny_constant = parse_positive(key, value, line)?,
            "grid_nx" => config.grid_nx = parse_usize(key, value, line, 2)?,
            "grid_ny" => config.grid_ny = parse_usize(key, value, line, 2)?,
            "solver_rel_tol" => config.solver_rel_tol = parse_positive(key, value, line)?,
            "solver_max_iter" => config.solver_max_iter = parse_usize(key, value, line, 0)?,
            _ => {
                return Err(ConfigError::UnknownKey {
                    key: key.to_string(),
                    line,
                });
            }
        }
    }
    Ok(config)
}

impl Config {
    fn value_of(&self, key: &str) -> String {
        match key {
            "length_m" => format!("{}", self.length_m),
            "width_m" => format!("{}", self.width_m),
            "wick_thickness_m" => format!("{}", self.wick_thickness_m),
            "vapor_thickness_m" => format!("{}", self.vapor_thickness_m),
            "wall_thickness_m" => format!("{}", self.wall_thickness_m),
            "evap_x0_m" => format!("{}", self.evap_x0_m),
            "evap_y0_m" => format!("{}", self.evap_y0_m),
            "evap_length_m" => format!("{}", self.evap_length_m),
            "evap_width_m" => format!("{}", self.evap_width_m),
            "cond_x0_m" => format!("{}", self.cond_x0_m),
            "cond_y0_m" => format!("{}", self.cond_y0_m),
            "cond_length_m" => format!("{}", self.cond_length_m),
            "cond_width_m" => format!("{}", self.cond_width_m),
            "sphere_diameter_m" => format!("{}", self.sphere_diameter_m),
            "porosity" => format!("{}", self.porosity),
            "wetting_angle_deg" => format!("{}", self.wetting_angle_deg),
            "pore_radius_factor" => format!("{}", self.pore_radius_factor),
            "kozeny_constant" => format!("{}", self.kozeny_constant),
            "grid_nx" => format!("{}", self.grid_nx),
            "grid_ny" => format!("{}", self.grid_ny),
            "solver_rel_tol" => format!("{}", self.solver_rel_tol),
            "solver_max_iter" => format!("{}", self.solver_max_iter),
            _ => unreachable!("render covers every key"),
        }
    }

    /// Full key-value text; parsing it back reproduces `self` exactly.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for key in KEYS {
            out.push_str(key);
            out.push_str(" = ");
            out.push_str(&self.value_of(key));
            out.push('\n');
        }
        out
    }

    /// Package geometry implied by the config.
    pub fn geometry(&self) -> Result<Geometry, DomainError> {
        Geometry::new(
            self.length_m,
            self.width_m,
            self.wick_thickness_m,
            self.vapor_thickness_m,
            self.wall_thickness_m,
            Footprint::new(self.evap_x0_m, self.evap_y0_m, self.evap_length_m, self.evap_width_m),
            Footprint::new(self.cond_x0_m, self.cond_y0_m, self.cond_length_m, self.cond_width_m),
        )
    }

    /// Wick description implied by the config.
    pub fn wick(&self) -> Result<WickSpec, WickError> {
        WickSpec::with_constants(
            self.sphere_diameter_m,
            self.porosity,
            self.wick_thickness_m,
            self.wetting_angle_deg,
            self.pore_radius_factor,
            self.kozeny_constant,
        )
    }

    /// Solver grid implied by the config (or an override resolution).
    pub fn grid(&self, geometry: &Geometry) -> Result<Grid, DomainError> {
        crate::domain::build_grid(geometry, self.grid_nx, self.grid_ny)
    }

    pub fn solve_options(&self) -> SolveOptions {
        SolveOptions {
            rel_tol: self.solver_rel_tol,
            max_iter: self.solver_max_iter,
        }
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
