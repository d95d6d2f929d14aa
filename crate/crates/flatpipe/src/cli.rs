//! Command dispatch and flag handling.
//!
//! Four commands cover the artifact's outputs: `props` prints saturated
//! water properties, `qmax` the capillary limit at one temperature, `sweep`
//! the limit across a range, and `field` a full planform pressure map.
//! Configuration comes from an optional key-value file; flags only select
//! what to compute and where to put it. Exit status separates the two ways
//! a run can fail: 1 when the invocation or configuration is unusable, 2
//! when the model itself cannot produce a number.

use crate::config::{parse_config, Config};
use crate::domain::phase_change_flux;
use crate::fluids::saturation_properties;
use crate::hydro::{liquid_pressure, rereference, vapor_pressure, Phase};
use crate::limits::{q_max, sweep_temperature};
use crate::output;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fmt::Display;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "flatpipe",
    version,
    about = "Steady-state hydrodynamics of thin flat heat pipes with sintered wicks"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Key-value configuration file; omit to run the reference device
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Write output to this file instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Override the configured grid resolution
    #[arg(long, global = true, num_args = 2, value_names = ["NX", "NY"])]
    pub grid: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PhaseArg {
    Liquid,
    Vapor,
}

impl From<PhaseArg> for Phase {
    fn from(arg: PhaseArg) -> Phase {
        match arg {
            PhaseArg::Liquid => Phase::Liquid,
            PhaseArg::Vapor => Phase::Vapor,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Saturated water properties at one temperature
    Props {
        /// Operating temperature, degC
        #[arg(long, value_name = "DEG_C")]
        temp: f64,
    },
    /// Capillary-limited maximum power at one temperature
    Qmax {
        /// Operating temperature, degC
        #[arg(long, value_name = "DEG_C")]
        temp: f64,
    },
    /// Capillary limit across a temperature range
    Sweep {
        /// First temperature, degC
        #[arg(long, value_name = "DEG_C")]
        tmin: f64,
        /// Last temperature, degC (inclusive when the step lands on it)
        #[arg(long, value_name = "DEG_C")]
        tmax: f64,
        /// Temperature increment, degC
        #[arg(long, value_name = "DEG_C")]
        tstep: f64,
    },
    /// Planform pressure field of one phase
    Field {
        /// Operating temperature, degC
        #[arg(long, value_name = "DEG_C")]
        temp: f64,
        /// Applied power, W
        #[arg(long, value_name = "WATTS")]
        power: f64,
        /// Which phase's pressures to export
        #[arg(long, value_enum)]
        phase: PhaseArg,
    },
}

/// How a run failed, which fixes the process exit status.
#[derive(Debug, Clone, PartialEq)]
pub enum RunError {
    /// The invocation or configuration cannot be acted on. Exit 1.
    Usage(String),
    /// The model could not produce a result; the message names the
    /// failing module. Exit 2.
    Numerical(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Usage(_) => 1,
            RunError::Numerical(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            RunError::Usage(m) | RunError::Numerical(m) => m,
        }
    }
}

fn usage(e: impl Display) -> RunError {
    RunError::Usage(e.to_string())
}

fn numerical(e: impl Display) -> RunError {
    RunError::Numerical(e.to_string())
}

fn load_config(common: &CommonArgs) -> Result<Config, RunError> {
    let mut config = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
            parse_config(&text).map_err(usage)?
        }
        None => Config::default(),
    };
    if let Some(grid) = &common.grid {
        let (nx, ny) = (grid[0], grid[1]);
        if nx < 2 || ny < 2 {
            return Err(usage(format!("--grid must be at least 2 2, got {nx} {ny}")));
        }
        config.grid_nx = nx;
        config.grid_ny = ny;
    }
    Ok(config)
}

/// Inclusive arithmetic progression from `tmin` by `tstep`, with a little
/// slack so that an endpoint reached up to rounding error is kept.
fn temperature_list(tmin: f64, tmax: f64, tstep: f64) -> Result<Vec<f64>, RunError> {
    if !(tmin.is_finite() && tmax.is_finite() && tstep.is_finite()) {
        return Err(usage("--tmin, --tmax, and --tstep must be finite"));
    }
    if tstep <= 0.0 {
        return Err(usage(format!("--tstep must be positive, got {tstep}")));
    }
    if tmax < tmin {
        return Err(usage(format!("--tmax {tmax} is below --tmin {tmin}")));
    }
    let count = ((tmax - tmin) / tstep + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| tmin + k as f64 * tstep).collect())
}

/// Execute one parsed invocation and return the text it should emit.
///
/// Warnings (currently only the packaging budget) go straight to standard
/// error so they never contaminate the machine-readable stream.
pub fn run(cli: &Cli) -> Result<String, RunError> {
    let config = load_config(&cli.common)?;
    let format = cli.common.format;
    match &cli.command {
        Command::Props { temp } => {
            let fluid = saturation_properties(*temp).map_err(numerical)?;
            Ok(match format {
                Format::Csv => output::props_csv(&fluid),
                Format::Json => output::props_json(&fluid),
            })
        }
        Command::Qmax { temp } => {
            let (geometry, wick, grid) = assemble(&config)?;
            let report = q_max(&geometry, &wick, *temp, &grid, &config.solve_options())
                .map_err(numerical)?;
            Ok(match format {
                Format::Csv => output::qmax_csv(&report),
                Format::Json => output::qmax_json(&report),
            })
        }
        Command::Sweep { tmin, tmax, tstep } => {
            let (geometry, wick, grid) = assemble(&config)?;
            let temperatures = temperature_list(*tmin, *tmax, *tstep)?;
            let reports = sweep_temperature(
                &geometry,
                &wick,
                &temperatures,
                &grid,
                &config.solve_options(),
            )
            .map_err(numerical)?;
            Ok(match format {
                Format::Csv => output::sweep_csv(&reports),
                Format::Json => output::sweep_json(&reports),
            })
        }
        Command::Field { temp, power, phase } => {
            let (geometry, wick, grid) = assemble(&config)?;
            let fluid = saturation_properties(*temp).map_err(numerical)?;
            let flux = phase_change_flux(&grid, &geometry, *power, fluid.h_fg).map_err(numerical)?;
            let options = config.solve_options();
            let p_l = liquid_pressure(&grid, &flux, &fluid, &wick, &options).map_err(numerical)?;
            let p_v = vapor_pressure(&grid, &flux, &fluid, geometry.vapor_thickness, &options)
                .map_err(numerical)?;
            let (p_l, p_v) = rereference(&p_l, &p_v, &fluid).map_err(numerical)?;
            let field = match Phase::from(*phase) {
                Phase::Liquid => p_l,
                Phase::Vapor => p_v,
            };
            Ok(match format {
                Format::Csv => output::field_text(&grid, &field, *temp, *power),
                Format::Json => output::field_json(&grid, &field, *temp, *power),
            })
        }
    }
}

fn assemble(
    config: &Config,
) -> Result<(crate::domain::Geometry, crate::wick::WickSpec, crate::domain::Grid), RunError> {
    let geometry = config.geometry().map_err(usage)?;
    if !geometry.within_packaging_budget() {
        eprintln!(
            "warning: wick plus vapor core is {:.3e} m thick, over the 1 mm packaging budget",
            geometry.wick_thickness + geometry.vapor_thickness
        );
    }
    let wick = config.wick().map_err(usage)?;
    let grid = config.grid(&geometry).map_err(usage)?;
    Ok((geometry, wick, grid))
}
