//! Steady-state hydrodynamics of thin flat heat pipes with sintered
//! copper-sphere wicks.
//!
//! The model answers one question: how much heat can the capillary pumping
//! of the wick circulate before the menisci let go? It resolves the liquid
//! and vapor pressure fields over the planform of the pipe at a fixed
//! operating temperature, compares their combined drop with the available
//! capillary pressure, and reports the power where the two meet.
//!
//! The crate is layered bottom-up:
//!
//! - [`fluids`]: saturated water properties, interpolated from a built-in
//!   table over 10 to 95 degC.
//! - [`wick`]: sintered-sphere closures giving pore radius, permeability,
//!   and capillary pressure.
//! - [`domain`]: planform geometry, uniform grid, and the phase-change
//!   mass flux driven by an applied power.
//! - [`elliptic`]: a conjugate-gradient solver for the singular Neumann
//!   Poisson problems both pressure fields reduce to.
//! - [`hydro`]: the depth-averaged liquid and vapor pressure fields and
//!   their re-referencing to absolute pressures.
//! - [`limits`]: the capillary operating limit, by linearity, by
//!   bisection, and in a grid-free 1D reduction.
//! - [`config`] / [`output`] / [`cli`]: flat key-value configuration,
//!   9-significant-digit deterministic emission, and the command-line
//!   binary on top.

pub mod cli;
pub mod config;
pub mod domain;
pub mod elliptic;
pub mod fluids;
pub mod hydro;
pub mod limits;
pub mod output;
pub mod wick;

pub use config::{parse_config, Config};
pub use domain::{build_grid, default_geometry, phase_change_flux, Footprint, Geometry, Grid};
pub use fluids::{saturation_properties, FluidState};
pub use hydro::{
    liquid_pressure, pressure_drops, rereference, vapor_pressure, Phase, PressureDrops,
    PressureField, SolveOptions,
};
pub use limits::{q_max, q_max_1d, q_max_bisection, sweep_temperature, CapillaryReport};
pub use wick::WickSpec;
