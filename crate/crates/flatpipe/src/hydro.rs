//! Depth-averaged pressure fields of the two circulating phases.
//!
//! Liquid seeps through the wick as Darcy flow in a layer of thickness h_w;
//! vapor moves through the core as plane-Poiseuille flow in a gap h_v. Mass
//! balance per layer turns each into a planform Poisson problem driven by
//! the phase-change flux m'':
//!
//!   div(grad P_l) =  (mu_l / (rho_l * K * h_w)) * m''
//!   div(grad P_v) = -(12 * mu_v / (rho_v * h_v^3)) * m''
//!
//! Signs follow from where mass leaves and enters each layer: evaporation
//! drains liquid and feeds vapor. Solved fields are relative (zero mean);
//! [`rereference`] anchors them to absolute pressure by placing the vapor
//! minimum at saturation and a flat meniscus at that same condenser cell.
//! Pressure drops are always taken from the relative values, so they do not
//! feel the anchoring at all.

use crate::domain::{Grid, MassFluxField};
use crate::elliptic::{self, EllipticError, ScalarField};
use crate::fluids::FluidState;
use crate::wick::WickSpec;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HydroError {
    #[error(transparent)]
    Solve(#[from] EllipticError),
    #[error("hydro: {name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("hydro: pressure fields live on different grids")]
    ShapeMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Liquid,
    Vapor,
}

impl std::fmt::Display for Phase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Phase::Liquid => "liquid",
            Phase::Vapor => "vapor",
        })
    }
}

/// Absolute-pressure anchor attached by [`rereference`].
///
/// Cell pressures materialize as `base_pa + (value - anchor_value)`, which
/// makes the anchored cell hit `base_pa` exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reference {
    /// Absolute pressure at the anchor cell, Pa.
    pub base_pa: f64,
    /// Relative field value at the anchor cell.
    pub anchor_value: f64,
    /// Row-major index of the anchor cell.
    pub anchor_index: usize,
}

/// One phase's planform pressure field.
///
/// Values are relative (zero mean) straight from the solver; an attached
/// [`Reference`] lifts them to absolute pressures on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct PressureField {
    pub phase: Phase,
    pub nx: usize,
    pub ny: usize,
    values: Vec<f64>,
    reference: Option<Reference>,
}

impl PressureField {
    fn from_solution(phase: Phase, solution: ScalarField) -> Self {
        PressureField {
            phase,
            nx: solution.nx,
            ny: solution.ny,
            values: solution.values,
            reference: None,
        }
    }

    /// Relative (zero-mean) values, Pa.
    pub fn relative_values(&self) -> &[f64] {
        &self.values
    }

    pub fn reference(&self) -> Option<&Reference> {
        self.reference.as_ref()
    }

    /// Offset that the reference adds to the relative values, Pa.
    pub fn offset_pa(&self) -> f64 {
        self.reference
            .as_ref()
            .map(|r| r.base_pa - r.anchor_value)
            .unwrap_or(0.0)
    }

    /// Absolute pressure at row-major cell `k`, Pa.
    pub fn absolute_at(&self, k: usize) -> f64 {
        match &self.reference {
            Some(r) => r.base_pa + (self.values[k] - r.anchor_value),
            None => self.values[k],
        }
    }

    /// All absolute pressures in row-major order, Pa.
    pub fn absolute_values(&self) -> Vec<f64> {
        (0..self.values.len()).map(|k| self.absolute_at(k)).collect()
    }

    /// Minimum over the relative values and the row-major index of its
    /// first occurrence.
    pub fn min_with_index(&self) -> (f64, usize) {
        let mut best = f64::INFINITY;
        let mut at = 0;
        for (k, v) in self.values.iter().enumerate() {
            if *v < best {
                best = *v;
                at = k;
            }
        }
        (best, at)
    }

    pub fn max_with_index(&self) -> (f64, usize) {
        let mut best = f64::NEG_INFINITY;
        let mut at = 0;
        for (k, v) in self.values.iter().enumerate() {
            if *v > best {
                best = *v;
                at = k;
            }
        }
        (best, at)
    }

    /// max - min of the relative values; unchanged by re-referencing.
    pub fn drop(&self) -> f64 {
        self.max_with_index().0 - self.min_with_index().0
    }
}

/// Peak-to-peak pressure losses of both phases, Pa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureDrops {
    pub dp_l: f64,
    pub dp_v: f64,
}

impl PressureDrops {
    pub fn total(&self) -> f64 {
        self.dp_l + self.dp_v
    }
}

/// Solver controls shared by both phase solves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Relative residual tolerance.
    pub rel_tol: f64,
    /// Iteration budget; 0 selects 50*(nx+ny) for the grid at hand.
    pub max_iter: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            rel_tol: 1e-10,
            max_iter: 0,
        }
    }
}

impl SolveOptions {
    fn budget(&self, grid: &Grid) -> usize {
        if self.max_iter == 0 {
            elliptic::default_max_iter(grid.nx, grid.ny)
        } else {
            self.max_iter
        }
    }
}

fn solve_scaled(
    grid: &Grid,
    flux: &MassFluxField,
    coefficient: f64,
    phase: Phase,
    options: &SolveOptions,
) -> Result<PressureField, HydroError> {
    let source = ScalarField::from_values(
        grid,
        flux.values.iter().map(|m| coefficient * m).collect(),
    );
    let solution = elliptic::solve_poisson_neumann(grid, &source, options.rel_tol, options.budget(grid))?;
    Ok(PressureField::from_solution(phase, solution))
}

/// Liquid pressure from Darcy flow in the wick layer.
pub fn liquid_pressure(
    grid: &Grid,
    flux: &MassFluxField,
    fluid: &FluidState,
    wick: &WickSpec,
    options: &SolveOptions,
) -> Result<PressureField, HydroError> {
    let coefficient = fluid.mu_l / (fluid.rho_l * wick.permeability * wick.thickness);
    solve_scaled(grid, flux, coefficient, Phase::Liquid, options)
}

/// Vapor pressure from plane-Poiseuille flow in a core of thickness `h_v`.
pub fn vapor_pressure(
    grid: &Grid,
    flux: &MassFluxField,
    fluid: &FluidState,
    h_v: f64,
    options: &SolveOptions,
) -> Result<PressureField, HydroError> {
    if !(h_v.is_finite() && h_v > 0.0) {
        return Err(HydroError::NonPositive {
            name: "vapor core thickness",
            value: h_v,
        });
    }
    let coefficient = -12.0 * fluid.mu_v / (fluid.rho_v * h_v * h_v * h_v);
    solve_scaled(grid, flux, coefficient, Phase::Vapor, options)
}

/// Anchor a solved pair to absolute pressure.
///
/// The vapor minimum is set to the saturation pressure, and the liquid is
/// shifted so that it meets the vapor exactly at that cell: a flat meniscus
/// where condensation ends. Relative values are untouched, so pressure
/// drops are identical before and after.
pub fn rereference(
    p_l: &PressureField,
    p_v: &PressureField,
    fluid: &FluidState,
) -> Result<(PressureField, PressureField), HydroError> {
    if p_l.nx != p_v.nx || p_l.ny != p_v.ny {
        return Err(HydroError::ShapeMismatch);
    }
    let (v_min, anchor) = p_v.min_with_index();
    let mut liquid = p_l.clone();
    let mut vapor = p_v.clone();
    vapor.reference = Some(Reference {
        base_pa: fluid.p_sat,
        anchor_value: v_min,
        anchor_index: anchor,
    });
    liquid.reference = Some(Reference {
        base_pa: fluid.p_sat,
        anchor_value: p_l.values[anchor],
        anchor_index: anchor,
    });
    Ok((liquid, vapor))
}

/// Peak-to-peak drops of a solved pair.
pub fn pressure_drops(p_l: &PressureField, p_v: &PressureField) -> PressureDrops {
    PressureDrops {
        dp_l: p_l.drop(),
        dp_v: p_v.drop(),
    }
}
