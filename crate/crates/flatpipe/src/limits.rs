//! Capillary operating limit.
//!
//! The wick sustains circulation as long as the menisci can supply the
//! pressure the loop consumes: 2*sigma*cos(theta)/r_eff must cover the sum
//! of the liquid and vapor drops. Both drops are linear in the applied
//! power, so one unit-power solve yields per-watt drops and the limit in
//! closed form:
//!
//!   q_max = dp_cap / (dpl_per_w + dpv_per_w)
//!
//! [`q_max_bisection`] reaches the same point by re-solving at trial powers
//! and bisecting on the sign of the remaining margin; it exists to check
//! the linear shortcut, not to replace it. [`q_max_1d`] collapses the
//! planform to a strip with an effective length and needs no grid at all,
//! which makes it a handy independent yardstick for full solves.

use crate::domain::{build_grid, phase_change_flux, DomainError, Geometry, Grid};
use crate::elliptic::EllipticError;
use crate::fluids::{saturation_properties, FluidsError};
use crate::hydro::{
    liquid_pressure, pressure_drops, vapor_pressure, HydroError, PressureDrops, SolveOptions,
};
use crate::wick::{WickError, WickSpec};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LimitsError {
    #[error(transparent)]
    Fluids(#[from] FluidsError),
    #[error(transparent)]
    Wick(#[from] WickError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Hydro(#[from] HydroError),
    #[error("limits: unit-power solve produced no pressure drop")]
    ZeroDrop,
    #[error("limits: margin at bracket power {q_hi} W is still {margin} Pa; raise the bracket")]
    BracketFailure { q_hi: f64, margin: f64 },
    #[error("limits: 1D reduction needs full-width end footprints, {reason}")]
    NotStripLayout { reason: &'static str },
    #[error("limits: temperature list is empty")]
    EmptyList,
    #[error("limits: temperatures must be strictly increasing, got {prev} then {next}")]
    NotIncreasing { prev: f64, next: f64 },
}

impl From<EllipticError> for LimitsError {
    fn from(e: EllipticError) -> Self {
        LimitsError::Hydro(HydroError::Solve(e))
    }
}

/// Capillary budget and consumption at one operating temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapillaryReport {
    /// Operating temperature, degC.
    pub t_c: f64,
    /// Available capillary pressure, Pa.
    pub dp_cap: f64,
    /// Liquid drop per watt, Pa/W.
    pub dpl_per_w: f64,
    /// Vapor drop per watt, Pa/W.
    pub dpv_per_w: f64,
    /// Power at which consumption meets the budget, W.
    pub q_max: f64,
}

impl CapillaryReport {
    /// Remaining capillary headroom at power `q`, Pa. Negative past the limit.
    pub fn margin_at(&self, q: f64) -> f64 {
        self.dp_cap - q * (self.dpl_per_w + self.dpv_per_w)
    }
}

fn drops_at(
    grid: &Grid,
    geometry: &Geometry,
    wick: &WickSpec,
    fluid: &crate::fluids::FluidState,
    q: f64,
    options: &SolveOptions,
) -> Result<PressureDrops, LimitsError> {
    let flux = phase_change_flux(grid, geometry, q, fluid.h_fg)?;
    let p_l = liquid_pressure(grid, &flux, fluid, wick, options)?;
    let p_v = vapor_pressure(grid, &flux, fluid, geometry.vapor_thickness, options)?;
    Ok(pressure_drops(&p_l, &p_v))
}

/// Capillary limit from one unit-power solve on the given grid.
pub fn q_max(
    geometry: &Geometry,
    wick: &WickSpec,
    t_c: f64,
    grid: &Grid,
    options: &SolveOptions,
) -> Result<CapillaryReport, LimitsError> {
    let fluid = saturation_properties(t_c)?;
    let drops = drops_at(grid, geometry, wick, &fluid, 1.0, options)?;
    if drops.total() <= 0.0 {
        return Err(LimitsError::ZeroDrop);
    }
    let dp_cap = wick.capillary_pressure(fluid.sigma)?;
    Ok(CapillaryReport {
        t_c,
        dp_cap,
        dpl_per_w: drops.dp_l,
        dpv_per_w: drops.dp_v,
        q_max: dp_cap / drops.total(),
    })
}

/// Capillary limit by bisection on the margin, re-solving at every probe.
///
/// `q_hi` must already exceed the limit; the search keeps the invariant
/// margin(lo) >= 0 > margin(hi) and returns the midpoint once the bracket
/// is narrower than `tol` watts.
pub fn q_max_bisection(
    geometry: &Geometry,
    wick: &WickSpec,
    t_c: f64,
    grid: &Grid,
    q_hi: f64,
    tol: f64,
    options: &SolveOptions,
) -> Result<f64, LimitsError> {
    assert!(q_hi.is_finite() && q_hi > 0.0, "bracket power must be positive");
    assert!(tol.is_finite() && tol > 0.0, "tolerance must be positive");
    let fluid = saturation_properties(t_c)?;
    let dp_cap = wick.capillary_pressure(fluid.sigma)?;
    if dp_cap == 0.0 {
        return Ok(0.0);
    }
    let margin = |q: f64| -> Result<f64, LimitsError> {
        Ok(dp_cap - drops_at(grid, geometry, wick, &fluid, q, options)?.total())
    };
    let m_hi = margin(q_hi)?;
    if m_hi >= 0.0 {
        return Err(LimitsError::BracketFailure {
            q_hi,
            margin: m_hi,
        });
    }
    let mut lo = 0.0;
    let mut hi = q_hi;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if margin(mid)? >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= 1e-9 * scale
}

/// Strip-geometry capillary limit in closed form, no grid involved.
///
/// Valid when both footprints span the full width and sit flush against
/// opposite ends. Axial flow then sees an effective length equal to the
/// adiabatic section plus half of each end zone, and
///
///   q_max = dp_cap / (L_eff/(W*h_fg) * (mu_l/(rho_l*K*h_w) + 12*mu_v/(rho_v*h_v^3)))
pub fn q_max_1d(geometry: &Geometry, wick: &WickSpec, t_c: f64) -> Result<f64, LimitsError> {
    let l = geometry.length;
    let w = geometry.width;
    let e = &geometry.evaporator;
    let c = &geometry.condenser;
    if !(close(e.x0, 0.0, l) && close(c.x1(), l, l)) {
        return Err(LimitsError::NotStripLayout {
            reason: "footprints must touch opposite ends",
        });
    }
    if !(close(e.y0, 0.0, w) && close(c.y0, 0.0, w) && close(e.width, w, w) && close(c.width, w, w))
    {
        return Err(LimitsError::NotStripLayout {
            reason: "footprints must span the full width",
        });
    }
    let fluid = saturation_properties(t_c)?;
    let l_adiabatic = l - e.length - c.length;
    let l_eff = l_adiabatic + 0.5 * (e.length + c.length);
    let per_watt_l = fluid.mu_l * l_eff
        / (fluid.rho_l * wick.permeability * wick.thickness * w * fluid.h_fg);
    let h_v = geometry.vapor_thickness;
    let per_watt_v = 12.0 * fluid.mu_v * l_eff / (fluid.rho_v * h_v * h_v * h_v * w * fluid.h_fg);
    let dp_cap = wick.capillary_pressure(fluid.sigma)?;
    Ok(dp_cap / (per_watt_l + per_watt_v))
}

/// Capillary limit at each temperature of a strictly increasing list.
pub fn sweep_temperature(
    geometry: &Geometry,
    wick: &WickSpec,
    temperatures: &[f64],
    grid: &Grid,
    options: &SolveOptions,
) -> Result<Vec<CapillaryReport>, LimitsError> {
    if temperatures.is_empty() {
        return Err(LimitsError::EmptyList);
    }
    for &t in temperatures {
        saturation_properties(t)?;
    }
    for pair in temperatures.windows(2) {
        if pair[1] <= pair[0] {
            return Err(LimitsError::NotIncreasing {
                prev: pair[0],
                next: pair[1],
            });
        }
    }
    temperatures
        .iter()
        .map(|&t| q_max(geometry, wick, t, grid, options))
        .collect()
}

/// Grid-free capillary limit on the default grid footprint layout.
///
/// Convenience wrapper: builds the grid and forwards to [`q_max`].
pub fn q_max_on_grid(
    geometry: &Geometry,
    wick: &WickSpec,
    t_c: f64,
    nx: usize,
    ny: usize,
    options: &SolveOptions,
) -> Result<CapillaryReport, LimitsError> {
    let grid = build_grid(geometry, nx, ny)?;
    q_max(geometry, wick, t_c, &grid, options)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{default_geometry, Footprint, Geometry};
    use approx::assert_relative_eq;

    fn coarse_grid(geometry: &Geometry) -> Grid {
        build_grid(geometry, 44, 30).unwrap()
    }

    fn reference_wick() -> WickSpec {
        WickSpec::new(100e-6, 0.4, 0.7e-3, 10.0).unwrap()
    }

    fn calibrated_wick() -> WickSpec {
        WickSpec::new(9.36e-6, 0.4, 0.7e-3, 10.0).unwrap()
    }

    #[test]
    fn coarse_sphere_limit_matches_hand_value() {
        let geometry = default_geometry();
        let grid = coarse_grid(&geometry);
        let report = q_max(&geometry, &reference_wick(), 60.0, &grid, &SolveOptions::default())
            .unwrap();
        assert_relative_eq!(report.dp_cap, 6208.978, max_relative = 1e-6);
        assert_relative_eq!(report.dpl_per_w, 27.5173, max_relative = 2e-3);
        assert_relative_eq!(report.dpv_per_w, 17.4178, max_relative = 2e-3);
        assert_relative_eq!(report.q_max, 138.176, max_relative = 2e-3);
    }

    #[test]
    fn calibrated_wick_carries_twenty_one_watts_at_sixty() {
        let geometry = default_geometry();
        let grid = coarse_grid(&geometry);
        let report = q_max(&geometry, &calibrated_wick(), 60.0, &grid, &SolveOptions::default())
            .unwrap();
        assert_relative_eq!(report.q_max, 21.0, max_relative = 2e-2);
    }

    #[test]
    fn report_is_internally_consistent() {
        let geometry = default_geometry();
        let grid = coarse_grid(&geometry);
        let report = q_max(&geometry, &reference_wick(), 60.0, &grid, &SolveOptions::default())
            .unwrap();
        let consumed = report.q_max * (report.dpl_per_w + report.dpv_per_w);
        assert_relative_eq!(consumed, report.dp_cap, max_relative = 1e-12);
        assert!(report.margin_at(0.5 * report.q_max) > 0.0);
        assert!(report.margin_at(2.0 * report.q_max) < 0.0);
        assert!(report.margin_at(report.q_max).abs() <= 1e-9 * report.dp_cap);
    }

    #[test]
    fn one_dimensional_reduction_agrees_with_full_solve() {
        let geometry = default_geometry();
        let grid = coarse_grid(&geometry);
        let full = q_max(&geometry, &reference_wick(), 60.0, &grid, &SolveOptions::default())
            .unwrap()
            .q_max;
        let strip = q_max_1d(&geometry, &reference_wick(), 60.0).unwrap();
        assert_relative_eq!(full, strip, max_relative = 5e-3);
    }

    #[test]
    fn one_dimensional_hand_values() {
        let geometry = default_geometry();
        let q = q_max_1d(&geometry, &reference_wick(), 60.0).unwrap();
        assert_relative_eq!(q, 138.176, max_relative = 1e-4);
        let q = q_max_1d(&geometry, &calibrated_wick(), 60.0).unwrap();
        assert_relative_eq!(q, 21.003, max_relative = 1e-4);
    }

    #[test]
    fn one_dimensional_reduction_rejects_offset_footprints() {
        let mut geometry = default_geometry();
        geometry.evaporator = Footprint::new(0.002, 0.0, 0.010, 0.030);
        assert!(matches!(
            q_max_1d(&geometry, &reference_wick(), 60.0),
            Err(LimitsError::NotStripLayout { .. })
        ));
        let mut geometry = default_geometry();
        geometry.condenser = Footprint::new(0.034, 0.005, 0.010, 0.020);
        assert!(matches!(
            q_max_1d(&geometry, &reference_wick(), 60.0),
            Err(LimitsError::NotStripLayout { .. })
        ));
    }

    #[test]
    fn bisection_agrees_with_the_linear_shortcut() {
        let geometry = default_geometry();
        let grid = coarse_grid(&geometry);
        let options = SolveOptions::default();
        let linear = q_max(&geometry, &reference_wick(), 60.0, &grid, &options)
            .unwrap()
            .q_max;
        let bisected = q_max_bisection(
            &geometry,
            &reference_wick(),
            60.0,
            &grid,
            2.0 * linear,
            2e-4 * linear,
            &options,
        )
        .unwrap();
        assert_relative_eq!(bisected, linear, max_relative = 1e-3);
    }

    #[test]
    fn bisection_rejects_an_undersized_bracket() {
        let geometry = default_geometry();
        let grid = coarse_grid(&geometry);
        let options = SolveOptions::default();
        let linear = q_max(&geometry, &reference_wick(), 60.0, &grid, &options)
            .unwrap()
            .q_max;
        assert!(matches!(
            q_max_bisection(
                &geometry,
                &reference_wick(),
                60.0,
                &grid,
                0.5 * linear,
                0.01,
                &options
            ),
            Err(LimitsError::BracketFailure { .. })
        ));
    }

    #[test]
    fn sweep_validates_its_temperature_list() {
        let geometry = default_geometry();
        let grid = coarse_grid(&geometry);
        let options = SolveOptions::default();
        let wick = reference_wick();
        assert!(matches!(
            sweep_temperature(&geometry, &wick, &[], &grid, &options),
            Err(LimitsError::EmptyList)
        ));
        assert!(matches!(
            sweep_temperature(&geometry, &wick, &[40.0, 40.0], &grid, &options),
            Err(LimitsError::NotIncreasing { .. })
        ));
        assert!(matches!(
            sweep_temperature(&geometry, &wick, &[60.0, 50.0], &grid, &options),
            Err(LimitsError::NotIncreasing { .. })
        ));
        assert!(matches!(
            sweep_temperature(&geometry, &wick, &[90.0, 99.0], &grid, &options),
            Err(LimitsError::Fluids(_))
        ));
    }

    #[test]
    fn singleton_sweep_equals_direct_call() {
        let geometry = default_geometry();
        let grid = coarse_grid(&geometry);
        let options = SolveOptions::default();
        let wick = reference_wick();
        let sweep = sweep_temperature(&geometry, &wick, &[60.0], &grid, &options).unwrap();
        let direct = q_max(&geometry, &wick, 60.0, &grid, &options).unwrap();
        assert_eq!(sweep.len(), 1);
        assert_eq!(sweep[0].q_max.to_bits(), direct.q_max.to_bits());
    }

    #[test]
    fn sweep_rises_with_temperature() {
        let geometry = default_geometry();
        let grid = coarse_grid(&geometry);
        let temps = [30.0, 40.0, 50.0, 60.0, 70.0, 80.0];
        let reports = sweep_temperature(
            &geometry,
            &calibrated_wick(),
            &temps,
            &grid,
            &SolveOptions::default(),
        )
        .unwrap();
        for pair in reports.windows(2) {
            assert!(
                pair[1].q_max > pair[0].q_max,
                "q_max fell between {} and {} degC",
                pair[0].t_c,
                pair[1].t_c
            );
        }
    }

    #[test]
    fn thicker_layers_carry_more_power() {
        let geometry = default_geometry();
        let grid = coarse_grid(&geometry);
        let options = SolveOptions::default();
        let base = q_max(&geometry, &reference_wick(), 60.0, &grid, &options)
            .unwrap()
            .q_max;
        let thick_wick = WickSpec::new(100e-6, 0.4, 1.4e-3, 10.0).unwrap();
        let more = q_max(&geometry, &thick_wick, 60.0, &grid, &options)
            .unwrap()
            .q_max;
        assert!(more > base);
        let mut roomy = default_geometry();
        roomy.vapor_thickness = 0.6e-3;
        let grid2 = coarse_grid(&roomy);
        let more = q_max(&roomy, &reference_wick(), 60.0, &grid2, &options)
            .unwrap()
            .q_max;
        assert!(more > base);
    }
}
