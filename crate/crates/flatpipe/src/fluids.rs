//! Saturated water properties along the liquid-vapor coexistence line.
//!
//! Values are transcribed from published saturation tables at 5 C spacing
//! and interpolated linearly in between. Everything is SI: N/m, kg/m3,
//! Pa*s, J/kg, Pa; temperatures are degrees Celsius. Table precision is
//! about three significant figures, which is what a capillary-limit
//! estimate needs.

use thiserror::Error;

/// Lowest tabulated temperature, degrees Celsius.
pub const T_MIN_C: f64 = 10.0;
/// Highest tabulated temperature, degrees Celsius.
pub const T_MAX_C: f64 = 95.0;

const STEP_C: f64 = 5.0;

/// Thermophysical state of saturated water at one temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidState {
    /// Temperature, degrees Celsius.
    pub t_c: f64,
    /// Surface tension, N/m.
    pub sigma: f64,
    /// Liquid density, kg/m3.
    pub rho_l: f64,
    /// Liquid dynamic viscosity, Pa*s.
    pub mu_l: f64,
    /// Saturated vapor density, kg/m3.
    pub rho_v: f64,
    /// Vapor dynamic viscosity, Pa*s.
    pub mu_v: f64,
    /// Latent heat of vaporization, J/kg.
    pub h_fg: f64,
    /// Saturation pressure, Pa.
    pub p_sat: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FluidsError {
    #[error("fluids: temperature {0} C is outside the supported range [{T_MIN_C}, {T_MAX_C}] C")]
    OutOfRange(f64),
}

/// Rows are (T_C, sigma, rho_l, mu_l, rho_v, mu_v, h_fg, p_sat).
const TABLE: [[f64; 8]; 18] = [
    [10.0, 0.0742, 999.7, 1.307e-3, 0.00941, 0.92e-5, 2.477e6, 1228.0],
    [15.0, 0.0735, 999.1, 1.138e-3, 0.01280, 0.93e-5, 2.466e6, 1706.0],
    [20.0, 0.0727, 998.0, 1.002e-3, 0.01730, 0.94e-5, 2.454e6, 2339.0],
    [25.0, 0.0720, 997.0, 0.891e-3, 0.02310, 0.96e-5, 2.442e6, 3169.0],
    [30.0, 0.0712, 996.0, 0.798e-3, 0.03040, 0.97e-5, 2.430e6, 4246.0],
    [35.0, 0.0704, 994.0, 0.720e-3, 0.03970, 0.99e-5, 2.418e6, 5628.0],
    [40.0, 0.0696, 992.1, 0.653e-3, 0.05120, 1.00e-5, 2.406e6, 7384.0],
    [45.0, 0.0688, 990.1, 0.596e-3, 0.06550, 1.02e-5, 2.394e6, 9593.0],
    [50.0, 0.0679, 988.1, 0.547e-3, 0.08310, 1.03e-5, 2.382e6, 12350.0],
    [55.0, 0.0671, 985.2, 0.504e-3, 0.10450, 1.05e-5, 2.370e6, 15760.0],
    [60.0, 0.0662, 983.2, 0.467e-3, 0.13000, 1.06e-5, 2.358e6, 19940.0],
    [65.0, 0.0654, 980.4, 0.433e-3, 0.16100, 1.08e-5, 2.346e6, 25030.0],
    [70.0, 0.0645, 977.5, 0.404e-3, 0.19800, 1.09e-5, 2.334e6, 31190.0],
    [75.0, 0.0636, 974.7, 0.378e-3, 0.24200, 1.11e-5, 2.321e6, 38580.0],
    [80.0, 0.0627, 971.8, 0.355e-3, 0.29300, 1.12e-5, 2.309e6, 47390.0],
    [85.0, 0.0618, 968.1, 0.333e-3, 0.35400, 1.14e-5, 2.296e6, 57830.0],
    [90.0, 0.0608, 965.3, 0.315e-3, 0.42300, 1.15e-5, 2.283e6, 70140.0],
    [95.0, 0.0599, 961.5, 0.297e-3, 0.50400, 1.17e-5, 2.270e6, 84550.0],
];

fn state_from(t_c: f64, row: &[f64; 8]) -> FluidState {
    FluidState {
        t_c,
        sigma: row[1],
        rho_l: row[2],
        mu_l: row[3],
        rho_v: row[4],
        mu_v: row[5],
        h_fg: row[6],
        p_sat: row[7],
    }
}

/// Saturated-water state at `t_c` degrees Celsius.
///
/// Exact at table nodes (multiples of 5 C), linear in between.
pub fn saturation_properties(t_c: f64) -> Result<FluidState, FluidsError> {
    if !(T_MIN_C..=T_MAX_C).contains(&t_c) {
        return Err(FluidsError::OutOfRange(t_c));
    }
    let s = (t_c - T_MIN_C) / STEP_C;
    let i = s.floor() as usize;
    if i + 1 >= TABLE.len() {
        // Only reachable at t_c == T_MAX_C; return the node value untouched.
        return Ok(state_from(t_c, &TABLE[TABLE.len() - 1]));
    }
    let w = s - i as f64;
    let lo = &TABLE[i];
    let hi = &TABLE[i + 1];
    let lerp = |k: usize| lo[k] + w * (hi[k] - lo[k]);
    Ok(FluidState {
        t_c,
        sigma: lerp(1),
        rho_l: lerp(2),
        mu_l: lerp(3),
        rho_v: lerp(4),
        mu_v: lerp(5),
        h_fg: lerp(6),
        p_sat: lerp(7),
    })
}
