//! Deterministic text emission.
//!
//! Every number leaves the program through [`g9`], which renders 9
//! significant digits in the shorter of positional or scientific notation
//! (the classic printf `%.9g` rules). Nine digits distinguish doubles that
//! differ by a few parts in 1e9, which covers every tolerance the tests
//! care about, while keeping files human-readable. CSV is the primary
//! format; JSON mirrors carry the same digits, so both are
//! byte-reproducible run to run.

use crate::domain::Grid;
use crate::fluids::FluidState;
use crate::hydro::PressureField;
use crate::limits::CapillaryReport;
use std::fmt::Write as _;

/// Render with 9 significant digits, `%.9g` style.
///
/// Exponents in [-4, 9) print positionally with trailing zeros trimmed;
/// anything else prints as d.ddddddddE+-XX with a two-digit exponent.
pub fn g9(value: f64) -> String {
    assert!(value.is_finite(), "output values must be finite, got {value}");
    if value == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{value:.8e}");
    let (mantissa, exponent) = sci
        .split_once('e')
        .expect("{:.8e} always carries an exponent");
    let exponent: i32 = exponent.parse().expect("exponent is an integer");
    if (-4..9).contains(&exponent) {
        let decimals = (8 - exponent) as usize;
        let mut out = format!("{value:.decimals$}");
        if out.contains('.') {
            while out.ends_with('0') {
                out.pop();
            }
            if out.ends_with('.') {
                out.pop();
            }
        }
        out
    } else {
        let mut digits = mantissa.to_string();
        while digits.ends_with('0') {
            digits.pop();
        }
        if digits.ends_with('.') {
            digits.pop();
        }
        let sign = if exponent < 0 { '-' } else { '+' };
        format!("{digits}e{sign}{:02}", exponent.abs())
    }
}

fn csv_row(values: &[f64]) -> String {
    values.iter().map(|v| g9(*v)).collect::<Vec<_>>().join(",")
}

pub const PROPS_HEADER: &str = "T_C,sigma_N_per_m,rho_l,mu_l,rho_v,mu_v,h_fg_J_per_kg,p_sat_Pa";
pub const QMAX_HEADER: &str = "T_C,dp_cap_Pa,dpl_per_W,dpv_per_W,q_max_W";

fn props_values(fluid: &FluidState) -> [f64; 8] {
    [
        fluid.t_c, fluid.sigma, fluid.rho_l, fluid.mu_l, fluid.rho_v, fluid.mu_v, fluid.h_fg,
        fluid.p_sat,
    ]
}

fn report_values(report: &CapillaryReport) -> [f64; 5] {
    [
        report.t_c,
        report.dp_cap,
        report.dpl_per_w,
        report.dpv_per_w,
        report.q_max,
    ]
}

pub fn props_csv(fluid: &FluidState) -> String {
    format!("{PROPS_HEADER}\n{}\n", csv_row(&props_values(fluid)))
}

pub fn qmax_csv(report: &CapillaryReport) -> String {
    format!("{QMAX_HEADER}\n{}\n", csv_row(&report_values(report)))
}

pub fn sweep_csv(reports: &[CapillaryReport]) -> String {
    let mut out = String::from(QMAX_HEADER);
    out.push('\n');
    for report in reports {
        out.push_str(&csv_row(&report_values(report)));
        out.push('\n');
    }
    out
}

/// Self-describing grid file: a `#` header line, the x centers, then one
/// row per y from `dy/2` upward, each row led by its y center.
pub fn field_text(grid: &Grid, field: &PressureField, t_c: f64, q_watts: f64) -> String {
    let mut out = format!(
        "# nx={} ny={} dx_m={} dy_m={} phase={} T_C={} Q_W={}\n",
        grid.nx,
        grid.ny,
        g9(grid.dx),
        g9(grid.dy),
        field.phase,
        g9(t_c),
        g9(q_watts)
    );
    let xs: Vec<f64> = (0..grid.nx).map(|i| grid.x_center(i)).collect();
    out.push_str(&csv_row(&xs));
    out.push('\n');
    for j in 0..grid.ny {
        let mut row = Vec::with_capacity(grid.nx + 1);
        row.push(grid.y_center(j));
        for i in 0..grid.nx {
            row.push(field.absolute_at(grid.idx(i, j)));
        }
        out.push_str(&csv_row(&row));
        out.push('\n');
    }
    out
}

fn json_object(pairs: &[(&str, String)]) -> String {
    let body = pairs
        .iter()
        .map(|(k, v)| format!("\"{k}\":{v}"))
        .collect::<Vec<_>>()
        .join(",");
    format!("{{{body}}}")
}

fn json_number_array(values: &[f64]) -> String {
    let body = values.iter().map(|v| g9(*v)).collect::<Vec<_>>().join(",");
    format!("[{body}]")
}

fn props_pairs(fluid: &FluidState) -> Vec<(&'static str, String)> {
    PROPS_HEADER
        .split(',')
        .zip(props_values(fluid))
        .map(|(k, v)| (k, g9(v)))
        .collect()
}

fn report_pairs(report: &CapillaryReport) -> Vec<(&'static str, String)> {
    QMAX_HEADER
        .split(',')
        .zip(report_values(report))
        .map(|(k, v)| (k, g9(v)))
        .collect()
}

pub fn props_json(fluid: &FluidState) -> String {
    format!("{}\n", json_object(&props_pairs(fluid)))
}

pub fn qmax_json(report: &CapillaryReport) -> String {
    format!("{}\n", json_object(&report_pairs(report)))
}

pub fn sweep_json(reports: &[CapillaryReport]) -> String {
    let mut out = String::from("[");
    for (n, report) in reports.iter().enumerate() {
        if n > 0 {
            out.push(',');
        }
        out.push('\n');
        out.push_str(&json_object(&report_pairs(report)));
    }
    out.push_str("\n]\n");
    out
}

pub fn field_json(grid: &Grid, field: &PressureField, t_c: f64, q_watts: f64) -> String {
    let xs: Vec<f64> = (0..grid.nx).map(|i| grid.x_center(i)).collect();
    let ys: Vec<f64> = (0..grid.ny).map(|j| grid.y_center(j)).collect();
    let mut rows = String::from("[");
    for j in 0..grid.ny {
        if j > 0 {
            rows.push(',');
        }
        rows.push('\n');
        let row: Vec<f64> = (0..grid.nx).map(|i| field.absolute_at(grid.idx(i, j))).collect();
        rows.push_str(&json_number_array(&row));
    }
    rows.push_str("\n]");
    let mut out = String::from("{");
    let _ = write!(
        out,
        "\"nx\":{},\"ny\":{},\"dx_m\":{},\"dy_m\":{},\"phase\":\"{}\",\"T_C\":{},\"Q_W\":{},",
        grid.nx,
        grid.ny,
        g9(grid.dx),
        g9(grid.dy),
        field.phase,
        g9(t_c),
        g9(q_watts)
    );
    let _ = write!(out, "\"x_m\":{},", json_number_array(&xs));
    let _ = write!(out, "\"y_m\":{},", json_number_array(&ys));
    let _ = writeln!(out, "\"p_Pa\":{rows}}}");
    out
}
