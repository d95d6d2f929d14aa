//! Pure-Neumann Poisson solves on the uniform planform grid.
//!
//! The discrete operator is the standard 5-point Laplacian closed with
//! ghost-cell mirrors, so every boundary face carries zero normal flux.
//! That operator is singular: constants span its null space, and a source
//! is admissible only when its area-weighted sum vanishes. The solver runs
//! plain conjugate gradients on the mean-zero subspace, subtracting the
//! mean from iterate and residual every sweep, and pins the answer to zero
//! mean. All loops and reductions run in a fixed order, so identical
//! inputs give bit-identical fields.

use crate::domain::Grid;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EllipticError {
    #[error(
        "elliptic: source is incompatible with zero-flux boundaries \
         (net {net:.3e} exceeds {limit:.3e})"
    )]
    IncompatibleSource { net: f64, limit: f64 },
    #[error(
        "elliptic: no convergence after {iterations} iterations \
         (residual {residual:.3e}, tolerance {tolerance:.3e})"
    )]
    NoConvergence {
        iterations: usize,
        residual: f64,
        tolerance: f64,
    },
}

/// Per-cell scalar values aligned with a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<f64>,
    /// True once the solver has pinned the field mean to zero.
    pub mean_pinned: bool,
}

impl ScalarField {
    pub fn zeros(grid: &Grid) -> Self {
        ScalarField {
            nx: grid.nx,
            ny: grid.ny,
            values: vec![0.0; grid.cell_count()],
            mean_pinned: false,
        }
    }

    pub fn from_values(grid: &Grid, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), grid.cell_count(), "field does not match grid");
        ScalarField {
            nx: grid.nx,
            ny: grid.ny,
            values,
            mean_pinned: false,
        }
    }

    pub fn mean(&self) -> f64 {
        mean(&self.values)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn subtract_mean(values: &mut [f64]) {
    let m = mean(values);
    for v in values.iter_mut() {
        *v -= m;
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// y = -Laplacian(x) with mirror ghost cells (a missing neighbor contributes
/// no flux). The negated operator is symmetric positive semi-definite, which
/// is the form conjugate gradients wants.
fn apply_neg_laplacian(grid: &Grid, x: &[f64], y: &mut [f64]) {
    let (nx, ny) = (grid.nx, grid.ny);
    let wx = 1.0 / (grid.dx * grid.dx);
    let wy = 1.0 / (grid.dy * grid.dy);
    for j in 0..ny {
        for i in 0..nx {
            let k = j * nx + i;
            let c = x[k];
            let mut acc = 0.0;
            if i > 0 {
                acc += wx * (x[k - 1] - c);
            }
            if i + 1 < nx {
                acc += wx * (x[k + 1] - c);
            }
            if j > 0 {
                acc += wy * (x[k - nx] - c);
            }
            if j + 1 < ny {
                acc += wy * (x[k + nx] - c);
            }
            y[k] = -acc;
        }
    }
}

/// 5-point discrete Laplacian of `field` under zero-flux boundaries.
pub fn discrete_laplacian(grid: &Grid, field: &ScalarField) -> ScalarField {
    let mut out = ScalarField::zeros(grid);
    apply_neg_laplacian(grid, &field.values, &mut out.values);
    for v in out.values.iter_mut() {
        *v = -*v;
    }
    out
}

/// Default iteration budget for a grid of the given extent.
pub fn default_max_iter(nx: usize, ny: usize) -> usize {
    50 * (nx + ny)
}

/// Solve Laplacian(u) = source with zero-flux boundaries; u has zero mean.
///
/// Convergence means the residual 2-norm has fallen below
/// `rel_tol * ||source||_2`.
pub fn solve_poisson_neumann(
    grid: &Grid,
    source: &ScalarField,
    rel_tol: f64,
    max_iter: usize,
) -> Result<ScalarField, EllipticError> {
    assert_eq!(source.values.len(), grid.cell_count(), "source does not match grid");
    assert!(rel_tol > 0.0, "relative tolerance must be positive");
    assert!(max_iter > 0, "iteration budget must be positive");
    let n = grid.cell_count();
    let da = grid.cell_area();

    let net: f64 = source.values.iter().map(|s| s * da).sum();
    let gross: f64 = source.values.iter().map(|s| s.abs() * da).sum();
    let limit = 1e-10 * gross;
    if net.abs() > limit {
        return Err(EllipticError::IncompatibleSource { net, limit });
    }

    let source_norm = dot(&source.values, &source.values).sqrt();
    let mut u = ScalarField::zeros(grid);
    u.mean_pinned = true;
    if source_norm == 0.0 {
        return Ok(u);
    }
    let tol_abs = rel_tol * source_norm;

    // Solve A u = b with A = -Laplacian, b = -source projected to mean zero.
    let mut b: Vec<f64> = source.values.iter().map(|s| -s).collect();
    subtract_mean(&mut b);

    let mut r = b;
    let mut p = r.clone();
    let mut ap = vec![0.0; n];
    let mut rr = dot(&r, &r);
    let mut iterations = 0;
    while rr.sqrt() > tol_abs {
        if iterations >= max_iter {
            return Err(EllipticError::NoConvergence {
                iterations,
                residual: rr.sqrt(),
                tolerance: tol_abs,
            });
        }
        apply_neg_laplacian(grid, &p, &mut ap);
        let pap = dot(&p, &ap);
        if pap <= 0.0 {
            // Search direction degenerated into the null space; the residual
            // cannot shrink any further, so the contract is unreachable.
            return Err(EllipticError::NoConvergence {
                iterations,
                residual: rr.sqrt(),
                tolerance: tol_abs,
            });
        }
        let alpha = rr / pap;
        for k in 0..n {
            u.values[k] += alpha * p[k];
            r[k] -= alpha * ap[k];
        }
        // The continuous operator preserves zero mean; these projections
        // only sweep out accumulated rounding drift.
        subtract_mean(&mut u.values);
        subtract_mean(&mut r);
        let rr_next = dot(&r, &r);
        let beta = rr_next / rr;
        for k in 0..n {
            p[k] = r[k] + beta * p[k];
        }
        rr = rr_next;
        iterations += 1;
    }

    subtract_mean(&mut u.values);
    Ok(u)
}
