//! Shared fixtures for the integration suites: an independent dense solver
//! to check the iterative one against, and seeded random device
//! configurations.

use flatpipe::domain::{Footprint, Geometry, Grid};
use flatpipe::wick::WickSpec;
use rand::Rng;

/// Solve the pure-Neumann problem div(grad u) = s directly, by dense LU on
/// the bordered system [[-L, 1], [1^T, 0]] [u; lambda] = [-s; 0]. The border
/// enforces the zero-mean pin; lambda absorbs any residual incompatibility.
/// Shares nothing with the conjugate-gradient path except the stencil
/// definition.
pub fn dense_neumann_solve(grid: &Grid, source: &[f64]) -> Vec<f64> {
    let n = grid.cell_count();
    assert_eq!(source.len(), n);
    let m = n + 1;
    let wx = 1.0 / (grid.dx * grid.dx);
    let wy = 1.0 / (grid.dy * grid.dy);
    let mut a = vec![vec![0.0_f64; m]; m];
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            let k = grid.idx(i, j);
            let mut diagonal = 0.0;
            if i > 0 {
                a[k][k - 1] = -wx;
                diagonal += wx;
            }
            if i + 1 < grid.nx {
                a[k][k + 1] = -wx;
                diagonal += wx;
            }
            if j > 0 {
                a[k][k - grid.nx] = -wy;
                diagonal += wy;
            }
            if j + 1 < grid.ny {
                a[k][k + grid.nx] = -wy;
                diagonal += wy;
            }
            a[k][k] = diagonal;
        }
    }
    for row in a.iter_mut().take(n) {
        row[n] = 1.0;
    }
    a[n][..n].fill(1.0);
    let mut b = vec![0.0_f64; m];
    for k in 0..n {
        b[k] = -source[k];
    }
    let solution = lu_solve(a, b);
    solution[..n].to_vec()
}

/// Gaussian elimination with partial pivoting.
fn lu_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let m = b.len();
    for col in 0..m {
        let pivot = (col..m)
            .max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))
            .unwrap();
        assert!(a[pivot][col].abs() > 0.0, "singular bordered matrix");
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..m {
            let factor = a[row][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            let (pivot_rows, rest) = a.split_at_mut(col + 1);
            let pivot_row = &pivot_rows[col][col..];
            let target = &mut rest[row - col - 1][col..];
            for (x, p) in target.iter_mut().zip(pivot_row) {
                *x -= factor * p;
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0_f64; m];
    for row in (0..m).rev() {
        let mut acc = b[row];
        for k in row + 1..m {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    x
}

/// One randomized but valid device: geometry, wick, grid resolution, and
/// operating temperature. Footprints are deliberately not aligned to the
/// grid, so partial cell coverage and condenser rescaling are exercised.
pub struct RandomCase {
    pub geometry: Geometry,
    pub wick: WickSpec,
    pub nx: usize,
    pub ny: usize,
    pub t_c: f64,
    pub power: f64,
}

pub fn random_case(rng: &mut impl Rng) -> RandomCase {
    let length = rng.random_range(0.025_f64..0.08);
    let width = rng.random_range(0.012_f64..0.05);
    let evap_x0 = rng.random_range(0.0..0.15 * length);
    let evap_len = rng.random_range(0.15 * length..0.3 * length);
    let evap_y0 = rng.random_range(0.0..0.2 * width);
    let evap_w = rng.random_range(0.6 * (width - evap_y0)..(width - evap_y0));
    let cond_x0 = rng.random_range(0.55 * length..0.7 * length);
    let cond_len = rng.random_range(0.15 * length..(length - cond_x0));
    let cond_y0 = rng.random_range(0.0..0.2 * width);
    let cond_w = rng.random_range(0.6 * (width - cond_y0)..(width - cond_y0));
    let geometry = Geometry::new(
        length,
        width,
        rng.random_range(0.3e-3..1.2e-3),
        rng.random_range(0.2e-3..0.8e-3),
        0.8e-3,
        Footprint::new(evap_x0, evap_y0, evap_len, evap_w),
        Footprint::new(cond_x0, cond_y0, cond_len, cond_w),
    )
    .expect("sampled geometry is valid by construction");
    let wick = WickSpec::new(
        rng.random_range(20e-6..300e-6),
        rng.random_range(0.25..0.7),
        geometry.wick_thickness,
        rng.random_range(5.0..45.0),
    )
    .expect("sampled wick is valid by construction");
    RandomCase {
        geometry,
        wick,
        nx: rng.random_range(24..56),
        ny: rng.random_range(16..40),
        t_c: rng.random_range(30.0..80.0),
        power: rng.random_range(0.5..40.0),
    }
}
