//! Planform geometry, uniform grid, and the phase-change mass flux field.
//!
//! The pipe is viewed from above as the rectangle [0,L] x [0,W]. Heat enters
//! through a rectangular evaporator footprint and leaves through a condenser
//! footprint; both are axis-aligned and must not overlap. A power Q turns
//! into the evaporation mass flux Q/(A_e*h_fg) spread over the evaporator
//! cells by exact area fractions, and into the matching negative flux over
//! the condenser. The condenser side is rescaled by one common factor so the
//! discrete area-weighted sum of the field vanishes, which the singular
//! Neumann solve downstream requires.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("domain: grid must be at least 2x2 cells, got {nx}x{ny}")]
    GridTooSmall { nx: usize, ny: usize },
    #[error("domain: evaporator and condenser footprints overlap")]
    OverlappingFootprints,
    #[error("domain: power must be non-negative, got {0} W")]
    NegativePower(f64),
    #[error("domain: {name} must be positive, got {value}")]
    NonPositiveDimension { name: &'static str, value: f64 },
    #[error("domain: {0} footprint extends outside the vapor chamber planform")]
    FootprintOutsideDomain(&'static str),
}

/// Axis-aligned rectangle on the planform, SI meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Footprint {
    pub x0: f64,
    pub y0: f64,
    pub length: f64,
    pub width: f64,
}

impl Footprint {
    pub fn new(x0: f64, y0: f64, length: f64, width: f64) -> Self {
        Footprint { x0, y0, length, width }
    }

    pub fn x1(&self) -> f64 {
        self.x0 + self.length
    }

    pub fn y1(&self) -> f64 {
        self.y0 + self.width
    }

    pub fn area(&self) -> f64 {
        self.length * self.width
    }

    /// True when the rectangles share interior area (touching edges do not count).
    pub fn overlaps(&self, other: &Footprint) -> bool {
        self.x0 < other.x1() && other.x0 < self.x1() && self.y0 < other.y1() && other.y0 < self.y1()
    }

    pub fn contains_point(&self, x: f64, y: f64) -> bool {
        (self.x0..=self.x1()).contains(&x) && (self.y0..=self.y1()).contains(&y)
    }
}

/// Planform and layer geometry of the flat pipe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    /// Planform length, m.
    pub length: f64,
    /// Planform width, m.
    pub width: f64,
    /// Wick layer thickness, m.
    pub wick_thickness: f64,
    /// Vapor core thickness, m.
    pub vapor_thickness: f64,
    /// Wall thickness, m (informational, no hydraulic role).
    pub wall_thickness: f64,
    pub evaporator: Footprint,
    pub condenser: Footprint,
}

/// Total thickness budget for the internal layers, m.
const PACKAGING_BUDGET: f64 = 1.0e-3;

impl Geometry {
    pub fn new(
        length: f64,
        width: f64,
        wick_thickness: f64,
        vapor_thickness: f64,
        wall_thickness: f64,
        evaporator: Footprint,
        condenser: Footprint,
    ) -> Result<Self, DomainError> {
        for (name, value) in [
            ("length", length),
            ("width", width),
            ("wick thickness", wick_thickness),
            ("vapor thickness", vapor_thickness),
            ("wall thickness", wall_thickness),
            ("evaporator length", evaporator.length),
            ("evaporator width", evaporator.width),
            ("condenser length", condenser.length),
            ("condenser width", condenser.width),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(DomainError::NonPositiveDimension { name, value });
            }
        }
        let geometry = Geometry {
            length,
            width,
            wick_thickness,
            vapor_thickness,
            wall_thickness,
            evaporator,
            condenser,
        };
        // Edge sums like x0 + length land one rounding past the planform
        // when they should sit exactly on it; give the check that slack.
        let tol_x = 1e-12 * length;
        let tol_y = 1e-12 * width;
        for (name, fp) in [("evaporator", &evaporator), ("condenser", &condenser)] {
            if fp.x0 < -tol_x || fp.y0 < -tol_y || fp.x1() > length + tol_x || fp.y1() > width + tol_y
            {
                return Err(DomainError::FootprintOutsideDomain(name));
            }
        }
        if evaporator.overlaps(&condenser) {
            return Err(DomainError::OverlappingFootprints);
        }
        Ok(geometry)
    }

    /// Whether wick plus vapor core fit the 1 mm internal budget.
    /// A violation is reported as a warning downstream, never an error.
    pub fn within_packaging_budget(&self) -> bool {
        self.wick_thickness + self.vapor_thickness <= PACKAGING_BUDGET + 1e-15
    }
}

/// Uniform cell-centered grid over the planform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub nx: usize,
    pub ny: usize,
    /// Cell size in x, m.
    pub dx: f64,
    /// Cell size in y, m.
    pub dy: f64,
    /// Planform length covered, m.
    pub length: f64,
    /// Planform width covered, m.
    pub width: f64,
}

impl Grid {
    pub fn cell_count(&self) -> usize {
        self.nx * self.ny
    }

    pub fn cell_area(&self) -> f64 {
        self.dx * self.dy
    }

    /// x coordinate of the center of column `i`, m.
    pub fn x_center(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.dx
    }

    /// y coordinate of the center of row `j`, m.
    pub fn y_center(&self, j: usize) -> f64 {
        (j as f64 + 0.5) * self.dy
    }

    /// Row-major index of cell (i, j).
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }
}

/// Uniform grid over the planform of `geometry` with `nx` by `ny` cells.
pub fn build_grid(geometry: &Geometry, nx: usize, ny: usize) -> Result<Grid, DomainError> {
    if nx < 2 || ny < 2 {
        return Err(DomainError::GridTooSmall { nx, ny });
    }
    Ok(Grid {
        nx,
        ny,
        dx: geometry.length / nx as f64,
        dy: geometry.width / ny as f64,
        length: geometry.length,
        width: geometry.width,
    })
}

/// Phase-change mass flux per cell, kg/(m2*s). Positive means evaporation.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFluxField {
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<f64>,
    /// Factor applied to the condenser side to balance the discrete sums.
    /// Exactly 1.0 when both footprints align with cell boundaries.
    pub condenser_rescale: f64,
}

impl MassFluxField {
    /// Discrete area-weighted net rate, kg/s. Balanced fields return ~0.
    pub fn net_rate(&self, grid: &Grid) -> f64 {
        let da = grid.cell_area();
        self.values.iter().map(|v| v * da).sum()
    }

    /// Discrete evaporator-side (positive part) rate, kg/s.
    pub fn evaporation_rate(&self, grid: &Grid) -> f64 {
        let da = grid.cell_area();
        self.values.iter().filter(|v| **v > 0.0).map(|v| v * da).sum()
    }
}

/// Fraction of the unit interval [cell, cell+1] covered by [lo, hi].
fn coverage_1d(lo: f64, hi: f64, cell: usize) -> f64 {
    let a = lo.max(cell as f64);
    let b = hi.min(cell as f64 + 1.0);
    (b - a).clamp(0.0, 1.0)
}

/// Footprint edge position in cell units, snapped onto a cell boundary when
/// it lands within 1e-9 cells of one. Snapping keeps aligned footprints at
/// coverage fractions of exactly 0 or 1 despite the division rounding.
fn edge_in_cells(coordinate: f64, spacing: f64) -> f64 {
    let s = coordinate / spacing;
    let r = s.round();
    if (s - r).abs() < 1e-9 {
        r
    } else {
        s
    }
}

struct Deposit {
    values: Vec<f64>,
    /// Area-weighted rate actually deposited, kg/s.
    total: f64,
}

/// Spread `rate` kg/(m2*s) over `fp` by exact cell-coverage fractions.
fn deposit(grid: &Grid, fp: &Footprint, rate: f64) -> Deposit {
    let sx0 = edge_in_cells(fp.x0, grid.dx);
    let sx1 = edge_in_cells(fp.x1(), grid.dx);
    let sy0 = edge_in_cells(fp.y0, grid.dy);
    let sy1 = edge_in_cells(fp.y1(), grid.dy);
    let i0 = sx0.floor().max(0.0) as usize;
    let i1 = (sx1.ceil() as usize).min(grid.nx);
    let j0 = sy0.floor().max(0.0) as usize;
    let j1 = (sy1.ceil() as usize).min(grid.ny);
    let da = grid.cell_area();
    let mut values = vec![0.0; grid.cell_count()];
    let mut total = 0.0;
    for j in j0..j1 {
        let fy = coverage_1d(sy0, sy1, j);
        if fy == 0.0 {
            continue;
        }
        for i in i0..i1 {
            let fx = coverage_1d(sx0, sx1, i);
            if fx == 0.0 {
                continue;
            }
            let v = rate * fx * fy;
            values[grid.idx(i, j)] = v;
            total += v * da;
        }
    }
    Deposit { values, total }
}

/// Phase-change mass flux field for power `q_watts` at latent heat `h_fg`.
pub fn phase_change_flux(
    grid: &Grid,
    geometry: &Geometry,
    q_watts: f64,
    h_fg: f64,
) -> Result<MassFluxField, DomainError> {
    if !(q_watts.is_finite() && q_watts >= 0.0) {
        return Err(DomainError::NegativePower(q_watts));
    }
    assert!(h_fg > 0.0, "latent heat must be positive");
    if geometry.evaporator.overlaps(&geometry.condenser) {
        return Err(DomainError::OverlappingFootprints);
    }
    if q_watts == 0.0 {
        return Ok(MassFluxField {
            nx: grid.nx,
            ny: grid.ny,
            values: vec![0.0; grid.cell_count()],
            condenser_rescale: 1.0,
        });
    }
    let evap_rate = q_watts / (geometry.evaporator.area() * h_fg);
    let cond_rate = q_watts / (geometry.condenser.area() * h_fg);
    let evap = deposit(grid, &geometry.evaporator, evap_rate);
    let cond = deposit(grid, &geometry.condenser, cond_rate);
    let rescale = evap.total / cond.total;
    let values = evap
        .values
        .iter()
        .zip(&cond.values)
        .map(|(e, c)| e - rescale * c)
        .collect();
    Ok(MassFluxField {
        nx: grid.nx,
        ny: grid.ny,
        values,
        condenser_rescale: rescale,
    })
}

/// The default planform and footprints: a 44 x 30 mm chamber with full-width
/// 10 mm evaporator and condenser strips flush at the two ends.
pub fn default_geometry() -> Geometry {
    Geometry::new(
        0.044,
        0.030,
        0.7e-3,
        0.3e-3,
        0.8e-3,
        Footprint::new(0.0, 0.0, 0.010, 0.030),
        Footprint::new(0.034, 0.0, 0.010, 0.030),
    )
    .expect("default geometry is valid")
}
