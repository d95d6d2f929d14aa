//! Sintered-sphere wick closures.
//!
//! A bed of copper spheres of diameter `d_s` sintered at porosity `eps` is
//! reduced to two transport quantities: the effective pore radius that sets
//! the menisci curvature, and the Darcy permeability of the bed. Both use
//! standard monodisperse packed-sphere closures,
//!
//!   r_eff = 0.21 * d_s
//!   K     = d_s^2 * eps^3 / (150 * (1 - eps)^2)
//!
//! with the 0.21 pore factor and the 150 Blake-Kozeny constant overridable
//! through the configuration for sensitivity studies.

use thiserror::Error;

/// Ratio of effective pore radius to sphere diameter.
pub const PORE_RADIUS_FACTOR: f64 = 0.21;
/// Blake-Kozeny constant for packed spheres.
pub const KOZENY_CONSTANT: f64 = 150.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WickError {
    #[error("wick: {name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("wick: porosity must lie strictly between 0 and 1, got {0}")]
    PorosityRange(f64),
    #[error("wick: wetting angle must lie in [0, 90) degrees, got {0}")]
    AngleRange(f64),
}

fn require_positive(name: &'static str, value: f64) -> Result<f64, WickError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(WickError::NonPositive { name, value })
    }
}

/// Effective pore radius of a sintered-sphere bed, m.
pub fn effective_pore_radius(d_s: f64) -> Result<f64, WickError> {
    Ok(PORE_RADIUS_FACTOR * require_positive("sphere diameter", d_s)?)
}

/// Blake-Kozeny permeability of a sintered-sphere bed, m2.
pub fn permeability(d_s: f64, eps: f64) -> Result<f64, WickError> {
    permeability_with(d_s, eps, KOZENY_CONSTANT)
}

fn permeability_with(d_s: f64, eps: f64, kozeny: f64) -> Result<f64, WickError> {
    require_positive("sphere diameter", d_s)?;
    require_positive("Kozeny constant", kozeny)?;
    if !(eps.is_finite() && 0.0 < eps && eps < 1.0) {
        return Err(WickError::PorosityRange(eps));
    }
    Ok(d_s * d_s * eps.powi(3) / (kozeny * (1.0 - eps) * (1.0 - eps)))
}

/// Maximum meniscus pressure difference 2*sigma*cos(theta)/r_eff, Pa.
pub fn capillary_pressure(sigma: f64, theta_deg: f64, r_eff: f64) -> Result<f64, WickError> {
    require_positive("surface tension", sigma)?;
    require_positive("effective pore radius", r_eff)?;
    if !(theta_deg.is_finite() && (0.0..90.0).contains(&theta_deg)) {
        return Err(WickError::AngleRange(theta_deg));
    }
    Ok(2.0 * sigma * theta_deg.to_radians().cos() / r_eff)
}

/// A fully characterized wick design.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WickSpec {
    /// Sphere diameter, m.
    pub d_s: f64,
    /// Porosity (void fraction).
    pub eps: f64,
    /// Wick layer thickness, m.
    pub thickness: f64,
    /// Wetting angle in the evaporator, degrees.
    pub theta_deg: f64,
    /// Derived effective pore radius, m.
    pub r_eff: f64,
    /// Derived Darcy permeability, m2.
    pub permeability: f64,
}

impl WickSpec {
    pub fn new(d_s: f64, eps: f64, thickness: f64, theta_deg: f64) -> Result<Self, WickError> {
        Self::with_constants(d_s, eps, thickness, theta_deg, PORE_RADIUS_FACTOR, KOZENY_CONSTANT)
    }

    /// Build with overridden closure constants.
    pub fn with_constants(
        d_s: f64,
        eps: f64,
        thickness: f64,
        theta_deg: f64,
        pore_radius_factor: f64,
        kozeny_constant: f64,
    ) -> Result<Self, WickError> {
        require_positive("sphere diameter", d_s)?;
        require_positive("wick thickness", thickness)?;
        require_positive("pore radius factor", pore_radius_factor)?;
        if !(theta_deg.is_finite() && (0.0..90.0).contains(&theta_deg)) {
            return Err(WickError::AngleRange(theta_deg));
        }
        let permeability = permeability_with(d_s, eps, kozeny_constant)?;
        Ok(WickSpec {
            d_s,
            eps,
            thickness,
            theta_deg,
            r_eff: pore_radius_factor * d_s,
            permeability,
        })
    }

    /// Capillary pressure of this wick at surface tension `sigma`, Pa.
    pub fn capillary_pressure(&self, sigma: f64) -> Result<f64, WickError> {
        capillary_pressure(sigma, self.theta_deg, self.r_eff)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn pore_radius_examples() {
        assert_relative_eq!(effective_pore_radius(100e-6).unwrap(), 21e-6, max_relative = 1e-15);
        assert_relative_eq!(effective_pore_radius(45e-6).unwrap(), 9.45e-6, max_relative = 1e-15);
    }

    #[test]
    fn permeability_examples() {
        assert_relative_eq!(
            permeability(100e-6, 0.4).unwrap(),
            1.1851851851851852e-11,
            max_relative = 1e-12
        );
        assert_relative_eq!(permeability(45e-6, 0.4).unwrap(), 2.4e-12, max_relative = 1e-12);
    }

    #[test]
    fn capillary_pressure_examples() {
        let p = capillary_pressure(0.0662, 10.0, 21e-6).unwrap();
        assert_relative_eq!(p, 6208.978, max_relative = 1e-6);
        // theta = 0 is the upper envelope.
        let p0 = capillary_pressure(0.0662, 0.0, 21e-6).unwrap();
        assert_eq!(p0, 2.0 * 0.0662 / 21e-6);
        // Near 90 degrees the meniscus carries almost nothing.
        let p89 = capillary_pressure(0.0662, 89.999, 21e-6).unwrap();
        assert!(p89 > 0.0 && p89 < 0.15);
    }

    #[test]
    fn domain_violations_are_rejected() {
        assert!(matches!(
            effective_pore_radius(0.0),
            Err(WickError::NonPositive { .. })
        ));
        assert!(matches!(permeability(100e-6, 0.0), Err(WickError::PorosityRange(_))));
        assert!(matches!(permeability(100e-6, 1.0), Err(WickError::PorosityRange(_))));
        assert!(matches!(
            capillary_pressure(0.0662, 90.0, 21e-6),
            Err(WickError::AngleRange(_))
        ));
        assert!(matches!(
            capillary_pressure(0.0662, -0.1, 21e-6),
            Err(WickError::AngleRange(_))
        ));
        assert!(matches!(
            capillary_pressure(-0.01, 10.0, 21e-6),
            Err(WickError::NonPositive { .. })
        ));
        assert!(WickSpec::new(45e-6, 0.4, 0.0, 10.0).is_err());
    }

    #[test]
    fn wick_spec_carries_consistent_derived_values() {
        let w = WickSpec::new(45e-6, 0.4, 0.7e-3, 10.0).unwrap();
        assert_eq!(w.r_eff, effective_pore_radius(45e-6).unwrap());
        assert_eq!(w.permeability, permeability(45e-6, 0.4).unwrap());
        let custom = WickSpec::with_constants(45e-6, 0.4, 0.7e-3, 10.0, 0.3, 180.0).unwrap();
        assert_relative_eq!(custom.r_eff, 0.3 * 45e-6, max_relative = 1e-15);
        assert!(custom.permeability < w.permeability);
    }

    proptest! {
        #[test]
        fn doubling_sigma_doubles_exactly(
            sigma in 1e-3_f64..0.2,
            theta in 0.0_f64..89.9,
            r in 1e-7_f64..1e-3,
        ) {
            let p1 = capillary_pressure(sigma, theta, r).unwrap();
            let p2 = capillary_pressure(2.0 * sigma, theta, r).unwrap();
            prop_assert_eq!(p2, 2.0 * p1);
        }

        #[test]
        fn halving_pore_radius_doubles_exactly(
            sigma in 1e-3_f64..0.2,
            theta in 0.0_f64..89.9,
            r in 1e-7_f64..1e-3,
        ) {
            let p1 = capillary_pressure(sigma, theta, r).unwrap();
            let p2 = capillary_pressure(sigma, theta, 0.5 * r).unwrap();
            prop_assert_eq!(p2, 2.0 * p1);
        }

        #[test]
        fn strictly_decreasing_in_wetting_angle(
            sigma in 1e-3_f64..0.2,
            t1 in 0.0_f64..89.0,
            dt in 0.5_f64..10.0,
        ) {
            let t2 = (t1 + dt).min(89.99);
            let p1 = capillary_pressure(sigma, t1, 21e-6).unwrap();
            let p2 = capillary_pressure(sigma, t2, 21e-6).unwrap();
            prop_assert!(p2 < p1);
        }
    }
}
