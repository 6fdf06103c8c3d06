//! Self-intersection of the two menisci.
//!
//! When the meniscus turns past the vertical it can curl back under the
//! cylinder, and the left and right branches then cross at `x = 0`. This is
//! possible only when `ψ0` lies beyond `∓π/2`, and it happens exactly when
//! the point of the meniscus with vertical tangent sits at `x ≤ 0`. Scaled by
//! `C`, that horizontal position is the intersection function
//!
//! `I(φ0, C) = C sin φ0 − √2 − ln tan(π/8) + 2 sin((φ0+γ)/2) + ln|tan(ψ0/4)|`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_8, PI, SQRT_2};

use serde::Serialize;

use crate::equilibria::{find_equilibria, Equilibrium};
use crate::error::{Error, Result};
use crate::model::{height, inclination, meniscus_reach, DimensionlessParams};

/// Which side of the meniscus can curl back, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntersectionRegime {
    /// `γ ≤ π/2` and `φ0 ≤ π/2 − γ`: the liquid rises above the contact line.
    PsiNegative,
    /// `γ ≥ π/2` and `φ0 ≥ 3π/2 − γ`: the liquid is depressed below it.
    PsiPositive,
    NotApplicable,
}

impl IntersectionRegime {
    pub fn of(phi0: f64, contact_angle: f64) -> Self {
        if contact_angle <= FRAC_PI_2 && phi0 <= FRAC_PI_2 - contact_angle {
            IntersectionRegime::PsiNegative
        } else if contact_angle >= FRAC_PI_2 && phi0 >= 1.5 * PI - contact_angle {
            IntersectionRegime::PsiPositive
        } else {
            IntersectionRegime::NotApplicable
        }
    }
}

/// The three geometric ingredients of a crossing, evaluated on the side the
/// meniscus actually bends toward (mirrored when `ψ0 > 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntersectionConditions {
    /// `0 ≤ φ0+γ ≤ π/2`, or `3π/2 ≤ φ0+γ ≤ 2π` when mirrored.
    pub overturned: bool,
    /// `h > a`, or `h < −a` when mirrored.
    pub clears_cylinder: bool,
    /// The vertical-tangent point of the meniscus lies at `x ≤ 0`.
    pub reaches_axis: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidityReport {
    pub intersecting: bool,
    /// `I(φ0, C)`, present only inside a regime.
    pub intersection_value: Option<f64>,
    pub regime: IntersectionRegime,
    pub conditions: IntersectionConditions,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        !self.intersecting
    }
}

/// `I(φ0, C) − C·sin φ0`, the part that does not depend on `C`.
pub fn intersection_offset(phi0: f64, contact_angle: f64) -> Result<f64> {
    let psi0 = inclination(phi0, contact_angle);
    let t = (0.25 * psi0).tan().abs();
    if t == 0.0 {
        return Err(Error::FlatInterface);
    }
    Ok(-SQRT_2 - FRAC_PI_8.tan().ln() + 2.0 * (0.5 * (phi0 + contact_angle)).sin() + t.ln())
}

/// `I(φ0, C)`. Undefined for a flat interface (`φ0 + γ = π`).
pub fn intersection_function(phi0: f64, capillary_ratio: f64, contact_angle: f64) -> Result<f64> {
    Ok(capillary_ratio * phi0.sin() + intersection_offset(phi0, contact_angle)?)
}

/// Classifies the configuration at wetting angle `phi0`.
///
/// Only regime membership and `I ≤ 0` decide `intersecting`; the individual
/// conditions are reported alongside.
pub fn validity(phi0: f64, p: &DimensionlessParams) -> ValidityReport {
    let gamma = p.contact_angle();
    let regime = IntersectionRegime::of(phi0, gamma);
    let conditions = conditions(phi0, p);
    let intersection_value = match regime {
        IntersectionRegime::NotApplicable => None,
        _ => intersection_function(phi0, p.capillary_ratio(), gamma).ok(),
    };
    ValidityReport {
        intersecting: intersection_value.is_some_and(|i| i <= 0.0),
        intersection_value,
        regime,
        conditions,
    }
}

fn conditions(phi0: f64, p: &DimensionlessParams) -> IntersectionConditions {
    let sum = phi0 + p.contact_angle();
    let psi0 = inclination(phi0, p.contact_angle());
    let h = height(phi0, p);
    if psi0 < 0.0 {
        IntersectionConditions {
            overturned: (0.0..=FRAC_PI_2).contains(&sum),
            clears_cylinder: h > 1.0,
            reaches_axis: meniscus_reach(-FRAC_PI_2, phi0, p) <= 0.0,
        }
    } else if psi0 > 0.0 {
        IntersectionConditions {
            overturned: (1.5 * PI..=2.0 * PI).contains(&sum),
            clears_cylinder: h < -1.0,
            reaches_axis: meniscus_reach(FRAC_PI_2, phi0, p) <= 0.0,
        }
    } else {
        IntersectionConditions { overturned: false, clears_cylinder: false, reaches_axis: false }
    }
}

/// An equilibrium together with its validity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassifiedEquilibrium {
    #[serde(flatten)]
    pub equilibrium: Equilibrium,
    pub validity: ValidityReport,
}

impl ClassifiedEquilibrium {
    pub fn is_valid(&self) -> bool {
        self.validity.is_valid()
    }
}

/// [`find_equilibria`] with a [`ValidityReport`] attached to each root.
pub fn classify_equilibria(p: &DimensionlessParams) -> Vec<ClassifiedEquilibrium> {
    find_equilibria(p)
        .into_iter()
        .map(|equilibrium| ClassifiedEquilibrium { equilibrium, validity: validity(equilibrium.wetting, p) })
        .collect()
}

/// `w·C² + p·C + q` with coefficients depending on `(φ0, γ)` only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CapillaryQuadratic {
    pub quadratic: f64,
    pub linear: f64,
    pub constant: f64,
}

impl CapillaryQuadratic {
    /// `F̂_T(φ0)` at zero mass as a polynomial in `C`.
    pub fn weightless_force(phi0: f64, contact_angle: f64) -> Self {
        let theta = 0.5 * (phi0 + contact_angle);
        Self {
            quadratic: phi0 - 0.5 * (2.0 * phi0).sin(),
            linear: -4.0 * theta.cos() * phi0.sin(),
            constant: -2.0 * (phi0 + contact_angle).sin(),
        }
    }

    /// `dF̂_T/dφ0` as a polynomial in `C`.
    pub fn force_slope(phi0: f64, contact_angle: f64) -> Self {
        let theta = 0.5 * (phi0 + contact_angle);
        Self {
            quadratic: 1.0 - (2.0 * phi0).cos(),
            linear: 2.0 * theta.sin() * phi0.sin() - 4.0 * theta.cos() * phi0.cos(),
            constant: -2.0 * (phi0 + contact_angle).cos(),
        }
    }

    pub fn evaluate(&self, c: f64) -> f64 {
        (self.quadratic * c + self.linear) * c + self.constant
    }

    /// The root `(−p + √(p² − 4wq)) / 2w`, if real.
    pub fn upper_root(&self) -> Option<f64> {
        let disc = self.linear * self.linear - 4.0 * self.quadratic * self.constant;
        if disc < 0.0 || self.quadratic == 0.0 {
            return None;
        }
        Some((-self.linear + disc.sqrt()) / (2.0 * self.quadratic))
    }
}
