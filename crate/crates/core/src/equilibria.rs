//! Force-balance points, their stability and the critical mass ratio.
//!
//! The force curve `F̂_T(φ0)` has at most two critical points on `[0, π]`,
//! a minimum followed by a maximum, and their brackets depend only on which
//! side of `π/2` the contact angle lies. Every root is bracketed on one of
//! the monotone pieces between them and refined by bisection. A sign-change
//! scan over a uniform grid guards the bracketing near regime boundaries.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use log::warn;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{d2force_dphi02, dforce_dphi0, height, total_force, DimensionlessParams};
use crate::roots::{bisect, sign_changes};

/// Width of the final bisection bracket on `φ0`.
pub const WETTING_TOLERANCE: f64 = 1e-12;

/// `|dF̂_T/dφ0|` at or below this value marks a tangent (marginal) root.
pub const TANGENCY_TOLERANCE: f64 = 1e-6;

/// Grid size of the guard scans.
pub const GUARD_SCAN_POINTS: usize = 1000;

/// Tolerance on `F̂_T` below which a value counts as zero.
pub fn force_tolerance(p: &DimensionlessParams) -> f64 {
    1e-10 * p.force_scale()
}

/// Contact angles this close to `π/2` use the right-angle brackets.
const RIGHT_ANGLE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    /// `dF̂_T/dφ0 > 0`: a local energy minimum.
    Stable,
    /// `dF̂_T/dφ0 < 0`: a local energy maximum.
    Unstable,
    /// Tangent root. The force keeps its sign across it, so it is unstable.
    MarginalUnstable,
}

impl Stability {
    pub fn from_slope(dforce: f64) -> Self {
        if dforce > TANGENCY_TOLERANCE {
            Stability::Stable
        } else if dforce < -TANGENCY_TOLERANCE {
            Stability::Unstable
        } else {
            Stability::MarginalUnstable
        }
    }

    pub fn is_stable(self) -> bool {
        self == Stability::Stable
    }
}

/// A force-balance configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Equilibrium {
    /// Wetting angle `φ̄0` at which `F̂_T` vanishes.
    pub wetting: f64,
    pub stability: Stability,
    /// `dF̂_T/dφ0` at the root.
    pub dforce: f64,
    /// Centre height `h/a`.
    pub height: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalKind {
    /// Local minimum of the force, the smaller critical point.
    FirstMin,
    /// Local maximum of the force, beyond `π/2`.
    SecondMax,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub wetting: f64,
    pub kind: CriticalKind,
}

/// Critical points of `F̂_T` on `(0, π)`, in ascending order.
///
/// Brackets:
/// * `γ = π/2`: one in `(0, π/2)` and one in `(π/2, π)`;
/// * `γ > π/2`: the maximum in `(π/2, π)`, plus a minimum in `(0, π/4)`
///   when `dF̂_T/dφ0(0) < 0`;
/// * `γ < π/2`: the minimum in `(0, π/2)`, plus a maximum in `(3π/4, π)`
///   when `dF̂_T/dφ0(π) < 0`.
///
/// A bracket without a sign change falls back to a dense scan; if the scan
/// finds nothing either, that point is left out.
pub fn critical_points(p: &DimensionlessParams) -> Vec<CriticalPoint> {
    let slope = |x: f64| dforce_dphi0(x, p);
    let gamma = p.contact_angle();

    let (first, second) = if (gamma - FRAC_PI_2).abs() <= RIGHT_ANGLE_EPS {
        (Some((0.0, FRAC_PI_2)), Some((FRAC_PI_2, PI)))
    } else if gamma > FRAC_PI_2 {
        let first = (slope(0.0) < 0.0).then_some((0.0, FRAC_PI_4));
        (first, Some((FRAC_PI_2, PI)))
    } else {
        let second = (slope(PI) < 0.0).then_some((0.75 * PI, PI));
        (Some((0.0, FRAC_PI_2)), second)
    };

    let mut out = Vec::with_capacity(2);
    if let Some((lo, hi)) = first {
        let root = bisect(slope, lo, hi, WETTING_TOLERANCE).or_else(|| scan_critical(p, CriticalKind::FirstMin));
        if let Some(wetting) = root {
            out.push(CriticalPoint { wetting, kind: CriticalKind::FirstMin });
        }
    }
    if let Some((lo, hi)) = second {
        let root = bisect(slope, lo, hi, WETTING_TOLERANCE).or_else(|| scan_critical(p, CriticalKind::SecondMax));
        if let Some(wetting) = root {
            out.push(CriticalPoint { wetting, kind: CriticalKind::SecondMax });
        }
    }
    out
}

fn scan_critical(p: &DimensionlessParams, kind: CriticalKind) -> Option<f64> {
    let slope = |x: f64| dforce_dphi0(x, p);
    let changes = sign_changes(slope, 0.0, PI, GUARD_SCAN_POINTS);
    let pick = match kind {
        CriticalKind::FirstMin => changes.iter().find(|(lo, _)| slope(*lo) < 0.0),
        CriticalKind::SecondMax => changes.iter().rev().find(|(lo, _)| slope(*lo) > 0.0),
    };
    pick.and_then(|&(lo, hi)| bisect(slope, lo, hi, WETTING_TOLERANCE))
}

/// All roots of `F̂_T` on `[0, π]`, ascending, with their stability.
///
/// Values of `F̂_T` within [`force_tolerance`] of zero at the endpoints or at
/// a critical point count as roots. A tangency therefore yields one
/// marginal root rather than two.
pub fn find_equilibria(p: &DimensionlessParams) -> Vec<Equilibrium> {
    let force = |x: f64| total_force(x, p);
    let tol = force_tolerance(p);

    let mut knots = vec![0.0];
    knots.extend(critical_points(p).iter().map(|c| c.wetting));
    knots.push(PI);
    let values: Vec<f64> = knots
        .iter()
        .map(|&x| {
            let v = force(x);
            if v.abs() <= tol {
                0.0
            } else {
                v
            }
        })
        .collect();

    let mut roots: Vec<f64> = knots.iter().zip(&values).filter(|(_, v)| **v == 0.0).map(|(x, _)| *x).collect();
    for i in 0..knots.len() - 1 {
        if values[i] * values[i + 1] < 0.0 {
            if let Some(r) = bisect(force, knots[i], knots[i + 1], WETTING_TOLERANCE) {
                roots.push(r);
            }
        }
    }

    let spacing = PI / (GUARD_SCAN_POINTS - 1) as f64;
    for (lo, hi) in sign_changes(force, 0.0, PI, GUARD_SCAN_POINTS) {
        let known = roots.iter().any(|&r| r >= lo - spacing && r <= hi + spacing);
        if !known {
            if let Some(r) = bisect(force, lo, hi, WETTING_TOLERANCE) {
                warn!(
                    "force root at phi0 = {r} missed by the critical-point brackets (A = {}, C = {}, gamma = {})",
                    p.mass_ratio(),
                    p.capillary_ratio(),
                    p.contact_angle()
                );
                roots.push(r);
            }
        }
    }

    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 10.0 * WETTING_TOLERANCE);
    roots
        .into_iter()
        .map(|wetting| {
            let dforce = dforce_dphi0(wetting, p);
            Equilibrium { wetting, stability: Stability::from_slope(dforce), dforce, height: height(wetting, p) }
        })
        .collect()
}

/// Mass ratio `A*` at which the maximum of the force curve touches zero,
/// with the wetting angle `φ0*` of that maximum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalMass {
    pub mass_ratio: f64,
    pub wetting: f64,
}

/// `A*(C, γ)`: beyond it the equilibrium pair disappears.
///
/// `A` enters the force only through `−A·C²`, so `A* = F̂_T(φ0*; A = 0)/C²`.
pub fn critical_mass_ratio(capillary_ratio: f64, contact_angle: f64) -> Result<CriticalMass> {
    let p = DimensionlessParams::exploratory(0.0, capillary_ratio, contact_angle)?;
    let star = critical_points(&p)
        .into_iter()
        .find(|c| c.kind == CriticalKind::SecondMax)
        .ok_or(Error::NoSecondCriticalPoint { capillary: capillary_ratio, contact_angle })?;
    Ok(CriticalMass { mass_ratio: total_force(star.wetting, &p) / p.bond_number(), wetting: star.wetting })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AsymptoticRegime {
    /// `C → 0`.
    SmallCapillary,
    /// `C → ∞`.
    LargeCapillary,
}

/// Contact angles this close to `π/2` are accepted by the series.
pub const SERIES_ANGLE_TOLERANCE: f64 = 1e-6;

/// Truncated series for `A*` and `φ0*` at `γ = π/2`.
///
/// Small `C`: `A* ≈ 2/C² + 2 + π − 2√2·C`,
/// `φ0* ≈ π − √2·C + 2C² − (7/12)√2·C³`.
///
/// Large `C`: `A* ≈ π + (1/3)·2^(11/4)·C^(−3/2)`,
/// `φ0* ≈ π − 2^(1/4)·C^(−1/2) + 2^(−1/2)·C^(−1) + (7/3)·2^(−13/4)·C^(−3/2)`.
pub fn asymptotic_critical_mass(
    capillary_ratio: f64,
    contact_angle: f64,
    regime: AsymptoticRegime,
) -> Result<CriticalMass> {
    if (contact_angle - FRAC_PI_2).abs() > SERIES_ANGLE_TOLERANCE {
        return Err(Error::UnsupportedRegime(contact_angle));
    }
    let c = capillary_ratio;
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::NonPositive { field: "C", value: c });
    }
    let sqrt2 = std::f64::consts::SQRT_2;
    Ok(match regime {
        AsymptoticRegime::SmallCapillary => CriticalMass {
            mass_ratio: 2.0 / (c * c) + 2.0 + PI - 2.0 * sqrt2 * c,
            wetting: PI - sqrt2 * c + 2.0 * c * c - 7.0 / 12.0 * sqrt2 * c.powi(3),
        },
        AsymptoticRegime::LargeCapillary => CriticalMass {
            mass_ratio: PI + 2f64.powf(2.75) / 3.0 / c.powf(1.5),
            wetting: PI - 2f64.powf(0.25) / c.sqrt() + 2f64.powf(-0.5) / c + 7.0 / 3.0 * 2f64.powf(-3.25) / c.powf(1.5),
        },
    })
}

/// Sign of `d²F̂_T/dφ0²` at a critical point, exposed for diagnostics.
pub fn curvature_at(point: &CriticalPoint, p: &DimensionlessParams) -> f64 {
    d2force_dphi02(point.wetting, p)
}
