//! Equilibrium structure over the `(A, C)` plane at fixed contact angle.
//!
//! Three families of curves separate the regions:
//! * endpoint balance, `F̂_T(π) = 0`: a root enters or leaves through `φ0 = π`;
//! * tangency, `A = A*(C)`: the equilibrium pair is born or dies;
//! * intersection, where the larger root crosses `I(φ0, C) = 0`.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::equilibria::critical_mass_ratio;
use crate::error::{Error, Result};
use crate::intersection::{classify_equilibria, intersection_offset, ClassifiedEquilibrium};
use crate::model::{dforce_dphi0, total_force, DimensionlessParams};
use crate::roots::bisect;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionLabel {
    /// No valid equilibrium.
    #[serde(rename = "0")]
    Zero,
    /// One valid equilibrium and nothing else.
    #[serde(rename = "1")]
    One,
    /// Two valid equilibria.
    #[serde(rename = "2")]
    Two,
    /// One valid and at least one self-intersecting equilibrium.
    #[serde(rename = "1v1iv")]
    OneValidOneInvalid,
}

impl RegionLabel {
    pub fn code(self) -> &'static str {
        match self {
            RegionLabel::Zero => "0",
            RegionLabel::One => "1",
            RegionLabel::Two => "2",
            RegionLabel::OneValidOneInvalid => "1v1iv",
        }
    }

    /// Label for a set of classified roots.
    pub fn from_equilibria(eqs: &[ClassifiedEquilibrium]) -> Self {
        let valid = eqs.iter().filter(|e| e.is_valid()).count();
        let invalid = eqs.len() - valid;
        match (valid, invalid) {
            (0, _) => RegionLabel::Zero,
            (1, 0) => RegionLabel::One,
            (1, _) => RegionLabel::OneValidOneInvalid,
            _ => RegionLabel::Two,
        }
    }
}

/// Region label at a single parameter point.
pub fn label_at(p: &DimensionlessParams) -> RegionLabel {
    RegionLabel::from_equilibria(&classify_equilibria(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveKind {
    /// `F̂_T(π) = 0`.
    #[serde(rename = "C1")]
    EndpointBalance,
    /// `F̂_T(φ0*) = 0` at the force maximum.
    #[serde(rename = "C2")]
    Tangency,
    /// Larger root on the intersection boundary.
    #[serde(rename = "C3")]
    Intersection,
}

impl CurveKind {
    pub fn code(self) -> &'static str {
        match self {
            CurveKind::EndpointBalance => "C1",
            CurveKind::Tangency => "C2",
            CurveKind::Intersection => "C3",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub mass_ratio: f64,
    pub capillary_ratio: f64,
    /// Wetting angle of the root that defines the curve at this point.
    pub wetting: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCurve {
    pub kind: CurveKind,
    pub points: Vec<CurvePoint>,
    /// Closed form rather than a numerical solve.
    pub analytic: bool,
    /// Sample values for which no point could be found.
    pub gaps: Vec<f64>,
}

/// Rectangle in the `(A, C)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub mass_ratio: (f64, f64),
    pub capillary_ratio: (f64, f64),
}

impl Default for Window {
    fn default() -> Self {
        Self { mass_ratio: (0.06, 12.0), capillary_ratio: (0.025, 5.0) }
    }
}

impl Window {
    pub fn validate(&self) -> Result<()> {
        check_range("A", self.mass_ratio)?;
        check_range("C", self.capillary_ratio)
    }

    pub fn contains(&self, mass_ratio: f64, capillary_ratio: f64) -> bool {
        (self.mass_ratio.0..=self.mass_ratio.1).contains(&mass_ratio)
            && (self.capillary_ratio.0..=self.capillary_ratio.1).contains(&capillary_ratio)
    }
}

fn check_range(field: &'static str, (lo, hi): (f64, f64)) -> Result<()> {
    if lo.is_finite() && hi.is_finite() && lo > 0.0 && hi > lo {
        Ok(())
    } else {
        Err(Error::InvalidRange { field, lo, hi })
    }
}

fn linspace((lo, hi): (f64, f64), n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|i| if i == n - 1 { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 }).collect()
}

fn logspace((lo, hi): (f64, f64), n: usize) -> Vec<f64> {
    linspace((lo.ln(), hi.ln()), n).into_iter().map(f64::exp).collect()
}

/// Where the endpoint-balance curve sits for a given `A`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum EndpointBalance {
    Capillary(f64),
    /// `γ ∈ {0, π}`: the curve is the line `A = π`.
    VerticalLine,
    /// `A ≤ π` with `sin γ > 0`.
    Undefined,
}

/// `C = √(2 sin γ / (A − π))`, from `F̂_T(π) = 2 sin γ + C²(π − A) = 0`.
pub fn endpoint_balance_capillary(contact_angle: f64, mass_ratio: f64) -> EndpointBalance {
    let s = contact_angle.sin();
    if s.abs() < 1e-15 {
        EndpointBalance::VerticalLine
    } else if mass_ratio > PI {
        EndpointBalance::Capillary((2.0 * s / (mass_ratio - PI)).sqrt())
    } else {
        EndpointBalance::Undefined
    }
}

/// The endpoint-balance curve over the window, `samples` values of `A`
/// (or of `C` for the vertical line).
pub fn endpoint_balance_curve(contact_angle: f64, window: &Window, samples: usize) -> BoundaryCurve {
    let mut points = Vec::new();
    if let EndpointBalance::VerticalLine = endpoint_balance_capillary(contact_angle, PI) {
        if (window.mass_ratio.0..=window.mass_ratio.1).contains(&PI) {
            points = linspace(window.capillary_ratio, samples)
                .into_iter()
                .map(|c| CurvePoint { mass_ratio: PI, capillary_ratio: c, wetting: PI })
                .collect();
        }
    } else {
        let lo = window.mass_ratio.0.max(PI);
        for a in linspace((lo, window.mass_ratio.1), samples) {
            if let EndpointBalance::Capillary(c) = endpoint_balance_capillary(contact_angle, a) {
                if window.contains(a, c) {
                    points.push(CurvePoint { mass_ratio: a, capillary_ratio: c, wetting: PI });
                }
            }
        }
    }
    BoundaryCurve { kind: CurveKind::EndpointBalance, points, analytic: true, gaps: Vec::new() }
}

/// Tangency curve sampled in `C`: `(A*(C), C)` wherever a force maximum
/// exists.
pub fn trace_tangency(contact_angle: f64, capillary_samples: &[f64]) -> BoundaryCurve {
    let mut points = Vec::new();
    let mut gaps = Vec::new();
    for &c in capillary_samples {
        match critical_mass_ratio(c, contact_angle) {
            Ok(cm) => points.push(CurvePoint { mass_ratio: cm.mass_ratio, capillary_ratio: c, wetting: cm.wetting }),
            Err(_) => gaps.push(c),
        }
    }
    BoundaryCurve { kind: CurveKind::Tangency, points, analytic: false, gaps }
}

/// Scan resolution for inverting `A*(C)`.
const TANGENCY_SCAN_POINTS: usize = 400;

/// Tangency curve sampled in `A`: for each mass ratio, every `C` in
/// `capillary_range` with `A*(C) = A`. Mass ratios with no solution are
/// recorded as gaps.
pub fn tangency_curve(contact_angle: f64, mass_samples: &[f64], capillary_range: (f64, f64)) -> Result<BoundaryCurve> {
    check_range("C", capillary_range)?;
    let grid = logspace(capillary_range, TANGENCY_SCAN_POINTS);
    let star: Vec<Option<f64>> =
        grid.iter().map(|&c| critical_mass_ratio(c, contact_angle).ok().map(|cm| cm.mass_ratio)).collect();

    let mut points = Vec::new();
    let mut gaps = Vec::new();
    for &a in mass_samples {
        let before = points.len();
        for k in 0..grid.len() - 1 {
            let (Some(s0), Some(s1)) = (star[k], star[k + 1]) else { continue };
            let (g0, g1) = (s0 - a, s1 - a);
            if g0 == 0.0 || g0.signum() != g1.signum() && g1 != 0.0 {
                let excess = |ln_c: f64| {
                    critical_mass_ratio(ln_c.exp(), contact_angle).map_or(f64::NAN, |cm| cm.mass_ratio - a)
                };
                if let Some(ln_c) = bisect(excess, grid[k].ln(), grid[k + 1].ln(), 1e-14) {
                    let c = ln_c.exp();
                    if let Ok(cm) = critical_mass_ratio(c, contact_angle) {
                        points.push(CurvePoint { mass_ratio: a, capillary_ratio: c, wetting: cm.wetting });
                    }
                }
            }
        }
        if *star.last().unwrap() == Some(a) {
            let c = capillary_range.1;
            let wetting = critical_mass_ratio(c, contact_angle).map(|cm| cm.wetting).unwrap_or(f64::NAN);
            points.push(CurvePoint { mass_ratio: a, capillary_ratio: c, wetting });
        }
        if points.len() == before {
            gaps.push(a);
        }
    }
    Ok(BoundaryCurve { kind: CurveKind::Tangency, points, analytic: false, gaps })
}

/// Intersection curve, parameterised by the wetting angle of the larger
/// root on `(3π/2 − γ, π)`. Empty for `γ ≤ π/2`.
///
/// `I` is affine in `C`, so `C = −offset(φ0)/sin φ0`; then `A` follows from
/// `F̂_T = 0`, which is affine in `A`.
pub fn intersection_curve(contact_angle: f64, samples: usize) -> BoundaryCurve {
    let mut points = Vec::new();
    if contact_angle > FRAC_PI_2 {
        let lo = 1.5 * PI - contact_angle;
        for k in 1..=samples {
            let phi0 = lo + (PI - lo) * k as f64 / (samples + 1) as f64;
            let Ok(offset) = intersection_offset(phi0, contact_angle) else { continue };
            let c = -offset / phi0.sin();
            if !(c > 0.0 && c.is_finite()) {
                continue;
            }
            let Ok(weightless) = DimensionlessParams::exploratory(0.0, c, contact_angle) else { continue };
            let a = total_force(phi0, &weightless) / weightless.bond_number();
            if a > 0.0 && dforce_dphi0(phi0, &weightless) < 0.0 {
                points.push(CurvePoint { mass_ratio: a, capillary_ratio: c, wetting: phi0 });
            }
        }
    }
    BoundaryCurve { kind: CurveKind::Intersection, points, analytic: false, gaps: Vec::new() }
}

/// End point of the two-equilibrium region for `0 < γ < π/2`, where the
/// endpoint-balance and tangency curves meet: `C0 = cos γ / (2 sin(γ/2))`,
/// `A0 = π + 2 sin γ / C0²`. Beyond it the force maximum leaves `[0, π]`.
pub fn region_corner(contact_angle: f64) -> Option<CurvePoint> {
    if !(contact_angle > 0.0 && contact_angle < FRAC_PI_2) {
        return None;
    }
    let c = contact_angle.cos() / (2.0 * (0.5 * contact_angle).sin());
    Some(CurvePoint { mass_ratio: PI + 2.0 * contact_angle.sin() / (c * c), capillary_ratio: c, wetting: PI })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionMap {
    pub contact_angle: f64,
    pub mass_axis: Vec<f64>,
    pub capillary_axis: Vec<f64>,
    /// `labels[i][j]` belongs to `(mass_axis[i], capillary_axis[j])`.
    pub labels: Vec<Vec<RegionLabel>>,
    pub curves: Vec<BoundaryCurve>,
}

impl RegionMap {
    pub fn label(&self, i: usize, j: usize) -> RegionLabel {
        self.labels[i][j]
    }

    /// `(A, C, label)` for every cell, `A` outermost.
    pub fn cells(&self) -> impl Iterator<Item = (f64, f64, RegionLabel)> + '_ {
        self.mass_axis.iter().enumerate().flat_map(move |(i, &a)| {
            self.capillary_axis.iter().enumerate().map(move |(j, &c)| (a, c, self.labels[i][j]))
        })
    }
}

/// Number of samples along each boundary curve.
const CURVE_SAMPLES: usize = 400;

/// Labels a `resolution.0 × resolution.1` grid (A × C) and attaches the
/// boundary curves clipped to the window.
pub fn region_map(contact_angle: f64, window: &Window, resolution: (usize, usize)) -> Result<RegionMap> {
    window.validate()?;
    if resolution.0 < 2 || resolution.1 < 2 {
        return Err(Error::TooFewSamples(resolution.0.min(resolution.1)));
    }
    // Validates the contact angle once for the whole grid.
    DimensionlessParams::new(window.mass_ratio.0, window.capillary_ratio.0, contact_angle)?;

    let mass_axis = linspace(window.mass_ratio, resolution.0);
    let capillary_axis = linspace(window.capillary_ratio, resolution.1);
    let labels = mass_axis
        .par_iter()
        .map(|&a| {
            capillary_axis
                .iter()
                .map(|&c| {
                    let p = DimensionlessParams::new(a, c, contact_angle).expect("validated window");
                    label_at(&p)
                })
                .collect()
        })
        .collect();

    let mut tangency = trace_tangency(contact_angle, &logspace(window.capillary_ratio, CURVE_SAMPLES));
    tangency.points.retain(|pt| window.contains(pt.mass_ratio, pt.capillary_ratio));
    let mut intersection = intersection_curve(contact_angle, CURVE_SAMPLES);
    intersection.points.retain(|pt| window.contains(pt.mass_ratio, pt.capillary_ratio));
    let curves = vec![endpoint_balance_curve(contact_angle, window, CURVE_SAMPLES), tangency, intersection];

    Ok(RegionMap { contact_angle, mass_axis, capillary_axis, labels, curves })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibria::find_equilibria;
    use crate::intersection::intersection_function;
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    fn params(a: f64, c: f64, g: f64) -> DimensionlessParams {
        DimensionlessParams::new(a, c, g).unwrap()
    }

    #[test]
    fn endpoint_balance_values() {
        assert_eq!(endpoint_balance_capillary(FRAC_PI_2, PI + 2.0), EndpointBalance::Capillary(1.0));
        assert_eq!(endpoint_balance_capillary(0.0, 5.0), EndpointBalance::VerticalLine);
        assert_eq!(endpoint_balance_capillary(PI, 5.0), EndpointBalance::VerticalLine);
        assert_eq!(endpoint_balance_capillary(1.0, 3.0), EndpointBalance::Undefined);
        let EndpointBalance::Capillary(c) = endpoint_balance_capillary(FRAC_PI_4, 5.0) else { panic!() };
        assert!((c - (SQRT_2 / (5.0 - PI)).sqrt()).abs() < 1e-15);
        assert!(total_force(PI, &params(PI + 2.0, 1.0, FRAC_PI_2)).abs() < 1e-12);
    }

    #[test]
    fn corner_at_quarter_pi() {
        let corner = region_corner(FRAC_PI_4).unwrap();
        let a0 = PI + 4.0 * SQRT_2 / (2.0 + SQRT_2);
        let c0 = (2.0 + SQRT_2).sqrt() / 2.0;
        assert!((corner.mass_ratio - a0).abs() < 1e-12);
        assert!((corner.capillary_ratio - c0).abs() < 1e-12);
        let EndpointBalance::Capillary(c) = endpoint_balance_capillary(FRAC_PI_4, a0) else { panic!() };
        assert!((c - c0).abs() < 1e-9);
    }

    #[test]
    fn labels_for_zero_contact_angle() {
        assert_eq!(label_at(&params(2.0, 1.0, 0.0)), RegionLabel::One);
        assert_eq!(label_at(&params(4.0, 1.0, 0.0)), RegionLabel::Zero);
        assert_eq!(label_at(&params(3.8, 2.0, FRAC_PI_2)), RegionLabel::Two);
    }

    #[test]
    fn tangency_inversion_recovers_unit_capillary() {
        let a_star = critical_mass_ratio(1.0, FRAC_PI_2).unwrap().mass_ratio;
        let curve = tangency_curve(FRAC_PI_2, &[a_star], (0.025, 5.0)).unwrap();
        assert_eq!(curve.points.len(), 1);
        assert!((curve.points[0].capillary_ratio - 1.0).abs() < 1e-9);
        let gap = tangency_curve(FRAC_PI_2, &[2.0], (0.025, 5.0)).unwrap();
        assert_eq!(gap.gaps, vec![2.0]);
    }

    #[test]
    fn tangency_crossing_changes_count_by_two() {
        let curve = tangency_curve(FRAC_PI_2, &[4.0, 6.0, 10.0], (0.025, 5.0)).unwrap();
        for pt in &curve.points {
            let inside = find_equilibria(&params(pt.mass_ratio, pt.capillary_ratio * (1.0 - 1e-3), FRAC_PI_2));
            let outside = find_equilibria(&params(pt.mass_ratio, pt.capillary_ratio * (1.0 + 1e-3), FRAC_PI_2));
            assert_eq!(inside.len(), outside.len() + 2, "{pt:?}");
        }
    }

    #[test]
    fn intersection_curve_satisfies_its_equations() {
        for gamma in [0.6 * PI, 0.75 * PI, PI] {
            let curve = intersection_curve(gamma, 200);
            assert!(!curve.points.is_empty());
            for pt in &curve.points {
                let p = params(pt.mass_ratio, pt.capillary_ratio, gamma);
                assert!(total_force(pt.wetting, &p).abs() < 1e-10);
                assert!(intersection_function(pt.wetting, pt.capillary_ratio, gamma).unwrap().abs() < 1e-10);
                let eqs = find_equilibria(&p);
                assert!((eqs.last().unwrap().wetting - pt.wetting).abs() < 1e-8);
            }
        }
        assert!(intersection_curve(FRAC_PI_4, 100).points.is_empty());
    }

    #[test]
    fn small_map_is_consistent() {
        let window = Window { mass_ratio: (0.5, 8.0), capillary_ratio: (0.2, 4.0) };
        let map = region_map(0.75 * PI, &window, (12, 10)).unwrap();
        assert_eq!(map.labels.len(), 12);
        assert!(map.labels.iter().all(|row| row.len() == 10));
        for (a, c, label) in map.cells() {
            assert_eq!(label, label_at(&params(a, c, 0.75 * PI)));
        }
        assert!(region_map(1.0, &window, (1, 10)).is_err());
        let bad = Window { mass_ratio: (0.0, 8.0), ..window };
        assert!(region_map(1.0, &bad, (4, 4)).is_err());
    }
}
