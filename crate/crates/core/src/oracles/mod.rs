//! Independent recomputation of the closed forms.
//!
//! Energies and the buoyancy force are integrated numerically from their
//! defining integrals, derivatives are compared with finite differences and
//! the half-angle harmonics of the force are recovered by projection.

pub mod quadrature;

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::model::{
    buoyancy_force, d2force_dphi02, dforce_dphi0, dheight_dphi0, height, inclination, interface_profile,
    meniscus_height, total_energy, total_force, DimensionlessParams, TrigSeries,
};
use quadrature::Integrator;

/// Outcome of one check over a sampled domain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub name: String,
    pub max_abs_err: f64,
    pub max_rel_err: f64,
    pub samples: usize,
    pub tolerance: f64,
    pub passed: bool,
}

/// Running worst case of a comparison. Relative errors use
/// `max(|reference|, 1)` as denominator so values near zero are judged in
/// absolute terms.
#[derive(Debug, Clone)]
struct Tally {
    name: String,
    tolerance: f64,
    max_abs: f64,
    max_rel: f64,
    samples: usize,
    failed: bool,
}

impl Tally {
    fn new(name: &str, tolerance: f64) -> Self {
        Self { name: name.to_owned(), tolerance, max_abs: 0.0, max_rel: 0.0, samples: 0, failed: false }
    }

    fn compare(&mut self, computed: f64, reference: f64) {
        let abs = (computed - reference).abs();
        let rel = abs / reference.abs().max(1.0);
        self.record(abs, rel);
    }

    fn record(&mut self, abs: f64, rel: f64) {
        self.samples += 1;
        if !(rel <= self.tolerance) {
            self.failed = true;
        }
        self.max_abs = self.max_abs.max(abs);
        self.max_rel = self.max_rel.max(rel);
    }

    fn compare_result(&mut self, computed: Result<f64>, reference: f64) {
        match computed {
            Ok(v) => self.compare(v, reference),
            Err(_) => {
                self.samples += 1;
                self.failed = true;
                self.max_abs = f64::INFINITY;
                self.max_rel = f64::INFINITY;
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.max_abs = self.max_abs.max(other.max_abs);
        self.max_rel = self.max_rel.max(other.max_rel);
        self.samples += other.samples;
        self.failed |= other.failed;
        self
    }

    fn report(self) -> OracleReport {
        OracleReport {
            passed: !self.failed && self.samples > 0,
            name: self.name,
            max_abs_err: self.max_abs,
            max_rel_err: self.max_rel,
            samples: self.samples,
            tolerance: self.tolerance,
        }
    }
}

/// `dx/dψ` on the meniscus, in units of `a`.
fn reach_slope(psi: f64, capillary_ratio: f64) -> f64 {
    -psi.cos() / (2.0 * capillary_ratio * (0.5 * psi).sin())
}

/// `du/dψ` on the meniscus, in units of `a`.
fn height_slope(psi: f64, capillary_ratio: f64) -> f64 {
    -(0.5 * psi).cos() / capillary_ratio
}

/// Surface energy from the arc length of both menisci minus the flat
/// surface they replace, less the flat surface spanned by the cylinder.
pub fn surface_energy_quadrature(phi0: f64, p: &DimensionlessParams) -> Result<f64> {
    surface_energy_with(&Integrator::default(), phi0, p)
}

fn surface_energy_with(integrator: &Integrator, phi0: f64, p: &DimensionlessParams) -> Result<f64> {
    let c = p.capillary_ratio();
    let psi0 = inclination(phi0, p.contact_angle());
    if psi0 == 0.0 {
        return Ok(-2.0 * phi0.sin());
    }
    // Orientation of the arc as ψ runs from ψ0 to 0.
    let orient = -psi0.signum();
    let integrand = |psi: f64| {
        let du = height_slope(psi, c);
        let dx = reach_slope(psi, c);
        let arc = du.hypot(dx);
        if orient * dx > 0.0 {
            orient * du * du / (arc + orient * dx)
        } else {
            orient * arc - dx
        }
    };
    Ok(2.0 * integrator.integrate(integrand, psi0, 0.0)? - 2.0 * phi0.sin())
}

/// Liquid potential energy of the column under the wetted arc.
pub fn wetted_fluid_quadrature(phi0: f64, p: &DimensionlessParams) -> Result<f64> {
    let h = height(phi0, p);
    let bond = p.bond_number();
    Ok(bond * Integrator::default().integrate(|phi: f64| (phi.cos() - h).powi(2) * phi.cos(), 0.0, phi0)?)
}

/// Liquid potential energy of the columns under both menisci.
pub fn meniscus_fluid_quadrature(phi0: f64, p: &DimensionlessParams) -> Result<f64> {
    let c = p.capillary_ratio();
    let psi0 = inclination(phi0, p.contact_angle());
    let integrand = |psi: f64| meniscus_height(psi, c).powi(2) * reach_slope(psi, c);
    Ok(c * c * Integrator::default().integrate(integrand, psi0, 0.0)?)
}

/// Both liquid energy parts: (under the arc, under the menisci).
pub fn fluid_energy_quadrature(phi0: f64, p: &DimensionlessParams) -> Result<(f64, f64)> {
    Ok((wetted_fluid_quadrature(phi0, p)?, meniscus_fluid_quadrature(phi0, p)?))
}

/// Vertical pressure force on the wetted arc, integrated along the arc.
pub fn buoyancy_quadrature(phi0: f64, p: &DimensionlessParams) -> Result<f64> {
    let h = height(phi0, p);
    let integrand = |phi: f64| (phi.cos() - h) * phi.cos();
    Ok(p.bond_number() * Integrator::default().integrate(integrand, -phi0, phi0)?)
}

/// Area between the wetted arc and the undisturbed liquid level, built from
/// a circular segment below the contact chord and the rectangle between the
/// chord and the level.
pub fn wetted_region_area(phi0: f64, p: &DimensionlessParams) -> f64 {
    let contact_height = meniscus_height(inclination(phi0, p.contact_angle()), p.capillary_ratio());
    let segment = phi0 - phi0.sin() * phi0.cos();
    segment - 2.0 * phi0.sin() * contact_height
}

/// Area of the disc below the undisturbed level.
pub fn submerged_segment_area(phi0: f64, p: &DimensionlessParams) -> f64 {
    let h = height(phi0, p);
    if h >= 1.0 {
        0.0
    } else if h <= -1.0 {
        PI
    } else {
        let alpha = h.acos();
        alpha - alpha.sin() * alpha.cos()
    }
}

/// `dE_T/dφ0` summed from the derivative of each energy part.
pub fn energy_slope(phi0: f64, p: &DimensionlessParams) -> f64 {
    let c = p.capillary_ratio();
    let gamma = p.contact_angle();
    let bond = c * c;
    let theta = 0.5 * (phi0 + gamma);
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi0.sin_cos();

    let gravity = p.mass_ratio() * bond * (-sp - st / c);
    let wetting = -2.0 * gamma.cos();
    let surface = -2.0 / c * ct - 2.0 * cp;
    let meniscus = 2.0 / c * ct - 4.0 / c * st * st * ct;
    let wetted = bond * (0.25 * (3.0 * phi0).cos() - cp + phi0 * sp + 0.75 * cp)
        + c * (-0.5 * st * (2.0 * phi0).sin() + 2.0 * ct * (2.0 * phi0).cos())
        - 2.0 * c * ct
        + c * phi0 * st
        - 4.0 * ct * st * sp
        + 4.0 * ct * ct * cp;
    gravity + wetting + surface + meniscus + wetted
}

fn fd_step(x: f64) -> f64 {
    1e-6 * x.abs().max(1.0)
}

fn central_difference(f: impl Fn(f64) -> f64, x: f64) -> f64 {
    let h = fd_step(x);
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// `n` evenly spaced interior wetting angles.
fn interior_grid(n: usize) -> impl Iterator<Item = f64> {
    (1..=n).map(move |k| PI * k as f64 / (n + 1) as f64)
}

/// Five-point central difference with step `1e-4·max(1, |x|)`.
///
/// The energy can reach a few hundred `σa` while `dh/dφ0` nearly vanishes
/// close to `φ0 = γ = 0`, so a two-point difference at step `1e-6` leaves
/// rounding errors above `1e-6` in the recovered force there.
fn five_point_difference(f: impl Fn(f64) -> f64, x: f64) -> f64 {
    let h = 1e-4 * x.abs().max(1.0);
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

/// `−(dE_T/dφ0)/(dh/dφ0) = F̂_T` with a finite-difference energy slope.
pub fn energy_force_identity_check(p: &DimensionlessParams, grid: usize) -> OracleReport {
    let mut tally = Tally::new("energy_force_identity", 1e-6);
    for phi0 in interior_grid(grid) {
        let de = five_point_difference(|x| total_energy(x, p).total, phi0);
        let force = total_force(phi0, p);
        let abs = (-de / dheight_dphi0(phi0, p) - force).abs();
        tally.record(abs, abs);
    }
    tally.report()
}

/// `dE_T/dφ0 = F̂_T·(sin φ0 + sin((φ0+γ)/2)/C)` with the analytic slope.
pub fn energy_slope_factored_check(p: &DimensionlessParams, grid: usize) -> OracleReport {
    let mut tally = Tally::new("energy_slope_factored", 1e-10);
    for phi0 in interior_grid(grid) {
        tally.compare(energy_slope(phi0, p), -total_force(phi0, p) * dheight_dphi0(phi0, p));
    }
    tally.report()
}

/// Number of trapezoid nodes over one `4π` period.
pub const FOURIER_NODES: usize = 4096;

/// Projects `F̂_T + A·C² − C²·φ0` onto `cos(nφ0/2)` and `sin(nφ0/2)`,
/// `n = 1..4`, returning `(cosine, sine)` coefficients.
pub fn fourier_coefficients(p: &DimensionlessParams) -> ([f64; 4], [f64; 4]) {
    let bond = p.bond_number();
    let step = 4.0 * PI / FOURIER_NODES as f64;
    let mut cos = [0.0; 4];
    let mut sin = [0.0; 4];
    for k in 0..FOURIER_NODES {
        let phi = step * k as f64;
        let periodic = total_force(phi, p) + p.mass_ratio() * bond - bond * phi;
        for n in 1..=4 {
            let arg = 0.5 * n as f64 * phi;
            cos[n - 1] += periodic * arg.cos();
            sin[n - 1] += periodic * arg.sin();
        }
    }
    let scale = step / (2.0 * PI);
    (cos.map(|v| v * scale), sin.map(|v| v * scale))
}

/// Projected harmonics against the closed-form coefficients.
pub fn fourier_projection_check(p: &DimensionlessParams) -> OracleReport {
    let mut tally = Tally::new("fourier_projection", 1e-8);
    let (cos, sin) = fourier_coefficients(p);
    let series = TrigSeries::new(p);
    for n in 0..4 {
        tally.compare(cos[n], series.cos[n]);
        tally.compare(sin[n], series.sin[n]);
    }
    tally.report()
}

/// One random parameter set with a wetting angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleSet {
    pub params: DimensionlessParams,
    pub wetting: f64,
}

/// Reproducible random sets: `A ∈ [0.1, 10]`, `C ∈ [0.1, 5]`, `γ ∈ [0, π]`,
/// `φ0 ∈ [0.01, π − 0.01]`.
pub fn random_sets(seed: u64, count: usize) -> Vec<SampleSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let a = rng.gen_range(0.1..=10.0);
            let c = rng.gen_range(0.1..=5.0);
            let g = rng.gen_range(0.0..=PI);
            let wetting = rng.gen_range(0.01..=PI - 0.01);
            SampleSet { params: DimensionlessParams::new(a, c, g).expect("sampled in range"), wetting }
        })
        .collect()
}

/// Suite settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub sets: usize,
    /// Parameter sets used for the grid-based energy checks.
    pub grid_sets: usize,
    pub grid: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: 20_240_601, sets: 200, grid_sets: 50, grid: 200 }
    }
}

const CLOSED_FORM_TOL: f64 = 1e-8;

/// Tolerance on derivatives checked by central differences.
const FD_TOL: f64 = 1e-6;

/// Runs every check over random parameter sets.
pub fn run_suite(config: &SuiteConfig) -> Vec<OracleReport> {
    let sets = random_sets(config.seed, config.sets);

    type Check = (&'static str, f64, fn(&SampleSet, &mut Tally));
    let checks: Vec<Check> = vec![
        ("surface_energy", CLOSED_FORM_TOL, |s, t| {
            t.compare_result(surface_energy_quadrature(s.wetting, &s.params), total_energy(s.wetting, &s.params).surface)
        }),
        ("fluid_energy_wetted", CLOSED_FORM_TOL, |s, t| {
            t.compare_result(wetted_fluid_quadrature(s.wetting, &s.params), total_energy(s.wetting, &s.params).fluid_wetted)
        }),
        ("fluid_energy_meniscus", CLOSED_FORM_TOL, |s, t| {
            t.compare_result(
                meniscus_fluid_quadrature(s.wetting, &s.params),
                total_energy(s.wetting, &s.params).fluid_meniscus,
            )
        }),
        ("gravity_energy", CLOSED_FORM_TOL, |s, t| {
            // mg·h, with the weight integrated as a force from the level.
            let p = &s.params;
            let weight = p.mass_ratio() * p.bond_number();
            let h = height(s.wetting, p);
            t.compare_result(Integrator::default().integrate(|_| weight, 0.0, h), total_energy(s.wetting, p).gravity)
        }),
        ("wetting_energy", CLOSED_FORM_TOL, |s, t| {
            let gamma = s.params.contact_angle();
            t.compare_result(
                Integrator::default().integrate(|_| -2.0 * gamma.cos(), 0.0, s.wetting),
                total_energy(s.wetting, &s.params).wetting,
            )
        }),
        ("buoyancy_force", CLOSED_FORM_TOL, |s, t| {
            t.compare_result(buoyancy_quadrature(s.wetting, &s.params), buoyancy_force(s.wetting, &s.params))
        }),
        ("total_force", CLOSED_FORM_TOL, |s, t| {
            let p = &s.params;
            let weight = -p.mass_ratio() * p.bond_number();
            let tension = -2.0 * (s.wetting + p.contact_angle()).sin();
            let assembled = buoyancy_quadrature(s.wetting, p).map(|b| weight + tension + b);
            t.compare_result(assembled, total_force(s.wetting, p))
        }),
        ("height_dual_formula", CLOSED_FORM_TOL, |s, t| {
            // Centre height as contact height plus the arc's vertical extent.
            let p = &s.params;
            let contact = meniscus_height(inclination(s.wetting, p.contact_angle()), p.capillary_ratio());
            t.compare(contact + s.wetting.cos(), height(s.wetting, p))
        }),
        ("height_slope", FD_TOL, |s, t| {
            let p = &s.params;
            t.compare(central_difference(|x| height(x, p), s.wetting), dheight_dphi0(s.wetting, p))
        }),
        ("force_slope", FD_TOL, |s, t| {
            let p = &s.params;
            t.compare(central_difference(|x| total_force(x, p), s.wetting), dforce_dphi0(s.wetting, p))
        }),
        ("force_curvature", FD_TOL, |s, t| {
            let p = &s.params;
            t.compare(central_difference(|x| dforce_dphi0(x, p), s.wetting), d2force_dphi02(s.wetting, p))
        }),
        ("trig_series", 1e-12, |s, t| {
            t.compare(TrigSeries::new(&s.params).evaluate(s.wetting), total_force(s.wetting, &s.params))
        }),
        ("archimedes_wetted_region", CLOSED_FORM_TOL, |s, t| {
            let p = &s.params;
            t.compare(p.bond_number() * wetted_region_area(s.wetting, p), buoyancy_force(s.wetting, p))
        }),
        ("profile_ode_residual", 1e-4, |s, t| {
            let p = &s.params;
            let psi0 = inclination(s.wetting, p.contact_angle());
            if psi0.abs() <= 2e-3 {
                return;
            }
            let c = p.capillary_ratio();
            match interface_profile(s.wetting, p, 8000, 1e-3) {
                Ok(prof) => {
                    for w in prof.samples.windows(2) {
                        let ds = (w[1].x - w[0].x).hypot(w[1].u - w[0].u);
                        let mid = 0.5 * (w[0].psi + w[1].psi);
                        let curvature = c * c * meniscus_height(mid, c);
                        t.compare((w[1].psi - w[0].psi) / ds, curvature);
                    }
                }
                Err(_) => t.record(f64::INFINITY, f64::INFINITY),
            }
        }),
    ];

    let mut reports: Vec<OracleReport> = checks
        .par_iter()
        .map(|(name, tol, check)| {
            sets.iter()
                .fold(Tally::new(name, *tol), |mut tally, s| {
                    check(s, &mut tally);
                    tally
                })
                .report()
        })
        .collect();

    reports.push(archimedes_segment_gap(&sets));
    reports.push(quadrature_convergence(&sets));

    let grid_sets = &sets[..config.grid_sets.min(sets.len())];
    let merge = |name: &str, tol: f64, f: &(dyn Fn(&DimensionlessParams) -> OracleReport + Sync)| {
        grid_sets
            .par_iter()
            .map(|s| {
                let r = f(&s.params);
                let mut t = Tally::new(name, tol);
                t.max_abs = r.max_abs_err;
                t.max_rel = r.max_rel_err;
                t.samples = r.samples;
                t.failed = !r.passed;
                t
            })
            .reduce(|| Tally::new(name, tol), Tally::merge)
            .report()
    };
    reports.push(merge("energy_force_identity", 1e-6, &|p| energy_force_identity_check(p, config.grid)));
    reports.push(merge("energy_slope_factored", 1e-10, &|p| energy_slope_factored_check(p, config.grid)));
    reports.push(merge("fourier_projection", 1e-8, &fourier_projection_check));
    reports
}

/// Minimum contact height for the segment comparison.
const MENISCUS_RISE_FLOOR: f64 = 1e-6;

/// Buoyancy differs from the weight of displaced liquid below the level
/// whenever the contact line sits off the level. The report carries the
/// smallest relative gap `|segment − region| / |region|` in its error
/// fields, and passes when every gap is positive.
fn archimedes_segment_gap(sets: &[SampleSet]) -> OracleReport {
    let mut smallest = f64::INFINITY;
    let mut smallest_rel = f64::INFINITY;
    let mut samples = 0;
    for s in sets {
        let p = &s.params;
        let rise = meniscus_height(inclination(s.wetting, p.contact_angle()), p.capillary_ratio());
        if rise.abs() <= MENISCUS_RISE_FLOOR {
            continue;
        }
        samples += 1;
        let region = wetted_region_area(s.wetting, p);
        let gap = (submerged_segment_area(s.wetting, p) - region).abs();
        smallest = smallest.min(gap);
        smallest_rel = smallest_rel.min(gap / region.abs().max(1.0));
    }
    OracleReport {
        name: "archimedes_segment_gap".into(),
        max_abs_err: smallest,
        max_rel_err: smallest_rel,
        samples,
        tolerance: 0.0,
        passed: samples > 0 && smallest > 0.0,
    }
}

/// The surface-energy quadrature at tolerances `t` and `t/10` agrees to
/// within `10t`.
fn quadrature_convergence(sets: &[SampleSet]) -> OracleReport {
    let t = 1e-8;
    let coarse = Integrator::with_tolerance(t);
    let fine = Integrator::with_tolerance(t / 10.0);
    let mut tally = Tally::new("quadrature_convergence", 10.0 * t);
    for s in sets {
        let a = surface_energy_with(&coarse, s.wetting, &s.params);
        let b = surface_energy_with(&fine, s.wetting, &s.params);
        match (a, b) {
            (Ok(a), Ok(b)) => {
                let abs = (a - b).abs();
                tally.record(abs, abs);
            }
            _ => tally.record(f64::INFINITY, f64::INFINITY),
        }
    }
    tally.report()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn params(a: f64, c: f64, g: f64) -> DimensionlessParams {
        DimensionlessParams::new(a, c, g).unwrap()
    }

    #[test]
    fn flat_interface_surface_energy() {
        let v = surface_energy_quadrature(FRAC_PI_2, &params(1.0, 2.0, FRAC_PI_2)).unwrap();
        assert_eq!(v, -2.0);
    }

    #[test]
    fn surface_energy_both_signs() {
        for &(phi0, g) in &[(0.4, 0.3), (2.8, 2.9), (1.0, 0.1), (3.0, PI)] {
            let p = params(1.0, 1.3, g);
            let q = surface_energy_quadrature(phi0, &p).unwrap();
            assert!((q - total_energy(phi0, &p).surface).abs() < 1e-9, "{phi0} {g}");
        }
    }

    #[test]
    fn zero_wetting_fluid_energy() {
        assert_eq!(wetted_fluid_quadrature(0.0, &params(1.0, 1.0, 1.0)).unwrap(), 0.0);
        assert_eq!(buoyancy_quadrature(0.0, &params(1.0, 1.0, 1.0)).unwrap(), 0.0);
    }

    #[test]
    fn fully_submerged_buoyancy_is_disc_area() {
        let p = params(1.0, 1.7, PI);
        let f = buoyancy_quadrature(PI, &p).unwrap();
        assert!((f - p.bond_number() * PI).abs() < 1e-9);
        assert!((wetted_region_area(PI, &p) - PI).abs() < 1e-12);
    }

    #[test]
    fn segment_and_region_agree_only_without_meniscus() {
        // γ = π/2, φ0 = π/2: flat interface, no meniscus rise.
        let p = params(1.0, 1.0, FRAC_PI_2);
        assert!((submerged_segment_area(FRAC_PI_2, &p) - wetted_region_area(FRAC_PI_2, &p)).abs() < 1e-12);
        let p = params(1.0, 1.0, 0.5);
        assert!((submerged_segment_area(1.0, &p) - wetted_region_area(1.0, &p)).abs() > 1e-3);
    }

    #[test]
    fn fig9_identity_passes() {
        assert!(energy_force_identity_check(&params(4.0, 1.0, FRAC_PI_2), 200).passed);
        assert!(energy_slope_factored_check(&params(4.0, 1.0, FRAC_PI_2), 200).passed);
    }

    #[test]
    fn fourier_special_values() {
        let (cos, sin) = fourier_coefficients(&params(1.0, 1.0, 0.0));
        assert!(cos.iter().all(|v| v.abs() < 1e-12));
        assert!((sin[0] + 2.0).abs() < 1e-12);
        let (_, sin) = fourier_coefficients(&params(1.0, 1.0, FRAC_PI_2));
        assert!((sin[0] + 2f64.sqrt()).abs() < 1e-12);
    }
}
