//! Closed-form model of a horizontal cylinder resting on an unbounded bath.
//!
//! Everything here is dimensionless. Lengths are in units of the cylinder
//! radius `a`, forces in units of `σ` (per unit cylinder length) and
//! energies in units of `σ·a`. The state of the system is the wetting
//! angle `φ0`, the half-angle of the wetted arc measured from the downward
//! vertical. The meniscus inclination at the contact line follows from the
//! contact angle `γ` as `ψ0 = φ0 + γ − π`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Dimensionless parameters `(A, C, γ)`.
///
/// `A = m/(a²ρ)` is the mass ratio, `C = a·√(ρg/σ)` the ratio of the radius
/// to the capillary length and `γ` the contact angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimensionlessParams {
    mass_ratio: f64,
    capillary_ratio: f64,
    contact_angle: f64,
    exploratory: bool,
}

impl DimensionlessParams {
    /// Standard mode: `A > 0`, `C > 0`, `γ ∈ [0, π]`.
    pub fn new(mass_ratio: f64, capillary_ratio: f64, contact_angle: f64) -> Result<Self> {
        Self::build(mass_ratio, capillary_ratio, contact_angle, false)
    }

    /// Exploratory mode, which also admits `A ≤ 0` (a body lighter than air).
    pub fn exploratory(mass_ratio: f64, capillary_ratio: f64, contact_angle: f64) -> Result<Self> {
        Self::build(mass_ratio, capillary_ratio, contact_angle, true)
    }

    fn build(mass_ratio: f64, capillary_ratio: f64, contact_angle: f64, exploratory: bool) -> Result<Self> {
        finite("A", mass_ratio)?;
        finite("C", capillary_ratio)?;
        finite("gamma", contact_angle)?;
        if capillary_ratio <= 0.0 {
            return Err(Error::NonPositive { field: "C", value: capillary_ratio });
        }
        if !(0.0..=PI).contains(&contact_angle) {
            return Err(Error::ContactAngleOutOfRange(contact_angle));
        }
        if !exploratory && mass_ratio <= 0.0 {
            return Err(Error::NonPositiveMassRatio(mass_ratio));
        }
        Ok(Self { mass_ratio, capillary_ratio, contact_angle, exploratory })
    }

    /// Same `C` and `γ` with a different mass ratio, keeping the mode.
    pub fn with_mass_ratio(&self, mass_ratio: f64) -> Result<Self> {
        Self::build(mass_ratio, self.capillary_ratio, self.contact_angle, self.exploratory)
    }

    pub fn mass_ratio(&self) -> f64 {
        self.mass_ratio
    }

    pub fn capillary_ratio(&self) -> f64 {
        self.capillary_ratio
    }

    pub fn contact_angle(&self) -> f64 {
        self.contact_angle
    }

    pub fn is_exploratory(&self) -> bool {
        self.exploratory
    }

    /// Bond number `B = C²`.
    pub fn bond_number(&self) -> f64 {
        self.capillary_ratio * self.capillary_ratio
    }

    /// Scale of the force values, used to size absolute tolerances.
    pub(crate) fn force_scale(&self) -> f64 {
        1.0 + self.bond_number() * (1.0 + self.mass_ratio.abs())
    }
}

/// Physical parameters, per unit length of cylinder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalParams {
    /// Mass per unit length `m`.
    pub mass: f64,
    /// Density difference between liquid and air `ρ`.
    pub density: f64,
    /// Liquid/air surface tension `σ`.
    pub surface_tension: f64,
    /// Gravitational acceleration `g`.
    pub gravity: f64,
    /// Cylinder radius `a`.
    pub radius: f64,
    /// Contact angle `γ` in radians.
    pub contact_angle: f64,
}

impl PhysicalParams {
    /// Capillary constant `κ = ρg/σ`.
    pub fn capillary_constant(&self) -> f64 {
        self.density * self.gravity / self.surface_tension
    }

    /// `A = m/(a²ρ)`, `C = a·√(ρg/σ)`, `γ` unchanged.
    pub fn to_dimensionless(&self) -> Result<DimensionlessParams> {
        let fields = [
            ("m", self.mass),
            ("rho", self.density),
            ("sigma", self.surface_tension),
            ("g", self.gravity),
            ("a", self.radius),
        ];
        for (field, value) in fields {
            finite(field, value)?;
            if value <= 0.0 {
                return Err(Error::NonPositive { field, value });
            }
        }
        let mass_ratio = self.mass / (self.radius * self.radius * self.density);
        let capillary_ratio = self.radius * self.capillary_constant().sqrt();
        DimensionlessParams::new(mass_ratio, capillary_ratio, self.contact_angle)
    }
}

fn finite(field: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { field, value })
    }
}

/// Rejects wetting angles outside `[0, π]`.
pub fn check_wetting_angle(phi0: f64) -> Result<f64> {
    if phi0.is_finite() && (0.0..=PI).contains(&phi0) {
        Ok(phi0)
    } else {
        Err(Error::WettingAngleOutOfRange(phi0))
    }
}

/// Wetting angle and the meniscus inclination it forces at the contact line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Angles {
    phi0: f64,
    psi0: f64,
}

impl Angles {
    pub fn new(phi0: f64, contact_angle: f64) -> Result<Self> {
        check_wetting_angle(phi0)?;
        if !(0.0..=PI).contains(&contact_angle) {
            return Err(Error::ContactAngleOutOfRange(contact_angle));
        }
        Ok(Self { phi0, psi0: inclination(phi0, contact_angle) })
    }

    pub fn wetting(&self) -> f64 {
        self.phi0
    }

    pub fn inclination(&self) -> f64 {
        self.psi0
    }
}

/// `ψ0 = φ0 + γ − π`.
#[inline]
pub fn inclination(phi0: f64, contact_angle: f64) -> f64 {
    phi0 + contact_angle - PI
}

/// Half of `φ0 + γ`, the angle that shows up throughout the closed forms.
#[inline]
fn half_sum(phi0: f64, p: &DimensionlessParams) -> f64 {
    0.5 * (phi0 + p.contact_angle)
}

/// Height of the cylinder centre above the free level, `h/a`.
pub fn height(phi0: f64, p: &DimensionlessParams) -> f64 {
    phi0.cos() + 2.0 / p.capillary_ratio * half_sum(phi0, p).cos()
}

/// `d(h/a)/dφ0`. Negative on `(0, π)`.
pub fn dheight_dphi0(phi0: f64, p: &DimensionlessParams) -> f64 {
    -phi0.sin() - half_sum(phi0, p).sin() / p.capillary_ratio
}

/// Total vertical force `F_T/σ`: weight, surface tension and buoyancy.
pub fn total_force(phi0: f64, p: &DimensionlessParams) -> f64 {
    -p.mass_ratio * p.bond_number() - 2.0 * (phi0 + p.contact_angle).sin() + buoyancy_force(phi0, p)
}

/// Upward pressure force `F_B/σ` on the wetted arc. It equals `C²` times
/// the area between the arc and the undisturbed level, not the submerged
/// area of the disc.
pub fn buoyancy_force(phi0: f64, p: &DimensionlessParams) -> f64 {
    let c = p.capillary_ratio;
    let bond = c * c;
    -4.0 * c * half_sum(phi0, p).cos() * phi0.sin() - 0.5 * bond * (2.0 * phi0).sin() + bond * phi0
}

/// `dF̂_T/dφ0`. The mass ratio only enters the force as a constant, so it
/// drops out here.
pub fn dforce_dphi0(phi0: f64, p: &DimensionlessParams) -> f64 {
    let c = p.capillary_ratio;
    let theta = half_sum(phi0, p);
    -2.0 * (phi0 + p.contact_angle).cos() + 2.0 * c * theta.sin() * phi0.sin()
        - 4.0 * c * theta.cos() * phi0.cos()
        + c * c * (1.0 - (2.0 * phi0).cos())
}

/// `d²F̂_T/dφ0²`.
pub fn d2force_dphi02(phi0: f64, p: &DimensionlessParams) -> f64 {
    let c = p.capillary_ratio;
    let theta = half_sum(phi0, p);
    2.0 * (phi0 + p.contact_angle).sin()
        + 5.0 * c * theta.cos() * phi0.sin()
        + 4.0 * c * theta.sin() * phi0.cos()
        + 2.0 * c * c * (2.0 * phi0).sin()
}

/// Energy terms relative to the undisturbed bath, in units of `σ·a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyBreakdown {
    /// Potential energy of the cylinder, `mgh`.
    pub gravity: f64,
    /// Wetting (adhesion) energy, `−2σaφ0 cos γ`.
    pub wetting: f64,
    /// Surface energy of both menisci plus the removed flat surface.
    pub surface: f64,
    /// Liquid potential energy beneath the wetted arc.
    pub fluid_wetted: f64,
    /// Liquid potential energy beneath the menisci.
    pub fluid_meniscus: f64,
    pub total: f64,
}

/// Total energy and its parts at wetting angle `φ0`.
pub fn total_energy(phi0: f64, p: &DimensionlessParams) -> EnergyBreakdown {
    let c = p.capillary_ratio;
    let bond = c * c;
    let psi0 = inclination(phi0, p.contact_angle);
    let half = 0.5 * psi0;
    let (s_half, c_half) = half.sin_cos();

    let gravity = p.mass_ratio * bond * height(phi0, p);
    let wetting = -2.0 * phi0 * p.contact_angle.cos();
    let surface = 4.0 / c * (1.0 - c_half) - 2.0 * phi0.sin();
    let fluid_wetted = bond * ((3.0 * phi0).sin() / 12.0 - phi0 * phi0.cos() + 0.75 * phi0.sin())
        - c * s_half * (2.0 * phi0).sin()
        + 2.0 * c * phi0 * s_half
        + 4.0 * s_half * s_half * phi0.sin();
    let fluid_meniscus = -4.0 / (3.0 * c) * (1.0 - 2.0 * c_half + c_half * psi0.cos());

    EnergyBreakdown {
        gravity,
        wetting,
        surface,
        fluid_wetted,
        fluid_meniscus,
        total: gravity + wetting + surface + fluid_wetted + fluid_meniscus,
    }
}

/// Default lower bound on `|ψ|` when sampling a meniscus.
pub const DEFAULT_PSI_CUTOFF: f64 = 1e-6;

/// Which side of the cylinder a profile describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
}

/// One point on the meniscus: inclination and position, in units of `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileSample {
    pub psi: f64,
    pub x: f64,
    pub u: f64,
}

/// Sampled right-hand meniscus, ordered from the contact line outwards.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterfaceProfile {
    pub samples: Vec<ProfileSample>,
    pub side: Side,
    pub psi0: f64,
    /// Contact point `(x0, u0)`.
    pub contact: (f64, f64),
    /// Set when `ψ0 = 0`: the bath stays flat up to the cylinder.
    pub flat: bool,
}

/// Liquid height `u(ψ)/a` on the meniscus.
#[inline]
pub fn meniscus_height(psi: f64, capillary_ratio: f64) -> f64 {
    -2.0 / capillary_ratio * (0.5 * psi).sin()
}

/// `2 cos(ψ/2) + ln|tan(ψ/4)|`; `x(ψ)` is an affine function of it.
#[inline]
fn reach_potential(psi: f64) -> f64 {
    2.0 * (0.5 * psi).cos() + (0.25 * psi).tan().abs().ln()
}

/// Horizontal position `x(ψ)/a` of the meniscus point with inclination `ψ`.
pub fn meniscus_reach(psi: f64, phi0: f64, p: &DimensionlessParams) -> f64 {
    let psi0 = inclination(phi0, p.contact_angle);
    -(reach_potential(psi) - reach_potential(psi0)) / p.capillary_ratio + phi0.sin()
}

/// Samples the right meniscus at `n` inclinations between `ψ0` and
/// `sign(ψ0)·psi_cutoff`. `x` diverges logarithmically as `ψ → 0`, so the
/// cutoff is mandatory.
pub fn interface_profile(
    phi0: f64,
    p: &DimensionlessParams,
    n: usize,
    psi_cutoff: f64,
) -> Result<InterfaceProfile> {
    check_wetting_angle(phi0)?;
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    let psi0 = inclination(phi0, p.contact_angle);
    let c = p.capillary_ratio;
    let x0 = phi0.sin();

    if psi0 == 0.0 {
        if !(psi_cutoff > 0.0 && psi_cutoff.is_finite()) {
            return Err(Error::InvalidCutoff { cutoff: psi_cutoff, inclination: psi0 });
        }
        let far = x0 + ((4.0 / psi_cutoff).ln() / c).max(1.0);
        let samples = vec![
            ProfileSample { psi: 0.0, x: x0, u: 0.0 },
            ProfileSample { psi: 0.0, x: far, u: 0.0 },
        ];
        return Ok(InterfaceProfile { samples, side: Side::Right, psi0, contact: (x0, 0.0), flat: true });
    }
    if !(psi_cutoff > 0.0 && psi_cutoff < psi0.abs()) {
        return Err(Error::InvalidCutoff { cutoff: psi_cutoff, inclination: psi0 });
    }

    let end = psi_cutoff.copysign(psi0);
    let step = (end - psi0) / (n - 1) as f64;
    let samples = (0..n)
        .map(|i| {
            let psi = if i == n - 1 { end } else { psi0 + step * i as f64 };
            ProfileSample { psi, x: meniscus_reach(psi, phi0, p), u: meniscus_height(psi, c) }
        })
        .collect();
    Ok(InterfaceProfile {
        samples,
        side: Side::Right,
        psi0,
        contact: (x0, meniscus_height(psi0, c)),
        flat: false,
    })
}

/// The force rewritten over the half-angle harmonics of `φ0`, period `4π`.
///
/// `F̂_T = −A·C² + Σ (a_n cos(nφ0/2) + b_n sin(nφ0/2)) + C²·φ0`, `n = 1..4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrigSeries {
    /// Cosine coefficients `a_1..a_4`.
    pub cos: [f64; 4],
    /// Sine coefficients `b_1..b_4`.
    pub sin: [f64; 4],
    constant: f64,
    slope: f64,
}

impl TrigSeries {
    pub fn new(p: &DimensionlessParams) -> Self {
        let c = p.capillary_ratio;
        let g = p.contact_angle;
        let (sh, ch) = (0.5 * g).sin_cos();
        let (sg, cg) = g.sin_cos();
        Self {
            cos: [2.0 * c * sh, -2.0 * sg, -2.0 * c * sh, 0.0],
            sin: [-2.0 * c * ch, -2.0 * cg, -2.0 * c * ch, -0.5 * c * c],
            constant: -p.mass_ratio * c * c,
            slope: c * c,
        }
    }

    /// The periodic part alone (force minus constant and linear terms).
    pub fn periodic(&self, phi0: f64) -> f64 {
        (1..=4)
            .map(|n| {
                let arg = 0.5 * n as f64 * phi0;
                self.cos[n - 1] * arg.cos() + self.sin[n - 1] * arg.sin()
            })
            .sum()
    }

    pub fn evaluate(&self, phi0: f64) -> f64 {
        self.constant + self.periodic(phi0) + self.slope * phi0
    }
}
