//! Equilibria of a horizontal circular cylinder floating on a liquid bath
//! with surface tension.
//!
//! Lengths are scaled by the cylinder radius, forces per unit length by the
//! surface tension and energies per unit length by surface tension times
//! radius. A configuration is described by three numbers: the mass ratio
//! `A`, the capillary ratio `C = a/l_c` and the contact angle `γ`.

pub mod equilibria;
pub mod error;
pub mod intersection;
pub mod model;
pub mod oracles;
pub mod regions;
pub mod roots;

pub use equilibria::{
    asymptotic_critical_mass, critical_mass_ratio, critical_points, find_equilibria, AsymptoticRegime,
    CriticalKind, CriticalMass, CriticalPoint, Equilibrium, Stability,
};
pub use error::{Error, Result};
pub use intersection::{
    classify_equilibria, intersection_function, validity, ClassifiedEquilibrium, IntersectionRegime, ValidityReport,
};
pub use model::{
    height, interface_profile, total_energy, total_force, DimensionlessParams, EnergyBreakdown, InterfaceProfile,
    PhysicalParams,
};
pub use regions::{region_map, BoundaryCurve, CurveKind, RegionLabel, RegionMap, Window};
pub use oracles::{run_suite, OracleReport, SuiteConfig};
