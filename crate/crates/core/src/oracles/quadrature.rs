//! Adaptive Gauss–Kronrod (7, 15) quadrature.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

/// Gauss weights for the odd Kronrod nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Kronrod estimate and `|Kronrod − Gauss|` on `[lo, hi]`.
fn gk15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> (f64, f64) {
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(centre);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = half * XGK[i];
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Tolerances and subdivision cap for [`Integrator::integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integrator {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
}

impl Default for Integrator {
    fn default() -> Self {
        Self { abs_tol: 1e-10, rel_tol: 1e-10, max_depth: 40 }
    }
}

impl Integrator {
    pub fn with_tolerance(tol: f64) -> Self {
        Self { abs_tol: tol, rel_tol: tol, ..Self::default() }
    }

    /// `∫_lo^hi f`, with `lo > hi` giving the negated integral.
    ///
    /// Globally adaptive: the piece with the largest error estimate is halved
    /// until the summed estimate drops below `max(abs_tol, rel_tol·|I|)`.
    /// A piece that would need more than `max_depth` halvings is an error.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, lo: f64, hi: f64) -> Result<f64> {
        if lo == hi {
            return Ok(0.0);
        }
        if lo > hi {
            return self.integrate(f, hi, lo).map(|v| -v);
        }
        let (value, err) = gk15(&f, lo, hi);
        let mut pieces = BinaryHeap::new();
        pieces.push(Piece { lo, hi, value, err, depth: 0 });
        let mut total = value;
        let mut total_err = err;
        loop {
            if !total.is_finite() || !total_err.is_finite() {
                return Err(Error::QuadratureNonConvergence { lo, hi, estimate: total_err });
            }
            if total_err <= self.abs_tol.max(self.rel_tol * total.abs()) {
                return Ok(pieces.iter().map(|p| p.value).sum());
            }
            let worst = pieces.pop().expect("at least one piece");
            if worst.depth >= self.max_depth {
                return Err(Error::QuadratureNonConvergence { lo: worst.lo, hi: worst.hi, estimate: total_err });
            }
            let mid = 0.5 * (worst.lo + worst.hi);
            let (lv, le) = gk15(&f, worst.lo, mid);
            let (rv, re) = gk15(&f, mid, worst.hi);
            total += lv + rv - worst.value;
            total_err += le + re - worst.err;
            let depth = worst.depth + 1;
            pieces.push(Piece { lo: worst.lo, hi: mid, value: lv, err: le, depth });
            pieces.push(Piece { lo: mid, hi: worst.hi, value: rv, err: re, depth });
        }
    }
}

struct Piece {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
    depth: u32,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err).is_eq()
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// `∫_lo^hi f` with the default integrator.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<f64> {
    Integrator::default().integrate(f, lo, hi)
}
