//! Bracketing root search on a scalar function.

/// Bisection on `[lo, hi]` until the bracket is narrower than `tol`.
///
/// Returns `None` unless `f(lo)` and `f(hi)` differ in sign or one of them is
/// exactly zero.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Option<f64>
where
    F: Fn(f64) -> f64,
{
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Some(lo);
    }
    if f_hi == 0.0 {
        return Some(hi);
    }
    if f_lo.signum() == f_hi.signum() || !f_lo.is_finite() || !f_hi.is_finite() {
        return None;
    }
    // 200 halvings exhaust any f64 bracket.
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Some(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Some(lo + 0.5 * (hi - lo))
}

/// Intervals of a uniform `n`-point grid on `[lo, hi]` across which `f`
/// changes sign.
pub fn sign_changes<F>(f: F, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let step = (hi - lo) / (n - 1) as f64;
    let mut out = Vec::new();
    let mut x_prev = lo;
    let mut f_prev = f(lo);
    for i in 1..n {
        let x = if i == n - 1 { hi } else { lo + step * i as f64 };
        let fx = f(x);
        if f_prev != 0.0 && fx != 0.0 && f_prev.signum() != fx.signum() {
            out.push((x_prev, x));
        }
        x_prev = x;
        f_prev = fx;
    }
    out
}
