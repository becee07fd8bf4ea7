//! Bracketed scalar root finding: bisection to near convergence, then a few
//! Newton polishing steps with a numerical derivative. Branch-safe near
//! singular endpoints, which is what the blow-up equations need.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum RootError {
    /// `f(a)` and `f(b)` have the same sign.
    NoSignChange { a: f64, b: f64 },
    /// Produced a non-finite iterate.
    NotFinite,
}

impl fmt::Display for RootError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootError::NoSignChange { a, b } => {
                write!(f, "no sign change on [{a}, {b}]")
            }
            RootError::NotFinite => write!(f, "root iteration left the finite range"),
        }
    }
}

impl std::error::Error for RootError {}

/// Find the root of `f` inside `[a, b]`, assuming a sign change.
///
/// Bisection runs until the bracket is ~1e-9 wide, then Newton (secant-style
/// derivative) polishes to machine precision while staying inside the
/// bracket.
pub fn bisect_newton<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<f64, RootError> {
    let (mut lo, mut hi) = (a, b);
    let mut flo = f(lo);
    let fhi = f(hi);
    if !(flo.is_finite() && fhi.is_finite()) {
        return Err(RootError::NotFinite);
    }
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(RootError::NoSignChange { a, b });
    }

    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if hi - lo < 1e-9 * (1.0 + mid.abs()) {
            break;
        }
        let fmid = f(mid);
        if !fmid.is_finite() {
            return Err(RootError::NotFinite);
        }
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }

    let mut x = 0.5 * (lo + hi);
    for _ in 0..6 {
        let fx = f(x);
        let h = 1e-7 * (1.0 + x.abs());
        let dfx = (f(x + h) - f(x - h)) / (2.0 * h);
        if dfx == 0.0 || !dfx.is_finite() {
            break;
        }
        let next = x - fx / dfx;
        if !next.is_finite() || next <= a || next >= b {
            break;
        }
        if (next - x).abs() < 1e-16 * (1.0 + x.abs()) {
            x = next;
            break;
        }
        x = next;
    }
    Ok(x)
}

/// Grow the upper end of `[lo, lo + step]` geometrically until `f` changes
/// sign, then solve. Used for roots whose distance from `lo` is not known
/// in advance.
pub fn bisect_newton_growing<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    step: f64,
    max_doublings: u32,
) -> Result<f64, RootError> {
    let flo = f(lo);
    let mut width = step;
    for _ in 0..max_doublings {
        let hi = lo + width;
        let fhi = f(hi);
        if fhi.is_finite() && flo.is_finite() && fhi.signum() != flo.signum() {
            return bisect_newton(f, lo, hi);
        }
        width *= 2.0;
    }
    Err(RootError::NoSignChange { a: lo, b: lo + width })
}
