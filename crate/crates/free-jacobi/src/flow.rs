//! The characteristic flow of the transport equation satisfied by the
//! Herglotz transform of `mu_t`: the trajectory `phi(t, y)` on the half-plane
//! coordinate `y = (1+z)/(1-z)`, its disc counterpart `psi(t, z)`, the
//! conserved-quantity identity linking the flow to the moment engine, blow-up
//! solving, and the radial-limit extraction of the atom of `mu_t` at `z = 1`.
//!
//! Everything is restricted to real starting points `y > 0`
//! (`z` in `(-1, 1)`), which is all the atom-weight argument uses.

use std::fmt;

use num_complex::Complex64;

use crate::moments::{float_moments, DEFAULT_ODE_STEP};
use crate::rank::RankParam;
use crate::roots::{bisect_newton, bisect_newton_growing, RootError};

#[derive(Debug, Clone, PartialEq)]
pub enum FlowError {
    /// Requested time at or past the blow-up of the trajectory.
    PastBlowup { t_star: f64 },
    /// Rank `theta = 1` or `theta -> kappa = +-1`; the measure is `delta_1`
    /// and the blow-up equation degenerates.
    Degenerate,
    BadArgument(String),
    /// The disc image left the domain where the Herglotz series converges.
    OutsideDisc { psi: f64 },
    Root(RootError),
}

impl fmt::Display for FlowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlowError::PastBlowup { t_star } => {
                write!(f, "time past trajectory blow-up T* = {t_star}")
            }
            FlowError::Degenerate => write!(f, "kappa = +-1 is degenerate (mu_t = delta_1)"),
            FlowError::BadArgument(s) => write!(f, "bad argument: {s}"),
            FlowError::OutsideDisc { psi } => {
                write!(f, "flow image psi = {psi} outside the open unit disc")
            }
            FlowError::Root(e) => write!(f, "root finding failed: {e}"),
        }
    }
}

impl std::error::Error for FlowError {}

impl From<RootError> for FlowError {
    fn from(e: RootError) -> Self {
        FlowError::Root(e)
    }
}

/// Constants of the characteristic trajectory through `y > 0`:
/// `a = eps + (1-eps) y^2`, `b = a + eps`, and the signed
/// `lambda = (1-eps)^2 y^2 (1 - y^2) / (1 + sqrt a)^2`
/// (positive below the fixed point `y = 1`, negative above).
#[derive(Debug, Clone)]
pub struct FlowParams {
    y: f64,
    eps: f64,
    a: f64,
    b: f64,
    lambda: f64,
}

impl FlowParams {
    pub fn new(rank: &RankParam, y: f64) -> Result<Self, FlowError> {
        if !(y > 0.0) || !y.is_finite() {
            return Err(FlowError::BadArgument(format!("y = {y} must be > 0")));
        }
        let eps = rank.eps_f64();
        let a = eps + (1.0 - eps) * y * y;
        let b = a + eps;
        let sq = a.sqrt();
        let lambda = (1.0 - eps).powi(2) * y * y * (1.0 - y * y) / (1.0 + sq).powi(2);
        Ok(FlowParams { y, eps, a, b, lambda })
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Lifespan of the trajectory. Finite exactly when `y > 1`; in that case
    /// `e^{sqrt(a) T*} = (sqrt a + 1)(sqrt a - |kappa|) /
    /// ((sqrt a - 1)(sqrt a + |kappa|))`.
    pub fn blowup_time(&self) -> Option<f64> {
        if self.y <= 1.0 {
            return None;
        }
        if self.eps >= 1.0 {
            let y2 = self.y * self.y;
            return Some((y2 / (y2 - 1.0)).ln());
        }
        let s = self.a.sqrt();
        let k = self.eps.sqrt();
        let e_star = (s + 1.0) * (s - k) / ((s - 1.0) * (s + k));
        Some(e_star.ln() / s)
    }

    /// Time at which a trajectory started in `(0, 1)` crosses zero (the
    /// double zero of `phi^2`); `None` when it never does (`y >= 1`, or the
    /// degenerate rank where `phi` decays to 0 instead of -1).
    pub fn sign_flip_time(&self) -> Option<f64> {
        if self.y >= 1.0 || self.eps >= 1.0 {
            return None;
        }
        let s = self.a.sqrt();
        // E_0 = (a - eps)/lambda = (1 + sqrt a)^2 / ((1-eps)(1-y^2))
        let e0 = (self.a - self.eps) / self.lambda;
        Some(e0.ln() / s)
    }

    /// `phi^2(t, y)` from the closed flow formula; `phi^2(0, y) = y^2`.
    pub fn phi_squared(&self, t: f64) -> Result<f64, FlowError> {
        if !(t >= 0.0) {
            return Err(FlowError::BadArgument(format!("t = {t} must be >= 0")));
        }
        if let Some(t_star) = self.blowup_time() {
            if t >= t_star {
                return Err(FlowError::PastBlowup { t_star });
            }
        }
        if (self.y - 1.0).abs() == 0.0 {
            return Ok(1.0);
        }
        if self.eps >= 1.0 {
            let y2 = self.y * self.y;
            return Ok(y2 / (y2 - (y2 - 1.0) * t.exp()));
        }
        let e = (self.a.sqrt() * t).exp();
        let denom = (self.b + self.lambda * e).powi(2) - 4.0 * self.eps * self.a;
        Ok(1.0 - 4.0 * self.a * self.lambda * e / denom)
    }

    /// Signed trajectory `phi(t, y)`: positive branch above the fixed point,
    /// continuity-tracked sign below it (the sign flips at the double zero of
    /// `phi^2`).
    pub fn phi(&self, t: f64) -> Result<f64, FlowError> {
        let p2 = self.phi_squared(t)?;
        let root = p2.max(0.0).sqrt();
        if self.y >= 1.0 {
            return Ok(root);
        }
        match self.sign_flip_time() {
            Some(t0) if t > t0 => Ok(-root),
            _ => Ok(root),
        }
    }
}

/// Disc form of the flow: `psi(t, z) = (phi(t,y) - 1)/(phi(t,y) + 1)` with
/// `y = (1+z)/(1-z)`.
///
/// For `z in (0, 1)` the image stays in `(z, 1)` up to the blow-up time; for
/// `z in (-1, 0)` the trajectory is global but the image leaves the disc once
/// `phi` turns negative (`|phi| < 1` throughout, per the transport analysis).
pub fn psi(rank: &RankParam, t: f64, z: f64) -> Result<f64, FlowError> {
    if !(z > -1.0 && z < 1.0) {
        return Err(FlowError::BadArgument(format!("z = {z} must be in (-1, 1)")));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    let y = (1.0 + z) / (1.0 - z);
    let params = FlowParams::new(rank, y)?;
    let phi = params.phi(t)?;
    Ok((phi - 1.0) / (phi + 1.0))
}

/// Residual of the conserved-quantity identity
/// `H(t, psi(t,z))^2 = kappa^2 ((1+psi)/(1-psi))^2 + (1-kappa^2) ((1+z)/(1-z))^2`,
/// with the left side evaluated through the truncated moment series of order
/// `n_terms`. This is the master cross-check between the flow and the moment
/// engine.
pub fn conserved_identity_residual(
    rank: &RankParam,
    t: f64,
    z: f64,
    n_terms: usize,
) -> Result<f64, FlowError> {
    let psi_t = psi(rank, t, z)?;
    if psi_t.abs() >= 1.0 {
        return Err(FlowError::OutsideDisc { psi: psi_t });
    }
    let r = float_moments(rank, n_terms, t, DEFAULT_ODE_STEP);
    let mut h = Complex64::new(1.0, 0.0);
    let mut zp = 1.0;
    for rn in r.iter().take(n_terms) {
        zp *= psi_t;
        h += 2.0 * rn * zp;
    }
    let eps = rank.eps_f64();
    let y = (1.0 + z) / (1.0 - z);
    let y_psi = (1.0 + psi_t) / (1.0 - psi_t);
    let rhs = eps * y_psi * y_psi + (1.0 - eps) * y * y;
    Ok((h * h - Complex64::new(rhs, 0.0)).norm())
}

/// Location of the blow-up of `y -> phi(t, y)` at a fixed time `t > 0`.
#[derive(Debug, Clone)]
pub struct BlowupPoint {
    /// Solution `a_t` of the blow-up equation.
    pub a: f64,
    /// Half-plane coordinate `y_t = sqrt((a_t - eps)/(1 - eps))`.
    pub y: f64,
    /// Disc coordinate `z_t = (y_t - 1)/(y_t + 1)`, in `(0, 1)`.
    pub z: f64,
    /// Back-substitution residual of the defining equation.
    pub residual: f64,
}

/// Solve the blow-up equation for fixed `t > 0`.
///
/// For `0 < |kappa| < 1` this is
/// `e^{sqrt(a) t} (|kappa| + sqrt a) = (sqrt a + 1)/(sqrt a - 1) (sqrt a - |kappa|)`
/// solved for `sqrt a` in `(1, oo)` by bracketed bisection with Newton polish;
/// for `kappa = 0` it reduces to `z e^{t (1+z)/(1-z)} = 1` on `(0, 1)`.
pub fn blowup_point(rank: &RankParam, t: f64) -> Result<BlowupPoint, FlowError> {
    if !(t > 0.0) {
        return Err(FlowError::BadArgument(format!("t = {t} must be > 0")));
    }
    if rank.is_degenerate() {
        return Err(FlowError::Degenerate);
    }
    let eps = rank.eps_f64();
    let kappa = eps.sqrt();

    if rank.is_balanced() {
        // z e^{t(1+z)/(1-z)} = 1, monotone in z on (0, 1)
        let f = |z: f64| z.ln() + t * (1.0 + z) / (1.0 - z);
        let z = bisect_newton(&f, 1e-300, 1.0 - 1e-15)?;
        let y = (1.0 + z) / (1.0 - z);
        let residual = (z * (t * (1.0 + z) / (1.0 - z)).exp() - 1.0).abs();
        return Ok(BlowupPoint { a: y * y, y, z, residual });
    }

    // g(s) = e^{st}(kappa + s)(s - 1) - (s + 1)(s - kappa), root for s = sqrt(a) > 1
    let g = |s: f64| (s * t).exp() * (kappa + s) * (s - 1.0) - (s + 1.0) * (s - kappa);
    let s = bisect_newton_growing(&g, 1.0 + 1e-12, 0.25, 60)?;
    let a = s * s;
    let y = ((a - eps) / (1.0 - eps)).sqrt();
    let z = (y - 1.0) / (y + 1.0);
    let residual = ((s * t).exp() * (kappa + s) - (s + 1.0) / (s - 1.0) * (s - kappa)).abs();
    Ok(BlowupPoint { a, y, z, residual })
}

/// Weight that `mu_t` assigns to `z = 1` for any `t > 0`: `|kappa|`.
///
/// The numerical route behind this value is [`atom_limit_quantity`]: the
/// conserved identity scaled by `(1 - psi)^2` tends to `4 kappa^2` along
/// `z -> z_t`.
pub fn atom_weight(rank: &RankParam, t: f64) -> Result<f64, FlowError> {
    if !(t > 0.0) {
        return Err(FlowError::BadArgument(format!("t = {t} must be > 0")));
    }
    Ok(rank.kappa_f64().abs())
}

/// `(1 - psi)^2 [kappa^2 ((1+psi)/(1-psi))^2 + (1-kappa^2) y^2]
///  = kappa^2 (1+psi)^2 + (1-kappa^2) y^2 (1-psi)^2`,
/// the scaled squared Herglotz quantity whose limit along `z -> z_t` is
/// `4 kappa^2` (hence atom weight `|kappa|` after the radial-limit argument).
pub fn atom_limit_quantity(rank: &RankParam, t: f64, z: f64) -> Result<f64, FlowError> {
    let psi_t = psi(rank, t, z)?;
    let eps = rank.eps_f64();
    let y = (1.0 + z) / (1.0 - z);
    Ok(eps * (1.0 + psi_t).powi(2) + (1.0 - eps) * y * y * (1.0 - psi_t).powi(2))
}

/// Comparison-principle check: for `1 < y1 < y2`, the trajectory through `y2`
/// stays above the one through `y1` on every grid time before the earlier
/// blow-up, and blows up first.
pub fn monotonicity_check(
    rank: &RankParam,
    t_grid: &[f64],
    y1: f64,
    y2: f64,
) -> Result<bool, FlowError> {
    if !(1.0 < y1 && y1 < y2) {
        return Err(FlowError::BadArgument(format!(
            "need 1 < y1 < y2, got y1 = {y1}, y2 = {y2}"
        )));
    }
    let p1 = FlowParams::new(rank, y1)?;
    let p2 = FlowParams::new(rank, y2)?;
    let t1 = p1.blowup_time().unwrap_or(f64::INFINITY);
    let t2 = p2.blowup_time().unwrap_or(f64::INFINITY);
    if !(t2 < t1) {
        return Ok(false);
    }
    for &t in t_grid {
        if t >= t2 {
            continue;
        }
        let phi1 = p1.phi(t)?;
        let phi2 = p2.phi(t)?;
        if !(1.0 < phi1 && phi1 < phi2) {
            return Ok(false);
        }
    }
    Ok(true)
}
