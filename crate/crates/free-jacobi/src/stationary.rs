//! The stationary spectral distribution of `S U S U*` (`U` Haar unitary):
//! closed-form Herglotz transform, Lebesgue decomposition, and three
//! independent moment computations.
//!
//! The measure splits as `|kappa| delta_1` plus an absolutely continuous part
//! with density `sqrt(1 - kappa^2/sin^2 psi)` on the two arcs
//! `{|sin psi| >= |kappa|}`, stored here with respect to normalized Haar
//! measure `d psi / (2 pi)` (that convention is pinned by the total mass being
//! one).

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::integrate::adaptive_simpson;
use crate::moments::MomentError;
use crate::poly::{jacobi_p10, Poly};
use crate::rank::RankParam;
use crate::rational::{pochhammer, rat, rat_int, to_f64, Rational};

/// Herglotz transform of the stationary measure,
/// `H_inf(z) = sqrt(1 + 4 kappa^2 z / (1-z)^2)` with the principal branch
/// (the radicand stays off the negative reals on the open disc).
pub fn herglotz_stationary(rank: &RankParam, z: Complex64) -> Result<Complex64, MomentError> {
    if z.norm() >= 1.0 {
        return Err(MomentError::OutsideDisc { abs: z.norm() });
    }
    let eps = rank.eps_f64();
    let one = Complex64::new(1.0, 0.0);
    let w = one - z;
    Ok((one + 4.0 * eps * z / (w * w)).sqrt())
}

/// Atom-plus-density representation of a conjugation-invariant probability
/// measure on the unit circle. The density is taken with respect to
/// normalized Haar measure.
#[derive(Debug, Clone)]
pub struct CircleMeasure {
    atoms: Vec<(f64, f64)>,
    density: Density,
}

#[derive(Debug, Clone)]
enum Density {
    /// Haar measure (density identically one).
    Uniform,
    /// `sqrt(1 - kappa^2 / sin^2 psi)` on `{|sin psi| >= kappa_abs}`.
    TwoArcs { kappa_abs: f64 },
    /// No absolutely continuous part.
    None,
}

impl CircleMeasure {
    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    /// Density at angle `psi` with respect to `d psi / (2 pi)`.
    pub fn density(&self, psi: f64) -> f64 {
        match &self.density {
            Density::Uniform => 1.0,
            Density::None => 0.0,
            Density::TwoArcs { kappa_abs } => {
                let s = psi.sin().abs();
                if s > *kappa_abs {
                    (1.0 - kappa_abs * kappa_abs / (s * s)).sqrt()
                } else {
                    0.0
                }
            }
        }
    }

    /// Angular intervals carrying the absolutely continuous part.
    pub fn support_arcs(&self) -> Vec<(f64, f64)> {
        match &self.density {
            Density::Uniform => vec![(-PI, PI)],
            Density::None => vec![],
            Density::TwoArcs { kappa_abs } => {
                let psi0 = kappa_abs.asin();
                vec![(psi0, PI - psi0), (-PI + psi0, -psi0)]
            }
        }
    }

    /// `int cos(n psi) d mu`, atoms included; `n = 0` gives the total mass.
    ///
    /// On the arcs the substitutions `c = cos psi`, `c = c0 sin u` turn the
    /// vanishing-square-root endpoints into a smooth integrand, so plain
    /// adaptive Simpson reaches the requested tolerance.
    pub fn moment(&self, n: u32, tol: f64) -> f64 {
        let atom_part: f64 = self
            .atoms
            .iter()
            .map(|(angle, weight)| weight * (n as f64 * angle).cos())
            .sum();
        let ac_part = match &self.density {
            Density::None => 0.0,
            Density::Uniform => {
                if n == 0 {
                    1.0
                } else {
                    0.0
                }
            }
            Density::TwoArcs { kappa_abs } => {
                // (c0^2/pi) int_{-pi/2}^{pi/2} T_n(c0 sin u) cos^2 u / (1 - c0^2 sin^2 u) du
                let c0sq = 1.0 - kappa_abs * kappa_abs;
                let c0 = c0sq.sqrt();
                let f = |u: f64| {
                    let s = u.sin();
                    let c = c0 * s;
                    let cheb = (n as f64 * c.clamp(-1.0, 1.0).acos()).cos();
                    cheb * u.cos().powi(2) / (1.0 - c0sq * s * s)
                };
                c0sq / PI * adaptive_simpson(&f, -0.5 * PI, 0.5 * PI, tol * 0.1)
            }
        };
        atom_part + ac_part
    }

    /// Total mass (atoms plus quadrature of the density).
    pub fn total_mass(&self, tol: f64) -> f64 {
        self.moment(0, tol)
    }
}

/// Lebesgue decomposition of the stationary measure: atom of weight `|kappa|`
/// at `z = 1` plus the two-arc density.
pub fn stationary_measure(rank: &RankParam) -> CircleMeasure {
    if rank.is_balanced() {
        return CircleMeasure {
            atoms: vec![],
            density: Density::Uniform,
        };
    }
    if rank.is_degenerate() {
        return CircleMeasure {
            atoms: vec![(0.0, 1.0)],
            density: Density::None,
        };
    }
    let kappa_abs = rank.kappa_f64().abs();
    CircleMeasure {
        atoms: vec![(0.0, kappa_abs)],
        density: Density::TwoArcs { kappa_abs },
    }
}

/// Stationary moment through the Jacobi-polynomial average:
/// `r_n = kappa int_0^kappa P_{n-1}^(1,0)(1 - 2 s^2) ds`, exact.
pub fn stationary_moment_jacobi(rank: &RankParam, n: usize) -> Result<Rational, MomentError> {
    if n == 0 {
        return Err(MomentError::BadArgument("moment order must be >= 1".into()));
    }
    let inner = Poly::from_coeffs(vec![rat_int(1), rat_int(0), rat_int(-2)]); // 1 - 2 s^2
    let integrand = jacobi_p10(n as u32 - 1).compose(&inner);
    let anti = integrand.antiderivative();
    Ok(rank.kappa() * anti.eval(rank.kappa()))
}

/// Stationary moment through the finite Pochhammer sum
/// `r_n = (1/2) sum_{k=1}^n (-1/2)_k / k! * (2k)_{n-k} / (n-k)! * (-4 kappa^2)^k`,
/// exact.
pub fn stationary_moment_sum(rank: &RankParam, n: usize) -> Result<Rational, MomentError> {
    if n == 0 {
        return Err(MomentError::BadArgument("moment order must be >= 1".into()));
    }
    let minus_half = rat(-1, 2);
    let minus_four_eps = rat_int(-4) * rank.eps();
    let mut acc = Rational::zero();
    let mut pow = Rational::one();
    for k in 1..=n {
        pow *= &minus_four_eps;
        let term = pochhammer(&minus_half, k as u32) / pochhammer(&rat_int(1), k as u32)
            * pochhammer(&rat_int(2 * k as i64), (n - k) as u32)
            / pochhammer(&rat_int(1), (n - k) as u32)
            * &pow;
        acc += term;
    }
    Ok(acc / rat_int(2))
}

/// Taylor coefficients `r_1 .. r_{n_max}` of the closed-form Herglotz
/// transform, recovered numerically by a trapezoidal Cauchy integral on the
/// circle `|z| = 1/2`. This is the float cross-check route for the two exact
/// formulas above.
pub fn herglotz_taylor(rank: &RankParam, n_max: usize) -> Vec<f64> {
    let m = 4096usize;
    let rho = 0.5f64;
    let samples: Vec<Complex64> = (0..m)
        .map(|j| {
            let angle = 2.0 * PI * j as f64 / m as f64;
            let z = Complex64::from_polar(rho, angle);
            herglotz_stationary(rank, z).expect("|z| < 1")
        })
        .collect();
    (1..=n_max)
        .map(|n| {
            let mut acc = Complex64::zero();
            for (j, f) in samples.iter().enumerate() {
                let angle = -2.0 * PI * (j * n % m) as f64 / m as f64;
                acc += f * Complex64::from_polar(1.0, angle);
            }
            // c_n = acc / (M rho^n); r_n = c_n / 2
            (acc.re / (m as f64 * rho.powi(n as i32))) / 2.0
        })
        .collect()
}

/// Weight of the atom at `z = 1` recovered by the radial limit
/// `(1/2) lim_{z -> 1-} (1-z) H_inf(z)`, evaluated at `z = 1 - delta`.
pub fn radial_atom_weight(rank: &RankParam, delta: f64) -> f64 {
    let z = 1.0 - delta;
    let eps = rank.eps_f64();
    0.5 * (delta * delta + 4.0 * eps * z).sqrt()
}
