//! Exact solution of the moment recursion for `s_n(t) = e^{nt} r_n(t)`, where
//! `r_n(t)` is the n-th moment of the spectral distribution of `S Y_t S Y_t*`,
//! plus the truncated Herglotz series and a derivative-level consistency check
//! of the underlying transport equation.
//!
//! The recursion
//!
//! ```text
//! s_1(t)  = eps e^t + (1 - eps)
//! s_n'(t) = -n sum_{j=1}^{n-1} s_j(t) s_{n-j}(t) + eps n^2 e^{nt},   s_n(0) = 1
//! ```
//!
//! is closed in the exponential-polynomial ring, so the table is computed with
//! exact rational coefficients. A plain `f64` solver for the equivalent system
//! on `r_n` is also provided for truncation orders far beyond what exact
//! arithmetic can reach.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::exppoly::ExpPoly;
use crate::poly::Poly;
use crate::rank::RankParam;
use crate::rational::{rat_int, to_f64, Rational};

#[derive(Debug, Clone, PartialEq)]
pub enum MomentError {
    /// Requested order outside the computed table.
    OutOfRange { n: usize, n_max: usize },
    /// `n_max = 0` or another unusable argument.
    BadArgument(String),
    /// Herglotz series queried outside the open unit disc.
    OutsideDisc { abs: f64 },
}

impl fmt::Display for MomentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MomentError::OutOfRange { n, n_max } => {
                write!(f, "moment order {n} outside computed range 1..={n_max}")
            }
            MomentError::BadArgument(s) => write!(f, "bad argument: {s}"),
            MomentError::OutsideDisc { abs } => {
                write!(f, "herglotz series needs |z| < 1, got |z| = {abs}")
            }
        }
    }
}

impl std::error::Error for MomentError {}

/// Table of the exact exponential polynomials `s_1, ..., s_{n_max}`.
pub struct MomentTable {
    rank: RankParam,
    s: Vec<ExpPoly>,
}

impl MomentTable {
    /// Solve the recursion exactly up to `n_max >= 1`.
    pub fn solve(rank: &RankParam, n_max: usize) -> Result<Self, MomentError> {
        if n_max == 0 {
            return Err(MomentError::BadArgument("n_max must be >= 1".into()));
        }
        let eps = rank.eps().clone();
        let one_minus_eps = Rational::one() - &eps;

        let mut s: Vec<ExpPoly> = Vec::with_capacity(n_max);
        let s1 = &ExpPoly::from_term(1, Poly::constant(eps.clone()))
            + &ExpPoly::from_term(0, Poly::constant(one_minus_eps));
        s.push(s1);

        for n in 2..=n_max {
            let rhs = recursion_rhs(&eps, &s, n);
            let anti = rhs.antiderivative();
            // fix the integration constant by s_n(0) = 1
            let c = Rational::one() - anti.eval_zero();
            let sn = &anti + &ExpPoly::constant(c);
            s.push(sn);
        }
        Ok(MomentTable {
            rank: rank.clone(),
            s,
        })
    }

    pub fn rank(&self) -> &RankParam {
        &self.rank
    }

    pub fn n_max(&self) -> usize {
        self.s.len()
    }

    /// The exact exponential polynomial `s_n`, `1 <= n <= n_max`.
    pub fn s(&self, n: usize) -> Result<&ExpPoly, MomentError> {
        if n == 0 || n > self.s.len() {
            return Err(MomentError::OutOfRange {
                n,
                n_max: self.s.len(),
            });
        }
        Ok(&self.s[n - 1])
    }

    /// `r_n(t) = e^{-nt} s_n(t)`.
    pub fn r_moment(&self, n: usize, t: f64) -> Result<f64, MomentError> {
        if !(t >= 0.0) {
            return Err(MomentError::BadArgument(format!("t = {t} must be >= 0")));
        }
        let sn = self.s(n)?;
        Ok((-(n as f64) * t).exp() * sn.eval_f64(t))
    }

    /// Leading coefficient of `e^{nt}` in `s_n`; this is the stationary moment
    /// `r_n(infinity)`. Zero when the frequency is absent (the `eps = 0` case).
    pub fn leading_coefficient(&self, n: usize) -> Result<Rational, MomentError> {
        let sn = self.s(n)?;
        let top = sn.term(n as u32);
        Ok(top.coeff(0))
    }

    /// Frequency-0 part of `s_n`: the polynomial attached to the fastest decay
    /// `e^{-nt}` of `r_n`.
    pub fn decay_polynomial(&self, n: usize) -> Result<Poly, MomentError> {
        Ok(self.s(n)?.term(0))
    }

    /// Truncated Herglotz transform `1 + 2 sum_{n<=n_terms} r_n(t) z^n`.
    pub fn herglotz_series(
        &self,
        t: f64,
        z: Complex64,
        n_terms: usize,
    ) -> Result<Complex64, MomentError> {
        if z.norm() >= 1.0 {
            return Err(MomentError::OutsideDisc { abs: z.norm() });
        }
        if n_terms > self.s.len() {
            return Err(MomentError::OutOfRange {
                n: n_terms,
                n_max: self.s.len(),
            });
        }
        let mut acc = Complex64::new(1.0, 0.0);
        let mut zp = Complex64::new(1.0, 0.0);
        for n in 1..=n_terms {
            zp *= z;
            acc += 2.0 * self.r_moment(n, t)? * zp;
        }
        Ok(acc)
    }

    /// Verify, coefficient by coefficient in the ring, that each computed
    /// `s_n` satisfies its differential equation (equivalently, that the
    /// moment sequence satisfies the transport equation of the Herglotz
    /// transform power by power). The right-hand side is recomputed from
    /// scratch, so this catches integration mistakes.
    pub fn check_pde_coefficients(&self) -> Vec<PdeCheck> {
        let eps = self.rank.eps().clone();
        let mut out = Vec::with_capacity(self.s.len());
        for n in 1..=self.s.len() {
            let lhs = self.s[n - 1].derivative();
            let rhs = if n == 1 {
                // d/dt r_1 = -r_1 + kappa^2 <=> d/dt s_1 = eps e^t
                ExpPoly::from_term(1, Poly::constant(eps.clone()))
            } else {
                recursion_rhs(&eps, &self.s, n)
            };
            out.push(PdeCheck {
                n,
                passed: lhs == rhs,
            });
        }
        out
    }
}

/// `-n sum_{j=1}^{n-1} s_j s_{n-j} + eps n^2 e^{nt}` for `n >= 2`.
fn recursion_rhs(eps: &Rational, s: &[ExpPoly], n: usize) -> ExpPoly {
    let mut conv = ExpPoly::zero();
    for j in 1..n {
        conv = &conv + &(&s[j - 1] * &s[n - j - 1]);
    }
    let mut rhs = conv.scale(&rat_int(-(n as i64)));
    let source = eps * rat_int((n * n) as i64);
    rhs = &rhs + &ExpPoly::from_term(n as u32, Poly::constant(source));
    rhs
}

/// Outcome of the per-order transport-equation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdeCheck {
    pub n: usize,
    pub passed: bool,
}

/// Solve the moment system in `f64` at a single time.
///
/// Integrates `r_n' = -n r_n - n sum_{j<n} r_j r_{n-j} + eps n^2` with the
/// classical fourth-order Runge-Kutta scheme and returns `r_1(t), ..,
/// r_{n_max}(t)`. Used where the exact table is out of reach (series
/// truncations of order ~10^2): coefficient sizes in the exact ring explode
/// well before that.
pub fn float_moments(rank: &RankParam, n_max: usize, t: f64, step_hint: f64) -> Vec<f64> {
    assert!(n_max >= 1, "n_max must be >= 1");
    assert!(t >= 0.0, "t must be >= 0");
    let eps = rank.eps_f64();
    let mut r = vec![1.0f64; n_max];
    if t == 0.0 {
        return r;
    }
    let steps = (t / step_hint).ceil().max(1.0) as usize;
    let h = t / steps as f64;

    let rhs = |r: &[f64], out: &mut [f64]| {
        for n in 1..=n_max {
            let nf = n as f64;
            let mut conv = 0.0;
            for j in 1..n {
                conv += r[j - 1] * r[n - j - 1];
            }
            out[n - 1] = -nf * r[n - 1] - nf * conv + eps * nf * nf;
        }
    };

    let mut k1 = vec![0.0; n_max];
    let mut k2 = vec![0.0; n_max];
    let mut k3 = vec![0.0; n_max];
    let mut k4 = vec![0.0; n_max];
    let mut tmp = vec![0.0; n_max];

    for _ in 0..steps {
        rhs(&r, &mut k1);
        for i in 0..n_max {
            tmp[i] = r[i] + 0.5 * h * k1[i];
        }
        rhs(&tmp, &mut k2);
        for i in 0..n_max {
            tmp[i] = r[i] + 0.5 * h * k2[i];
        }
        rhs(&tmp, &mut k3);
        for i in 0..n_max {
            tmp[i] = r[i] + h * k3[i];
        }
        rhs(&tmp, &mut k4);
        for i in 0..n_max {
            r[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    r
}

/// Default step for [`float_moments`], conservative enough for absolute
/// accuracy ~1e-10 at truncation orders up to ~10^2.
pub const DEFAULT_ODE_STEP: f64 = 1e-5;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::laguerre_l1;
    use crate::rational::rat;

    fn table(num: i64, den: i64, n_max: usize) -> MomentTable {
        let rank = RankParam::from_fraction(num, den).unwrap();
        MomentTable::solve(&rank, n_max).unwrap()
    }

    #[test]
    fn s1_closed_form() {
        let t = table(3, 4, 1); // eps = 1/4
        let expect = &ExpPoly::from_term(1, Poly::constant(rat(1, 4)))
            + &ExpPoly::constant(rat(3, 4));
        assert_eq!(t.s(1).unwrap(), &expect);
    }

    #[test]
    fn s2_frozen_form() {
        // s_2 = (2e - e^2) e^{2t} - 4 e (1-e) e^t - 2 (1-e)^2 t + (1-e)(1+3e),
        // obtained by integrating -2 s_1^2 + 4 eps e^{2t} by hand.
        let t = table(3, 4, 2); // eps = 1/4
        let expect = &(&ExpPoly::from_term(2, Poly::constant(rat(7, 16)))
            + &ExpPoly::from_term(1, Poly::constant(rat(-3, 4))))
            + &ExpPoly::from_term(0, Poly::from_coeffs(vec![rat(21, 16), rat(-9, 8)]));
        assert_eq!(t.s(2).unwrap(), &expect);
    }

    #[test]
    fn initial_condition_is_exact() {
        for (num, den) in [(1i64, 2i64), (3, 4), (4, 5), (1, 1)] {
            let t = table(num, den, 12);
            for n in 1..=12 {
                assert_eq!(t.s(n).unwrap().eval_zero(), rat_int(1), "s_{n}(0) != 1");
            }
        }
    }

    #[test]
    fn frequency_bound_and_constant_leading_term() {
        for (num, den) in [(3i64, 4i64), (4, 5), (1, 1)] {
            let t = table(num, den, 10);
            for n in 1..=10 {
                let sn = t.s(n).unwrap();
                assert_eq!(sn.max_freq(), Some(n as u32));
                let top = sn.term(n as u32);
                assert!(top.degree() == Some(0), "leading term of s_{n} not constant");
            }
        }
    }

    #[test]
    fn laguerre_specialization_at_eps_zero() {
        // s_n(t) = (1/n) L_{n-1}^{(1)}(2 n t) exactly when eps = 0
        let t = table(1, 2, 12);
        for n in 1..=12u32 {
            let arg = Poly::from_coeffs(vec![rat_int(0), rat_int(2 * n as i64)]);
            let expect = laguerre_l1(n - 1)
                .compose(&arg)
                .scale(&(Rational::one() / rat_int(n as i64)));
            assert_eq!(t.s(n as usize).unwrap(), &ExpPoly::from_term(0, expect));
        }
    }

    #[test]
    fn degenerate_rank_gives_pure_exponential() {
        let t = table(1, 1, 8); // eps = 1
        for n in 1..=8 {
            assert_eq!(
                t.s(n).unwrap(),
                &ExpPoly::from_term(n as u32, Poly::constant(rat_int(1)))
            );
        }
    }

    #[test]
    fn table_depends_on_eps_only() {
        // theta and 1 - theta share eps, hence the whole table
        let a = table(1, 4, 8);
        let b = table(3, 4, 8);
        for n in 1..=8 {
            assert_eq!(a.s(n).unwrap(), b.s(n).unwrap());
        }
    }

    #[test]
    fn r_moment_values() {
        let t = table(3, 4, 6);
        for tt in [0.0, 0.3, 1.0, 2.5] {
            let expect = 0.25 + 0.75 * (-tt).exp();
            assert!((t.r_moment(1, tt).unwrap() - expect).abs() < 1e-14);
        }
        for n in 1..=6 {
            assert!((t.r_moment(n, 0.0).unwrap() - 1.0).abs() < 1e-14);
        }
        assert!(t.r_moment(7, 0.5).is_err());
        assert!(t.r_moment(0, 0.5).is_err());
        assert!(t.r_moment(2, -0.1).is_err());
    }

    #[test]
    fn herglotz_series_at_time_zero() {
        let t = table(3, 4, 40);
        let z = Complex64::new(0.3, 0.2);
        let h = t.herglotz_series(0.0, z, 40).unwrap();
        let exact = (1.0 + z) / (1.0 - z);
        assert!((h - exact).norm() < 1e-8);
        assert_eq!(
            t.herglotz_series(0.7, Complex64::zero(), 40).unwrap(),
            Complex64::one()
        );
        assert!(t.herglotz_series(0.0, Complex64::new(1.1, 0.0), 5).is_err());
    }

    #[test]
    fn pde_checks_pass() {
        for (num, den) in [(1i64, 2i64), (3, 4), (4, 5), (1, 1)] {
            let t = table(num, den, 10);
            for c in t.check_pde_coefficients() {
                assert!(c.passed, "pde check failed at n = {}", c.n);
            }
        }
    }

    #[test]
    fn decay_polynomial_recursion() {
        // P_1 = 1 - eps and P_n' = -n sum_{j<n} P_j P_{n-j}
        for (num, den) in [(3i64, 4i64), (4, 5)] {
            let t = table(num, den, 8);
            let p: Vec<Poly> = (1..=8).map(|n| t.decay_polynomial(n).unwrap()).collect();
            assert_eq!(p[0], Poly::constant(Rational::one() - t.rank().eps()));
            for n in 2..=8usize {
                let mut conv = Poly::zero();
                for j in 1..n {
                    conv += &(&p[j - 1] * &p[n - j - 1]);
                }
                assert_eq!(p[n - 1].derivative(), conv.scale(&rat_int(-(n as i64))));
            }
        }
    }

    #[test]
    fn float_solver_matches_exact_table() {
        let rank = RankParam::from_fraction(4, 5).unwrap();
        let t = MomentTable::solve(&rank, 10).unwrap();
        for tt in [0.1, 0.5, 1.0] {
            let approx = float_moments(&rank, 10, tt, DEFAULT_ODE_STEP);
            for n in 1..=10 {
                let exact = t.r_moment(n, tt).unwrap();
                assert!(
                    (approx[n - 1] - exact).abs() < 1e-9,
                    "n = {n}, t = {tt}: {} vs {exact}",
                    approx[n - 1]
                );
            }
        }
    }

    #[test]
    fn rejects_zero_orders() {
        let rank = RankParam::from_fraction(3, 4).unwrap();
        assert!(MomentTable::solve(&rank, 0).is_err());
    }
}
