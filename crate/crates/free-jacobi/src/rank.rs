//! The rank parameter of the projection and the derived constants carried
//! through every formula.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::rational::{rat, to_f64, Rational};

/// Trace data of the projection `P` and the symmetry `S = 2P - 1`:
/// `theta = tr(P)` in `(0, 1]`, `kappa = 2 theta - 1 = tr(S)`, and
/// `eps = kappa^2`. All three are exact rationals; every moment quantity in
/// the crate depends on `kappa` only through `eps`.
#[derive(Clone, PartialEq, Eq)]
pub struct RankParam {
    theta: Rational,
    kappa: Rational,
    eps: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidRank(pub String);

impl fmt::Display for InvalidRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rank parameter: {}", self.0)
    }
}

impl std::error::Error for InvalidRank {}

impl RankParam {
    /// Build from `theta` in `(0, 1]`.
    pub fn new(theta: Rational) -> Result<Self, InvalidRank> {
        if theta <= Rational::zero() || theta > Rational::one() {
            return Err(InvalidRank(format!(
                "theta = {} outside (0, 1]",
                crate::rational::format_rational(&theta)
            )));
        }
        let kappa = rat(2, 1) * &theta - Rational::one();
        let eps = &kappa * &kappa;
        Ok(RankParam { theta, kappa, eps })
    }

    /// Convenience constructor from an integer fraction.
    pub fn from_fraction(num: i64, den: i64) -> Result<Self, InvalidRank> {
        Self::new(rat(num, den))
    }

    pub fn theta(&self) -> &Rational {
        &self.theta
    }

    pub fn kappa(&self) -> &Rational {
        &self.kappa
    }

    /// `eps = kappa^2`, the only combination the moment recursion sees.
    pub fn eps(&self) -> &Rational {
        &self.eps
    }

    pub fn kappa_abs(&self) -> Rational {
        self.kappa.abs()
    }

    pub fn theta_f64(&self) -> f64 {
        to_f64(&self.theta)
    }

    pub fn kappa_f64(&self) -> f64 {
        to_f64(&self.kappa)
    }

    pub fn eps_f64(&self) -> f64 {
        to_f64(&self.eps)
    }

    /// Whether `S = 1` (theta = 1), the degenerate case `mu_t = delta_1`.
    pub fn is_degenerate(&self) -> bool {
        self.eps.is_one()
    }

    /// Whether `tr(S) = 0` (theta = 1/2), the Haar-stationary case.
    pub fn is_balanced(&self) -> bool {
        self.kappa.is_zero()
    }
}

impl fmt::Debug for RankParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RankParam(theta = {})",
            crate::rational::format_rational(&self.theta)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_constants() {
        let r = RankParam::from_fraction(3, 4).unwrap();
        assert_eq!(r.kappa(), &rat(1, 2));
        assert_eq!(r.eps(), &rat(1, 4));
        let r = RankParam::from_fraction(4, 5).unwrap();
        assert_eq!(r.kappa(), &rat(3, 5));
        assert_eq!(r.eps(), &rat(9, 25));
    }

    #[test]
    fn kappa_sign_for_small_theta() {
        let r = RankParam::from_fraction(1, 4).unwrap();
        assert_eq!(r.kappa(), &rat(-1, 2));
        assert_eq!(r.eps(), &rat(1, 4));
        assert_eq!(r.kappa_abs(), rat(1, 2));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(RankParam::from_fraction(0, 1).is_err());
        assert!(RankParam::from_fraction(5, 4).is_err());
        assert!(RankParam::from_fraction(-1, 2).is_err());
        assert!(RankParam::from_fraction(1, 1).is_ok());
    }
}
