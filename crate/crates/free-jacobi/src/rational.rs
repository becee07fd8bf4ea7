//! Exact rational arithmetic and the combinatorial coefficients used
//! throughout the crate.
//!
//! Everything downstream of the moment recursion is kept exact until the last
//! moment, so this module is deliberately thin: it re-exports a big-rational
//! type and provides the handful of exact coefficient functions (binomials,
//! rising factorials) the closed formulas need.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number, always stored reduced with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Convert to `f64` with correct rounding.
pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().expect("rational magnitude out of f64 range")
}

/// Binomial coefficient `C(n, k)` as an exact integer.
///
/// Returns 0 when `k < 0` or `k > n`, which is the convention the moment
/// bridge sums rely on.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || (k as u64) > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Rising factorial `(x)_k = x (x+1) ... (x+k-1)`, with `(x)_0 = 1`.
pub fn pochhammer(x: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    let mut term = x.clone();
    for _ in 0..k {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// Parse a rational from either an exact `p/q` string or a finite decimal
/// (`0.75` becomes exactly `3/4`).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().ok()?;
        let den: BigInt = q.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int_part.trim_start().starts_with('-');
        let int: BigInt = if int_part.is_empty() || int_part == "-" {
            BigInt::zero()
        } else {
            int_part.parse().ok()?
        };
        let frac: BigInt = frac_part.parse().ok()?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac = if negative { -frac } else { frac };
        return Some(Rational::new(int * &scale + frac, scale));
    }
    let num: BigInt = s.parse().ok()?;
    Some(Rational::from(num))
}

/// Render as `p/q` (or just `p` for integers); inverse of [`parse_rational`]
/// on its output.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Absolute value.
pub fn rat_abs(x: &Rational) -> Rational {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_cases() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(5, 7), BigInt::zero());
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn binomial_symmetry() {
        // C(2n, n-k) = C(2n, n+k)
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(6, 4), BigInt::from(15));
        for n in 0..10u64 {
            for k in 0..=(n as i64) {
                assert_eq!(binomial(2 * n, n as i64 - k), binomial(2 * n, n as i64 + k));
            }
        }
    }

    #[test]
    fn pochhammer_values() {
        // (1/2)_2 = 1/2 * 3/2
        assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4));
        // empty product
        assert_eq!(pochhammer(&rat(7, 3), 0), rat_int(1));
        // (-1/2)_3 = (-1/2)(1/2)(3/2), checked against the direct product
        let direct = rat(-1, 2) * rat(1, 2) * rat(3, 2);
        assert_eq!(pochhammer(&rat(-1, 2), 3), direct);
        assert_eq!(pochhammer(&rat(-1, 2), 3), rat(-3, 8));
    }

    #[test]
    fn parse_and_format_roundtrip() {
        assert_eq!(parse_rational("3/4"), Some(rat(3, 4)));
        assert_eq!(parse_rational("0.75"), Some(rat(3, 4)));
        assert_eq!(parse_rational("-0.5"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("2"), Some(rat_int(2)));
        assert_eq!(parse_rational("1/0"), None);
        let x = rat(-22, 7);
        assert_eq!(parse_rational(&format_rational(&x)), Some(x));
    }
}
