//! Dense polynomials with exact rational coefficients, plus the two classical
//! families the closed formulas call for: Jacobi `P_n^(1,0)` and Laguerre
//! `L_n^(1)` in Rainville's normalization.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{pochhammer, rat, rat_int, to_f64, Rational};

/// Polynomial as a dense coefficient vector, `coeffs[i]` multiplying `x^i`.
/// The highest stored coefficient is nonzero unless the polynomial is zero
/// (empty vector).
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly { coeffs: vec![c] }.normalized()
    }

    /// Monomial `c x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        Poly { coeffs }.normalized()
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + to_f64(c);
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat_int(i as i64))
            .collect();
        Poly { coeffs }
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / rat_int(i as i64 + 1));
        }
        Poly { coeffs }.normalized()
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c.clone());
        }
        acc
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly { coeffs }.normalized()
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly { coeffs }.normalized()
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly { coeffs }.normalized()
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        *self = &*self + rhs;
    }
}

/// Jacobi polynomial `P_n^(1,0)` with exact coefficients, built from the
/// hypergeometric series
/// `P_n^(1,0)(x) = ((2)_n / n!) * sum_k (-n)_k (n+2)_k / ((2)_k k!) * ((1-x)/2)^k`,
/// normalized so that `P_n^(1,0)(1) = n + 1`.
pub fn jacobi_p10(n: u32) -> Poly {
    // (1 - x)/2 as a polynomial
    let half_one_minus_x = Poly::from_coeffs(vec![rat(1, 2), rat(-1, 2)]);
    let minus_n = rat_int(-(n as i64));
    let n_plus_2 = rat_int(n as i64 + 2);
    let two = rat_int(2);

    let mut series = Poly::zero();
    let mut power = Poly::one();
    for k in 0..=n {
        let num = pochhammer(&minus_n, k) * pochhammer(&n_plus_2, k);
        let den = pochhammer(&two, k) * pochhammer(&rat_int(1), k); // (2)_k * k!
        series += &power.scale(&(num / den));
        power = &power * &half_one_minus_x;
    }
    let lead = pochhammer(&two, n) / pochhammer(&rat_int(1), n); // (2)_n / n!
    series.scale(&lead)
}

/// Laguerre polynomial `L_n^(1)` with exact coefficients:
/// `L_n^(1)(x) = sum_k (-1)^k C(n+1, n-k) x^k / k!`.
pub fn laguerre_l1(n: u32) -> Poly {
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    let mut k_fact = Rational::one();
    for k in 0..=n {
        if k > 0 {
            k_fact *= rat_int(k as i64);
        }
        let b = crate::rational::binomial(n as u64 + 1, (n - k) as i64);
        let sign = if k % 2 == 0 { 1 } else { -1 };
        coeffs.push(Rational::from(b) * rat_int(sign) / &k_fact);
    }
    Poly::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn jacobi_p10_small() {
        assert_eq!(jacobi_p10(0), Poly::one());
        // P_1^(1,0)(x) = (3x + 1)/2
        assert_eq!(jacobi_p10(1), Poly::from_coeffs(vec![rat(1, 2), rat(3, 2)]));
    }

    #[test]
    fn jacobi_p10_value_at_one() {
        for n in 0..=20u32 {
            assert_eq!(jacobi_p10(n).eval(&rat_int(1)), rat_int(n as i64 + 1));
        }
    }

    #[test]
    fn jacobi_p10_three_term_recurrence() {
        // Three-term recurrence for P_n^(a,b) specialized to (a,b) = (1,0):
        // 2(n+1)(n+2)(2n+1) P_{n+1}
        //   = (2n+2) [ (2n+1)(2n+3) x + 1 ] P_n - 2 n (n+1) (2n+3) P_{n-1}.
        for n in 1..=20u32 {
            let m = n as i64;
            let lhs = jacobi_p10(n + 1).scale(&rat_int(2 * (m + 1) * (m + 2) * (2 * m + 1)));
            let mid = Poly::from_coeffs(vec![
                rat_int(2 * m + 2),
                rat_int((2 * m + 2) * (2 * m + 1) * (2 * m + 3)),
            ]);
            let rhs = &(&mid * &jacobi_p10(n))
                - &jacobi_p10(n - 1).scale(&rat_int(2 * m * (m + 1) * (2 * m + 3)));
            assert_eq!(lhs, rhs, "recurrence fails at n = {n}");
        }
    }

    #[test]
    fn laguerre_l1_small() {
        assert_eq!(laguerre_l1(0), Poly::one());
        // L_1^(1)(x) = 2 - x
        assert_eq!(laguerre_l1(1), Poly::from_coeffs(vec![rat_int(2), rat_int(-1)]));
    }

    #[test]
    fn laguerre_l1_constant_term_identity() {
        // constant term of (1/k) L_{k-1}^(1) equals 1 for every k >= 1
        for k in 1..=20u32 {
            let p = laguerre_l1(k - 1);
            assert_eq!(p.coeff(0) / rat_int(k as i64), rat_int(1));
        }
    }

    #[test]
    fn laguerre_l1_three_term_recurrence() {
        // (n+1) L_{n+1}^(1)(x) = (2n + 2 - x) L_n^(1)(x) - (n+1) L_{n-1}^(1)(x)
        for n in 1..=20u32 {
            let m = n as i64;
            let lhs = laguerre_l1(n + 1).scale(&rat_int(m + 1));
            let mid = Poly::from_coeffs(vec![rat_int(2 * m + 2), rat_int(-1)]);
            let rhs = &(&mid * &laguerre_l1(n)) - &laguerre_l1(n - 1).scale(&rat_int(m + 1));
            assert_eq!(lhs, rhs, "recurrence fails at n = {n}");
        }
    }

    #[test]
    fn compose_and_integrate() {
        // integral of P_1^(1,0)(1 - 2 s^2) = 2 - 3 s^2 from 0 to kappa is 2k - k^3
        let inner = Poly::from_coeffs(vec![rat_int(1), rat_int(0), rat_int(-2)]);
        let p = jacobi_p10(1).compose(&inner);
        assert_eq!(p, Poly::from_coeffs(vec![rat_int(2), rat_int(0), rat_int(-3)]));
        let anti = p.antiderivative();
        let k = rat(3, 5);
        let expect = rat_int(2) * &k - &k * &k * &k;
        assert_eq!(anti.eval(&k), expect);
    }
}
