//! The ring of finite sums `sum_k e^{kt} p_k(t)` with rational-coefficient
//! polynomials `p_k` and nonnegative integer frequencies `k`.
//!
//! The moment recursion is closed under this ring: products stay inside it and
//! every element has an elementary antiderivative, so the recursion can be
//! solved exactly with no floating point involved.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::poly::Poly;
use crate::rational::{rat_int, Rational};

/// Element `sum_k e^{kt} p_k(t)`; zero polynomials are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ExpPoly {
    terms: BTreeMap<u32, Poly>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        ExpPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        ExpPoly::from_term(0, Poly::constant(c))
    }

    /// Single term `e^{freq t} p(t)`.
    pub fn from_term(freq: u32, p: Poly) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(freq, p);
        }
        ExpPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Polynomial in front of `e^{freq t}` (zero if absent).
    pub fn term(&self, freq: u32) -> Poly {
        self.terms.get(&freq).cloned().unwrap_or_else(Poly::zero)
    }

    /// Largest stored frequency, if any.
    pub fn max_freq(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Poly)> {
        self.terms.iter().map(|(k, p)| (*k, p))
    }

    pub fn scale(&self, c: &Rational) -> ExpPoly {
        if c.is_zero() {
            return ExpPoly::zero();
        }
        ExpPoly {
            terms: self.terms.iter().map(|(k, p)| (*k, p.scale(c))).collect(),
        }
    }

    /// Exact value at `t = 0`: `sum_k p_k(0)`.
    pub fn eval_zero(&self) -> Rational {
        let zero = Rational::zero();
        self.terms.values().map(|p| p.eval(&zero)).sum()
    }

    /// Float evaluation: Horner per polynomial, one `exp` per frequency.
    pub fn eval_f64(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(k, p)| (f64::from(*k) * t).exp() * p.eval_f64(t))
            .sum()
    }

    /// Ring derivative: `d/dt [e^{kt} p] = e^{kt} (k p + p')`.
    pub fn derivative(&self) -> ExpPoly {
        let mut out = BTreeMap::new();
        for (k, p) in &self.terms {
            let q = &p.scale(&rat_int(*k as i64)) + &p.derivative();
            if !q.is_zero() {
                out.insert(*k, q);
            }
        }
        ExpPoly { terms: out }
    }

    /// An antiderivative within the ring. For `k >= 1`,
    /// `int e^{kt} p = e^{kt} sum_j (-1)^j p^(j) / k^{j+1}`; the frequency-0
    /// part integrates to a polynomial with zero constant term.
    pub fn antiderivative(&self) -> ExpPoly {
        let mut out = BTreeMap::new();
        for (k, p) in &self.terms {
            if *k == 0 {
                let q = p.antiderivative();
                if !q.is_zero() {
                    out.insert(0, q);
                }
            } else {
                let inv_k = Rational::new(1.into(), (*k).into());
                let mut q = Poly::zero();
                let mut deriv = p.clone();
                let mut factor = inv_k.clone();
                loop {
                    q += &deriv.scale(&factor);
                    deriv = deriv.derivative();
                    if deriv.is_zero() {
                        break;
                    }
                    factor = -factor * &inv_k;
                }
                if !q.is_zero() {
                    out.insert(*k, q);
                }
            }
        }
        ExpPoly { terms: out }
    }
}

impl fmt::Debug for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, p)| {
                if *k == 0 {
                    format!("{:?}", p)
                } else {
                    format!("e^{{{k}t}}*{:?}", p)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &ExpPoly {
    type Output = ExpPoly;
    fn add(self, rhs: &ExpPoly) -> ExpPoly {
        let mut terms = self.terms.clone();
        for (k, p) in &rhs.terms {
            let q = match terms.remove(k) {
                Some(existing) => &existing + p,
                None => p.clone(),
            };
            if !q.is_zero() {
                terms.insert(*k, q);
            }
        }
        ExpPoly { terms }
    }
}

impl Sub for &ExpPoly {
    type Output = ExpPoly;
    fn sub(self, rhs: &ExpPoly) -> ExpPoly {
        self + &(-rhs)
    }
}

impl Neg for &ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        ExpPoly {
            terms: self.terms.iter().map(|(k, p)| (*k, -p)).collect(),
        }
    }
}

impl Mul for &ExpPoly {
    type Output = ExpPoly;
    fn mul(self, rhs: &ExpPoly) -> ExpPoly {
        let mut terms: BTreeMap<u32, Poly> = BTreeMap::new();
        for (ka, pa) in &self.terms {
            for (kb, pb) in &rhs.terms {
                let k = ka + kb;
                let prod = pa * pb;
                match terms.remove(&k) {
                    Some(existing) => {
                        let q = &existing + &prod;
                        if !q.is_zero() {
                            terms.insert(k, q);
                        }
                    }
                    None => {
                        if !prod.is_zero() {
                            terms.insert(k, prod);
                        }
                    }
                }
            }
        }
        ExpPoly { terms }
    }
}
