//! Exact sums of roots of unity.
//!
//! A value in `Z[w]`, `w = exp(2*pi*i/n)`, is held as a coefficient vector
//! `c` of length `n` meaning `sum_k c[k] * w^k`. Such a vector is zero as a
//! complex number exactly when the polynomial `sum_k c[k] x^k` is divisible
//! by the n-th cyclotomic polynomial.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::codeset::unit_roots;

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
pub fn cyclotomic(n: u32) -> Vec<i128> {
    assert!(n > 0, "cyclotomic index must be positive");
    let mut cache: BTreeMap<u32, Vec<i128>> = BTreeMap::new();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        // x^d - 1
        let mut poly = vec![0i128; d as usize + 1];
        poly[0] = -1;
        poly[d as usize] = 1;
        for (_, phi) in cache.iter().filter(|(&e, _)| d % e == 0) {
            poly = exact_quotient(&poly, phi);
        }
        cache.insert(d, poly);
    }
    cache.remove(&n).unwrap()
}

/// Quotient of `num` by the monic polynomial `den`; the division must be exact.
fn exact_quotient(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i128; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Remainder of `poly` modulo the monic polynomial `den`.
fn remainder(poly: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = poly.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return rem;
    }
    for i in (0..rem.len() - dd).rev() {
        let c = rem[i + dd];
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    rem.truncate(dd);
    rem
}

/// Zero test for coefficient vectors over a fixed `n`; caches the cyclotomic polynomial.
#[derive(Debug, Clone)]
pub struct ExactField {
    modulus: u32,
    phi: Vec<i128>,
}

impl ExactField {
    pub fn new(modulus: u32) -> Self {
        ExactField {
            modulus,
            phi: cyclotomic(modulus),
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_zero(&self, coeffs: &[i64]) -> bool {
        debug_assert_eq!(coeffs.len(), self.modulus as usize);
        let poly: Vec<i128> = coeffs.iter().map(|&c| c as i128).collect();
        remainder(&poly, &self.phi).iter().all(|&r| r == 0)
    }
}

/// An element of `Z[w_n]` as a length-`n` coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactValue {
    coeffs: Vec<i64>,
}

impl ExactValue {
    pub fn zero(modulus: u32) -> Self {
        assert!(modulus > 0);
        ExactValue {
            coeffs: vec![0; modulus as usize],
        }
    }

    /// The integer `n` as an element of `Z[w]`.
    pub fn integer(modulus: u32, n: i64) -> Self {
        let mut v = Self::zero(modulus);
        v.coeffs[0] = n;
        v
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        assert!(!coeffs.is_empty());
        ExactValue { coeffs }
    }

    pub fn modulus(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Adds `count * w^power`; `power` is taken mod `n`.
    pub fn add_power(&mut self, power: i64, count: i64) {
        let n = self.coeffs.len() as i64;
        self.coeffs[power.rem_euclid(n) as usize] += count;
    }

    pub fn add_assign(&mut self, other: &ExactValue) {
        assert_eq!(self.coeffs.len(), other.coeffs.len());
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn sub(&self, other: &ExactValue) -> ExactValue {
        assert_eq!(self.coeffs.len(), other.coeffs.len());
        ExactValue {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    /// Product in `Z[w]`, using `w^n = 1`.
    pub fn mul(&self, other: &ExactValue) -> ExactValue {
        let n = self.coeffs.len();
        assert_eq!(n, other.coeffs.len());
        let mut out = vec![0i64; n];
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[(i + j) % n] += a * b;
            }
        }
        ExactValue { coeffs: out }
    }

    pub fn is_zero(&self) -> bool {
        ExactField::new(self.modulus()).is_zero(&self.coeffs)
    }

    pub fn to_complex(&self) -> Complex64 {
        unit_roots(self.modulus())
            .iter()
            .zip(&self.coeffs)
            .map(|(w, &c)| w * c as f64)
            .sum()
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, c)| format!("{c}*w^{k}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
