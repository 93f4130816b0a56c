//! Aperiodic correlation of phase arrays and certification of code sets.
//!
//! Everything here works on the arrays alone; nothing assumes how they were
//! generated. For arrays `A`, `B` of size `l1 x l2` the correlation at shift
//! `(tau1, tau2)` is the sum of `a[g][i] * conj(b[g + tau1][i + tau2])` over
//! the overlapping region, and 0 once a shift reaches the array size.

mod bound;
mod exact;
mod verify;

pub use bound::{optimality, Optimality};
pub use exact::{cyclotomic, ExactField, ExactValue};
pub use verify::{verify_ccc, verify_zcacs, Engine, ExactSummary, Offender, VerificationReport, VerifyOptions};

use num_complex::Complex64;

use crate::codeset::{unit_roots, PhaseArray};
use crate::error::{Error, Result};
use crate::mixed_radix::is_prime;

/// Overlap of `A` and the shifted `B`: `rows x cols` cells starting at
/// `a_origin` in `A` and `b_origin` in `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Window {
    pub rows: usize,
    pub cols: usize,
    pub a_origin: (usize, usize),
    pub b_origin: (usize, usize),
}

impl Window {
    pub(crate) fn new(l1: usize, l2: usize, tau1: i64, tau2: i64) -> Option<Window> {
        let (l1i, l2i) = (l1 as i64, l2 as i64);
        if tau1 <= -l1i || tau1 >= l1i || tau2 <= -l2i || tau2 >= l2i {
            return None;
        }
        let (t1, t2) = (tau1.unsigned_abs() as usize, tau2.unsigned_abs() as usize);
        let (rows, cols) = (l1 - t1, l2 - t2);
        let (a_origin, b_origin) = match (tau1 >= 0, tau2 >= 0) {
            // sum_{g < l1-tau1} sum_{i < l2-tau2} a[g][i] b*[g+tau1][i+tau2]
            (true, true) => ((0, 0), (t1, t2)),
            // sum_{g < l1-tau1} sum_{i < l2+tau2} a[g][i-tau2] b*[g+tau1][i]
            (true, false) => ((0, t2), (t1, 0)),
            // sum_{g < l1+tau1} sum_{i < l2-tau2} a[g-tau1][i] b*[g][i+tau2]
            (false, true) => ((t1, 0), (0, t2)),
            // sum_{g < l1+tau1} sum_{i < l2+tau2} a[g-tau1][i-tau2] b*[g][i]
            (false, false) => ((t1, t2), (0, 0)),
        };
        Some(Window {
            rows,
            cols,
            a_origin,
            b_origin,
        })
    }
}

/// Adds one count per overlapping cell to `hist[(a - b) mod n]`.
pub(crate) fn diff_histogram(a: &PhaseArray, b: &PhaseArray, w: &Window, hist: &mut [i64]) {
    let n = a.modulus();
    for g in 0..w.rows {
        let ra = &a.row(w.a_origin.0 + g)[w.a_origin.1..w.a_origin.1 + w.cols];
        let rb = &b.row(w.b_origin.0 + g)[w.b_origin.1..w.b_origin.1 + w.cols];
        for (&x, &y) in ra.iter().zip(rb) {
            hist[((x + n - y) % n) as usize] += 1;
        }
    }
}

/// Floating-point sum of `w^(a - b)` over the window, `roots[k] = w^k`.
pub(crate) fn window_sum(a: &PhaseArray, b: &PhaseArray, w: &Window, roots: &[Complex64]) -> Complex64 {
    let n = a.modulus();
    let mut acc = Complex64::new(0.0, 0.0);
    for g in 0..w.rows {
        let ra = &a.row(w.a_origin.0 + g)[w.a_origin.1..w.a_origin.1 + w.cols];
        let rb = &b.row(w.b_origin.0 + g)[w.b_origin.1..w.b_origin.1 + w.cols];
        for (&x, &y) in ra.iter().zip(rb) {
            acc += roots[((x + n - y) % n) as usize];
        }
    }
    acc
}

/// Two-dimensional aperiodic cross-correlation `C(A, B)(tau1, tau2)`.
pub fn accf_2d(a: &PhaseArray, b: &PhaseArray, tau1: i64, tau2: i64) -> Result<Complex64> {
    a.same_shape(b)?;
    Ok(match Window::new(a.rows(), a.cols(), tau1, tau2) {
        Some(w) => window_sum(a, b, &w, &unit_roots(a.modulus())),
        None => Complex64::new(0.0, 0.0),
    })
}

/// [`accf_2d`] as an exact element of `Z[w_modulus]`.
pub fn accf_2d_exact(a: &PhaseArray, b: &PhaseArray, tau1: i64, tau2: i64) -> Result<ExactValue> {
    a.same_shape(b)?;
    let mut v = ExactValue::zero(a.modulus());
    if let Some(w) = Window::new(a.rows(), a.cols(), tau1, tau2) {
        let mut hist = vec![0; a.modulus() as usize];
        diff_histogram(a, b, &w, &mut hist);
        v = ExactValue::from_coeffs(hist);
    }
    Ok(v)
}

/// One-dimensional aperiodic cross-correlation of single-row arrays.
pub fn accf_1d(a: &PhaseArray, b: &PhaseArray, tau: i64) -> Result<Complex64> {
    if a.rows() != 1 || b.rows() != 1 {
        return Err(Error::shape(format!(
            "1D correlation needs single-row inputs, got {} and {} rows",
            a.rows(),
            b.rows()
        )));
    }
    a.same_shape(b)?;
    let roots = unit_roots(a.modulus());
    let (x, y) = (a.row(0), b.row(0));
    let l = x.len() as i64;
    let n = a.modulus();
    let term = |i: usize, j: usize| roots[((x[i] + n - y[j]) % n) as usize];
    let value = if (0..l).contains(&tau) {
        (0..(l - tau) as usize).map(|i| term(i, i + tau as usize)).sum()
    } else if (-l + 1..0).contains(&tau) {
        (0..(l + tau) as usize)
            .map(|i| term(i + tau.unsigned_abs() as usize, i))
            .sum()
    } else {
        Complex64::new(0.0, 0.0)
    };
    Ok(value)
}

fn check_sets(set_a: &[PhaseArray], set_b: &[PhaseArray]) -> Result<()> {
    if set_a.len() != set_b.len() {
        return Err(Error::shape(format!(
            "sets hold {} and {} arrays",
            set_a.len(),
            set_b.len()
        )));
    }
    for (a, b) in set_a.iter().zip(set_b) {
        a.same_shape(b)?;
    }
    if let Some(first) = set_a.first() {
        for a in set_a {
            a.same_shape(first)?;
        }
    }
    Ok(())
}

/// Sum over the flock of the arraywise correlations.
pub fn set_correlation(set_a: &[PhaseArray], set_b: &[PhaseArray], tau1: i64, tau2: i64) -> Result<Complex64> {
    check_sets(set_a, set_b)?;
    set_a.iter().zip(set_b).map(|(a, b)| accf_2d(a, b, tau1, tau2)).sum()
}

pub fn set_correlation_exact(set_a: &[PhaseArray], set_b: &[PhaseArray], tau1: i64, tau2: i64) -> Result<ExactValue> {
    check_sets(set_a, set_b)?;
    let modulus = set_a
        .first()
        .map(PhaseArray::modulus)
        .ok_or_else(|| Error::shape("empty sets"))?;
    let mut acc = ExactValue::zero(modulus);
    for (a, b) in set_a.iter().zip(set_b) {
        acc.add_assign(&accf_2d_exact(a, b, tau1, tau2)?);
    }
    Ok(acc)
}

/// `sum_{j<p} w_p^((t - t') j)`: `p` when `t == t' (mod p)`, 0 otherwise.
///
/// The zero case requires `t` and `t'` to differ mod `p`, not merely differ.
pub fn root_sum(t: i64, t_prime: i64, p: u64) -> Result<ExactValue> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let mut v = ExactValue::zero(p as u32);
    for j in 0..p as i64 {
        v.add_power((t - t_prime) * j, 1);
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(rows: usize, cols: usize, modulus: u32, e: &[u32]) -> PhaseArray {
        PhaseArray::new(rows, cols, modulus, e.to_vec()).unwrap()
    }

    #[test]
    fn peak_is_array_size() {
        let a = arr(2, 3, 5, &[0, 1, 2, 3, 4, 0]);
        let c = accf_2d(&a, &a, 0, 0).unwrap();
        assert!((c - Complex64::new(6.0, 0.0)).norm() < 1e-12);
        assert_eq!(accf_2d_exact(&a, &a, 0, 0).unwrap(), ExactValue::integer(5, 6));
    }

    #[test]
    fn single_product_shift() {
        // values (1, i): C(0, 1) = a00 * conj(a01) = -i
        let a = arr(1, 2, 4, &[0, 1]);
        let c = accf_2d(&a, &a, 0, 1).unwrap();
        assert!((c - Complex64::new(0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn outside_range_is_zero() {
        let a = arr(2, 2, 2, &[0, 1, 1, 0]);
        assert_eq!(accf_2d(&a, &a, 2, 0).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(accf_2d(&a, &a, 0, -2).unwrap(), Complex64::new(0.0, 0.0));
        assert!(accf_2d_exact(&a, &a, -2, 1).unwrap().is_zero());
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a = arr(1, 2, 2, &[0, 1]);
        let b = arr(2, 1, 2, &[0, 1]);
        let c = arr(1, 2, 4, &[0, 1]);
        assert!(accf_2d(&a, &b, 0, 0).is_err());
        assert!(accf_2d(&a, &c, 0, 0).is_err());
        assert!(set_correlation(std::slice::from_ref(&a), &[a.clone(), a.clone()], 0, 0).is_err());
    }

    #[test]
    fn accf_1d_examples() {
        let ones = arr(1, 4, 2, &[0, 0, 0, 0]);
        assert!((accf_1d(&ones, &ones, 1).unwrap() - Complex64::new(3.0, 0.0)).norm() < 1e-12);
        assert_eq!(accf_1d(&ones, &ones, 4).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(accf_1d(&ones, &ones, -4).unwrap(), Complex64::new(0.0, 0.0));
        assert!(accf_1d(&arr(2, 1, 2, &[0, 0]), &arr(2, 1, 2, &[0, 0]), 0).is_err());
    }

    #[test]
    fn golay_pair_sums_vanish() {
        // (+ + + -) and (+ + - +) form a binary Golay pair.
        let a = arr(1, 4, 2, &[0, 0, 0, 1]);
        let b = arr(1, 4, 2, &[0, 0, 1, 0]);
        for tau in 1..4 {
            let s = accf_1d(&a, &a, tau).unwrap() + accf_1d(&b, &b, tau).unwrap();
            assert!(s.norm() < 1e-12, "tau {tau}: {s}");
        }
    }

    #[test]
    fn root_sum_cases() {
        assert!(root_sum(1, 0, 3).unwrap().is_zero());
        assert_eq!(root_sum(2, 2, 5).unwrap().to_complex().re.round(), 5.0);
        let congruent = root_sum(4, 1, 3).unwrap();
        assert!(!congruent.is_zero());
        assert!((congruent.to_complex() - Complex64::new(3.0, 0.0)).norm() < 1e-12);
        assert!(root_sum(1, 0, 4).is_err());
    }
}
