//! Exact detection and interpolation of eventually-polynomial sequences.
//!
//! Hilbert functions and Hilbert-point weights agree with a polynomial for
//! all large `m`. Given values at `m = 0, 1, 2, …`, the detector finds the
//! smallest degree `k` whose order-`(k+1)` finite differences vanish on a
//! long enough tail, reports the onset (the least `m` from which the values
//! are exactly polynomial), and interpolates the polynomial by Newton
//! forward differences — all over `ℚ`, no tolerances anywhere.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InterpError {
    #[error("no stabilization detected in {samples} samples (max difference order {max_order})")]
    NoStabilization { samples: usize, max_order: usize },
}

/// A polynomial tail fitted to a sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventualPolynomial {
    /// Coefficients `c0, c1, …` ascending; empty for the zero polynomial.
    pub coeffs: Vec<Rational>,
    /// Least index from which the sequence equals the polynomial exactly.
    pub onset: usize,
    /// Length of the vanishing run of top-order differences that was
    /// observed when the fit was accepted.
    pub confirmations: usize,
}

impl EventualPolynomial {
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn eval(&self, m: usize) -> Rational {
        eval_poly(&self.coeffs, m)
    }

    /// Coefficient of `m^k`, zero-padded beyond the stored degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Horner evaluation at a non-negative integer point.
pub fn eval_poly(coeffs: &[Rational], m: usize) -> Rational {
    let x = Rational::from_integer(BigInt::from(m));
    let mut acc = Rational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * &x + c;
    }
    acc
}

/// Fit an eventually-polynomial sequence.
///
/// `required_run(k)` is the number of consecutive vanishing order-`(k+1)`
/// differences demanded before a degree-`k` fit is accepted; it must be at
/// least 1. Hilbert-function fitting passes `k + 3`, weight fitting `k + 2`
/// (both amount to dimension + 3 confirmations).
pub fn detect_eventual_polynomial(
    values: &[Rational],
    required_run: impl Fn(usize) -> usize,
) -> Result<EventualPolynomial, InterpError> {
    let len = values.len();
    let mut diff = values.to_vec();
    let mut max_order = 0;
    for k in 0..len {
        // diff currently holds the order-k differences; advance one order.
        if diff.len() < 2 {
            break;
        }
        let next: Vec<Rational> = diff.windows(2).map(|w| &w[1] - &w[0]).collect();
        max_order = k + 1;

        // Start of the vanishing suffix of the order-(k+1) table.
        let mut start = next.len();
        while start > 0 && next[start - 1].is_zero() {
            start -= 1;
        }
        let run = next.len() - start;
        if run >= required_run(k).max(1) {
            let onset = start;
            let coeffs = newton_coefficients(onset, &values[onset..=onset + k]);
            // The vanishing difference tail already implies exact agreement
            // from the onset; re-check literally since it is cheap and exact.
            let agrees = (onset..len).all(|m| eval_poly(&coeffs, m) == values[m]);
            if agrees {
                return Ok(EventualPolynomial { coeffs, onset, confirmations: run });
            }
        }
        diff = next;
    }
    Err(InterpError::NoStabilization { samples: len, max_order })
}

/// Coefficients of the unique degree `< ys.len()` polynomial through the
/// points `(x0, ys[0]), (x0+1, ys[1]), …`, by Newton forward differences.
fn newton_coefficients(x0: usize, ys: &[Rational]) -> Vec<Rational> {
    let mut coeffs: Vec<Rational> = Vec::new();
    // basis = Π_{l<j} (x − (x0+l)), coefficients ascending.
    let mut basis: Vec<Rational> = vec![Rational::one()];
    let mut table: Vec<Rational> = ys.to_vec();
    let mut factorial = BigInt::one();

    for j in 0..ys.len() {
        if j > 0 {
            factorial *= BigInt::from(j);
        }
        let dd = &table[0] / Rational::from_integer(factorial.clone());
        if coeffs.len() < basis.len() {
            coeffs.resize(basis.len(), Rational::zero());
        }
        for (i, b) in basis.iter().enumerate() {
            coeffs[i] += &dd * b;
        }

        // basis *= (x − (x0 + j))
        let node = Rational::from_integer(BigInt::from(x0 + j));
        let mut next_basis = vec![Rational::zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next_basis[i + 1] += b;
            next_basis[i] -= &node * b;
        }
        basis = next_basis;

        table = table.windows(2).map(|w| &w[1] - &w[0]).collect();
    }

    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rat_int};

    fn rational_values(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn fits_exact_linear_sequence() {
        // 2m + 1 from the start.
        let values = rational_values(&[1, 3, 5, 7, 9, 11, 13]);
        let fit = detect_eventual_polynomial(&values, |k| k + 3).unwrap();
        assert_eq!(fit.coeffs, vec![rat_int(1), rat_int(2)]);
        assert_eq!(fit.onset, 0);
    }

    #[test]
    fn onset_detected_after_pre_polynomial_head() {
        // 1, then identically 0 — the irrelevant-ideal shape.
        let values = rational_values(&[1, 0, 0, 0, 0, 0]);
        let fit = detect_eventual_polynomial(&values, |k| k + 3).unwrap();
        assert!(fit.coeffs.is_empty());
        assert_eq!(fit.onset, 1);
    }

    #[test]
    fn quadratic_with_half_coefficients() {
        // (m^2 - m)/2: 0 0 1 3 6 10 15 21
        let values = rational_values(&[0, 0, 1, 3, 6, 10, 15, 21]);
        let fit = detect_eventual_polynomial(&values, |k| k + 2).unwrap();
        assert_eq!(fit.coeffs, vec![rat_int(0), rat(-1, 2), rat(1, 2)]);
        assert_eq!(fit.onset, 0);
    }

    #[test]
    fn all_zero_sequence_is_the_zero_polynomial() {
        let values = rational_values(&[0, 0, 0, 0]);
        let fit = detect_eventual_polynomial(&values, |k| k + 2).unwrap();
        assert!(fit.coeffs.is_empty());
        assert_eq!(fit.onset, 0);
        assert_eq!(fit.eval(17), rat_int(0));
    }

    #[test]
    fn too_few_samples_is_an_error() {
        let values = rational_values(&[0, 1, 4, 9, 16]);
        // Degree 2 needs a run of 5 vanishing third differences here.
        let err = detect_eventual_polynomial(&values, |k| k + 3).unwrap_err();
        assert!(matches!(err, InterpError::NoStabilization { .. }));
    }
}
