//! Hilbert-point weights, the Futaki invariant `F₁`, the CM weight, and the
//! alternating-sum lift weights whose m-independence certifies everything.
//!
//! For the flat-limit lead ideal `M` of a degeneration along `λ`, the weight
//! of the m-th Hilbert point is
//!
//! ```text
//! w_λ(Hilb_m) = − Σ ⟨w, α⟩    over the standard monomials α of M in degree m.
//! ```
//!
//! The minus sign reflects the Hilbert point living in the dual exterior
//! power; it is calibrated by the sign tests on the conic degenerations
//! (non-stabilizer directions must give `F₁ < 0`, the stabilizer `F₁ = 0`).
//!
//! Writing `w_λ(Hilb_m) = a_{n+1} m^{n+1} + a_n m^n + …` for `m` past the
//! onset,
//!
//! ```text
//! F₁   = (n! / 2d) (2 a_n − μ a_{n+1})
//! w_CM = 2 d (n+1) F₁
//! ```
//!
//! and the lift weight `A(m)` assembled from the alternating binomial sums
//! `L₁, L₂` is independent of `m` and equal to `(n+1)! (2 a_n − μ a_{n+1})`,
//! which equals `w_CM`. The verifier checks all of this exactly.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{format_rational, rat_int, Rational};
use crate::groebner::{MonomialIdeal, OneParamSubgroup};
use crate::hilbert::{factorial, standard_monomials, GeometricInvariants, HilbertProfile};
use crate::interp::{detect_eventual_polynomial, InterpError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StabilityError {
    #[error("{0}")]
    NoStabilization(#[from] InterpError),
    #[error("weight spot check failed at m = {m}: polynomial gives {expected}, direct sum gives {got}")]
    SpotCheckMismatch { m: u32, expected: String, got: i64 },
    #[error("weight value for m = {m} is missing from the table")]
    MissingValue { m: u32 },
    #[error("closed form is undefined for k = {k} > n + 1 = {limit}")]
    ClosedFormOutOfRange { k: u32, limit: u32 },
    #[error("verification range starts at m = {m_from}, below the detected onset {onset}")]
    RangeBelowOnset { m_from: u32, onset: u32 },
    #[error("weight polynomial has degree {got}, exceeding n + 1 = {limit}")]
    WeightDegreeTooHigh { got: usize, limit: usize },
    #[error("lift weight is not m-independent: offending m = {failures:?}, expected {expected}")]
    MIndependenceFailed { failures: Vec<u32>, expected: String },
    #[error("F1 routes disagree: weight-coefficient form {direct} vs expansion form {expansion}")]
    RouteDisagreement { direct: String, expansion: String },
}

/// `w_λ(Hilb_m)`: minus the total λ-weight of the degree-`m` standard
/// monomials of the flat-limit lead ideal.
pub fn hilbert_weight(ideal: &MonomialIdeal, lambda: &OneParamSubgroup, m: u32) -> i64 {
    debug_assert_eq!(ideal.num_vars(), lambda.num_vars());
    -standard_monomials(ideal, m)
        .iter()
        .map(|mono| lambda.pairing(mono))
        .sum::<i64>()
}

/// Weight values with the fitted weight polynomial `Σ a_k m^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightProfile {
    /// `m → w_λ(Hilb_m)` for `m = 0..=m_max`.
    pub values: Vec<(u32, i64)>,
    /// Coefficients `a0, a1, …` ascending; empty when the weight vanishes
    /// identically (stabilizer directions, the trivial subgroup).
    pub a_coeffs: Vec<Rational>,
    pub onset_m0: u32,
}

impl WeightProfile {
    pub fn value(&self, m: u32) -> Option<i64> {
        self.values
            .iter()
            .find(|(mm, _)| *mm == m)
            .map(|(_, v)| *v)
    }

    /// `a_k`, zero-padded beyond the detected degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.a_coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading coefficient `a_{n+1}` for ambient dimension `n`.
    pub fn a_top(&self, n: usize) -> Rational {
        self.coeff(n + 1)
    }

    /// Subdominant coefficient `a_n`.
    pub fn a_sub(&self, n: usize) -> Rational {
        self.coeff(n)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.a_coeffs.is_empty() {
            None
        } else {
            Some(self.a_coeffs.len() - 1)
        }
    }
}

/// Sample `w_λ(Hilb_m)` for `m = 0..=m_max` and fit the weight polynomial.
/// Onset detection reuses the finite-difference policy of the Hilbert
/// module (order deg+1 differences, dimension+3 confirmations), plus a spot
/// check at `m_max + 2`.
pub fn weight_profile(
    ideal: &MonomialIdeal,
    lambda: &OneParamSubgroup,
    m_max: u32,
) -> Result<WeightProfile, StabilityError> {
    let values: Vec<(u32, i64)> = (0..=m_max)
        .map(|m| (m, hilbert_weight(ideal, lambda, m)))
        .collect();
    let rationals: Vec<Rational> = values.iter().map(|(_, v)| rat_int(*v)).collect();
    let fit = detect_eventual_polynomial(&rationals, |k| k + 2)?;

    let spot_m = m_max + 2;
    let got = hilbert_weight(ideal, lambda, spot_m);
    let expected = fit.eval(spot_m as usize);
    if expected != rat_int(got) {
        return Err(StabilityError::SpotCheckMismatch {
            m: spot_m,
            expected: format_rational(&expected),
            got,
        });
    }

    Ok(WeightProfile {
        values,
        a_coeffs: fit.coeffs,
        onset_m0: fit.onset as u32,
    })
}

/// `F₁ = (n!/2d)(2aₙ − μ a_{n+1})`, from the fitted coefficients.
pub fn futaki_f1(wp: &WeightProfile, inv: &GeometricInvariants) -> Result<Rational, StabilityError> {
    let n = inv.dim_n;
    if let Some(deg) = wp.degree() {
        if deg > n + 1 {
            return Err(StabilityError::WeightDegreeTooHigh { got: deg, limit: n + 1 });
        }
    }
    let d = rat_int(inv.degree_d as i64);
    Ok(factorial(n) / (rat_int(2) * d)
        * (rat_int(2) * wp.a_sub(n) - &inv.mu * wp.a_top(n)))
}

/// `w_CM = 2 d (n+1) F₁`.
pub fn cm_weight(f1: &Rational, d: u64, n: usize) -> Rational {
    rat_int(2) * rat_int(d as i64) * rat_int(n as i64 + 1) * f1
}

fn looked_up(values: &[(u32, i64)], m: u32) -> Result<i64, StabilityError> {
    values
        .iter()
        .find(|(mm, _)| *mm == m)
        .map(|(_, v)| *v)
        .ok_or(StabilityError::MissingValue { m })
}

/// `w(L₁(m)) = Σ_{i=0}^{n} (−1)^i C(n,i) w(Hilb_{m+i})`.
pub fn lift_weight_l1(values: &[(u32, i64)], n: usize, m: u32) -> Result<i64, StabilityError> {
    alternating_sum(values, n, m)
}

/// `w(L₂(m)) = Σ_{i=0}^{n+1} (−1)^i C(n+1,i) w(Hilb_{m+i})`.
pub fn lift_weight_l2(values: &[(u32, i64)], n: usize, m: u32) -> Result<i64, StabilityError> {
    alternating_sum(values, n + 1, m)
}

fn alternating_sum(values: &[(u32, i64)], order: usize, m: u32) -> Result<i64, StabilityError> {
    let mut acc: i128 = 0;
    let mut binom: i128 = 1;
    for i in 0..=order {
        let v = looked_up(values, m + i as u32)? as i128;
        let sign = if i % 2 == 0 { 1 } else { -1 };
        acc += sign * binom * v;
        binom = binom * (order as i128 - i as i128) / (i as i128 + 1);
    }
    Ok(i64::try_from(acc).expect("lift weight fits in i64"))
}

/// The total lift weight
/// `A(m) = (−1)^n [ 2(n+1)(L₁(m) + m·L₂(m)) + (μ + n(n+1))·L₂(m) ]`,
/// exactly rational because `μ` may be.
pub fn lift_weight_total(
    values: &[(u32, i64)],
    n: usize,
    mu: &Rational,
    m: u32,
) -> Result<Rational, StabilityError> {
    let l1 = rat_int(lift_weight_l1(values, n, m)?);
    let l2 = rat_int(lift_weight_l2(values, n, m)?);
    let sign = if n % 2 == 0 { rat_int(1) } else { rat_int(-1) };
    let n_rat = rat_int(n as i64);
    let inner = rat_int(2) * (&n_rat + rat_int(1)) * (&l1 + rat_int(m as i64) * &l2)
        + (mu + &n_rat * (&n_rat + rat_int(1))) * &l2;
    Ok(sign * inner)
}

/// Result of the m-independence check: the lift table, the target constant
/// `(n+1)!(2aₙ − μa_{n+1})`, and the list of offending `m` (empty on pass).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MIndependence {
    pub table: Vec<(u32, Rational)>,
    pub target: Rational,
    pub failures: Vec<u32>,
}

impl MIndependence {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluate `A(m)` over `m_from..=m_to` and compare every entry with the
/// target constant. Ranges reaching below the onset are rejected, never
/// silently passed.
#[allow(clippy::too_many_arguments)]
pub fn verify_m_independence(
    values: &[(u32, i64)],
    n: usize,
    mu: &Rational,
    a_top: &Rational,
    a_sub: &Rational,
    m_from: u32,
    m_to: u32,
    onset: u32,
) -> Result<MIndependence, StabilityError> {
    if m_from < onset {
        return Err(StabilityError::RangeBelowOnset { m_from, onset });
    }
    let target = factorial(n + 1) * (rat_int(2) * a_sub - mu * a_top);
    let mut table = Vec::new();
    let mut failures = Vec::new();
    for m in m_from..=m_to {
        let a = lift_weight_total(values, n, mu, m)?;
        if a != target {
            failures.push(m);
        }
        table.push((m, a));
    }
    Ok(MIndependence { table, target, failures })
}

/// `Σ_{i=0}^{n} (−1)^i C(n,i) (m+i)^k`, evaluated directly.
pub fn binomial_sum(n: u32, k: u32, m: i64) -> BigInt {
    let mut acc = BigInt::zero();
    let mut binom = BigInt::one();
    for i in 0..=n {
        let base = BigInt::from(m + i as i64);
        let term = &binom * base.pow(k);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        if i < n {
            binom = binom * BigInt::from(n - i) / BigInt::from(i + 1);
        }
    }
    acc
}

/// Closed form of [`binomial_sum`]:
/// `(−1)^n (m + n/2)(n+1)!` for `k = n+1`, `(−1)^n n!` for `k = n`, zero for
/// `k ≤ n−1`. Defined only for `k ≤ n+1`.
pub fn binomial_sum_closed_form(n: u32, k: u32, m: i64) -> Result<BigInt, StabilityError> {
    if k > n + 1 {
        return Err(StabilityError::ClosedFormOutOfRange { k, limit: n + 1 });
    }
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let value = if k == n + 1 {
        // (2m + n)(n+1)!/2 is an integer: (n+1)! is even for n ≥ 1, and the
        // n = 0 case reduces to m · 1!.
        let fact: BigInt = (1..=n as i64 + 1).map(BigInt::from).product();
        BigInt::from(2 * m + n as i64) * fact / BigInt::from(2)
    } else if k == n {
        (1..=n as i64).map(BigInt::from).product()
    } else {
        BigInt::zero()
    };
    Ok(BigInt::from(sign) * value)
}

/// `F₁` by the expansion route: fit both tables, read off the weight
/// coefficients `a` and the coefficients `b` of `m·P(m)`, and return
/// `(aₙ b_{n+1} − a_{n+1} bₙ) / b_{n+1}²` — the coefficient of `1/m` in
/// `w_λ(Hilb_m)/(m P(m))`. Must agree exactly with [`futaki_f1`].
pub fn f1_via_expansion(
    weight_values: &[(u32, i64)],
    hf_values: &[(u32, u64)],
) -> Result<Rational, StabilityError> {
    let w_rat: Vec<Rational> = weight_values.iter().map(|(_, v)| rat_int(*v)).collect();
    let h_rat: Vec<Rational> = hf_values.iter().map(|(_, v)| rat_int(*v as i64)).collect();
    let w_fit = detect_eventual_polynomial(&w_rat, |k| k + 2)?;
    let h_fit = detect_eventual_polynomial(&h_rat, |k| k + 3)?;

    let n = match h_fit.degree() {
        // Zero Hilbert polynomial: no geometry to expand against.
        None => {
            return Err(StabilityError::NoStabilization(InterpError::NoStabilization {
                samples: hf_values.len(),
                max_order: 0,
            }))
        }
        Some(n) => n,
    };
    // m·P(m) = b_{n+1} m^{n+1} + b_n m^n + …, so b_k = c_{k−1}.
    let b_top = h_fit.coeff(n);
    let b_sub = if n == 0 { Rational::zero() } else { h_fit.coeff(n - 1) };
    let a_top = w_fit.coeff(n + 1);
    let a_sub = w_fit.coeff(n);
    Ok((a_sub * &b_top - a_top * b_sub) / (&b_top * &b_top))
}

/// `(n+1)! · a_{n+1}` — the leading-coefficient proxy for the Chow weight.
pub fn chow_weight_leading(wp: &WeightProfile, n: usize) -> Rational {
    factorial(n + 1) * wp.a_top(n)
}

/// Assembled stability data for one degeneration. Construction verifies the
/// m-independence of the lift table and the agreement of every route to the
/// CM weight; a violation is a mathematical bug, never silent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub dim_n: usize,
    pub degree_d: u64,
    pub mu: Rational,
    pub a_top: Rational,
    pub a_sub: Rational,
    pub f1: Rational,
    pub f1_expansion: Rational,
    pub w_cm: Rational,
    pub lift_table: Vec<(u32, Rational)>,
    pub lift_constant: Rational,
    pub chow_top: Rational,
}

pub fn stability_report(
    hp: &HilbertProfile,
    inv: &GeometricInvariants,
    wp: &WeightProfile,
    m_from: u32,
    m_to: u32,
) -> Result<StabilityReport, StabilityError> {
    let n = inv.dim_n;
    let f1 = futaki_f1(wp, inv)?;
    let w_cm = cm_weight(&f1, inv.degree_d, n);

    let check = verify_m_independence(
        &wp.values,
        n,
        &inv.mu,
        &wp.a_top(n),
        &wp.a_sub(n),
        m_from,
        m_to,
        wp.onset_m0.max(hp.onset_m0),
    )?;
    if !check.pass() {
        return Err(StabilityError::MIndependenceFailed {
            failures: check.failures,
            expected: format_rational(&check.target),
        });
    }
    if check.target != w_cm {
        // Algebraically impossible; kept as a hard invariant on the code.
        return Err(StabilityError::MIndependenceFailed {
            failures: vec![],
            expected: format_rational(&w_cm),
        });
    }

    let f1_expansion = f1_via_expansion(&wp.values, &hp.values)?;
    if f1_expansion != f1 {
        return Err(StabilityError::RouteDisagreement {
            direct: format_rational(&f1),
            expansion: format_rational(&f1_expansion),
        });
    }

    Ok(StabilityReport {
        dim_n: n,
        degree_d: inv.degree_d,
        mu: inv.mu.clone(),
        a_top: wp.a_top(n),
        a_sub: wp.a_sub(n),
        f1,
        f1_expansion,
        w_cm,
        lift_table: check.table,
        lift_constant: check.target,
        chow_top: chow_weight_leading(wp, n),
    })
}
