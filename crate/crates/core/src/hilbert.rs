//! Standard monomials, Hilbert functions and Hilbert polynomials of
//! monomial ideals, and the geometric invariants `n`, `d`, `μ`.
//!
//! The Hilbert function is computed along two independent paths: direct
//! enumeration of standard monomials (the oracle path) and a pivot
//! recursion on the generators splitting along a variable (ideal quotient
//! plus ideal sum — the fast path). Tests and the cross-check mode hold the
//! two paths against each other in every degree.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::{format_rational, rat_int, Monomial, Rational};
use crate::groebner::MonomialIdeal;
use crate::interp::{detect_eventual_polynomial, EventualPolynomial, InterpError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HilbertError {
    #[error("{0}")]
    NoStabilization(#[from] InterpError),
    #[error("spot check failed at m = {m}: polynomial gives {expected}, function gives {got}")]
    SpotCheckMismatch { m: u32, expected: String, got: u64 },
    #[error("the ideal defines the empty scheme (zero Hilbert polynomial)")]
    EmptyScheme,
    #[error("leading coefficient does not give a positive integer degree: n!*c_n = {value}")]
    NonGeometricDegree { value: String },
}

/// All degree-`m` monomials in `num_vars` variables, grevlex descending.
pub fn monomials_of_degree(num_vars: usize, m: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; num_vars];
    fill(&mut out, &mut exps, 0, m);
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn fill(out: &mut Vec<Monomial>, exps: &mut Vec<u32>, slot: usize, remaining: u32) {
    if slot + 1 == exps.len() {
        exps[slot] = remaining;
        out.push(Monomial::new(exps.clone()));
        exps[slot] = 0;
        return;
    }
    for e in 0..=remaining {
        exps[slot] = e;
        fill(out, exps, slot + 1, remaining - e);
    }
    exps[slot] = 0;
}

/// The degree-`m` monomials divisible by no generator of `ideal`, in
/// grevlex-descending order. These form a basis of the degree-`m` part of
/// the quotient ring.
pub fn standard_monomials(ideal: &MonomialIdeal, m: u32) -> Vec<Monomial> {
    monomials_of_degree(ideal.num_vars(), m)
        .into_iter()
        .filter(|mono| !ideal.contains(mono))
        .collect()
}

/// Hilbert function by direct enumeration — the oracle path.
pub fn hilbert_function_by_enumeration(ideal: &MonomialIdeal, m: u32) -> u64 {
    standard_monomials(ideal, m).len() as u64
}

/// Hilbert function by pivot recursion — the fast path.
///
/// Splitting along a variable `x` gives the exact sequence relating the
/// quotient by `M` to the quotients by `M + (x)` and `(M : x)` shifted one
/// degree down, hence `HF(M, m) = HF(M + (x), m) + HF(M : x, m − 1)`. The
/// pivot is always taken from a generator mixing at least two variables, so
/// both branches strictly shrink the generators; once only pure variable
/// powers remain they are pairwise coprime and inclusion–exclusion finishes
/// in closed form.
pub fn hilbert_function(ideal: &MonomialIdeal, m: u32) -> u64 {
    if ideal.is_unit() {
        return 0;
    }
    if m == 0 {
        return 1;
    }
    let gens = ideal.generators();
    let num_vars = ideal.num_vars();
    if gens.is_empty() {
        return full_ring_dimension(num_vars, m);
    }
    if gens.len() == 1 {
        let d = gens[0].degree();
        let all = full_ring_dimension(num_vars, m);
        return if m >= d {
            all - full_ring_dimension(num_vars, m - d)
        } else {
            all
        };
    }

    let support = |g: &Monomial| g.exponents().iter().filter(|&&e| e > 0).count();
    if gens.iter().all(|g| support(g) <= 1) {
        // Pure powers of distinct variables.
        let degs: Vec<u32> = gens.iter().map(|g| g.degree()).collect();
        let mut total: i128 = 0;
        for mask in 0u32..(1 << degs.len()) {
            let d: u32 = degs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, deg)| *deg)
                .sum();
            if m >= d {
                let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
                total += sign * full_ring_dimension(num_vars, m - d) as i128;
            }
        }
        return u64::try_from(total).expect("Hilbert function is non-negative");
    }

    // Pivot on the most frequent variable among mixed generators.
    let mut counts = vec![0usize; num_vars];
    for g in gens.iter().filter(|g| support(g) >= 2) {
        for (i, &e) in g.exponents().iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let pivot_var = counts
        .iter()
        .enumerate()
        .max_by_key(|&(i, &c)| (c, usize::MAX - i))
        .map(|(i, _)| i)
        .expect("at least one variable");
    let pivot = Monomial::variable(pivot_var, num_vars);

    hilbert_function(&ideal.plus(&pivot), m) + hilbert_function(&ideal.quotient_by(&pivot), m - 1)
}

/// `dim_Q k[x0..xN]_m = C(m + N, N)`.
pub fn full_ring_dimension(num_vars: usize, m: u32) -> u64 {
    binomial(m as u64 + num_vars as u64 - 1, num_vars as u64 - 1)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// Which computation path feeds the Hilbert-function table.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum HilbertPath {
    Fast,
    Enumeration,
}

/// Hilbert function values with the fitted Hilbert polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertProfile {
    /// `m → HF(m)` for `m = 0..=m_max`.
    pub values: Vec<(u32, u64)>,
    /// Hilbert polynomial coefficients `c0..cn`, ascending; empty for P = 0.
    pub poly_coeffs: Vec<Rational>,
    /// Least `m` from which the values equal the polynomial exactly.
    pub onset_m0: u32,
}

impl HilbertProfile {
    pub fn value(&self, m: u32) -> Option<u64> {
        self.values
            .iter()
            .find(|(mm, _)| *mm == m)
            .map(|(_, v)| *v)
    }

    pub fn poly_degree(&self) -> Option<usize> {
        if self.poly_coeffs.is_empty() {
            None
        } else {
            Some(self.poly_coeffs.len() - 1)
        }
    }
}

/// Default sampling bound: `2 * (max generator degree) * max(n, 1) + 8`.
pub fn default_m_max(ideal: &MonomialIdeal) -> u32 {
    let n = ideal.projective_dimension().unwrap_or(0).max(1) as u32;
    2 * ideal.max_generator_degree() * n + 8
}

/// Compute `HF(m)` for `m = 0..=m_max`, fit the Hilbert polynomial from the
/// stabilized tail of the finite-difference table, and spot-check the fit at
/// `m_max + 2`. Stabilization requires the order-`(deg+1)` differences to
/// vanish for `deg + 3` consecutive samples.
pub fn hilbert_polynomial(
    ideal: &MonomialIdeal,
    m_max: u32,
    path: HilbertPath,
) -> Result<HilbertProfile, HilbertError> {
    let hf = |m: u32| match path {
        HilbertPath::Fast => hilbert_function(ideal, m),
        HilbertPath::Enumeration => hilbert_function_by_enumeration(ideal, m),
    };
    let values: Vec<(u32, u64)> = (0..=m_max).map(|m| (m, hf(m))).collect();
    let as_rationals: Vec<Rational> = values
        .iter()
        .map(|(_, v)| rat_int(*v as i64))
        .collect();
    let fit = detect_eventual_polynomial(&as_rationals, |k| k + 3)?;

    let spot_m = m_max + 2;
    let expected = fit.eval(spot_m as usize);
    let got = hf(spot_m);
    if expected != rat_int(got as i64) {
        return Err(HilbertError::SpotCheckMismatch {
            m: spot_m,
            expected: format_rational(&expected),
            got,
        });
    }

    Ok(HilbertProfile {
        values,
        poly_coeffs: fit.coeffs,
        onset_m0: fit.onset as u32,
    })
}

/// Dimension, degree and average scalar curvature of a Hilbert profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricInvariants {
    pub dim_n: usize,
    pub degree_d: u64,
    /// `μ = 2 · n! · c_{n−1} / d`, the normalization entering `F₁` (zero in
    /// dimension zero, where there is no subleading coefficient).
    pub mu: Rational,
}

pub fn geometric_invariants(profile: &HilbertProfile) -> Result<GeometricInvariants, HilbertError> {
    let n = match profile.poly_degree() {
        None => return Err(HilbertError::EmptyScheme),
        Some(n) => n,
    };
    let n_factorial = factorial(n);
    let d_rat = &profile.poly_coeffs[n] * &n_factorial;
    if !d_rat.is_integer() || !d_rat.is_positive() {
        return Err(HilbertError::NonGeometricDegree {
            value: format_rational(&d_rat),
        });
    }
    let degree_d = u64::try_from(d_rat.to_integer()).expect("positive integer degree");
    let mu = if n == 0 {
        Rational::zero()
    } else {
        rat_int(2) * &n_factorial * &profile.poly_coeffs[n - 1] / &d_rat
    };
    Ok(GeometricInvariants { dim_n: n, degree_d, mu })
}

pub fn factorial(n: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 2..=n {
        acc *= rat_int(i as i64);
    }
    acc
}

/// Convenience wrapper around [`EventualPolynomial`] fitting for integer
/// value tables that are already known (used by the expansion route).
pub fn fit_integer_values(
    values: &[i64],
    required_run: impl Fn(usize) -> usize,
) -> Result<EventualPolynomial, InterpError> {
    let rationals: Vec<Rational> = values.iter().map(|&v| rat_int(v)).collect();
    detect_eventual_polynomial(&rationals, required_run)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, rat};

    fn mono(s: &str, n: usize) -> Monomial {
        parse_polynomial(s, n)
            .unwrap()
            .terms()
            .next()
            .unwrap()
            .0
            .clone()
    }

    fn mi(gens: &[&str], n: usize) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|s| mono(s, n)).collect())
    }

    #[test]
    fn degree_one_standard_monomials_of_conic_lead() {
        let m = mi(&["x0*x2"], 3);
        let found = standard_monomials(&m, 1);
        assert_eq!(found, vec![mono("x0", 3), mono("x1", 3), mono("x2", 3)]);
    }

    #[test]
    fn degree_two_standard_monomials_of_conic_lead() {
        let m = mi(&["x0*x2"], 3);
        let found = standard_monomials(&m, 2);
        let expected = vec![
            mono("x0^2", 3),
            mono("x0*x1", 3),
            mono("x1^2", 3),
            mono("x1*x2", 3),
            mono("x2^2", 3),
        ];
        assert_eq!(found, expected);
    }

    #[test]
    fn unit_ideal_has_no_standard_monomials() {
        let m = MonomialIdeal::new(3, vec![Monomial::one(3)]);
        for deg in 0..5 {
            assert!(standard_monomials(&m, deg).is_empty());
            assert_eq!(hilbert_function(&m, deg), 0);
        }
    }

    #[test]
    fn hilbert_function_of_double_line() {
        // (x1^2) in 3 variables: HF(m) = 2m + 1.
        let m = mi(&["x1^2"], 3);
        assert_eq!(hilbert_function(&m, 3), 7);
        assert_eq!(hilbert_function_by_enumeration(&m, 3), 7);
    }

    #[test]
    fn hilbert_function_of_full_ring() {
        let m = MonomialIdeal::zero_ideal(3);
        assert_eq!(hilbert_function(&m, 4), 15);
    }

    #[test]
    fn hilbert_function_of_twisted_cubic_lead() {
        let m = mi(&["x1^2", "x1*x2", "x2^2"], 4);
        assert_eq!(hilbert_function(&m, 2), 7);
        assert_eq!(hilbert_function_by_enumeration(&m, 2), 7);
    }

    #[test]
    fn conic_lead_polynomial_is_two_m_plus_one() {
        let m = mi(&["x0*x2"], 3);
        let profile = hilbert_polynomial(&m, 12, HilbertPath::Fast).unwrap();
        assert_eq!(profile.poly_coeffs, vec![rat_int(1), rat_int(2)]);
        assert_eq!(profile.onset_m0, 0);
    }

    #[test]
    fn irrelevant_ideal_polynomial_is_zero_with_onset_one() {
        let m = mi(&["x0", "x1", "x2"], 3);
        let profile = hilbert_polynomial(&m, 8, HilbertPath::Fast).unwrap();
        assert!(profile.poly_coeffs.is_empty());
        assert_eq!(profile.onset_m0, 1);
        assert_eq!(geometric_invariants(&profile), Err(HilbertError::EmptyScheme));
    }

    #[test]
    fn quadric_surface_lead_polynomial() {
        // Lead ideal of (x0*x3 - x1*x2) under grevlex is (x1*x2).
        let m = mi(&["x1*x2"], 4);
        let profile = hilbert_polynomial(&m, 16, HilbertPath::Fast).unwrap();
        assert_eq!(profile.poly_coeffs, vec![rat_int(1), rat_int(2), rat_int(1)]);
        assert_eq!(profile.onset_m0, 0);
    }

    #[test]
    fn invariants_of_classical_profiles() {
        let line2 = HilbertProfile {
            values: vec![],
            poly_coeffs: vec![rat_int(1), rat_int(2)],
            onset_m0: 0,
        };
        let inv = geometric_invariants(&line2).unwrap();
        assert_eq!((inv.dim_n, inv.degree_d), (1, 2));
        assert_eq!(inv.mu, rat_int(1));

        let cubic = HilbertProfile {
            values: vec![],
            poly_coeffs: vec![rat_int(1), rat_int(3)],
            onset_m0: 0,
        };
        let inv = geometric_invariants(&cubic).unwrap();
        assert_eq!((inv.dim_n, inv.degree_d), (1, 3));
        assert_eq!(inv.mu, rat(2, 3));

        let quadric = HilbertProfile {
            values: vec![],
            poly_coeffs: vec![rat_int(1), rat_int(2), rat_int(1)],
            onset_m0: 0,
        };
        let inv = geometric_invariants(&quadric).unwrap();
        assert_eq!((inv.dim_n, inv.degree_d), (2, 2));
        assert_eq!(inv.mu, rat_int(4));
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 5), 0);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_monomial_ideal() -> impl Strategy<Value = MonomialIdeal> {
            (2usize..=4)
                .prop_flat_map(|nv| {
                    prop::collection::vec(
                        prop::collection::vec(0u32..=2, nv).prop_map(Monomial::new),
                        0..4,
                    )
                    .prop_map(move |gens| {
                        let gens: Vec<Monomial> =
                            gens.into_iter().filter(|g| !g.is_one()).collect();
                        MonomialIdeal::new(nv, gens)
                    })
                })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn fast_path_agrees_with_enumeration(m_ideal in arb_monomial_ideal(), m in 0u32..=7) {
                prop_assert_eq!(
                    hilbert_function(&m_ideal, m),
                    hilbert_function_by_enumeration(&m_ideal, m)
                );
            }

            #[test]
            fn containment_is_monotone(m_ideal in arb_monomial_ideal(), extra in prop::collection::vec(0u32..=2, 2..=4), m in 0u32..=6) {
                let nv = m_ideal.num_vars();
                let mut extra = extra;
                extra.truncate(nv);
                while extra.len() < nv {
                    extra.push(0);
                }
                let bigger = m_ideal.plus(&Monomial::new(extra));
                prop_assert!(
                    hilbert_function(&m_ideal, m) >= hilbert_function(&bigger, m)
                );
            }
        }
    }
}
