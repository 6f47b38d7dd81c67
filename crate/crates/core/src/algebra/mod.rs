//! Multivariate polynomials over exact rationals.
//!
//! Variables are positional: `x0 … xN` in a ring with `N+1` variables.
//! Monomials are ordered by graded reverse-lexicographic order (grevlex),
//! which is also the canonical storage and printing order of polynomial
//! terms (descending, lead term first).

mod parser;

pub use parser::{parse_polynomial, ParseError};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number. Always stored normalized: positive
/// denominator, numerator and denominator coprime, zero is `0/1`.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical `"p/q"` rendering with an explicit denominator, e.g. `"-3/1"`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("operands live in different rings: {left} vs {right} variables")]
    NumVarsMismatch { left: usize, right: usize },
    #[error("generator {index} is not homogeneous")]
    InhomogeneousGenerator { index: usize },
    #[error("generator {index} is zero")]
    ZeroGenerator { index: usize },
}

/// A power product `x0^e0 * … * xN^eN`, identified by its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The constant monomial `1` in `num_vars` variables.
    pub fn one(num_vars: usize) -> Self {
        Monomial { exps: vec![0; num_vars] }
    }

    /// The single variable `x_i`.
    pub fn variable(i: usize, num_vars: usize) -> Self {
        assert!(i < num_vars, "variable index out of range");
        let mut exps = vec![0; num_vars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.num_vars(), other.num_vars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.num_vars(), other.num_vars());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.num_vars(), other.num_vars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.num_vars(), other.num_vars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect(),
        }
    }

    pub fn is_coprime_with(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Grevlex: higher total degree wins; on equal degree, `a > b` iff the last
/// nonzero entry of `a − b` is negative.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.num_vars(), other.num_vars());
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {
                for i in (0..self.exps.len()).rev() {
                    match self.exps[i].cmp(&other.exps[i]) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Result of the homogeneity check.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Homogeneity {
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

/// A multivariate polynomial over `ℚ`.
///
/// Terms are stored in a map keyed by monomial; no zero coefficient is ever
/// kept, so equality of term maps is equality of polynomials. The map's key
/// order is grevlex ascending, and [`Polynomial::terms`] iterates descending
/// (lead term first), which is the canonical printing order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        let mut p = Polynomial::zero(num_vars);
        p.add_term(Monomial::one(num_vars), c);
        p
    }

    pub fn variable(i: usize, num_vars: usize) -> Self {
        let mut p = Polynomial::zero(num_vars);
        p.add_term(Monomial::variable(i, num_vars), Rational::one());
        p
    }

    pub fn from_terms<I>(num_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(num_vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending grevlex order (lead term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Accumulate `c * m` into the term map, dropping the entry when the
    /// coefficient cancels to zero.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.num_vars(), self.num_vars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_ring(other)?;
        let mut out = Polynomial::zero(self.num_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.num_vars);
        }
        Polynomial {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    /// Multiply by a single monomial (exact, no cancellation possible).
    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        debug_assert_eq!(m.num_vars(), self.num_vars);
        Polynomial {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::constant(self.num_vars, Rational::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.checked_mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base).expect("same ring");
            }
        }
        result
    }

    /// Common degree of all terms, `Zero` for the zero polynomial, or
    /// `Inhomogeneous` when terms of different degrees are mixed.
    pub fn homogeneous_degree(&self) -> Homogeneity {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        match degrees.next() {
            None => Homogeneity::Zero,
            Some(d) => {
                if degrees.all(|e| e == d) {
                    Homogeneity::Homogeneous(d)
                } else {
                    Homogeneity::Inhomogeneous
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if self.num_vars != other.num_vars {
            return Err(AlgebraError::NumVarsMismatch {
                left: self.num_vars,
                right: other.num_vars,
            });
        }
        Ok(())
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{}", format_coeff(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_coeff(&abs))?;
            }
        }
        Ok(())
    }
}

fn format_coeff(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// A homogeneous ideal, given by generators. Construction enforces that
/// every generator is nonzero and homogeneous and that all generators share
/// the same ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ideal {
    num_vars: usize,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(num_vars: usize, generators: Vec<Polynomial>) -> Result<Self, AlgebraError> {
        for (index, g) in generators.iter().enumerate() {
            if g.num_vars() != num_vars {
                return Err(AlgebraError::NumVarsMismatch {
                    left: num_vars,
                    right: g.num_vars(),
                });
            }
            match g.homogeneous_degree() {
                Homogeneity::Zero => return Err(AlgebraError::ZeroGenerator { index }),
                Homogeneity::Inhomogeneous => {
                    return Err(AlgebraError::InhomogeneousGenerator { index })
                }
                Homogeneity::Homogeneous(_) => {}
            }
        }
        Ok(Ideal { num_vars, generators })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.generators
            .iter()
            .filter_map(|g| g.total_degree())
            .max()
            .unwrap_or(0)
    }
}
