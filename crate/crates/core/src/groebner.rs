//! Term orders, Buchberger's algorithm, and the flat-limit machinery.
//!
//! A one-parameter subgroup acts diagonally as `λ(t)·xᵢ = t^{wᵢ} xᵢ`. Its
//! flat limit `lim_{t→0} λ(t)(X)` is realized algebraically: compute a
//! reduced Gröbner basis under the weight-refined order, take the initial
//! form of each basis element (the terms of maximal `⟨w, α⟩`), and read off
//! the lead-monomial ideal used for all subsequent counting. Non-generic
//! weights (ties) are handled by the grevlex refinement, the standard
//! two-step degeneration.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::One;
use thiserror::Error;

use crate::algebra::{AlgebraError, Homogeneity, Ideal, Monomial, Polynomial, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("monomials have different lengths: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("weight vector has {weights} entries but the ring has {ring} variables")]
    WeightLengthMismatch { weights: usize, ring: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Integer weight vector `(w0, …, wN)` of a diagonal one-parameter subgroup.
/// The zero vector (trivial subgroup) is permitted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OneParamSubgroup {
    weights: Vec<i64>,
}

impl OneParamSubgroup {
    pub fn new(weights: Vec<i64>) -> Self {
        OneParamSubgroup { weights }
    }

    pub fn zero(num_vars: usize) -> Self {
        OneParamSubgroup { weights: vec![0; num_vars] }
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn num_vars(&self) -> usize {
        self.weights.len()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }

    /// `⟨w, α⟩` for a monomial with exponent vector α.
    pub fn pairing(&self, m: &Monomial) -> i64 {
        debug_assert_eq!(self.weights.len(), m.num_vars());
        self.weights
            .iter()
            .zip(m.exponents())
            .map(|(w, &e)| w * e as i64)
            .sum()
    }

    /// Shift every weight by `c`, i.e. `w + c·(1,…,1)`.
    pub fn translated(&self, c: i64) -> Self {
        OneParamSubgroup {
            weights: self.weights.iter().map(|w| w + c).collect(),
        }
    }

    /// Scale every weight by `c`.
    pub fn scaled(&self, c: i64) -> Self {
        OneParamSubgroup {
            weights: self.weights.iter().map(|w| w * c).collect(),
        }
    }
}

/// Monomial order used for Gröbner computations.
///
/// The weight-refined order compares `⟨w, α⟩` first (larger wins) and breaks
/// ties by grevlex. On homogeneous comparisons this is a valid monomial
/// order for any integer weight vector, which is all the homogeneous-only
/// API surface ever needs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TermOrder {
    Grevlex,
    WeightRefined(OneParamSubgroup),
}

impl TermOrder {
    /// Total order on same-length monomials. Callers guarantee equal length;
    /// use [`mono_compare`] for the checked variant.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Grevlex => a.cmp(b),
            TermOrder::WeightRefined(lambda) => lambda
                .pairing(a)
                .cmp(&lambda.pairing(b))
                .then_with(|| a.cmp(b)),
        }
    }

    fn check_vars(&self, num_vars: usize) -> Result<(), GroebnerError> {
        if let TermOrder::WeightRefined(lambda) = self {
            if lambda.num_vars() != num_vars {
                return Err(GroebnerError::WeightLengthMismatch {
                    weights: lambda.num_vars(),
                    ring: num_vars,
                });
            }
        }
        Ok(())
    }
}

/// Checked comparison of two monomials under `order`.
pub fn mono_compare(
    order: &TermOrder,
    a: &Monomial,
    b: &Monomial,
) -> Result<Ordering, GroebnerError> {
    if a.num_vars() != b.num_vars() {
        return Err(GroebnerError::LengthMismatch {
            left: a.num_vars(),
            right: b.num_vars(),
        });
    }
    order.check_vars(a.num_vars())?;
    Ok(order.compare(a, b))
}

/// Lead term of `p` under `order`, or `None` for the zero polynomial.
pub fn lead_term<'a>(p: &'a Polynomial, order: &TermOrder) -> Option<(&'a Monomial, &'a Rational)> {
    p.terms().max_by(|x, y| order.compare(x.0, y.0))
}

/// Full normal form of `f` modulo `basis`: no term of the result is
/// divisible by any basis lead term, and `f − result` lies in the ideal
/// generated by `basis`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: &TermOrder) -> Polynomial {
    let leads: Vec<(Monomial, Rational)> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let (m, c) = lead_term(g, order).expect("nonzero");
            (m.clone(), c.clone())
        })
        .collect();
    let nonzero: Vec<&Polynomial> = basis.iter().filter(|g| !g.is_zero()).collect();

    let mut remainder = Polynomial::zero(f.num_vars());
    let mut work = f.clone();
    'outer: while !work.is_zero() {
        let (wm, wc) = {
            let (m, c) = lead_term(&work, order).expect("nonzero");
            (m.clone(), c.clone())
        };
        for (i, (gm, gc)) in leads.iter().enumerate() {
            if let Some(quot) = wm.checked_div(gm) {
                let factor = &wc / gc;
                let sub = nonzero[i].mul_monomial(&quot).scale(&factor);
                work = work.checked_sub(&sub).expect("same ring");
                continue 'outer;
            }
        }
        // No lead divides: the term is part of the normal form.
        remainder.add_term(wm.clone(), wc.clone());
        let mut minus = Polynomial::zero(f.num_vars());
        minus.add_term(wm, -wc);
        work = work.checked_add(&minus).expect("same ring");
    }
    remainder
}

/// S-polynomial of two nonzero polynomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &TermOrder) -> Polynomial {
    let (fm, fc) = lead_term(f, order).expect("nonzero");
    let (gm, gc) = lead_term(g, order).expect("nonzero");
    let l = fm.lcm(gm);
    let a = f
        .mul_monomial(&l.checked_div(fm).expect("lcm divisible"))
        .scale(&(Rational::one() / fc));
    let b = g
        .mul_monomial(&l.checked_div(gm).expect("lcm divisible"))
        .scale(&(Rational::one() / gc));
    a.checked_sub(&b).expect("same ring")
}

/// A Gröbner basis together with the order it was computed under.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub generators: Vec<Polynomial>,
    pub order: TermOrder,
    pub reduced: bool,
}

impl GroebnerBasis {
    pub fn lead_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .map(|g| lead_term(g, &self.order).expect("basis nonzero").0.clone())
            .collect()
    }
}

/// Buchberger's algorithm, returning the reduced Gröbner basis (monic,
/// inter-reduced, deterministically sorted). The reduced basis is unique per
/// (ideal, order), so permuted input generators produce identical output.
pub fn buchberger(ideal: &Ideal, order: &TermOrder) -> Result<GroebnerBasis, GroebnerError> {
    order.check_vars(ideal.num_vars())?;

    let mut basis: Vec<Polynomial> = Vec::new();
    for g in ideal.generators() {
        debug_assert!(matches!(
            g.homogeneous_degree(),
            Homogeneity::Homogeneous(_)
        ));
        basis.push(make_monic(g, order));
    }

    // Pair queue keyed by (lcm degree, lcm, i, j): always expand the pair
    // with the smallest lcm first (normal selection), which both speeds the
    // run up and fixes the processing order.
    let mut pairs: BTreeSet<(u32, Monomial, usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            push_pair(&mut pairs, &basis, order, i, j);
        }
    }

    while let Some(entry) = pairs.iter().next().cloned() {
        pairs.remove(&entry);
        let (_, _, i, j) = entry;
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = normal_form(&s, &basis, order);
        if r.is_zero() {
            continue;
        }
        let r = make_monic(&r, order);
        let new_index = basis.len();
        basis.push(r);
        for i in 0..new_index {
            push_pair(&mut pairs, &basis, order, i, new_index);
        }
    }

    let generators = reduce_basis(basis, order);
    Ok(GroebnerBasis {
        generators,
        order: order.clone(),
        reduced: true,
    })
}

fn make_monic(p: &Polynomial, order: &TermOrder) -> Polynomial {
    let (_, c) = lead_term(p, order).expect("nonzero polynomial");
    p.scale(&(Rational::one() / c))
}

fn push_pair(
    pairs: &mut BTreeSet<(u32, Monomial, usize, usize)>,
    basis: &[Polynomial],
    order: &TermOrder,
    i: usize,
    j: usize,
) {
    let (mi, _) = lead_term(&basis[i], order).expect("nonzero");
    let (mj, _) = lead_term(&basis[j], order).expect("nonzero");
    // Buchberger's product criterion: coprime lead monomials reduce to zero.
    if mi.is_coprime_with(mj) {
        return;
    }
    let l = mi.lcm(mj);
    pairs.insert((l.degree(), l, i, j));
}

/// Minimalize and inter-reduce: drop generators whose lead is divisible by
/// another lead, then reduce every tail until a fixpoint. Output is sorted
/// by lead monomial, descending under the order.
fn reduce_basis(mut basis: Vec<Polynomial>, order: &TermOrder) -> Vec<Polynomial> {
    basis.retain(|g| !g.is_zero());
    if basis.is_empty() {
        return basis;
    }

    // Minimal generators: drop element i when some other lead divides its
    // lead (for equal leads, the earlier element survives). Divisibility is
    // transitive, so checking against all elements rather than only the
    // survivors is sound.
    let leads: Vec<Monomial> = basis
        .iter()
        .map(|g| lead_term(g, order).expect("nonzero").0.clone())
        .collect();
    let mut polys: Vec<Polynomial> = Vec::new();
    for i in 0..basis.len() {
        let redundant = (0..basis.len()).any(|j| {
            j != i && leads[j].divides(&leads[i]) && (leads[j] != leads[i] || j < i)
        });
        if !redundant {
            polys.push(basis[i].clone());
        }
    }

    // Tail reduction. Leads form an antichain and never change below, so a
    // full pass leaves every term irreducible; the second pass confirms the
    // fixpoint.
    loop {
        let mut changed = false;
        for i in 0..polys.len() {
            let others: Vec<Polynomial> = polys
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let reduced = make_monic(&normal_form(&polys[i], &others, order), order);
            if reduced != polys[i] {
                polys[i] = reduced;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    polys.sort_by(|a, b| {
        let la = lead_term(a, order).expect("nonzero").0;
        let lb = lead_term(b, order).expect("nonzero").0;
        order.compare(lb, la)
    });
    polys
}

/// A monomial ideal held by its minimal generators (an antichain under
/// divisibility), sorted descending in grevlex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialIdeal {
    num_vars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(num_vars: usize, gens: Vec<Monomial>) -> Self {
        let mut sorted = gens;
        sorted.sort();
        sorted.dedup();
        let mut minimal: Vec<Monomial> = Vec::new();
        for g in sorted {
            debug_assert_eq!(g.num_vars(), num_vars);
            if !minimal.iter().any(|kept| kept.divides(&g)) {
                minimal.push(g);
            }
        }
        minimal.reverse();
        MonomialIdeal { num_vars, gens: minimal }
    }

    pub fn zero_ideal(num_vars: usize) -> Self {
        MonomialIdeal { num_vars, gens: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// True when `1` is a generator, i.e. the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_one())
    }

    /// Membership test for a monomial.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.gens.iter().map(|g| g.degree()).max().unwrap_or(0)
    }

    /// Colon ideal `(self : p)` for a monomial `p`.
    pub fn quotient_by(&self, p: &Monomial) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .map(|g| g.checked_div(&g.gcd(p)).expect("gcd divides"))
            .collect();
        MonomialIdeal::new(self.num_vars, gens)
    }

    /// Ideal sum `self + (p)`.
    pub fn plus(&self, p: &Monomial) -> MonomialIdeal {
        let mut gens = self.gens.clone();
        gens.push(p.clone());
        MonomialIdeal::new(self.num_vars, gens)
    }

    /// Dimension of the projective scheme cut out by the ideal: one less
    /// than the maximal number of variables spanning a coordinate subspace
    /// not contained in the vanishing locus of any generator. `None` for the
    /// unit ideal (empty scheme with identically zero Hilbert function);
    /// `Some(-1)` for a nonempty ideal whose scheme is empty (e.g. the
    /// irrelevant ideal).
    pub fn projective_dimension(&self) -> Option<i64> {
        if self.is_unit() {
            return None;
        }
        assert!(self.num_vars <= 24, "subset enumeration limit");
        let mut best: Option<usize> = None;
        for mask in 0u32..(1 << self.num_vars) {
            let ok = self.gens.iter().all(|g| {
                g.exponents()
                    .iter()
                    .enumerate()
                    .any(|(i, &e)| e > 0 && mask & (1 << i) == 0)
            });
            if ok {
                let size = mask.count_ones() as usize;
                best = Some(best.map_or(size, |b| b.max(size)));
            }
        }
        best.map(|b| b as i64 - 1)
    }
}

impl std::fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// Outcome of degenerating an ideal along a one-parameter subgroup.
#[derive(Clone, Debug)]
pub struct FlatLimit {
    /// Reduced Gröbner basis under the weight-refined order.
    pub groebner: GroebnerBasis,
    /// Ideal of w-initial forms of the basis elements: for each `g`, exactly
    /// the terms maximizing `⟨w, α⟩` (matching `t → 0` under
    /// `λ(t)·xᵢ = t^{wᵢ} xᵢ`).
    pub initial_forms: Ideal,
    /// Lead-monomial ideal of the basis; its standard monomials compute the
    /// Hilbert function of the degeneration, which equals that of the input
    /// ideal in every degree (flatness).
    pub lead: MonomialIdeal,
}

/// Degenerate `ideal` along `lambda`.
pub fn flat_limit(ideal: &Ideal, lambda: &OneParamSubgroup) -> Result<FlatLimit, GroebnerError> {
    let order = TermOrder::WeightRefined(lambda.clone());
    let gb = buchberger(ideal, &order)?;

    let mut initial_gens = Vec::with_capacity(gb.generators.len());
    for g in &gb.generators {
        initial_gens.push(initial_form(g, lambda));
    }
    let initial_forms = Ideal::new(ideal.num_vars(), initial_gens)?;
    let lead = MonomialIdeal::new(ideal.num_vars(), gb.lead_monomials());
    Ok(FlatLimit { groebner: gb, initial_forms, lead })
}

/// The w-initial form of a polynomial: the terms of maximal `⟨w, α⟩`.
pub fn initial_form(p: &Polynomial, lambda: &OneParamSubgroup) -> Polynomial {
    let top = p
        .terms()
        .map(|(m, _)| lambda.pairing(m))
        .max()
        .expect("nonzero polynomial");
    Polynomial::from_terms(
        p.num_vars(),
        p.terms()
            .filter(|(m, _)| lambda.pairing(m) == top)
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}
