//! Shared fixtures for the integration tests: the corpus of degenerations
//! and a brute-force linear-algebra Hilbert-function oracle that is
//! independent of the Groebner / standard-monomial machinery.

// Not every test target uses every fixture.
#![allow(dead_code)]

use cmweight::algebra::{parse_polynomial, Ideal, Monomial, Polynomial, Rational};
use cmweight::groebner::OneParamSubgroup;
use cmweight::hilbert::monomials_of_degree;

use std::collections::BTreeMap;

pub fn poly(s: &str, n: usize) -> Polynomial {
    parse_polynomial(s, n).unwrap()
}

pub fn ideal(gens: &[&str], n: usize) -> Ideal {
    Ideal::new(n, gens.iter().map(|s| poly(s, n)).collect()).unwrap()
}

/// Every corpus entry: a homogeneous ideal with a one-parameter subgroup.
pub fn corpus() -> Vec<(String, Ideal, OneParamSubgroup)> {
    let conic = || ideal(&["x0*x2 - x1^2"], 3);
    let twisted_cubic = || ideal(&["x1^2 - x0*x2", "x1*x2 - x0*x3", "x2^2 - x1*x3"], 4);
    let quadric = || ideal(&["x0*x3 - x1*x2"], 4);
    let quartic = || {
        ideal(
            &[
                "x0*x2 - x1^2",
                "x0*x3 - x1*x2",
                "x0*x4 - x1*x3",
                "x1*x3 - x2^2",
                "x1*x4 - x2*x3",
                "x2*x4 - x3^2",
            ],
            5,
        )
    };
    vec![
        (
            "conic-two-lines".into(),
            conic(),
            OneParamSubgroup::new(vec![2, -1, -1]),
        ),
        (
            "conic-stabilizer".into(),
            conic(),
            OneParamSubgroup::new(vec![1, 0, -1]),
        ),
        (
            "conic-double-line".into(),
            conic(),
            OneParamSubgroup::new(vec![-2, 1, 1]),
        ),
        (
            "twisted-cubic".into(),
            twisted_cubic(),
            OneParamSubgroup::new(vec![2, 1, -1, -2]),
        ),
        (
            "twisted-cubic-stabilizer".into(),
            twisted_cubic(),
            OneParamSubgroup::new(vec![3, 1, -1, -3]),
        ),
        (
            "quadric-surface".into(),
            quadric(),
            OneParamSubgroup::new(vec![1, 0, 0, 1]),
        ),
        (
            "quartic-curve".into(),
            quartic(),
            OneParamSubgroup::new(vec![1, 0, 0, 0, -1]),
        ),
    ]
}

/// Hilbert function of the quotient by `ideal` in degree `m`, computed by
/// exact Gaussian elimination on the monomial multiples of the raw
/// generators. No Groebner basis, no standard monomials: the degree-`m`
/// graded piece of the ideal is spanned by `x^β · g` over the generators
/// `g` and all monomials `β` of degree `m − deg g`, so its codimension in
/// the full degree-`m` space is the Hilbert function.
pub fn hilbert_function_by_rank(ideal: &Ideal, m: u32) -> u64 {
    let nv = ideal.num_vars();
    let cols: Vec<Monomial> = monomials_of_degree(nv, m);
    let index: BTreeMap<&Monomial, usize> =
        cols.iter().enumerate().map(|(i, mono)| (mono, i)).collect();

    let mut pivots: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
    for g in ideal.generators() {
        let d = g.total_degree().expect("nonzero generator");
        if d > m {
            continue;
        }
        for beta in monomials_of_degree(nv, m - d) {
            let product = g.mul_monomial(&beta);
            let mut row: BTreeMap<usize, Rational> = product
                .terms()
                .map(|(mono, c)| (index[mono], c.clone()))
                .collect();
            reduce_row(&mut row, &mut pivots);
        }
    }
    (cols.len() - pivots.len()) as u64
}

fn reduce_row(
    row: &mut BTreeMap<usize, Rational>,
    pivots: &mut BTreeMap<usize, BTreeMap<usize, Rational>>,
) {
    use num_traits::Zero;
    while let Some((&lead, _)) = row.iter().next() {
        match pivots.get(&lead) {
            Some(pivot_row) => {
                let factor = row.remove(&lead).expect("lead entry present");
                for (col, v) in pivot_row {
                    if *col == lead {
                        continue;
                    }
                    let delta = &factor * v;
                    match row.entry(*col) {
                        std::collections::btree_map::Entry::Vacant(e) => {
                            e.insert(-delta);
                        }
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            *e.get_mut() -= delta;
                            if e.get().is_zero() {
                                e.remove();
                            }
                        }
                    }
                }
            }
            None => {
                let lead_coeff = row.get(&lead).expect("lead entry present").clone();
                let normalized: BTreeMap<usize, Rational> = row
                    .iter()
                    .map(|(c, v)| (*c, v / &lead_coeff))
                    .collect();
                pivots.insert(lead, normalized);
                return;
            }
        }
    }
}
