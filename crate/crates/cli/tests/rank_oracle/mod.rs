//! Independent Hilbert-function oracle for the acceptance suite: exact
//! Gaussian elimination on the monomial multiples of the raw generators.
//! Shares nothing with the Groebner or standard-monomial code paths beyond
//! polynomial arithmetic itself.

use std::collections::BTreeMap;

use cmweight::algebra::{Ideal, Monomial, Rational};
use cmweight::hilbert::monomials_of_degree;
use num_traits::Zero;

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

            while let Some((&lead, _)) = row.iter().next() {
                match pivots.get(&lead) {
                    Some(pivot_row) => {
                        let factor = row.remove(&lead).expect("lead entry");
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
                        let lead_coeff = row.get(&lead).expect("lead entry").clone();
                        let normalized: BTreeMap<usize, Rational> = row
                            .iter()
                            .map(|(c, v)| (*c, v / &lead_coeff))
                            .collect();
                        pivots.insert(lead, normalized);
                        break;
                    }
                }
            }
        }
    }
    (cols.len() - pivots.len()) as u64
}
