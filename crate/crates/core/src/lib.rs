//! Exact-arithmetic toolkit for GIT weights of Hilbert points.
//!
//! Given a homogeneous ideal cutting out a projective scheme `X ⊂ P^N` and a
//! one-parameter subgroup acting diagonally with integer weights, this crate
//! computes the flat limit of `X` (as a weight-initial ideal), the Hilbert
//! function and polynomial of the limit, the weight of the m-th Hilbert point
//! as an exact polynomial in `m`, and from these the Futaki invariant `F₁`
//! and the CM weight, together with the alternating-sum lift weights whose
//! m-independence certifies the whole computation.
//!
//! Everything is done over `ℚ` with arbitrary-precision rationals; there is
//! no floating point anywhere in the mathematical core.

pub mod algebra;
pub mod groebner;
pub mod hilbert;
pub mod interp;
pub mod stability;

pub use algebra::{Ideal, Monomial, Polynomial, Rational};
pub use groebner::{FlatLimit, MonomialIdeal, OneParamSubgroup, TermOrder};
pub use hilbert::{GeometricInvariants, HilbertProfile};
pub use stability::{StabilityReport, WeightProfile};
