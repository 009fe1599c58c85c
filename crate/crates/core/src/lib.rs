//! Exact factorization arithmetic for finitely generated monoids.
//!
//! The crate computes sets of lengths, their unions `U_k`, elasticities,
//! distance sets, catenary/omega/tame degrees and the structure of unions for
//! several families of monoids:
//!
//! * [`lengths`]: finite subsets of the non-negative integers and their
//!   additive combinatorics (distances, elasticity, sumsets, AAP detection).
//! * [`family`]: directed families of length sets, exact unions up to a
//!   horizon, and the structure checker for unions.
//! * [`monoid`]: lattice-embedded monoids given by atoms, factorization
//!   enumeration, and the classical invariants.
//! * [`relations`]: minimal points of the monoid of relations (exact
//!   elasticity, distance bounds, omega and tame degrees).
//! * [`krull`]: the explicit Krull monoid realizing a prescribed length set
//!   and a coproduct whose unions are not eventually AAPs.
//! * [`power`]: finitely generated submonoids of the power monoid of `N_0`.
//!
//! Everything is exact; there is no floating point anywhere. The crate is
//! `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

mod bits;
mod error;
pub mod family;
mod grading;
pub mod krull;
pub mod lengths;
pub mod monoid;
mod multiset;
pub mod power;
pub mod relations;

pub use error::{Error, Result};
pub use lengths::{AapWitness, Bound, LengthSet};
pub use multiset::{multiset_count, Multisets};

/// Exact rational numbers with arbitrary precision.
pub type Rational = num_rational::BigRational;

/// `num / den` as an exact rational. Panics if `den == 0`.
pub fn ratio(num: u64, den: u64) -> Rational {
    Rational::new(num.into(), den.into())
}
