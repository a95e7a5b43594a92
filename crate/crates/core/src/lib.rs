//! Algebraic structures with executable law suites, and algorithms that
//! return checkable certificates alongside their results.
//!
//! The algorithms are generic over integer carriers through [`Scalar`] and
//! [`EuclideanRing`]; the aliases below fix the arbitrary-precision choices
//! used by the shipped instances.

pub mod certlists;
pub mod eqprover;
pub mod euclid;
pub mod factorization;
pub mod fractions;
pub mod numbers;
pub mod polynomials;
pub mod scalar;
pub mod structures;

pub use certlists::{sort_certified, verify_sort_result, DecTotalOrder, Multiset, SortResult};
pub use eqprover::{normalize, prove_eq, with_fuel, Fuel, FuelOutcome, NormalForm, Term, Theory};
pub use euclid::{extended_gcd, is_prime, prime_split, residue_field, residue_ring, BezoutCertificate, DividesWitness, Residue};
pub use factorization::{check_unique_sampled, factor, product_of, FactorizationData};
pub use fractions::{add_naive, add_optimized, mk_fraction, Fraction};
pub use numbers::{from_bin, power, to_bin, Bin};
pub use polynomials::{mk_poly, poly_add, poly_neg, Degree, Poly};
pub use scalar::{EuclideanRing, Scalar};
pub use structures::{check_laws, direct_product, Decision, DSet, Either, Kind, LawReport, Ops, Structure};

pub type Nat = num_bigint::BigUint;
pub type Int = num_bigint::BigInt;
pub type Rational = Fraction<Int>;
pub type IntPoly = Poly<Int>;
pub type IntResidue = Residue<Int>;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;
