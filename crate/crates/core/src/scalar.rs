//! Scalar abstraction shared by every generic algorithm in the crate.
//!
//! [`Scalar`] covers exact integer carriers of any width, signed or not
//! (`u64`, `i64`, `i128`, [`BigUint`], [`BigInt`]). Signed scalars are
//! Euclidean rings through the blanket [`EuclideanRing`] impl.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use rand::{Rng, RngCore};

/// An exact integer-like carrier.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + FromStr
    + Ord
    + Hash
    + Send
    + Sync
    + 'static
    + Integer
    + Roots
    + FromPrimitive
    + ToPrimitive
{
    /// Absolute value; identity on unsigned carriers.
    fn magnitude(&self) -> Self;

    /// `-1` for negative values, `1` otherwise.
    fn sign_unit(&self) -> Self;

    fn to_bigint(&self) -> BigInt;

    /// `None` when the value does not fit the carrier.
    fn from_bigint(value: &BigInt) -> Option<Self>;

    /// Uniform draw from `[0, bound)`. `bound` must be positive.
    fn random_below(rng: &mut dyn RngCore, bound: &Self) -> Self;
}

macro_rules! impl_scalar_signed {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn magnitude(&self) -> Self { self.abs() }
            fn sign_unit(&self) -> Self { if *self < 0 { -1 } else { 1 } }
            fn to_bigint(&self) -> BigInt { BigInt::from(*self) }
            fn from_bigint(value: &BigInt) -> Option<Self> { value.try_into().ok() }
            fn random_below(rng: &mut dyn RngCore, bound: &Self) -> Self { rng.gen_range(0..*bound) }
        }
    )*};
}

macro_rules! impl_scalar_unsigned {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn magnitude(&self) -> Self { *self }
            fn sign_unit(&self) -> Self { 1 }
            fn to_bigint(&self) -> BigInt { BigInt::from(*self) }
            fn from_bigint(value: &BigInt) -> Option<Self> { value.try_into().ok() }
            fn random_below(rng: &mut dyn RngCore, bound: &Self) -> Self { rng.gen_range(0..*bound) }
        }
    )*};
}

impl_scalar_signed!(i32, i64, i128);
impl_scalar_unsigned!(u32, u64, u128);

impl Scalar for BigInt {
    fn magnitude(&self) -> Self {
        self.abs()
    }

    fn sign_unit(&self) -> Self {
        if self.sign() == Sign::Minus {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }

    fn to_bigint(&self) -> BigInt {
        self.clone()
    }

    fn from_bigint(value: &BigInt) -> Option<Self> {
        Some(value.clone())
    }

    fn random_below(rng: &mut dyn RngCore, bound: &Self) -> Self {
        rng.gen_bigint_range(&BigInt::zero(), bound)
    }
}

impl Scalar for BigUint {
    fn magnitude(&self) -> Self {
        self.clone()
    }

    fn sign_unit(&self) -> Self {
        BigUint::one()
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(self.clone())
    }

    fn from_bigint(value: &BigInt) -> Option<Self> {
        value.to_biguint()
    }

    fn random_below(rng: &mut dyn RngCore, bound: &Self) -> Self {
        rng.gen_biguint_below(bound)
    }
}

/// Division with remainder plus a norm that strictly decreases on remainders.
///
/// For signed integers `div_mod` is the Euclidean division: the remainder
/// satisfies `0 <= r < |d|` regardless of the signs of the operands.
pub trait EuclideanRing:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + Neg<Output = Self>
{
    /// `None` when `d` is zero.
    fn div_mod(&self, d: &Self) -> Option<(Self, Self)>;

    fn norm(&self) -> BigUint;

    fn is_unit(&self) -> bool;

    fn unit_inverse(&self) -> Option<Self>;

    /// Returns `(unit, canonical)` with `self = unit * canonical`.
    fn canonical_split(&self) -> (Self, Self);

    fn exact_div(&self, d: &Self) -> Option<Self> {
        match self.div_mod(d) {
            Some((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    fn divides(&self, m: &Self) -> bool {
        if self.is_zero() {
            return m.is_zero();
        }
        m.exact_div(self).is_some()
    }
}

impl<T: Scalar + Signed> EuclideanRing for T {
    fn div_mod(&self, d: &Self) -> Option<(Self, Self)> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_mod_floor(d);
        if r.is_negative() {
            // only reachable for d < 0: shift remainder into [0, |d|)
            Some((q + T::one(), r - d.clone()))
        } else {
            Some((q, r))
        }
    }

    fn norm(&self) -> BigUint {
        self.to_bigint().magnitude().clone()
    }

    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.is_unit() {
            Some(self.clone())
        } else {
            None
        }
    }

    fn canonical_split(&self) -> (Self, Self) {
        (self.sign_unit(), self.magnitude())
    }
}

/// Exact integer square root, `⌊√n⌋`.
pub fn isqrt<T: Scalar>(n: &T) -> T {
    n.sqrt()
}
