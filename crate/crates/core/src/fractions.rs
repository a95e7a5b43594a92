//! Fractions over a gcd ring in canonical form.
//!
//! A [`Fraction`] always has a nonzero denominator, coprime numerator and
//! denominator, and a canonical denominator (positive over ℤ). Zero is `0/1`.
//! Equality is therefore structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, RngCore};
use thiserror::Error;

use crate::euclid::extended_gcd;
use crate::factorization::FactorizationData;
use crate::scalar::{EuclideanRing, Scalar};
use crate::structures::{DSet, Kind, Ops, Structure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FractionError {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("invalid fraction literal `{0}`")]
    Parse(String),
}

/// Coefficient domain for fractions: a gcd plus exact division and a
/// canonical associate.
pub trait GcdRing: EuclideanRing {
    fn gcd(&self, other: &Self) -> Self {
        extended_gcd(self, other).g
    }
}

impl<T: EuclideanRing> GcdRing for T {}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fraction<T> {
    num: T,
    den: T,
}

impl<T: GcdRing> Fraction<T> {
    /// Reduces `n/d` to canonical form.
    pub fn new(n: T, d: T) -> Result<Self, FractionError> {
        if d.is_zero() {
            return Err(FractionError::ZeroDenominator);
        }
        let g = n.gcd(&d);
        let n = n.exact_div(&g).expect("gcd divides");
        let d = d.exact_div(&g).expect("gcd divides");
        Ok(Self::renormalize(n, d))
    }

    pub fn from_int(n: T) -> Self {
        Fraction { num: n, den: T::one() }
    }

    /// Moves the unit of the denominator into the numerator.
    fn renormalize(n: T, d: T) -> Self {
        let (unit, d) = d.canonical_split();
        let inv = unit.unit_inverse().expect("unit");
        let n = n * inv;
        if n.is_zero() {
            return Fraction { num: T::zero(), den: T::one() };
        }
        Fraction { num: n, den: d }
    }

    pub fn num(&self) -> &T {
        &self.num
    }

    pub fn den(&self) -> &T {
        &self.den
    }

    pub fn zero() -> Self {
        Fraction { num: T::zero(), den: T::one() }
    }

    pub fn one() -> Self {
        Fraction { num: T::one(), den: T::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Nonzero denominator, unit gcd, canonical denominator, zero as `0/1`.
    pub fn is_canonical(&self) -> bool {
        !self.den.is_zero()
            && self.num.gcd(&self.den).is_unit()
            && self.den.canonical_split().0 == T::one()
            && (!self.num.is_zero() || self.den == T::one())
    }

    /// Cross-multiply, then reduce fully.
    pub fn add_naive(&self, other: &Self) -> Self {
        let n = self.num.clone() * other.den.clone() + other.num.clone() * self.den.clone();
        let d = self.den.clone() * other.den.clone();
        Fraction::new(n, d).expect("product of nonzero denominators")
    }

    /// Sum through the gcd of the denominators.
    ///
    /// With `g = gcd(d₁, d₂)`, `dᵢ = g·tᵢ`, the numerator `n₁t₂ + n₂t₁` is
    /// already coprime to `t₁t₂`, so only `gcd(n, g)` needs cancelling.
    pub fn add_optimized(&self, other: &Self) -> Self {
        let g = self.den.gcd(&other.den);
        let t1 = self.den.exact_div(&g).expect("gcd divides");
        let t2 = other.den.exact_div(&g).expect("gcd divides");
        let n = self.num.clone() * t2.clone() + other.num.clone() * t1.clone();
        let h = n.gcd(&g);
        let n = n.exact_div(&h).expect("gcd divides");
        let d = g.exact_div(&h).expect("gcd divides") * t1 * t2;
        Self::renormalize(n, d)
    }

    /// Product after cancelling `gcd(n₁, d₂)` and `gcd(n₂, d₁)`.
    pub fn mul(&self, other: &Self) -> Self {
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n = self.num.exact_div(&g1).expect("gcd divides") * other.num.exact_div(&g2).expect("gcd divides");
        let d = self.den.exact_div(&g2).expect("gcd divides") * other.den.exact_div(&g1).expect("gcd divides");
        Self::renormalize(n, d)
    }

    pub fn neg(&self) -> Self {
        Fraction { num: -self.num.clone(), den: self.den.clone() }
    }

    pub fn inverse(&self) -> Result<Self, FractionError> {
        if self.num.is_zero() {
            return Err(FractionError::ZeroInverse);
        }
        Ok(Self::renormalize(self.den.clone(), self.num.clone()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_optimized(&other.neg())
    }

    pub fn div(&self, other: &Self) -> Result<Self, FractionError> {
        Ok(self.mul(&other.inverse()?))
    }
}

pub fn mk_fraction<T: GcdRing>(n: T, d: T) -> Result<Fraction<T>, FractionError> {
    Fraction::new(n, d)
}

pub fn add_optimized<T: GcdRing>(x: &Fraction<T>, y: &Fraction<T>) -> Fraction<T> {
    x.add_optimized(y)
}

pub fn add_naive<T: GcdRing>(x: &Fraction<T>, y: &Fraction<T>) -> Fraction<T> {
    x.add_naive(y)
}

impl<T: GcdRing> Add for Fraction<T> {
    type Output = Fraction<T>;
    fn add(self, rhs: Self) -> Self {
        self.add_optimized(&rhs)
    }
}

impl<T: GcdRing> Sub for Fraction<T> {
    type Output = Fraction<T>;
    fn sub(self, rhs: Self) -> Self {
        Fraction::sub(&self, &rhs)
    }
}

impl<T: GcdRing> Mul for Fraction<T> {
    type Output = Fraction<T>;
    fn mul(self, rhs: Self) -> Self {
        Fraction::mul(&self, &rhs)
    }
}

impl<T: GcdRing> Neg for Fraction<T> {
    type Output = Fraction<T>;
    fn neg(self) -> Self {
        Fraction::neg(&self)
    }
}

impl<T: GcdRing + Ord> PartialOrd for Fraction<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: GcdRing + Ord> Ord for Fraction<T> {
    // denominators are canonical, hence positive for ordered carriers
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num.clone() * other.den.clone()).cmp(&(other.num.clone() * self.den.clone()))
    }
}

impl<T: fmt::Display> fmt::Display for Fraction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl<T: GcdRing + FromStr> FromStr for Fraction<T> {
    type Err = FractionError;

    /// `n/d` or `n`, each with an optional sign.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FractionError::Parse(s.to_string());
        let parse = |t: &str| t.trim().parse::<T>().map_err(|_| bad());
        match s.split_once('/') {
            Some((n, d)) => Fraction::new(parse(n)?, parse(d)?),
            None => Ok(Fraction::from_int(parse(s)?)),
        }
    }
}

fn sample_scalar<T: Scalar + Signed>(r: &mut dyn RngCore, bits: u64) -> T {
    let mag = BigInt::random_below(r, &(BigInt::one() << bits));
    let v = if r.gen_bool(0.5) { -mag } else { mag };
    T::from_bigint(&v).expect("fits")
}

/// Field of fractions over the integer carrier `T`.
pub fn fraction_field_with<T: Scalar + Signed>(max_bits: u64) -> Structure<Fraction<T>> {
    let base = DSet::new(
        format!("Frac(Z[{}])", std::any::type_name::<T>()),
        |x: &Fraction<T>, y: &Fraction<T>| x == y,
        move |r: &mut dyn RngCore| {
            let bits = if r.gen_bool(0.5) { 4 } else { r.gen_range(1..=max_bits) };
            let n = sample_scalar::<T>(r, bits);
            let mut d = sample_scalar::<T>(r, bits);
            if d.is_zero() {
                d = T::one();
            }
            Fraction::new(n, d).expect("nonzero")
        },
    )
    .with_enumeration(|n| {
        let mut out = Vec::new();
        let mut k = 1i64;
        while out.len() < n {
            for num in -k..=k {
                for den in 1..=k {
                    let f = Fraction::new(T::from_i64(num).unwrap(), T::from_i64(den).unwrap()).unwrap();
                    if !out.contains(&f) && out.len() < n {
                        out.push(f);
                    }
                }
            }
            k += 1;
        }
        out
    });
    let ops = Ops::default()
        .with_op(|x: &Fraction<T>, y: &Fraction<T>| x.add_optimized(y))
        .with_identity(Fraction::zero())
        .with_inverse(|x: &Fraction<T>| x.neg())
        .with_mul(|x: &Fraction<T>, y: &Fraction<T>| x.mul(y))
        .with_one(Fraction::one())
        .with_recip(|x: &Fraction<T>| x.inverse().ok())
        .with_factor(|x: &Fraction<T>| {
            (!x.is_zero()).then(|| FactorizationData { unit: x.clone(), factors: Vec::new() })
        });
    Structure::new("Q", Kind::Field, base, ops)
}

/// ℚ on arbitrary-precision integers.
pub fn rationals() -> Structure<crate::Rational> {
    fraction_field_with(64)
}
