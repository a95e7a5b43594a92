//! Natural and integer domains, the binary coding of naturals, and binary
//! powering in an arbitrary monoid.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::{Rng, RngCore};
use thiserror::Error;

use crate::structures::{DSet, Kind, Ops, Structure, StructureError};
use crate::{Int, Nat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberError {
    #[error("non-canonical binary code: most significant bit is zero")]
    NonCanonicalBin,
    #[error("invalid binary literal `{0}`")]
    BadBinLiteral(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("{0} is not a monoid")]
    NotAMonoid(Kind),
}

/// A natural number as a bit list, least significant bit first, with no
/// trailing zero bit. Zero is the empty list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Bin {
    bits: Vec<bool>,
}

impl Bin {
    pub fn zero() -> Self {
        Bin { bits: Vec::new() }
    }

    /// Validates canonicity of an LSB-first bit list.
    pub fn from_bits(bits: Vec<bool>) -> Result<Self, NumberError> {
        if bits.last() == Some(&false) {
            return Err(NumberError::NonCanonicalBin);
        }
        Ok(Bin { bits })
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

impl fmt::Display for Bin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("0b")?;
        if self.bits.is_empty() {
            return f.write_str("0");
        }
        for b in self.bits.iter().rev() {
            f.write_str(if *b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Bin {
    type Err = NumberError;

    /// Parses the `0b…` form, most significant bit first. `0b0` is zero.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = s.strip_prefix("0b").ok_or_else(|| NumberError::BadBinLiteral(s.to_string()))?;
        if digits == "0" {
            return Ok(Bin::zero());
        }
        if digits.is_empty() {
            return Err(NumberError::BadBinLiteral(s.to_string()));
        }
        let bits = digits
            .chars()
            .rev()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(NumberError::BadBinLiteral(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Bin::from_bits(bits)
    }
}

/// Canonical binary code of `n`, by repeated halving.
pub fn to_bin(n: &Nat) -> Bin {
    let mut bits = Vec::new();
    let mut m = n.clone();
    let two = BigUint::from(2u32);
    while !m.is_zero() {
        bits.push(&m % &two == BigUint::one());
        m /= &two;
    }
    Bin { bits }
}

/// Positional evaluation of an LSB-first bit list; rejects a zero top bit.
pub fn from_bin(bits: &[bool]) -> Result<Nat, NumberError> {
    if bits.last() == Some(&false) {
        return Err(NumberError::NonCanonicalBin);
    }
    Ok(bits.iter().rev().fold(Nat::zero(), |acc, b| {
        let acc = acc << 1u32;
        if *b {
            acc + 1u32
        } else {
            acc
        }
    }))
}

/// Successor on codes: flip the run of low ones, then set the next bit.
pub fn bin_suc(b: &Bin) -> Bin {
    let mut bits = b.bits.clone();
    for bit in bits.iter_mut() {
        if *bit {
            *bit = false;
        } else {
            *bit = true;
            return Bin { bits };
        }
    }
    bits.push(true);
    Bin { bits }
}

/// Ripple-carry addition on codes.
pub fn bin_add(a: &Bin, b: &Bin) -> Bin {
    let n = a.len().max(b.len());
    let mut bits = Vec::with_capacity(n + 1);
    let mut carry = false;
    for i in 0..n {
        let x = a.bits.get(i).copied().unwrap_or(false);
        let y = b.bits.get(i).copied().unwrap_or(false);
        bits.push(x ^ y ^ carry);
        carry = (x && y) || (carry && (x ^ y));
    }
    if carry {
        bits.push(true);
    }
    while bits.last() == Some(&false) {
        bits.pop();
    }
    Bin { bits }
}

/// Operation counts of one binary powering run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PowerTrace {
    pub squarings: usize,
    pub multiplications: usize,
}

/// Square-and-multiply over the LSB-first code of the exponent.
///
/// Squares once per bit above the lowest, so `squarings = ⌊log₂ n⌋` for
/// `n ≥ 1`. The identity is never multiplied in; exponent zero returns it.
pub fn binary_power<T: Clone>(identity: T, x: &T, exponent: &Bin, op: impl Fn(&T, &T) -> T) -> (T, PowerTrace) {
    let mut trace = PowerTrace::default();
    let mut acc: Option<T> = None;
    let mut square = x.clone();
    let bits = exponent.bits();
    for (i, bit) in bits.iter().enumerate() {
        if *bit {
            acc = Some(match acc {
                None => square.clone(),
                Some(a) => {
                    trace.multiplications += 1;
                    op(&a, &square)
                }
            });
        }
        if i + 1 < bits.len() {
            square = op(&square, &square);
            trace.squarings += 1;
        }
    }
    (acc.unwrap_or(identity), trace)
}

/// `x` to the power `n` in the monoid `m`.
pub fn power<T: Clone + 'static>(m: &Structure<T>, x: &T, n: &Nat) -> Result<T, NumberError> {
    power_traced(m, x, n).map(|(v, _)| v)
}

pub fn power_traced<T: Clone + 'static>(m: &Structure<T>, x: &T, n: &Nat) -> Result<(T, PowerTrace), NumberError> {
    if !m.kind().is_a(Kind::Monoid) {
        return Err(NumberError::NotAMonoid(m.kind()));
    }
    m.validate()?;
    Ok(binary_power(m.identity(), x, &to_bin(n), |a, b| m.op(a, b)))
}

/// Multiplicative powering for any `num-traits` scalar.
pub fn pow_scalar<T: Clone + One + std::ops::Mul<Output = T>>(x: &T, n: u64) -> T {
    binary_power(T::one(), x, &to_bin(&Nat::from(n)), |a, b| a.clone() * b.clone()).0
}

fn sample_nat(rng: &mut dyn RngCore) -> Nat {
    let rng = rng;
    if rng.gen_bool(0.5) {
        Nat::from(rng.gen_range(0u32..32))
    } else {
        let bits = rng.gen_range(1..=96);
        rng.gen_biguint(bits)
    }
}

fn sample_int(rng: &mut dyn RngCore) -> Int {
    let mag = BigInt::from(sample_nat(rng));
    if rng.gen_bool(0.5) {
        -mag
    } else {
        mag
    }
}

/// `0, 1, -1, 2, -2, …`
pub fn enumerate_int(n: usize) -> Vec<Int> {
    (0..n as i64).map(|k| Int::from(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 })).collect()
}

pub fn naturals() -> DSet<Nat> {
    DSet::new("N", |x: &Nat, y: &Nat| x == y, sample_nat)
        .with_enumeration(|n| (0..n as u64).map(Nat::from).collect())
}

pub fn positive_naturals() -> DSet<Nat> {
    DSet::new("N\\0", |x: &Nat, y: &Nat| x == y, |r: &mut dyn RngCore| sample_nat(r) + 1u32)
        .with_enumeration(|n| (1..=n as u64).map(Nat::from).collect())
}

pub fn integers_dset() -> DSet<Int> {
    DSet::new("Z", |x: &Int, y: &Int| x == y, sample_int).with_enumeration(enumerate_int)
}

/// `(ℕ, +, 0)`.
pub fn nat_add() -> Structure<Nat> {
    let ops = Ops::default().with_op(|x: &Nat, y: &Nat| x + y).with_identity(Nat::zero());
    Structure::new("N(+)", Kind::CommutativeMonoid, naturals(), ops)
}

/// `(ℕ, *, 1)`.
pub fn nat_mul() -> Structure<Nat> {
    let ops = Ops::default().with_op(|x: &Nat, y: &Nat| x * y).with_identity(Nat::one());
    Structure::new("N(*)", Kind::CommutativeMonoid, naturals(), ops)
}

/// `(ℕ, ∸)`: truncated subtraction. Not associative; the negative control.
pub fn nat_monus() -> Structure<Nat> {
    let ops = Ops::default().with_op(|x: &Nat, y: &Nat| if x > y { x - y } else { Nat::zero() });
    Structure::new("N(monus)", Kind::Semigroup, naturals(), ops)
}

/// `(ℤ, +, 0, neg)`.
pub fn int_additive() -> Structure<Int> {
    let ops = Ops::default().with_op(|x: &Int, y: &Int| x + y).with_identity(Int::zero()).with_inverse(|x: &Int| -x);
    Structure::new("Z(+)", Kind::CommutativeGroup, integers_dset(), ops)
}

/// `(ℤ, *, 1)`.
pub fn int_mul() -> Structure<Int> {
    let ops = Ops::default().with_op(|x: &Int, y: &Int| x * y).with_identity(Int::one());
    Structure::new("Z(*)", Kind::CommutativeMonoid, integers_dset(), ops)
}

/// Binary codes under ripple-carry addition.
pub fn bin_monoid() -> Structure<Bin> {
    let base = DSet::new("Bin", |x: &Bin, y: &Bin| x == y, |r: &mut dyn RngCore| to_bin(&sample_nat(r)))
        .with_enumeration(|n| (0..n as u64).map(|k| to_bin(&Nat::from(k))).collect());
    let ops = Ops::default().with_op(bin_add).with_identity(Bin::zero());
    Structure::new("Bin(+)", Kind::CommutativeMonoid, base, ops)
}
