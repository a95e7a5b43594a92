//! Factorization into primes by trial division, comparison of
//! factorizations up to order and associates, and the sampled check that
//! unique factorization and prime-split agree on an instance.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, RngCore};
use thiserror::Error;

use crate::certlists::Multiset;
use crate::euclid::{is_prime, prime_split, DividesWitness, EuclidError};
use crate::scalar::Scalar;
use crate::structures::{
    seeded_rng, DSet, Either, Kind, LawFailure, LawReport, OpName, Ops, Structure, StructureError,
};
use crate::{Int, Nat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("zero has no factorization")]
    Zero,
}

/// `unit · Π primeᵉ`, primes ascending and pairwise non-associate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationData<T> {
    pub unit: T,
    pub factors: Vec<(T, u32)>,
}

impl<T: Clone + PartialEq> FactorizationData<T> {
    pub fn primes(&self) -> impl Iterator<Item = &T> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn multiplicity(&self, p: &T) -> u32 {
        self.factors.iter().find(|(q, _)| q == p).map_or(0, |(_, e)| *e)
    }

    /// Prime multiset view, keyed by the prime.
    pub fn to_multiset(&self, keys: DSet<T>) -> Multiset<T>
    where
        T: 'static,
    {
        let mut m = Multiset::new(keys);
        for (p, e) in &self.factors {
            m.insert(p.clone(), *e as usize);
        }
        m
    }
}

impl<T: fmt::Display + One + PartialEq + Clone + std::ops::Neg<Output = T>> FactorizationData<T> {
    /// `2^2 * 3 * 5`, with a leading `-1 *` for a negative unit.
    pub fn render(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        if self.unit != T::one() {
            parts.push(self.unit.to_string());
        }
        for (p, e) in &self.factors {
            parts.push(if *e == 1 { p.to_string() } else { format!("{p}^{e}") });
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" * ")
        }
    }
}

/// Trial division by 2 and odd candidates up to the square root of what
/// remains. Primes in the result are positive, the sign sits in the unit.
pub fn factor<T: Scalar>(x: &T) -> Result<FactorizationData<T>, FactorError> {
    if x.is_zero() {
        return Err(FactorError::Zero);
    }
    let unit = x.sign_unit();
    let mut m = x.magnitude();
    let mut factors = Vec::new();
    let two = T::one() + T::one();
    let mut d = two.clone();
    while d.clone() * d.clone() <= m {
        let mut e = 0u32;
        while (m.clone() % d.clone()).is_zero() {
            m = m / d.clone();
            e += 1;
        }
        if e > 0 {
            factors.push((d.clone(), e));
        }
        d = if d == two { d + T::one() } else { d + two.clone() };
    }
    if m > T::one() {
        factors.push((m, 1));
    }
    Ok(FactorizationData { unit, factors })
}

/// `unit · Π pᵉ`.
pub fn product_of<T: Clone + One + std::ops::Mul<Output = T>>(f: &FactorizationData<T>) -> T {
    f.factors.iter().fold(f.unit.clone(), |acc, (p, e)| {
        (0..*e).fold(acc, |acc, _| acc * p.clone())
    })
}

fn normalized<T: Scalar>(f: &FactorizationData<T>) -> (T, Vec<(T, u32)>) {
    let mut unit = f.unit.clone();
    let mut factors: Vec<(T, u32)> = Vec::new();
    for (p, e) in &f.factors {
        if e % 2 == 1 {
            unit = unit * p.sign_unit();
        }
        let q = p.magnitude();
        match factors.iter_mut().find(|(r, _)| *r == q) {
            Some((_, k)) => *k += e,
            None => factors.push((q, *e)),
        }
    }
    factors.retain(|(_, e)| *e > 0);
    factors.sort();
    (unit, factors)
}

/// Equality up to order of primes and associates; signs move into the unit.
pub fn factorizations_equal<T: Scalar>(f1: &FactorizationData<T>, f2: &FactorizationData<T>) -> bool {
    normalized(f1) == normalized(f2)
}

/// Prime-split for any scalar carrier, routed through ℤ.
pub fn split_prime<T: Scalar>(
    p: &T,
    a: &T,
    b: &T,
    w: &DividesWitness<T>,
) -> Result<Either<DividesWitness<T>, DividesWitness<T>>, EuclidError<BigInt>> {
    let lift = |w: &DividesWitness<T>| DividesWitness {
        divisor: w.divisor.to_bigint(),
        dividend: w.dividend.to_bigint(),
        quotient: w.quotient.to_bigint(),
    };
    let cert = is_prime(&p.to_bigint())?;
    let out = prime_split(&cert, &a.to_bigint(), &b.to_bigint(), &lift(w))?;
    let lower = |w: DividesWitness<BigInt>| -> Result<DividesWitness<T>, EuclidError<BigInt>> {
        let conv = |v: &BigInt| T::from_bigint(v).ok_or(EuclidError::InvalidWitness);
        Ok(DividesWitness { divisor: conv(&w.divisor)?, dividend: conv(&w.dividend)?, quotient: conv(&w.quotient)? })
    };
    Ok(match out {
        Either::Left(w) => Either::Left(lower(w)?),
        Either::Right(w) => Either::Right(lower(w)?),
    })
}

fn small_positive(r: &mut dyn RngCore) -> u64 {
    if r.gen_bool(0.3) {
        r.gen_range(1..64)
    } else {
        r.gen_range(1..4096)
    }
}

fn factor_op<T: Scalar>(x: &T) -> Option<FactorizationData<T>> {
    factor(x).ok()
}

/// `(ℕ\{0}, *, 1)` with factoring to primes.
pub fn nat_positive_mul() -> Structure<Nat> {
    let base = DSet::new("N\\0", |x: &Nat, y: &Nat| x == y, |r: &mut dyn RngCore| Nat::from(small_positive(r)))
        .with_enumeration(|n| (1..=n as u64).map(Nat::from).collect());
    let ops = Ops::default()
        .with_op(|x: &Nat, y: &Nat| x * y)
        .with_identity(Nat::one())
        .with_factor(factor_op::<Nat>);
    Structure::new("N\\0(*)", Kind::FactorizationMonoid, base, ops)
}

/// ℤ as a unique factorization ring. Samples stay below 2¹² in magnitude so
/// trial division of products remains cheap.
pub fn integers_ufr() -> Structure<Int> {
    let base = DSet::new("Z", |x: &Int, y: &Int| x == y, |r: &mut dyn RngCore| {
        let v = Int::from(small_positive(r)) - if r.gen_bool(0.1) { Int::from(1) } else { Int::zero() };
        if r.gen_bool(0.5) {
            -v
        } else {
            v
        }
    })
    .with_enumeration(crate::numbers::enumerate_int);
    let ops = Ops::default()
        .with_op(|x: &Int, y: &Int| x + y)
        .with_identity(Int::zero())
        .with_inverse(|x: &Int| -x)
        .with_mul(|x: &Int, y: &Int| x * y)
        .with_one(Int::one())
        .with_divide(|x: &Int, y: &Int| crate::scalar::EuclideanRing::exact_div(x, y))
        .with_factor(factor_op::<Int>);
    Structure::new("Z(ufr)", Kind::UniqueFactorizationRing, base, ops)
}

/// Sampled bidirectional uniqueness check on a factorization monoid or ring.
///
/// Per sampled pair `(x, y)`: the instance's factorization of `x`
/// reconstructs `x`; it agrees with trial division; the factorization of
/// `x·y` equals the multiset sum of those of `x` and `y`; and for every
/// prime `p` of `x·y`, prime-split returns a witness that re-verifies.
pub fn check_unique_sampled<T: Scalar>(
    ring: &Structure<T>,
    seed: u64,
    budget: usize,
) -> Result<LawReport<T>, StructureError> {
    let kind = ring.kind();
    if !(kind.is_a(Kind::FactorizationMonoid) || kind.is_a(Kind::FactorizationRing)) {
        return Err(StructureError::MissingOp { name: ring.name().to_string(), kind, op: OpName::Factor });
    }
    ring.validate()?;
    let mul = |x: &T, y: &T| if kind.is_a(Kind::Ringoid) { ring.mul(x, y) } else { ring.op(x, y) };
    let mut report = LawReport { structure: ring.name().to_string(), kind, cases: 0, failures: Vec::new() };
    let mut rng = seeded_rng(seed, 0x5eed);
    let mut fail = |law: &'static str, ce: Vec<T>| report.failures.push(LawFailure { law, counterexample: ce });
    let mut cases = 0;
    for _ in 0..budget {
        cases += 1;
        let x = ring.base().draw(&mut rng);
        let y = ring.base().draw(&mut rng);
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let Some(fx) = ring.factor(&x) else {
            fail("factor reconstructs", vec![x]);
            continue;
        };
        if product_of(&fx) != x {
            fail("factor reconstructs", vec![x.clone()]);
        }
        match factor(&x) {
            Ok(reference) if factorizations_equal(&fx, &reference) => {}
            _ => fail("factorizations agree", vec![x.clone()]),
        }
        let xy = mul(&x, &y);
        let (Some(fy), Some(fxy)) = (ring.factor(&y), ring.factor(&xy)) else {
            fail("factor reconstructs", vec![x, y]);
            continue;
        };
        let keys = ring.base().clone();
        let merged = fx.to_multiset(keys.clone()).sum(&fy.to_multiset(keys.clone()));
        let homomorphic = merged.map(|m| m.mset_eq(&fxy.to_multiset(keys))).unwrap_or(false)
            && fxy.unit == fx.unit.clone() * fy.unit.clone();
        if !homomorphic {
            fail("factorization of product", vec![x.clone(), y.clone()]);
        }
        for p in fxy.primes() {
            let w = DividesWitness { divisor: p.clone(), dividend: xy.clone(), quotient: xy.clone() / p.clone() };
            let ok = match split_prime(p, &x, &y, &w) {
                Ok(Either::Left(d)) => d.verify() && d.divisor == *p && d.dividend == x,
                Ok(Either::Right(d)) => d.verify() && d.divisor == *p && d.dividend == y,
                Err(_) => false,
            };
            if !ok {
                fail("prime split witness", vec![p.clone(), x.clone(), y.clone()]);
            }
        }
    }
    report.cases = cases;
    Ok(report)
}
