//! Euclidean rings: division with remainder, extended gcd with Bézout
//! certificates, the constructive prime-split, and residue rings `R/(b)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, RngCore};
use thiserror::Error;

use crate::factorization::FactorizationData;
use crate::scalar::{EuclideanRing, Scalar};
use crate::structures::{DSet, Either, Kind, Ops, Structure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EuclidError<T: fmt::Debug> {
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus must be nonzero")]
    ZeroModulus,
    #[error("modulus {0:?} is invertible")]
    UnitModulus(T),
    #[error("primality is undefined for {0:?}")]
    PrimalityUndefined(T),
    #[error("modulus is composite: {0:?}")]
    Composite(DividesWitness<T>),
    #[error("{0:?} is not certified prime")]
    NotPrime(T),
    #[error("certificate does not re-verify")]
    InvalidCertificate,
    #[error("divisibility witness does not re-verify")]
    InvalidWitness,
}

/// `dividend = divisor * quotient`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DividesWitness<T> {
    pub divisor: T,
    pub dividend: T,
    pub quotient: T,
}

impl<T: Clone + std::ops::Mul<Output = T> + PartialEq> DividesWitness<T> {
    pub fn verify(&self) -> bool {
        self.divisor.clone() * self.quotient.clone() == self.dividend
    }
}

impl<T: fmt::Display> fmt::Display for DividesWitness<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {} (quotient {})", self.divisor, self.dividend, self.quotient)
    }
}

/// Evidence that `g` is a gcd of `a` and `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutCertificate<T> {
    pub a: T,
    pub b: T,
    pub g: T,
    pub u: T,
    pub v: T,
    /// `a = qa * g`
    pub qa: T,
    /// `b = qb * g`
    pub qb: T,
}

impl<T: EuclideanRing> BezoutCertificate<T> {
    pub fn bezout_holds(&self) -> bool {
        self.u.clone() * self.a.clone() + self.v.clone() * self.b.clone() == self.g
    }

    pub fn divides_both(&self) -> bool {
        self.qa.clone() * self.g.clone() == self.a && self.qb.clone() * self.g.clone() == self.b
    }

    pub fn zero_only_when_both_zero(&self) -> bool {
        !self.g.is_zero() || (self.a.is_zero() && self.b.is_zero())
    }

    pub fn verify(&self) -> bool {
        self.bezout_holds() && self.divides_both() && self.zero_only_when_both_zero()
    }
}

impl<T: fmt::Display> fmt::Display for BezoutCertificate<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "a={}", self.a)?;
        writeln!(f, "b={}", self.b)?;
        writeln!(f, "g={}", self.g)?;
        writeln!(f, "u={}", self.u)?;
        writeln!(f, "v={}", self.v)?;
        writeln!(f, "qa={}", self.qa)?;
        write!(f, "qb={}", self.qb)
    }
}

pub fn div_mod<T: EuclideanRing>(a: &T, b: &T) -> Result<(T, T), EuclidError<T>> {
    a.div_mod(b).ok_or(EuclidError::DivisionByZero)
}

/// Extended Euclid. `g` is the canonical associate (non-negative for ℤ);
/// `gcd(0, 0) = 0` with `u = 1, v = 0`.
pub fn extended_gcd<T: EuclideanRing>(a: &T, b: &T) -> BezoutCertificate<T> {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (T::one(), T::zero());
    let (mut t0, mut t1) = (T::zero(), T::one());
    // norm(r1) strictly decreases every round
    while !r1.is_zero() {
        let (q, r) = r0.div_mod(&r1).expect("nonzero divisor");
        r0 = std::mem::replace(&mut r1, r);
        let s = s0 - q.clone() * s1.clone();
        s0 = std::mem::replace(&mut s1, s);
        let t = t0 - q * t1.clone();
        t0 = std::mem::replace(&mut t1, t);
    }
    let (unit, g) = r0.canonical_split();
    let inv = unit.unit_inverse().expect("canonical_split yields a unit");
    let u = s0 * inv.clone();
    let v = t0 * inv;
    let (qa, qb) = if g.is_zero() {
        (T::zero(), T::zero())
    } else {
        (a.exact_div(&g).expect("gcd divides a"), b.exact_div(&g).expect("gcd divides b"))
    };
    BezoutCertificate { a: a.clone(), b: b.clone(), g, u, v, qa, qb }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Primality<T> {
    Prime,
    /// Divisor `d` with `1 < norm(d) < norm(p)`.
    Composite(DividesWitness<T>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimalityCert<T> {
    pub subject: T,
    pub verdict: Primality<T>,
}

impl<T> PrimalityCert<T> {
    pub fn is_prime(&self) -> bool {
        matches!(self.verdict, Primality::Prime)
    }
}

impl<T: fmt::Display> fmt::Display for PrimalityCert<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Primality::Prime => write!(f, "{} is prime", self.subject),
            Primality::Composite(w) => write!(f, "{} is composite: {} | {}", self.subject, w.divisor, w.dividend),
        }
    }
}

/// Primality decision procedure producing a re-checkable certificate.
pub trait PrimalityTest: EuclideanRing {
    fn primality(&self) -> Result<PrimalityCert<Self>, EuclidError<Self>>;
}

impl<T: Scalar + Signed> PrimalityTest for T {
    fn primality(&self) -> Result<PrimalityCert<Self>, EuclidError<Self>> {
        is_prime(self)
    }
}

/// Trial division up to `⌊√|n|⌋`. The composite witness uses the smallest
/// positive divisor.
pub fn is_prime<T: Scalar>(n: &T) -> Result<PrimalityCert<T>, EuclidError<T>> {
    let m = n.magnitude();
    if m <= T::one() {
        return Err(EuclidError::PrimalityUndefined(n.clone()));
    }
    let limit = m.sqrt();
    let mut d = T::one() + T::one();
    while d <= limit {
        if (m.clone() % d.clone()).is_zero() {
            let quotient = n.clone() / d.clone();
            let w = DividesWitness { divisor: d, dividend: n.clone(), quotient };
            return Ok(PrimalityCert { subject: n.clone(), verdict: Primality::Composite(w) });
        }
        d = d + T::one();
    }
    Ok(PrimalityCert { subject: n.clone(), verdict: Primality::Prime })
}

impl<T: PrimalityTest> PrimalityCert<T> {
    /// Composite witnesses must divide with a proper factor; a prime verdict is
    /// re-derived with the primality procedure.
    pub fn verify(&self) -> bool {
        match &self.verdict {
            Primality::Composite(w) => {
                let one = T::one().norm();
                w.verify()
                    && w.dividend == self.subject
                    && w.divisor.norm() > one
                    && w.divisor.norm() < self.subject.norm()
            }
            Primality::Prime => matches!(self.subject.primality(), Ok(PrimalityCert { verdict: Primality::Prime, .. })),
        }
    }
}

/// Given a prime `p` dividing `a·b`, decides which factor it divides.
///
/// Tries `p | a` first. Otherwise `gcd(p, a)` is a unit `e` with
/// `u·p + v·a = e`, hence `b·e = p·(u·b + v·q)` where `a·b = p·q`.
pub fn prime_split<T: PrimalityTest>(
    cert: &PrimalityCert<T>,
    a: &T,
    b: &T,
    w: &DividesWitness<T>,
) -> Result<Either<DividesWitness<T>, DividesWitness<T>>, EuclidError<T>> {
    let p = &cert.subject;
    if !cert.is_prime() || !cert.verify() {
        return Err(EuclidError::NotPrime(p.clone()));
    }
    if !w.verify() || &w.divisor != p || w.dividend != a.clone() * b.clone() {
        return Err(EuclidError::InvalidWitness);
    }
    let c = extended_gcd(p, a);
    if !c.g.is_unit() {
        // g is an associate of p
        let quotient = a.exact_div(p).ok_or(EuclidError::InvalidWitness)?;
        return Ok(Either::Left(DividesWitness { divisor: p.clone(), dividend: a.clone(), quotient }));
    }
    let g_inv = c.g.unit_inverse().expect("unit");
    let quotient = (c.u * b.clone() + c.v * w.quotient.clone()) * g_inv;
    let out = DividesWitness { divisor: p.clone(), dividend: b.clone(), quotient };
    if !out.verify() {
        return Err(EuclidError::InvalidCertificate);
    }
    Ok(Either::Right(out))
}

/// An element of `R/(b)`. Values built through [`Residue::new`] are the
/// canonical remainder; [`Residue::raw`] keeps an arbitrary representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Residue<T> {
    modulus: T,
    value: T,
}

impl<T: EuclideanRing> Residue<T> {
    /// Panics on a zero modulus.
    pub fn new(value: T, modulus: T) -> Self {
        let value = value.div_mod(&modulus).expect("nonzero modulus").1;
        Residue { modulus, value }
    }

    pub fn raw(value: T, modulus: T) -> Self {
        Residue { modulus, value }
    }

    pub fn modulus(&self) -> &T {
        &self.modulus
    }

    pub fn value(&self) -> &T {
        &self.value
    }

    pub fn canonical(&self) -> T {
        self.value.div_mod(&self.modulus).expect("nonzero modulus").1
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == self.value
    }
}

impl<T: fmt::Display> fmt::Display for Residue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

fn residue_base<T: Scalar + Signed>(b: &T) -> DSet<Residue<T>> {
    let (m1, m2, m3, m4) = (b.clone(), b.clone(), b.clone(), b.clone());
    DSet::new(
        format!("Z/({b})"),
        move |x: &Residue<T>, y: &Residue<T>| x.modulus == m1 && y.modulus == m1 && x.canonical() == y.canonical(),
        move |r: &mut dyn RngCore| Residue::new(T::random_below(r, &m2.magnitude()), m2.clone()),
    )
    .with_respell(move |x, r| {
        let k = T::from_i64(r.gen_range(-4..=4)).expect("small");
        Residue::raw(x.canonical() + k * m3.clone(), m3.clone())
    })
    .with_enumeration(move |n| {
        let mut out = Vec::new();
        let mut v = T::zero();
        while out.len() < n && v < m4.magnitude() {
            out.push(Residue::new(v.clone(), m4.clone()));
            v = v + T::one();
        }
        out
    })
}

fn residue_ops<T: Scalar + Signed>(b: &T) -> Ops<Residue<T>> {
    let (m1, m2, m3) = (b.clone(), b.clone(), b.clone());
    Ops::default()
        .with_op(move |x: &Residue<T>, y: &Residue<T>| Residue::new(x.value.clone() + y.value.clone(), m1.clone()))
        .with_identity(Residue::new(T::zero(), b.clone()))
        .with_inverse(move |x: &Residue<T>| Residue::new(-x.value.clone(), m2.clone()))
        .with_mul(move |x: &Residue<T>, y: &Residue<T>| Residue::new(x.value.clone() * y.value.clone(), m3.clone()))
        .with_one(Residue::new(T::one(), b.clone()))
}

fn check_modulus<T: Scalar + Signed>(b: &T) -> Result<(), EuclidError<T>> {
    if b.is_zero() {
        return Err(EuclidError::ZeroModulus);
    }
    if b.is_unit() {
        return Err(EuclidError::UnitModulus(b.clone()));
    }
    Ok(())
}

/// `R/(b)` as a commutative ring; every operation reduces through `div_mod`.
pub fn residue_ring<T: Scalar + Signed>(b: &T) -> Result<Structure<Residue<T>>, EuclidError<T>> {
    check_modulus(b)?;
    Ok(Structure::new(format!("Z/({b})"), Kind::CommutativeRing, residue_base(b), residue_ops(b)))
}

/// Inverse of `x` modulo `b` from the Bézout identity `u·x + v·b = 1`.
pub fn residue_inverse<T: Scalar + Signed>(x: &Residue<T>) -> Option<Residue<T>> {
    let v = x.canonical();
    let c = extended_gcd(&v, &x.modulus);
    if !c.g.is_unit() {
        return None;
    }
    let inv = c.g.unit_inverse().expect("unit");
    Some(Residue::new(c.u * inv, x.modulus.clone()))
}

/// `R/(b)` upgraded to a field; requires a prime certificate for `b`.
pub fn residue_field<T: Scalar + Signed>(
    b: &T,
    cert: &PrimalityCert<T>,
) -> Result<Structure<Residue<T>>, EuclidError<T>> {
    check_modulus(b)?;
    if &cert.subject != b {
        return Err(EuclidError::InvalidCertificate);
    }
    match &cert.verdict {
        Primality::Composite(w) if cert.verify() => return Err(EuclidError::Composite(w.clone())),
        Primality::Composite(_) => return Err(EuclidError::InvalidCertificate),
        Primality::Prime if !cert.verify() => return Err(EuclidError::NotPrime(b.clone())),
        Primality::Prime => {}
    }
    let m = b.clone();
    let ops = residue_ops(b)
        .with_recip(|x: &Residue<T>| residue_inverse(x))
        .with_factor(move |x: &Residue<T>| {
            if x.canonical().is_zero() {
                None
            } else {
                Some(FactorizationData { unit: Residue::new(x.value.clone(), m.clone()), factors: Vec::new() })
            }
        });
    Ok(Structure::new(format!("GF({b})"), Kind::Field, residue_base(b), ops))
}

/// Convenience: certify `b` by trial division, then build the field.
pub fn residue_field_checked<T: Scalar + Signed>(b: &T) -> Result<Structure<Residue<T>>, EuclidError<T>> {
    check_modulus(b)?;
    let cert = is_prime(b)?;
    residue_field(b, &cert)
}

fn integer_dset<T: Scalar + Signed>(max_bits: u64) -> DSet<T> {
    DSet::new(
        format!("Z[{}]", std::any::type_name::<T>()),
        |x: &T, y: &T| x == y,
        move |r: &mut dyn RngCore| {
            let small = r.gen_bool(0.5);
            let bits = if small { 5 } else { r.gen_range(1..=max_bits) };
            let bound = BigInt::from(1) << bits;
            let mag = BigInt::random_below(r, &bound);
            let v = if r.gen_bool(0.5) { -mag } else { mag };
            T::from_bigint(&v).expect("sample fits carrier")
        },
    )
    .with_enumeration(|n| {
        crate::numbers::enumerate_int(n).iter().map(|v| T::from_bigint(v).expect("small")).collect()
    })
}

fn integer_ops<T: Scalar + Signed>() -> Ops<T> {
    Ops::default()
        .with_op(|x: &T, y: &T| x.clone() + y.clone())
        .with_identity(T::zero())
        .with_inverse(|x: &T| -x.clone())
        .with_mul(|x: &T, y: &T| x.clone() * y.clone())
        .with_one(T::one())
}

/// ℤ as a Euclidean ring over carrier `T`; samples stay below `2^max_bits`
/// in magnitude so machine-width carriers do not overflow on triple products.
pub fn integers_with<T: Scalar + Signed>(max_bits: u64) -> Structure<T> {
    let ops = integer_ops::<T>()
        .with_div_mod(|x: &T, y: &T| x.div_mod(y))
        .with_norm(|x: &T| x.norm());
    Structure::new("Z", Kind::EuclideanRing, integer_dset(max_bits), ops)
}

/// ℤ on arbitrary-precision integers.
pub fn integers() -> Structure<crate::Int> {
    integers_with(96)
}

/// ℤ as a gcd ring.
pub fn integers_gcd_ring() -> Structure<crate::Int> {
    let ops = integer_ops()
        .with_gcd(|x: &crate::Int, y: &crate::Int| extended_gcd(x, y).g)
        .with_divide(|x: &crate::Int, y: &crate::Int| x.exact_div(y));
    Structure::new("Z(gcd)", Kind::GcdRing, integer_dset(96), ops)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::check_laws;
    use crate::Int;

    fn int(v: i64) -> Int {
        Int::from(v)
    }

    #[test]
    fn div_mod_examples() {
        assert_eq!(div_mod(&int(7), &int(2)).unwrap(), (int(3), int(1)));
        assert_eq!(div_mod(&int(-7), &int(2)).unwrap(), (int(-4), int(1)));
        assert_eq!(div_mod(&int(6), &int(3)).unwrap(), (int(2), int(0)));
        assert_eq!(div_mod(&int(6), &int(0)), Err(EuclidError::DivisionByZero));
    }

    #[test]
    fn egcd_examples() {
        let c = extended_gcd(&int(9), &int(0));
        assert_eq!((c.g.clone(), c.u.clone(), c.v.clone()), (int(9), int(1), int(0)));
        let c = extended_gcd(&int(12), &int(8));
        assert_eq!((c.g.clone(), c.u.clone(), c.v.clone()), (int(4), int(1), int(-1)));
        assert!(c.verify());
        let c = extended_gcd(&int(0), &int(0));
        assert_eq!((c.g.clone(), c.u.clone(), c.v.clone()), (int(0), int(1), int(0)));
        assert!(c.verify());
        let c = extended_gcd(&-12i64, &-8i64);
        assert_eq!(c.g, 4);
        assert!(c.verify());
    }

    #[test]
    fn tampered_certificate_fails() {
        let mut c = extended_gcd(&int(12), &int(8));
        c.u = int(2);
        assert!(!c.verify());
        let mut c = extended_gcd(&int(12), &int(8));
        c.g = int(2);
        assert!(!c.verify());
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(&7i64).unwrap().is_prime());
        assert!(is_prime(&2i64).unwrap().is_prime());
        let c = is_prime(&6i64).unwrap();
        assert_eq!(c.verdict, Primality::Composite(DividesWitness { divisor: 2, dividend: 6, quotient: 3 }));
        assert!(c.verify());
        assert!(is_prime(&-7i64).unwrap().is_prime());
        assert_eq!(is_prime(&1i64), Err(EuclidError::PrimalityUndefined(1)));
        assert_eq!(is_prime(&0i64), Err(EuclidError::PrimalityUndefined(0)));
        let forged = PrimalityCert { subject: 9i64, verdict: Primality::Prime };
        assert!(!forged.verify());
    }

    #[test]
    fn prime_split_examples() {
        let split = |p: i64, a: i64, b: i64| {
            let cert = is_prime(&p).unwrap();
            let w = DividesWitness { divisor: p, dividend: a * b, quotient: a * b / p };
            prime_split(&cert, &a, &b, &w).unwrap()
        };
        assert_eq!(split(2, 2, 5), Either::Left(DividesWitness { divisor: 2, dividend: 2, quotient: 1 }));
        assert_eq!(split(3, 4, 6), Either::Right(DividesWitness { divisor: 3, dividend: 6, quotient: 2 }));
        assert_eq!(split(5, 10, 10), Either::Left(DividesWitness { divisor: 5, dividend: 10, quotient: 2 }));
    }

    #[test]
    fn prime_split_rejects_bad_inputs() {
        let cert = is_prime(&6i64).unwrap();
        let w = DividesWitness { divisor: 6, dividend: 12, quotient: 2 };
        assert_eq!(prime_split(&cert, &3, &4, &w), Err(EuclidError::NotPrime(6)));
        let cert = is_prime(&3i64).unwrap();
        let w = DividesWitness { divisor: 3, dividend: 12, quotient: 5 };
        assert_eq!(prime_split(&cert, &3, &4, &w), Err(EuclidError::InvalidWitness));
        let w = DividesWitness { divisor: 3, dividend: 15, quotient: 5 };
        assert_eq!(prime_split(&cert, &3, &4, &w), Err(EuclidError::InvalidWitness));
    }

    #[test]
    fn residue_ring_examples() {
        let r = residue_ring(&int(6)).unwrap();
        let e = |v: i64| Residue::new(int(v), int(6));
        assert_eq!(r.add(&e(4), &e(5)), e(3));
        assert_eq!(r.mul(&e(2), &e(3)), e(0));
        assert_eq!(r.neg(&e(1)), e(5));
        assert!(r.eq(&Residue::raw(int(10), int(6)), &e(4)));
        assert_eq!(residue_ring(&int(0)).unwrap_err(), EuclidError::ZeroModulus);
        assert_eq!(residue_ring(&int(-1)).unwrap_err(), EuclidError::UnitModulus(int(-1)));
    }

    #[test]
    fn residue_field_examples() {
        let f = residue_field_checked(&int(7)).unwrap();
        let e = |v: i64| Residue::new(int(v), int(7));
        assert_eq!(f.recip(&e(3)), Some(e(5)));
        assert_eq!(f.recip(&e(1)), Some(e(1)));
        assert_eq!(f.recip(&e(0)), None);
        match residue_field_checked(&int(6)) {
            Err(EuclidError::Composite(w)) => {
                assert_eq!((w.divisor.clone(), w.dividend.clone()), (int(2), int(6)));
                assert!(w.verify());
            }
            other => panic!("expected composite error, got {other:?}"),
        }
    }

    #[test]
    fn residue_field_rejects_mismatched_or_forged_certs() {
        let cert = is_prime(&int(5)).unwrap();
        assert_eq!(residue_field(&int(7), &cert).unwrap_err(), EuclidError::InvalidCertificate);
        let forged = PrimalityCert { subject: int(9), verdict: Primality::Prime };
        assert_eq!(residue_field(&int(9), &forged).unwrap_err(), EuclidError::NotPrime(int(9)));
    }

    #[test]
    fn integer_instances_are_lawful() {
        let r = check_laws(&integers(), 11, 200).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        let r = check_laws(&integers_with::<i64>(16), 11, 200).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        let r = check_laws(&integers_gcd_ring(), 11, 200).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn small_residue_instances_are_lawful() {
        let r = check_laws(&residue_ring(&int(12)).unwrap(), 2, 200).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        let r = check_laws(&residue_field_checked(&int(13)).unwrap(), 2, 200).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn composite_modulus_has_zero_divisors() {
        let ring = residue_ring(&int(6)).unwrap();
        let (base, ops) = (ring.base().clone(), ring.ops().clone());
        let claimed = Structure::new("Z/(6) claimed integral", Kind::IntegralRing, base, ops);
        let r = check_laws(&claimed, 1, 100).unwrap();
        assert!(r.failures_of("no zero divisors").next().is_some());
        assert!(r.recheck(&claimed));
    }
}
