//! Sparse univariate polynomials over a commutative ring.
//!
//! Terms are `(coefficient, exponent)` pairs with strictly decreasing
//! exponents and no coefficient equal to the ring zero; the zero polynomial
//! is the empty list. Each value carries its coefficient ring.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Signed;
use rand::{Rng, RngCore};
use thiserror::Error;

use crate::scalar::Scalar;
use crate::structures::{DSet, Kind, Ops, Structure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("coefficient rings differ: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("{0} is not a commutative ring")]
    NotCommutativeRing(String),
}

/// Degree of a polynomial; the zero polynomial has degree `-∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    MinusInfinity,
    Finite(u64),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

pub struct Poly<T> {
    ring: Structure<T>,
    terms: Vec<(T, u64)>,
}

impl<T: Clone> Clone for Poly<T> {
    fn clone(&self) -> Self {
        Poly { ring: self.ring.clone(), terms: self.terms.clone() }
    }
}

impl<T: fmt::Debug + Clone + 'static> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poly").field("ring", &self.ring.name()).field("terms", &self.terms).finish()
    }
}

impl<T: Clone + 'static> PartialEq for Poly<T> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.name() == other.ring.name()
            && self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|((a, e), (b, f))| e == f && self.ring.eq(a, b))
    }
}

impl<T: Clone + 'static> Poly<T> {
    pub fn zero(ring: &Structure<T>) -> Self {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    /// Combines like exponents, drops zero coefficients, sorts descending.
    pub fn new(ring: &Structure<T>, raw: impl IntoIterator<Item = (T, u64)>) -> Self {
        let mut raw: Vec<(T, u64)> = raw.into_iter().collect();
        raw.sort_by(|a, b| b.1.cmp(&a.1));
        let mut terms: Vec<(T, u64)> = Vec::with_capacity(raw.len());
        for (c, e) in raw {
            match terms.last_mut() {
                Some((acc, f)) if *f == e => *acc = ring.add(acc, &c),
                _ => terms.push((c, e)),
            }
        }
        let zero = ring.zero();
        terms.retain(|(c, _)| !ring.eq(c, &zero));
        Poly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Structure<T> {
        &self.ring
    }

    pub fn terms(&self) -> &[(T, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Degree {
        self.terms.first().map_or(Degree::MinusInfinity, |(_, e)| Degree::Finite(*e))
    }

    pub fn is_canonical(&self) -> bool {
        let zero = self.ring.zero();
        self.terms.windows(2).all(|w| w[0].1 > w[1].1) && self.terms.iter().all(|(c, _)| !self.ring.eq(c, &zero))
    }

    fn same_ring(&self, other: &Self) -> Result<(), PolyError> {
        if self.ring.name() != other.ring.name() {
            return Err(PolyError::RingMismatch(self.ring.name().to_string(), other.ring.name().to_string()));
        }
        Ok(())
    }

    /// Single merge pass over both term lists.
    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ring(other)?;
        let ring = &self.ring;
        let zero = ring.zero();
        let (p, q) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(p.len() + q.len());
        let (mut i, mut j) = (0, 0);
        while i < p.len() && j < q.len() {
            match p[i].1.cmp(&q[j].1) {
                Ordering::Greater => {
                    out.push(p[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(q[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ring.add(&p[i].0, &q[j].0);
                    if !ring.eq(&c, &zero) {
                        out.push((c, p[i].1));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&p[i..]);
        out.extend_from_slice(&q[j..]);
        Ok(Poly { ring: ring.clone(), terms: out })
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(c, e)| (self.ring.neg(c), *e)).collect();
        Poly { ring: self.ring.clone(), terms }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    /// Schoolbook product. Not part of the certified surface.
    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ring(other)?;
        let raw = self
            .terms
            .iter()
            .flat_map(|(a, e)| other.terms.iter().map(move |(b, f)| (self.ring.mul(a, b), e + f)));
        Ok(Poly::new(&self.ring, raw.collect::<Vec<_>>()))
    }

    /// Coefficients from degree 0 upward, zeros filled in.
    pub fn to_dense(&self) -> Vec<T> {
        let Degree::Finite(d) = self.degree() else { return Vec::new() };
        let mut v = vec![self.ring.zero(); d as usize + 1];
        for (c, e) in &self.terms {
            v[*e as usize] = c.clone();
        }
        v
    }

    /// Renders with a caller-supplied coefficient printer.
    pub fn render_with(&self, coeff: impl Fn(&T) -> (bool, String)) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (c, e)) in self.terms.iter().enumerate() {
            let (negative, mag) = coeff(c);
            let sep = match (k, negative) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            out.push_str(sep);
            let var = match e {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            };
            match (mag.as_str(), var.is_empty()) {
                (m, true) => out.push_str(m),
                ("1", false) => out.push_str(&var),
                (m, false) => {
                    out.push_str(m);
                    out.push('*');
                    out.push_str(&var);
                }
            }
        }
        out
    }
}

pub fn mk_poly<T: Clone + 'static>(ring: &Structure<T>, raw: impl IntoIterator<Item = (T, u64)>) -> Poly<T> {
    Poly::new(ring, raw)
}

pub fn poly_add<T: Clone + 'static>(p: &Poly<T>, q: &Poly<T>) -> Result<Poly<T>, PolyError> {
    p.add(q)
}

pub fn poly_neg<T: Clone + 'static>(p: &Poly<T>) -> Poly<T> {
    p.neg()
}

pub fn degree<T: Clone + 'static>(p: &Poly<T>) -> Degree {
    p.degree()
}

/// `3*x^2 - x + 1` for integer coefficients.
impl<T: Scalar + Signed> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(|c| (c.is_negative(), c.magnitude().to_string())))
    }
}

/// Additive group of polynomials over `ring`; samples have degree ≤ 8.
pub fn poly_additive_group<T: Clone + Send + Sync + 'static>(
    ring: &Structure<T>,
) -> Result<Structure<Poly<T>>, PolyError> {
    if !ring.kind().is_a(Kind::CommutativeRing) || ring.validate().is_err() {
        return Err(PolyError::NotCommutativeRing(ring.name().to_string()));
    }
    let (r1, r2) = (ring.clone(), ring.clone());
    let base = DSet::new(
        format!("{}[x]", ring.name()),
        |p: &Poly<T>, q: &Poly<T>| p == q,
        move |rng: &mut dyn RngCore| {
            let n = rng.gen_range(0..=5);
            let raw: Vec<(T, u64)> = (0..n).map(|_| (r1.base().draw(rng), rng.gen_range(0..=8))).collect();
            Poly::new(&r1, raw)
        },
    )
    .with_respell(move |p, rng| {
        let terms = p.terms.iter().map(|(c, e)| (r2.base().respell(c, rng), *e)).collect();
        Poly { ring: r2.clone(), terms }
    });
    let ops = Ops::default()
        .with_op(|p: &Poly<T>, q: &Poly<T>| p.add(q).expect("same ring"))
        .with_identity(Poly::zero(ring))
        .with_inverse(|p: &Poly<T>| p.neg());
    Ok(Structure::new(format!("{}[x](+)", ring.name()), Kind::CommutativeGroup, base, ops))
}
