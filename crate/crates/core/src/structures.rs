//! The tower of algebraic structures, decidable equality, and executable
//! law suites.
//!
//! A [`Structure`] is a runtime bundle: a [`DSet`] (carrier with decidable
//! equality and a deterministic sampler), a [`Kind`] naming its place in the
//! tower, and the operations that kind requires. [`check_laws`] runs the
//! cumulative law catalogue of the kind against sampled and enumerated tuples
//! and reports concrete counterexamples.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::factorization::FactorizationData;

/// Outcome of a decidable predicate, carrying evidence either way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision<Y = (), N = ()> {
    Yes(Y),
    No(N),
}

/// Constructive disjunction: exactly one side is inhabited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Either<L, R> {
    Left(L),
    Right(R),
}

impl<L, R> Either<L, R> {
    pub fn is_left(&self) -> bool {
        matches!(self, Either::Left(_))
    }

    pub fn is_right(&self) -> bool {
        matches!(self, Either::Right(_))
    }
}

impl Decision {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Decision::Yes(())
        } else {
            Decision::No(())
        }
    }
}

impl<Y, N> Decision<Y, N> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Decision::No(_))
    }

    pub fn yes(self) -> Option<Y> {
        match self {
            Decision::Yes(y) => Some(y),
            Decision::No(_) => None,
        }
    }

    pub fn no(self) -> Option<N> {
        match self {
            Decision::Yes(_) => None,
            Decision::No(n) => Some(n),
        }
    }

    /// Negation swaps witness and refuter.
    pub fn negate(self) -> Decision<N, Y> {
        match self {
            Decision::Yes(y) => Decision::No(y),
            Decision::No(n) => Decision::Yes(n),
        }
    }

    /// Conjunction: a pair of witnesses, or the first refuter found.
    pub fn and<Y2, N2>(self, other: Decision<Y2, N2>) -> Decision<(Y, Y2), Either<N, N2>> {
        match (self, other) {
            (Decision::Yes(a), Decision::Yes(b)) => Decision::Yes((a, b)),
            (Decision::No(a), _) => Decision::No(Either::Left(a)),
            (Decision::Yes(_), Decision::No(b)) => Decision::No(Either::Right(b)),
        }
    }

    /// Disjunction: the first witness found (left preferred), or both refuters.
    pub fn or<Y2, N2>(self, other: Decision<Y2, N2>) -> Decision<Either<Y, Y2>, (N, N2)> {
        match (self, other) {
            (Decision::Yes(a), _) => Decision::Yes(Either::Left(a)),
            (Decision::No(_), Decision::Yes(b)) => Decision::Yes(Either::Right(b)),
            (Decision::No(a), Decision::No(b)) => Decision::No((a, b)),
        }
    }

    pub fn map_yes<Z>(self, f: impl FnOnce(Y) -> Z) -> Decision<Z, N> {
        match self {
            Decision::Yes(y) => Decision::Yes(f(y)),
            Decision::No(n) => Decision::No(n),
        }
    }
}

pub type EqFn<T> = Arc<dyn Fn(&T, &T) -> bool + Send + Sync>;
pub type GenFn<T> = Arc<dyn Fn(&mut dyn RngCore) -> T + Send + Sync>;
pub type RespellFn<T> = Arc<dyn Fn(&T, &mut dyn RngCore) -> T + Send + Sync>;
pub type EnumFn<T> = Arc<dyn Fn(usize) -> Vec<T> + Send + Sync>;
pub type BinOp<T> = Arc<dyn Fn(&T, &T) -> T + Send + Sync>;
pub type UnOp<T> = Arc<dyn Fn(&T) -> T + Send + Sync>;
pub type PartialUnOp<T> = Arc<dyn Fn(&T) -> Option<T> + Send + Sync>;
pub type PartialBinOp<T> = Arc<dyn Fn(&T, &T) -> Option<T> + Send + Sync>;
pub type DivModFn<T> = Arc<dyn Fn(&T, &T) -> Option<(T, T)> + Send + Sync>;
pub type NormFn<T> = Arc<dyn Fn(&T) -> BigUint + Send + Sync>;
pub type FactorFn<T> = Arc<dyn Fn(&T) -> Option<FactorizationData<T>> + Send + Sync>;

/// Deterministic RNG for a seed and an independent stream index.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A carrier set with decidable equality, a seeded sampler and an optional
/// bounded enumeration.
pub struct DSet<T> {
    name: Arc<str>,
    eq: EqFn<T>,
    gen: GenFn<T>,
    respell: Option<RespellFn<T>>,
    enumerate: Option<EnumFn<T>>,
}

impl<T> Clone for DSet<T> {
    fn clone(&self) -> Self {
        DSet {
            name: self.name.clone(),
            eq: self.eq.clone(),
            gen: self.gen.clone(),
            respell: self.respell.clone(),
            enumerate: self.enumerate.clone(),
        }
    }
}

impl<T> fmt::Debug for DSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DSet").field("name", &self.name).finish()
    }
}

impl<T: 'static> DSet<T> {
    pub fn new(
        name: impl Into<Arc<str>>,
        eq: impl Fn(&T, &T) -> bool + Send + Sync + 'static,
        gen: impl Fn(&mut dyn RngCore) -> T + Send + Sync + 'static,
    ) -> Self {
        DSet {
            name: name.into(),
            eq: Arc::new(eq),
            gen: Arc::new(gen),
            respell: None,
            enumerate: None,
        }
    }

    /// Supplies a generator of eq-equal but possibly different representatives.
    pub fn with_respell(mut self, f: impl Fn(&T, &mut dyn RngCore) -> T + Send + Sync + 'static) -> Self {
        self.respell = Some(Arc::new(f));
        self
    }

    /// Supplies an enumeration: `f(n)` lists up to `n` distinct elements in a fixed order.
    pub fn with_enumeration(mut self, f: impl Fn(usize) -> Vec<T> + Send + Sync + 'static) -> Self {
        self.enumerate = Some(Arc::new(f));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eq(&self, x: &T, y: &T) -> bool {
        (self.eq)(x, y)
    }

    pub fn decide_eq(&self, x: &T, y: &T) -> Decision {
        Decision::from_bool(self.eq(x, y))
    }

    pub fn draw(&self, rng: &mut dyn RngCore) -> T {
        (self.gen)(rng)
    }

    /// `count` elements, deterministic in `seed`.
    pub fn sample(&self, seed: u64, count: usize) -> Vec<T> {
        let mut rng = seeded_rng(seed, 0);
        (0..count).map(|_| self.draw(&mut rng)).collect()
    }

    /// An eq-equal representative of `x`; `x` itself when the carrier has no
    /// alternative spellings.
    pub fn respell(&self, x: &T, rng: &mut dyn RngCore) -> T
    where
        T: Clone,
    {
        match &self.respell {
            Some(f) => f(x, rng),
            None => x.clone(),
        }
    }

    pub fn has_respell(&self) -> bool {
        self.respell.is_some()
    }

    pub fn enumerate(&self, bound: usize) -> Option<Vec<T>> {
        self.enumerate.as_ref().map(|f| f(bound))
    }
}

/// `decideEq` on a carrier.
pub fn decide_eq<T: 'static>(d: &DSet<T>, x: &T, y: &T) -> Decision {
    d.decide_eq(x, y)
}

/// Levels of the structure tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Magma,
    Semigroup,
    CommutativeSemigroup,
    Monoid,
    CommutativeMonoid,
    CCMonoid,
    FactorizationMonoid,
    Group,
    CommutativeGroup,
    Ringoid,
    Ring,
    RingWithOne,
    CommutativeRing,
    IntegralRing,
    GcdRing,
    EuclideanRing,
    FactorizationRing,
    UniqueFactorizationRing,
    Field,
}

/// Operation slots. At ring levels `Op` is `+`, `Identity` is zero and
/// `Inverse` is negation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OpName {
    Op,
    Identity,
    Inverse,
    Mul,
    One,
    Recip,
    Gcd,
    Divide,
    DivMod,
    Norm,
    Factor,
}

impl fmt::Display for OpName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OpName::Op => "op",
            OpName::Identity => "identity",
            OpName::Inverse => "inverse",
            OpName::Mul => "mul",
            OpName::One => "one",
            OpName::Recip => "recip",
            OpName::Gcd => "gcd",
            OpName::Divide => "divide",
            OpName::DivMod => "div_mod",
            OpName::Norm => "norm",
            OpName::Factor => "factor",
        };
        f.write_str(s)
    }
}

impl Kind {
    pub const ALL: [Kind; 19] = [
        Kind::Magma,
        Kind::Semigroup,
        Kind::CommutativeSemigroup,
        Kind::Monoid,
        Kind::CommutativeMonoid,
        Kind::CCMonoid,
        Kind::FactorizationMonoid,
        Kind::Group,
        Kind::CommutativeGroup,
        Kind::Ringoid,
        Kind::Ring,
        Kind::RingWithOne,
        Kind::CommutativeRing,
        Kind::IntegralRing,
        Kind::GcdRing,
        Kind::EuclideanRing,
        Kind::FactorizationRing,
        Kind::UniqueFactorizationRing,
        Kind::Field,
    ];

    /// Immediate parents in the tower.
    pub fn parents(self) -> &'static [Kind] {
        use Kind::*;
        match self {
            Magma => &[],
            Semigroup => &[Magma],
            CommutativeSemigroup => &[Semigroup],
            Monoid => &[Semigroup],
            CommutativeMonoid => &[Monoid, CommutativeSemigroup],
            CCMonoid => &[CommutativeMonoid],
            FactorizationMonoid => &[CCMonoid],
            Group => &[Monoid],
            CommutativeGroup => &[Group, CommutativeMonoid],
            Ringoid => &[CommutativeGroup],
            Ring => &[Ringoid],
            RingWithOne => &[Ring],
            CommutativeRing => &[RingWithOne],
            IntegralRing => &[CommutativeRing],
            GcdRing => &[IntegralRing],
            EuclideanRing => &[IntegralRing],
            FactorizationRing => &[IntegralRing],
            UniqueFactorizationRing => &[FactorizationRing],
            Field => &[UniqueFactorizationRing],
        }
    }

    /// The kind and all of its ancestors, in tower order.
    pub fn lineage(self) -> Vec<Kind> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(k) = stack.pop() {
            if seen.insert(k) {
                stack.extend_from_slice(k.parents());
            }
        }
        seen.into_iter().collect()
    }

    /// True when an instance of `self` can be viewed as `other`.
    pub fn is_a(self, other: Kind) -> bool {
        self.lineage().contains(&other)
    }

    /// Operations introduced at this level.
    pub fn own_ops(self) -> &'static [OpName] {
        use Kind::*;
        match self {
            Magma => &[OpName::Op],
            Monoid => &[OpName::Identity],
            Group => &[OpName::Inverse],
            Ringoid => &[OpName::Mul],
            RingWithOne => &[OpName::One],
            GcdRing => &[OpName::Gcd, OpName::Divide],
            EuclideanRing => &[OpName::DivMod, OpName::Norm],
            FactorizationMonoid | FactorizationRing => &[OpName::Factor],
            Field => &[OpName::Recip],
            _ => &[],
        }
    }

    /// Full operation signature, including inherited operations.
    pub fn signature(self) -> BTreeSet<OpName> {
        self.lineage().into_iter().flat_map(|k| k.own_ops().iter().copied()).collect()
    }

    pub fn is_commutative(self) -> bool {
        self.is_a(Kind::CommutativeSemigroup)
    }

    /// Kinds accepted by [`direct_product`].
    pub fn is_group_level(self) -> bool {
        matches!(
            self,
            Kind::Magma
                | Kind::Semigroup
                | Kind::CommutativeSemigroup
                | Kind::Monoid
                | Kind::CommutativeMonoid
                | Kind::Group
                | Kind::CommutativeGroup
        )
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("{name}: kind {kind} requires operation `{op}`")]
    MissingOp { name: String, kind: Kind, op: OpName },
    #[error("kind mismatch: {left} vs {right}")]
    KindMismatch { left: Kind, right: Kind },
    #[error("direct product is only defined for group-level kinds, not {0}")]
    NotGroupLevel(Kind),
    #[error("{from} cannot be viewed as {to}")]
    InvalidUpcast { from: Kind, to: Kind },
}

/// Operation table; absent slots are `None`.
pub struct Ops<T> {
    pub op: Option<BinOp<T>>,
    pub identity: Option<T>,
    pub inverse: Option<UnOp<T>>,
    pub mul: Option<BinOp<T>>,
    pub one: Option<T>,
    pub recip: Option<PartialUnOp<T>>,
    pub gcd: Option<BinOp<T>>,
    pub divide: Option<PartialBinOp<T>>,
    pub div_mod: Option<DivModFn<T>>,
    pub norm: Option<NormFn<T>>,
    pub factor: Option<FactorFn<T>>,
}

impl<T> Default for Ops<T> {
    fn default() -> Self {
        Ops {
            op: None,
            identity: None,
            inverse: None,
            mul: None,
            one: None,
            recip: None,
            gcd: None,
            divide: None,
            div_mod: None,
            norm: None,
            factor: None,
        }
    }
}

impl<T: Clone> Clone for Ops<T> {
    fn clone(&self) -> Self {
        Ops {
            op: self.op.clone(),
            identity: self.identity.clone(),
            inverse: self.inverse.clone(),
            mul: self.mul.clone(),
            one: self.one.clone(),
            recip: self.recip.clone(),
            gcd: self.gcd.clone(),
            divide: self.divide.clone(),
            div_mod: self.div_mod.clone(),
            norm: self.norm.clone(),
            factor: self.factor.clone(),
        }
    }
}

impl<T> Ops<T> {
    pub fn with_op(mut self, f: impl Fn(&T, &T) -> T + Send + Sync + 'static) -> Self {
        self.op = Some(Arc::new(f));
        self
    }

    pub fn with_identity(mut self, e: T) -> Self {
        self.identity = Some(e);
        self
    }

    pub fn with_inverse(mut self, f: impl Fn(&T) -> T + Send + Sync + 'static) -> Self {
        self.inverse = Some(Arc::new(f));
        self
    }

    pub fn with_mul(mut self, f: impl Fn(&T, &T) -> T + Send + Sync + 'static) -> Self {
        self.mul = Some(Arc::new(f));
        self
    }

    pub fn with_one(mut self, one: T) -> Self {
        self.one = Some(one);
        self
    }

    pub fn with_recip(mut self, f: impl Fn(&T) -> Option<T> + Send + Sync + 'static) -> Self {
        self.recip = Some(Arc::new(f));
        self
    }

    pub fn with_gcd(mut self, f: impl Fn(&T, &T) -> T + Send + Sync + 'static) -> Self {
        self.gcd = Some(Arc::new(f));
        self
    }

    pub fn with_divide(mut self, f: impl Fn(&T, &T) -> Option<T> + Send + Sync + 'static) -> Self {
        self.divide = Some(Arc::new(f));
        self
    }

    pub fn with_div_mod(mut self, f: impl Fn(&T, &T) -> Option<(T, T)> + Send + Sync + 'static) -> Self {
        self.div_mod = Some(Arc::new(f));
        self
    }

    pub fn with_norm(mut self, f: impl Fn(&T) -> BigUint + Send + Sync + 'static) -> Self {
        self.norm = Some(Arc::new(f));
        self
    }

    pub fn with_factor(
        mut self,
        f: impl Fn(&T) -> Option<FactorizationData<T>> + Send + Sync + 'static,
    ) -> Self {
        self.factor = Some(Arc::new(f));
        self
    }

    fn has(&self, op: OpName) -> bool {
        match op {
            OpName::Op => self.op.is_some(),
            OpName::Identity => self.identity.is_some(),
            OpName::Inverse => self.inverse.is_some(),
            OpName::Mul => self.mul.is_some(),
            OpName::One => self.one.is_some(),
            OpName::Recip => self.recip.is_some(),
            OpName::Gcd => self.gcd.is_some(),
            OpName::Divide => self.divide.is_some(),
            OpName::DivMod => self.div_mod.is_some(),
            OpName::Norm => self.norm.is_some(),
            OpName::Factor => self.factor.is_some(),
        }
    }

    fn clear(&mut self, op: OpName) {
        match op {
            OpName::Op => self.op = None,
            OpName::Identity => self.identity = None,
            OpName::Inverse => self.inverse = None,
            OpName::Mul => self.mul = None,
            OpName::One => self.one = None,
            OpName::Recip => self.recip = None,
            OpName::Gcd => self.gcd = None,
            OpName::Divide => self.divide = None,
            OpName::DivMod => self.div_mod = None,
            OpName::Norm => self.norm = None,
            OpName::Factor => self.factor = None,
        }
    }
}

/// One level of the tower instantiated on a concrete carrier.
///
/// Accessors for operations panic when the slot is empty; call
/// [`Structure::validate`] (or [`check_laws`], which does) first.
pub struct Structure<T> {
    name: Arc<str>,
    kind: Kind,
    base: DSet<T>,
    ops: Ops<T>,
}

impl<T: Clone> Clone for Structure<T> {
    fn clone(&self) -> Self {
        Structure {
            name: self.name.clone(),
            kind: self.kind,
            base: self.base.clone(),
            ops: self.ops.clone(),
        }
    }
}

impl<T> fmt::Debug for Structure<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Structure")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .field("carrier", &self.base.name)
            .finish()
    }
}

impl<T: Clone + 'static> Structure<T> {
    pub fn new(name: impl Into<Arc<str>>, kind: Kind, base: DSet<T>, ops: Ops<T>) -> Self {
        Structure { name: name.into(), kind, base, ops }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn base(&self) -> &DSet<T> {
        &self.base
    }

    pub fn ops(&self) -> &Ops<T> {
        &self.ops
    }

    /// Checks that every operation of the kind's signature is present.
    pub fn validate(&self) -> Result<(), StructureError> {
        for op in self.kind.signature() {
            if !self.ops.has(op) {
                return Err(StructureError::MissingOp { name: self.name.to_string(), kind: self.kind, op });
            }
        }
        Ok(())
    }

    /// Up-cast to an ancestor kind, dropping operations outside its signature.
    pub fn view_as(&self, kind: Kind) -> Result<Structure<T>, StructureError> {
        if !self.kind.is_a(kind) {
            return Err(StructureError::InvalidUpcast { from: self.kind, to: kind });
        }
        let keep = kind.signature();
        let mut ops = self.ops.clone();
        for op in self.kind.signature().difference(&keep) {
            ops.clear(*op);
        }
        Ok(Structure { name: self.name.clone(), kind, base: self.base.clone(), ops })
    }

    /// The multiplicative monoid `(R, *, 1)` of a ring with one.
    pub fn multiplicative_monoid(&self) -> Result<Structure<T>, StructureError> {
        if !self.kind.is_a(Kind::RingWithOne) {
            return Err(StructureError::InvalidUpcast { from: self.kind, to: Kind::RingWithOne });
        }
        self.validate()?;
        let kind = if self.kind.is_a(Kind::CommutativeRing) { Kind::CommutativeMonoid } else { Kind::Monoid };
        let mul = self.ops.mul.clone().expect("validated");
        let ops = Ops { op: Some(mul), identity: self.ops.one.clone(), ..Ops::default() };
        Ok(Structure::new(format!("{}(*)", self.name), kind, self.base.clone(), ops))
    }

    pub fn eq(&self, x: &T, y: &T) -> bool {
        self.base.eq(x, y)
    }

    pub fn op(&self, x: &T, y: &T) -> T {
        (self.ops.op.as_ref().expect("op"))(x, y)
    }

    pub fn identity(&self) -> T {
        self.ops.identity.clone().expect("identity")
    }

    pub fn inverse(&self, x: &T) -> T {
        (self.ops.inverse.as_ref().expect("inverse"))(x)
    }

    /// Ring addition (the same slot as [`Structure::op`]).
    pub fn add(&self, x: &T, y: &T) -> T {
        self.op(x, y)
    }

    pub fn zero(&self) -> T {
        self.identity()
    }

    pub fn neg(&self, x: &T) -> T {
        self.inverse(x)
    }

    pub fn mul(&self, x: &T, y: &T) -> T {
        (self.ops.mul.as_ref().expect("mul"))(x, y)
    }

    pub fn one(&self) -> T {
        self.ops.one.clone().expect("one")
    }

    pub fn recip(&self, x: &T) -> Option<T> {
        (self.ops.recip.as_ref().expect("recip"))(x)
    }

    pub fn gcd(&self, x: &T, y: &T) -> T {
        (self.ops.gcd.as_ref().expect("gcd"))(x, y)
    }

    pub fn divide(&self, x: &T, y: &T) -> Option<T> {
        (self.ops.divide.as_ref().expect("divide"))(x, y)
    }

    pub fn div_mod(&self, x: &T, y: &T) -> Option<(T, T)> {
        (self.ops.div_mod.as_ref().expect("div_mod"))(x, y)
    }

    pub fn norm(&self, x: &T) -> BigUint {
        (self.ops.norm.as_ref().expect("norm"))(x)
    }

    pub fn factor(&self, x: &T) -> Option<FactorizationData<T>> {
        (self.ops.factor.as_ref().expect("factor"))(x)
    }

    fn is_zero(&self, x: &T) -> bool {
        self.eq(x, &self.identity())
    }

    /// Best-effort divisibility test from whichever division operation exists.
    fn divides(&self, d: &T, m: &T) -> Option<bool> {
        if self.is_zero(d) {
            return Some(self.is_zero(m));
        }
        if let Some(f) = &self.ops.divide {
            return Some(f(m, d).is_some());
        }
        if let Some(f) = &self.ops.div_mod {
            return f(m, d).map(|(_, r)| self.is_zero(&r));
        }
        if let Some(f) = &self.ops.recip {
            return Some(f(d).is_some());
        }
        None
    }

    fn is_unit(&self, x: &T) -> Option<bool> {
        if self.ops.one.is_none() {
            return None;
        }
        self.divides(x, &self.one())
    }

    /// Left fold of `op` with the identity as seed.
    pub fn fold(&self, items: impl IntoIterator<Item = T>) -> T {
        items.into_iter().fold(self.identity(), |acc, x| self.op(&acc, &x))
    }
}

/// A single law: a predicate over `arity` carrier elements.
pub struct Law<T> {
    pub name: &'static str,
    pub arity: usize,
    holds: fn(&Structure<T>, &[T]) -> bool,
    gen: Option<fn(&Structure<T>, &mut dyn RngCore) -> Vec<T>>,
}

impl<T> Clone for Law<T> {
    fn clone(&self) -> Self {
        Law { name: self.name, arity: self.arity, holds: self.holds, gen: self.gen }
    }
}

impl<T: Clone + 'static> Law<T> {
    pub fn holds(&self, s: &Structure<T>, args: &[T]) -> bool {
        args.len() == self.arity && (self.holds)(s, args)
    }

    fn draw(&self, s: &Structure<T>, rng: &mut dyn RngCore) -> Vec<T> {
        match self.gen {
            Some(g) => g(s, rng),
            None => (0..self.arity).map(|_| s.base.draw(rng)).collect(),
        }
    }
}

const fn law<T>(name: &'static str, arity: usize, holds: fn(&Structure<T>, &[T]) -> bool) -> Law<T> {
    Law { name, arity, holds, gen: None }
}

const fn law_gen<T>(
    name: &'static str,
    arity: usize,
    holds: fn(&Structure<T>, &[T]) -> bool,
    gen: fn(&Structure<T>, &mut dyn RngCore) -> Vec<T>,
) -> Law<T> {
    Law { name, arity, holds, gen: Some(gen) }
}

fn respelled<T: Clone + 'static>(s: &Structure<T>, rng: &mut dyn RngCore, extra: usize) -> Vec<T> {
    let x = s.base.draw(rng);
    let x2 = s.base.respell(&x, rng);
    let mut v = vec![x, x2];
    v.extend((0..extra).map(|_| s.base.draw(rng)));
    v
}

fn magma_laws<T: Clone + 'static>() -> Vec<Law<T>> {
    vec![law_gen(
        "congruence of op",
        3,
        |s, a| !s.eq(&a[0], &a[1]) || (s.eq(&s.op(&a[0], &a[2]), &s.op(&a[1], &a[2])) && s.eq(&s.op(&a[2], &a[0]), &s.op(&a[2], &a[1]))),
        |s, r| respelled(s, r, 1),
    )]
}

fn semigroup_laws<T: Clone + 'static>() -> Vec<Law<T>> {
    vec![law("associativity", 3, |s, a| {
        s.eq(&s.op(&s.op(&a[0], &a[1]), &a[2]), &s.op(&a[0], &s.op(&a[1], &a[2])))
    })]
}

fn commutative_laws<T: Clone + 'static>() -> Vec<Law<T>> {
    vec![law("commutativity", 2, |s, a| s.eq(&s.op(&a[0], &a[1]), &s.op(&a[1], &a[0])))]
}

fn monoid_laws<T: Clone + 'static>() -> Vec<Law<T>> {
    vec![
        law("left identity", 1, |s, a| s.eq(&s.op(&s.identity(), &a[0]), &a[0])),
        law("right identity", 1, |s, a| s.eq(&s.op(&a[0], &s.identity()), &a[0])),
    ]
}

fn cancellation_laws<T: Clone + 'static>() -> Vec<Law<T>> {
    vec![law_gen(
        "cancellation",
        3,
        |s, a| !s.eq(&s.op(&a[0], &a[2]), &s.op(&a[1], &a[2])) || s.eq(&a[0], &a[1]),
        |s, r| {
            let x = s.base.draw(r);
            let y = if r.next_u32() % 2 == 0 { s.base.respell(&x, r) } else { s.base.draw(r) };
            vec![x, y, s.base.draw(r)]
        },
    )]
}

fn factors_reconstruct<T: Clone + 'static>(s: &Structure<T>, x: &T, with_zero: bool) -> bool {
    if with_zero && s.is_zero(x) {
        return true;
    }
    let Some(f) = s.factor(x) else { return false };
    let mut acc = f.unit.clone();
    for (p, e) in &f.factors {
        if *e == 0 || s.is_unit(p) == Some(true) {
            return false;
        }
        for _ in 0..*e {
            acc = if with_zero { s.mul(&acc, p) } else { s.op(&acc, p) };
        }
    }
    s.eq(&acc, x)
}

fn factorization_monoid_laws<T: Clone + 'static>() -> Vec<Law<T>> {
    vec![law("factorization reconstructs", 1, |s, a| {
        let Some(f) = s.factor(&a[0]) else { return false };
        let mut acc = f.unit.clone();
        for (p, e) in &f.factors {
            if *e == 0 || s.eq(p, &s.identity()) {
                return false;
            }
            for _ in 0..*e {
                acc = s.op(&acc, p);
            }
        }
        s.eq(&acc, &a[0])
    })]
}

fn group_laws<T: Clone + 'static>() -> Vec<Law<T>> {
    vec![
        law("left inverse", 1, |s, a| s.eq(&s.op(&s.inverse(&a[0]), &a[0]), &s.identity())),
        law("right inverse", 1, |s, a| s.eq(&s.op(&a[0], &s.inverse(&a[0])), &s.identity())),
        law_gen(
            "uniqueness of inverse",
            2,
            |s, a| !s.eq(&s.op(&a[0], &a[1]), &s.identity()) || s.eq(&a[1], &s.inverse(&a[0])),
            |s, r| {
                let x = s.base.draw(r);
                let y = if r.next_u32() % 2 == 0 {
                    let inv = s.inverse(&x);
                    s.base.respell(&inv, r)
                } else {
                    s.base.draw(r)
                };
                vec![x, y]
            },
        ),
        law("inverse of product", 2, |s, a| {
            s.eq(&s.inverse(&s.op(&a[0], &a[1])), &s.op(&s.inverse(&a[1]), &s.inverse(&a[0])))
        }),
        law_gen(
            "congruence of inverse",
            2,
            |s, a| !s.eq(&a[0], &a[1]) || s.eq(&s.inverse(&a[0]), &s.inverse(&a[1])),
            |s, r| respelled(s, r, 0),
        ),
    ]
}

fn ringoid_laws<T: Clone + 'static>() -> Vec<Law<T>> {
    vec![law_gen(
        "congruence of mul",
        3,
        |s, a| {
            !s.eq(&a[0], &a[1])
                || (s.eq(&s.mul(&a[0], &a[2]), &s.mul(&a[1], &a[2])) && s.eq(&s.mul(&a[2], &a[0]), &s.mul(&a[2], &a[1])))
        },
        |s, r| respelled(s, r, 1),
    )]
}

fn ring_laws<T: Clone + 'static>() -> Vec<Law<T>> {
    vec![
        law("mul associativity", 3, |s, a| {
            s.eq(&s.mul(&s.mul(&a[0], &a[1]), &a[2]), &s.mul(&a[0], &s.mul(&a[1], &a[2])))
        }),
        law("left distributivity", 3, |s, a| {
            s.eq(&s.mul(&a[0], &s.add(&a[1], &a[2])), &s.add(&s.mul(&a[0], &a[1]), &s.mul(&a[0], &a[2])))
        }),
        law("right distributivity", 3, |s, a| {
            s.eq(&s.mul(&s.add(&a[0], &a[1]), &a[2]), &s.add(&s.mul(&a[0], &a[2]), &s.mul(&a[1], &a[2])))
        }),
    ]
}

fn ring_with_one_laws<T: Clone + 'static>() -> Vec<Law<T>> {
    vec![
        law("mul left identity", 1, |s, a| s.eq(&s.mul(&s.one(), &a[0]), &a[0])),
        law("mul right identity", 1, |s, a| s.eq(&s.mul(&a[0], &s.one()), &a[0])),
    ]
}

fn commutative_ring_laws<T: Clone + 'static>() -> Vec<Law<T>> {
    vec![law("mul commutativity", 2, |s, a| s.eq(&s.mul(&a[0], &a[1]), &s.mul(&a[1], &a[0])))]
}

fn integral_ring_laws<T: Clone + 'static>() -> Vec<Law<T>> {
    vec![
        law("one differs from zero", 1, |s, _| !s.eq(&s.one(), &s.zero())),
        law("no zero divisors", 2, |s, a| {
            !s.is_zero(&s.mul(&a[0], &a[1])) || s.is_zero(&a[0]) || s.is_zero(&a[1])
        }),
    ]
}

fn gcd_divides<T: Clone + 'static>(s: &Structure<T>, d: &T, m: &T) -> bool {
    if s.is_zero(d) {
        return s.is_zero(m);
    }
    match s.divide(m, d) {
        Some(q) => s.eq(&s.mul(&q, d), m),
        None => false,
    }
}

fn gcd_ring_laws<T: Clone + 'static>() -> Vec<Law<T>> {
    vec![
        law("gcd divides both", 2, |s, a| {
            let g = s.gcd(&a[0], &a[1]);
            gcd_divides(s, &g, &a[0]) && gcd_divides(s, &g, &a[1])
        }),
        law_gen(
            "gcd is greatest",
            3,
            |s, a| {
                let c = &a[2];
                if !(gcd_divides(s, c, &a[0]) && gcd_divides(s, c, &a[1])) {
                    return true;
                }
                gcd_divides(s, c, &s.gcd(&a[0], &a[1]))
            },
            |s, r| {
                let c = s.base.draw(r);
                let x = s.mul(&c, &s.base.draw(r));
                let y = s.mul(&c, &s.base.draw(r));
                vec![x, y, c]
            },
        ),
        law("gcd symmetric up to associates", 2, |s, a| {
            let g1 = s.gcd(&a[0], &a[1]);
            let g2 = s.gcd(&a[1], &a[0]);
            gcd_divides(s, &g1, &g2) && gcd_divides(s, &g2, &g1)
        }),
    ]
}

fn euclidean_laws<T: Clone + 'static>() -> Vec<Law<T>> {
    vec![law("division with remainder", 2, |s, a| {
        let (x, d) = (&a[0], &a[1]);
        match s.div_mod(x, d) {
            None => s.is_zero(d),
            Some((q, r)) => {
                !s.is_zero(d)
                    && s.eq(x, &s.add(&s.mul(&q, d), &r))
                    && (s.is_zero(&r) || s.norm(&r) < s.norm(d))
            }
        }
    })]
}

fn factorization_ring_laws<T: Clone + 'static>() -> Vec<Law<T>> {
    vec![law("factorization reconstructs", 1, |s, a| factors_reconstruct(s, &a[0], true))]
}

fn ufr_laws<T: Clone + 'static>() -> Vec<Law<T>> {
    vec![law("prime divides a factor", 2, |s, a| {
        let prod = s.mul(&a[0], &a[1]);
        if s.is_zero(&prod) {
            return true;
        }
        let Some(f) = s.factor(&prod) else { return false };
        f.factors.iter().all(|(p, _)| s.divides(p, &a[0]) != Some(false) || s.divides(p, &a[1]) != Some(false))
    })]
}

fn field_laws<T: Clone + 'static>() -> Vec<Law<T>> {
    vec![
        law("multiplicative inverse", 1, |s, a| match s.recip(&a[0]) {
            None => s.is_zero(&a[0]),
            Some(y) => !s.is_zero(&a[0]) && s.eq(&s.mul(&a[0], &y), &s.one()),
        }),
        law_gen(
            "congruence of recip",
            2,
            |s, a| {
                if !s.eq(&a[0], &a[1]) {
                    return true;
                }
                match (s.recip(&a[0]), s.recip(&a[1])) {
                    (Some(x), Some(y)) => s.eq(&x, &y),
                    (None, None) => true,
                    _ => false,
                }
            },
            |s, r| respelled(s, r, 0),
        ),
    ]
}

fn own_laws<T: Clone + 'static>(kind: Kind) -> Vec<Law<T>> {
    use Kind::*;
    match kind {
        Magma => magma_laws(),
        Semigroup => semigroup_laws(),
        CommutativeSemigroup => commutative_laws(),
        Monoid => monoid_laws(),
        CCMonoid => cancellation_laws(),
        FactorizationMonoid => factorization_monoid_laws(),
        Group => group_laws(),
        Ringoid => ringoid_laws(),
        Ring => ring_laws(),
        RingWithOne => ring_with_one_laws(),
        CommutativeRing => commutative_ring_laws(),
        IntegralRing => integral_ring_laws(),
        GcdRing => gcd_ring_laws(),
        EuclideanRing => euclidean_laws(),
        FactorizationRing => factorization_ring_laws(),
        UniqueFactorizationRing => ufr_laws(),
        Field => field_laws(),
        CommutativeMonoid | CommutativeGroup => Vec::new(),
    }
}

/// The cumulative law catalogue of a kind.
pub fn law_catalogue<T: Clone + 'static>(kind: Kind) -> Vec<Law<T>> {
    kind.lineage().into_iter().flat_map(own_laws).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct LawFailure<T> {
    pub law: &'static str,
    pub counterexample: Vec<T>,
}

#[derive(Clone, Debug)]
pub struct LawReport<T> {
    pub structure: String,
    pub kind: Kind,
    pub cases: usize,
    pub failures: Vec<LawFailure<T>>,
}

impl<T: Clone + 'static> LawReport<T> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Every stored counterexample still violates its law.
    pub fn recheck(&self, s: &Structure<T>) -> bool {
        let laws = law_catalogue::<T>(self.kind);
        self.failures.iter().all(|f| {
            laws.iter().filter(|l| l.name == f.law).any(|l| !l.holds(s, &f.counterexample))
        })
    }

    pub fn failures_of<'a>(&'a self, law: &'a str) -> impl Iterator<Item = &'a LawFailure<T>> + 'a {
        self.failures.iter().filter(move |f| f.law == law)
    }
}

/// Parameters for a law-suite run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LawConfig {
    pub seed: u64,
    /// Random tuples per law.
    pub budget: usize,
    /// Number of enumerated elements whose full tuple product is swept.
    pub sweep: usize,
}

impl LawConfig {
    pub const DEFAULT_SWEEP: usize = 6;

    pub fn new(seed: u64, budget: usize) -> Self {
        LawConfig { seed, budget, sweep: Self::DEFAULT_SWEEP }
    }

    pub fn with_sweep(mut self, sweep: usize) -> Self {
        self.sweep = sweep;
        self
    }
}

fn tuples<T: Clone>(elems: &[T], arity: usize) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                elems.iter().map(move |e| {
                    let mut p = prefix.clone();
                    p.push(e.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// `checkLaws` with the default sweep.
pub fn check_laws<T: Clone + 'static>(
    inst: &Structure<T>,
    seed: u64,
    budget: usize,
) -> Result<LawReport<T>, StructureError> {
    check_laws_with(inst, LawConfig::new(seed, budget))
}

/// Runs the kind's law catalogue on `budget` sampled tuples per law plus an
/// exhaustive sweep over the first `sweep` enumerated elements. A zero budget
/// runs nothing.
pub fn check_laws_with<T: Clone + 'static>(
    inst: &Structure<T>,
    cfg: LawConfig,
) -> Result<LawReport<T>, StructureError> {
    inst.validate()?;
    let mut report = LawReport { structure: inst.name.to_string(), kind: inst.kind, cases: 0, failures: Vec::new() };
    if cfg.budget == 0 {
        return Ok(report);
    }
    let swept = if cfg.sweep > 0 { inst.base.enumerate(cfg.sweep) } else { None };
    for (i, law) in law_catalogue::<T>(inst.kind).iter().enumerate() {
        if let Some(elems) = &swept {
            for args in tuples(elems, law.arity) {
                report.cases += 1;
                if !law.holds(inst, &args) {
                    report.failures.push(LawFailure { law: law.name, counterexample: args });
                }
            }
        }
        let mut rng = seeded_rng(cfg.seed, i as u64 + 1);
        for _ in 0..cfg.budget {
            let args = law.draw(inst, &mut rng);
            report.cases += 1;
            if !law.holds(inst, &args) {
                report.failures.push(LawFailure { law: law.name, counterexample: args });
            }
        }
    }
    Ok(report)
}

/// Componentwise product of two group-level structures of the same kind.
pub fn direct_product<A, B>(a: &Structure<A>, b: &Structure<B>) -> Result<Structure<(A, B)>, StructureError>
where
    A: Clone + Send + Sync + 'static,
    B: Clone + Send + Sync + 'static,
{
    if a.kind != b.kind {
        return Err(StructureError::KindMismatch { left: a.kind, right: b.kind });
    }
    if !a.kind.is_group_level() {
        return Err(StructureError::NotGroupLevel(a.kind));
    }
    a.validate()?;
    b.validate()?;

    let (da, db) = (a.base.clone(), b.base.clone());
    let (ga, gb) = (a.base.clone(), b.base.clone());
    let mut base = DSet::new(
        format!("{} × {}", a.base.name, b.base.name),
        move |x: &(A, B), y: &(A, B)| da.eq(&x.0, &y.0) && db.eq(&x.1, &y.1),
        move |r: &mut dyn RngCore| (ga.draw(r), gb.draw(r)),
    );
    if a.base.has_respell() || b.base.has_respell() {
        let (ra, rb) = (a.base.clone(), b.base.clone());
        base = base.with_respell(move |x, r| (ra.respell(&x.0, r), rb.respell(&x.1, r)));
    }
    if a.base.enumerate.is_some() && b.base.enumerate.is_some() {
        let (ea, eb) = (a.base.clone(), b.base.clone());
        base = base.with_enumeration(move |n| {
            let side = (1..).find(|k| k * k >= n).unwrap_or(0);
            let xs = ea.enumerate(side).unwrap_or_default();
            let ys = eb.enumerate(side).unwrap_or_default();
            xs.iter()
                .flat_map(|x| ys.iter().map(move |y| (x.clone(), y.clone())))
                .take(n)
                .collect()
        });
    }

    let (oa, ob) = (a.ops.op.clone().expect("validated"), b.ops.op.clone().expect("validated"));
    let mut ops = Ops::default().with_op(move |x: &(A, B), y: &(A, B)| (oa(&x.0, &y.0), ob(&x.1, &y.1)));
    if let (Some(ea), Some(eb)) = (&a.ops.identity, &b.ops.identity) {
        ops = ops.with_identity((ea.clone(), eb.clone()));
    }
    if let (Some(ia), Some(ib)) = (a.ops.inverse.clone(), b.ops.inverse.clone()) {
        ops = ops.with_inverse(move |x: &(A, B)| (ia(&x.0), ib(&x.1)));
    }
    Ok(Structure::new(format!("{} × {}", a.name, b.name), a.kind, base, ops))
}
