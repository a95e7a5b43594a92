//! Equational provers by normalization, and fuel-bounded iteration.
//!
//! Three free theories are decided: monoids (words), semirings with one
//! (non-commutative polynomials with ℕ coefficients) and commutative
//! semirings (ordinary polynomials with ℕ coefficients). Two terms are equal
//! in the theory iff their normal forms coincide.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, RngCore};
use thiserror::Error;

use crate::structures::{seeded_rng, Decision};
use crate::Nat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    /// Monoid operation `∙`.
    Dot,
    Plus,
    Times,
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Op::Dot => ".",
            Op::Plus => "+",
            Op::Times => "*",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Nat(Nat),
    /// Monoid identity; the multiplicative one in a semiring.
    Unit,
    Apply(Op, Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(name.to_string())
    }

    pub fn nat(n: u64) -> Self {
        Term::Nat(Nat::from(n))
    }

    pub fn apply(op: Op, l: Term, r: Term) -> Self {
        Term::Apply(op, Box::new(l), Box::new(r))
    }

    pub fn dot(l: Term, r: Term) -> Self {
        Term::apply(Op::Dot, l, r)
    }

    pub fn plus(l: Term, r: Term) -> Self {
        Term::apply(Op::Plus, l, r)
    }

    pub fn times(l: Term, r: Term) -> Self {
        Term::apply(Op::Times, l, r)
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Apply(_, l, r) => 1 + l.depth().max(r.depth()),
            _ => 0,
        }
    }

    /// Variable names in first-occurrence order.
    pub fn vars(&self) -> Vec<String> {
        fn go(t: &Term, out: &mut Vec<String>) {
            match t {
                Term::Var(v) if !out.contains(v) => out.push(v.clone()),
                Term::Apply(_, l, r) => {
                    go(l, out);
                    go(r, out);
                }
                _ => {}
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }
}

/// Fully parenthesized except at the root; `e` for the monoid unit.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &Term, root: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                Term::Var(v) => f.write_str(v),
                Term::Nat(n) => write!(f, "{n}"),
                Term::Unit => f.write_str("e"),
                Term::Apply(op, l, r) => {
                    if !root {
                        f.write_str("(")?;
                    }
                    go(l, false, f)?;
                    write!(f, " {op} ")?;
                    go(r, false, f)?;
                    if !root {
                        f.write_str(")")?;
                    }
                    Ok(())
                }
            }
        }
        go(self, true, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theory {
    Monoid,
    SemiringWithOne,
    CommSemiring,
}

impl Theory {
    pub const ALL: [Theory; 3] = [Theory::Monoid, Theory::SemiringWithOne, Theory::CommSemiring];

    pub fn allows(self, op: Op) -> bool {
        match self {
            Theory::Monoid => op == Op::Dot,
            _ => op != Op::Dot,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Theory::Monoid => "monoid",
            Theory::SemiringWithOne => "sr1",
            Theory::CommSemiring => "csr",
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl std::str::FromStr for Theory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "monoid" => Ok(Theory::Monoid),
            "sr1" | "semiring" | "semiring-with-one" => Ok(Theory::SemiringWithOne),
            "csr" | "comm-semiring" => Ok(Theory::CommSemiring),
            other => Err(format!("unknown theory `{other}` (expected monoid, sr1 or csr)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProverError {
    #[error("operator `{op}` is not in the {theory} theory")]
    OperatorOutsideTheory { op: Op, theory: Theory },
    #[error("numeral {0} is not in the monoid theory")]
    NumeralOutsideTheory(Nat),
}

/// A monomial or word paired with its coefficient.
pub type Summand = (Vec<String>, Nat);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NormalForm {
    Word(Vec<String>),
    /// Non-commutative: words with coefficients, sorted.
    Words(Vec<Summand>),
    /// Commutative: sorted monomials with coefficients, sorted.
    Monomials(Vec<Summand>),
}

impl NormalForm {
    /// Re-embeds the normal form as a term of the same theory.
    pub fn to_term(&self) -> Term {
        fn product(vars: &[String], op: Op) -> Option<Term> {
            vars.iter().map(|v| Term::Var(v.clone())).reduce(|a, b| Term::apply(op, a, b))
        }
        match self {
            NormalForm::Word(w) => product(w, Op::Dot).unwrap_or(Term::Unit),
            NormalForm::Words(s) | NormalForm::Monomials(s) => s
                .iter()
                .map(|(m, c)| match product(m, Op::Times) {
                    None => Term::Nat(c.clone()),
                    Some(t) if c.is_one() => t,
                    Some(t) => Term::times(Term::Nat(c.clone()), t),
                })
                .reduce(Term::plus)
                .unwrap_or(Term::nat(0)),
        }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalForm::Word(w) if w.is_empty() => f.write_str("e"),
            NormalForm::Word(w) => f.write_str(&w.join(" . ")),
            NormalForm::Words(s) | NormalForm::Monomials(s) if s.is_empty() => f.write_str("0"),
            NormalForm::Words(s) | NormalForm::Monomials(s) => {
                let parts: Vec<String> = s
                    .iter()
                    .map(|(m, c)| match (m.is_empty(), c.is_one()) {
                        (true, _) => c.to_string(),
                        (false, true) => m.join("*"),
                        (false, false) => format!("{c}*{}", m.join("*")),
                    })
                    .collect();
                f.write_str(&parts.join(" + "))
            }
        }
    }
}

fn check_theory(theory: Theory, t: &Term) -> Result<(), ProverError> {
    match t {
        Term::Nat(n) if theory == Theory::Monoid => Err(ProverError::NumeralOutsideTheory(n.clone())),
        Term::Apply(op, l, r) => {
            if !theory.allows(*op) {
                return Err(ProverError::OperatorOutsideTheory { op: *op, theory });
            }
            check_theory(theory, l)?;
            check_theory(theory, r)
        }
        _ => Ok(()),
    }
}

type Poly = BTreeMap<Vec<String>, Nat>;

fn poly_of(t: &Term, commutative: bool) -> Poly {
    match t {
        Term::Var(v) => Poly::from([(vec![v.clone()], Nat::one())]),
        Term::Nat(n) if n.is_zero() => Poly::new(),
        Term::Nat(n) => Poly::from([(Vec::new(), n.clone())]),
        Term::Unit => Poly::from([(Vec::new(), Nat::one())]),
        Term::Apply(Op::Plus, l, r) => {
            let mut p = poly_of(l, commutative);
            for (m, c) in poly_of(r, commutative) {
                *p.entry(m).or_insert_with(Nat::zero) += c;
            }
            p
        }
        Term::Apply(_, l, r) => {
            let (p, q) = (poly_of(l, commutative), poly_of(r, commutative));
            let mut out = Poly::new();
            for (m1, c1) in &p {
                for (m2, c2) in &q {
                    let mut m: Vec<String> = m1.iter().chain(m2).cloned().collect();
                    if commutative {
                        m.sort();
                    }
                    *out.entry(m).or_insert_with(Nat::zero) += c1 * c2;
                }
            }
            out
        }
    }
}

fn word_of(t: &Term, out: &mut Vec<String>) {
    match t {
        Term::Var(v) => out.push(v.clone()),
        Term::Apply(_, l, r) => {
            word_of(l, out);
            word_of(r, out);
        }
        _ => {}
    }
}

pub fn normalize(theory: Theory, t: &Term) -> Result<NormalForm, ProverError> {
    check_theory(theory, t)?;
    if theory == Theory::Monoid {
        let mut w = Vec::new();
        word_of(t, &mut w);
        return Ok(NormalForm::Word(w));
    }
    let commutative = theory == Theory::CommSemiring;
    let mut summands: Vec<Summand> = poly_of(t, commutative).into_iter().filter(|(_, c)| !c.is_zero()).collect();
    // Degree first, then lexicographic.
    summands.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(if commutative { NormalForm::Monomials(summands) } else { NormalForm::Words(summands) })
}

/// `Yes` carries both (identical) normal forms, `No` the differing pair.
pub type EqVerdict = Decision<(NormalForm, NormalForm), (NormalForm, NormalForm)>;

pub fn prove_eq(theory: Theory, lhs: &Term, rhs: &Term) -> Result<EqVerdict, ProverError> {
    let (a, b) = (normalize(theory, lhs)?, normalize(theory, rhs)?);
    Ok(if a == b { Decision::Yes((a, b)) } else { Decision::No((a, b)) })
}

// Evaluation into concrete models, used to validate verdicts.

pub fn eval_nat(t: &Term, env: &HashMap<String, Nat>) -> Nat {
    match t {
        Term::Var(v) => env.get(v).cloned().unwrap_or_default(),
        Term::Nat(n) => n.clone(),
        Term::Unit => Nat::one(),
        Term::Apply(Op::Plus, l, r) => eval_nat(l, env) + eval_nat(r, env),
        Term::Apply(_, l, r) => eval_nat(l, env) * eval_nat(r, env),
    }
}

/// Evaluation in the free word monoid over strings.
pub fn eval_word(t: &Term, env: &HashMap<String, String>) -> String {
    match t {
        Term::Var(v) => env.get(v).cloned().unwrap_or_default(),
        Term::Apply(_, l, r) => eval_word(l, env) + &eval_word(r, env),
        _ => String::new(),
    }
}

/// Square matrix over ℕ, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatMatrix {
    n: usize,
    cells: Vec<Nat>,
}

impl NatMatrix {
    pub fn new(n: usize, cells: Vec<Nat>) -> Self {
        assert_eq!(cells.len(), n * n);
        NatMatrix { n, cells }
    }

    pub fn scalar(n: usize, c: &Nat) -> Self {
        let mut cells = vec![Nat::zero(); n * n];
        for i in 0..n {
            cells[i * n + i] = c.clone();
        }
        NatMatrix { n, cells }
    }

    pub fn random(n: usize, max_entry: u32, rng: &mut dyn RngCore) -> Self {
        let cells = (0..n * n).map(|_| Nat::from(rng.gen_range(0..=max_entry))).collect();
        NatMatrix { n, cells }
    }

    fn add(&self, o: &Self) -> Self {
        let cells = self.cells.iter().zip(&o.cells).map(|(a, b)| a + b).collect();
        NatMatrix { n: self.n, cells }
    }

    fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut cells = vec![Nat::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.cells[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    cells[i * n + j] += a * &o.cells[k * n + j];
                }
            }
        }
        NatMatrix { n, cells }
    }
}

/// `[[a, b], [c, d]]`.
impl fmt::Display for NatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .cells
            .chunks(self.n)
            .map(|r| format!("[{}]", r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Evaluation in the non-commutative semiring of `n×n` ℕ-matrices.
pub fn eval_matrix(t: &Term, n: usize, env: &HashMap<String, NatMatrix>) -> NatMatrix {
    match t {
        Term::Var(v) => env.get(v).cloned().unwrap_or_else(|| NatMatrix::scalar(n, &Nat::zero())),
        Term::Nat(c) => NatMatrix::scalar(n, c),
        Term::Unit => NatMatrix::scalar(n, &Nat::one()),
        Term::Apply(Op::Plus, l, r) => eval_matrix(l, n, env).add(&eval_matrix(r, n, env)),
        Term::Apply(_, l, r) => eval_matrix(l, n, env).mul(&eval_matrix(r, n, env)),
    }
}

/// Assignment on which two terms evaluate differently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    Words(HashMap<String, String>),
    Nats(HashMap<String, Nat>),
    Matrices(HashMap<String, NatMatrix>),
}

fn joint_vars(lhs: &Term, rhs: &Term) -> Vec<String> {
    let mut vs = lhs.vars();
    for v in rhs.vars() {
        if !vs.contains(&v) {
            vs.push(v);
        }
    }
    vs
}

/// Searches small models for an assignment separating `lhs` and `rhs`.
///
/// Monoid: each variable is sent to its own one-letter word. Commutative
/// semiring: all ℕ assignments with values ≤ 3. Semiring with one: random
/// 2×2 then 3×3 matrices with entries ≤ 3.
pub fn find_refutation(theory: Theory, lhs: &Term, rhs: &Term, seed: u64) -> Option<Refutation> {
    let vars = joint_vars(lhs, rhs);
    match theory {
        Theory::Monoid => {
            let env: HashMap<String, String> = vars.iter().enumerate().map(|(i, v)| (v.clone(), letter(i))).collect();
            (eval_word(lhs, &env) != eval_word(rhs, &env)).then_some(Refutation::Words(env))
        }
        Theory::CommSemiring => {
            let k = vars.len() as u32;
            (0..4u64.pow(k)).find_map(|code| {
                let env: HashMap<String, Nat> =
                    vars.iter().enumerate().map(|(i, v)| (v.clone(), Nat::from((code >> (2 * i)) & 3))).collect();
                (eval_nat(lhs, &env) != eval_nat(rhs, &env)).then_some(Refutation::Nats(env))
            })
        }
        Theory::SemiringWithOne => {
            let mut rng = seeded_rng(seed, 0);
            for n in [2usize, 3] {
                for _ in 0..2000 {
                    let env: HashMap<String, NatMatrix> =
                        vars.iter().map(|v| (v.clone(), NatMatrix::random(n, 3, &mut rng))).collect();
                    if eval_matrix(lhs, n, &env) != eval_matrix(rhs, n, &env) {
                        return Some(Refutation::Matrices(env));
                    }
                }
            }
            None
        }
    }
}

fn letter(i: usize) -> String {
    char::from_u32('a' as u32 + (i % 26) as u32).unwrap().to_string().repeat(i / 26 + 1)
}

/// Re-evaluates a refutation; true when the terms really differ under it.
pub fn refutation_holds(lhs: &Term, rhs: &Term, r: &Refutation) -> bool {
    match r {
        Refutation::Words(env) => eval_word(lhs, env) != eval_word(rhs, env),
        Refutation::Nats(env) => eval_nat(lhs, env) != eval_nat(rhs, env),
        Refutation::Matrices(env) => {
            let n = env.values().next().map_or(2, |m| m.n);
            eval_matrix(lhs, n, env) != eval_matrix(rhs, n, env)
        }
    }
}

/// Evaluates both sides under `trials` random assignments of the theory's
/// model (words for monoids, ℕ otherwise) and reports whether all agree.
pub fn agrees_on_samples(theory: Theory, lhs: &Term, rhs: &Term, seed: u64, trials: usize) -> bool {
    let vars = joint_vars(lhs, rhs);
    let mut rng = seeded_rng(seed, 1);
    (0..trials).all(|_| match theory {
        Theory::Monoid => {
            let env: HashMap<String, String> = vars
                .iter()
                .map(|v| {
                    let len = rng.gen_range(0..4);
                    (v.clone(), (0..len).map(|_| if rng.gen_bool(0.5) { 'a' } else { 'b' }).collect())
                })
                .collect();
            eval_word(lhs, &env) == eval_word(rhs, &env)
        }
        _ => {
            let env: HashMap<String, Nat> = vars.iter().map(|v| (v.clone(), Nat::from(rng.gen_range(0u32..1000)))).collect();
            eval_nat(lhs, &env) == eval_nat(rhs, &env)
        }
    })
}

// Fuel-bounded iteration.

/// `Finite` counts down and stops the computation at zero.
/// `PracticallyInfinite` stands for an astronomically large bound such as
/// `2^(10^100)`: it never runs out and only records the steps taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fuel {
    Finite(u64),
    PracticallyInfinite { steps: u64 },
}

impl Fuel {
    pub fn practically_infinite() -> Self {
        Fuel::PracticallyInfinite { steps: 0 }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Fuel::Finite(0))
    }

    /// Consumes one unit; `None` when exhausted.
    pub fn burn(self) -> Option<Fuel> {
        match self {
            Fuel::Finite(0) => None,
            Fuel::Finite(n) => Some(Fuel::Finite(n - 1)),
            Fuel::PracticallyInfinite { steps } => Some(Fuel::PracticallyInfinite { steps: steps + 1 }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FuelOutcome<S> {
    Completed { result: S, fuel_left: Fuel },
    Exhausted { state: S },
}

impl<S> FuelOutcome<S> {
    pub fn map<R>(self, f: impl FnOnce(S) -> R) -> FuelOutcome<R> {
        match self {
            FuelOutcome::Completed { result, fuel_left } => FuelOutcome::Completed { result: f(result), fuel_left },
            FuelOutcome::Exhausted { state } => FuelOutcome::Exhausted { state: f(state) },
        }
    }
}

pub fn with_fuel<S>(mut fuel: Fuel, halted: impl Fn(&S) -> bool, mut step: impl FnMut(S) -> S, s0: S) -> FuelOutcome<S> {
    let mut s = s0;
    loop {
        if halted(&s) {
            return FuelOutcome::Completed { result: s, fuel_left: fuel };
        }
        match fuel.burn() {
            None => return FuelOutcome::Exhausted { state: s },
            Some(f) => {
                fuel = f;
                s = step(s);
            }
        }
    }
}

/// Subtractive gcd: replace the larger argument by the difference.
pub fn subtraction_gcd(a: BigUint, b: BigUint, fuel: Fuel) -> FuelOutcome<BigUint> {
    with_fuel(
        fuel,
        |(a, b): &(BigUint, BigUint)| a.is_zero() || b.is_zero() || a == b,
        |(a, b)| if a > b { (&a - &b, b) } else { (a.clone(), b - a) },
        (a, b),
    )
    .map(|(a, b)| if a.is_zero() { b } else { a })
}
