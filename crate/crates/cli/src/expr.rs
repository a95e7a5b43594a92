//! Expression grammar shared by the subcommands.
//!
//! ```text
//! expr   := prod (('+' | '-') prod)*
//! prod   := unary (('*' | '/' | '.') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' NAT)?
//! atom   := NAT | IDENT | '(' expr ')'
//! ```
//!
//! Which tokens are legal depends on the [`Mode`]: `/` only in `frac`,
//! `x` and `^` only in `poly`, `.` and free identifiers only in `term`,
//! unary and binary minus nowhere in `term`. In `term` mode `e` is the unit.

use std::fmt;

use certalg::eqprover::{Op, Term, Theory};
use certalg::euclid::{residue_inverse, Residue};
use certalg::fractions::FractionError;
use certalg::{Fraction, Int, IntPoly, Nat, Rational, Structure};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Int,
    Frac,
    Poly,
    Term,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Int => "int",
            Mode::Frac => "frac",
            Mode::Poly => "poly",
            Mode::Term => "term",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Dot,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Dot => ".",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Nat),
    Var(String),
    Unit,
    Neg(Box<Expr>),
    Pow(Box<Expr>, u64),
    Bin(BinOp, Box<Expr>, Box<Expr>),
}

/// Fully parenthesized rendering of the parse tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Var(v) => f.write_str(v),
            Expr::Unit => f.write_str("e"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Pow(e, k) => write!(f, "({e}^{k})"),
            Expr::Bin(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at column {column}: expected {}, found {found}", expected.join(" or "))]
pub struct SyntaxError {
    /// 1-based character column.
    pub column: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Nat),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Num(s.parse().expect("digits")), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if "+-*/.^()".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(SyntaxError {
                column: i + 1,
                expected: vec!["number", "identifier", "operator", "parenthesis"],
                found: format!("`{c}`"),
            });
        }
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    mode: Mode,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn error(&self, expected: Vec<&'static str>) -> SyntaxError {
        let (tok, pos) = &self.toks[self.at];
        SyntaxError { column: pos + 1, expected, found: tok.to_string() }
    }

    fn additive_ops(&self) -> &'static [char] {
        if self.mode == Mode::Term {
            &['+']
        } else {
            &['+', '-']
        }
    }

    fn multiplicative_ops(&self) -> &'static [char] {
        match self.mode {
            Mode::Frac => &['*', '/'],
            Mode::Term => &['*', '.'],
            _ => &['*'],
        }
    }

    fn operand_start(&self) -> Vec<&'static str> {
        let mut v = vec!["number"];
        match self.mode {
            Mode::Poly => v.push("`x`"),
            Mode::Term => v.push("identifier"),
            _ => {}
        }
        v.push("`(`");
        if self.mode != Mode::Term {
            v.push("`-`");
        }
        v
    }

    fn after_operand(&self) -> Vec<&'static str> {
        let mut v: Vec<&'static str> = Vec::new();
        for c in self.additive_ops().iter().chain(self.multiplicative_ops()) {
            v.push(match c {
                '+' => "`+`",
                '-' => "`-`",
                '*' => "`*`",
                '/' => "`/`",
                _ => "`.`",
            });
        }
        if self.mode == Mode::Poly {
            v.push("`^`");
        }
        if self.depth > 0 {
            v.push("`)`");
        } else {
            v.push("end of input");
        }
        v
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.prod()?;
        while let Tok::Sym(c) = *self.peek() {
            if !self.additive_ops().contains(&c) {
                break;
            }
            self.at += 1;
            let rhs = self.prod()?;
            let op = if c == '+' { BinOp::Add } else { BinOp::Sub };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn prod(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        while let Tok::Sym(c) = *self.peek() {
            if !self.multiplicative_ops().contains(&c) {
                break;
            }
            self.at += 1;
            let rhs = self.unary()?;
            let op = match c {
                '*' => BinOp::Mul,
                '/' => BinOp::Div,
                _ => BinOp::Dot,
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        if self.mode != Mode::Term && *self.peek() == Tok::Sym('-') {
            self.at += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, SyntaxError> {
        let base = self.atom()?;
        if self.mode == Mode::Poly && *self.peek() == Tok::Sym('^') {
            self.at += 1;
            let Tok::Num(n) = self.peek().clone() else {
                return Err(self.error(vec!["exponent"]));
            };
            let Ok(k) = u64::try_from(&n) else {
                return Err(self.error(vec!["exponent below 2^64"]));
            };
            self.at += 1;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.at += 1;
                Ok(Expr::Num(n))
            }
            Tok::Ident(s) if self.mode == Mode::Term => {
                self.at += 1;
                Ok(if s == "e" { Expr::Unit } else { Expr::Var(s) })
            }
            Tok::Ident(s) if self.mode == Mode::Poly && s == "x" => {
                self.at += 1;
                Ok(Expr::Var(s))
            }
            Tok::Sym('(') => {
                self.at += 1;
                self.depth += 1;
                let e = self.expr()?;
                if *self.peek() != Tok::Sym(')') {
                    return Err(self.error(self.after_operand()));
                }
                self.depth -= 1;
                self.at += 1;
                Ok(e)
            }
            _ => Err(self.error(self.operand_start())),
        }
    }
}

pub fn parse_expr(text: &str, mode: Mode) -> Result<Expr, SyntaxError> {
    let mut p = Parser { toks: tokenize(text)?, at: 0, mode, depth: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(p.after_operand()));
    }
    Ok(e)
}

/// Splits `lhs = rhs` and parses both sides as terms.
pub fn parse_equation(text: &str) -> Result<(Expr, Expr), SyntaxError> {
    let parts: Vec<&str> = text.split('=').collect();
    if parts.len() != 2 {
        let column = match parts.len() {
            1 => text.chars().count() + 1,
            _ => parts[0].chars().count() + parts[1].chars().count() + 2,
        };
        let found = if parts.len() == 1 { "end of input".to_string() } else { "`=`".to_string() };
        return Err(SyntaxError { column, expected: vec!["exactly one `=`"], found });
    }
    let lhs = parse_expr(parts[0], Mode::Term)?;
    let offset = parts[0].chars().count() + 1;
    let rhs = parse_expr(parts[1], Mode::Term).map_err(|mut e| {
        e.column += offset;
        e
    })?;
    Ok((lhs, rhs))
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{value} is not invertible modulo {modulus} (gcd {gcd})")]
    NotInvertible { value: Int, modulus: Int, gcd: Int },
    #[error("expression is not valid in {0} mode")]
    WrongMode(Mode),
}

impl From<FractionError> for EvalError {
    fn from(_: FractionError) -> Self {
        EvalError::DivisionByZero
    }
}

pub fn eval_int(e: &Expr) -> Result<Int, EvalError> {
    Ok(match e {
        Expr::Num(n) => Int::from(n.clone()),
        Expr::Neg(a) => -eval_int(a)?,
        Expr::Bin(BinOp::Add, a, b) => eval_int(a)? + eval_int(b)?,
        Expr::Bin(BinOp::Sub, a, b) => eval_int(a)? - eval_int(b)?,
        Expr::Bin(BinOp::Mul, a, b) => eval_int(a)? * eval_int(b)?,
        _ => return Err(EvalError::WrongMode(Mode::Int)),
    })
}

pub fn eval_frac(e: &Expr) -> Result<Rational, EvalError> {
    Ok(match e {
        Expr::Num(n) => Fraction::from_int(Int::from(n.clone())),
        Expr::Neg(a) => Fraction::neg(&eval_frac(a)?),
        Expr::Bin(BinOp::Add, a, b) => eval_frac(a)?.add_optimized(&eval_frac(b)?),
        Expr::Bin(BinOp::Sub, a, b) => Fraction::sub(&eval_frac(a)?, &eval_frac(b)?),
        Expr::Bin(BinOp::Mul, a, b) => Fraction::mul(&eval_frac(a)?, &eval_frac(b)?),
        Expr::Bin(BinOp::Div, a, b) => Fraction::div(&eval_frac(a)?, &eval_frac(b)?)?,
        _ => return Err(EvalError::WrongMode(Mode::Frac)),
    })
}

pub fn eval_poly(e: &Expr, ring: &Structure<Int>) -> Result<IntPoly, EvalError> {
    let wrong = || EvalError::WrongMode(Mode::Poly);
    Ok(match e {
        Expr::Num(n) => IntPoly::new(ring, [(Int::from(n.clone()), 0)]),
        Expr::Var(_) => IntPoly::new(ring, [(Int::one(), 1)]),
        Expr::Neg(a) => eval_poly(a, ring)?.neg(),
        Expr::Pow(a, k) => {
            if let Expr::Var(_) = **a {
                return Ok(IntPoly::new(ring, [(Int::one(), *k)]));
            }
            let base = eval_poly(a, ring)?;
            let mut acc = IntPoly::new(ring, [(Int::one(), 0)]);
            for _ in 0..*k {
                acc = acc.mul(&base).map_err(|_| wrong())?;
            }
            acc
        }
        Expr::Bin(op, a, b) => {
            let (p, q) = (eval_poly(a, ring)?, eval_poly(b, ring)?);
            match op {
                BinOp::Add => p.add(&q),
                BinOp::Sub => p.sub(&q),
                BinOp::Mul => p.mul(&q),
                _ => return Err(wrong()),
            }
            .map_err(|_| wrong())?
        }
        Expr::Unit => return Err(wrong()),
    })
}

/// Evaluates in `ℤ/(b)`; `/` multiplies by an inverse when one exists.
pub fn eval_residue(e: &Expr, ring: &Structure<Residue<Int>>, modulus: &Int) -> Result<Residue<Int>, EvalError> {
    let go = |x: &Expr| eval_residue(x, ring, modulus);
    Ok(match e {
        Expr::Num(n) => Residue::new(Int::from(n.clone()), modulus.clone()),
        Expr::Neg(a) => ring.neg(&go(a)?),
        Expr::Bin(BinOp::Add, a, b) => ring.add(&go(a)?, &go(b)?),
        Expr::Bin(BinOp::Sub, a, b) => ring.add(&go(a)?, &ring.neg(&go(b)?)),
        Expr::Bin(BinOp::Mul, a, b) => ring.mul(&go(a)?, &go(b)?),
        Expr::Bin(BinOp::Div, a, b) => {
            let d = go(b)?;
            let Some(inv) = residue_inverse(&d) else {
                let value = d.canonical();
                if value.is_zero() {
                    return Err(EvalError::DivisionByZero);
                }
                let gcd = certalg::extended_gcd(&value, modulus).g;
                return Err(EvalError::NotInvertible { value, modulus: modulus.abs(), gcd });
            };
            ring.mul(&go(a)?, &inv)
        }
        _ => return Err(EvalError::WrongMode(Mode::Frac)),
    })
}

/// Reads a term; in the monoid theory `*` also denotes the monoid operation.
pub fn to_term(e: &Expr, theory: Theory) -> Result<Term, EvalError> {
    Ok(match e {
        Expr::Num(n) => Term::Nat(n.clone()),
        Expr::Var(v) => Term::Var(v.clone()),
        Expr::Unit => Term::Unit,
        Expr::Bin(op, a, b) => {
            let op = match (op, theory) {
                (BinOp::Add, _) => Op::Plus,
                (BinOp::Mul, Theory::Monoid) | (BinOp::Dot, _) => Op::Dot,
                (BinOp::Mul, _) => Op::Times,
                _ => return Err(EvalError::WrongMode(Mode::Term)),
            };
            Term::apply(op, to_term(a, theory)?, to_term(b, theory)?)
        }
        _ => return Err(EvalError::WrongMode(Mode::Term)),
    })
}
