//! Subcommands, dispatch, and rendering of results.

use std::io::Read;

use certalg::certlists::{sort_certified, verify_sort_result, DecTotalOrder};
use certalg::eqprover::{find_refutation, normalize, prove_eq, Refutation, Theory};
use certalg::euclid::{extended_gcd, is_prime, residue_field_checked, residue_ring, EuclidError, Primality};
use certalg::factorization::{factor, product_of};
use certalg::numbers::{integers_dset, to_bin};
use certalg::{Decision, Int, Nat};
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use serde_json::{json, Map, Value};

use crate::expr::{eval_frac, eval_poly, eval_residue, parse_equation, parse_expr, to_term, EvalError, Mode, SyntaxError};
use crate::registry::{run_laws, run_pow, Instance, InstanceSel, PowMonoid};

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    Usage = 2,
    Syntax = 3,
    DivisionByZero = 4,
    CompositeModulus = 5,
    InvalidModulus = 6,
    LawFailure = 7,
    Refuted = 8,
    Domain = 9,
    OutsideTheory = 10,
}

impl ExitCode {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Parser, Debug)]
#[command(name = "certalg", version, about = "Certified computer-algebra toolkit")]
pub struct Cli {
    /// Emit one flat JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Run the law suite of one instance, or of every shipped instance.
    Laws {
        #[arg(default_value = "all", value_parser = clap::value_parser!(InstanceSel))]
        instance: InstanceSel,
        #[arg(long, env = "CERTALG_SEED", default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        budget: usize,
    },
    /// Factor an integer into primes.
    Factor {
        #[arg(allow_hyphen_values = true)]
        n: Int,
    },
    /// Extended gcd with a Bézout certificate.
    Egcd {
        #[arg(allow_hyphen_values = true)]
        a: Int,
        #[arg(allow_hyphen_values = true)]
        b: Int,
    },
    /// Primality with a divisor witness for composites.
    Isprime {
        #[arg(allow_hyphen_values = true)]
        n: Int,
    },
    /// Evaluate an expression in Z/(b); `/` multiplies by an inverse.
    Residue {
        #[arg(short, long, allow_hyphen_values = true)]
        modulus: Int,
        /// Require Z/(b) to be a field; composite moduli fail with a witness.
        #[arg(long)]
        field: bool,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Evaluate a rational expression to canonical form.
    Frac {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Evaluate a polynomial expression in x over Z.
    Poly {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Certified merge sort of integers; reads stdin when no values are given.
    Sort {
        #[arg(long, value_enum, default_value_t = Order::Asc)]
        order: Order,
        #[arg(allow_hyphen_values = true)]
        values: Vec<Int>,
    },
    /// Binary powering in a monoid.
    Pow {
        #[arg(value_parser = clap::value_parser!(PowMonoid))]
        monoid: PowMonoid,
        base: String,
        exponent: Nat,
    },
    /// Decide an equation in a free theory.
    Prove {
        #[arg(long, value_parser = clap::value_parser!(Theory))]
        theory: Theory,
        equation: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Asc,
    Desc,
    Abs,
}

/// Rendered result of one invocation.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: ExitCode,
    pub text: String,
    pub fields: Map<String, Value>,
}

impl Outcome {
    fn new(command: &str) -> Self {
        let mut fields = Map::new();
        fields.insert("command".into(), json!(command));
        Outcome { code: ExitCode::Ok, text: String::new(), fields }
    }

    fn set(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.into(), v.into());
        self
    }

    fn line(&mut self, s: impl AsRef<str>) -> &mut Self {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
        self
    }

    fn fail(mut self, code: ExitCode, msg: impl Into<String>) -> Self {
        let msg = msg.into();
        self.code = code;
        self.line(format!("error: {msg}"));
        self.set("error", msg);
        self
    }

    fn syntax(self, e: &SyntaxError) -> Self {
        let mut o = self.fail(ExitCode::Syntax, e.to_string());
        o.set("column", e.column as u64).set("expected", e.expected.clone());
        o
    }

    fn eval_error(self, e: &EvalError) -> Self {
        let code = match e {
            EvalError::WrongMode(_) => ExitCode::Syntax,
            _ => ExitCode::DivisionByZero,
        };
        let mut o = self.fail(code, e.to_string());
        if let EvalError::NotInvertible { value, modulus, gcd } = e {
            o.set("witness", format!("{gcd} | {value} and {gcd} | {modulus}"));
        }
        o
    }

    /// The single flat JSON document.
    pub fn to_json(&self) -> String {
        let mut m = self.fields.clone();
        m.insert("exit_code".into(), json!(self.code.code()));
        Value::Object(m).to_string()
    }
}

pub fn run(cmd: &Command) -> Outcome {
    match cmd {
        Command::Laws { instance, seed, budget } => laws(instance, *seed, *budget),
        Command::Factor { n } => factor_cmd(n),
        Command::Egcd { a, b } => egcd(a, b),
        Command::Isprime { n } => isprime(n),
        Command::Residue { modulus, field, expr } => residue(modulus, *field, expr),
        Command::Frac { expr } => frac(expr),
        Command::Poly { expr } => poly(expr),
        Command::Sort { order, values } => {
            if values.is_empty() {
                let mut input = String::new();
                if let Err(e) = std::io::stdin().read_to_string(&mut input) {
                    return Outcome::new("sort").fail(ExitCode::Usage, format!("reading stdin: {e}"));
                }
                sort_text(*order, &input)
            } else {
                sort(*order, values)
            }
        }
        Command::Pow { monoid, base, exponent } => pow(*monoid, base, exponent),
        Command::Prove { theory, equation } => prove(*theory, equation),
    }
}

fn laws(sel: &InstanceSel, seed: u64, budget: usize) -> Outcome {
    let mut o = Outcome::new("laws");
    let instances = sel.0.clone().map_or_else(Instance::defaults, |i| vec![i]);
    o.set("seed", seed).set("budget", budget as u64);
    let mut names = Vec::new();
    let mut failing = Vec::new();
    let mut total_cases = 0usize;
    for inst in &instances {
        let s = run_laws(inst, seed, budget);
        total_cases += s.cases;
        names.push(s.instance.clone());
        o.line(format!("{} {} [{}]: {} cases, {} failures", s.instance, s.structure, s.kind, s.cases, s.failures.len()));
        for (law, cex) in s.failures.iter().take(5) {
            o.line(format!("  {law}: counterexample {cex}"));
        }
        if !s.failures.is_empty() {
            o.line(format!("  counterexamples re-checked: {}", s.rechecked));
            let (law, cex) = &s.failures[0];
            failing.push(format!("{}: {law} {cex}", s.instance));
        }
    }
    o.set("instances", names).set("cases", total_cases as u64).set("failures", failing.clone());
    if !failing.is_empty() {
        o.code = ExitCode::LawFailure;
    }
    o
}

fn factor_cmd(n: &Int) -> Outcome {
    let mut o = Outcome::new("factor");
    o.set("input", n.to_string());
    match factor(n) {
        Err(e) => o.fail(ExitCode::Domain, format!("cannot factor {n}: {e}")),
        Ok(f) => {
            let rendered = f.render();
            let ok = product_of(&f) == *n;
            o.line(format!("{n} = {rendered}"));
            o.set("factorization", rendered).set("verified", ok);
            let primes: Vec<String> = f.factors.iter().map(|(p, _)| p.to_string()).collect();
            let exps: Vec<u32> = f.factors.iter().map(|(_, e)| *e).collect();
            o.set("unit", f.unit.to_string()).set("primes", primes).set("exponents", exps);
            o
        }
    }
}

fn egcd(a: &Int, b: &Int) -> Outcome {
    let mut o = Outcome::new("egcd");
    let c = extended_gcd(a, b);
    o.line(format!("g={} u={} v={}", c.g, c.u, c.v));
    o.line(format!("check: {}*{} + {}*{} = {}", c.u, a, c.v, b, c.g));
    o.set("a", a.to_string()).set("b", b.to_string());
    o.set("g", c.g.to_string()).set("u", c.u.to_string()).set("v", c.v.to_string());
    o.set("qa", c.qa.to_string()).set("qb", c.qb.to_string()).set("verified", c.verify());
    o
}

fn isprime(n: &Int) -> Outcome {
    let mut o = Outcome::new("isprime");
    o.set("input", n.to_string());
    match is_prime(n) {
        Err(e) => o.fail(ExitCode::Domain, e.to_string()),
        Ok(cert) => {
            o.set("verified", cert.verify());
            match &cert.verdict {
                Primality::Prime => {
                    o.line(format!("{n} is prime"));
                    o.set("prime", true);
                }
                Primality::Composite(w) => {
                    o.line(format!("{n} is composite: {} | {} (quotient {})", w.divisor, w.dividend, w.quotient));
                    o.set("prime", false).set("witness", format!("{} | {}", w.divisor, w.dividend));
                    o.set("quotient", w.quotient.to_string());
                }
            }
            o
        }
    }
}

fn residue(b: &Int, field: bool, text: &str) -> Outcome {
    let mut o = Outcome::new("residue");
    o.set("modulus", b.to_string()).set("field", field).set("input", text);
    let ring = if field { residue_field_checked(b) } else { residue_ring(b) };
    let ring = match ring {
        Ok(r) => r,
        Err(EuclidError::Composite(w)) => {
            let mut o = o.fail(ExitCode::CompositeModulus, format!("modulus {b} is composite, witness {} | {}", w.divisor, w.dividend));
            o.set("witness", format!("{} | {}", w.divisor, w.dividend)).set("quotient", w.quotient.to_string());
            return o;
        }
        Err(e) => return o.fail(ExitCode::InvalidModulus, format!("invalid modulus {b}: {e}")),
    };
    let e = match parse_expr(text, Mode::Frac) {
        Ok(e) => e,
        Err(err) => return o.syntax(&err),
    };
    match eval_residue(&e, &ring, b) {
        Err(err) => o.eval_error(&err),
        Ok(r) => {
            let v = r.canonical();
            o.line(format!("{v} mod {}", b.abs()));
            o.set("value", v.to_string()).set("structure", ring.name().to_string());
            o
        }
    }
}

fn frac(text: &str) -> Outcome {
    let mut o = Outcome::new("frac");
    o.set("input", text);
    let e = match parse_expr(text, Mode::Frac) {
        Ok(e) => e,
        Err(err) => return o.syntax(&err),
    };
    match eval_frac(&e) {
        Err(err) => o.eval_error(&err),
        Ok(q) => {
            o.line(q.to_string());
            o.set("value", q.to_string()).set("num", q.num().to_string()).set("den", q.den().to_string());
            o.set("canonical", q.is_canonical());
            o
        }
    }
}

fn poly(text: &str) -> Outcome {
    let mut o = Outcome::new("poly");
    o.set("input", text);
    let e = match parse_expr(text, Mode::Poly) {
        Ok(e) => e,
        Err(err) => return o.syntax(&err),
    };
    match eval_poly(&e, &certalg::euclid::integers()) {
        Err(err) => o.eval_error(&err),
        Ok(p) => {
            o.line(p.to_string());
            let terms: Vec<Value> = p.terms().iter().map(|(c, e)| json!([c.to_string(), e])).collect();
            o.set("value", p.to_string()).set("degree", p.degree().to_string()).set("terms", terms);
            o
        }
    }
}

fn order_of(order: Order) -> DecTotalOrder<Int> {
    let base = integers_dset();
    match order {
        Order::Asc => DecTotalOrder::natural(base),
        Order::Desc => DecTotalOrder::new(base, |x: &Int, y: &Int| y <= x),
        Order::Abs => DecTotalOrder::new(base, |x: &Int, y: &Int| x.abs() <= y.abs()),
    }
}

fn sort_text(order: Order, input: &str) -> Outcome {
    let mut values = Vec::new();
    for tok in input.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
        match tok.parse::<Int>() {
            Ok(v) => values.push(v),
            Err(_) => {
                return Outcome::new("sort").fail(ExitCode::Syntax, format!("`{tok}` is not an integer"));
            }
        }
    }
    sort(order, &values)
}

fn sort(order: Order, values: &[Int]) -> Outcome {
    let mut o = Outcome::new("sort");
    let dto = order_of(order);
    let r = sort_certified(&dto, values);
    let ok = verify_sort_result(&dto, values, &r);
    let show = |v: &[Int]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    o.line(show(&r.ys).join(" "));
    o.line(format!("perm: {:?}", r.perm));
    o.line(format!("certificate verified: {ok}"));
    o.set("order", format!("{order:?}").to_lowercase()).set("input", show(values));
    o.set("output", show(&r.ys)).set("perm", r.perm.clone()).set("verified", ok);
    o
}

fn pow(m: PowMonoid, base: &str, n: &Nat) -> Outcome {
    let mut o = Outcome::new("pow");
    o.set("monoid", m.to_string()).set("base", base).set("exponent", n.to_string());
    o.set("exponent_bits", to_bin(n).to_string());
    match run_pow(m, base, n) {
        Err(e) => o.fail(ExitCode::Usage, e),
        Ok((v, trace)) => {
            o.line(format!("{base}^{n} = {v} in {m}"));
            o.line(format!("squarings {}, multiplications {}", trace.squarings, trace.multiplications));
            o.set("value", v).set("squarings", trace.squarings as u64).set("multiplications", trace.multiplications as u64);
            o
        }
    }
}

fn render_refutation(r: &Refutation) -> String {
    let mut parts: Vec<String> = match r {
        Refutation::Words(env) => env.iter().map(|(k, v)| format!("{k}=\"{v}\"")).collect(),
        Refutation::Nats(env) => env.iter().map(|(k, v)| format!("{k}={v}")).collect(),
        Refutation::Matrices(env) => env.iter().map(|(k, v)| format!("{k}={v}")).collect(),
    };
    parts.sort();
    parts.join(", ")
}

fn prove(theory: Theory, text: &str) -> Outcome {
    let mut o = Outcome::new("prove");
    o.set("theory", theory.to_string()).set("equation", text);
    let (l, r) = match parse_equation(text) {
        Ok(p) => p,
        Err(err) => return o.syntax(&err),
    };
    let terms = to_term(&l, theory).and_then(|l| Ok((l, to_term(&r, theory)?)));
    let (lt, rt) = match terms {
        Ok(p) => p,
        Err(err) => return o.eval_error(&err),
    };
    let verdict = match prove_eq(theory, &lt, &rt) {
        Ok(v) => v,
        Err(e) => return o.fail(ExitCode::OutsideTheory, e.to_string()),
    };
    match verdict {
        Decision::Yes((a, _)) => {
            o.line(format!("proved in {theory}: both sides normalize to {a}"));
            o.set("verdict", "yes").set("normal_form", a.to_string());
        }
        Decision::No((a, b)) => {
            o.code = ExitCode::Refuted;
            o.line(format!("refuted in {theory}: {a} differs from {b}"));
            o.set("verdict", "no").set("lhs_normal_form", a.to_string()).set("rhs_normal_form", b.to_string());
            if let Some(ass) = find_refutation(theory, &lt, &rt, 1) {
                let s = render_refutation(&ass);
                o.line(format!("separating assignment: {s}"));
                o.set("assignment", s);
            }
        }
    }
    debug_assert!(normalize(theory, &lt).is_ok());
    o
}
