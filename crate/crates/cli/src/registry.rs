//! Named structure instances for `laws` and `pow`.

use std::fmt;
use std::str::FromStr;

use certalg::euclid::{integers, integers_gcd_ring, residue_field_checked, residue_ring};
use certalg::factorization::{integers_ufr, nat_positive_mul};
use certalg::fractions::rationals;
use certalg::numbers::{bin_monoid, int_additive, int_mul, nat_add, nat_monus, nat_mul, power_traced, to_bin, PowerTrace};
use certalg::polynomials::poly_additive_group;
use certalg::structures::{check_laws, Kind, LawReport, Structure};
use certalg::{Bin, Int, Nat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    NatAdd,
    NatMul,
    NatPosMul,
    NatMonus,
    Int,
    IntAdd,
    IntMul,
    IntGcd,
    IntUfr,
    BinAdd,
    Rat,
    PolyInt,
    PolyZ7,
    Zmod(u64),
    Gf(u64),
}

impl Instance {
    /// What `laws all` runs. The truncated-subtraction semigroup is a
    /// deliberate counterexample and is only run on request.
    pub fn defaults() -> Vec<Instance> {
        use Instance::*;
        vec![NatAdd, NatMul, NatPosMul, Int, IntAdd, IntMul, IntGcd, IntUfr, BinAdd, Rat, PolyInt, PolyZ7, Zmod(6), Zmod(12), Gf(7), Gf(97)]
    }

    pub const NAMES: &'static str =
        "all, nat-add, nat-mul, nat-pos-mul, nat-monus, int, int-add, int-mul, int-gcd, int-ufr, bin-add, rat, poly-int, poly-z7, zmod:B, gf:P";
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Instance::*;
        match self {
            NatAdd => f.write_str("nat-add"),
            NatMul => f.write_str("nat-mul"),
            NatPosMul => f.write_str("nat-pos-mul"),
            NatMonus => f.write_str("nat-monus"),
            Int => f.write_str("int"),
            IntAdd => f.write_str("int-add"),
            IntMul => f.write_str("int-mul"),
            IntGcd => f.write_str("int-gcd"),
            IntUfr => f.write_str("int-ufr"),
            BinAdd => f.write_str("bin-add"),
            Rat => f.write_str("rat"),
            PolyInt => f.write_str("poly-int"),
            PolyZ7 => f.write_str("poly-z7"),
            Zmod(b) => write!(f, "zmod:{b}"),
            Gf(p) => write!(f, "gf:{p}"),
        }
    }
}

/// `None` stands for `all`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceSel(pub Option<Instance>);

impl FromStr for InstanceSel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use Instance::*;
        let modulus = |rest: &str, prime: bool| -> Result<u64, String> {
            let b: u64 = rest.parse().map_err(|_| format!("bad modulus in `{s}`"))?;
            if b < 2 {
                return Err(format!("modulus in `{s}` must be at least 2"));
            }
            if prime && !certalg::is_prime(&b).map(|c| c.is_prime()).unwrap_or(false) {
                return Err(format!("`{s}`: {b} is not prime"));
            }
            Ok(b)
        };
        let inst = match s {
            "all" => return Ok(InstanceSel(None)),
            "nat-add" => NatAdd,
            "nat-mul" => NatMul,
            "nat-pos-mul" => NatPosMul,
            "nat-monus" => NatMonus,
            "int" => Int,
            "int-add" => IntAdd,
            "int-mul" => IntMul,
            "int-gcd" => IntGcd,
            "int-ufr" => IntUfr,
            "bin-add" => BinAdd,
            "rat" => Rat,
            "poly-int" => PolyInt,
            "poly-z7" => PolyZ7,
            _ => {
                if let Some(rest) = s.strip_prefix("zmod:") {
                    Zmod(modulus(rest, false)?)
                } else if let Some(rest) = s.strip_prefix("gf:") {
                    Gf(modulus(rest, true)?)
                } else {
                    return Err(format!("unknown instance `{s}` (known: {})", Instance::NAMES));
                }
            }
        };
        Ok(InstanceSel(Some(inst)))
    }
}

/// Law-suite outcome with counterexamples rendered as text.
#[derive(Clone, Debug)]
pub struct LawSummary {
    pub instance: String,
    pub structure: String,
    pub kind: Kind,
    pub cases: usize,
    pub failures: Vec<(String, String)>,
    /// Every stored counterexample still fails when re-evaluated.
    pub rechecked: bool,
}

fn summarize<T: Clone + fmt::Debug + 'static>(inst: &Instance, s: &Structure<T>, seed: u64, budget: usize) -> LawSummary {
    let report: LawReport<T> = check_laws(s, seed, budget).expect("registered instances are complete");
    LawSummary {
        instance: inst.to_string(),
        structure: s.name().to_string(),
        kind: s.kind(),
        cases: report.cases,
        failures: report.failures.iter().map(|f| (f.law.to_string(), format!("{:?}", f.counterexample))).collect(),
        rechecked: report.recheck(s),
    }
}

pub fn run_laws(inst: &Instance, seed: u64, budget: usize) -> LawSummary {
    use Instance::*;
    let i = |b: u64| certalg::Int::from(b);
    match inst {
        NatAdd => summarize(inst, &nat_add(), seed, budget),
        NatMul => summarize(inst, &nat_mul(), seed, budget),
        NatPosMul => summarize(inst, &nat_positive_mul(), seed, budget),
        NatMonus => summarize(inst, &nat_monus(), seed, budget),
        Int => summarize(inst, &integers(), seed, budget),
        IntAdd => summarize(inst, &int_additive(), seed, budget),
        IntMul => summarize(inst, &int_mul(), seed, budget),
        IntGcd => summarize(inst, &integers_gcd_ring(), seed, budget),
        IntUfr => summarize(inst, &integers_ufr(), seed, budget),
        BinAdd => summarize(inst, &bin_monoid(), seed, budget),
        Rat => summarize(inst, &rationals(), seed, budget),
        PolyInt => summarize(inst, &poly_additive_group(&integers()).expect("commutative ring"), seed, budget),
        PolyZ7 => {
            let z7 = residue_field_checked(&i(7)).expect("7 is prime");
            summarize(inst, &poly_additive_group(&z7).expect("commutative ring"), seed, budget)
        }
        Zmod(b) => summarize(inst, &residue_ring(&i(*b)).expect("modulus ≥ 2"), seed, budget),
        Gf(p) => summarize(inst, &residue_field_checked(&i(*p)).expect("checked prime"), seed, budget),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowMonoid {
    NatAdd,
    NatMul,
    IntMul,
    BinAdd,
}

impl FromStr for PowMonoid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nat-add" => Ok(PowMonoid::NatAdd),
            "nat-mul" => Ok(PowMonoid::NatMul),
            "int-mul" => Ok(PowMonoid::IntMul),
            "bin-add" => Ok(PowMonoid::BinAdd),
            _ => Err(format!("unknown monoid `{s}` (known: nat-add, nat-mul, int-mul, bin-add)")),
        }
    }
}

impl fmt::Display for PowMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PowMonoid::NatAdd => "nat-add",
            PowMonoid::NatMul => "nat-mul",
            PowMonoid::IntMul => "int-mul",
            PowMonoid::BinAdd => "bin-add",
        })
    }
}

/// Computes `base^n` in the monoid; the base is parsed per carrier.
pub fn run_pow(m: PowMonoid, base: &str, n: &Nat) -> Result<(String, PowerTrace), String> {
    fn go<T: Clone + fmt::Display + 'static>(s: &Structure<T>, x: &T, n: &Nat) -> (String, PowerTrace) {
        let (v, trace) = power_traced(s, x, n).expect("registered monoids are complete");
        (v.to_string(), trace)
    }
    let bad = |what: &str| format!("`{base}` is not {what}");
    match m {
        PowMonoid::NatAdd => Ok(go(&nat_add(), &base.parse::<Nat>().map_err(|_| bad("a natural number"))?, n)),
        PowMonoid::NatMul => Ok(go(&nat_mul(), &base.parse::<Nat>().map_err(|_| bad("a natural number"))?, n)),
        PowMonoid::IntMul => Ok(go(&int_mul(), &base.parse::<Int>().map_err(|_| bad("an integer"))?, n)),
        PowMonoid::BinAdd => {
            let b = match base.parse::<Bin>() {
                Ok(b) => b,
                Err(_) => to_bin(&base.parse::<Nat>().map_err(|_| bad("a binary or decimal natural"))?),
            };
            Ok(go(&bin_monoid(), &b, n))
        }
    }
}
