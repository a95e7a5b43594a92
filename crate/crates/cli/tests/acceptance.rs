//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Runs as a plain binary (`harness = false`) so the report is always shown.

use std::collections::HashMap;
use std::process::Command as Proc;
use std::time::{Duration, Instant};

use certalg::certlists::{append, check_sort_result, rev, rev_linear, sort_certified, verify_sort_result, DecTotalOrder, SortResult};
use certalg::eqprover::{agrees_on_samples, eval_matrix, find_refutation, prove_eq, refutation_holds, NatMatrix, Theory};
use certalg::euclid::{extended_gcd, integers, is_prime, prime_split, residue_field_checked, residue_inverse, residue_ring, EuclidError, Residue};
use certalg::factorization::{check_unique_sampled, factor, integers_ufr, nat_positive_mul, product_of};
use certalg::fractions::{rationals, Fraction};
use certalg::numbers::{bin_add, bin_monoid, bin_suc, from_bin, int_additive, int_mul, nat_add, nat_monus, nat_mul, power, power_traced, to_bin};
use certalg::polynomials::poly_additive_group;
use certalg::structures::{check_laws, check_laws_with, DSet, Kind, LawConfig, Structure};
use certalg::{Decision, Either, Int, IntPoly, Nat};
use certalg_cli::expr::{eval_frac, eval_int, eval_poly, parse_equation, parse_expr, to_term, Mode};
use num_bigint::RandBigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;

/// Budget and seeds for criterion 1.
const LAW_BUDGET: usize = 500;
const LAW_SEEDS: [u64; 3] = [1, 2, 3];
const LAW_TIME_LIMIT: Duration = Duration::from_secs(60);
const REV_TIME_LIMIT: Duration = Duration::from_secs(30);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn primes_below(n: u64) -> Vec<u64> {
    (2..n).filter(|k| (2..*k).take_while(|d| d * d <= *k).all(|d| k % d != 0)).collect()
}

fn laws_pass<T: Clone + std::fmt::Debug + 'static>(s: &Structure<T>, label: &str) -> Result<usize, String> {
    let mut cases = 0;
    for seed in LAW_SEEDS {
        let r = check_laws(s, seed, LAW_BUDGET).map_err(|e| format!("{label}: {e}"))?;
        if let Some(f) = r.failures.first() {
            return Err(format!("{label} seed {seed}: {} fails on {:?}", f.law, f.counterexample));
        }
        cases += r.cases;
    }
    Ok(cases)
}

fn c1_law_suites() -> Verdict {
    let start = Instant::now();
    let mut cases = 0;
    let mut count = 0;
    let mut tally = |r: Result<usize, String>| -> Result<(), String> {
        cases += r?;
        count += 1;
        Ok(())
    };
    tally(laws_pass(&nat_add(), "N(+)"))?;
    tally(laws_pass(&nat_mul(), "N(*)"))?;
    let pos = nat_positive_mul();
    tally(laws_pass(&pos.view_as(Kind::CCMonoid).map_err(|e| e.to_string())?, "N\\0(*) as CCMonoid"))?;
    tally(laws_pass(&pos, "N\\0(*)"))?;
    tally(laws_pass(&integers(), "Z"))?;
    tally(laws_pass(&rationals(), "Q"))?;
    tally(laws_pass(&poly_additive_group(&integers()).map_err(|e| e.to_string())?, "Z[x]"))?;
    let z7 = residue_field_checked(&Int::from(7)).map_err(|e| e.to_string())?;
    tally(laws_pass(&poly_additive_group(&z7).map_err(|e| e.to_string())?, "Z/7[x]"))?;
    for b in 2..=50u32 {
        let r = residue_ring(&Int::from(b)).map_err(|e| e.to_string())?;
        tally(laws_pass(&r, &format!("Z/({b})")))?;
    }
    for p in primes_below(100) {
        let f = residue_field_checked(&Int::from(p)).map_err(|e| e.to_string())?;
        tally(laws_pass(&f, &format!("GF({p})")))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < LAW_TIME_LIMIT, || format!("took {elapsed:?}, limit {LAW_TIME_LIMIT:?}"))?;
    Ok(format!("{count} instances x {} seeds, {cases} cases, 0 failures, {:.1}s", LAW_SEEDS.len(), elapsed.as_secs_f64()))
}

fn c2_negative_control() -> Verdict {
    let s = nat_monus();
    let r = check_laws_with(&s, LawConfig::new(1, 100).with_sweep(6)).map_err(|e| e.to_string())?;
    let assoc: Vec<&Vec<Nat>> = r.failures_of("associativity").map(|f| &f.counterexample).collect();
    ensure(!assoc.is_empty(), || "no associativity counterexample".into())?;
    let target: Vec<Nat> = [5u32, 3, 1].iter().map(|&k| Nat::from(k)).collect();
    ensure(assoc.contains(&&target), || "triple (5,3,1) not reported".into())?;
    ensure(r.recheck(&s), || "stored counterexamples do not re-fail".into())?;
    let (a, b, c) = (Nat::from(5u32), Nat::from(3u32), Nat::from(1u32));
    let l = s.op(&s.op(&a, &b), &c);
    let rr = s.op(&a, &s.op(&b, &c));
    ensure(l != rr, || "(5,3,1) does not separate".into())?;
    Ok(format!("{} associativity counterexamples, (5∸3)∸1 = {l} vs 5∸(3∸1) = {rr}", assoc.len()))
}

fn brute_gcd(a: i64, b: i64) -> i64 {
    let (a, b) = (a.abs(), b.abs());
    (1..=a.max(b)).rev().find(|d| a % d == 0 && b % d == 0).unwrap_or(0)
}

fn c3_bezout() -> Verdict {
    let mut n = 0;
    for a in -50..=50i64 {
        for b in -50..=50i64 {
            let c = extended_gcd(&a, &b);
            ensure(c.verify(), || format!("certificate for ({a},{b}) fails: {c:?}"))?;
            ensure(c.g == brute_gcd(a, b), || format!("gcd({a},{b}) = {} vs {}", c.g, brute_gcd(a, b)))?;
            let big = extended_gcd(&Int::from(a), &Int::from(b));
            ensure(big.verify() && big.g == Int::from(c.g), || format!("BigInt disagrees on ({a},{b})"))?;
            n += 1;
        }
    }
    let mut r = rng(3);
    for _ in 0..500 {
        let (a, b) = (r.gen::<i64>(), r.gen::<i64>());
        let c = extended_gcd(&(a as i128), &(b as i128));
        ensure(c.verify(), || format!("i128 certificate for ({a},{b}) fails"))?;
        let big = extended_gcd(&Int::from(a), &Int::from(b));
        ensure(big.verify() && big.g == Int::from(c.g), || format!("BigInt disagrees on ({a},{b})"))?;
        let oracle = num_integer::Integer::gcd(&Int::from(a), &Int::from(b));
        ensure(big.g == oracle, || format!("gcd({a},{b}) = {} vs {oracle}", big.g))?;
        n += 1;
    }
    Ok(format!("{n} certificates re-verified, gcd matches oracle"))
}

fn c4_prime_split() -> Verdict {
    let primes: Vec<i64> = primes_below(30).into_iter().map(|p| p as i64).collect();
    ensure(primes.len() == 10, || "expected ten primes below 30".into())?;
    let mut n = 0;
    for &p in &primes {
        let cert = is_prime(&p).map_err(|e| e.to_string())?;
        for a in 1..=30i64 {
            for b in 1..=30i64 {
                if (a * b) % p != 0 {
                    continue;
                }
                let w = certalg::DividesWitness { divisor: p, dividend: a * b, quotient: a * b / p };
                let out = prime_split(&cert, &a, &b, &w).map_err(|e| format!("p={p} a={a} b={b}: {e}"))?;
                let (side, wit) = match &out {
                    Either::Left(w) => (a, w),
                    Either::Right(w) => (b, w),
                };
                ensure(wit.verify() && wit.divisor == p && wit.dividend == side, || {
                    format!("bad witness for p={p} a={a} b={b}: {out:?}")
                })?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} splits over the first 10 primes, all witnesses re-verify"))
}

fn c5_residue_field() -> Verdict {
    let mut inverses = 0;
    for p in primes_below(100) {
        let m = Int::from(p);
        let f = residue_field_checked(&m).map_err(|e| format!("GF({p}): {e}"))?;
        let one = f.one();
        for x in 1..p {
            let r = Residue::new(Int::from(x), m.clone());
            let inv = residue_inverse(&r).ok_or_else(|| format!("{x} has no inverse mod {p}"))?;
            ensure(f.eq(&f.mul(&inv, &r), &one), || format!("{x}^-1 * {x} != 1 mod {p}"))?;
            let rec = f.recip(&r).ok_or_else(|| format!("recip({x}) missing mod {p}"))?;
            ensure(f.eq(&rec, &inv), || format!("recip and inverse disagree for {x} mod {p}"))?;
            inverses += 1;
        }
    }
    let mut composites = 0;
    for b in 4..=100u32 {
        if primes_below(101).contains(&(b as u64)) {
            continue;
        }
        match residue_field_checked(&Int::from(b)) {
            Err(EuclidError::Composite(w)) => {
                let d = w.divisor.clone();
                ensure(w.verify() && w.dividend == Int::from(b) && d > Int::one() && d < Int::from(b), || {
                    format!("bad witness for {b}: {w:?}")
                })?;
                composites += 1;
            }
            Ok(_) => return Err(format!("Z/({b}) accepted as a field")),
            Err(e) => return Err(format!("Z/({b}): unexpected error {e}")),
        }
    }
    Ok(format!("{inverses} inverses checked, {composites} composite moduli rejected with witnesses"))
}

fn oracle_sum(a: &Fraction<Int>, b: &Fraction<Int>) -> BigRational {
    BigRational::new(a.num().clone(), a.den().clone()) + BigRational::new(b.num().clone(), b.den().clone())
}

fn matches_oracle(q: &Fraction<Int>, o: &BigRational) -> bool {
    q.num() == o.numer() && q.den() == o.denom()
}

fn c6_fractions() -> Verdict {
    let mut n = 0;
    let mut fracs = Vec::new();
    for num in -20..=20i64 {
        for den in -20..=20i64 {
            if den != 0 {
                fracs.push(Fraction::new(num, den).map_err(|e| e.to_string())?);
            }
        }
    }
    ensure(fracs.iter().all(|q| q.is_canonical()), || "construction not canonical".into())?;
    for x in &fracs {
        for y in &fracs {
            let (s1, s2) = (x.add_optimized(y), x.add_naive(y));
            ensure(s1 == s2 && s1.num() == s2.num() && s1.den() == s2.den(), || format!("{x} + {y}: {s1} vs {s2}"))?;
            ensure(s1.is_canonical(), || format!("{x} + {y} = {s1} not canonical"))?;
            let p = Fraction::mul(x, y);
            ensure(p.is_canonical() && Fraction::sub(x, y).is_canonical(), || format!("{x}, {y}: product/difference not canonical"))?;
            n += 1;
        }
    }
    // Exhaustive small cases against an independent rational type.
    for x in fracs.iter().step_by(7) {
        for y in fracs.iter().step_by(5) {
            let (bx, by) = (Fraction::new(Int::from(*x.num()), Int::from(*x.den())).unwrap(), Fraction::new(Int::from(*y.num()), Int::from(*y.den())).unwrap());
            ensure(matches_oracle(&bx.add_optimized(&by), &oracle_sum(&bx, &by)), || format!("{x} + {y} differs from oracle"))?;
        }
    }
    let mut r = rng(6);
    for _ in 0..1000 {
        let mut draw = || loop {
            let (a, b) = (r.gen::<i64>(), r.gen::<i64>());
            if b != 0 {
                return Fraction::new(Int::from(a), Int::from(b)).unwrap();
            }
        };
        let (x, y) = (draw(), draw());
        let (s1, s2) = (x.add_optimized(&y), x.add_naive(&y));
        ensure(s1.num() == s2.num() && s1.den() == s2.den(), || format!("{x} + {y}: {s1} vs {s2}"))?;
        ensure(s1.is_canonical() && matches_oracle(&s1, &oracle_sum(&x, &y)), || format!("{x} + {y} = {s1} wrong"))?;
        let p = Fraction::mul(&x, &y);
        let op = BigRational::new(x.num().clone(), x.den().clone()) * BigRational::new(y.num().clone(), y.den().clone());
        ensure(p.is_canonical() && matches_oracle(&p, &op), || format!("{x} * {y} = {p} wrong"))?;
        if !y.is_zero() {
            let inv = y.inverse().map_err(|e| e.to_string())?;
            ensure(inv.is_canonical(), || format!("1/({y}) not canonical"))?;
        }
        n += 1;
    }
    Ok(format!("{n} sums: optimized = naive, canonical throughout, oracle agrees"))
}

fn c7_polynomials() -> Verdict {
    let z = integers();
    let mut r = rng(7);
    let mut draw = || -> Vec<i64> {
        let deg = r.gen_range(0..=12usize);
        (0..=deg).map(|_| r.gen_range(-9..=9)).collect()
    };
    for k in 0..500 {
        let (a, b) = (draw(), draw());
        let mk = |v: &[i64]| IntPoly::new(&z, v.iter().enumerate().map(|(e, c)| (Int::from(*c), e as u64)).collect::<Vec<_>>());
        let (p, q) = (mk(&a), mk(&b));
        let s = p.add(&q).map_err(|e| e.to_string())?;
        let mut dense: Vec<i64> = (0..a.len().max(b.len())).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect();
        while dense.last() == Some(&0) {
            dense.pop();
        }
        let got: Vec<i64> = s.to_dense().iter().map(|c| c.to_i64().unwrap()).collect();
        ensure(got == dense, || format!("pair {k}: {p} + {q} = {s}, oracle {dense:?}"))?;
        ensure(s.is_canonical() && p.neg().add(&p).unwrap().is_zero(), || format!("pair {k}: invariants fail"))?;
    }
    let g = poly_additive_group(&z).map_err(|e| e.to_string())?;
    let cases = laws_pass(&g, "Z[x]")?;
    let z7 = residue_field_checked(&Int::from(7)).map_err(|e| e.to_string())?;
    let cases7 = laws_pass(&poly_additive_group(&z7).map_err(|e| e.to_string())?, "Z/7[x]")?;
    Ok(format!("500 pairs match the dense oracle, group laws {} cases", cases + cases7))
}

fn small_ints() -> DecTotalOrder<i64> {
    DecTotalOrder::natural(DSet::new("i64", |x: &i64, y: &i64| x == y, |r: &mut dyn RngCore| r.gen_range(-20..20)))
}

fn c8_sort() -> Verdict {
    let dto = small_ints();
    let mut r = rng(8);
    for k in 0..1000 {
        let len = r.gen_range(0..=200);
        let xs: Vec<i64> = (0..len).map(|_| r.gen_range(-20..20)).collect();
        let res = sort_certified(&dto, &xs);
        ensure(verify_sort_result(&dto, &xs, &res), || format!("list {k} fails verification"))?;
        let mut oracle: Vec<(i64, usize)> = xs.iter().copied().zip(0..).collect();
        oracle.sort_by_key(|p| p.0);
        let ys: Vec<i64> = oracle.iter().map(|p| p.0).collect();
        ensure(res.ys == ys, || format!("list {k}: output differs from std sort"))?;
        for (pos, (_, i)) in oracle.iter().enumerate() {
            ensure(res.perm[*i] == pos, || format!("list {k}: perm differs from stable oracle"))?;
        }
    }
    // Stability on keyed records.
    let keyed = DecTotalOrder::new(
        DSet::new("keyed", |a: &(i64, char), b: &(i64, char)| a == b, |r: &mut dyn RngCore| (r.gen_range(0..3), 'a')),
        |a: &(i64, char), b: &(i64, char)| a.0 <= b.0,
    );
    let fixtures: [(&[(i64, char)], &[(i64, char)]); 3] = [
        (&[(2, 'a'), (1, 'b'), (2, 'c'), (1, 'd')], &[(1, 'b'), (1, 'd'), (2, 'a'), (2, 'c')]),
        (&[(1, 'a'), (1, 'b'), (1, 'c')], &[(1, 'a'), (1, 'b'), (1, 'c')]),
        (&[(3, 'a'), (2, 'b'), (3, 'c'), (2, 'd'), (1, 'e')], &[(1, 'e'), (2, 'b'), (2, 'd'), (3, 'a'), (3, 'c')]),
    ];
    for (input, expected) in fixtures {
        let res = sort_certified(&keyed, input);
        ensure(res.ys == expected && verify_sort_result(&keyed, input, &res), || format!("unstable on {input:?}: {:?}", res.ys))?;
    }
    // Forged results must be rejected.
    let xs = vec![3i64, 1, 2, 1];
    let good = sort_certified(&dto, &xs);
    let mut forged: Vec<(&str, SortResult<i64>)> = Vec::new();
    let mut f = good.clone();
    f.ys = vec![1, 2, 1, 3];
    forged.push(("unsorted output", f));
    let mut f = good.clone();
    f.ys = vec![1, 1, 2, 2];
    forged.push(("multiset changed", f));
    let mut f = good.clone();
    f.perm.swap(0, 2);
    forged.push(("wrong permutation", f));
    let mut f = good.clone();
    f.perm = vec![0, 0, 1, 2];
    forged.push(("non-bijective permutation", f));
    let mut f = good.clone();
    f.ord_cert.pop();
    forged.push(("short order certificate", f));
    let mut f = good.clone();
    f.ord_cert[0] = Decision::No(());
    forged.push(("negative order certificate", f));
    let mut f = good.clone();
    f.ys.pop();
    f.perm.pop();
    forged.push(("dropped element", f));
    for (what, f) in &forged {
        ensure(!verify_sort_result(&dto, &xs, f), || format!("forged result accepted: {what} {:?}", check_sort_result(&dto, &xs, f)))?;
    }
    Ok(format!("1000 lists verified and match std stable sort, 3 stability fixtures, {} forgeries rejected", forged.len()))
}

fn c9_list_lemmas() -> Verdict {
    let start = Instant::now();
    let mut lists = 0u64;
    let mut xs: Vec<u8> = Vec::with_capacity(12);
    for len in 0..=12u32 {
        for code in 0..3u64.pow(len) {
            xs.clear();
            let mut c = code;
            for _ in 0..len {
                xs.push((c % 3) as u8);
                c /= 3;
            }
            let r = rev(&xs);
            ensure(rev(&r) == xs, || format!("revrev fails on {xs:?}"))?;
            ensure(r == rev_linear(&xs), || format!("rev differs from reversal on {xs:?}"))?;
            if let Some((x, ys)) = xs.split_last() {
                let mut expected = vec![*x];
                expected.extend(rev(ys));
                ensure(r == expected, || format!("rev (ys ++ [x]) != x :: rev ys on {xs:?}"))?;
            }
            for k in 0..=xs.len() {
                let (a, b) = xs.split_at(k);
                ensure(append(&rev(b), &rev(a)) == r, || format!("rev-append fails on {a:?} ++ {b:?}"))?;
            }
            lists += 1;
        }
    }
    let exhaustive = start.elapsed();
    let mut g = rng(9);
    for _ in 0..500 {
        let a: Vec<u32> = (0..g.gen_range(0..40)).map(|_| g.gen()).collect();
        let b: Vec<u32> = (0..g.gen_range(0..40)).map(|_| g.gen()).collect();
        ensure(rev(&rev(&a)) == a, || "revrev fails on a random list".into())?;
        ensure(rev(&append(&a, &b)) == append(&rev(&b), &rev(&a)), || "rev-append fails on random lists".into())?;
    }
    ensure(exhaustive < REV_TIME_LIMIT, || format!("exhaustive sweep took {exhaustive:?}"))?;
    Ok(format!("{lists} lists exhaustively (every split for rev-append) in {:.1}s, 500 random", exhaustive.as_secs_f64()))
}

/// (theory, equation, expected verdict).
const CORPUS: &[(Theory, &str, bool)] = &[
    (Theory::Monoid, "(x.y).z = x.(y.z)", true),
    (Theory::Monoid, "x.y = y.x", false),
    (Theory::Monoid, "x.e = x", true),
    (Theory::Monoid, "e.x = x", true),
    (Theory::Monoid, "e.e = e", true),
    (Theory::Monoid, "x = y", false),
    (Theory::Monoid, "x.x = x", false),
    (Theory::Monoid, "(x.e).(y.e) = x.y", true),
    (Theory::Monoid, "x.(y.(z.w)) = ((x.y).z).w", true),
    (Theory::Monoid, "x.y.z = z.y.x", false),
    (Theory::Monoid, "x.(y.x) = (x.y).x", true),
    (Theory::Monoid, "x.y = x", false),
    (Theory::Monoid, "e = x", false),
    (Theory::Monoid, "(x.y).(x.y) = x.((y.x).y)", true),
    (Theory::Monoid, "x.y.y = x.y", false),
    (Theory::Monoid, "x*y = x.y", true),
    (Theory::Monoid, "(x.y).z = x.(z.y)", false),
    (Theory::Monoid, "e.(x.(e.y)) = x.y", true),
    (Theory::Monoid, "x.y.z.w = w.x.y.z", false),
    (Theory::Monoid, "x.x.x = x.(x.x)", true),
    (Theory::SemiringWithOne, "x*(y+z) = x*y + x*z", true),
    (Theory::SemiringWithOne, "(x+y)*z = x*z + y*z", true),
    (Theory::SemiringWithOne, "x*y = y*x", false),
    (Theory::SemiringWithOne, "x + y = y + x", true),
    (Theory::SemiringWithOne, "(x+y)+z = x+(y+z)", true),
    (Theory::SemiringWithOne, "(x*y)*z = x*(y*z)", true),
    (Theory::SemiringWithOne, "x*1 = x", true),
    (Theory::SemiringWithOne, "1*x = x", true),
    (Theory::SemiringWithOne, "x + 0 = x", true),
    (Theory::SemiringWithOne, "x*0 = 0", true),
    (Theory::SemiringWithOne, "0*x = 0", true),
    (Theory::SemiringWithOne, "(x+y)*(x+y) = x*x + 2*x*y + y*y", false),
    (Theory::SemiringWithOne, "(x+y)*(x+y) = x*x + x*y + y*x + y*y", true),
    (Theory::SemiringWithOne, "2*x = x + x", true),
    (Theory::SemiringWithOne, "x*2 = 2*x", true),
    (Theory::SemiringWithOne, "x*y*x = x*x*y", false),
    (Theory::SemiringWithOne, "1 + 1 = 2", true),
    (Theory::SemiringWithOne, "x + x = x", false),
    (Theory::SemiringWithOne, "x*(y*z) = (x*z)*y", false),
    (Theory::SemiringWithOne, "(1+x)*(1+x) = 1 + 2*x + x*x", true),
    (Theory::CommSemiring, "x*(y+z) = x*y + x*z", true),
    (Theory::CommSemiring, "x*y = y*x", true),
    (Theory::CommSemiring, "(x+y)*(x+y) = x*x + x*y + x*y + y*y", true),
    (Theory::CommSemiring, "(x+y)*(x+y) = x*x + y*y", false),
    (Theory::CommSemiring, "1+2 = 2+1", true),
    (Theory::CommSemiring, "1+2 = 4", false),
    (Theory::CommSemiring, "(x+1)*(x+1) = x*x + 2*x + 1", true),
    (Theory::CommSemiring, "x*(y*z) = (z*y)*x", true),
    (Theory::CommSemiring, "x + y = x", false),
    (Theory::CommSemiring, "x*x = x", false),
    (Theory::CommSemiring, "(x+y)*(x+y)*(x+y) = x*x*x + 3*x*x*y + 3*x*y*y + y*y*y", true),
    (Theory::CommSemiring, "x*y + z = z + y*x", true),
    (Theory::CommSemiring, "2*(x+y) = 2*x + 2*y", true),
    (Theory::CommSemiring, "x*0 + y = y", true),
    (Theory::CommSemiring, "(x+y)*z = x*z + y*w", false),
    (Theory::CommSemiring, "x*y*z*w = w*z*y*x", true),
    (Theory::CommSemiring, "(x+y)*(z+w) = x*z + x*w + y*z + y*w", true),
    (Theory::CommSemiring, "(x+1)*(y+1) = x*y + x + y", false),
    (Theory::CommSemiring, "3*x = x + x + x", true),
    (Theory::CommSemiring, "x*x*y = x*y*y", false),
];

fn c10_provers() -> Verdict {
    ensure(CORPUS.len() == 60, || format!("corpus has {} equations", CORPUS.len()))?;
    let (mut yes, mut no) = (0, 0);
    for (i, (theory, text, expected)) in CORPUS.iter().enumerate() {
        let (l, r) = parse_equation(text).map_err(|e| format!("#{i} {text}: {e}"))?;
        let (lt, rt) = (to_term(&l, *theory).map_err(|e| e.to_string())?, to_term(&r, *theory).map_err(|e| e.to_string())?);
        let verdict = prove_eq(*theory, &lt, &rt).map_err(|e| format!("#{i} {text}: {e}"))?;
        ensure(verdict.is_yes() == *expected, || format!("#{i} [{theory}] {text}: misclassified"))?;
        if verdict.is_yes() {
            ensure(agrees_on_samples(*theory, &lt, &rt, i as u64, 50), || format!("#{i} {text}: Yes but evaluations differ"))?;
            if *theory == Theory::SemiringWithOne {
                let mut g = rng(i as u64);
                for _ in 0..50 {
                    let env: HashMap<String, NatMatrix> =
                        ["x", "y", "z", "w"].iter().map(|v| (v.to_string(), NatMatrix::random(2, 5, &mut g))).collect();
                    ensure(eval_matrix(&lt, 2, &env) == eval_matrix(&rt, 2, &env), || format!("#{i} {text}: matrices differ"))?;
                }
            }
            yes += 1;
        } else {
            let ass = find_refutation(*theory, &lt, &rt, i as u64).ok_or_else(|| format!("#{i} {text}: No without refuter"))?;
            ensure(refutation_holds(&lt, &rt, &ass), || format!("#{i} {text}: refuter does not separate"))?;
            no += 1;
        }
    }
    Ok(format!("60 equations ({yes} Yes sampled-sound, {no} No with separating assignments), 0 misclassified"))
}

fn check_power<T: Clone + PartialEq + std::fmt::Debug + 'static>(m: &Structure<T>, x: &T, label: &str) -> Result<(), String> {
    let mut acc = m.identity();
    for n in 0..=64u32 {
        let got = power(m, x, &Nat::from(n)).map_err(|e| e.to_string())?;
        ensure(m.eq(&got, &acc), || format!("{label}: x^{n} = {got:?}, oracle {acc:?}"))?;
        if n >= 1 {
            let (_, trace) = power_traced(m, x, &Nat::from(n)).map_err(|e| e.to_string())?;
            let floor_log = 31 - n.leading_zeros() as usize;
            ensure(trace.squarings == floor_log, || format!("{label}: n={n} used {} squarings", trace.squarings))?;
        }
        acc = m.op(&acc, x);
    }
    Ok(())
}

fn c11_power() -> Verdict {
    check_power(&nat_mul(), &Nat::from(3u32), "N(*)")?;
    check_power(&int_additive(), &Int::from(-7), "Z(+)")?;
    let z7 = residue_field_checked(&Int::from(7)).map_err(|e| e.to_string())?;
    let z7_mul = z7.multiplicative_monoid().map_err(|e| e.to_string())?;
    for x in 0..7 {
        check_power(&z7_mul, &Residue::new(Int::from(x), Int::from(7)), "Z/7(*)")?;
    }
    check_power(&nat_add(), &Nat::from(7u32), "N(+)")?;
    check_power(&int_mul(), &Int::from(-2), "Z(*)")?;
    check_power(&bin_monoid(), &to_bin(&Nat::from(5u32)), "Bin(+)")?;
    Ok("exponents 0..=64 match iteration on N(*), Z(+), Z/7(*) and N(+), Z(*), Bin(+); squarings = floor(log2 n)".into())
}

fn c12_bin() -> Verdict {
    let mut prev = to_bin(&Nat::zero());
    for n in 0..10_000u32 {
        let nat = Nat::from(n);
        let b = to_bin(&nat);
        ensure(from_bin(b.bits()).map_err(|e| e.to_string())? == nat, || format!("round trip fails at {n}"))?;
        ensure(b.to_string().parse::<certalg::Bin>().map(|p| p == b).unwrap_or(false), || format!("text round trip fails at {n}"))?;
        if n > 0 {
            ensure(bin_suc(&prev) == b, || format!("suc fails at {n}"))?;
        }
        prev = b;
    }
    let mut r = rng(12);
    for _ in 0..100 {
        let (x, y) = (r.gen_biguint(256), r.gen_biguint(256));
        let (bx, by) = (to_bin(&x), to_bin(&y));
        ensure(from_bin(bx.bits()).unwrap() == x, || format!("round trip fails at {x}"))?;
        ensure(bin_suc(&bx) == to_bin(&(&x + 1u32)), || format!("suc fails at {x}"))?;
        ensure(from_bin(bin_add(&bx, &by).bits()).unwrap() == &x + &y, || format!("add fails at {x} + {y}"))?;
    }
    Ok("0..10^4 and 100 random 256-bit values: round trip, successor and addition homomorphisms".into())
}

fn c13_factorization() -> Verdict {
    for x in 2..10_000i64 {
        let f = factor(&x).map_err(|e| e.to_string())?;
        ensure(product_of(&f) == x, || format!("productOf(factor {x}) = {}", product_of(&f)))?;
        for p in f.primes() {
            ensure(is_prime(p).map(|c| c.is_prime()).unwrap_or(false), || format!("{p} in factor({x}) is not prime"))?;
        }
        let big = factor(&Int::from(x)).map_err(|e| e.to_string())?;
        ensure(big.render() == f.render(), || format!("carriers disagree on {x}"))?;
    }
    let z = check_unique_sampled(&integers_ufr(), 1, 300).map_err(|e| e.to_string())?;
    ensure(z.passed(), || format!("Z: {:?}", z.failures.first()))?;
    let n = check_unique_sampled(&nat_positive_mul(), 1, 300).map_err(|e| e.to_string())?;
    ensure(n.passed(), || format!("N\\0: {:?}", n.failures.first()))?;
    Ok(format!("2..10^4 reconstruct, uniqueness sampled on Z ({} cases) and N\\0 ({} cases)", z.cases, n.cases))
}

fn random_int(r: &mut ChaCha8Rng) -> Int {
    let bits = r.gen_range(1..=128);
    let m = Int::from(r.gen_biguint(bits));
    if r.gen_bool(0.5) {
        -m
    } else {
        m
    }
}

fn random_term(r: &mut ChaCha8Rng, theory: Theory, depth: usize) -> certalg::Term {
    use certalg::eqprover::{Op, Term};
    if depth == 0 || r.gen_bool(0.3) {
        return match (theory, r.gen_range(0..6)) {
            (_, 0) => Term::Unit,
            (Theory::Monoid, _) | (_, 1..=3) => Term::var(["x", "y", "z", "w", "u1"][r.gen_range(0..5)]),
            _ => Term::nat(r.gen_range(0..20)),
        };
    }
    let op = match theory {
        Theory::Monoid => Op::Dot,
        _ if r.gen_bool(0.5) => Op::Plus,
        _ => Op::Times,
    };
    Term::apply(op, random_term(r, theory, depth - 1), random_term(r, theory, depth - 1))
}

fn cli_bin() -> String {
    env!("CARGO_BIN_EXE_certalg").to_string()
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Proc::new(cli_bin()).args(args).env_remove("CERTALG_SEED").output().expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout).to_string() + &String::from_utf8_lossy(&out.stderr);
    (out.status.code().unwrap_or(-1), text)
}

fn c14_cli() -> Verdict {
    let mut r = rng(14);
    let z = integers();
    for _ in 0..500 {
        let x = random_int(&mut r);
        let back = eval_int(&parse_expr(&x.to_string(), Mode::Int).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(back == x, || format!("int round trip: {x} -> {back}"))?;

        let (n, d) = (Int::from(r.gen::<i64>()), Int::from(r.gen_range(1..i64::MAX)));
        let q = Fraction::new(if r.gen_bool(0.5) { n } else { -Int::from(r.gen_range(0..1000)) }, d).unwrap();
        let back = eval_frac(&parse_expr(&q.to_string(), Mode::Frac).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(back.num() == q.num() && back.den() == q.den(), || format!("frac round trip: {q} -> {back}"))?;

        let deg = r.gen_range(0..=8u64);
        let raw: Vec<(Int, u64)> = (0..=deg).map(|e| (Int::from(r.gen_range(-50..=50)), e)).collect();
        let p = IntPoly::new(&z, raw);
        let text = p.to_string();
        let back = eval_poly(&parse_expr(&text, Mode::Poly).map_err(|e| format!("{text}: {e}"))?, &z).map_err(|e| e.to_string())?;
        ensure(back == p && back.to_string() == text, || format!("poly round trip: {text} -> {back}"))?;

        for theory in Theory::ALL {
            let t = random_term(&mut r, theory, 5);
            let text = t.to_string();
            let back = to_term(&parse_expr(&text, Mode::Term).map_err(|e| format!("{text}: {e}"))?, theory).map_err(|e| e.to_string())?;
            ensure(back == t, || format!("term round trip: {text} -> {back}"))?;
        }
    }
    let (code, out) = run_cli(&["laws"]);
    ensure(code == 0, || format!("laws smoke run exited {code}: {out}"))?;
    let fixtures: &[(&[&str], i32, &str)] = &[
        (&["factor", "60"], 0, "60 = 2^2 * 3 * 5"),
        (&["egcd", "12", "8"], 0, "g=4"),
        (&["no-such-command"], 2, ""),
        (&["frac", "1/(2"], 3, "column 5"),
        (&["frac", "1/0"], 4, "division by zero"),
        (&["residue", "-m", "6", "--field", "1/3"], 5, "2 | 6"),
        (&["residue", "-m", "0", "1"], 6, "modulus"),
        (&["laws", "nat-monus"], 7, "associativity"),
        (&["prove", "--theory", "sr1", "x*y = y*x"], 8, "refuted"),
        (&["factor", "0"], 9, "cannot factor"),
        (&["prove", "--theory", "monoid", "x + y = y"], 10, "not in the monoid theory"),
    ];
    for (args, want, needle) in fixtures {
        let (code, out) = run_cli(args);
        ensure(code == *want && out.contains(needle), || format!("{args:?}: exit {code}, output {out:?}"))?;
    }
    let (code, out) = run_cli(&["--json", "residue", "-m", "6", "--field", "1/3"]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).map_err(|e| e.to_string())?;
    ensure(code == 5 && v["witness"] == "2 | 6" && v["exit_code"] == 5, || format!("json failure document: {out}"))?;
    Ok(format!("500 round trips per mode (int, frac, poly, 3 term theories), laws smoke exit 0, {} exit-code fixtures", fixtures.len() + 1))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 14] = [
        ("law suites", c1_law_suites),
        ("negative control", c2_negative_control),
        ("bezout certificates", c3_bezout),
        ("prime split", c4_prime_split),
        ("residue fields", c5_residue_field),
        ("fraction differential", c6_fractions),
        ("polynomial differential", c7_polynomials),
        ("certified sort", c8_sort),
        ("list lemma corpus", c9_list_lemmas),
        ("equational provers", c10_provers),
        ("binary powering", c11_power),
        ("bin coding", c12_bin),
        ("factorization", c13_factorization),
        ("cli", c14_cli),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
