//! Acceptance runner: one PASS/FAIL line per criterion. Tolerances are exact
//! equality throughout; time limits are wall-clock and pinned below.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use lieword::catalog::{b03, b013, build, heis, k22, l6_21, random_2step, t7, CatalogEntry, Params};
use lieword::classify::{breadth_profile, theorem_verdict, Rule};
use lieword::cli::check_entry;
use lieword::gfp::{Fp, PrimeField};
use lieword::image::{
    bracket_preimage, commuting_generating_quad, report_from_image, word_image, word_image_bruteforce, Budgets,
    ImageReport,
};
use lieword::liecore::LieAlgebra;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

const LIMIT_L6_21_ZERO: Duration = Duration::from_secs(1);
const LIMIT_L6_21_EPS: Duration = Duration::from_secs(1);
const LIMIT_B03: Duration = Duration::from_secs(5);
const LIMIT_B013: Duration = Duration::from_secs(5);
const LIMIT_K22: Duration = Duration::from_secs(10);
const LIMIT_T7: Duration = Duration::from_secs(1);
const LIMIT_SMALL_DERIVED: Duration = Duration::from_secs(60);
const LIMIT_ORACLE: Duration = Duration::from_secs(300);
const LIMIT_VERDICT: Duration = Duration::from_secs(300);
const LIMIT_PROPERTIES: Duration = Duration::from_secs(120);

const ORACLE_PAIR_CAP: u128 = 100_000_000;
const MIN_SMALL_DERIVED_RANDOM: usize = 200;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs `f` once per item and fails if any single run exceeds `limit`.
fn per_item<T: std::fmt::Debug>(items: &[T], limit: Duration, mut f: impl FnMut(&T) -> Result<(), String>) -> Check {
    let mut worst = Duration::ZERO;
    for item in items {
        let t = Instant::now();
        f(item).map_err(|e| format!("{item:?}: {e}"))?;
        let el = t.elapsed();
        worst = worst.max(el);
        ensure(el <= limit, || format!("{item:?} took {:.3}s", el.as_secs_f64()))?;
    }
    Ok(format!("{} cases, slowest {:.3}s", items.len(), worst.as_secs_f64()))
}

fn image(l: &LieAlgebra) -> Result<(lieword::image::ElementSet, ImageReport), String> {
    let b = Budgets::default();
    let w = word_image(l, &b).map_err(|e| e.to_string())?;
    let r = report_from_image(l, &w, &b).map_err(|e| e.to_string())?;
    Ok((w, r))
}

fn add(f: &PrimeField, a: &[Fp], b: &[Fp]) -> Vec<Fp> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

fn unit(n: usize, i: usize) -> Vec<Fp> {
    lieword::liecore::unit(n, i)
}

/// The decomposition sums to the witness and each term is a bracket.
fn check_decomposition(l: &LieAlgebra, r: &ImageReport) -> Result<(), String> {
    let f = l.field();
    let (Some(w), Some(terms)) = (&r.witness_missing, &r.witness_decomposition) else {
        return Err("missing witness decomposition".into());
    };
    ensure(terms.len() == r.sum_depth, || format!("{} terms for depth {}", terms.len(), r.sum_depth))?;
    let mut acc = vec![Fp::ZERO; l.dim()];
    for t in terms {
        ensure(l.bracket(&t.x, &t.y).unwrap() == t.value, || "term is not [x, y]".into())?;
        acc = add(&f, &acc, &t.value);
    }
    ensure(&acc == w, || "decomposition does not sum to the witness".into())
}

fn criterion_1() -> Check {
    per_item(&[3u64, 5, 7], LIMIT_L6_21_ZERO, |&p| {
        let l = l6_21(field(p), 0).map_err(|e| e.to_string())?;
        let f = l.field();
        let (w, r) = image(&l)?;
        ensure(!r.equals_derived, || "w(L) = L'".into())?;
        ensure(r.sum_depth == 2, || format!("sum_depth {}", r.sum_depth))?;
        let u = add(&f, &unit(6, 4), &unit(6, 5));
        ensure(r.witness_missing.as_ref() == Some(&u), || format!("witness {:?}", r.witness_missing))?;
        for lam in f.units() {
            let v: Vec<Fp> = u.iter().map(|&c| f.mul(lam, c)).collect();
            ensure(!w.contains(&v).unwrap(), || format!("{v:?} in w(L)"))?;
        }
        let pre = bracket_preimage(&l, &u, Budgets::default().image).map_err(|e| e.to_string())?;
        ensure(pre.is_none(), || "u5+u6 has a bracket preimage".into())?;
        check_decomposition(&l, &r)
    })
}

fn criterion_2() -> Check {
    let cases: Vec<(u64, u64)> = [3u64, 5, 7].iter().flat_map(|&p| (1..p).map(move |e| (p, e))).collect();
    per_item(&cases, LIMIT_L6_21_EPS, |&(p, eps)| {
        let l = l6_21(field(p), eps as i64).map_err(|e| e.to_string())?;
        let (_, r) = image(&l)?;
        ensure(r.equals_derived && r.sum_depth == 1, || format!("|w| = {} of {}", r.w_size, r.derived_size))
    })
}

fn criterion_3() -> Check {
    per_item(&[3u64, 5, 7], LIMIT_B03, |&p| {
        let f = field(p);
        let r = f.find_nonsquare();
        let l = b03(f, r.value() as i64).map_err(|e| e.to_string())?;
        let prof = breadth_profile(&l, Budgets::default().image).map_err(|e| e.to_string())?;
        ensure(prof.type_set == [0, 3], || format!("type {:?}", prof.type_set))?;
        let (_, rep) = image(&l)?;
        ensure(rep.equals_derived, || format!("|w| = {}", rep.w_size))
    })
}

fn criterion_4() -> Check {
    per_item(&[3u64, 5], LIMIT_B013, |&p| {
        let l = b013(field(p)).map_err(|e| e.to_string())?;
        let f = l.field();
        let xy = l.bracket(&unit(8, 0), &unit(8, 1)).unwrap();
        let zw = l.bracket(&unit(8, 2), &unit(8, 3)).unwrap();
        let v = add(&f, &xy, &zw);
        let (w, r) = image(&l)?;
        ensure(!r.equals_derived, || "w(L) = L'".into())?;
        ensure(!w.contains(&v).unwrap(), || "[x,y]+[z,w] in w(L)".into())?;
        // pointwise: v is outside Im ad(x) for every x in L
        let pre = bracket_preimage(&l, &v, u64::MAX).map_err(|e| e.to_string())?;
        ensure(pre.is_none(), || format!("preimage {pre:?}"))?;
        ensure(r.sum_depth == 2, || format!("sum_depth {}", r.sum_depth))?;
        check_decomposition(&l, &r)
    })
}

fn criterion_5() -> Check {
    per_item(&[3u64, 5], LIMIT_K22, |&p| {
        let l = k22(field(p)).map_err(|e| e.to_string())?;
        let q = commuting_generating_quad(&l).map_err(|e| e.to_string())?;
        let quad = q.found().ok_or_else(|| format!("no quad: {q:?}"))?;
        let zero = vec![Fp::ZERO; 8];
        ensure(l.bracket(&quad[0], &quad[1]).unwrap() == zero, || "[u1,u2] != 0".into())?;
        ensure(l.bracket(&quad[2], &quad[3]).unwrap() == zero, || "[u3,u4] != 0".into())?;
        ensure(l.generates(quad).unwrap(), || "quad does not generate".into())?;
        let (_, r) = image(&l)?;
        ensure(r.equals_derived, || format!("|w| = {}", r.w_size))
    })
}

fn criterion_6() -> Check {
    per_item(&[3u64, 5], LIMIT_T7, |&p| {
        let l = t7(field(p)).map_err(|e| e.to_string())?;
        ensure(l.dim() == 7, || format!("dim {}", l.dim()))?;
        ensure(l.center().dim() == 3, || format!("dim Z {}", l.center().dim()))?;
        let c = l.nilpotency_class().map_err(|e| e.to_string())?;
        ensure(c == 3, || format!("class {c}"))?;
        let (_, r) = image(&l)?;
        ensure(!r.equals_derived, || "w(L) = L'".into())?;
        ensure(r.sum_depth == 2, || format!("sum_depth {}", r.sum_depth))
    })
}

fn criterion_7() -> Check {
    let b = Budgets::default();
    let mut algebras: Vec<LieAlgebra> = Vec::new();
    let mut random = 0;
    for p in [3u64, 5] {
        let f = field(p);
        for m in 1..=3 {
            algebras.push(heis(f, m).unwrap());
        }
        for key in ["free2step", "G53", "h3_cp_h3", "abelian"] {
            algebras.push(build(key, f, &Params::default()).unwrap().algebra);
        }
        for g in 2..=5usize {
            for d in 1..=3usize.min(g * (g - 1) / 2) {
                for seed in 0..10u64 {
                    algebras.push(random_2step(f, g, d, seed).unwrap());
                    random += 1;
                }
            }
        }
    }
    ensure(random >= MIN_SMALL_DERIVED_RANDOM, || format!("only {random} random instances"))?;
    for l in &algebras {
        let d = l.derived_subalgebra().dim();
        ensure(d <= 3, || format!("{:?}: dim L' = {d}", l.name()))?;
        let (_, r) = image(l)?;
        ensure(r.equals_derived, || format!("{:?}: w(L) != L'", l.name()))?;
        let v = theorem_verdict(l, &b).map_err(|e| e.to_string())?;
        ensure(v.rule == Rule::SmallDerived && v.sound(), || format!("{:?}: verdict {v:?}", l.name()))?;
    }
    Ok(format!("{} algebras ({random} random), zero exceptions", algebras.len()))
}

fn oracle_fits(l: &LieAlgebra) -> bool {
    (l.field().modulus() as u128).pow(2 * l.dim() as u32) <= ORACLE_PAIR_CAP
}

fn criterion_8() -> Check {
    let b = Budgets::default();
    let mut algebras: Vec<LieAlgebra> = Vec::new();
    for p in [3u64, 5, 7] {
        algebras.extend(entries(p).into_iter().map(|e| e.algebra).filter(oracle_fits));
    }
    let shapes = [(3usize, 1usize), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3), (4, 4)];
    let mut random = 0;
    for seed in 0..50u64 {
        let (g, d) = shapes[seed as usize % shapes.len()];
        let p = if g + d <= 5 { 5 } else { 3 };
        let l = random_2step(field(p), g, d, seed).unwrap();
        ensure(oracle_fits(&l), || format!("{:?} exceeds the pair cap", l.name()))?;
        algebras.push(l);
        random += 1;
    }
    let dim8_at_3 = entries(3).iter().filter(|e| e.algebra.dim() <= 8).count();
    let mut checked_dim8_at_3 = 0;
    for l in &algebras {
        let fast = word_image(l, &b).map_err(|e| e.to_string())?;
        let slow = word_image_bruteforce(l, &b).map_err(|e| e.to_string())?;
        ensure(fast == slow, || format!("{:?} at p={}: {} vs {}", l.name(), l.field().modulus(), fast.len(), slow.len()))?;
        if l.field().modulus() == 3 && l.dim() <= 8 && !l.name().unwrap_or("").starts_with("random") {
            checked_dim8_at_3 += 1;
        }
    }
    ensure(checked_dim8_at_3 == dim8_at_3, || format!("{checked_dim8_at_3} of {dim8_at_3} dim <= 8 entries at p=3"))?;
    Ok(format!("{} algebras ({random} random), all sets equal", algebras.len()))
}

fn criterion_9() -> Check {
    let b = Budgets::default();
    let mut all: Vec<CatalogEntry> = Vec::new();
    for p in [3u64, 5, 7] {
        all.extend(entries(p));
    }
    for e in &all {
        let c = check_entry(e, &b).map_err(|err| err.to_string())?;
        ensure(c.agrees(), || format!("{} p={}: {c:?}", e.key, e.p))?;
    }
    let mut branches: BTreeMap<String, usize> = BTreeMap::new();
    for seed in 0..100u64 {
        let l = random_2step(field(3), 4, 4, seed).unwrap();
        let v = theorem_verdict(&l, &b).map_err(|e| e.to_string())?;
        ensure(v.sound(), || format!("seed {seed}: {v:?}"))?;
        let key = serde_json::to_string(&v.branch).unwrap().trim_matches('"').to_string();
        *branches.entry(key).or_default() += 1;
    }
    Ok(format!("{} catalog entries and 100 random, zero disagreements; branches {branches:?}", all.len()))
}

fn deterministic(cases: u32) -> TestRunner {
    let config = Config {
        failure_persistence: None,
        ..Config::with_cases(cases)
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn criterion_10() -> Check {
    deterministic(500)
        .run(&basis_change(), |(p, idx, raw, diag)| check_change_basis(p, idx, &raw, &diag))
        .map_err(|e| format!("change_basis: {e}"))?;
    let mut triples = 0;
    for e in entries(3).iter().filter(|e| e.algebra.dim() <= 6) {
        triples += breadth_invariance_exhaustive(&e.algebra)?;
    }
    deterministic(1000)
        .run(&subspace_pair(), |(p, n, a, b)| check_dimension_formula(p, n, &a, &b))
        .map_err(|e| format!("dimension formula: {e}"))?;
    let mut stems = 0;
    for p in [3u64, 5, 7] {
        for e in entries(p) {
            stem_preserves(&e.algebra)?;
            stems += 1;
        }
    }
    Ok(format!(
        "500 basis changes, {triples} breadth triples, 1000 subspace pairs, {stems} stem reductions"
    ))
}

fn main() {
    type Criterion = (u32, &'static str, Duration, fn() -> Check);
    let criteria: [Criterion; 10] = [
        (1, "L6_21(0): w != L', witness u5+u6, sum_depth 2", LIMIT_L6_21_ZERO * 3, criterion_1),
        (2, "L6_21(eps), eps != 0: w = L'", LIMIT_L6_21_EPS * 15, criterion_2),
        (3, "B03(nonsquare): type (0,3), w = L'", LIMIT_B03 * 3, criterion_3),
        (4, "B013: [x,y]+[z,w] not a bracket, sum_depth 2", LIMIT_B013 * 2, criterion_4),
        (5, "K22: commuting generating quad, w = L'", LIMIT_K22 * 2, criterion_5),
        (6, "T7: dim 7, class 3, dim Z 3, w != L', sum_depth 2", LIMIT_T7 * 2, criterion_6),
        (7, "dim L' <= 3 implies w = L'", LIMIT_SMALL_DERIVED, criterion_7),
        (8, "word_image equals brute force", LIMIT_ORACLE, criterion_8),
        (9, "verdict agrees on catalog and random_2step(4,4)", LIMIT_VERDICT, criterion_9),
        (10, "property suites", LIMIT_PROPERTIES, criterion_10),
    ];
    let mut failed = 0;
    for (n, title, limit, run) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let el = start.elapsed();
        let result = match result {
            Ok(d) if el > limit => Err(format!("{d}; total time over limit")),
            other => other,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => {
                failed += 1;
                ("FAIL", d.clone())
            }
        };
        println!(
            "{tag} criterion {n:>2}: {title} | {detail} | {:.2}s (limit {}s)",
            el.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
