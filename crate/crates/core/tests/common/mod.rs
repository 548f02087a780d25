//! Shared helpers and property checks, used by the proptest suites and by
//! the acceptance runner.
#![allow(dead_code)]

use lieword::catalog::{standard_entries, CatalogEntry};
use lieword::classify::{breadth, breadth_profile};
use lieword::gfp::{Fp, PrimeField};
use lieword::image::{report_from_image, word_image, Budgets};
use lieword::liecore::LieAlgebra;
use lieword::linalg::{FpMatrix, Subspace};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn field(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

pub fn fp_vec(f: &PrimeField, raw: &[u64]) -> Vec<Fp> {
    raw.iter().map(|&v| f.from_u64(v)).collect()
}

pub fn entries(p: u64) -> Vec<CatalogEntry> {
    standard_entries(field(p)).unwrap()
}

/// `L U` with unit lower `L`, upper `U` with nonzero diagonal: always
/// invertible. `raw` needs `n*n` values and `diag` needs `n`.
pub fn invertible(f: &PrimeField, n: usize, raw: &[u64], diag: &[u64]) -> FpMatrix {
    let p = f.modulus() as u64;
    let mut lo = FpMatrix::identity(n);
    let mut up = FpMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            let v = f.from_u64(raw[r * n + c] % p);
            if c < r {
                lo.set(r, c, v);
            } else if c > r {
                up.set(r, c, v);
            }
        }
        up.set(r, r, f.from_u64(1 + diag[r] % (p - 1)));
    }
    lo.mul(f, &up).unwrap()
}

pub fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(3u64), Just(5u64)]
}

/// (p, catalog index, raw matrix entries, diagonal) for catalog entries.
pub fn basis_change() -> impl Strategy<Value = (u64, usize, Vec<u64>, Vec<u64>)> {
    (
        prime(),
        0usize..64,
        prop::collection::vec(any::<u64>(), 100),
        prop::collection::vec(any::<u64>(), 10),
    )
}

/// `change_basis` keeps the Lie axioms and the series dimensions.
pub fn check_change_basis(p: u64, idx: usize, raw: &[u64], diag: &[u64]) -> Result<(), TestCaseError> {
    let es = entries(p);
    let l = &es[idx % es.len()].algebra;
    let f = l.field();
    let t = invertible(&f, l.dim(), raw, diag);
    let m = l.change_basis(&t).unwrap();
    prop_assert!(m.validate().is_valid(), "{:?}", l.name());
    prop_assert_eq!(m.lower_central_series().dims(), l.lower_central_series().dims());
    prop_assert_eq!(m.center().dim(), l.center().dim());
    Ok(())
}

/// `v -> T v` maps `w(change_basis(L, T))` onto `w(L)`.
pub fn check_image_transport(p: u64, idx: usize, raw: &[u64], diag: &[u64]) -> Result<(), TestCaseError> {
    let es = entries(p);
    let l = &es[idx % es.len()].algebra;
    let f = l.field();
    let t = invertible(&f, l.dim(), raw, diag);
    let m = l.change_basis(&t).unwrap();
    let b = Budgets::default();
    let wl = word_image(l, &b).unwrap();
    let wm = word_image(&m, &b).unwrap();
    prop_assert_eq!(wl.len(), wm.len());
    for v in wm.vectors() {
        let tv = t.mul_vec(&f, &v).unwrap();
        prop_assert!(wl.contains(&tv).unwrap());
    }
    Ok(())
}

/// (p, ambient, generators of A, generators of B).
pub fn subspace_pair() -> impl Strategy<Value = (u64, usize, Vec<Vec<u64>>, Vec<Vec<u64>>)> {
    (prime(), 1usize..=6).prop_flat_map(|(p, n)| {
        let vecs = prop::collection::vec(prop::collection::vec(0..p, n), 0..=n);
        (Just(p), Just(n), vecs.clone(), vecs)
    })
}

pub fn check_dimension_formula(p: u64, n: usize, a: &[Vec<u64>], b: &[Vec<u64>]) -> Result<(), TestCaseError> {
    let f = field(p);
    let a: Vec<Vec<Fp>> = a.iter().map(|v| fp_vec(&f, v)).collect();
    let b: Vec<Vec<Fp>> = b.iter().map(|v| fp_vec(&f, v)).collect();
    let sa = Subspace::span(&f, &a, n).unwrap();
    let sb = Subspace::span(&f, &b, n).unwrap();
    let sum = sa.sum(&sb).unwrap();
    let cap = sa.intersect(&sb).unwrap();
    prop_assert_eq!(sa.dim() + sb.dim(), sum.dim() + cap.dim());
    prop_assert!(sum.contains_subspace(&sa).unwrap() && sum.contains_subspace(&sb).unwrap());
    prop_assert!(sa.contains_subspace(&cap).unwrap() && sb.contains_subspace(&cap).unwrap());
    Ok(())
}

/// `breadth(x) = breadth(λx) = breadth(x + z)` for every `x`, `λ ≠ 0` and
/// `z ∈ Z(L)`. Returns the number of triples checked.
pub fn breadth_invariance_exhaustive(l: &LieAlgebra) -> Result<usize, String> {
    let f = l.field();
    let full = l.full_space();
    let center: Vec<Vec<Fp>> = l.center().enumerate(u64::MAX).unwrap().collect();
    let mut checked = 0;
    for x in full.enumerate(u64::MAX).unwrap() {
        let b = breadth(l, &x).unwrap();
        for lam in f.units() {
            let lx: Vec<Fp> = x.iter().map(|&c| f.mul(lam, c)).collect();
            if breadth(l, &lx).unwrap() != b {
                return Err(format!("{:?}: scaling changes breadth at {x:?}", l.name()));
            }
            checked += 1;
        }
        for z in &center {
            let xz: Vec<Fp> = x.iter().zip(z).map(|(&a, &c)| f.add(a, c)).collect();
            if breadth(l, &xz).unwrap() != b {
                return Err(format!("{:?}: central shift changes breadth at {x:?}", l.name()));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// The stem part has the same breadth type and the same `w(L) = L'` status.
pub fn stem_preserves(l: &LieAlgebra) -> Result<(), String> {
    let b = Budgets::default();
    let stem = l.stem_reduce().map_err(|e| e.to_string())?;
    let s = &stem.stem;
    if !s.is_stem() || s.dim() + stem.abelian_dim != l.dim() {
        return Err(format!("{:?}: stem_reduce output is not a stem complement", l.name()));
    }
    let tl = breadth_profile(l, b.image).unwrap().type_set;
    let ts = breadth_profile(s, b.image).unwrap().type_set;
    if tl != ts {
        return Err(format!("{:?}: breadth type {tl:?} vs stem {ts:?}", l.name()));
    }
    let el = report_from_image(l, &word_image(l, &b).unwrap(), &b).unwrap().equals_derived;
    let es = report_from_image(s, &word_image(s, &b).unwrap(), &b).unwrap().equals_derived;
    if el != es {
        return Err(format!("{:?}: w(L) = L' is {el} but {es} on the stem", l.name()));
    }
    Ok(())
}
