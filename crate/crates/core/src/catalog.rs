//! Named algebras with their expected invariants, plus seeded random 2-step
//! algebras.
//!
//! Basis order is generators first, then the derived basis in the order each
//! presentation lists it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfp::{Fp, PrimeField};
use crate::liecore::{unit, BracketEntry, Gluing, LieAlgebra};
use crate::linalg::Subspace;

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Stated in the literature for this algebra.
    Literature,
    /// Immediate from the construction.
    Construction,
    /// Measured once by the brute-force oracle and frozen.
    Computed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Known<T> {
    pub value: T,
    pub source: Source,
}

fn lit<T>(value: T) -> Option<Known<T>> {
    Some(Known { value, source: Source::Literature })
}

fn cons<T>(value: T) -> Option<Known<T>> {
    Some(Known { value, source: Source::Construction })
}

fn comp<T>(value: T) -> Option<Known<T>> {
    Some(Known { value, source: Source::Computed })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub dim: Option<Known<usize>>,
    pub class: Option<Known<usize>>,
    pub derived_dim: Option<Known<usize>>,
    pub center_dim: Option<Known<usize>>,
    pub breadth_type: Option<Known<Vec<usize>>>,
    pub w_equals_derived: Option<Known<bool>>,
    pub sum_depth: Option<Known<usize>>,
}

/// Optional parameters; which ones apply depends on the key.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Params {
    /// `m` for `heis`, `d` for `abelian`, `g` for `free2step`.
    pub size: Option<usize>,
    pub eps: Option<i64>,
    pub r: Option<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub key: String,
    pub p: u32,
    pub params: Params,
    #[serde(skip)]
    pub algebra: LieAlgebra,
    pub expected: Expected,
}

pub struct KeyInfo {
    pub key: &'static str,
    pub params: &'static str,
    pub summary: &'static str,
}

pub const KEYS: &[KeyInfo] = &[
    KeyInfo { key: "heis", params: "--size m (1)", summary: "Heisenberg, [x_i, y_i] = z" },
    KeyInfo { key: "abelian", params: "--size d (2)", summary: "abelian of dimension d" },
    KeyInfo { key: "free2step", params: "--size g (3)", summary: "free 2-step nilpotent on g generators" },
    KeyInfo { key: "G53", params: "", summary: "x, y, a=[x,y], b=[x,a], c=[y,a]" },
    KeyInfo { key: "L6_21", params: "--eps (0)", summary: "L_{6,21}(eps)" },
    KeyInfo { key: "B013", params: "", summary: "2-step dim 8, L' = <[x,y],[x,z],[y,z],[z,w]>" },
    KeyInfo { key: "K22", params: "", summary: "2-step dim 8, [u1,u2] = [u3,u4] = 0" },
    KeyInfo { key: "B03", params: "--r (least non-square)", summary: "2-step dim 8, [z,w] = -[x,y], [x,z] = -r[y,w]" },
    KeyInfo { key: "T7", params: "", summary: "3-step dim 7, [x,y]=a, [x,z]=b, [y,z]=c, [x,a]=d" },
    KeyInfo { key: "L6_21_sum_ab2", params: "", summary: "L_{6,21}(0) + abelian(2)" },
    KeyInfo { key: "h3_cp_h3", params: "", summary: "heis(1) * heis(1) glued along the centers" },
    KeyInfo { key: "B013_cp_heis", params: "", summary: "B013 * heis(1), center glued to [z,w]" },
    KeyInfo { key: "T7_cp_heis", params: "", summary: "T7 * heis(1), center glued to d" },
    KeyInfo { key: "L6_21_cp_heis", params: "", summary: "L_{6,21}(0) * heis(1), center glued to u6" },
];

type Table = Vec<BracketEntry>;

fn simple(pairs: &[(usize, usize, usize)]) -> Table {
    pairs.iter().map(|&(i, j, k)| (i, j, vec![(k, 1)])).collect()
}

pub fn heis(field: PrimeField, m: usize) -> Result<LieAlgebra> {
    if m == 0 {
        return Err(Error::InvalidParameter("heis needs m >= 1".into()));
    }
    let z = 2 * m;
    let table: Vec<_> = (0..m).map(|i| (2 * i, 2 * i + 1, z)).collect();
    Ok(LieAlgebra::from_brackets(field, 2 * m + 1, &simple(&table))?.with_name(format!("heis({m})")))
}

pub fn abelian(field: PrimeField, d: usize) -> Result<LieAlgebra> {
    Ok(LieAlgebra::abelian(field, d)?.with_name(format!("abelian({d})")))
}

pub fn free2step(field: PrimeField, g: usize) -> Result<LieAlgebra> {
    if g < 2 {
        return Err(Error::InvalidParameter("free2step needs g >= 2".into()));
    }
    let mut table = Vec::new();
    let mut k = g;
    for i in 0..g {
        for j in i + 1..g {
            table.push((i, j, k));
            k += 1;
        }
    }
    Ok(LieAlgebra::from_brackets(field, k, &simple(&table))?.with_name(format!("free2step({g})")))
}

pub fn g53(field: PrimeField) -> Result<LieAlgebra> {
    let t = simple(&[(0, 1, 2), (0, 2, 3), (1, 2, 4)]);
    Ok(LieAlgebra::from_brackets(field, 5, &t)?.with_name("G53"))
}

/// u1..u6 are indices 0..5.
pub fn l6_21(field: PrimeField, eps: i64) -> Result<LieAlgebra> {
    let mut t = simple(&[(0, 1, 2), (0, 2, 3), (0, 3, 5), (1, 2, 4)]);
    let e = field.elem(eps);
    if !e.is_zero() {
        t.push((1, 4, vec![(5, e.value() as i64)]));
    }
    Ok(LieAlgebra::from_brackets(field, 6, &t)?.with_name(format!("L6_21({e})")))
}

/// x, y, z, w, then [x,y], [x,z], [y,z], [z,w].
pub fn b013(field: PrimeField) -> Result<LieAlgebra> {
    let t = simple(&[(0, 1, 4), (0, 2, 5), (1, 2, 6), (2, 3, 7)]);
    Ok(LieAlgebra::from_brackets(field, 8, &t)?.with_name("B013"))
}

/// u1..u4, then [u1,u3], [u1,u4], [u2,u3], [u2,u4].
pub fn k22(field: PrimeField) -> Result<LieAlgebra> {
    let t = simple(&[(0, 2, 4), (0, 3, 5), (1, 2, 6), (1, 3, 7)]);
    Ok(LieAlgebra::from_brackets(field, 8, &t)?.with_name("K22"))
}

/// x, y, z, w, then [x,y], [y,z], [y,w], [x,w]; `r` must be a non-square.
pub fn b03(field: PrimeField, r: i64) -> Result<LieAlgebra> {
    let r = field.elem(r);
    if field.is_square(r) {
        return Err(Error::InvalidParameter(format!("r = {r} is a square mod {}", field.modulus())));
    }
    let mut t = simple(&[(0, 1, 4), (1, 2, 5), (1, 3, 6), (0, 3, 7)]);
    t.push((2, 3, vec![(4, -1)]));
    t.push((0, 2, vec![(6, -(r.value() as i64))]));
    Ok(LieAlgebra::from_brackets(field, 8, &t)?.with_name(format!("B03({r})")))
}

/// x, y, z, a, b, c, d.
pub fn t7(field: PrimeField) -> Result<LieAlgebra> {
    let t = simple(&[(0, 1, 3), (0, 2, 4), (1, 2, 5), (0, 3, 6)]);
    Ok(LieAlgebra::from_brackets(field, 7, &t)?.with_name("T7"))
}

/// Central product with `heis(1)`, identifying its center with `e_target`.
fn glue_heis(l: &LieAlgebra, target: usize, name: &str) -> Result<LieAlgebra> {
    let h = heis(l.field(), 1)?;
    let g = Gluing::identity(vec![unit(l.dim(), target)], vec![unit(3, 2)]);
    Ok(l.central_product(&h, &g)?.with_name(name))
}

/// Quotient of `free2step(g)` by a uniformly random subspace of its derived
/// part of codimension `d`.
pub fn random_2step(field: PrimeField, g: usize, d: usize, seed: u64) -> Result<LieAlgebra> {
    if g < 2 {
        return Err(Error::InvalidParameter("random_2step needs g >= 2".into()));
    }
    let big = g * (g - 1) / 2;
    if d == 0 || d > big {
        return Err(Error::InvalidParameter(format!("d = {d} must lie in [1, {big}]")));
    }
    let free = free2step(field, g)?;
    let n = g + big;
    let k = big - d;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = field.modulus();
    // the row space of a uniform full-rank k x big matrix is uniform among
    // k-dimensional subspaces
    let kernel = loop {
        let rows: Vec<Vec<Fp>> = (0..k)
            .map(|_| {
                let mut v = vec![Fp::ZERO; n];
                for c in v[g..].iter_mut() {
                    *c = field.from_u64(rng.gen_range(0..p) as u64);
                }
                v
            })
            .collect();
        let s = Subspace::span(&field, &rows, n)?;
        if s.dim() == k {
            break s;
        }
    };
    let q = free.quotient(&kernel)?;
    Ok(q.algebra.with_name(format!("random_2step(g={g},d={d},seed={seed})")))
}

fn c2(g: usize) -> usize {
    g * (g - 1) / 2
}

/// Builds and validates a catalog entry.
pub fn build(key: &str, field: PrimeField, params: &Params) -> Result<CatalogEntry> {
    let p = field.modulus();
    let mut params = *params;
    let (algebra, expected) = match key {
        "heis" => {
            let m = *params.size.get_or_insert(1);
            let e = Expected {
                dim: cons(2 * m + 1),
                class: cons(2),
                derived_dim: cons(1),
                center_dim: cons(1),
                breadth_type: cons(vec![0, 1]),
                w_equals_derived: cons(true),
                sum_depth: cons(1),
            };
            (heis(field, m)?, e)
        }
        "abelian" => {
            let d = *params.size.get_or_insert(2);
            let e = Expected {
                dim: cons(d),
                class: cons(1),
                derived_dim: cons(0),
                center_dim: cons(d),
                breadth_type: cons(vec![0]),
                w_equals_derived: cons(true),
                sum_depth: cons(1),
            };
            (abelian(field, d)?, e)
        }
        "free2step" => {
            let g = *params.size.get_or_insert(3);
            let small = c2(g) <= 3;
            let e = Expected {
                dim: cons(g + c2(g)),
                class: cons(2),
                derived_dim: cons(c2(g)),
                center_dim: cons(c2(g)),
                breadth_type: cons(vec![0, g - 1]),
                w_equals_derived: if small { lit(true) } else { None },
                sum_depth: if small { lit(1) } else { None },
            };
            (free2step(field, g)?, e)
        }
        "G53" => {
            let e = Expected {
                dim: lit(5),
                class: lit(3),
                derived_dim: lit(3),
                center_dim: comp(2),
                breadth_type: comp(vec![0, 2]),
                w_equals_derived: lit(true),
                sum_depth: lit(1),
            };
            (g53(field)?, e)
        }
        "L6_21" => {
            let eps = field.elem(*params.eps.get_or_insert(0));
            let zero = eps.is_zero();
            let e = Expected {
                dim: lit(6),
                class: lit(4),
                derived_dim: lit(4),
                center_dim: lit(if zero { 2 } else { 1 }),
                breadth_type: comp(vec![0, 1, 2, 3]),
                w_equals_derived: lit(!zero),
                sum_depth: if zero { lit(2) } else { lit(1) },
            };
            (l6_21(field, eps.value() as i64)?, e)
        }
        "B013" => {
            let e = Expected {
                dim: lit(8),
                class: lit(2),
                derived_dim: lit(4),
                center_dim: comp(4),
                breadth_type: comp(vec![0, 1, 2, 3]),
                w_equals_derived: lit(false),
                sum_depth: lit(2),
            };
            (b013(field)?, e)
        }
        "K22" => {
            let e = Expected {
                dim: lit(8),
                class: lit(2),
                derived_dim: lit(4),
                center_dim: comp(4),
                breadth_type: comp(vec![0, 2, 3]),
                w_equals_derived: lit(true),
                sum_depth: lit(1),
            };
            (k22(field)?, e)
        }
        "B03" => {
            let r = *params.r.get_or_insert(field.find_nonsquare().value() as i64);
            let e = Expected {
                dim: lit(8),
                class: lit(2),
                derived_dim: lit(4),
                center_dim: comp(4),
                breadth_type: lit(vec![0, 3]),
                w_equals_derived: lit(true),
                sum_depth: lit(1),
            };
            (b03(field, r)?, e)
        }
        "T7" => {
            let e = Expected {
                dim: lit(7),
                class: lit(3),
                derived_dim: lit(4),
                center_dim: comp(3),
                breadth_type: comp(vec![0, 1, 2, 3]),
                w_equals_derived: lit(false),
                sum_depth: lit(2),
            };
            (t7(field)?, e)
        }
        "L6_21_sum_ab2" => {
            let l = l6_21(field, 0)?.direct_sum(&abelian(field, 2)?)?.with_name(key);
            let e = Expected {
                dim: cons(8),
                class: cons(4),
                derived_dim: cons(4),
                center_dim: cons(4),
                breadth_type: comp(vec![0, 1, 2, 3]),
                w_equals_derived: lit(false),
                sum_depth: lit(2),
            };
            (l, e)
        }
        "h3_cp_h3" => {
            let h = heis(field, 1)?;
            let g = Gluing::identity(vec![unit(3, 2)], vec![unit(3, 2)]);
            let l = h.central_product(&h, &g)?.with_name(key);
            let e = Expected {
                dim: cons(5),
                class: cons(2),
                derived_dim: cons(1),
                center_dim: comp(1),
                breadth_type: cons(vec![0, 1]),
                w_equals_derived: lit(true),
                sum_depth: lit(1),
            };
            (l, e)
        }
        "B013_cp_heis" => {
            let l = glue_heis(&b013(field)?, 7, key)?;
            let e = Expected {
                dim: cons(10),
                class: cons(2),
                derived_dim: cons(4),
                center_dim: comp(4),
                w_equals_derived: lit(true),
                ..Expected::default()
            };
            (l, e)
        }
        "T7_cp_heis" => {
            let l = glue_heis(&t7(field)?, 6, key)?;
            let e = Expected {
                dim: cons(9),
                class: cons(3),
                derived_dim: cons(4),
                center_dim: comp(3),
                w_equals_derived: lit(true),
                ..Expected::default()
            };
            (l, e)
        }
        "L6_21_cp_heis" => {
            let l = glue_heis(&l6_21(field, 0)?, 5, key)?;
            let e = Expected {
                dim: cons(8),
                class: cons(4),
                derived_dim: cons(4),
                w_equals_derived: lit(true),
                ..Expected::default()
            };
            (l, e)
        }
        other => {
            return Err(Error::InvalidParameter(format!("unknown catalog key {other:?}")));
        }
    };
    let algebra = algebra.checked()?;
    Ok(CatalogEntry {
        key: key.to_string(),
        p,
        params,
        algebra,
        expected,
    })
}

/// Every key with default parameters, plus `L6_21` at `eps = 1`.
pub fn standard_entries(field: PrimeField) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for info in KEYS {
        out.push(build(info.key, field, &Params::default())?);
        if info.key == "L6_21" {
            out.push(build(info.key, field, &Params { eps: Some(1), ..Params::default() })?);
        }
        if info.key == "heis" {
            out.push(build(info.key, field, &Params { size: Some(2), ..Params::default() })?);
        }
    }
    Ok(out)
}
