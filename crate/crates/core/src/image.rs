//! The image `w(L) = {[x, y]}` as an exact point set inside `L'`, sumsets of
//! it, covering certificates and the commuting generating quad search.
//!
//! Points of `L'` are stored by their point code: the coordinates against the
//! canonical basis of `L'` read as base-p digits.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfp::{Fp, PrimeField};
use crate::liecore::{unit, LieAlgebra};
use crate::linalg::{
    check_budget, decode_point, point_code, projective_count, projective_points, rref, solve,
    FpMatrix, Subspace, DEFAULT_ENUMERATION_BUDGET,
};

pub const DEFAULT_ORACLE_BUDGET: u64 = 100_000_000;
pub const IMAGE_BUDGET_VAR: &str = "WORDMAP_IMAGE_BUDGET";
pub const ORACLE_BUDGET_VAR: &str = "WORDMAP_ORACLE_BUDGET";

/// Caps on enumeration sizes. `image` bounds point sets and projective loops,
/// `oracle` bounds the pair count of the brute-force image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    pub image: u64,
    pub oracle: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            image: DEFAULT_ENUMERATION_BUDGET,
            oracle: DEFAULT_ORACLE_BUDGET,
        }
    }
}

impl Budgets {
    /// Defaults overridden by [`IMAGE_BUDGET_VAR`] / [`ORACLE_BUDGET_VAR`].
    pub fn from_env() -> Result<Self> {
        Self::from_lookup(|k| std::env::var(k).ok())
    }

    pub fn from_lookup(lookup: impl Fn(&str) -> Option<String>) -> Result<Self> {
        let mut b = Budgets::default();
        for (var, slot) in [(IMAGE_BUDGET_VAR, &mut b.image), (ORACLE_BUDGET_VAR, &mut b.oracle)] {
            if let Some(raw) = lookup(var) {
                *slot = raw.trim().parse().map_err(|_| {
                    Error::InvalidParameter(format!("{var} must be a decimal integer, got {raw:?}"))
                })?;
            }
        }
        Ok(b)
    }
}

/// A subset of `L'` as a bitset over point codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementSet {
    base: Subspace,
    p: u32,
    size: usize,
    bits: Vec<u64>,
    count: usize,
}

impl ElementSet {
    pub fn empty(base: &Subspace, budget: u64) -> Result<Self> {
        let p = base.field().modulus();
        let size = check_budget(p, base.dim(), budget)? as usize;
        Ok(ElementSet {
            base: base.clone(),
            p,
            size,
            bits: vec![0; size.div_ceil(64)],
            count: 0,
        })
    }

    pub fn full(base: &Subspace, budget: u64) -> Result<Self> {
        let mut s = Self::empty(base, budget)?;
        for c in 0..s.size {
            s.insert_code(c);
        }
        Ok(s)
    }

    pub fn base(&self) -> &Subspace {
        &self.base
    }

    /// `p^{dim base}`.
    pub fn universe_size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn is_full(&self) -> bool {
        self.count == self.size
    }

    #[inline]
    pub fn contains_code(&self, code: usize) -> bool {
        code < self.size && self.bits[code / 64] >> (code % 64) & 1 == 1
    }

    /// Returns true if the code was new.
    #[inline]
    pub fn insert_code(&mut self, code: usize) -> bool {
        assert!(code < self.size, "point code {code} out of range");
        let (w, b) = (code / 64, code % 64);
        let fresh = self.bits[w] >> b & 1 == 0;
        if fresh {
            self.bits[w] |= 1 << b;
            self.count += 1;
        }
        fresh
    }

    /// Point code of an ambient vector, or `None` outside the base.
    pub fn code_of(&self, v: &[Fp]) -> Result<Option<usize>> {
        Ok(self.base.coordinates(v)?.map(|c| point_code(&c, self.p)))
    }

    pub fn vector_of(&self, code: usize) -> Vec<Fp> {
        let coords = decode_point(code, self.p, self.base.dim());
        self.base.combine(&coords).expect("coordinate length matches")
    }

    pub fn insert(&mut self, v: &[Fp]) -> Result<bool> {
        match self.code_of(v)? {
            Some(c) => Ok(self.insert_code(c)),
            None => Err(Error::InvalidParameter("vector lies outside the base subspace".into())),
        }
    }

    pub fn contains(&self, v: &[Fp]) -> Result<bool> {
        Ok(self.code_of(v)?.is_some_and(|c| self.contains_code(c)))
    }

    pub fn codes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.size).filter(|&c| self.contains_code(c))
    }

    /// Members as ambient vectors, in code order.
    pub fn vectors(&self) -> impl Iterator<Item = Vec<Fp>> + '_ {
        self.codes().map(|c| self.vector_of(c))
    }

    /// The non-member with the smallest code.
    pub fn first_missing(&self) -> Option<Vec<Fp>> {
        (0..self.size)
            .find(|&c| !self.contains_code(c))
            .map(|c| self.vector_of(c))
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        assert_eq!(self.base, other.base, "union of sets over different bases");
        let mut count = 0;
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= *b;
            count += a.count_ones() as usize;
        }
        self.count = count;
    }
}

fn embed(coords: &[Fp], positions: &[usize], n: usize) -> Vec<Fp> {
    let mut v = vec![Fp::ZERO; n];
    for (c, &i) in coords.iter().zip(positions) {
        v[i] = *c;
    }
    v
}

/// Representatives `x` of the projective points of the complement of `Z(L)`
/// spanned by its non-pivot coordinates. `Im(ad x)` only depends on this class.
pub(crate) fn noncentral_representatives(l: &LieAlgebra, budget: u64) -> Result<Vec<Vec<Fp>>> {
    let comp = l.center().complement_coords();
    let p = l.field().modulus();
    let count = projective_count(p, comp.len()).unwrap_or(u128::MAX);
    if count > budget as u128 {
        return Err(Error::EnumerationTooLarge {
            size: count,
            budget,
        });
    }
    Ok(projective_points(l.field(), comp.len())
        .map(|r| embed(&r, &comp, l.dim()))
        .collect())
}

/// `Im(ad x)` in `L'`-coordinates.
fn ad_image(l: &LieAlgebra, derived: &Subspace, x: &[Fp]) -> Subspace {
    let n = l.dim();
    let rows: Vec<Vec<Fp>> = (0..n)
        .map(|j| {
            let b = l.bracket_unchecked(x, &unit(n, j));
            derived.pivots().iter().map(|&c| b[c]).collect()
        })
        .collect();
    Subspace::span(&l.field(), &rows, derived.dim()).expect("coordinate rows have length dim L'")
}

/// Exact `w(L)`, as the union of `Im(ad x)` over projective points `x` of a
/// complement of the center.
pub fn word_image(l: &LieAlgebra, budgets: &Budgets) -> Result<ElementSet> {
    let derived = l.derived_subalgebra();
    let mut seed = ElementSet::empty(&derived, budgets.image)?;
    seed.insert_code(0);
    let reps = noncentral_representatives(l, budgets.image)?;
    let p = l.field().modulus();
    let image = reps
        .par_iter()
        .fold(
            || seed.clone(),
            |mut acc, x| {
                let img = ad_image(l, &derived, x);
                for pt in img.enumerate(u64::MAX).expect("no budget") {
                    acc.insert_code(point_code(&pt, p));
                }
                acc
            },
        )
        .reduce(
            || seed.clone(),
            |mut a, b| {
                a.union_with(&b);
                a
            },
        );
    Ok(image)
}

/// Inserts `[x, y]` for every pair. Shares nothing with [`word_image`] beyond
/// the bracket itself.
pub fn word_image_bruteforce(l: &LieAlgebra, budgets: &Budgets) -> Result<ElementSet> {
    let n = l.dim();
    let f = l.field();
    let p = f.modulus();
    check_budget(p, 2 * n, budgets.oracle)?;
    let derived = l.derived_subalgebra();
    let empty = ElementSet::empty(&derived, u64::MAX)?;
    let d = derived.dim();
    let total = (p as u64).pow(n as u32);
    let image = (0..total)
        .into_par_iter()
        .fold(
            || empty.clone(),
            |mut acc, xcode| {
                let x = decode_point(xcode as usize, p, n);
                let cols: Vec<Vec<u32>> = (0..n)
                    .map(|j| {
                        let b = l.bracket_unchecked(&x, &unit(n, j));
                        derived
                            .coordinates(&b)
                            .expect("lengths match")
                            .expect("brackets lie in L'")
                            .into_iter()
                            .map(Fp::value)
                            .collect()
                    })
                    .collect();
                let mut digits = vec![0u32; n];
                let mut sum = vec![0u32; d];
                loop {
                    let code = sum.iter().rev().fold(0usize, |c, &s| c * p as usize + s as usize);
                    acc.insert_code(code);
                    let mut j = 0;
                    loop {
                        if j == n {
                            return acc;
                        }
                        for (s, c) in sum.iter_mut().zip(&cols[j]) {
                            *s += c;
                            if *s >= p {
                                *s -= p;
                            }
                        }
                        digits[j] += 1;
                        if digits[j] < p {
                            break;
                        }
                        digits[j] = 0;
                        j += 1;
                    }
                }
            },
        )
        .reduce(
            || empty.clone(),
            |mut a, b| {
                a.union_with(&b);
                a
            },
        );
    Ok(image)
}

/// Result of iterated sumsets `S_1 = w(L)`, `S_{k+1} = S_k + w(L)`.
#[derive(Debug, Clone)]
pub struct SumDepth {
    /// Least `k` with `S_k = L'`.
    pub depth: usize,
    /// `|S_1|, |S_2|, ..., |S_depth|`.
    pub layer_sizes: Vec<usize>,
    base: Subspace,
    p: u32,
    level: Vec<u16>,
    // code of the last summand used to reach each point
    last: Vec<u32>,
}

impl SumDepth {
    /// Least `k` with the vector in `S_k`; `None` outside `L'`.
    pub fn level_of(&self, v: &[Fp]) -> Result<Option<usize>> {
        Ok(self
            .base
            .coordinates(v)?
            .map(|c| self.level[point_code(&c, self.p)] as usize))
    }

    /// Writes `v` as a sum of `level_of(v)` image elements.
    pub fn decompose(&self, v: &[Fp]) -> Result<Option<Vec<Vec<Fp>>>> {
        let Some(coords) = self.base.coordinates(v)? else {
            return Ok(None);
        };
        let d = self.base.dim();
        let mut code = point_code(&coords, self.p);
        let mut terms = Vec::new();
        while self.level[code] > 1 {
            let w = self.last[code] as usize;
            terms.push(w);
            code = sub_codes(code, w, self.p, d);
        }
        terms.push(code);
        terms.reverse();
        let out = terms
            .into_iter()
            .map(|c| self.base.combine(&decode_point(c, self.p, d)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(out))
    }
}

fn add_digits(a: &[u32], b: &[u32], p: u32) -> usize {
    a.iter()
        .zip(b)
        .rev()
        .fold(0usize, |c, (x, y)| c * p as usize + ((x + y) % p) as usize)
}

fn sub_codes(a: usize, b: usize, p: u32, d: usize) -> usize {
    let da = decode_point(a, p, d);
    let db = decode_point(b, p, d);
    let diff: Vec<u32> = da
        .iter()
        .zip(&db)
        .map(|(x, y)| (x.value() + p - y.value()) % p)
        .collect();
    diff.iter().rev().fold(0usize, |c, &x| c * p as usize + x as usize)
}

/// Breadth-first sumset closure. Stops with [`Error::SumsetStalled`] if the
/// sumsets stop growing or exceed `dim L' * (p - 1)` rounds.
pub fn sum_depth(img: &ElementSet) -> Result<SumDepth> {
    let p = img.p;
    let d = img.base.dim();
    let size = img.size;
    let digits = |c: usize| -> Vec<u32> { decode_point(c, p, d).into_iter().map(Fp::value).collect() };
    let mut level = vec![0u16; size];
    let mut last = vec![0u32; size];
    let members: Vec<usize> = img.codes().collect();
    let member_digits: Vec<Vec<u32>> = members.iter().map(|&c| digits(c)).collect();
    for &c in &members {
        level[c] = 1;
    }
    let mut reached = members.len();
    let mut layer_sizes = vec![reached];
    let mut frontier = members.clone();
    let cap = (d * (p as usize - 1)).clamp(1, u16::MAX as usize);
    let mut rounds = 1;
    while reached < size {
        if frontier.is_empty() || rounds >= cap {
            return Err(Error::SumsetStalled {
                reached,
                total: size,
                rounds,
            });
        }
        rounds += 1;
        let mut next = Vec::new();
        for &s in &frontier {
            let ds = digits(s);
            for (&w, dw) in members.iter().zip(&member_digits) {
                let t = add_digits(&ds, dw, p);
                if level[t] == 0 {
                    level[t] = rounds as u16;
                    last[t] = w as u32;
                    next.push(t);
                }
            }
        }
        next.sort_unstable();
        reached += next.len();
        layer_sizes.push(reached);
        frontier = next;
    }
    Ok(SumDepth {
        depth: layer_sizes.len(),
        layer_sizes,
        base: img.base.clone(),
        p,
        level,
        last,
    })
}

/// Some `(x, y)` with `[x, y] = v`, if `v` is in the image.
pub fn bracket_preimage(l: &LieAlgebra, v: &[Fp], budget: u64) -> Result<Option<(Vec<Fp>, Vec<Fp>)>> {
    let n = l.dim();
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    if v.iter().all(|c| c.is_zero()) {
        return Ok(Some((vec![Fp::ZERO; n], vec![Fp::ZERO; n])));
    }
    let f = l.field();
    for x in noncentral_representatives(l, budget)? {
        let ad = l.ad_matrix(&x)?;
        if let Some(y) = solve(&f, &ad, v)? {
            return Ok(Some((x, y)));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BracketTerm {
    pub x: Vec<Fp>,
    pub y: Vec<Fp>,
    pub value: Vec<Fp>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageReport {
    pub derived_dim: usize,
    pub derived_size: usize,
    pub w_size: usize,
    pub equals_derived: bool,
    pub sum_depth: usize,
    /// Cumulative sizes of the sumsets `S_1, S_2, ...`.
    pub sumset_sizes: Vec<usize>,
    pub witness_missing: Option<Vec<Fp>>,
    /// The missing witness as a sum of brackets.
    pub witness_decomposition: Option<Vec<BracketTerm>>,
}

pub fn image_report(l: &LieAlgebra, budgets: &Budgets) -> Result<ImageReport> {
    let img = word_image(l, budgets)?;
    report_from_image(l, &img, budgets)
}

pub fn report_from_image(l: &LieAlgebra, img: &ElementSet, budgets: &Budgets) -> Result<ImageReport> {
    let depth = sum_depth(img)?;
    let witness = img.first_missing();
    let decomposition = match &witness {
        None => None,
        Some(v) => {
            let parts = depth.decompose(v)?.expect("witness lies in L'");
            let mut terms = Vec::with_capacity(parts.len());
            for value in parts {
                let (x, y) = bracket_preimage(l, &value, budgets.image)?
                    .expect("summands are image elements");
                terms.push(BracketTerm { x, y, value });
            }
            Some(terms)
        }
    };
    Ok(ImageReport {
        derived_dim: img.base.dim(),
        derived_size: img.size,
        w_size: img.len(),
        equals_derived: img.is_full(),
        sum_depth: depth.depth,
        sumset_sizes: depth.layer_sizes,
        witness_missing: witness,
        witness_decomposition: decomposition,
    })
}

/// Outcome of the covering search `L' = ⋃ [u_i, L]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Cover {
    /// `minimal` is true when no smaller cover exists.
    Found { elements: Vec<Vec<Fp>>, minimal: bool },
    /// No cover of at most `bound` elements; `exhaustive` is false if the
    /// search hit its node limit first.
    NoneWithinBound { bound: usize, exhaustive: bool },
    /// `w(L) != L'`, so no cover can exist.
    ImageProper,
}

/// Search nodes allowed in the exact phase of [`cover_certificate`].
pub const COVER_NODE_LIMIT: u64 = 5_000_000;

struct CoverSearch<'a> {
    sets: &'a [Vec<u64>],
    sizes: &'a [usize],
    size: usize,
    nodes: u64,
    exhausted: bool,
}

impl CoverSearch<'_> {
    fn first_uncovered(&self, covered: &[u64]) -> Option<usize> {
        for (w, word) in covered.iter().enumerate() {
            if *word != u64::MAX {
                let c = w * 64 + (!word).trailing_zeros() as usize;
                return (c < self.size).then_some(c);
            }
        }
        None
    }

    fn dfs(&mut self, covered: &[u64], n_covered: usize, left: usize, chosen: &mut Vec<usize>) -> bool {
        let Some(target) = self.first_uncovered(covered) else {
            return true;
        };
        if left == 0 || self.exhausted {
            return false;
        }
        let largest = self.sizes.iter().copied().max().unwrap_or(0);
        if n_covered + left * largest < self.size {
            return false;
        }
        for (i, s) in self.sets.iter().enumerate() {
            if s[target / 64] >> (target % 64) & 1 == 0 {
                continue;
            }
            self.nodes += 1;
            if self.nodes > COVER_NODE_LIMIT {
                self.exhausted = true;
                return false;
            }
            let next: Vec<u64> = covered.iter().zip(s).map(|(a, b)| a | b).collect();
            let count = next.iter().map(|w| w.count_ones() as usize).sum();
            chosen.push(i);
            if self.dfs(&next, count, left - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// Greedy cover, then iterative deepening for a minimum one, over the distinct
/// maximal images `Im(ad x)`.
pub fn cover_certificate(
    l: &LieAlgebra,
    img: &ElementSet,
    max_size: usize,
    budgets: &Budgets,
) -> Result<Cover> {
    if !img.is_full() {
        return Ok(Cover::ImageProper);
    }
    let derived = img.base.clone();
    let p = l.field().modulus();
    let size = img.size;
    let words = size.div_ceil(64);
    let mut full = vec![u64::MAX; words];
    if !size.is_multiple_of(64) {
        full[words - 1] = (1u64 << (size % 64)) - 1;
    }
    if derived.is_zero() {
        // L' = {0} is covered by the empty family.
        return Ok(Cover::Found {
            elements: Vec::new(),
            minimal: true,
        });
    }

    let mut seen: HashMap<Subspace, usize> = HashMap::new();
    let mut cands: Vec<(Vec<Fp>, Subspace)> = Vec::new();
    for x in noncentral_representatives(l, budgets.image)? {
        let s = ad_image(l, &derived, &x);
        if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(s.clone()) {
            e.insert(cands.len());
            cands.push((x, s));
        }
    }
    let keep: Vec<usize> = (0..cands.len())
        .filter(|&i| {
            !(0..cands.len()).any(|j| {
                j != i
                    && cands[j].1.dim() > cands[i].1.dim()
                    && cands[j].1.contains_subspace(&cands[i].1).expect("same ambient")
            })
        })
        .collect();
    let mut sets = Vec::with_capacity(keep.len());
    let mut sizes = Vec::with_capacity(keep.len());
    for &i in &keep {
        let mut bits = vec![0u64; words];
        for pt in cands[i].1.enumerate(u64::MAX)? {
            let c = point_code(&pt, p);
            bits[c / 64] |= 1 << (c % 64);
        }
        sizes.push(bits.iter().map(|w| w.count_ones() as usize).sum());
        sets.push(bits);
    }
    let pick = |chosen: &[usize]| -> Vec<Vec<Fp>> {
        chosen.iter().map(|&i| cands[keep[i]].0.clone()).collect()
    };

    // greedy upper bound
    let mut covered = vec![0u64; words];
    let mut greedy = Vec::new();
    while covered != full {
        let (best, gain) = sets
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let g: usize = s
                    .iter()
                    .zip(&covered)
                    .map(|(a, b)| (a & !b).count_ones() as usize)
                    .sum();
                (i, g)
            })
            .fold((0, 0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if gain == 0 {
            return Err(Error::InvalidAlgebra("ad images do not cover w(L)".into()));
        }
        for (a, b) in covered.iter_mut().zip(&sets[best]) {
            *a |= *b;
        }
        greedy.push(best);
    }

    let mut search = CoverSearch {
        sets: &sets,
        sizes: &sizes,
        size,
        nodes: 0,
        exhausted: false,
    };
    let upper = greedy.len().min(max_size + 1);
    for r in 1..upper {
        let mut chosen = Vec::new();
        if search.dfs(&vec![0u64; words], 0, r, &mut chosen) {
            return Ok(Cover::Found {
                elements: pick(&chosen),
                minimal: true,
            });
        }
        if search.exhausted {
            break;
        }
    }
    if greedy.len() <= max_size {
        Ok(Cover::Found {
            elements: pick(&greedy),
            minimal: !search.exhausted,
        })
    } else {
        Ok(Cover::NoneWithinBound {
            bound: max_size,
            exhaustive: !search.exhausted,
        })
    }
}

/// Outcome of the search for generators `u_1..u_4` with
/// `[u_1, u_2] = 0 = [u_3, u_4]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuadSearch {
    Found { quad: Vec<Vec<Fp>> },
    NoneExists,
    /// `dim L/L'` is not 4.
    Inapplicable { generators: usize },
}

impl QuadSearch {
    pub fn found(&self) -> Option<&[Vec<Fp>]> {
        match self {
            QuadSearch::Found { quad } => Some(quad),
            _ => None,
        }
    }
}

fn commute(l: &LieAlgebra, u: &[Fp], v: &[Fp]) -> bool {
    l.bracket_unchecked(u, v).iter().all(|c| c.is_zero())
}

fn rank_of(f: &PrimeField, rows: &[Vec<Fp>], cols: usize) -> usize {
    FpMatrix::from_rows(rows, cols).expect("row length").rank(f)
}

/// Searches vectors supported on the non-pivot coordinates of `L'`, up to
/// scaling. Generation only depends on the classes mod `L'`; the commutation
/// test is exact, and it is insensitive to `L'` components when `L'` is
/// central.
pub fn commuting_generating_quad(l: &LieAlgebra) -> Result<QuadSearch> {
    let derived = l.derived_subalgebra();
    let comp = derived.complement_coords();
    if comp.len() != 4 {
        return Ok(QuadSearch::Inapplicable {
            generators: comp.len(),
        });
    }
    let f = l.field();
    let n = l.dim();
    let e: Vec<Vec<Fp>> = comp.iter().map(|&i| unit(n, i)).collect();
    for (a, b, c, d) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
        if commute(l, &e[a], &e[b]) && commute(l, &e[c], &e[d]) {
            let quad = vec![e[a].clone(), e[b].clone(), e[c].clone(), e[d].clone()];
            return Ok(QuadSearch::Found { quad });
        }
    }

    // isotropic planes of the alternating map L/L' x L/L' -> L
    let points: Vec<Vec<Fp>> = projective_points(f, 4).collect();
    let lifted: Vec<Vec<Fp>> = points.iter().map(|q| embed(q, &comp, n)).collect();
    let mut seen = HashSet::new();
    let mut planes: Vec<Vec<Vec<Fp>>> = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if !commute(l, &lifted[i], &lifted[j]) {
                continue;
            }
            let m = FpMatrix::from_rows(&[points[i].clone(), points[j].clone()], 4)?;
            let red = rref(&f, &m);
            if seen.insert(red.matrix.entries().to_vec()) {
                planes.push(red.matrix.row_vectors());
            }
        }
    }
    for a in 0..planes.len() {
        for b in a + 1..planes.len() {
            let mut rows = planes[a].clone();
            rows.extend(planes[b].iter().cloned());
            if rank_of(&f, &rows, 4) == 4 {
                let quad: Vec<Vec<Fp>> = rows.iter().map(|q| embed(q, &comp, n)).collect();
                debug_assert!(l.generates(&quad)?);
                return Ok(QuadSearch::Found { quad });
            }
        }
    }
    Ok(QuadSearch::NoneExists)
}
