//! Dense exact linear algebra over F_p and the subspace lattice.
//!
//! Subspaces are kept in reduced row-echelon form, so two subspaces are equal
//! as sets exactly when their stored bases are equal.

use crate::error::{Error, Result};
use crate::gfp::{Fp, PrimeField};

/// Default cap on the number of points [`Subspace::enumerate`] may produce.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

/// Row-major dense matrix. Carries no field; operations take one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Fp>,
}

impl FpMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Fp>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(FpMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        FpMatrix {
            rows,
            cols,
            data: vec![Fp::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Fp::ONE);
        }
        m
    }

    /// Builds a matrix whose rows are `rows`. Every row must have length `cols`.
    pub fn from_rows(rows: &[Vec<Fp>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(FpMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are `cols`.
    pub fn from_cols(cols: &[Vec<Fp>], rows: usize) -> Result<Self> {
        Ok(Self::from_rows(cols, rows)?.transpose())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fp {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fp) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Fp] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Fp> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Fp>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Fp] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul_vec(&self, field: &PrimeField, v: &[Fp]) -> Result<Vec<Fp>> {
        check_len(self.cols, v.len())?;
        Ok((0..self.rows)
            .map(|r| dot(field, self.row(r), v))
            .collect())
    }

    pub fn mul(&self, field: &PrimeField, other: &FpMatrix) -> Result<FpMatrix> {
        check_len(self.cols, other.rows)?;
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = field.mul_add(out.get(r, c), a, other.get(k, c));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn rank(&self, field: &PrimeField) -> usize {
        rref(field, self).rank
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self, field: &PrimeField) -> Result<FpMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Self::zeros(0, 0));
        }
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, Fp::ONE);
        }
        let red = rref(field, &aug);
        if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.matrix.get(r, n + c));
            }
        }
        Ok(inv)
    }
}

#[inline]
fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

pub(crate) fn dot(field: &PrimeField, a: &[Fp], b: &[Fp]) -> Fp {
    let p = field.modulus() as u64;
    let mut acc = 0u64;
    for (x, y) in a.iter().zip(b) {
        acc = (acc + x.value() as u64 * y.value() as u64) % p;
    }
    field.from_u64(acc)
}

/// Result of row reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row-echelon form. Pivots are the first nonzero entries scanning
/// each column top to bottom; rows below the rank are zero.
pub fn rref(field: &PrimeField, m: &FpMatrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                a.data.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = field.inv(a.get(r, c)).expect("pivot is nonzero");
        for j in c..cols {
            let v = field.mul(a.get(r, j), inv);
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c);
            if f.is_zero() {
                continue;
            }
            let nf = field.neg(f);
            for j in c..cols {
                let v = field.mul_add(a.get(i, j), nf, a.get(r, j));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        matrix: a,
        rank: r,
        pivots,
    }
}

/// Basis of `{ v : m v = 0 }`.
pub fn nullspace(field: &PrimeField, m: &FpMatrix) -> Subspace {
    let n = m.cols;
    let red = rref(field, m);
    let free: Vec<usize> = (0..n).filter(|c| !red.pivots.contains(c)).collect();
    let mut vecs = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Fp::ZERO; n];
        v[f] = Fp::ONE;
        for (r, &pc) in red.pivots.iter().enumerate() {
            v[pc] = field.neg(red.matrix.get(r, f));
        }
        vecs.push(v);
    }
    Subspace::span(field, &vecs, n).expect("kernel vectors have the ambient length")
}

/// One solution of `a y = b`, or `None` if the system is inconsistent.
pub fn solve(field: &PrimeField, a: &FpMatrix, b: &[Fp]) -> Result<Option<Vec<Fp>>> {
    check_len(a.rows, b.len())?;
    let n = a.cols;
    let mut aug = FpMatrix::zeros(a.rows, n + 1);
    for (r, &br) in b.iter().enumerate() {
        for c in 0..n {
            aug.set(r, c, a.get(r, c));
        }
        aug.set(r, n, br);
    }
    let red = rref(field, &aug);
    if red.pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut y = vec![Fp::ZERO; n];
    for (r, &pc) in red.pivots.iter().enumerate() {
        y[pc] = red.matrix.get(r, n);
    }
    Ok(Some(y))
}

/// Encodes coordinates as `sum coord_i * p^i`.
#[inline]
pub fn point_code(coords: &[Fp], p: u32) -> usize {
    coords
        .iter()
        .rev()
        .fold(0usize, |acc, c| acc * p as usize + c.value() as usize)
}

/// Inverse of [`point_code`].
pub fn decode_point(mut code: usize, p: u32, len: usize) -> Vec<Fp> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(Fp::raw((code % p as usize) as u32));
        code /= p as usize;
    }
    out
}

/// `p^k`, or `None` when it overflows.
pub fn checked_power(p: u32, k: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc = acc.checked_mul(p as u128)?;
    }
    Some(acc)
}

/// Fails with [`Error::EnumerationTooLarge`] when `p^k > budget`.
pub fn check_budget(p: u32, k: usize, budget: u64) -> Result<u128> {
    match checked_power(p, k) {
        Some(size) if size <= budget as u128 => Ok(size),
        Some(size) => Err(Error::EnumerationTooLarge { size, budget }),
        None => Err(Error::EnumerationTooLarge {
            size: u128::MAX,
            budget,
        }),
    }
}

/// Normalized representatives (first nonzero coordinate 1) of the projective
/// points of F_p^m, in lexicographic order. Yields `(p^m - 1)/(p - 1)` vectors.
pub fn projective_points(field: PrimeField, m: usize) -> ProjectivePoints {
    ProjectivePoints {
        field,
        m,
        lead: 0,
        tail: None,
    }
}

pub fn projective_count(p: u32, m: usize) -> Option<u128> {
    checked_power(p, m).map(|q| (q - 1) / (p as u128 - 1))
}

pub struct ProjectivePoints {
    field: PrimeField,
    m: usize,
    lead: usize,
    tail: Option<Vec<Fp>>,
}

impl Iterator for ProjectivePoints {
    type Item = Vec<Fp>;

    fn next(&mut self) -> Option<Vec<Fp>> {
        loop {
            if self.lead >= self.m {
                return None;
            }
            let len = self.m - self.lead - 1;
            match &mut self.tail {
                None => {
                    self.tail = Some(vec![Fp::ZERO; len]);
                }
                Some(t) => {
                    if !odometer_step(&self.field, t) {
                        self.lead += 1;
                        self.tail = None;
                        continue;
                    }
                }
            }
            let t = self.tail.as_ref().expect("tail set above");
            let mut v = vec![Fp::ZERO; self.m];
            v[self.lead] = Fp::ONE;
            v[self.lead + 1..].copy_from_slice(t);
            return Some(v);
        }
    }
}

/// Advances `digits` lexicographically with the last digit fastest; returns
/// false after wrapping around to all zeros.
fn odometer_step(field: &PrimeField, digits: &mut [Fp]) -> bool {
    for d in digits.iter_mut().rev() {
        let next = field.add(*d, Fp::ONE);
        *d = next;
        if !next.is_zero() {
            return true;
        }
    }
    false
}

/// A subspace of F_p^n in canonical (RREF) form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: PrimeField,
    ambient_dim: usize,
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: FpMatrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: FpMatrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Canonical span of `vectors`.
    pub fn span(field: &PrimeField, vectors: &[Vec<Fp>], ambient_dim: usize) -> Result<Self> {
        let m = FpMatrix::from_rows(vectors, ambient_dim)?;
        Ok(Self::from_rref(*field, rref(field, &m), ambient_dim))
    }

    fn from_rref(field: PrimeField, red: Rref, ambient_dim: usize) -> Self {
        let mut data = red.matrix.data;
        data.truncate(red.rank * ambient_dim);
        Subspace {
            field,
            ambient_dim,
            basis: FpMatrix {
                rows: red.rank,
                cols: ambient_dim,
                data,
            },
            pivots: red.pivots,
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Fp>> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Standard coordinates that are not pivots; the matching unit vectors
    /// span a complement.
    pub fn complement_coords(&self) -> Vec<usize> {
        (0..self.ambient_dim)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        check_len(self.ambient_dim, other.ambient_dim)
    }

    /// Remainder of `v` after eliminating against the basis; zero iff `v` lies
    /// in the subspace.
    pub fn reduce(&self, v: &[Fp]) -> Result<Vec<Fp>> {
        check_len(self.ambient_dim, v.len())?;
        let k = &self.field;
        let mut out = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let f = out[pc];
            if f.is_zero() {
                continue;
            }
            let nf = k.neg(f);
            for (o, b) in out.iter_mut().zip(self.basis.row(r)) {
                *o = k.mul_add(*o, nf, *b);
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[Fp]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|c| c.is_zero()))
    }

    /// Coordinates of `v` against the canonical basis, if `v` lies here.
    /// For a member these are just the entries at the pivot columns.
    pub fn coordinates(&self, v: &[Fp]) -> Result<Option<Vec<Fp>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&c| v[c]).collect()))
    }

    /// The vector with the given coordinates against the canonical basis.
    pub fn combine(&self, coords: &[Fp]) -> Result<Vec<Fp>> {
        check_len(self.dim(), coords.len())?;
        let k = &self.field;
        let mut out = vec![Fp::ZERO; self.ambient_dim];
        for (r, &c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.basis.row(r)) {
                *o = k.mul_add(*o, c, *b);
            }
        }
        Ok(out)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.compatible(other)?;
        for v in other.basis_vectors() {
            if !self.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Subspace::span(&self.field, &rows, self.ambient_dim)
    }

    /// Zassenhaus: reduce `[[A, A], [B, 0]]`; rows with a zero left half carry
    /// the intersection in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let n = self.ambient_dim;
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for v in self.basis_vectors() {
            let mut r = v.clone();
            r.extend(v);
            rows.push(r);
        }
        for v in other.basis_vectors() {
            let mut r = v;
            r.extend(std::iter::repeat_n(Fp::ZERO, n));
            rows.push(r);
        }
        let red = rref(&self.field, &FpMatrix::from_rows(&rows, 2 * n)?);
        let mut inter = Vec::new();
        for (r, &pc) in red.pivots.iter().enumerate() {
            if pc >= n {
                inter.push(red.matrix.row(r)[n..].to_vec());
            }
        }
        Subspace::span(&self.field, &inter, n)
    }

    /// All `p^dim` vectors, each exactly once.
    pub fn enumerate(&self, budget: u64) -> Result<SubspacePoints<'_>> {
        check_budget(self.field.modulus(), self.dim(), budget)?;
        Ok(SubspacePoints {
            space: self,
            coeffs: vec![Fp::ZERO; self.dim()],
            current: vec![Fp::ZERO; self.ambient_dim],
            done: false,
        })
    }
}

/// An ordered basis of a subspace, with coordinates taken against that basis
/// rather than the canonical one.
#[derive(Debug, Clone)]
pub struct Frame {
    vectors: Vec<Vec<Fp>>,
    space: Subspace,
    // canonical coordinates -> frame coordinates
    to_frame: FpMatrix,
}

impl Frame {
    /// Fails with [`Error::Singular`] when the vectors are dependent.
    pub fn new(field: &PrimeField, vectors: Vec<Vec<Fp>>, ambient_dim: usize) -> Result<Self> {
        let space = Subspace::span(field, &vectors, ambient_dim)?;
        if space.dim() != vectors.len() {
            return Err(Error::Singular);
        }
        let s = vectors.len();
        let mut m = FpMatrix::zeros(s, s);
        for (i, v) in vectors.iter().enumerate() {
            for (j, &pc) in space.pivots().iter().enumerate() {
                m.set(j, i, v[pc]);
            }
        }
        let to_frame = m.inverse(field)?;
        Ok(Frame {
            vectors,
            space,
            to_frame,
        })
    }

    pub fn vectors(&self) -> &[Vec<Fp>] {
        &self.vectors
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Coordinates of `v` against the frame, if `v` lies in its span.
    pub fn coordinates(&self, v: &[Fp]) -> Result<Option<Vec<Fp>>> {
        match self.space.coordinates(v)? {
            None => Ok(None),
            Some(c) => Ok(Some(self.to_frame.mul_vec(&self.space.field(), &c)?)),
        }
    }
}

/// Iterator over the points of a subspace. Consecutive points differ by one
/// basis vector added to the running sum.
pub struct SubspacePoints<'a> {
    space: &'a Subspace,
    coeffs: Vec<Fp>,
    current: Vec<Fp>,
    done: bool,
}

impl Iterator for SubspacePoints<'_> {
    type Item = Vec<Fp>;

    fn next(&mut self) -> Option<Vec<Fp>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let k = self.space.field;
        self.done = true;
        for r in 0..self.coeffs.len() {
            // Adding the basis row p times wraps the running sum back, so one
            // addition per touched digit keeps `current` in sync.
            for (o, b) in self.current.iter_mut().zip(self.space.basis.row(r)) {
                *o = k.add(*o, *b);
            }
            self.coeffs[r] = k.add(self.coeffs[r], Fp::ONE);
            if !self.coeffs[r].is_zero() {
                self.done = false;
                break;
            }
        }
        Some(out)
    }
}
