//! Lie algebras given by structure constants, and the structural operations
//! the word-map analysis needs: series, centers, centralizers, generation.
//!
//! Presentations list only the nonzero basis brackets `[e_i, e_j]` with
//! `i < j`; every unlisted pair brackets to zero and the `j > i` half of the
//! tensor is filled in by antisymmetry.

mod construct;
mod normal_form;

pub use construct::{Gluing, Quotient, StemReduction};
pub use normal_form::{HeisenbergBasis, HeisenbergForm, MaximalityCheck};

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfp::{Fp, PrimeField};
use crate::linalg::{nullspace, FpMatrix, Subspace};

/// Standard basis vector `e_i` of F_p^n.
pub fn unit(n: usize, i: usize) -> Vec<Fp> {
    let mut v = vec![Fp::ZERO; n];
    v[i] = Fp::ONE;
    v
}

/// A finite-dimensional Lie algebra over F_p. `sc[(i*n + j)*n + k]` is the
/// coefficient of `e_k` in `[e_i, e_j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    field: PrimeField,
    dim: usize,
    sc: Vec<Fp>,
    name: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `c[i][j][k] != -c[j][i][k]` (for `i == j`: `c[i][i][k] != 0`).
    Antisymmetry { i: usize, j: usize, k: usize },
    /// Jacobi fails on the basis triple `i < j < l`.
    Jacobi { i: usize, j: usize, l: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Antisymmetry { i, j, k } => {
                write!(f, "antisymmetry violated at ({i}, {j}, {k})")
            }
            Violation::Jacobi { i, j, l } => write!(f, "Jacobi identity fails on ({i}, {j}, {l})"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The lower central series `L^0 = L, L^{i+1} = [L, L^i]`, computed until it
/// reaches zero or stabilizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralSeries {
    pub terms: Vec<Subspace>,
}

impl CentralSeries {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.terms.last().is_none_or(Subspace::is_zero)
    }

    /// Least `c` with `L^c = 0`; `None` if the series stalls.
    pub fn class(&self) -> Option<usize> {
        self.is_nilpotent().then(|| self.terms.len() - 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub dim: usize,
    pub lcs_dims: Vec<usize>,
    pub derived_dim: usize,
    pub nilpotent: bool,
    pub class: Option<usize>,
    pub center_dim: usize,
    pub is_stem: bool,
    pub min_generators: usize,
}

/// `(i, j, [(k, c), ...])` meaning `[e_i, e_j] = sum c e_k`.
pub type BracketEntry = (usize, usize, Vec<(usize, i64)>);

impl LieAlgebra {
    /// Wraps a raw tensor without checking the Lie axioms; see [`Self::validate`].
    /// Dimension 0 is allowed (the stem part of an abelian algebra).
    pub fn new(field: PrimeField, dim: usize, sc: Vec<Fp>) -> Result<Self> {
        if sc.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                found: sc.len(),
            });
        }
        Ok(LieAlgebra {
            field,
            dim,
            sc,
            name: None,
        })
    }

    pub fn abelian(field: PrimeField, dim: usize) -> Result<Self> {
        Self::new(field, dim, vec![Fp::ZERO; dim * dim * dim])
    }

    /// Builds an algebra from the brackets `[e_i, e_j] = sum coeff * e_k` for
    /// `i < j`, closing under antisymmetry, then validates it.
    pub fn from_brackets(
        field: PrimeField,
        dim: usize,
        brackets: &[BracketEntry],
    ) -> Result<Self> {
        Self::from_brackets_raw(field, dim, brackets)?.checked()
    }

    /// As [`Self::from_brackets`] but leaves the Jacobi check to the caller.
    pub fn from_brackets_raw(
        field: PrimeField,
        dim: usize,
        brackets: &[BracketEntry],
    ) -> Result<Self> {
        let mut l = Self::abelian(field, dim)?;
        for (i, j, terms) in brackets {
            let (i, j) = (*i, *j);
            if i >= j || j >= dim {
                return Err(Error::InvalidParameter(format!(
                    "bracket ({i}, {j}) needs i < j < {dim}"
                )));
            }
            for &(k, c) in terms {
                if k >= dim {
                    return Err(Error::InvalidParameter(format!("basis index {k} out of range")));
                }
                let c = field.elem(c);
                let ij = l.index(i, j, k);
                let ji = l.index(j, i, k);
                l.sc[ij] = field.add(l.sc[ij], c);
                l.sc[ji] = field.neg(l.sc[ij]);
            }
        }
        Ok(l)
    }

    /// Returns `self` if it satisfies antisymmetry and Jacobi.
    pub fn checked(self) -> Result<Self> {
        let report = self.validate();
        match report.violations.first() {
            None => Ok(self),
            Some(v) => Err(Error::InvalidAlgebra(v.to_string())),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    #[inline]
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Fp {
        self.sc[self.index(i, j, k)]
    }

    /// `[e_i, e_j]` as a slice of length `dim`.
    #[inline]
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Fp] {
        let s = self.index(i, j, 0);
        &self.sc[s..s + self.dim]
    }

    pub fn tensor(&self) -> &[Fp] {
        &self.sc
    }

    /// Every antisymmetry and Jacobi violation of the stored tensor.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim;
        let k = &self.field;
        let mut violations = Vec::new();
        for i in 0..n {
            for j in i..n {
                for c in 0..n {
                    let ok = if i == j {
                        self.constant(i, i, c).is_zero()
                    } else {
                        k.add(self.constant(i, j, c), self.constant(j, i, c)).is_zero()
                    };
                    if !ok {
                        violations.push(Violation::Antisymmetry { i, j, k: c });
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    let (ei, ej, el) = (unit(n, i), unit(n, j), unit(n, l));
                    let a = self.bracket_unchecked(&ei, self.basis_bracket(j, l));
                    let b = self.bracket_unchecked(&ej, self.basis_bracket(l, i));
                    let c = self.bracket_unchecked(&el, self.basis_bracket(i, j));
                    let zero = (0..n).all(|t| k.add(k.add(a[t], b[t]), c[t]).is_zero());
                    if !zero {
                        violations.push(Violation::Jacobi { i, j, l });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    fn check_vec(&self, v: &[Fp]) -> Result<()> {
        if v.len() == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            })
        }
    }

    /// `[x, y]` in the standard basis.
    pub fn bracket(&self, x: &[Fp], y: &[Fp]) -> Result<Vec<Fp>> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Fp], y: &[Fp]) -> Vec<Fp> {
        let n = self.dim;
        let p = self.field.modulus() as u64;
        let mut acc = vec![0u64; n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let coef = (xi.value() as u64 * yj.value() as u64) % p;
                for (a, c) in acc.iter_mut().zip(self.basis_bracket(i, j)) {
                    *a = (*a + coef * c.value() as u64) % p;
                }
            }
        }
        acc.into_iter().map(|a| self.field.from_u64(a)).collect()
    }

    /// Matrix of `ad x`; column `j` is `[x, e_j]`.
    pub fn ad_matrix(&self, x: &[Fp]) -> Result<FpMatrix> {
        self.check_vec(x)?;
        let n = self.dim;
        let cols: Vec<Vec<Fp>> = (0..n).map(|j| self.bracket_unchecked(x, &unit(n, j))).collect();
        FpMatrix::from_cols(&cols, n)
    }

    /// `span { [a, b] : a in A, b in B }`.
    pub fn bracket_spaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vecs = Vec::with_capacity(a.dim() * b.dim());
        for u in a.basis_vectors() {
            for v in b.basis_vectors() {
                vecs.push(self.bracket_unchecked(&u, &v));
            }
        }
        Subspace::span(&self.field, &vecs, self.dim).expect("brackets have length dim")
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    pub fn span(&self, vectors: &[Vec<Fp>]) -> Result<Subspace> {
        Subspace::span(&self.field, vectors, self.dim)
    }

    /// `L' = [L, L]`, the span of all basis brackets.
    pub fn derived_subalgebra(&self) -> Subspace {
        let n = self.dim;
        let mut vecs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let b = self.basis_bracket(i, j);
                if b.iter().any(|c| !c.is_zero()) {
                    vecs.push(b.to_vec());
                }
            }
        }
        Subspace::span(&self.field, &vecs, n).expect("brackets have length dim")
    }

    pub fn lower_central_series(&self) -> CentralSeries {
        let full = self.full_space();
        let mut terms = vec![full.clone()];
        loop {
            let last = terms.last().expect("series starts with L");
            if last.is_zero() {
                break;
            }
            let next = self.bracket_spaces(&full, last);
            if next == *last {
                break;
            }
            terms.push(next);
        }
        CentralSeries { terms }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().is_nilpotent()
    }

    /// Nilpotency class, or [`Error::NotNilpotent`].
    pub fn nilpotency_class(&self) -> Result<usize> {
        let lcs = self.lower_central_series();
        lcs.class().ok_or_else(|| {
            Error::NotNilpotent(lcs.terms.last().map_or(0, Subspace::dim))
        })
    }

    /// `{ y : [y, s] = 0 for all s in S }`.
    pub fn centralizer(&self, s: &Subspace) -> Subspace {
        let n = self.dim;
        // [y, s] = -ad(s) y, so stack the ad matrices of the basis of S.
        let mut rows = Vec::with_capacity(s.dim() * n);
        for v in s.basis_vectors() {
            let ad = self.ad_matrix(&v).expect("basis vectors have length dim");
            rows.extend(ad.row_vectors());
        }
        let m = FpMatrix::from_rows(&rows, n).expect("ad rows have length dim");
        nullspace(&self.field, &m)
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&self.full_space())
    }

    /// For nilpotent algebras the Frattini subalgebra is `L'`.
    pub fn frattini(&self) -> Result<Subspace> {
        self.nilpotency_class()?;
        Ok(self.derived_subalgebra())
    }

    /// True iff `S` generates `L`, i.e. its image spans `L / L'`. This is the
    /// Frattini criterion and assumes `L` nilpotent.
    pub fn generates(&self, s: &[Vec<Fp>]) -> Result<bool> {
        for v in s {
            self.check_vec(v)?;
        }
        let span = self.span(s)?.sum(&self.derived_subalgebra())?;
        Ok(span.dim() == self.dim)
    }

    pub fn is_stem(&self) -> bool {
        self.derived_subalgebra()
            .contains_subspace(&self.center())
            .expect("same ambient space")
    }

    pub fn structure_report(&self) -> StructureReport {
        let lcs = self.lower_central_series();
        let derived_dim = lcs.terms.get(1).map_or(0, Subspace::dim);
        StructureReport {
            dim: self.dim,
            lcs_dims: lcs.dims(),
            derived_dim,
            nilpotent: lcs.is_nilpotent(),
            class: lcs.class(),
            center_dim: self.center().dim(),
            is_stem: self.is_stem(),
            min_generators: self.dim - derived_dim,
        }
    }
}
