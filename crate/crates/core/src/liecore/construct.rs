//! Building new algebras from old: direct sums, central products, changes of
//! basis, quotients, subalgebras on a chosen basis and stem reduction.

use crate::error::{Error, Result};
use crate::gfp::Fp;
use crate::linalg::{FpMatrix, Frame, Subspace};

use super::{unit, LieAlgebra};

/// Identification of central subspaces for a central product. Column `j` of
/// `map` holds the coordinates, against `right`, of the image of `left[j]`.
#[derive(Debug, Clone)]
pub struct Gluing {
    pub left: Vec<Vec<Fp>>,
    pub right: Vec<Vec<Fp>>,
    pub map: FpMatrix,
}

impl Gluing {
    /// Identifies `left[j]` with `right[j]`.
    pub fn identity(left: Vec<Vec<Fp>>, right: Vec<Vec<Fp>>) -> Self {
        let map = FpMatrix::identity(left.len());
        Gluing { left, right, map }
    }
}

/// `L / I` on the complement spanned by the non-pivot coordinates of `I`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub algebra: LieAlgebra,
    /// Standard coordinates of `L` kept as the basis of the quotient.
    pub complement: Vec<usize>,
    /// `(dim L/I) x (dim L)` matrix of the projection.
    pub projection: FpMatrix,
    pub ideal: Subspace,
}

impl Quotient {
    pub fn project(&self, v: &[Fp]) -> Result<Vec<Fp>> {
        self.projection.mul_vec(&self.algebra.field(), v)
    }

    /// The representative of a quotient vector supported on the complement.
    pub fn lift(&self, v: &[Fp]) -> Vec<Fp> {
        let mut out = vec![Fp::ZERO; self.projection.cols()];
        for (c, &idx) in v.iter().zip(&self.complement) {
            out[idx] = *c;
        }
        out
    }
}

/// `L = S (+) A` with `S` stem and `A` central abelian.
#[derive(Debug, Clone)]
pub struct StemReduction {
    pub stem: LieAlgebra,
    pub abelian_dim: usize,
    /// Basis of `S` inside `L`; the stem algebra is expressed against it.
    pub stem_basis: Vec<Vec<Fp>>,
    pub abelian_basis: Vec<Vec<Fp>>,
}

impl LieAlgebra {
    pub fn direct_sum(&self, other: &LieAlgebra) -> Result<LieAlgebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        let (n1, n2) = (self.dim, other.dim);
        let n = n1 + n2;
        let mut sum = LieAlgebra::abelian(self.field, n)?;
        for i in 0..n1 {
            for j in 0..n1 {
                for k in 0..n1 {
                    let at = sum.index(i, j, k);
                    sum.sc[at] = self.constant(i, j, k);
                }
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                for k in 0..n2 {
                    let at = sum.index(n1 + i, n1 + j, n1 + k);
                    sum.sc[at] = other.constant(i, j, k);
                }
            }
        }
        if let (Some(a), Some(b)) = (self.name(), other.name()) {
            sum.name = Some(format!("{a} + {b}"));
        }
        Ok(sum)
    }

    /// Direct sum modulo the graph `{(u, -phi(u))}` of the gluing map.
    pub fn central_product(&self, other: &LieAlgebra, gluing: &Gluing) -> Result<LieAlgebra> {
        let k = gluing.left.len();
        if gluing.right.len() != k || gluing.map.rows() != k || gluing.map.cols() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: gluing.right.len(),
            });
        }
        let left = Frame::new(&self.field, gluing.left.clone(), self.dim)?;
        Frame::new(&other.field, gluing.right.clone(), other.dim)?;
        gluing.map.inverse(&self.field)?;
        let (z1, z2) = (self.center(), other.center());
        if !z1.contains_subspace(left.space())? {
            return Err(Error::NotCentral("left"));
        }
        for v in &gluing.right {
            if !z2.contains(v)? {
                return Err(Error::NotCentral("right"));
            }
        }
        let sum = self.direct_sum(other)?;
        let f = &self.field;
        let mut graph = Vec::with_capacity(k);
        for j in 0..k {
            let mut v = gluing.left[j].clone();
            let mut image = vec![Fp::ZERO; other.dim];
            for (i, r) in gluing.right.iter().enumerate() {
                let c = gluing.map.get(i, j);
                for (o, x) in image.iter_mut().zip(r) {
                    *o = f.mul_add(*o, c, *x);
                }
            }
            v.extend(image.into_iter().map(|x| f.neg(x)));
            graph.push(v);
        }
        let ideal = sum.span(&graph)?;
        let mut q = sum.quotient(&ideal)?.algebra;
        if let (Some(a), Some(b)) = (self.name(), other.name()) {
            q.name = Some(format!("{a} * {b}"));
        }
        Ok(q)
    }

    /// Transports the structure constants to the basis given by the columns
    /// of `t`, so `v -> t v` is an isomorphism from the result onto `self`.
    pub fn change_basis(&self, t: &FpMatrix) -> Result<LieAlgebra> {
        let n = self.dim;
        if t.rows() != n || t.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: t.rows(),
            });
        }
        let t_inv = t.inverse(&self.field)?;
        let cols: Vec<Vec<Fp>> = (0..n).map(|j| t.col(j)).collect();
        let mut out = LieAlgebra::abelian(self.field, n)?;
        for a in 0..n {
            for b in 0..n {
                let br = self.bracket_unchecked(&cols[a], &cols[b]);
                let coords = t_inv.mul_vec(&self.field, &br)?;
                for (c, v) in coords.into_iter().enumerate() {
                    let at = out.index(a, b, c);
                    out.sc[at] = v;
                }
            }
        }
        out.name = self.name.clone();
        Ok(out)
    }

    /// True iff `[L, I] ⊆ I`.
    pub fn is_ideal(&self, ideal: &Subspace) -> Result<bool> {
        if ideal.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: ideal.ambient_dim(),
            });
        }
        ideal.contains_subspace(&self.bracket_spaces(&self.full_space(), ideal))
    }

    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient> {
        if !self.is_ideal(ideal)? {
            return Err(Error::NotAnIdeal);
        }
        let complement = ideal.complement_coords();
        let m = complement.len();
        let n = self.dim;
        let mut projection = FpMatrix::zeros(m, n);
        for j in 0..n {
            let r = ideal.reduce(&unit(n, j))?;
            for (a, &c) in complement.iter().enumerate() {
                projection.set(a, j, r[c]);
            }
        }
        let mut algebra = LieAlgebra::abelian(self.field, m)?;
        for (a, &ca) in complement.iter().enumerate() {
            for (b, &cb) in complement.iter().enumerate() {
                let r = ideal.reduce(self.basis_bracket(ca, cb))?;
                for (c, &cc) in complement.iter().enumerate() {
                    let at = algebra.index(a, b, c);
                    algebra.sc[at] = r[cc];
                }
            }
        }
        Ok(Quotient {
            algebra,
            complement,
            projection,
            ideal: ideal.clone(),
        })
    }

    /// Structure constants of the subalgebra spanned by `basis`, expressed
    /// against that basis.
    pub fn subalgebra(&self, basis: Vec<Vec<Fp>>) -> Result<LieAlgebra> {
        let frame = Frame::new(&self.field, basis, self.dim)?;
        let s = frame.len();
        let mut out = LieAlgebra::abelian(self.field, s)?;
        for a in 0..s {
            for b in a + 1..s {
                let br = self.bracket_unchecked(&frame.vectors()[a], &frame.vectors()[b]);
                let coords = frame.coordinates(&br)?.ok_or(Error::NotClosed)?;
                for (c, v) in coords.into_iter().enumerate() {
                    let ab = out.index(a, b, c);
                    let ba = out.index(b, a, c);
                    out.sc[ab] = v;
                    out.sc[ba] = self.field.neg(v);
                }
            }
        }
        Ok(out)
    }

    /// Splits off a central abelian factor: `A` complements `Z ∩ L'` in `Z`,
    /// and `S` is a complement of `A` containing `L'`.
    pub fn stem_reduce(&self) -> Result<StemReduction> {
        self.nilpotency_class()?;
        let derived = self.derived_subalgebra();
        let center = self.center();
        let core = center.intersect(&derived)?;
        let mut abelian_basis = Vec::new();
        let mut acc = core.clone();
        for z in center.basis_vectors() {
            if !acc.contains(&z)? {
                acc = acc.sum(&self.span(std::slice::from_ref(&z))?)?;
                abelian_basis.push(z);
            }
        }
        if abelian_basis.is_empty() {
            return Ok(StemReduction {
                stem: self.clone(),
                abelian_dim: 0,
                stem_basis: (0..self.dim).map(|i| unit(self.dim, i)).collect(),
                abelian_basis,
            });
        }
        let abelian = self.span(&abelian_basis)?;
        // Grow L' by unit vectors while staying independent of A.
        let mut stem_space = derived.clone();
        for i in 0..self.dim {
            if stem_space.dim() + abelian.dim() == self.dim {
                break;
            }
            let e = unit(self.dim, i);
            let grown = stem_space.sum(&self.span(&[e])?)?;
            if grown.dim() > stem_space.dim() && grown.intersect(&abelian)?.is_zero() {
                stem_space = grown;
            }
        }
        let stem_basis = stem_space.basis_vectors();
        let mut stem = self.subalgebra(stem_basis.clone())?;
        stem.name = self.name.as_ref().map(|n| format!("stem({n})"));
        Ok(StemReduction {
            stem,
            abelian_dim: abelian_basis.len(),
            stem_basis,
            abelian_basis,
        })
    }
}
