//! Heisenberg normal form for breadth-one algebras and the check that
//! `Z(L) ∩ L'` is never a hyperplane of `L'` in class at least 4.

use serde::Serialize;

use crate::error::Result;
use crate::gfp::Fp;
use crate::linalg::{Frame, Subspace};

use super::{unit, LieAlgebra};

/// `[x_i, y_j] = δ_ij z_0`, every other basis bracket zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeisenbergBasis {
    pub x: Vec<Vec<Fp>>,
    pub y: Vec<Vec<Fp>>,
    pub z: Vec<Vec<Fp>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HeisenbergForm {
    Basis(HeisenbergBasis),
    NotBreadthOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MaximalityCheck {
    Consistent { codim: usize },
    Violated { codim: usize },
    Inapplicable { class: usize },
}

impl HeisenbergBasis {
    pub fn m(&self) -> usize {
        self.x.len()
    }

    /// Ordered basis `x_1, y_1, ..., x_m, y_m, z_1, ...`.
    pub fn ordered(&self) -> Vec<Vec<Fp>> {
        let mut out = Vec::with_capacity(2 * self.x.len() + self.z.len());
        for (x, y) in self.x.iter().zip(&self.y) {
            out.push(x.clone());
            out.push(y.clone());
        }
        out.extend(self.z.iter().cloned());
        out
    }

    /// Rechecks the whole bracket table and that the vectors form a basis.
    pub fn verify(&self, l: &LieAlgebra) -> bool {
        let basis = self.ordered();
        if basis.len() != l.dim() || Frame::new(&l.field(), basis.clone(), l.dim()).is_err() {
            return false;
        }
        let Some(z0) = self.z.first() else {
            return false;
        };
        let zero = vec![Fp::ZERO; l.dim()];
        let m = self.m();
        for (a, u) in basis.iter().enumerate() {
            for (b, v) in basis.iter().enumerate() {
                let expect = if a < 2 * m && b < 2 * m && a / 2 == b / 2 && a != b {
                    if a % 2 == 0 {
                        z0.clone()
                    } else {
                        z0.iter().map(|c| l.field().neg(*c)).collect()
                    }
                } else {
                    zero.clone()
                };
                if l.bracket_unchecked(u, v) != expect {
                    return false;
                }
            }
        }
        true
    }
}

impl LieAlgebra {
    /// Symplectic Gram-Schmidt on the form `[u, v] = ω(u, v) z_0`, where
    /// `z_0` spans `L'`.
    pub fn heisenberg_normal_form(&self) -> Result<HeisenbergForm> {
        self.nilpotency_class()?;
        let derived = self.derived_subalgebra();
        if derived.dim() != 1 {
            return Ok(HeisenbergForm::NotBreadthOne);
        }
        let f = self.field;
        let n = self.dim;
        let z0 = derived.basis_vectors().remove(0);
        let pivot = derived.pivots()[0];
        let omega = |u: &[Fp], v: &[Fp]| self.bracket_unchecked(u, v)[pivot];
        let combo = |u: &[Fp], a: Fp, v: &[Fp]| -> Vec<Fp> {
            u.iter().zip(v).map(|(s, t)| f.mul_add(*s, a, *t)).collect()
        };

        let mut rest: Vec<Vec<Fp>> = (0..n).map(|i| unit(n, i)).collect();
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        loop {
            let found = (0..rest.len()).find_map(|a| {
                (a + 1..rest.len())
                    .find(|&b| !omega(&rest[a], &rest[b]).is_zero())
                    .map(|b| (a, b))
            });
            let Some((a, b)) = found else { break };
            let v = rest.remove(b);
            let x = rest.remove(a);
            let s = f.inv(omega(&x, &v))?;
            let y: Vec<Fp> = v.iter().map(|c| f.mul(*c, s)).collect();
            for w in rest.iter_mut() {
                let (wy, wx) = (omega(w, &y), omega(w, &x));
                *w = combo(&combo(w, f.neg(wy), &x), wx, &y);
            }
            xs.push(x);
            ys.push(y);
        }

        let mut z = vec![z0.clone()];
        let mut zs = Subspace::span(&f, &z, n)?;
        for r in rest {
            if !zs.contains(&r)? {
                zs = zs.sum(&Subspace::span(&f, std::slice::from_ref(&r), n)?)?;
                z.push(r);
            }
        }
        Ok(HeisenbergForm::Basis(HeisenbergBasis { x: xs, y: ys, z }))
    }

    /// Measures the codimension of `Z(L) ∩ L'` in `L'`; it must not be 1 once
    /// the class reaches 4.
    pub fn check_z_cap_maximality(&self) -> Result<MaximalityCheck> {
        let class = self.nilpotency_class()?;
        if class < 4 {
            return Ok(MaximalityCheck::Inapplicable { class });
        }
        let derived = self.derived_subalgebra();
        let codim = derived.dim() - self.center().intersect(&derived)?.dim();
        Ok(if codim == 1 {
            MaximalityCheck::Violated { codim }
        } else {
            MaximalityCheck::Consistent { codim }
        })
    }
}
