//! Arithmetic in the prime field F_p for odd p, plus the quadratic residue
//! helpers used to instantiate the non-square parameters of the catalog.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest modulus accepted. Products of two residues fit in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// A residue in `[0, p)`. The modulus lives in the [`PrimeField`] that
/// produced it.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
#[repr(transparent)]
pub struct Fp(u32);

impl Fp {
    pub const ZERO: Fp = Fp(0);
    pub const ONE: Fp = Fp(1);

    /// Wraps a value already known to be reduced.
    #[inline]
    pub(crate) const fn raw(v: u32) -> Fp {
        Fp(v)
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field F_p. Immutable and `Copy`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    /// Rejects even, composite and out-of-range moduli.
    pub fn new(p: u64) -> Result<Self> {
        if !(3..=MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Canonical residue of an arbitrary integer.
    #[inline]
    pub fn elem(&self, v: i64) -> Fp {
        Fp(v.rem_euclid(self.p as i64) as u32)
    }

    /// Residue of an unsigned integer.
    #[inline]
    pub fn from_u64(&self, v: u64) -> Fp {
        Fp((v % self.p as u64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Fp, b: Fp) -> Fp {
        let s = a.0 as u64 + b.0 as u64;
        let p = self.p as u64;
        Fp(if s >= p { s - p } else { s } as u32)
    }

    #[inline]
    pub fn sub(&self, a: Fp, b: Fp) -> Fp {
        if a.0 >= b.0 {
            Fp(a.0 - b.0)
        } else {
            Fp((a.0 as u64 + self.p as u64 - b.0 as u64) as u32)
        }
    }

    #[inline]
    pub fn neg(&self, a: Fp) -> Fp {
        if a.0 == 0 {
            a
        } else {
            Fp(self.p - a.0)
        }
    }

    #[inline]
    pub fn mul(&self, a: Fp, b: Fp) -> Fp {
        Fp(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }

    /// `a + b * c`
    #[inline]
    pub fn mul_add(&self, a: Fp, b: Fp, c: Fp) -> Fp {
        Fp(((a.0 as u64 + b.0 as u64 * c.0 as u64) % self.p as u64) as u32)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: Fp) -> Result<Fp> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero(self.p));
        }
        let (mut r0, mut r1) = (self.p as i64, a.0 as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.elem(t0))
    }

    pub fn div(&self, a: Fp, b: Fp) -> Result<Fp> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fp, mut e: u64) -> Fp {
        let mut base = a;
        let mut acc = Fp::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// All residues in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = Fp> {
        (0..self.p).map(Fp)
    }

    /// Nonzero residues in increasing order.
    pub fn units(&self) -> impl Iterator<Item = Fp> {
        (1..self.p).map(Fp)
    }

    /// Euler's criterion. Zero counts as a square.
    pub fn is_square(&self, a: Fp) -> bool {
        a.0 == 0 || self.pow(a, (self.p as u64 - 1) / 2) == Fp::ONE
    }

    /// Smallest positive quadratic non-residue.
    pub fn find_nonsquare(&self) -> Fp {
        self.units()
            .find(|&a| !self.is_square(a))
            .expect("every odd prime field has a non-residue")
    }

    /// Tonelli-Shanks. `None` for non-residues.
    pub fn sqrt(&self, a: Fp) -> Option<Fp> {
        if a.0 == 0 {
            return Some(Fp::ZERO);
        }
        if !self.is_square(a) {
            return None;
        }
        let p = self.p as u64;
        if p % 4 == 3 {
            return Some(self.pow(a, (p + 1) / 4));
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let z = self.find_nonsquare();
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, q.div_ceil(2));
        while t != Fp::ONE {
            let mut i = 0;
            let mut t2 = t;
            while t2 != Fp::ONE {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let b = self.pow(c, 1u64 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }

    /// Roots of `a t^2 + b t + c` in increasing order. Degrades to the linear
    /// case when `a = 0`.
    pub fn solve_quadratic(&self, a: Fp, b: Fp, c: Fp) -> Result<Vec<Fp>> {
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(Error::IdenticallyZero);
        }
        if a.is_zero() {
            if b.is_zero() {
                return Ok(Vec::new());
            }
            return Ok(vec![self.div(self.neg(c), b)?]);
        }
        let four_ac = self.mul(self.elem(4), self.mul(a, c));
        let disc = self.sub(self.mul(b, b), four_ac);
        let Some(root) = self.sqrt(disc) else {
            return Ok(Vec::new());
        };
        let two_a_inv = self.inv(self.mul(self.elem(2), a))?;
        let nb = self.neg(b);
        let mut roots = vec![
            self.mul(self.add(nb, root), two_a_inv),
            self.mul(self.sub(nb, root), two_a_inv),
        ];
        roots.sort();
        roots.dedup();
        Ok(roots)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}
