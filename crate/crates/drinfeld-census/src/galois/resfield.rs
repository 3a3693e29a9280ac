//! The residue field A/ell with elements addressed by canonical index.
//!
//! An element is the integer whose base-q digits are the coefficients of its
//! residue polynomial, so indices 0..q_l enumerate the field in the same
//! order as [`ExtFieldCtx::elements`].  Arithmetic is table-driven; the
//! tables are q_l^2 entries, which is why construction is guarded.

use crate::ext::{ExtElem, ExtFieldCtx};
use crate::field::FieldCtx;
use crate::poly::{FqPoly, PrimeIdeal};
use crate::{Error, Result};

pub struct ResidueField {
    prime: PrimeIdeal,
    ext: ExtFieldCtx,
    q_l: u32,
    elems: Vec<ExtElem>,
    add_t: Vec<u16>,
    mul_t: Vec<u16>,
    neg_t: Vec<u16>,
    inv_t: Vec<u16>,
}

impl ResidueField {
    /// Tables for A/ell.  Guard: q^deg ell <= 2^10.
    pub fn new(k: &FieldCtx, ell: &PrimeIdeal) -> Result<ResidueField> {
        let raw = (k.q() as u64).checked_pow(ell.degree() as u32);
        let q_l = match raw {
            Some(n) if n <= 1 << 10 => n as u32,
            _ => return Err(Error::GroupTooLarge(raw.unwrap_or(u64::MAX))),
        };
        let ext = ExtFieldCtx::with_modulus(k, ell.gen())?;
        let elems: Vec<ExtElem> = ext.elements().collect();
        debug_assert_eq!(elems.len(), q_l as usize);
        let n = q_l as usize;
        let idx = |e: &[u8]| -> u16 {
            let mut v = 0u32;
            for &d in e.iter().rev() {
                v = v * k.q() + d as u32;
            }
            v as u16
        };
        let mut add_t = vec![0u16; n * n];
        let mut mul_t = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..=i {
                let s = idx(&ext.add(&elems[i], &elems[j]));
                let p = idx(&ext.mul(&elems[i], &elems[j]));
                add_t[i * n + j] = s;
                add_t[j * n + i] = s;
                mul_t[i * n + j] = p;
                mul_t[j * n + i] = p;
            }
        }
        let neg_t: Vec<u16> = (0..n).map(|i| idx(&ext.neg(&elems[i]))).collect();
        let mut inv_t = vec![0u16; n];
        for (i, t) in inv_t.iter_mut().enumerate().skip(1) {
            *t = idx(&ext.inv(&elems[i]).expect("nonzero"));
        }
        Ok(ResidueField {
            prime: ell.clone(),
            ext,
            q_l,
            elems,
            add_t,
            mul_t,
            neg_t,
            inv_t,
        })
    }

    pub fn q_l(&self) -> u32 {
        self.q_l
    }

    pub fn degree(&self) -> usize {
        self.prime.degree()
    }

    pub fn prime(&self) -> &PrimeIdeal {
        &self.prime
    }

    pub fn base(&self) -> &FieldCtx {
        self.ext.base()
    }

    pub fn ext(&self) -> &ExtFieldCtx {
        &self.ext
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add_t[a as usize * self.q_l as usize + b as usize]
    }

    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg_t[b as usize])
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul_t[a as usize * self.q_l as usize + b as usize]
    }

    pub fn neg(&self, a: u16) -> u16 {
        self.neg_t[a as usize]
    }

    /// Multiplicative inverse; a must be nonzero.
    pub fn inv(&self, a: u16) -> u16 {
        assert_ne!(a, 0, "inverse of zero residue");
        self.inv_t[a as usize]
    }

    /// Coefficient vector of element i (length deg ell).
    pub fn elem(&self, i: u16) -> &ExtElem {
        &self.elems[i as usize]
    }

    pub fn index_of(&self, e: &[u8]) -> u16 {
        let mut v = 0u32;
        for &d in e.iter().rev() {
            v = v * self.base().q() + d as u32;
        }
        v as u16
    }

    /// Index of f mod ell.
    pub fn residue_of(&self, f: &FqPoly) -> u16 {
        self.index_of(&self.ext.from_poly(f))
    }

    /// Residue polynomial of element i, e.g. "2*T+1".
    pub fn display(&self, i: u16) -> String {
        self.ext.to_poly(self.elem(i)).display()
    }
}
