//! Extension fields F_(q^m) of a small base field, represented as residues
//! modulo a fixed monic irreducible.
//!
//! Elements ([`ExtElem`]) are coefficient vectors of fixed length m over the
//! base field, constant term first.  Two constructions are provided:
//!
//! * [`ExtFieldCtx::new`] picks the *first* monic irreducible of degree m in
//!   the canonical polynomial order, so independent runs agree on the
//!   representation of every element;
//! * [`ExtFieldCtx::with_modulus`] wraps a caller-supplied monic irreducible,
//!   which is how residue fields A/p are built.
//!
//! Unlike [`FieldCtx`](crate::field::FieldCtx) there are no q^m-sized
//! multiplication or discrete-log tables, so degrees in the hundreds are
//! fine; the cost is that multiplication is schoolbook in the degree.  The
//! q-power map is cached as a set of reduced monomials, which makes Frobenius
//! iteration and kernels of additive maps (the workhorse for torsion root
//! spaces) quadratic in m rather than exponential.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;

use crate::field::FieldCtx;
use crate::poly::FqPoly;
use crate::{Error, Result};

/// Upper bound on the degree of any extension field constructed here.  The
/// canonical-modulus scan and the quadratic-in-degree arithmetic stay
/// desk-scale up to this point.
pub const MAX_EXT_DEGREE: usize = 1536;

/// Element of an extension field: exactly m base-field coefficients,
/// constant term first.
pub type ExtElem = Vec<u8>;

/// Canonical total order on same-field elements: compare coefficient vectors
/// from the highest-degree slot down (base-q integer order).
pub fn cmp_ext(a: &[u8], b: &[u8]) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

/// True if every coefficient is zero.
pub fn ext_is_zero(a: &[u8]) -> bool {
    a.iter().all(|&c| c == 0)
}

static MODULUS_CACHE: OnceLock<Mutex<HashMap<(u32, u32, usize), Vec<u8>>>> = OnceLock::new();
static ROOT_CACHE: OnceLock<Mutex<HashMap<RootKey, Vec<u8>>>> = OnceLock::new();

/// (p, e, field modulus, subfield generator) -> smallest root.
type RootKey = (u32, u32, Vec<u8>, Vec<u8>);

/// Arithmetic context for F_(q^m) = Fq[x]/(modulus).
#[derive(Clone)]
pub struct ExtFieldCtx {
    base: FieldCtx,
    m: usize,
    /// Monic, length m+1, base-field coefficient indices.
    modulus: Vec<u8>,
    /// qpow[j] = x^(q*j) mod modulus, for j in 0..m.
    qpow: OnceLock<Vec<Vec<u8>>>,
}

impl ExtFieldCtx {
    /// Canonical degree-m extension: modulus is the first monic irreducible
    /// of degree m over the base field.  The scan result is cached globally
    /// per (p, e, m).
    pub fn new(base: &FieldCtx, m: usize) -> Result<ExtFieldCtx> {
        if m == 0 {
            return Err(Error::ZeroArgument);
        }
        if m > MAX_EXT_DEGREE {
            return Err(Error::SplittingFieldTooLarge(m));
        }
        let key = (base.p(), base.e(), m);
        let cache = MODULUS_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(hit) = cache.lock().unwrap().get(&key) {
            return Ok(ExtFieldCtx {
                base: base.clone(),
                m,
                modulus: hit.clone(),
                qpow: OnceLock::new(),
            });
        }
        // Odometer over lower coefficients, constant coefficient first: the
        // same canonical order as monic_of_degree, but without materialising
        // a q^m-sized code (q^m does not fit in machine words up here).
        let q = base.q() as u8;
        let mut digits = vec![0u8; m];
        let modulus = 'scan: loop {
            let mut coeffs = digits.clone();
            coeffs.push(1);
            let f = FqPoly::from_coeffs(coeffs);
            if ben_or_irreducible(&f, base) {
                break f.coeffs().to_vec();
            }
            let mut i = 0;
            loop {
                if i == m {
                    break 'scan Vec::new();
                }
                digits[i] += 1;
                if digits[i] < q {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        };
        if modulus.is_empty() {
            return Err(Error::NoIrreducibleFound(m));
        }
        let mut modulus = modulus;
        modulus.resize(m + 1, 0);
        cache.lock().unwrap().insert(key, modulus.clone());
        Ok(ExtFieldCtx {
            base: base.clone(),
            m,
            modulus,
            qpow: OnceLock::new(),
        })
    }

    /// Residue-field construction: F_q[x]/(modulus) for a caller-supplied
    /// monic irreducible.
    pub fn with_modulus(base: &FieldCtx, modulus: &FqPoly) -> Result<ExtFieldCtx> {
        let m = match modulus.deg() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::NotPrime(modulus.display())),
        };
        if m > MAX_EXT_DEGREE {
            return Err(Error::SplittingFieldTooLarge(m));
        }
        if !modulus.is_monic() || !ben_or_irreducible(modulus, base) {
            return Err(Error::NotPrime(modulus.display()));
        }
        let mut coeffs = modulus.coeffs().to_vec();
        coeffs.resize(m + 1, 0);
        Ok(ExtFieldCtx {
            base: base.clone(),
            m,
            modulus: coeffs,
            qpow: OnceLock::new(),
        })
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    /// Degree m over the base field.
    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> FqPoly {
        FqPoly::from_coeffs(self.modulus.clone())
    }

    /// Field size q^m.
    pub fn order(&self) -> BigUint {
        BigUint::from(self.base.q()).pow(self.m as u32)
    }

    pub fn zero(&self) -> ExtElem {
        vec![0; self.m]
    }

    pub fn one(&self) -> ExtElem {
        self.from_base(1)
    }

    /// Embed a base-field element.
    pub fn from_base(&self, c: u8) -> ExtElem {
        debug_assert!((c as u32) < self.base.q());
        let mut v = vec![0; self.m];
        v[0] = c;
        v
    }

    /// Reduce a base-coefficient polynomial modulo the field modulus; this
    /// is the image of f(x) under x -> (residue class of x).
    pub fn from_poly(&self, f: &FqPoly) -> ExtElem {
        let r = f.rem(&self.modulus(), &self.base).expect("monic modulus");
        let mut v = r.coeffs().to_vec();
        v.resize(self.m, 0);
        v
    }

    /// Coefficient vector as a polynomial in the residue class of x.
    pub fn to_poly(&self, a: &[u8]) -> FqPoly {
        FqPoly::from_coeffs(a.to_vec())
    }

    pub fn add(&self, a: &[u8], b: &[u8]) -> ExtElem {
        a.iter().zip(b).map(|(&x, &y)| self.base.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[u8], b: &[u8]) -> ExtElem {
        a.iter().zip(b).map(|(&x, &y)| self.base.sub(x, y)).collect()
    }

    pub fn neg(&self, a: &[u8]) -> ExtElem {
        a.iter().map(|&x| self.base.neg(x)).collect()
    }

    /// Multiply by a base-field scalar.
    pub fn scale(&self, c: u8, a: &[u8]) -> ExtElem {
        a.iter().map(|&x| self.base.mul(c, x)).collect()
    }

    pub fn mul(&self, a: &[u8], b: &[u8]) -> ExtElem {
        let k = &self.base;
        let mut t = vec![0u8; 2 * self.m - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj != 0 {
                    t[i + j] = k.add(t[i + j], k.mul(ai, bj));
                }
            }
        }
        self.reduce(&mut t);
        t.truncate(self.m);
        t
    }

    /// Multiply by the residue class of x (one shift-and-reduce step).
    pub fn mul_by_x(&self, a: &[u8]) -> ExtElem {
        let k = &self.base;
        let top = a[self.m - 1];
        let mut out = vec![0u8; self.m];
        out[1..].copy_from_slice(&a[..self.m - 1]);
        if top != 0 {
            for j in 0..self.m {
                if self.modulus[j] != 0 {
                    out[j] = k.sub(out[j], k.mul(top, self.modulus[j]));
                }
            }
        }
        out
    }

    /// Reduce a raw coefficient vector (any length) modulo the modulus.
    fn reduce(&self, t: &mut Vec<u8>) {
        let k = &self.base;
        for d in (self.m..t.len()).rev() {
            let c = t[d];
            if c == 0 {
                continue;
            }
            t[d] = 0;
            for j in 0..self.m {
                if self.modulus[j] != 0 {
                    t[d - self.m + j] = k.sub(t[d - self.m + j], k.mul(c, self.modulus[j]));
                }
            }
        }
    }

    pub fn inv(&self, a: &[u8]) -> Result<ExtElem> {
        let ap = self.to_poly(a);
        if ap.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let (g, u, _) = ap.ext_gcd(&self.modulus(), &self.base);
        debug_assert_eq!(g.deg(), Some(0), "modulus is irreducible");
        let r = u.rem(&self.modulus(), &self.base).expect("monic modulus");
        let mut v = r.coeffs().to_vec();
        v.resize(self.m, 0);
        Ok(v)
    }

    pub fn pow(&self, a: &[u8], mut n: u128) -> ExtElem {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Power with an arbitrary-precision exponent (q^m outgrows u128 fast).
    pub fn pow_big(&self, a: &[u8], n: &BigUint) -> ExtElem {
        let bits = n.bits();
        let mut base = a.to_vec();
        let mut acc = self.one();
        for i in 0..bits {
            if n.bit(i) {
                acc = self.mul(&acc, &base);
            }
            if i + 1 < bits {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn qpow_table(&self) -> &Vec<Vec<u8>> {
        self.qpow.get_or_init(|| {
            let q = self.base.q() as usize;
            let mut table = Vec::with_capacity(self.m);
            let mut t = self.one();
            for _ in 0..self.m {
                table.push(t.clone());
                for _ in 0..q {
                    t = self.mul_by_x(&t);
                }
            }
            table
        })
    }

    /// Frobenius z -> z^q.  Base-field coefficients are Frobenius-fixed, so
    /// z^q = sum_j z_j x^(q j); this is one pass over the cached monomial
    /// table.
    pub fn q_power(&self, a: &[u8]) -> ExtElem {
        let table = self.qpow_table();
        let k = &self.base;
        let mut out = vec![0u8; self.m];
        for (j, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (i, &t) in table[j].iter().enumerate() {
                if t != 0 {
                    out[i] = k.add(out[i], k.mul(c, t));
                }
            }
        }
        out
    }

    /// j-fold Frobenius z -> z^(q^j).
    pub fn frob_power(&self, a: &[u8], j: usize) -> ExtElem {
        let mut z = a.to_vec();
        for _ in 0..j {
            z = self.q_power(&z);
        }
        z
    }

    /// All q^m elements in canonical (ascending) order.  Callers are
    /// responsible for only iterating fields small enough to enumerate.
    pub fn elements(&self) -> ElemIter {
        ElemIter {
            digits: vec![0; self.m],
            q: self.base.q() as u8,
            done: false,
        }
    }

    /// Apply the linear map whose matrix columns are `cols` (each an image
    /// of a basis monomial) to the coefficient vector z.
    fn linear_apply(&self, cols: &[ExtElem], z: &[u8]) -> ExtElem {
        let k = &self.base;
        let mut out = vec![0u8; self.m];
        for (j, &c) in z.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (i, &t) in cols[j].iter().enumerate() {
                if t != 0 {
                    out[i] = k.add(out[i], k.mul(c, t));
                }
            }
        }
        out
    }

    /// Basis of the kernel of the additive map z -> sum_i coeffs[i] z^(q^i),
    /// an Fq-subspace of this field.  Deterministic: reduced row echelon
    /// form with free columns in ascending order.
    pub fn additive_kernel_basis(&self, coeffs: &[ExtElem]) -> Vec<ExtElem> {
        let m = self.m;
        let k = self.base.clone();
        // Multiplication-by-coeff matrices, built by repeated x-shifts.
        let mult_cols: Vec<Option<Vec<ExtElem>>> = coeffs
            .iter()
            .map(|c| {
                if ext_is_zero(c) {
                    return None;
                }
                let mut cols = Vec::with_capacity(m);
                let mut w = c.clone();
                for _ in 0..m {
                    cols.push(w.clone());
                    w = self.mul_by_x(&w);
                }
                Some(cols)
            })
            .collect();
        let mut mat = vec![vec![0u8; m]; m];
        for j in 0..m {
            let mut z = vec![0u8; m];
            z[j] = 1;
            let mut col = vec![0u8; m];
            for (i, mc) in mult_cols.iter().enumerate() {
                if i > 0 {
                    z = self.q_power(&z);
                }
                if let Some(cols) = mc {
                    let term = self.linear_apply(cols, &z);
                    for t in 0..m {
                        col[t] = k.add(col[t], term[t]);
                    }
                }
            }
            for t in 0..m {
                mat[t][j] = col[t];
            }
        }
        fq_kernel(&k, &mut mat, m)
    }

    /// Smallest root in this field of a monic irreducible over the base
    /// field whose degree divides m.  This is how residue-field elements get
    /// embedded into splitting fields.  Results are cached globally.
    pub fn subfield_root(&self, prime: &FqPoly) -> Result<ExtElem> {
        let s = match prime.deg() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::NotPrime(prime.display())),
        };
        if !prime.is_monic() || !ben_or_irreducible(prime, &self.base) {
            return Err(Error::NotPrime(prime.display()));
        }
        if self.m % s != 0 {
            return Err(Error::Config(format!(
                "a degree-{} prime has no roots in an extension of degree {}",
                s, self.m
            )));
        }
        let combos = (self.base.q() as u64).checked_pow(s as u32);
        match combos {
            Some(c) if c <= 1 << 16 => {}
            _ => return Err(Error::RangeTooLarge(format!("q^{} subfield elements", s))),
        }
        let key: RootKey = (
            self.base.p(),
            self.base.e(),
            self.modulus.clone(),
            prime.coeffs().to_vec(),
        );
        let cache = ROOT_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(hit) = cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        // The subfield F_(q^s) is the kernel of z -> z^(q^s) - z.
        let mut coeffs = vec![self.zero(); s + 1];
        coeffs[0] = self.from_base(self.base.neg(1));
        coeffs[s] = self.one();
        let basis = self.additive_kernel_basis(&coeffs);
        debug_assert_eq!(basis.len(), s);
        let pc: Vec<ExtElem> = prime.coeffs().iter().map(|&c| self.from_base(c)).collect();
        let mut best: Option<ExtElem> = None;
        let mut digits = vec![0u8; basis.len()];
        let q = self.base.q() as u8;
        loop {
            let mut z = self.zero();
            for (i, &d) in digits.iter().enumerate() {
                if d != 0 {
                    let t = self.scale(d, &basis[i]);
                    z = self.add(&z, &t);
                }
            }
            let mut acc = self.zero();
            for c in pc.iter().rev() {
                acc = self.mul(&acc, &z);
                acc = self.add(&acc, c);
            }
            if ext_is_zero(&acc) {
                best = match best {
                    Some(b) if cmp_ext(&b, &z) != Ordering::Greater => Some(b),
                    _ => Some(z),
                };
            }
            let mut i = 0;
            loop {
                if i == digits.len() {
                    let root = best.expect("irreducible splits in a field of multiple degree");
                    cache.lock().unwrap().insert(key, root.clone());
                    return Ok(root);
                }
                digits[i] += 1;
                if digits[i] < q {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    /// Table of x^(q j) mod g for j < deg g, where g is a monic polynomial
    /// with coefficients in this field, given as a dense vector of length
    /// deg g + 1.  Polynomials mod g are dense vectors of length deg g.
    pub fn xq_table_mod(&self, g: &[ExtElem]) -> Result<Vec<Vec<ExtElem>>> {
        let n = g.len().checked_sub(1).filter(|&n| n >= 1).ok_or(Error::ZeroPolynomial)?;
        if !ext_is_zero(&self.sub(&g[n], &self.one())) {
            return Err(Error::Config("divisor must be monic".into()));
        }
        let q = self.base.q() as usize;
        let mut table = Vec::with_capacity(n);
        let mut w = vec![self.zero(); n];
        w[0] = self.one();
        for _ in 0..n {
            table.push(w.clone());
            for _ in 0..q {
                w = self.poly_mul_x_mod(&w, g);
            }
        }
        Ok(table)
    }

    /// One x-shift of a dense residue vector modulo monic g.
    fn poly_mul_x_mod(&self, w: &[ExtElem], g: &[ExtElem]) -> Vec<ExtElem> {
        let n = w.len();
        let top = w[n - 1].clone();
        let mut out = Vec::with_capacity(n);
        out.push(self.zero());
        for c in &w[..n - 1] {
            out.push(c.clone());
        }
        if !ext_is_zero(&top) {
            for (j, gj) in g[..n].iter().enumerate() {
                if !ext_is_zero(gj) {
                    let t = self.mul(&top, gj);
                    out[j] = self.sub(&out[j], &t);
                }
            }
        }
        out
    }

    /// One Frobenius step y -> y^q modulo monic g, using a table from
    /// [`xq_table_mod`]: y^q = sum_j (y_j)^q x^(q j).
    pub fn poly_frob_step_mod(&self, y: &[ExtElem], table: &[Vec<ExtElem>]) -> Vec<ExtElem> {
        let n = y.len();
        debug_assert_eq!(table.len(), n);
        let mut out = vec![self.zero(); n];
        for (j, yj) in y.iter().enumerate() {
            if ext_is_zero(yj) {
                continue;
            }
            let c = self.q_power(yj);
            for (i, t) in table[j].iter().enumerate() {
                if !ext_is_zero(t) {
                    let term = self.mul(&c, t);
                    out[i] = self.add(&out[i], &term);
                }
            }
        }
        out
    }
}

/// Ascending-order iterator over all elements of a small extension field.
pub struct ElemIter {
    digits: Vec<u8>,
    q: u8,
    done: bool,
}

impl Iterator for ElemIter {
    type Item = ExtElem;

    fn next(&mut self) -> Option<ExtElem> {
        if self.done {
            return None;
        }
        let out = self.digits.clone();
        let mut i = 0;
        loop {
            if i == self.digits.len() {
                self.done = true;
                break;
            }
            self.digits[i] += 1;
            if self.digits[i] < self.q {
                break;
            }
            self.digits[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

/// Kernel basis of an m x m matrix over the base field, via reduced row
/// echelon form.  Basis vectors are indexed by free columns in ascending
/// order, so the result is deterministic.
fn fq_kernel(k: &FieldCtx, mat: &mut [Vec<u8>], m: usize) -> Vec<ExtElem> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..m {
        let Some(sel) = (r..m).find(|&row| mat[row][c] != 0) else {
            continue;
        };
        mat.swap(r, sel);
        let pi = k.inv(mat[r][c]);
        for t in c..m {
            mat[r][t] = k.mul(mat[r][t], pi);
        }
        for row in 0..m {
            if row != r && mat[row][c] != 0 {
                let f = mat[row][c];
                for t in c..m {
                    let s = k.mul(f, mat[r][t]);
                    mat[row][t] = k.sub(mat[row][t], s);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    let mut is_pivot = vec![false; m];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for f in 0..m {
        if is_pivot[f] {
            continue;
        }
        let mut v = vec![0u8; m];
        v[f] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = k.neg(mat[i][f]);
        }
        basis.push(v);
    }
    basis
}

/// Ben-Or irreducibility test for a monic polynomial over the base field:
/// reject as soon as gcd(f, x^(q^d) - x) is nontrivial for some d <= deg/2.
/// Random reducibles almost always have a small factor, so scanning
/// candidates in canonical order stays cheap even in large degree.
pub(crate) fn ben_or_irreducible(f: &FqPoly, k: &FieldCtx) -> bool {
    let m = match f.deg() {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if m == 1 {
        return true;
    }
    if f.coeff(0) == 0 {
        return false;
    }
    let q = k.q() as usize;
    // table[j] = T^(q j) mod f
    let mut table: Vec<FqPoly> = Vec::with_capacity(m);
    let mut t = FqPoly::one();
    for _ in 0..m {
        table.push(t.clone());
        for _ in 0..q {
            t = mul_by_t_mod(&t, f, k);
        }
    }
    let mut y = FqPoly::t();
    for _d in 1..=m / 2 {
        // y <- y^q mod f; base-field coefficients are Frobenius-fixed.
        let mut next = FqPoly::zero();
        for (j, &c) in y.coeffs().iter().enumerate() {
            if c != 0 {
                next = next.add(&table[j].scale(c, k), k);
            }
        }
        y = next;
        let g = y.sub(&FqPoly::t(), k).gcd(f, k);
        if g.deg() != Some(0) {
            return false;
        }
    }
    true
}

/// One T-shift modulo monic f.
fn mul_by_t_mod(a: &FqPoly, f: &FqPoly, k: &FieldCtx) -> FqPoly {
    a.shift(1).rem(f, k).expect("monic modulus")
}
