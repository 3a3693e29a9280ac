//! The base field Fq, q = p^e <= 64, with full lookup tables.
//!
//! Elements are `u8` indices in `0..q`.  The base-p digits of an index are
//! the coordinates of the element in the power basis of Fq over Fp (low digit
//! = constant coordinate), so index order doubles as the canonical element
//! order used everywhere for tie-breaking and scans.  For e >= 2 the field is
//! built as Fp[x]/(h) where h is the first monic irreducible of degree e in
//! canonical polynomial order.

use crate::{Error, Result};

#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    e: u32,
    q: u32,
    /// Smallest multiplicative generator in canonical element order.
    gen: u8,
    /// exp[k] = gen^k for k in 0..q-1.
    exp: Vec<u8>,
    /// log[a] for a != 0; log[0] is a sentinel never read.
    log: Vec<u16>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    /// Modulus digits for e >= 2 (monic, length e+1); empty for e = 1.
    modulus: Vec<u8>,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("gen", &self.gen)
            .finish()
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Bootstrap arithmetic on Fp[x] digit vectors, used only while building the
// field tables.  Vectors are little-endian and not necessarily trimmed.

fn boot_trim(v: &mut Vec<u8>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn boot_mul(a: &[u8], b: &[u8], p: u32) -> Vec<u8> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai as u32 * bj as u32) % p;
        }
    }
    let mut out: Vec<u8> = out.into_iter().map(|c| c as u8).collect();
    boot_trim(&mut out);
    out
}

fn boot_rem(a: &[u8], m: &[u8], p: u32) -> Vec<u8> {
    let mut r: Vec<u8> = a.to_vec();
    boot_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = boot_inv_scalar(m[dm] as u32, p);
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = (r[dr] as u32 * lead_inv) % p;
        for i in 0..=dm {
            let idx = dr - dm + i;
            let sub = (c * m[i] as u32) % p;
            r[idx] = ((r[idx] as u32 + p - sub) % p) as u8;
        }
        boot_trim(&mut r);
    }
    r
}

fn boot_inv_scalar(a: u32, p: u32) -> u32 {
    // p is tiny; scan.
    (1..p).find(|&x| (x * a) % p == 1).unwrap()
}

fn boot_is_irreducible(f: &[u8], p: u32) -> bool {
    let d = f.len() - 1;
    if d == 0 {
        return false;
    }
    // Trial division by every monic polynomial of degree 1..=d/2.
    for deg in 1..=d / 2 {
        let count = p.pow(deg as u32);
        for code in 0..count {
            let mut g = vec![0u8; deg + 1];
            let mut c = code;
            for digit in g.iter_mut().take(deg) {
                *digit = (c % p) as u8;
                c /= p;
            }
            g[deg] = 1;
            if boot_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldCtx {
    /// Build Fq for q = p^e.  Fails with `NonPrimeP` or `UnsupportedSize`.
    pub fn new(p: u32, e: u32) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NonPrimeP(p));
        }
        if e == 0 {
            return Err(Error::UnsupportedSize(0));
        }
        let q = (p as u64).checked_pow(e).ok_or(Error::UnsupportedSize(u64::MAX))?;
        if !(2..=64).contains(&q) {
            return Err(Error::UnsupportedSize(q));
        }
        let q = q as u32;

        let modulus = if e == 1 {
            vec![]
        } else {
            let mut found = None;
            for code in 0..p.pow(e) {
                let mut h = vec![0u8; e as usize + 1];
                let mut c = code;
                for digit in h.iter_mut().take(e as usize) {
                    *digit = (c % p) as u8;
                    c /= p;
                }
                h[e as usize] = 1;
                if boot_is_irreducible(&h, p) {
                    found = Some(h);
                    break;
                }
            }
            found.ok_or(Error::NoIrreducibleFound(e as usize))?
        };

        let qs = q as usize;
        let digits = |idx: u32| -> Vec<u8> {
            let mut v = vec![0u8; e as usize];
            let mut c = idx;
            for d in v.iter_mut() {
                *d = (c % p) as u8;
                c /= p;
            }
            v
        };
        let index = |v: &[u8]| -> u8 {
            let mut idx = 0u32;
            for i in (0..e as usize).rev() {
                idx = idx * p + *v.get(i).unwrap_or(&0) as u32;
            }
            idx as u8
        };

        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        let mut neg = vec![0u8; qs];
        for a in 0..q {
            let da = digits(a);
            let nd: Vec<u8> = da.iter().map(|&x| ((p - x as u32) % p) as u8).collect();
            neg[a as usize] = index(&nd);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u8> = da
                    .iter()
                    .zip(&db)
                    .map(|(&x, &y)| ((x as u32 + y as u32) % p) as u8)
                    .collect();
                add[(a * q + b) as usize] = index(&sum);
                let prod = if e == 1 {
                    vec![((a * b) % p) as u8]
                } else {
                    boot_rem(&boot_mul(&da, &db, p), &modulus, p)
                };
                mul[(a * q + b) as usize] = index(&prod);
            }
        }

        // Smallest generator of the multiplicative group in index order.
        let order = |a: u32| -> u32 {
            let mut x = a;
            let mut n = 1;
            while x != 1 {
                x = mul[(x * q + a) as usize] as u32;
                n += 1;
            }
            n
        };
        let gen = if q == 2 {
            1u8
        } else {
            (2..q)
                .find(|&a| order(a) == q - 1)
                .expect("multiplicative group of a finite field is cyclic") as u8
        };

        let mut exp = vec![0u8; (q - 1) as usize];
        let mut log = vec![0u16; qs];
        let mut x = 1u32;
        for (k, slot) in exp.iter_mut().enumerate() {
            *slot = x as u8;
            log[x as usize] = k as u16;
            x = mul[(x * q + gen as u32) as usize] as u32;
        }

        Ok(FieldCtx { p, e, q, gen, exp, log, add, mul, neg, modulus })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    /// The canonical multiplicative generator c used by `dlog`.
    pub fn generator(&self) -> u8 {
        self.gen
    }
    /// Modulus digits of the Fp[x] construction (empty when e = 1).
    pub fn modulus_digits(&self) -> &[u8] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q as u8
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; panics on zero (callers guard).
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero");
        let k = self.log[a as usize] as u32;
        self.exp[((self.q - 1 - k) % (self.q - 1)) as usize]
    }

    pub fn pow(&self, a: u8, n: u64) -> u8 {
        if a == 0 {
            return if n == 0 { 1 } else { 0 };
        }
        let k = self.log[a as usize] as u64;
        self.exp[((k * (n % (self.q as u64 - 1))) % (self.q as u64 - 1)) as usize]
    }

    /// Discrete logarithm base the canonical generator.
    pub fn dlog(&self, a: u8) -> Result<u32> {
        if a == 0 {
            return Err(Error::ZeroArgument);
        }
        Ok(self.log[a as usize] as u32)
    }

    /// c^k for the canonical generator c.
    pub fn exp_gen(&self, k: u32) -> u8 {
        self.exp[(k % (self.q - 1)) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f5_generator_and_dlog() {
        let k = FieldCtx::new(5, 1).unwrap();
        assert_eq!(k.generator(), 2);
        assert_eq!(k.dlog(1).unwrap(), 0);
        assert_eq!(k.dlog(4).unwrap(), 2);
        assert_eq!(k.dlog(3).unwrap(), 3);
        assert!(matches!(k.dlog(0), Err(Error::ZeroArgument)));
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(matches!(FieldCtx::new(4, 1), Err(Error::NonPrimeP(4))));
        assert!(matches!(FieldCtx::new(6, 1), Err(Error::NonPrimeP(6))));
        assert!(matches!(FieldCtx::new(67, 1), Err(Error::UnsupportedSize(67))));
        assert!(matches!(FieldCtx::new(2, 7), Err(Error::UnsupportedSize(128))));
        assert!(matches!(FieldCtx::new(5, 0), Err(Error::UnsupportedSize(0))));
    }

    #[test]
    fn f4_structure() {
        let k = FieldCtx::new(2, 2).unwrap();
        assert_eq!(k.q(), 4);
        // Modulus is x^2 + x + 1, the only irreducible quadratic over F2.
        assert_eq!(k.modulus_digits(), &[1, 1, 1]);
        // The element x (index 2) generates the order-3 group.
        assert_eq!(k.generator(), 2);
        // x^2 = x + 1 -> index 3.
        assert_eq!(k.mul(2, 2), 3);
        // Characteristic 2: every element is its own negative.
        for a in k.elements() {
            assert_eq!(k.neg(a), a);
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, e) in [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3)] {
            let k = FieldCtx::new(p, e).unwrap();
            let q = k.q() as u8;
            for a in 0..q {
                assert_eq!(k.add(a, 0), a);
                assert_eq!(k.mul(a, 1), a);
                assert_eq!(k.add(a, k.neg(a)), 0);
                if a != 0 {
                    assert_eq!(k.mul(a, k.inv(a)), 1);
                    // exp/log are mutually inverse.
                    assert_eq!(k.exp_gen(k.dlog(a).unwrap()), a);
                }
                for b in 0..q {
                    assert_eq!(k.add(a, b), k.add(b, a));
                    assert_eq!(k.mul(a, b), k.mul(b, a));
                    for c in 0..q {
                        assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                        assert_eq!(k.mul(a, k.mul(b, c)), k.mul(k.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn q2_edge_case() {
        let k = FieldCtx::new(2, 1).unwrap();
        assert_eq!(k.generator(), 1);
        assert_eq!(k.dlog(1).unwrap(), 0);
    }

    #[test]
    fn generator_is_smallest() {
        // F7: primitive roots are 3 and 5; the canonical pick is 3.
        let k = FieldCtx::new(7, 1).unwrap();
        assert_eq!(k.generator(), 3);
        // F9 = F3[x]/(x^2+1): x has order 4, x+1 has order 8.
        let k9 = FieldCtx::new(3, 2).unwrap();
        assert_eq!(k9.modulus_digits(), &[1, 0, 1]);
        let ord = |a: u8| {
            let mut x = a;
            let mut n = 1;
            while x != 1 {
                x = k9.mul(x, a);
                n += 1;
            }
            n
        };
        assert_eq!(ord(3), 4); // index 3 = x
        assert_eq!(k9.generator(), 4); // index 4 = x + 1
        assert_eq!(ord(k9.generator()), 8);
    }
}
