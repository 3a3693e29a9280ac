//! Drinfeld modules over A = Fq[T] and the twisted polynomial rings they
//! act through.
//!
//! A twisted polynomial sum a_i tau^i multiplies by the rule
//! tau a = a^q tau, and acts on a ring element z as the additive polynomial
//! sum a_i z^(q^i).  A Drinfeld module of rank r is determined by
//! phi_T = T + g_1 tau + ... + g_r tau^r with g_r nonzero; phi_a for general
//! a follows by Horner since the image of phi is commutative.

use crate::ext::{ext_is_zero, ExtElem, ExtFieldCtx};
use crate::field::FieldCtx;
use crate::poly::{FqPoly, PrimeIdeal};
use crate::{Error, Result};

/// Coefficient rings for twisted polynomials: commutative Fq-algebras
/// carrying the q-power Frobenius.
pub trait TauRing {
    type Elem: Clone + PartialEq;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// a -> a^(q^i).
    fn qpow(&self, a: &Self::Elem, i: usize) -> Self::Elem;
}

/// The polynomial ring A = Fq[T] itself, where Frobenius twisting is
/// f(T) -> f(T^(q^i)).
pub struct PolyRing<'a>(pub &'a FieldCtx);

impl TauRing for PolyRing<'_> {
    type Elem = FqPoly;

    fn zero(&self) -> FqPoly {
        FqPoly::zero()
    }

    fn one(&self) -> FqPoly {
        FqPoly::one()
    }

    fn is_zero(&self, a: &FqPoly) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        a.add(b, self.0)
    }

    fn mul(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        a.mul(b, self.0)
    }

    fn qpow(&self, a: &FqPoly, i: usize) -> FqPoly {
        a.pow_q(i, self.0)
    }
}

impl TauRing for ExtFieldCtx {
    type Elem = ExtElem;

    fn zero(&self) -> ExtElem {
        ExtFieldCtx::zero(self)
    }

    fn one(&self) -> ExtElem {
        ExtFieldCtx::one(self)
    }

    fn is_zero(&self, a: &ExtElem) -> bool {
        ext_is_zero(a)
    }

    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtFieldCtx::add(self, a, b)
    }

    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtFieldCtx::mul(self, a, b)
    }

    fn qpow(&self, a: &ExtElem, i: usize) -> ExtElem {
        self.frob_power(a, i)
    }
}

/// Twisted polynomial: coefficient of tau^i at index i.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> TwistedPoly<E> {
    pub fn zero() -> Self {
        TwistedPoly { coeffs: Vec::new() }
    }

    pub fn constant<R: TauRing<Elem = E>>(r: &R, c: E) -> Self {
        TwistedPoly::from_coeffs(r, vec![c])
    }

    pub fn from_coeffs<R: TauRing<Elem = E>>(r: &R, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| r.is_zero(c)) {
            coeffs.pop();
        }
        TwistedPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    /// Coefficient of tau^i, zero-padded beyond the degree.
    pub fn coeff<R: TauRing<Elem = E>>(&self, r: &R, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| r.zero())
    }

    pub fn tau_deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add<R: TauRing<Elem = E>>(&self, rhs: &Self, r: &R) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(|| r.zero());
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(|| r.zero());
            out.push(r.add(&a, &b));
        }
        TwistedPoly::from_coeffs(r, out)
    }

    /// Twisted product: (a tau^i)(b tau^j) = a b^(q^i) tau^(i+j).
    pub fn mul<R: TauRing<Elem = E>>(&self, rhs: &Self, r: &R) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return TwistedPoly::zero();
        }
        let n = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut out = vec![r.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if r.is_zero(b) {
                    continue;
                }
                let t = r.mul(a, &r.qpow(b, i));
                out[i + j] = r.add(&out[i + j], &t);
            }
        }
        TwistedPoly::from_coeffs(r, out)
    }

    /// Evaluate as an additive polynomial: z -> sum a_i z^(q^i).
    pub fn eval<R: TauRing<Elem = E>>(&self, z: &E, r: &R) -> E {
        let mut acc = r.zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if !r.is_zero(a) {
                let t = r.mul(a, &r.qpow(z, i));
                acc = r.add(&acc, &t);
            }
        }
        acc
    }
}

/// Horner evaluation of phi_a from phi_T, valid because the image of phi is
/// commutative.
fn phi_by_horner<E: Clone + PartialEq, R: TauRing<Elem = E>>(
    r: &R,
    phi_t: &TwistedPoly<E>,
    a: &FqPoly,
    embed: impl Fn(u8) -> E,
) -> TwistedPoly<E> {
    let mut acc = TwistedPoly::zero();
    for &c in a.coeffs().iter().rev() {
        acc = acc.mul(phi_t, r);
        if c != 0 {
            acc = acc.add(&TwistedPoly::constant(r, embed(c)), r);
        }
    }
    acc
}

/// A Drinfeld module over A = Fq[T], given by the coefficients of phi_T.
#[derive(Clone, Debug)]
pub struct DrinfeldModule {
    k: FieldCtx,
    /// phi_T = T + g_1 tau + ... + g_r tau^r; index i holds the tau^i
    /// coefficient, so phi_t[0] = T.
    phi_t: Vec<FqPoly>,
}

impl DrinfeldModule {
    /// General constructor from [g_1, ..., g_r]; g_r must be nonzero.
    pub fn new(k: &FieldCtx, gs: Vec<FqPoly>) -> Result<DrinfeldModule> {
        let r = gs.len();
        if r == 0 || gs.last().unwrap().is_zero() {
            return Err(Error::ZeroLeadingCoeff(r));
        }
        let mut phi_t = vec![FqPoly::t()];
        phi_t.extend(gs);
        Ok(DrinfeldModule { k: k.clone(), phi_t })
    }

    /// Rank-1 twist of the Carlitz module: phi_T = T + delta tau.
    pub fn rank1(k: &FieldCtx, delta: &FqPoly) -> Result<DrinfeldModule> {
        DrinfeldModule::new(k, vec![delta.clone()])
    }

    /// phi_T = T + tau.
    pub fn carlitz(k: &FieldCtx) -> DrinfeldModule {
        DrinfeldModule::new(k, vec![FqPoly::one()]).expect("1 != 0")
    }

    /// Rank-2 module phi_T = T + g1 tau + g2 tau^2.
    pub fn rank2(k: &FieldCtx, g1: &FqPoly, g2: &FqPoly) -> Result<DrinfeldModule> {
        if g2.is_zero() {
            return Err(Error::ZeroLeadingCoeff(2));
        }
        DrinfeldModule::new(k, vec![g1.clone(), g2.clone()])
    }

    pub fn rank(&self) -> usize {
        self.phi_t.len() - 1
    }

    pub fn field(&self) -> &FieldCtx {
        &self.k
    }

    /// Coefficient g_i of phi_T (g_0 = T).
    pub fn g(&self, i: usize) -> &FqPoly {
        &self.phi_t[i]
    }

    pub fn phi_t(&self) -> TwistedPoly<FqPoly> {
        TwistedPoly::from_coeffs(&PolyRing(&self.k), self.phi_t.clone())
    }

    /// phi_a as a twisted polynomial with A-coefficients.
    pub fn phi(&self, a: &FqPoly) -> TwistedPoly<FqPoly> {
        let r = PolyRing(&self.k);
        phi_by_horner(&r, &self.phi_t(), a, FqPoly::constant)
    }

    /// Reduce the coefficients modulo a prime of A.
    pub fn reduce(&self, at: &PrimeIdeal) -> Result<ReducedModule> {
        let res = ExtFieldCtx::with_modulus(&self.k, at.gen())?;
        let phi_t: Vec<ExtElem> = self.phi_t.iter().map(|g| res.from_poly(g)).collect();
        ReducedModule::from_residues(res, phi_t)
    }
}

/// A Drinfeld module with coefficients in a residue field A/p.
#[derive(Clone)]
pub struct ReducedModule {
    res: ExtFieldCtx,
    /// tau^i coefficient of phi_T at index i; phi_t[0] is the residue of T.
    phi_t: Vec<ExtElem>,
}

impl ReducedModule {
    /// Build directly from residues [Tbar, g1bar, ..., grbar].  The top
    /// coefficient may be zero; that is exactly bad reduction, and
    /// [`ReducedModule::is_good`] reports it.
    pub fn from_residues(res: ExtFieldCtx, phi_t: Vec<ExtElem>) -> Result<ReducedModule> {
        if phi_t.len() < 2 {
            return Err(Error::ZeroLeadingCoeff(phi_t.len().saturating_sub(1)));
        }
        Ok(ReducedModule { res, phi_t })
    }

    pub fn rank(&self) -> usize {
        self.phi_t.len() - 1
    }

    pub fn res(&self) -> &ExtFieldCtx {
        &self.res
    }

    /// Good reduction: the leading coefficient of phi_T stays nonzero.
    pub fn is_good(&self) -> bool {
        !ext_is_zero(self.phi_t.last().unwrap())
    }

    pub fn phi_t(&self) -> TwistedPoly<ExtElem> {
        TwistedPoly::from_coeffs(&self.res, self.phi_t.clone())
    }

    /// phi_a over the residue field.
    pub fn phi(&self, a: &FqPoly) -> TwistedPoly<ExtElem> {
        phi_by_horner(&self.res, &self.phi_t(), a, |c| self.res.from_base(c))
    }

    /// Coefficients of the additive polynomial cutting out the l-torsion:
    /// index i multiplies x^(q^i).
    pub fn torsion_coeffs(&self, l: &PrimeIdeal) -> Vec<ExtElem> {
        let phi_l = self.phi(l.gen());
        let d = self.rank() * l.degree();
        let mut out = Vec::with_capacity(d + 1);
        for i in 0..=d {
            out.push(phi_l.coeff(&self.res, i));
        }
        out
    }
}
