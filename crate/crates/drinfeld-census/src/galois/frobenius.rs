//! Frobenius matrices on ell-torsion, computed from first principles.
//!
//! For a rank-r module with good reduction at p, the ell-torsion is the
//! root space of the additive polynomial phi_ell, an r.deg(ell)-dimensional
//! Fq-space inside a splitting field F_(q^M).  The pipeline:
//!
//! 1. degree hunt: the splitting degree n over F_p is the multiplicative
//!    order of the |F_p|-power map modulo phi_ell / x, found by iterating
//!    Frobenius steps on the residue x (no factoring, no randomness);
//! 2. root space: inside F_(q^(s n)) the torsion is the kernel of an
//!    Fq-linear map, so Gaussian elimination hands over every root at once;
//! 3. basis and coordinates: e1 is the first nonzero root in canonical
//!    order, e2 the first root outside the A/ell-span of e1, and a lookup
//!    over all q_l^2 combinations resolves any point into coordinates;
//! 4. the matrix: apply x -> x^|F_p| to e1, e2 and read off columns.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::classes::Mat2;
use super::resfield::ResidueField;
use crate::drinfeld::{DrinfeldModule, ReducedModule, TwistedPoly};
use crate::ext::{cmp_ext, ext_is_zero, ExtElem, ExtFieldCtx, MAX_EXT_DEGREE};
use crate::poly::PrimeIdeal;
use crate::{Error, Result};

/// Torsion points cut out of their splitting field.
struct SplitTorsion {
    big: ExtFieldCtx,
    /// deg p: one Frobenius on the residue field is s q-power steps.
    s: usize,
    /// theta^t for t < s, theta the canonical root of p in `big`.
    theta_pows: Vec<ExtElem>,
    /// All q^(r deg ell) roots of phi_ell, canonically sorted.
    roots: Vec<ExtElem>,
}

fn lift(big: &ExtFieldCtx, theta_pows: &[ExtElem], res_elem: &[u8]) -> ExtElem {
    let mut out = big.zero();
    for (t, &dig) in res_elem.iter().enumerate() {
        if dig != 0 {
            let term = big.scale(dig, &theta_pows[t]);
            out = big.add(&out, &term);
        }
    }
    out
}

fn dense_eq(a: &[ExtElem], b: &[ExtElem]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x == y)
}

fn split_torsion(red: &ReducedModule, p: &PrimeIdeal, ell: &PrimeIdeal) -> Result<SplitTorsion> {
    let res = red.res();
    let k = res.base().clone();
    let q = k.q() as u64;
    let s = res.degree();
    let rk = red.rank() * ell.degree();
    let nroots = q
        .checked_pow(rk as u32)
        .filter(|&n| n <= 1 << 20)
        .ok_or_else(|| Error::RangeTooLarge(format!("q^{rk} torsion points")))?
        as usize;
    let coeffs = red.torsion_coeffs(ell);
    debug_assert!(
        !ext_is_zero(&coeffs[0]),
        "phi_ell is separable whenever p != ell"
    );
    // Monic dense g = phi_ell / x over F_p; its roots are the nonzero
    // torsion points, and x^(q^i - 1) carries coefficient c_i.
    let lead_inv = res.inv(&coeffs[rk])?;
    let deg_g = nroots - 1;
    let n = if deg_g == 1 {
        1
    } else {
        let mut g = vec![res.zero(); deg_g + 1];
        for (i, c) in coeffs.iter().enumerate() {
            g[q.pow(i as u32) as usize - 1] = res.mul(c, &lead_inv);
        }
        let table = res.xq_table_mod(&g)?;
        let mut x0 = vec![res.zero(); deg_g];
        x0[1] = res.one();
        let mut y = x0.clone();
        let mut n = 0usize;
        loop {
            for _ in 0..s {
                y = res.poly_frob_step_mod(&y, &table);
            }
            n += 1;
            if dense_eq(&y, &x0) {
                break n;
            }
            if s * (n + 1) > MAX_EXT_DEGREE {
                return Err(Error::SplittingFieldTooLarge(s * (n + 1)));
            }
        }
    };
    let big = ExtFieldCtx::new(&k, s * n)?;
    let theta = big.subfield_root(p.gen())?;
    let mut theta_pows = vec![big.one()];
    for _ in 1..s {
        theta_pows.push(big.mul(theta_pows.last().unwrap(), &theta));
    }
    let lifted: Vec<ExtElem> = coeffs.iter().map(|c| lift(&big, &theta_pows, c)).collect();
    let basis = big.additive_kernel_basis(&lifted);
    assert_eq!(basis.len(), rk, "torsion kernel has full dimension");
    // Every Fq-combination of the basis, layer by layer.  Scalars act by
    // field multiplication, not repeated addition: q need not be prime.
    let mut roots = vec![big.zero()];
    for b in &basis {
        let mut next = Vec::with_capacity(roots.len() * q as usize);
        for c in 0..k.q() as u8 {
            let shift = big.scale(c, b);
            for r in &roots {
                next.push(if c == 0 { r.clone() } else { big.add(r, &shift) });
            }
        }
        roots = next;
    }
    roots.sort_unstable_by(|a, b| cmp_ext(a, b));
    debug_assert!(roots.windows(2).all(|w| w[0] != w[1]));
    Ok(SplitTorsion {
        big,
        s,
        theta_pows,
        roots,
    })
}

/// phi_a lifted from the residue field into the splitting field.
fn lifted_phi(
    split: &SplitTorsion,
    red: &ReducedModule,
    a: &crate::poly::FqPoly,
) -> TwistedPoly<ExtElem> {
    let over_res = red.phi(a);
    let coeffs: Vec<ExtElem> = over_res
        .coeffs()
        .iter()
        .map(|c| lift(&split.big, &split.theta_pows, c))
        .collect();
    TwistedPoly::from_coeffs(&split.big, coeffs)
}

/// A canonical A/ell-basis (e1, e2) of the ell-torsion plus a total
/// coordinate lookup built from all q_l^2 combinations.
pub struct TorsionBasis {
    big: ExtFieldCtx,
    s: usize,
    e1: ExtElem,
    e2: ExtElem,
    phi_e1: Vec<ExtElem>,
    phi_e2: Vec<ExtElem>,
    coord: HashMap<ExtElem, (u16, u16)>,
}

impl TorsionBasis {
    fn build(
        red: &ReducedModule,
        rf: &ResidueField,
        split: &SplitTorsion,
        scan: &[ExtElem],
    ) -> TorsionBasis {
        let big = &split.big;
        let q_l = rf.q_l() as usize;
        // Images phi_a(z) for every residue a, as functions of z's Frobenius
        // powers; the twisted polynomial is rebuilt per a, cheap at this deg.
        let phis: Vec<TwistedPoly<ExtElem>> = (0..q_l)
            .map(|a| {
                let poly = crate::poly::FqPoly::from_coeffs(rf.elem(a as u16).clone());
                lifted_phi(split, red, &poly)
            })
            .collect();
        let e1 = scan
            .iter()
            .find(|r| !ext_is_zero(r))
            .expect("torsion has nonzero points")
            .clone();
        let phi_e1: Vec<ExtElem> = phis.iter().map(|f| f.eval(&e1, big)).collect();
        let span: HashMap<&ExtElem, u16> = phi_e1
            .iter()
            .zip(0u16..)
            .map(|(pt, a)| (pt, a))
            .collect();
        debug_assert_eq!(span.len(), q_l, "e1 generates a free line");
        let e2 = scan
            .iter()
            .find(|r| !span.contains_key(*r))
            .expect("rank-2 torsion exceeds one line")
            .clone();
        let phi_e2: Vec<ExtElem> = phis.iter().map(|f| f.eval(&e2, big)).collect();
        let mut coord = HashMap::with_capacity(q_l * q_l);
        for (a, pa) in phi_e1.iter().enumerate() {
            for (b, pb) in phi_e2.iter().enumerate() {
                coord.insert(big.add(pa, pb), (a as u16, b as u16));
            }
        }
        debug_assert_eq!(coord.len(), q_l * q_l, "the basis spans freely");
        TorsionBasis {
            big: big.clone(),
            s: split.s,
            e1,
            e2,
            phi_e1,
            phi_e2,
            coord,
        }
    }

    pub fn e1(&self) -> &ExtElem {
        &self.e1
    }

    pub fn e2(&self) -> &ExtElem {
        &self.e2
    }

    pub fn splitting_field(&self) -> &ExtFieldCtx {
        &self.big
    }

    /// The point a.e1 + b.e2.
    pub fn point(&self, a: u16, b: u16) -> ExtElem {
        self.big
            .add(&self.phi_e1[a as usize], &self.phi_e2[b as usize])
    }

    /// Coordinates of a torsion point, if it is one.
    pub fn coords(&self, pt: &ExtElem) -> Option<(u16, u16)> {
        self.coord.get(pt).copied()
    }

    /// Apply x -> x^|F_p| inside the splitting field.
    pub fn frobenius_of(&self, pt: &ExtElem) -> ExtElem {
        self.big.frob_power(pt, self.s)
    }

    /// The matrix of Frobenius in the basis (e1, e2), columns = images.
    pub fn frobenius(&self) -> Mat2 {
        let (a, c) = self
            .coords(&self.frobenius_of(&self.e1))
            .expect("Frobenius permutes the torsion");
        let (b, d) = self
            .coords(&self.frobenius_of(&self.e2))
            .expect("Frobenius permutes the torsion");
        Mat2::new(a, b, c, d)
    }
}

fn reduce_checked(m: &DrinfeldModule, p: &PrimeIdeal, rf: &ResidueField) -> Result<ReducedModule> {
    if p.gen() == rf.prime().gen() {
        return Err(Error::EllEqualsP(rf.prime().display()));
    }
    let red = m.reduce(p)?;
    if !red.is_good() {
        return Err(Error::BadReduction(format!(
            "g_{} vanishes mod {}",
            m.rank(),
            p.display()
        )));
    }
    Ok(red)
}

fn basis_for(
    m: &DrinfeldModule,
    p: &PrimeIdeal,
    rf: &ResidueField,
    shuffle_seed: Option<u64>,
) -> Result<TorsionBasis> {
    if m.rank() != 2 {
        return Err(Error::Config(format!(
            "frobenius matrices need rank 2, got rank {}",
            m.rank()
        )));
    }
    let red = reduce_checked(m, p, rf)?;
    let split = split_torsion(&red, p, rf.prime())?;
    let basis = match shuffle_seed {
        None => TorsionBasis::build(&red, rf, &split, &split.roots),
        Some(seed) => {
            let mut scan = split.roots.clone();
            scan.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            TorsionBasis::build(&red, rf, &split, &scan)
        }
    };
    Ok(basis)
}

/// The canonical torsion basis at p, exposed for inspection.
pub fn torsion_basis(m: &DrinfeldModule, p: &PrimeIdeal, rf: &ResidueField) -> Result<TorsionBasis> {
    basis_for(m, p, rf, None)
}

/// Frobenius matrix for an already-reduced rank-2 module.  The residue field
/// of `red` must be presented as F_q[T]/(p); censuses that enumerate reduced
/// coefficients directly come through here.
pub fn frobenius_matrix_reduced(
    red: &ReducedModule,
    p: &PrimeIdeal,
    rf: &ResidueField,
) -> Result<Mat2> {
    if red.rank() != 2 {
        return Err(Error::Config(format!(
            "frobenius matrices need rank 2, got rank {}",
            red.rank()
        )));
    }
    if p.gen() == rf.prime().gen() {
        return Err(Error::EllEqualsP(rf.prime().display()));
    }
    if !red.is_good() {
        return Err(Error::BadReduction(format!("g_2 vanishes mod {}", p.display())));
    }
    debug_assert_eq!(red.res().modulus(), *p.gen());
    let split = split_torsion(red, p, rf.prime())?;
    Ok(TorsionBasis::build(red, rf, &split, &split.roots).frobenius())
}

/// Matrix of Frobenius at p on the ell-torsion, in the canonical basis.
pub fn frobenius_matrix(m: &DrinfeldModule, p: &PrimeIdeal, rf: &ResidueField) -> Result<Mat2> {
    Ok(basis_for(m, p, rf, None)?.frobenius())
}

/// Same matrix up to conjugacy: the basis scan order is shuffled by a seeded
/// generator, so invariants (char poly, class) must not move.
pub fn frobenius_matrix_shuffled(
    m: &DrinfeldModule,
    p: &PrimeIdeal,
    rf: &ResidueField,
    seed: u64,
) -> Result<Mat2> {
    Ok(basis_for(m, p, rf, Some(seed))?.frobenius())
}

/// Frobenius on the ell-torsion line of a rank-1 module: the unique residue
/// c with psi_c(e) = e^|F_p|, returned as a residue index.
pub fn rank1_frobenius_scalar(
    m: &DrinfeldModule,
    p: &PrimeIdeal,
    rf: &ResidueField,
) -> Result<u16> {
    if m.rank() != 1 {
        return Err(Error::Config(format!(
            "frobenius scalars need rank 1, got rank {}",
            m.rank()
        )));
    }
    let red = reduce_checked(m, p, rf)?;
    let split = split_torsion(&red, p, rf.prime())?;
    let big = &split.big;
    let e = split
        .roots
        .iter()
        .find(|r| !ext_is_zero(r))
        .expect("torsion has nonzero points");
    let fe = big.frob_power(e, split.s);
    for a in 0..rf.q_l() as u16 {
        let poly = crate::poly::FqPoly::from_coeffs(rf.elem(a).clone());
        if lifted_phi(&split, &red, &poly).eval(e, big) == fe {
            return Ok(a);
        }
    }
    unreachable!("Frobenius acts on a free rank-1 module by some residue");
}

/// det(Frobenius matrix) of a rank-2 module must equal the Frobenius scalar
/// of its determinant twist psi_T = T - g2 tau.  Exercises two independent
/// pipelines end to end.
pub fn det_compatibility_check(
    m: &DrinfeldModule,
    p: &PrimeIdeal,
    rf: &ResidueField,
) -> Result<bool> {
    let mat = frobenius_matrix(m, p, rf)?;
    let k = m.field().clone();
    let twist = DrinfeldModule::rank1(&k, &m.g(2).neg(&k))?;
    let scalar = rank1_frobenius_scalar(&twist, p, rf)?;
    Ok(mat.det(rf) == scalar)
}
