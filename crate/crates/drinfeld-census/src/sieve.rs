//! Large-sieve evaluation, per-prime Frobenius-class censuses, and the
//! closed-form density lower bounds.
//!
//! The sieve quantity is L(K) = 1 + sum over squarefree monic M with
//! 1 <= deg M <= K of prod_(p | M) (1-a_p)/a_p, for a map p -> a_p in (0,1]
//! on monic irreducibles.  Primes missing from the map default to a_p = 1
//! and kill every subset containing them.  The sieve statement itself:
//! if a set X of rank-2 coefficient pairs has reductions confined to an
//! a_p-fraction of (A/p)^2 for each prime of degree <= K, then
//! #X . L(K) <= q^(2 (m0 + 1)) with m0 = max(log_q x, 2K - 1).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::drinfeld::ReducedModule;
use crate::ext::ExtFieldCtx;
use crate::field::FieldCtx;
use crate::galois::{frobenius_matrix_reduced, ClassTable, ResidueField};
use crate::poly::{monic_irreducibles, FqPoly, PrimeIdeal};
use crate::{Error, Result};

/// Which ratio each prime contributes to the sieve sum.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Orientation {
    /// (1 - a)/a, the form the bound is proved with.
    Standard,
    /// a/(1 - a), the printed variant; undefined where a = 1.
    Flipped,
}

/// Cut-off degree K and the density map p -> a_p.
#[derive(Clone, Debug)]
pub struct SieveParams {
    k_cut: usize,
    a: BTreeMap<FqPoly, BigRational>,
}

impl SieveParams {
    /// Each a must lie in (0, 1].
    pub fn new(k_cut: usize, entries: Vec<(PrimeIdeal, BigRational)>) -> Result<SieveParams> {
        let mut a = BTreeMap::new();
        for (p, v) in entries {
            if v <= BigRational::zero() || v > BigRational::one() {
                return Err(Error::Config(format!(
                    "a({}) = {} is outside (0, 1]",
                    p.display(),
                    v
                )));
            }
            a.insert(p.gen().clone(), v);
        }
        Ok(SieveParams { k_cut, a })
    }

    pub fn k_cut(&self) -> usize {
        self.k_cut
    }

    pub fn a_of(&self, p: &PrimeIdeal) -> Option<&BigRational> {
        self.a.get(p.gen())
    }
}

/// Exact L(K).  Guard: the squarefree enumeration is q^(K+1)-sized, capped
/// at 4e6 codes (covers K = 6 at q = 7 with room).
pub fn large_sieve_value(
    k: &FieldCtx,
    params: &SieveParams,
    orient: Orientation,
) -> Result<BigRational> {
    let q = k.q() as u64;
    match q.checked_pow(params.k_cut as u32 + 1) {
        Some(n) if n <= 4_000_000 => {}
        _ => {
            return Err(Error::RangeTooLarge(format!(
                "squarefree enumeration to degree {} at q = {}",
                params.k_cut, q
            )))
        }
    }
    // Primes with factor 0 never contribute; drop them up front.
    let mut factors: Vec<(usize, BigRational)> = Vec::new();
    for p in monic_irreducibles(k, params.k_cut) {
        let Some(a) = params.a_of(&p) else { continue };
        let f = match orient {
            Orientation::Standard => (BigRational::one() - a) / a,
            Orientation::Flipped => {
                let denom = BigRational::one() - a;
                if denom.is_zero() {
                    return Err(Error::Config(format!(
                        "flipped orientation is undefined at a({}) = 1",
                        p.display()
                    )));
                }
                a / denom
            }
        };
        if !f.is_zero() {
            factors.push((p.degree(), f));
        }
    }
    // Primes come out sorted by (degree, canonical), so the walk can stop
    // as soon as the degree budget is exceeded.
    fn walk(
        factors: &[(usize, BigRational)],
        from: usize,
        budget: usize,
        prod: &BigRational,
        total: &mut BigRational,
    ) {
        for j in from..factors.len() {
            let (d, f) = &factors[j];
            if *d > budget {
                break;
            }
            let term = prod * f;
            *total += &term;
            walk(factors, j + 1, budget - d, &term, total);
        }
    }
    let mut total = BigRational::zero();
    walk(&factors, 0, params.k_cut, &BigRational::one(), &mut total);
    Ok(total + BigRational::one())
}

/// The sieve inequality, evaluated exactly.
#[derive(Serialize, Clone, Debug)]
pub struct SieveBoundCheck {
    /// #X . L(K) as an exact "num/den".
    pub lhs: String,
    /// q^(2 (m0 + 1)).
    pub rhs: String,
    pub m0: usize,
    pub holds: bool,
}

/// Check #X . L(K) <= q^(2 (m0 + 1)) with m0 = max(log_q x, 2K - 1); the
/// box exponent L plays the role of log_q x.
pub fn sieve_bound_check(
    q: u32,
    box_log_q: usize,
    k_cut: usize,
    x_count: u128,
    l_value: &BigRational,
) -> SieveBoundCheck {
    let m0 = box_log_q.max((2 * k_cut).saturating_sub(1));
    let lhs = BigRational::from_integer(BigInt::from(x_count)) * l_value;
    let rhs = BigInt::from(q).pow(2 * (m0 as u32 + 1));
    SieveBoundCheck {
        lhs: format!("{}/{}", lhs.numer(), lhs.denom()),
        rhs: rhs.to_string(),
        m0,
        holds: lhs <= BigRational::from_integer(rhs),
    }
}

/// Exact number of rank-2 coefficient pairs (g1, g2 != 0) with both degrees
/// below L: q^L (q^L - 1).
pub fn rank2_box_size(q: u32, l: usize) -> u128 {
    let n = (q as u128).pow(l as u32);
    n * (n - 1)
}

/// One Frobenius-class cell of an omega census.
#[derive(Serialize, Clone, Debug)]
pub struct OmegaRow {
    /// SL2 class id when det = 1; None at other determinants.
    pub class_id: Option<u32>,
    /// x^2 - tr x + det, with residue coefficients spelled out.
    pub charpoly: String,
    pub det: String,
    pub count: u64,
}

/// Distribution of Frobenius classes over every reduced rank-2 module at p.
#[derive(Serialize, Clone, Debug)]
pub struct OmegaCensus {
    pub p: String,
    pub ell: String,
    /// |F_p|.
    pub q_p: u64,
    /// |F_p| (|F_p| - 1) pairs, all accounted for.
    pub total: u64,
    pub rows: Vec<OmegaRow>,
}

impl OmegaCensus {
    /// CSV lines (p, ell, class_id, charpoly, det, count), no header.
    pub fn csv_rows(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|r| {
                format!(
                    "{},{},{},{},{},{}",
                    self.p,
                    self.ell,
                    r.class_id.map(|i| i.to_string()).unwrap_or_default(),
                    r.charpoly,
                    r.det,
                    r.count
                )
            })
            .collect()
    }
}

fn wrap_coeff(s: &str) -> String {
    if s.contains(['+', '-', '*']) {
        format!("({s})")
    } else {
        s.to_string()
    }
}

fn charpoly_string(rf: &ResidueField, trace: u16, det: u16) -> String {
    // x^2 - tr x + det, term by term, skipping zeros.
    let mut out = String::from("x^2");
    let neg_tr = rf.neg(trace);
    if neg_tr != 0 {
        out.push('+');
        let c = wrap_coeff(&rf.display(neg_tr));
        if c == "1" {
            out.push('x');
        } else {
            out.push_str(&format!("{c}*x"));
        }
    }
    if det != 0 {
        out.push('+');
        out.push_str(&wrap_coeff(&rf.display(det)));
    }
    out
}

/// Exhaustive Frobenius-class census over all (g1bar, g2bar != 0) in
/// (A/p)^2, classified at the GL2 level (char poly + det) and refined by
/// SL2 class id where det = 1.  Guards: p != ell, |F_p| <= 2^8.
pub fn omega_census(k: &FieldCtx, p: &PrimeIdeal, ell: &PrimeIdeal) -> Result<OmegaCensus> {
    if p.gen() == ell.gen() {
        return Err(Error::EllEqualsP(ell.display()));
    }
    let q_p = p.norm(k);
    if q_p > 1 << 8 {
        return Err(Error::FieldTooLarge(q_p));
    }
    let rf = ResidueField::new(k, ell)?;
    let table = ClassTable::cached(&rf)?;
    let res = ExtFieldCtx::with_modulus(k, p.gen())?;
    let elems: Vec<_> = res.elements().collect();
    let t_bar = res.from_poly(&FqPoly::t());
    // Key: (det, trace, SL2 class), ascending; the census is a partition.
    let mut tally: BTreeMap<(u16, u16, Option<u32>), u64> = BTreeMap::new();
    for g1 in &elems {
        for g2 in &elems {
            if crate::ext::ext_is_zero(g2) {
                continue;
            }
            let red = ReducedModule::from_residues(
                res.clone(),
                vec![t_bar.clone(), g1.clone(), g2.clone()],
            )?;
            let mat = frobenius_matrix_reduced(&red, p, &rf)?;
            let (tr, det) = mat.char_poly(&rf);
            let class = if det == 1 { table.class_of(&mat) } else { None };
            *tally.entry((det, tr, class)).or_default() += 1;
        }
    }
    let total: u64 = tally.values().sum();
    debug_assert_eq!(total, q_p * (q_p - 1));
    let rows = tally
        .into_iter()
        .map(|((det, tr, class), count)| OmegaRow {
            class_id: class,
            charpoly: charpoly_string(&rf, tr, det),
            det: rf.display(det),
            count,
        })
        .collect();
    Ok(OmegaCensus {
        p: p.display(),
        ell: ell.display(),
        q_p,
        total,
        rows,
    })
}

/// Lower bound for the density of modules whose mod-ell image contains SL2:
/// 1 - q^(-deg ell).
pub fn sl2_density_lower_bound(q: u32, ell_deg: usize) -> BigRational {
    BigRational::one()
        - BigRational::new(BigInt::one(), BigInt::from(q).pow(ell_deg as u32))
}

/// Joint bound over a finite prime set, by inclusion-exclusion over subsets;
/// the result provably collapses to prod (1 - q^(-deg ell)), and the
/// collapse is asserted.
pub fn joint_sl2_density_lower_bound(q: u32, ell_degs: &[usize]) -> BigRational {
    let mut total = BigRational::zero();
    for mask in 0u64..1 << ell_degs.len() {
        let deg_sum: usize = ell_degs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, d)| d)
            .sum();
        let term = BigRational::new(BigInt::one(), BigInt::from(q).pow(deg_sum as u32));
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    let product: BigRational = ell_degs
        .iter()
        .map(|&d| sl2_density_lower_bound(q, d))
        .product();
    assert_eq!(total, product, "inclusion-exclusion collapses to the product");
    total
}

/// Lower bound for full adelic surjectivity: the joint SL2 bound minus the
/// rank-1 obstruction sum over divisors t of q-1 with 2 <= t <= q-2 of
/// (q-1)/(q^t - 1).
pub fn surjective_density_lower_bound(q: u32, ell_degs: &[usize]) -> BigRational {
    let mut out = joint_sl2_density_lower_bound(q, ell_degs);
    for t in 2..=q.saturating_sub(2) {
        if (q - 1) % t != 0 {
            continue;
        }
        out -= BigRational::new(BigInt::from(q - 1), BigInt::from(q).pow(t) - 1);
    }
    out
}

/// The density-bound report for a prime set S.
#[derive(Serialize, Clone, Debug)]
pub struct BoundReport {
    pub q: u32,
    #[serde(rename = "S")]
    pub s: Vec<String>,
    /// Per-prime SL2 bounds, keyed by the prime's display form.
    pub per_ell: BTreeMap<String, String>,
    /// Joint SL2 bound as "num/den".
    pub joint: String,
    /// Full surjectivity bound as "num/den".
    pub surjective: String,
}

fn ratio_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn bound_report(k: &FieldCtx, s: &[PrimeIdeal]) -> BoundReport {
    let q = k.q();
    let degs: Vec<usize> = s.iter().map(|p| p.degree()).collect();
    let per_ell = s
        .iter()
        .map(|p| {
            (
                p.display(),
                ratio_str(&sl2_density_lower_bound(q, p.degree())),
            )
        })
        .collect();
    BoundReport {
        q,
        s: s.iter().map(|p| p.display()).collect(),
        per_ell,
        joint: ratio_str(&joint_sl2_density_lower_bound(q, &degs)),
        surjective: ratio_str(&surjective_density_lower_bound(q, &degs)),
    }
}
