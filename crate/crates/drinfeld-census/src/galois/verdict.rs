//! Image verdicts for rank-2 modules at a fixed prime ell.
//!
//! Soundness ratchet: `ContainsSL2` is only ever returned on the strength of
//! an explicitly generated matrix subgroup that passes the exact SL2 count.
//! Anything short of that is `Undetermined`; there is no negative verdict,
//! because missing a few Frobenius classes proves nothing.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use super::classes::{contains_sl2, generated_subgroup, ClassTable, Mat2, Subgroup};
use super::frobenius::frobenius_matrix;
use super::resfield::ResidueField;
use crate::drinfeld::DrinfeldModule;
use crate::field::FieldCtx;
use crate::poly::{monic_irreducibles, PrimeIdeal};
use crate::{Error, Result};

#[derive(Serialize, Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    ContainsSL2,
    Undetermined,
}

/// What a verdict rests on: which primes were sampled, how large the
/// generated subgroup got, and which SL2 classes its det-1 part touches.
#[derive(Serialize, Clone, Debug)]
pub struct VerdictEvidence {
    pub verdict: Verdict,
    pub primes_used: Vec<String>,
    pub subgroup_order: u64,
    pub class_coverage: Vec<bool>,
    /// Set by the l-adic refinement: whether ell divides g2.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g2_in_ell: Option<bool>,
}

type FrobKey = (Vec<u8>, Vec<Vec<u8>>);

/// Shared per-ell prober: residue field, class table, and a cache of
/// Frobenius matrices keyed by (p, reduced coefficients).
pub struct ModEllProber {
    k: FieldCtx,
    rf: ResidueField,
    table: Arc<ClassTable>,
    cache: Mutex<HashMap<FrobKey, Mat2>>,
}

impl ModEllProber {
    pub fn new(k: &FieldCtx, ell: &PrimeIdeal) -> Result<ModEllProber> {
        let rf = ResidueField::new(k, ell)?;
        let table = ClassTable::cached(&rf)?;
        Ok(ModEllProber {
            k: k.clone(),
            rf,
            table,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn rf(&self) -> &ResidueField {
        &self.rf
    }

    pub fn table(&self) -> &ClassTable {
        &self.table
    }

    pub fn ell(&self) -> &PrimeIdeal {
        self.rf.prime()
    }

    /// Cached Frobenius matrix; the key is the reduction, so isomorphic
    /// inputs share work.
    pub fn frobenius(&self, m: &DrinfeldModule, p: &PrimeIdeal) -> Result<Mat2> {
        let red = m.reduce(p)?;
        let key: FrobKey = (
            p.gen().coeffs().to_vec(),
            (1..=m.rank()).map(|i| red.res().from_poly(m.g(i))).collect(),
        );
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return Ok(*hit);
        }
        let mat = frobenius_matrix(m, p, &self.rf)?;
        self.cache.lock().unwrap().insert(key, mat);
        Ok(mat)
    }

    fn evidence(&self, verdict: Verdict, primes: Vec<String>, sub: &Subgroup) -> VerdictEvidence {
        VerdictEvidence {
            verdict,
            primes_used: primes,
            subgroup_order: sub.order(),
            class_coverage: self.table.coverage(sub.elems.iter()),
            g2_in_ell: None,
        }
    }

    /// Sample Frobenius at every good prime p != ell of degree <= d_cap, in
    /// canonical order, growing the generated subgroup until it provably
    /// contains SL2 (early exit) or the primes run out (Undetermined).
    pub fn mod_l_verdict(&self, m: &DrinfeldModule, d_cap: usize) -> Result<VerdictEvidence> {
        if m.rank() != 2 {
            return Err(Error::Config(format!(
                "image verdicts need rank 2, got rank {}",
                m.rank()
            )));
        }
        let mut gens: Vec<Mat2> = Vec::new();
        let mut primes: Vec<String> = Vec::new();
        let mut sub = generated_subgroup(&self.rf, &gens)?;
        let mut any_good = false;
        for p in monic_irreducibles(&self.k, d_cap) {
            if p.gen() == self.ell().gen() {
                continue;
            }
            if !m.reduce(&p)?.is_good() {
                continue;
            }
            any_good = true;
            let mat = self.frobenius(m, &p)?;
            primes.push(p.display());
            if !sub.contains(&mat) {
                gens.push(mat);
                sub = generated_subgroup(&self.rf, &gens)?;
            }
            if contains_sl2(&self.rf, &sub) {
                return Ok(self.evidence(Verdict::ContainsSL2, primes, &sub));
            }
        }
        if !any_good {
            return Err(Error::NoGoodPrimes(d_cap));
        }
        Ok(self.evidence(Verdict::Undetermined, primes, &sub))
    }

    /// l-adic refinement: the full image contains SL2 exactly when the
    /// mod-ell image does and ell does not divide g2.
    pub fn l_adic_verdict(&self, m: &DrinfeldModule, d_cap: usize) -> Result<VerdictEvidence> {
        let q = self.k.q();
        if q < 4 {
            return Err(Error::QTooSmall(q));
        }
        let mut ev = self.mod_l_verdict(m, d_cap)?;
        let divides = self.ell().divides(m.g(2), &self.k);
        ev.g2_in_ell = Some(divides);
        if divides {
            ev.verdict = Verdict::Undetermined;
        }
        Ok(ev)
    }
}
