//! Frobenius matrices on ell-torsion: for each good prime p, the |F_p|-power
//! map acts linearly on the two-dimensional A/ell-module phi[ell], and its
//! matrix is computed from an explicit torsion basis inside the splitting
//! field.  The determinant must agree with the rank-1 scalar of the twist
//! psi_T = T - g2.tau, which is checked last.

use drinfeld_census::drinfeld::DrinfeldModule;
use drinfeld_census::galois::{
    det_compatibility_check, frobenius_matrix, torsion_basis, ResidueField,
};
use drinfeld_census::poly::monic_irreducibles;
use drinfeld_census::{FieldCtx, FqPoly, PrimeIdeal};

fn main() -> drinfeld_census::Result<()> {
    let k = FieldCtx::new(5, 1)?;
    let ell = PrimeIdeal::parse("T", &k)?;
    let rf = ResidueField::new(&k, &ell)?;
    let m = DrinfeldModule::rank2(&k, &FqPoly::parse("1", &k)?, &FqPoly::parse("T+1", &k)?)?;
    println!("phi_T = T + tau + (T+1) tau^2, ell = (T)\n");
    for p in monic_irreducibles(&k, 2) {
        if p.gen() == ell.gen() || p.divides(m.g(2), &k) {
            continue;
        }
        let basis = torsion_basis(&m, &p, &rf)?;
        let mat = frobenius_matrix(&m, &p, &rf)?;
        let (tr, det) = mat.char_poly(&rf);
        println!(
            "p = {:6}  splitting field degree {:2}  Frob = {}  trace = {}  det = {}",
            p.display(),
            basis.splitting_field().degree(),
            mat.display(&rf),
            rf.display(tr),
            rf.display(det),
        );
        assert!(det_compatibility_check(&m, &p, &rf)?);
    }
    println!("\ndet(Frob_p) = rank-1 scalar of psi_T = T - (T+1) tau at every prime above");
    Ok(())
}
