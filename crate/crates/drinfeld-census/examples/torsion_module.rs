//! A rank-2 Drinfeld module phi_T = T + g1.tau + g2.tau^2, reduced at a
//! prime p, and the additive polynomial phi_ell cutting out its ell-torsion.

use drinfeld_census::drinfeld::DrinfeldModule;
use drinfeld_census::{FieldCtx, FqPoly, PrimeIdeal};

fn main() -> drinfeld_census::Result<()> {
    let k = FieldCtx::new(5, 1)?;
    let g1 = FqPoly::parse("T+1", &k)?;
    let g2 = FqPoly::parse("2", &k)?;
    let m = DrinfeldModule::rank2(&k, &g1, &g2)?;
    println!("phi_T coefficients (tau^0, tau^1, tau^2):");
    for i in 0..=m.rank() {
        let c = if i == 0 { FqPoly::t() } else { m.g(i).clone() };
        println!("  tau^{i}: {}", c.display());
    }

    // phi is a ring homomorphism, so phi_a follows from phi_T by Horner.
    let a = FqPoly::parse("T^2+3", &k)?;
    let phi_a = m.phi(&a);
    println!("phi_(T^2+3) has tau-degree {}", phi_a.tau_deg().unwrap());

    for s in ["T+2", "T^2+2"] {
        let p = PrimeIdeal::parse(s, &k)?;
        let red = m.reduce(&p)?;
        let ell = PrimeIdeal::parse("T", &k)?;
        let coeffs = red.torsion_coeffs(&ell);
        println!(
            "mod {}: good reduction = {}, phi_ell spans x^(q^0..q^{}), so the \
             ell-torsion is a {}-dimensional F_q-space",
            p.display(),
            red.is_good(),
            coeffs.len() - 1,
            coeffs.len() - 1,
        );
    }
    Ok(())
}
