//! Frobenius-class census: for every reduced pair (g1, g2 != 0) over A/p,
//! classify the Frobenius matrix on ell-torsion by characteristic polynomial
//! and determinant, refined by SL2 conjugacy class where det = 1.  The cells
//! partition the |F_p|(|F_p| - 1) pairs exactly.

use drinfeld_census::sieve::omega_census;
use drinfeld_census::{FieldCtx, PrimeIdeal};

fn main() -> drinfeld_census::Result<()> {
    let k = FieldCtx::new(5, 1)?;
    let ell = PrimeIdeal::parse("T", &k)?;
    for p_str in ["T+1", "T+2"] {
        let p = PrimeIdeal::parse(p_str, &k)?;
        let census = omega_census(&k, &p, &ell)?;
        println!("# p = {}, ell = {}, {} pairs", census.p, census.ell, census.total);
        println!("p,ell,class_id,charpoly,det,count");
        for line in census.csv_rows() {
            println!("{line}");
        }
        println!();
    }
    Ok(())
}
