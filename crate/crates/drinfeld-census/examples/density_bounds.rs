//! Closed-form density lower bounds: per-prime and joint bounds for the
//! mod-ell image containing SL2, and the bound for full adelic surjectivity
//! (joint bound minus the rank-1 determinant obstruction).

use drinfeld_census::sieve::bound_report;
use drinfeld_census::{FieldCtx, PrimeIdeal};

fn main() -> drinfeld_census::Result<()> {
    for (p, e, primes) in [
        (5, 1, vec!["T"]),
        (5, 1, vec!["T", "T+4"]),
        (2, 2, vec!["T"]),
        (7, 1, vec!["T", "T+1", "T^2+1"]),
    ] {
        let k = FieldCtx::new(p, e)?;
        let s: Vec<PrimeIdeal> = primes
            .iter()
            .map(|s| PrimeIdeal::parse(s, &k))
            .collect::<drinfeld_census::Result<_>>()?;
        let report = bound_report(&k, &s);
        println!("q = {}, S = {:?}", report.q, report.s);
        for (ell, bound) in &report.per_ell {
            println!("  mod-({ell}) image contains SL2 for >= {bound} of all modules");
        }
        println!("  jointly for S:      >= {}", report.joint);
        println!("  fully surjective:   >= {}\n", report.surjective);
    }
    Ok(())
}
