//! The large-sieve quantity L(K) = 1 + sum over squarefree monic M with
//! deg M <= K of prod_(p|M) (1-a_p)/a_p, evaluated exactly, and the sieve
//! inequality #X . L(K) <= q^(2(m0+1)) it powers.

use num_bigint::BigInt;
use num_rational::BigRational;

use drinfeld_census::poly::monic_irreducibles;
use drinfeld_census::sieve::{
    large_sieve_value, rank2_box_size, sieve_bound_check, Orientation, SieveParams,
};
use drinfeld_census::FieldCtx;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn main() -> drinfeld_census::Result<()> {
    let k = FieldCtx::new(5, 1)?;
    for (label, a, k_cut) in [("a = 1/2", rat(1, 2), 1), ("a = 1/3", rat(1, 3), 1), ("a = 1/2", rat(1, 2), 3)] {
        let entries = monic_irreducibles(&k, k_cut)
            .into_iter()
            .map(|p| (p, a.clone()))
            .collect();
        let params = SieveParams::new(k_cut, entries)?;
        let std = large_sieve_value(&k, &params, Orientation::Standard)?;
        let flip = large_sieve_value(&k, &params, Orientation::Flipped)?;
        println!("K = {k_cut}, {label} on every prime: L = {std} (flipped orientation: {flip})");
    }

    // The inequality on the 600-pair box at q = 5, L = 2, K = 1.
    let entries = monic_irreducibles(&k, 1).into_iter().map(|p| (p, rat(1, 2))).collect();
    let params = SieveParams::new(1, entries)?;
    let l_value = large_sieve_value(&k, &params, Orientation::Standard)?;
    let x = rank2_box_size(5, 2);
    let check = sieve_bound_check(5, 2, 1, x, &l_value);
    println!(
        "\nbox of {x} pairs, L(1) = {l_value}: {} <= {} (m0 = {}) holds: {}",
        check.lhs, check.rhs, check.m0, check.holds
    );
    Ok(())
}
