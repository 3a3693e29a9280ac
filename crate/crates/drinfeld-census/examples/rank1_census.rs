//! Exhaustive rank-1 census: every nonzero Delta with deg < L, tallied by
//! defect, with the exact nonsurjectivity ratio.  Defect depends only on
//! (degree, leading coefficient), so blocks of q^d twists share one record
//! and the census runs in O(q L) defect evaluations.

use drinfeld_census::rank1::rank1_census;
use drinfeld_census::FieldCtx;

fn main() -> drinfeld_census::Result<()> {
    let k = FieldCtx::new(5, 1)?;
    for l in 1..=6 {
        let c = rank1_census(&k, l)?;
        println!("{}", serde_json::to_string(&c).unwrap());
    }
    Ok(())
}
