//! Mod-ell and l-adic image verdicts.  ContainsSL2 is always backed by an
//! explicitly generated matrix subgroup; anything short of that is
//! Undetermined, never a negative claim, because finite Frobenius sampling
//! cannot prove non-containment.

use drinfeld_census::drinfeld::DrinfeldModule;
use drinfeld_census::galois::ModEllProber;
use drinfeld_census::{FieldCtx, FqPoly, PrimeIdeal};

fn main() -> drinfeld_census::Result<()> {
    let k = FieldCtx::new(5, 1)?;
    let ell = PrimeIdeal::parse("T", &k)?;
    let prober = ModEllProber::new(&k, &ell)?;
    for (g1, g2) in [("0", "1"), ("T+1", "2"), ("1", "T"), ("2*T", "T^2+T")] {
        let m = DrinfeldModule::rank2(&k, &FqPoly::parse(g1, &k)?, &FqPoly::parse(g2, &k)?)?;
        let ev = prober.l_adic_verdict(&m, 2)?;
        let covered = ev.class_coverage.iter().filter(|&&b| b).count();
        println!(
            "g1 = {:4}  g2 = {:6}  {:?}  primes {:?}  subgroup order {}  classes {}/{}{}",
            g1,
            g2,
            ev.verdict,
            ev.primes_used,
            ev.subgroup_order,
            covered,
            ev.class_coverage.len(),
            match ev.g2_in_ell {
                Some(true) => "  (ell | g2 blocks the l-adic lift)",
                _ => "",
            }
        );
    }
    Ok(())
}
