//! Conjugacy-class tables of SL2 over small residue fields.  Class ids are
//! canonical (ascending minimal member), so they are stable across runs and
//! safe to use as census keys.

use drinfeld_census::galois::{sl2_order, ClassTable, ResidueField};
use drinfeld_census::{FieldCtx, PrimeIdeal};

fn main() -> drinfeld_census::Result<()> {
    for (p, e, ell_str) in [(2, 2, "T"), (5, 1, "T"), (5, 1, "T^2+2")] {
        let k = FieldCtx::new(p, e)?;
        let ell = PrimeIdeal::parse(ell_str, &k)?;
        let rf = ResidueField::new(&k, &ell)?;
        let table = ClassTable::cached(&rf)?;
        println!(
            "SL2(F_{}[T]/({})): order {}, {} classes",
            k.q(),
            ell.display(),
            sl2_order(rf.q_l()),
            table.classes().len()
        );
        for info in table.classes() {
            let (tr, det) = info.rep.char_poly(&rf);
            println!(
                "  class {:2}  size {:4}  rep {:24}  charpoly x^2 - ({})x + {}",
                info.id,
                info.size,
                info.rep.display(&rf),
                rf.display(tr),
                rf.display(det)
            );
        }
    }
    Ok(())
}
