//! The closed-form nonsurjective count next to the exhaustive census, with
//! the limiting lower bound.  The two columns genuinely diverge (the census
//! is the ground truth here), and the ratio column oscillates with the
//! parity of the top degree instead of decreasing monotonically; the report
//! flags both phenomena rather than hiding them.

use drinfeld_census::rank1::rank1_report;
use drinfeld_census::FieldCtx;

fn main() -> drinfeld_census::Result<()> {
    for q in [3, 4, 5] {
        let (p, e) = if q == 4 { (2, 2) } else { (q, 1) };
        let k = FieldCtx::new(p, e)?;
        let report = rank1_report(&k, 8)?;
        println!(
            "q = {}  limiting bound = {}  monotone from L=2: {}",
            report.q, report.bound, report.monotone_from_l2
        );
        for r in &report.rows {
            println!(
                "  L = {}  census = {:>8}  formula = {:>10}  ratio = {:>12}  agree = {}",
                r.l, r.nonsurjective, r.formula_count,
                format!("{}/{}", r.ratio_num, r.ratio_den),
                r.formula_agrees
            );
        }
    }
    Ok(())
}
