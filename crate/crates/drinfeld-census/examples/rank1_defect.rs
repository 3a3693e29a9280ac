//! Defect of a twisted Carlitz module phi_T = T + Delta.tau: the index of
//! the adelic Galois image, computed from deg(Delta) and its leading
//! coefficient alone.  Defect 1 means the image is everything.

use drinfeld_census::rank1::defect;
use drinfeld_census::{FieldCtx, FqPoly};

fn main() -> drinfeld_census::Result<()> {
    let k = FieldCtx::new(5, 1)?;
    for s in ["1", "T^3", "2*T^2", "4*T+4", "3*T^7+1", "T^2+T+1"] {
        let delta = FqPoly::parse(s, &k)?;
        let rec = defect(&k, &delta)?;
        println!(
            "Delta = {:10}  deg = {}  k0 = {}  k0* = {}  defect = {}{}",
            delta.display(),
            rec.d,
            rec.k0,
            rec.k0_star,
            rec.defect,
            if rec.defect == 1 { "  (adelically surjective)" } else { "" }
        );
    }
    Ok(())
}
