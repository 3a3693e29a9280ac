//! Mod-ell Galois image probes for rank-2 modules.
//!
//! The mod-ell representation sends the Frobenius at a good prime p != ell
//! to a 2x2 matrix over A/ell, computed here explicitly: the ell-torsion of
//! the reduced module is split over an extension of F_p, a basis is chosen
//! canonically, and the |F_p|-power map is resolved in coordinates.  Matrices
//! at several primes generate a subgroup of GL_2(A/ell); when that subgroup
//! is verified (by exhaustive closure) to contain all of SL_2, the image
//! verdict is `ContainsSL2`.  The machinery never claims the converse: the
//! fallback verdict is `Undetermined`.

mod classes;
mod frobenius;
mod resfield;
mod verdict;

pub use classes::{
    contains_sl2, generated_subgroup, sl2_order, ClassInfo, ClassTable, Mat2, Subgroup,
};
pub use frobenius::{
    det_compatibility_check, frobenius_matrix, frobenius_matrix_reduced,
    frobenius_matrix_shuffled, rank1_frobenius_scalar, torsion_basis, TorsionBasis,
};
pub use resfield::ResidueField;
pub use verdict::{ModEllProber, Verdict, VerdictEvidence};
