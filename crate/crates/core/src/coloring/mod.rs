//! Coloring and homomorphism certificates, their verifiers, and the
//! constructive transformations between colorings.
//!
//! A certificate lives on `C^n ⊗ C^{d_N}` with the graph leg first. The
//! permuted tensor product `X ⊙ Y` of operators on `(H_G, N_G)` and
//! `(H_H, N_H)` is `X ⊗ Y` with its legs reordered to `(H_G, H_H, N_G, N_H)`.

mod certificate;
mod complete;
mod homomorphism;
mod transform;
mod verify;

pub use certificate::{ColoringCertificate, HomomorphismCertificate};
pub use complete::{bell_coloring, complete_lower_bound_extract, lower_bound_operators};
pub use homomorphism::{hedetniemi_witness, sabidussi_witness, verify_homomorphism, Factor};
pub use transform::{
    categorical_lift, combine_bfold, lexicographic_coloring, reduce_bfold, scale_bfold,
    strong_coloring, Constructed, Reduced,
};
pub use verify::{bfold_from_pvm, pvm_from_bfold, verify_bfold, verify_coloring, PvmEntry};
