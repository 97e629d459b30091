//! Dense complex matrices and Hilbert–Schmidt subspace arithmetic.

mod matrix;
mod projection;
mod subspace;

pub use matrix::{
    hs_inner, leg_index_map, leg_permutation_unitary, permute_systems, ComplexMatrix, ONE, ZERO,
};
pub use projection::{is_projection, projection_meet, projection_residuals};
pub use subspace::{orthonormalize, OperatorSubspace, DEFAULT_TOL, RANK_TOL};

use crate::error::Result;

pub fn contains(s: &OperatorSubspace, x: &ComplexMatrix, tol: f64) -> Result<bool> {
    s.contains(x, tol)
}

pub fn subspace_sum(a: &OperatorSubspace, b: &OperatorSubspace) -> Result<OperatorSubspace> {
    a.sum(b)
}

pub fn subspace_tensor(a: &OperatorSubspace, b: &OperatorSubspace) -> OperatorSubspace {
    a.tensor(b)
}

pub fn subspace_perp(s: &OperatorSubspace) -> Result<OperatorSubspace> {
    s.perp()
}
