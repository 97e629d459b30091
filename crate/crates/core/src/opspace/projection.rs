use faer::{c64, Mat, Side};

use super::matrix::ComplexMatrix;
use crate::error::{ensure_dims, Error, Result};

/// `‖P² − P‖_HS` and `‖P − P*‖_HS`.
pub fn projection_residuals(p: &ComplexMatrix) -> (f64, f64) {
    if !p.is_square() {
        return (f64::INFINITY, f64::INFINITY);
    }
    let idem = (&(p * p) - p).hs_norm();
    let herm = (p - &p.adjoint()).hs_norm();
    (idem, herm)
}

pub fn is_projection(p: &ComplexMatrix, tol: f64) -> bool {
    let (idem, herm) = projection_residuals(p);
    idem <= tol && herm <= tol
}

/// Eigendecomposition of the Hermitian part of `h`; eigenvalues ascending.
pub(crate) fn hermitian_eigen(h: &ComplexMatrix) -> Result<(Vec<f64>, Mat<c64>)> {
    let sym = (h + &h.adjoint()).scale_real(0.5);
    let evd = sym
        .as_mat()
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Decomposition(format!("{e:?}")))?;
    let n = h.rows();
    let values = (0..n).map(|k| evd.S().column_vector()[k].re).collect();
    Ok((values, evd.U().to_owned()))
}

/// Orthogonal projection onto the span of the given columns of `vecs`.
pub(crate) fn projector_onto_columns(vecs: &Mat<c64>, cols: &[usize]) -> ComplexMatrix {
    let n = vecs.nrows();
    let sel = Mat::<c64>::from_fn(n, cols.len(), |i, k| vecs[(i, cols[k])]);
    ComplexMatrix::from_mat(&sel * sel.adjoint())
}

/// Infimum `P ∧ Q`: the projection onto `ran P ∩ ran Q`.
///
/// Computed as the spectral projection of `P + Q` for eigenvalues within
/// `tol` of 2.
pub fn projection_meet(p: &ComplexMatrix, q: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    ensure_dims(p.is_square() && p.rows() == q.rows() && q.is_square(), || {
        format!("meet of {}x{} and {}x{}", p.rows(), p.cols(), q.rows(), q.cols())
    })?;
    if !is_projection(p, tol) || !is_projection(q, tol) {
        return Err(Error::NotProjection);
    }
    let (values, vecs) = hermitian_eigen(&(p + q))?;
    let top: Vec<usize> = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| (v - 2.0).abs() <= tol)
        .map(|(k, _)| k)
        .collect();
    Ok(projector_onto_columns(&vecs, &top))
}
