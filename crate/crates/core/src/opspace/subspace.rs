use faer::{c64, Mat};

use super::matrix::ComplexMatrix;
use crate::error::{ensure_dims, Error, Result};

/// Default membership / comparison tolerance, relative to HS norm.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Singular values below this fraction of the largest input norm are dropped.
pub const RANK_TOL: f64 = 1e-10;

// Bound on the number of columns projected at once in batched membership tests.
const BATCH: usize = 512;

/// A subspace of `M_n` with a Hilbert–Schmidt orthonormal basis.
///
/// The basis is stored as the columns of an `n² × k` matrix, each column the
/// row-major vectorization of one basis element, so that HS inner products
/// become ordinary dot products.
#[derive(Clone, Debug)]
pub struct OperatorSubspace {
    ambient: usize,
    basis: Mat<c64>,
}

fn columns_of(n: usize, xs: &[ComplexMatrix]) -> Result<Mat<c64>> {
    for x in xs {
        ensure_dims(x.rows() == n && x.cols() == n, || {
            format!("{}x{} matrix in a subspace of M_{n}", x.rows(), x.cols())
        })?;
    }
    let mut m = Mat::<c64>::zeros(n * n, xs.len());
    for (k, x) in xs.iter().enumerate() {
        let col = m.col_as_slice_mut(k);
        for i in 0..n {
            for j in 0..n {
                col[i * n + j] = x.get(i, j);
            }
        }
    }
    Ok(m)
}

/// Orthonormal basis for the span of `vectors` inside `M_n`.
///
/// Rank is decided on the singular values of the stacked vectorizations:
/// directions with singular value `≤ tol × (largest input norm)` are dropped.
/// Empty input yields the zero subspace.
pub fn orthonormalize(n: usize, vectors: &[ComplexMatrix], tol: f64) -> Result<OperatorSubspace> {
    let cols = columns_of(n, vectors)?;
    OperatorSubspace::from_columns(n, cols, tol)
}

impl OperatorSubspace {
    pub fn zero(n: usize) -> Self {
        Self { ambient: n, basis: Mat::zeros(n * n, 0) }
    }

    /// All of `M_n`, spanned by the matrix units.
    pub fn full(n: usize) -> Self {
        Self { ambient: n, basis: Mat::identity(n * n, n * n) }
    }

    /// Span of the matrix units `E_ij` for the given index pairs.
    pub fn from_matrix_units(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut idx: Vec<usize> = pairs.into_iter().map(|(i, j)| i * n + j).collect();
        idx.sort_unstable();
        idx.dedup();
        let mut basis = Mat::<c64>::zeros(n * n, idx.len());
        for (k, &f) in idx.iter().enumerate() {
            basis[(f, k)] = c64::new(1.0, 0.0);
        }
        Self { ambient: n, basis }
    }

    pub fn span(n: usize, vectors: &[ComplexMatrix]) -> Result<Self> {
        orthonormalize(n, vectors, RANK_TOL)
    }

    pub(crate) fn from_columns(n: usize, cols: Mat<c64>, tol: f64) -> Result<Self> {
        ensure_dims(cols.nrows() == n * n, || {
            format!("vectorized length {} for M_{n}", cols.nrows())
        })?;
        let k = cols.ncols();
        if k == 0 {
            return Ok(Self::zero(n));
        }
        let largest = (0..k)
            .map(|j| cols.col(j).norm_l2())
            .fold(0.0_f64, f64::max);
        if largest == 0.0 {
            return Ok(Self::zero(n));
        }
        // Already orthonormal input: every singular value is 1, so the span
        // and rank are unchanged and the SVD can be skipped.
        if k <= n * n {
            let gram = cols.adjoint() * &cols;
            let mut dev = 0.0_f64;
            for j in 0..k {
                for i in 0..k {
                    let target = if i == j { 1.0 } else { 0.0 };
                    dev = dev.max((gram[(i, j)] - c64::new(target, 0.0)).norm());
                }
            }
            if dev <= 1e-12 {
                return Ok(Self { ambient: n, basis: cols });
            }
        }
        let svd = cols
            .thin_svd()
            .map_err(|e| Error::Decomposition(format!("{e:?}")))?;
        let s = svd.S().column_vector();
        let cutoff = tol * largest;
        let rank = (0..s.nrows()).take_while(|&i| s[i].re > cutoff).count();
        let basis = svd.U().subcols(0, rank).to_owned();
        Ok(Self { ambient: n, basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn element(&self, k: usize) -> ComplexMatrix {
        let n = self.ambient;
        let col = self.basis.col_as_slice(k);
        ComplexMatrix::from_fn(n, n, |i, j| col[i * n + j])
    }

    pub fn basis(&self) -> Vec<ComplexMatrix> {
        (0..self.dim()).map(|k| self.element(k)).collect()
    }

    pub(crate) fn columns(&self) -> &Mat<c64> {
        &self.basis
    }

    /// Largest `|⟨B_i, B_j⟩ − δ_ij|` over the stored basis.
    pub fn orthonormality_defect(&self) -> f64 {
        let g = self.basis.adjoint() * &self.basis;
        let k = self.dim();
        let mut dev = 0.0_f64;
        for j in 0..k {
            for i in 0..k {
                let t = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((g[(i, j)] - c64::new(t, 0.0)).norm());
            }
        }
        dev
    }

    /// Relative residuals `‖v − Proj v‖ / max(1, ‖v‖)` of vectorized columns.
    pub(crate) fn column_residuals(&self, vs: &Mat<c64>) -> Vec<f64> {
        let m = vs.ncols();
        let mut out = Vec::with_capacity(m);
        let mut start = 0;
        while start < m {
            let len = BATCH.min(m - start);
            let chunk = vs.subcols(start, len);
            let resid = if self.dim() == 0 {
                chunk.to_owned()
            } else {
                let coeffs = self.basis.adjoint() * chunk;
                chunk - &self.basis * &coeffs
            };
            for j in 0..len {
                let norm = chunk.col(j).norm_l2();
                out.push(resid.col(j).norm_l2() / norm.max(1.0));
            }
            start += len;
        }
        out
    }

    pub fn residuals(&self, xs: &[ComplexMatrix]) -> Result<Vec<f64>> {
        let cols = columns_of(self.ambient, xs)?;
        Ok(self.column_residuals(&cols))
    }

    /// Largest relative residual over `xs` (0 for an empty list).
    pub fn max_residual(&self, xs: &[ComplexMatrix]) -> Result<f64> {
        Ok(self.residuals(xs)?.into_iter().fold(0.0, f64::max))
    }

    pub fn residual(&self, x: &ComplexMatrix) -> Result<f64> {
        self.max_residual(std::slice::from_ref(x))
    }

    /// `‖X − Proj_S X‖ ≤ tol · max(1, ‖X‖)`.
    pub fn contains(&self, x: &ComplexMatrix, tol: f64) -> Result<bool> {
        Ok(self.residual(x)? <= tol)
    }

    /// Largest residual of `other`'s basis inside `self`.
    pub fn containment_residual(&self, other: &OperatorSubspace) -> Result<f64> {
        ensure_dims(self.ambient == other.ambient, || {
            format!("subspaces of M_{} and M_{}", self.ambient, other.ambient)
        })?;
        Ok(self.column_residuals(&other.basis).into_iter().fold(0.0, f64::max))
    }

    pub fn contains_subspace(&self, other: &OperatorSubspace, tol: f64) -> Result<bool> {
        Ok(self.containment_residual(other)? <= tol)
    }

    /// Mutual containment residual; `f64::INFINITY` when dimensions differ.
    pub fn span_distance(&self, other: &OperatorSubspace) -> Result<f64> {
        let a = self.containment_residual(other)?;
        if self.dim() != other.dim() {
            return Ok(f64::INFINITY);
        }
        let b = other.containment_residual(self)?;
        Ok(a.max(b))
    }

    /// Largest residual of `B*` in the span over basis elements `B`.
    pub fn adjoint_closure_residual(&self) -> f64 {
        let n = self.ambient;
        let k = self.dim();
        let mut adj = Mat::<c64>::zeros(n * n, k);
        for c in 0..k {
            let src = self.basis.col_as_slice(c);
            let dst = adj.col_as_slice_mut(c);
            for i in 0..n {
                for j in 0..n {
                    dst[j * n + i] = src[i * n + j].conj();
                }
            }
        }
        self.column_residuals(&adj).into_iter().fold(0.0, f64::max)
    }

    /// `S1 + S2`.
    pub fn sum(&self, other: &OperatorSubspace) -> Result<Self> {
        Self::sum_all(self.ambient, &[self, other])
    }

    pub fn sum_all(n: usize, parts: &[&OperatorSubspace]) -> Result<Self> {
        for p in parts {
            ensure_dims(p.ambient == n, || format!("summand in M_{} for M_{n}", p.ambient))?;
        }
        let total: usize = parts.iter().map(|p| p.dim()).sum();
        let mut cols = Mat::<c64>::zeros(n * n, total);
        let mut k = 0;
        for p in parts {
            for c in 0..p.dim() {
                cols.col_as_slice_mut(k).copy_from_slice(p.basis.col_as_slice(c));
                k += 1;
            }
        }
        Self::from_columns(n, cols, RANK_TOL)
    }

    /// Span of all `A ⊗ B` with `A ∈ S1`, `B ∈ S2`, as a subspace of `M_{n1 n2}`.
    pub fn tensor(&self, other: &OperatorSubspace) -> Self {
        let (n1, n2) = (self.ambient, other.ambient);
        let n = n1 * n2;
        let (k1, k2) = (self.dim(), other.dim());
        let mut cols = Mat::<c64>::zeros(n * n, k1 * k2);
        for a in 0..k1 {
            let va = self.basis.col_as_slice(a);
            for b in 0..k2 {
                let vb = other.basis.col_as_slice(b);
                let dst = cols.col_as_slice_mut(a * k2 + b);
                for i1 in 0..n1 {
                    for j1 in 0..n1 {
                        let x = va[i1 * n1 + j1];
                        if x == c64::new(0.0, 0.0) {
                            continue;
                        }
                        for i2 in 0..n2 {
                            let row = (i1 * n2 + i2) * n + j1 * n2;
                            for j2 in 0..n2 {
                                dst[row + j2] = x * vb[i2 * n2 + j2];
                            }
                        }
                    }
                }
            }
        }
        // Kronecker products of orthonormal families are orthonormal, so this
        // hits the no-SVD path.
        Self::from_columns(n, cols, RANK_TOL).expect("tensor of orthonormal bases")
    }

    /// Orthogonal complement inside `M_n`.
    pub fn perp(&self) -> Result<Self> {
        let n = self.ambient;
        if self.dim() == 0 {
            return Ok(Self::full(n));
        }
        let svd = self
            .basis
            .svd()
            .map_err(|e| Error::Decomposition(format!("{e:?}")))?;
        let k = self.dim();
        let basis = svd.U().subcols(k, n * n - k).to_owned();
        Ok(Self { ambient: n, basis })
    }

    /// `U* S U` elementwise.
    pub fn conjugate(&self, u: &ComplexMatrix) -> Result<Self> {
        ensure_dims(u.is_square() && u.rows() == self.ambient, || {
            format!("{}x{} conjugator on M_{}", u.rows(), u.cols(), self.ambient)
        })?;
        let ud = u.adjoint();
        let xs: Vec<ComplexMatrix> = self
            .basis()
            .iter()
            .map(|x| &(&ud * x) * u)
            .collect();
        orthonormalize(self.ambient, &xs, RANK_TOL)
    }

    /// Image under an arbitrary linear map applied elementwise, re-orthonormalized.
    pub fn map(&self, f: impl Fn(&ComplexMatrix) -> ComplexMatrix, target_dim: usize) -> Result<Self> {
        let xs: Vec<ComplexMatrix> = self.basis().iter().map(f).collect();
        orthonormalize(target_dim, &xs, RANK_TOL)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize, i: usize, j: usize) -> ComplexMatrix {
        ComplexMatrix::unit(n, i, j)
    }

    #[test]
    fn duplicate_inputs_collapse() {
        let i2 = ComplexMatrix::identity(2);
        let s = orthonormalize(2, &[i2.clone(), i2.clone()], RANK_TOL).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&i2, DEFAULT_TOL).unwrap());
    }

    #[test]
    fn orthonormal_inputs_keep_dimension() {
        let s = orthonormalize(2, &[unit(2, 0, 0), unit(2, 0, 1)], RANK_TOL).unwrap();
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn cycle_edge_units_span_six() {
        let mut units = Vec::new();
        for (a, b) in [(0, 1), (1, 2), (2, 0)] {
            units.push(unit(3, a, b));
            units.push(unit(3, b, a));
        }
        assert_eq!(orthonormalize(3, &units, RANK_TOL).unwrap().dim(), 6);
    }

    #[test]
    fn empty_input_is_zero_subspace() {
        let s = orthonormalize(3, &[], RANK_TOL).unwrap();
        assert!(s.is_zero());
        assert!(s.contains(&ComplexMatrix::zeros(3, 3), DEFAULT_TOL).unwrap());
    }

    #[test]
    fn dependent_non_orthogonal_inputs() {
        let a = unit(2, 0, 0);
        let b = &unit(2, 0, 0) + &unit(2, 1, 1);
        let c = &a - &b;
        let s = orthonormalize(2, &[a, b, c], RANK_TOL).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.orthonormality_defect() < 1e-12);
    }

    #[test]
    fn membership_of_matrix_units() {
        let s = OperatorSubspace::from_matrix_units(2, [(0, 1)]);
        assert!(s.contains(&unit(2, 0, 1), DEFAULT_TOL).unwrap());
        assert!(!s.contains(&unit(2, 1, 0), DEFAULT_TOL).unwrap());
        assert!(s.contains(&unit(3, 0, 1), DEFAULT_TOL).is_err());
    }

    #[test]
    fn perp_of_diagonals_is_off_diagonal() {
        let n = 4;
        let diag = OperatorSubspace::from_matrix_units(n, (0..n).map(|i| (i, i)));
        let off = diag.perp().unwrap();
        assert_eq!(off.dim(), n * n - n);
        for i in 0..n {
            for j in 0..n {
                let inside = off.contains(&unit(n, i, j), DEFAULT_TOL).unwrap();
                assert_eq!(inside, i != j);
            }
        }
        assert!(OperatorSubspace::full(3).perp().unwrap().is_zero());
    }

    #[test]
    fn tensor_of_units() {
        let a = OperatorSubspace::from_matrix_units(2, [(0, 0)]);
        let t = a.tensor(&a);
        assert_eq!(t.dim(), 1);
        assert!(t.contains(&unit(2, 0, 0).kron(&unit(2, 0, 0)), DEFAULT_TOL).unwrap());
    }

    #[test]
    fn sum_spans_union() {
        let a = OperatorSubspace::from_matrix_units(3, [(0, 1), (1, 0)]);
        let b = OperatorSubspace::from_matrix_units(3, [(1, 0), (2, 2)]);
        let s = a.sum(&b).unwrap();
        assert_eq!(s.dim(), 3);
        assert!(s.contains_subspace(&a, DEFAULT_TOL).unwrap());
        assert!(s.contains_subspace(&b, DEFAULT_TOL).unwrap());
    }

    #[test]
    fn adjoint_closure() {
        let sym = OperatorSubspace::from_matrix_units(3, [(0, 1), (1, 0)]);
        assert!(sym.adjoint_closure_residual() < 1e-12);
        let upper = OperatorSubspace::from_matrix_units(3, [(0, 1)]);
        assert!(upper.adjoint_closure_residual() > 0.5);
    }
}
