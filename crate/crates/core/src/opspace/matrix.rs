use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use faer::{c64, Mat, MatRef, Scale};

use crate::error::{ensure_dims, Error, Result};

/// Dense complex matrix.
///
/// A thin wrapper around a column-major [`faer::Mat`]; row-major ordering is
/// only used at the serialization boundary and for vectorization.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: Mat<c64>,
}

pub const ONE: c64 = c64 { re: 1.0, im: 0.0 };
pub const ZERO: c64 = c64 { re: 0.0, im: 0.0 };

impl ComplexMatrix {
    pub fn from_mat(inner: Mat<c64>) -> Self {
        Self { inner }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_mat(Mat::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_mat(Mat::identity(n, n))
    }

    /// Matrix unit `E_ij` in `M_n` (zero-based indices).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        m[(i, j)] = ONE;
        Self::from_mat(m)
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> c64) -> Self {
        Self::from_mat(Mat::from_fn(rows, cols, f))
    }

    pub fn from_row_major(rows: usize, cols: usize, entries: &[c64]) -> Result<Self> {
        ensure_dims(entries.len() == rows * cols, || {
            format!("{} entries for a {rows}x{cols} matrix", entries.len())
        })?;
        Ok(Self::from_fn(rows, cols, |i, j| entries[i * cols + j]))
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(r, c, |i, j| c64::new(rows[i][j], 0.0))
    }

    pub fn diag(values: &[c64]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { values[i] } else { ZERO })
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { c64::new(values[i], 0.0) } else { ZERO })
    }

    /// Permutation matrix sending basis vector `e_j` to `e_{map[j]}`.
    pub fn permutation(map: &[usize]) -> Self {
        let n = map.len();
        let mut m = Mat::zeros(n, n);
        for (j, &i) in map.iter().enumerate() {
            m[(i, j)] = ONE;
        }
        Self::from_mat(m)
    }

    pub fn rows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn cols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    /// Side length of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> c64 {
        self.inner[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: c64) {
        self.inner[(i, j)] = value;
    }

    pub fn as_mat(&self) -> MatRef<'_, c64> {
        self.inner.as_ref()
    }

    pub fn into_mat(self) -> Mat<c64> {
        self.inner
    }

    pub fn entries_row_major(&self) -> Vec<c64> {
        let (r, c) = (self.rows(), self.cols());
        let mut out = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                out.push(self.inner[(i, j)]);
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        Self::from_mat(self.inner.adjoint().to_owned())
    }

    pub fn scale(&self, k: c64) -> Self {
        Self::from_mat(Scale(k) * &self.inner)
    }

    pub fn scale_real(&self, k: f64) -> Self {
        self.scale(c64::new(k, 0.0))
    }

    pub fn trace(&self) -> c64 {
        (0..self.rows().min(self.cols())).map(|i| self.inner[(i, i)]).sum()
    }

    /// Hilbert–Schmidt (Frobenius) norm.
    pub fn hs_norm(&self) -> f64 {
        self.inner.norm_l2()
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (r2, c2) = (other.rows(), other.cols());
        Self::from_fn(self.rows() * r2, self.cols() * c2, |i, j| {
            self.inner[(i / r2, j / c2)] * other.inner[(i % r2, j % c2)]
        })
    }

    /// `HS` distance `‖self − other‖`; panics on shape mismatch.
    pub fn distance(&self, other: &Self) -> f64 {
        (&self.inner - &other.inner).norm_l2()
    }

    /// `‖U*U − I‖_HS`, or infinity for a non-square matrix.
    pub fn unitarity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let g = self.inner.adjoint() * &self.inner;
        (&g - Mat::<c64>::identity(self.rows(), self.rows())).norm_l2()
    }

    /// `‖A·B − B·A‖_HS`.
    pub fn commutator_norm(&self, other: &Self) -> f64 {
        (&self.inner * &other.inner - &other.inner * &self.inner).norm_l2()
    }

    /// Conjugation `U X U*`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        Self::from_mat(&u.inner * &self.inner * u.inner.adjoint())
    }

    /// Traces out the first tensor leg of a matrix on `C^a ⊗ C^b`.
    pub fn partial_trace_first(&self, a: usize, b: usize) -> Result<Self> {
        ensure_dims(self.is_square() && self.rows() == a * b, || {
            format!("partial trace over {a}x{b} legs of a {}x{} matrix", self.rows(), self.cols())
        })?;
        Ok(Self::from_fn(b, b, |i, j| {
            (0..a).map(|x| self.inner[(x * b + i, x * b + j)]).sum()
        }))
    }

    /// Traces out the second tensor leg of a matrix on `C^a ⊗ C^b`.
    pub fn partial_trace_second(&self, a: usize, b: usize) -> Result<Self> {
        ensure_dims(self.is_square() && self.rows() == a * b, || {
            format!("partial trace over {a}x{b} legs of a {}x{} matrix", self.rows(), self.cols())
        })?;
        Ok(Self::from_fn(a, a, |i, j| {
            (0..b).map(|y| self.inner[(i * b + y, j * b + y)]).sum()
        }))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.hs_norm() <= tol
    }
}

/// Hilbert–Schmidt pairing `⟨A, B⟩ = Tr(B* A)` with the unnormalized trace.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<c64> {
    ensure_dims(a.rows() == b.rows() && a.cols() == b.cols(), || {
        format!("hs_inner of {}x{} and {}x{}", a.rows(), a.cols(), b.rows(), b.cols())
    })?;
    let mut acc = ZERO;
    for j in 0..a.cols() {
        for i in 0..a.rows() {
            acc += b.inner[(i, j)].conj() * a.inner[(i, j)];
        }
    }
    Ok(acc)
}

/// Index map realizing a reordering of tensor legs.
///
/// `perm[l]` is the new position of leg `l`. Returns the map from old flat
/// index to new flat index together with the reordered leg dimensions.
pub fn leg_index_map(dims: &[usize], perm: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let legs = dims.len();
    if perm.len() != legs {
        return Err(Error::InvalidInput(format!(
            "permutation of length {} for {legs} legs",
            perm.len()
        )));
    }
    let mut seen = vec![false; legs];
    for &p in perm {
        if p >= legs || seen[p] {
            return Err(Error::InvalidInput(format!("{perm:?} is not a permutation")));
        }
        seen[p] = true;
    }
    let mut new_dims = vec![0; legs];
    for (l, &p) in perm.iter().enumerate() {
        new_dims[p] = dims[l];
    }
    let total: usize = dims.iter().product();
    // strides of the new layout, indexed by new position
    let mut new_strides = vec![1; legs];
    for p in (0..legs.saturating_sub(1)).rev() {
        new_strides[p] = new_strides[p + 1] * new_dims[p + 1];
    }
    let mut map = Vec::with_capacity(total);
    let mut digits = vec![0usize; legs];
    for _ in 0..total {
        let idx = digits
            .iter()
            .enumerate()
            .map(|(l, &d)| d * new_strides[perm[l]])
            .sum();
        map.push(idx);
        // increment the old multi-index, last leg fastest
        for l in (0..legs).rev() {
            digits[l] += 1;
            if digits[l] < dims[l] {
                break;
            }
            digits[l] = 0;
        }
    }
    Ok((map, new_dims))
}

/// Unitary `W` with `W (A_0 ⊗ … ⊗ A_{L-1}) W* = ⊗ of the legs reordered by `perm``.
pub fn leg_permutation_unitary(dims: &[usize], perm: &[usize]) -> Result<ComplexMatrix> {
    let (map, _) = leg_index_map(dims, perm)?;
    Ok(ComplexMatrix::permutation(&map))
}

/// Reorders the tensor legs of `x`: leg `l` of the input lands at position `perm[l]`.
pub fn permute_systems(x: &ComplexMatrix, dims: &[usize], perm: &[usize]) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    ensure_dims(x.is_square() && x.rows() == total, || {
        format!("leg dims {dims:?} (product {total}) for a {}x{} matrix", x.rows(), x.cols())
    })?;
    let (map, _) = leg_index_map(dims, perm)?;
    let mut out = Mat::<c64>::zeros(total, total);
    for c in 0..total {
        for r in 0..total {
            out[(map[r], map[c])] = x.inner[(r, c)];
        }
    }
    Ok(ComplexMatrix::from_mat(out))
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows(), self.cols())?;
        for i in 0..self.rows() {
            write!(f, "  ")?;
            for j in 0..self.cols() {
                let z = self.inner[(i, j)];
                write!(f, "{:>8.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::from_mat(&self.inner * &rhs.inner)
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::from_mat(&self.inner + &rhs.inner)
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::from_mat(&self.inner - &rhs.inner)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hs_inner_matrix_units() {
        let e11 = ComplexMatrix::unit(3, 0, 0);
        let e22 = ComplexMatrix::unit(3, 1, 1);
        assert_eq!(hs_inner(&e11, &e11).unwrap(), ONE);
        assert_eq!(hs_inner(&e11, &e22).unwrap(), ZERO);
        let i4 = ComplexMatrix::identity(4);
        assert_eq!(hs_inner(&i4, &i4).unwrap(), c64::new(4.0, 0.0));
    }

    #[test]
    fn hs_inner_rejects_shape_mismatch() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(3);
        assert!(matches!(hs_inner(&a, &b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn hs_inner_is_conjugate_symmetric() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| c64::new(i as f64 + 1.0, j as f64 - 0.5));
        let b = ComplexMatrix::from_fn(2, 2, |i, j| c64::new(j as f64, 2.0 * i as f64));
        let ab = hs_inner(&a, &b).unwrap();
        let ba = hs_inner(&b, &a).unwrap();
        assert!((ab - ba.conj()).norm() < 1e-15);
    }

    #[test]
    fn adjoint_is_an_involution() {
        let a = ComplexMatrix::from_fn(2, 3, |i, j| c64::new(i as f64, j as f64));
        assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn swap_flips_kronecker_factors() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| c64::new((i * 2 + j) as f64, 1.0));
        let b = ComplexMatrix::from_fn(3, 3, |i, j| c64::new(i as f64 - j as f64, (i + j) as f64));
        let swapped = permute_systems(&a.kron(&b), &[2, 3], &[1, 0]).unwrap();
        assert_eq!(swapped, b.kron(&a));
    }

    #[test]
    fn identity_permutation_is_noop() {
        let x = ComplexMatrix::from_fn(6, 6, |i, j| c64::new(i as f64, j as f64));
        assert_eq!(permute_systems(&x, &[2, 3], &[0, 1]).unwrap(), x);
    }

    #[test]
    fn three_cycle_moves_each_leg_forward() {
        let e11 = ComplexMatrix::unit(2, 0, 0);
        let e22 = ComplexMatrix::unit(2, 1, 1);
        let e12 = ComplexMatrix::unit(2, 0, 1);
        let x = e11.kron(&e22).kron(&e12);
        let y = permute_systems(&x, &[2, 2, 2], &[1, 2, 0]).unwrap();
        assert_eq!(y, e12.kron(&e11).kron(&e22));
    }

    #[test]
    fn permute_rejects_bad_dims_and_perms() {
        let x = ComplexMatrix::identity(6);
        assert!(matches!(
            permute_systems(&x, &[2, 2], &[1, 0]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            permute_systems(&x, &[2, 3], &[0, 0]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn permutation_unitary_matches_index_permutation() {
        let dims = [2, 3, 2];
        let perm = [2, 0, 1];
        let x = ComplexMatrix::from_fn(12, 12, |i, j| c64::new((i * 12 + j) as f64, i as f64));
        let w = leg_permutation_unitary(&dims, &perm).unwrap();
        let via_unitary = x.conjugate_by(&w);
        assert_eq!(via_unitary, permute_systems(&x, &dims, &perm).unwrap());
        assert!(w.unitarity_residual() == 0.0);
    }

    #[test]
    fn partial_traces_of_product() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| c64::new((i + j) as f64, 0.0));
        let b = ComplexMatrix::from_fn(3, 3, |i, j| c64::new(i as f64, j as f64));
        let ab = a.kron(&b);
        let first = ab.partial_trace_first(2, 3).unwrap();
        let second = ab.partial_trace_second(2, 3).unwrap();
        assert!(first.distance(&b.scale(a.trace())) < 1e-14);
        assert!(second.distance(&a.scale(b.trace())) < 1e-14);
    }
}
