use faer::c64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_dims, Error, Result};
use crate::opspace::{orthonormalize, ComplexMatrix, OperatorSubspace, RANK_TOL};

/// One summand `C·I_n ⊗ M_k` of a finite-dimensional von Neumann algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    pub multiplicity: usize,
    pub size: usize,
}

impl Block {
    pub fn new(multiplicity: usize, size: usize) -> Self {
        Self { multiplicity, size }
    }

    pub fn span(&self) -> usize {
        self.multiplicity * self.size
    }
}

/// `U · (⊕_r C·I_{n_r} ⊗ M_{k_r}) · U*`, stored structurally.
///
/// A missing conjugator means the identity. Within block `r` the standard
/// basis vector `e_a ⊗ e_i` (multiplicity index `a`, size index `i`) sits at
/// offset `a·k_r + i`.
#[derive(Clone, Debug)]
pub struct BlockAlgebra {
    blocks: Vec<Block>,
    conjugator: Option<ComplexMatrix>,
}

impl BlockAlgebra {
    pub fn new(blocks: Vec<Block>, conjugator: Option<ComplexMatrix>, tol: f64) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidInput("algebra with no blocks".into()));
        }
        if let Some(b) = blocks.iter().find(|b| b.multiplicity == 0 || b.size == 0) {
            return Err(Error::InvalidInput(format!("degenerate block {b:?}")));
        }
        let n: usize = blocks.iter().map(Block::span).sum();
        if let Some(u) = &conjugator {
            ensure_dims(u.is_square() && u.rows() == n, || {
                format!("{}x{} conjugator for an algebra on C^{n}", u.rows(), u.cols())
            })?;
            let residual = u.unitarity_residual();
            if residual > tol {
                return Err(Error::NotUnitary { residual });
            }
        }
        Ok(Self { blocks, conjugator })
    }

    fn from_parts(blocks: Vec<Block>, conjugator: Option<ComplexMatrix>) -> Self {
        Self { blocks, conjugator }
    }

    /// Diagonal matrices `D_n`.
    pub fn diagonal(n: usize) -> Self {
        Self::from_parts(vec![Block::new(1, 1); n], None)
    }

    /// All of `M_n`.
    pub fn full(n: usize) -> Self {
        Self::from_parts(vec![Block::new(1, n)], None)
    }

    /// Scalars `C·I_n`.
    pub fn scalars(n: usize) -> Self {
        Self::from_parts(vec![Block::new(n, 1)], None)
    }

    /// `C·I_d ⊗ M_k`.
    pub fn amplified(d: usize, k: usize) -> Self {
        Self::from_parts(vec![Block::new(d, k)], None)
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn conjugator(&self) -> Option<&ComplexMatrix> {
        self.conjugator.as_ref()
    }

    pub fn conjugator_matrix(&self) -> ComplexMatrix {
        self.conjugator
            .clone()
            .unwrap_or_else(|| ComplexMatrix::identity(self.ambient_dim()))
    }

    pub fn ambient_dim(&self) -> usize {
        self.blocks.iter().map(Block::span).sum()
    }

    /// `dim M = Σ k_r²`.
    pub fn algebra_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.size * b.size).sum()
    }

    /// `dim M' = Σ n_r²`.
    pub fn commutant_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.multiplicity * b.multiplicity).sum()
    }

    pub fn is_abelian(&self) -> bool {
        self.blocks.iter().all(|b| b.size == 1)
    }

    fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.blocks
            .iter()
            .map(|b| {
                let o = acc;
                acc += b.span();
                o
            })
            .collect()
    }

    fn conjugate_in(&self, x: ComplexMatrix) -> ComplexMatrix {
        match &self.conjugator {
            Some(u) => x.conjugate_by(u),
            None => x,
        }
    }

    /// HS-orthonormal basis `{n_r^{-1/2} · U (I_{n_r} ⊗ E_ij) U*}` of the algebra.
    pub fn basis_elements(&self) -> Vec<ComplexMatrix> {
        let n = self.ambient_dim();
        let mut out = Vec::with_capacity(self.algebra_dim());
        for (block, off) in self.blocks.iter().zip(self.offsets()) {
            let (m, k) = (block.multiplicity, block.size);
            let w = c64::new(1.0 / (m as f64).sqrt(), 0.0);
            for i in 0..k {
                for j in 0..k {
                    let mut x = ComplexMatrix::zeros(n, n);
                    for a in 0..m {
                        x.set(off + a * k + i, off + a * k + j, w);
                    }
                    out.push(self.conjugate_in(x));
                }
            }
        }
        out
    }

    pub fn basis(&self) -> OperatorSubspace {
        orthonormalize(self.ambient_dim(), &self.basis_elements(), RANK_TOL)
            .expect("algebra basis elements have the ambient shape")
    }

    /// The commutant, with blocks `(k_r, n_r)`.
    ///
    /// In standard form `M' = ⊕_r M_{n_r} ⊗ I_{k_r}`, which is the standard
    /// form of the swapped blocks up to the leg flip `C^{k_r}⊗C^{n_r} →
    /// C^{n_r}⊗C^{k_r}`; that flip is folded into the conjugator so that the
    /// commutant is an exact involution.
    pub fn commutant(&self) -> BlockAlgebra {
        let n = self.ambient_dim();
        let mut map = vec![0; n];
        for (block, off) in self.blocks.iter().zip(self.offsets()) {
            let (m, k) = (block.multiplicity, block.size);
            for i in 0..k {
                for a in 0..m {
                    map[off + i * m + a] = off + a * k + i;
                }
            }
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| Block::new(b.size, b.multiplicity))
            .collect();
        let conjugator = compose_with_permutation(self.conjugator.as_ref(), &map);
        Self::from_parts(blocks, conjugator)
    }

    /// A unit vector `u` with `uu* ∈ M'`, if one exists.
    ///
    /// `M'` holds a rank-one projection iff some block has `k_r = 1`; then
    /// `u = U e_{off_r}`.
    pub fn commutant_rank_one_vector(&self) -> Option<ComplexMatrix> {
        let (_, off) = self
            .blocks
            .iter()
            .zip(self.offsets())
            .find(|(b, _)| b.size == 1)?;
        let n = self.ambient_dim();
        let u = self.conjugator_matrix();
        Some(ComplexMatrix::from_fn(n, 1, |i, _| u.get(i, off)))
    }

    /// Normalized matrix-unit generators of the commutant.
    pub fn commutant_generators(&self) -> Vec<ComplexMatrix> {
        self.commutant().basis_elements()
    }

    /// `M_1 ⊗̄ M_2`, blocks ordered lexicographically by `(r, s)`.
    pub fn tensor(&self, other: &BlockAlgebra) -> BlockAlgebra {
        let n2 = other.ambient_dim();
        let (off1, off2) = (self.offsets(), other.offsets());
        let mut blocks = Vec::with_capacity(self.blocks.len() * other.blocks.len());
        let mut map = Vec::with_capacity(self.ambient_dim() * n2);
        for (r, br) in self.blocks.iter().enumerate() {
            for (s, bs) in other.blocks.iter().enumerate() {
                blocks.push(Block::new(
                    br.multiplicity * bs.multiplicity,
                    br.size * bs.size,
                ));
                for ar in 0..br.multiplicity {
                    for as_ in 0..bs.multiplicity {
                        for kr in 0..br.size {
                            for ks in 0..bs.size {
                                let i1 = off1[r] + ar * br.size + kr;
                                let i2 = off2[s] + as_ * bs.size + ks;
                                map.push(i1 * n2 + i2);
                            }
                        }
                    }
                }
            }
        }
        let outer = match (&self.conjugator, &other.conjugator) {
            (None, None) => None,
            _ => Some(self.conjugator_matrix().kron(&other.conjugator_matrix())),
        };
        Self::from_parts(blocks, compose_with_permutation(outer.as_ref(), &map))
    }

    /// `U* M U`.
    pub fn conjugate(&self, u: &ComplexMatrix) -> Result<BlockAlgebra> {
        ensure_dims(u.is_square() && u.rows() == self.ambient_dim(), || {
            format!("{}x{} unitary on C^{}", u.rows(), u.cols(), self.ambient_dim())
        })?;
        let c = &u.adjoint() * &self.conjugator_matrix();
        Ok(Self::from_parts(self.blocks.clone(), Some(c)))
    }

    /// Same block structure and conjugators within `tol` (absent = identity).
    pub fn structurally_eq(&self, other: &BlockAlgebra, tol: f64) -> bool {
        if self.blocks != other.blocks {
            return false;
        }
        match (&self.conjugator, &other.conjugator) {
            (None, None) => true,
            _ => self.conjugator_matrix().distance(&other.conjugator_matrix()) <= tol,
        }
    }
}

/// `base · P_map`, dropping the result when it is the identity.
fn compose_with_permutation(base: Option<&ComplexMatrix>, map: &[usize]) -> Option<ComplexMatrix> {
    let is_identity = map.iter().enumerate().all(|(j, &i)| i == j);
    match (base, is_identity) {
        (None, true) => None,
        (Some(u), true) => Some(u.clone()),
        (None, false) => Some(ComplexMatrix::permutation(map)),
        (Some(u), false) => Some(u * &ComplexMatrix::permutation(map)),
    }
}

pub fn commutant(m: &BlockAlgebra) -> BlockAlgebra {
    m.commutant()
}

pub fn algebra_basis(m: &BlockAlgebra) -> OperatorSubspace {
    m.basis()
}

pub fn algebra_tensor(a: &BlockAlgebra, b: &BlockAlgebra) -> BlockAlgebra {
    a.tensor(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opspace::DEFAULT_TOL;

    fn commute_residual(m: &BlockAlgebra) -> f64 {
        let mut worst = 0.0_f64;
        for a in m.basis_elements() {
            for b in m.commutant_generators() {
                worst = worst.max(a.commutator_norm(&b));
            }
        }
        worst
    }

    #[test]
    fn diagonal_is_self_commutant() {
        let d = BlockAlgebra::diagonal(4);
        let c = d.commutant();
        assert_eq!(c.blocks(), d.blocks());
        assert!(c.conjugator().is_none());
    }

    #[test]
    fn full_matrix_commutant_is_scalars() {
        let c = BlockAlgebra::full(3).commutant();
        assert_eq!(c.blocks(), &[Block::new(3, 1)]);
        assert_eq!(c.algebra_dim(), 1);
        assert!(c.basis().contains(&ComplexMatrix::identity(3), DEFAULT_TOL).unwrap());
    }

    #[test]
    fn amplified_commutant_is_left_factor() {
        // (C·I_2 ⊗ M_3)' = M_2 ⊗ C·I_3
        let m = BlockAlgebra::amplified(2, 3);
        let c = m.commutant();
        assert_eq!(c.blocks(), &[Block::new(3, 2)]);
        let span = c.basis();
        assert_eq!(span.dim(), 4);
        for i in 0..2 {
            for j in 0..2 {
                let x = ComplexMatrix::unit(2, i, j).kron(&ComplexMatrix::identity(3));
                assert!(span.contains(&x, DEFAULT_TOL).unwrap());
            }
        }
        assert!(commute_residual(&m) < 1e-12);
    }

    #[test]
    fn commutant_is_an_involution() {
        let m = BlockAlgebra::new(
            vec![Block::new(2, 2), Block::new(1, 3), Block::new(3, 1)],
            None,
            1e-12,
        )
        .unwrap();
        let back = m.commutant().commutant();
        assert!(back.structurally_eq(&m, 0.0));
        assert!(commute_residual(&m) < 1e-12);
    }

    #[test]
    fn diagonal_basis_is_units() {
        let b = BlockAlgebra::diagonal(2).basis();
        assert_eq!(b.dim(), 2);
        assert!(b.contains(&ComplexMatrix::unit(2, 0, 0), DEFAULT_TOL).unwrap());
        assert!(b.contains(&ComplexMatrix::unit(2, 1, 1), DEFAULT_TOL).unwrap());
    }

    #[test]
    fn tensor_of_diagonals_is_diagonal() {
        let t = BlockAlgebra::diagonal(2).tensor(&BlockAlgebra::diagonal(3));
        assert_eq!(t.blocks(), BlockAlgebra::diagonal(6).blocks());
        assert!(t.conjugator().is_none());
    }

    #[test]
    fn tensor_dimensions_multiply() {
        let t = BlockAlgebra::full(2).tensor(&BlockAlgebra::diagonal(3));
        assert_eq!(t.algebra_dim(), 12);
        assert_eq!(t.basis().dim(), 12);
    }

    #[test]
    fn tensor_spans_kronecker_products() {
        let a = BlockAlgebra::amplified(2, 2);
        let b = BlockAlgebra::new(vec![Block::new(1, 2), Block::new(2, 1)], None, 1e-12).unwrap();
        let t = a.tensor(&b);
        let span = t.basis();
        assert_eq!(span.dim(), a.algebra_dim() * b.algebra_dim());
        for x in a.basis_elements() {
            for y in b.basis_elements() {
                assert!(span.contains(&x.kron(&y), DEFAULT_TOL).unwrap());
            }
        }
        // commutant of the tensor is the tensor of commutants
        let ct = t.commutant().basis();
        for x in a.commutant_generators() {
            for y in b.commutant_generators() {
                assert!(ct.contains(&x.kron(&y), DEFAULT_TOL).unwrap());
            }
        }
    }

    #[test]
    fn rejects_non_unitary_conjugator() {
        let u = ComplexMatrix::diag_real(&[1.0, 2.0]);
        let err = BlockAlgebra::new(vec![Block::new(1, 2)], Some(u), 1e-9).unwrap_err();
        assert!(matches!(err, Error::NotUnitary { .. }));
    }
}
