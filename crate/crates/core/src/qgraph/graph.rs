use faer::{c64, Mat};

use super::algebra::BlockAlgebra;
use crate::classical::ClassicalGraph;
use crate::error::{ensure_dims, Error, Result};
use crate::opspace::{ComplexMatrix, OperatorSubspace};
use crate::report::CheckReport;

/// An irreflexive quantum graph `(S, M, M_n)`.
#[derive(Clone, Debug)]
pub struct QuantumGraph {
    s: OperatorSubspace,
    algebra: BlockAlgebra,
}

impl QuantumGraph {
    /// Pairs `S` with `M`; the axioms are not checked here, see [`QuantumGraph::verify`].
    pub fn new(s: OperatorSubspace, algebra: BlockAlgebra) -> Result<Self> {
        ensure_dims(s.ambient_dim() == algebra.ambient_dim(), || {
            format!(
                "S lives in M_{} but the algebra acts on C^{}",
                s.ambient_dim(),
                algebra.ambient_dim()
            )
        })?;
        Ok(Self { s, algebra })
    }

    /// `S_G = span{E_ij : i ~ j}` over the diagonal algebra.
    pub fn from_classical(g: &ClassicalGraph) -> Self {
        let n = g.vertex_count();
        let pairs = g.edges().iter().flat_map(|&(u, v)| [(u, v), (v, u)]);
        Self {
            s: OperatorSubspace::from_matrix_units(n, pairs),
            algebra: BlockAlgebra::diagonal(n),
        }
    }

    /// `(M_n ∩ (M')^⊥, M, M_n)`.
    pub fn complete(algebra: BlockAlgebra) -> Result<Self> {
        let s = algebra.commutant().basis().perp()?;
        Ok(Self { s, algebra })
    }

    pub fn dim(&self) -> usize {
        self.s.ambient_dim()
    }

    pub fn s(&self) -> &OperatorSubspace {
        &self.s
    }

    pub fn algebra(&self) -> &BlockAlgebra {
        &self.algebra
    }

    /// `span M'` as an operator subspace.
    pub fn commutant_span(&self) -> OperatorSubspace {
        self.algebra.commutant().basis()
    }

    /// `(U* S U, U* M U)`.
    pub fn conjugate(&self, u: &ComplexMatrix, tol: f64) -> Result<Self> {
        ensure_dims(u.is_square() && u.rows() == self.dim(), || {
            format!("{}x{} unitary for a graph on C^{}", u.rows(), u.cols(), self.dim())
        })?;
        let residual = u.unitarity_residual();
        if residual > tol {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self {
            s: self.s.conjugate(u)?,
            algebra: self.algebra.conjugate(u)?,
        })
    }

    /// `S_1 ⊆ S_2`; both graphs must share the same algebra.
    pub fn is_subgraph_of(&self, other: &QuantumGraph, tol: f64) -> Result<bool> {
        ensure_dims(self.dim() == other.dim(), || {
            format!("graphs on C^{} and C^{}", self.dim(), other.dim())
        })?;
        if !self.algebra.structurally_eq(&other.algebra, tol) {
            return Err(Error::InvalidInput(
                "subgraph comparison requires identical algebras".into(),
            ));
        }
        other.s.contains_subspace(&self.s, tol)
    }

    /// Adjoint closure, `M'`-bimodule property and `S ⊥ M'`, each with its
    /// worst residual.
    pub fn verify(&self, tol: f64) -> CheckReport {
        let mut report = CheckReport::new();
        report.push("adjoint closure", self.s.adjoint_closure_residual(), tol);

        let gens = self.algebra.commutant_generators();
        let (left, right) = bimodule_residuals(&self.s, &gens);
        report.push("bimodule (left M')", left, tol);
        report.push("bimodule (right M')", right, tol);

        report.push("orthogonal to M'", orthogonality_residual(&self.s, &gens), tol);
        report
    }
}

/// Worst relative residuals of `A·X` and `X·A` in `S` over generators `A` and
/// basis elements `X`.
///
/// Two-sided products `A·X·B` reduce to these by bilinearity and the fact
/// that `M'` is spanned by products of its generators.
fn bimodule_residuals(s: &OperatorSubspace, gens: &[ComplexMatrix]) -> (f64, f64) {
    let n = s.ambient_dim();
    let k = s.dim();
    if k == 0 {
        return (0.0, 0.0);
    }
    let b = s.columns();
    // Stack basis elements side by side (n × nk) and on top of each other (nk × n)
    // so that each generator costs one GEMM per side.
    let wide = Mat::<c64>::from_fn(n, n * k, |l, col| b[(l * n + col % n, col / n)]);
    let tall = Mat::<c64>::from_fn(n * k, n, |row, l| b[((row % n) * n + l, row / n)]);
    let (mut left, mut right) = (0.0_f64, 0.0_f64);
    for a in gens {
        let ax = a.as_mat() * &wide;
        let xa = &tall * a.as_mat();
        let lcols = Mat::<c64>::from_fn(n * n, k, |idx, c| ax[(idx / n, c * n + idx % n)]);
        let rcols = Mat::<c64>::from_fn(n * n, k, |idx, c| xa[(c * n + idx / n, idx % n)]);
        left = s.column_residuals(&lcols).into_iter().fold(left, f64::max);
        right = s.column_residuals(&rcols).into_iter().fold(right, f64::max);
    }
    (left, right)
}

/// `max |⟨X, Y⟩|` over basis `X` of `S` and generators `Y`.
fn orthogonality_residual(s: &OperatorSubspace, gens: &[ComplexMatrix]) -> f64 {
    if s.dim() == 0 || gens.is_empty() {
        return 0.0;
    }
    let n = s.ambient_dim();
    let g = Mat::<c64>::from_fn(n * n, gens.len(), |idx, c| gens[c].get(idx / n, idx % n));
    let inner = s.columns().adjoint() * &g;
    let mut worst = 0.0_f64;
    for j in 0..inner.ncols() {
        for i in 0..inner.nrows() {
            worst = worst.max(inner[(i, j)].norm());
        }
    }
    worst
}

pub fn verify_quantum_graph(g: &QuantumGraph, tol: f64) -> CheckReport {
    g.verify(tol)
}

pub fn from_classical(g: &ClassicalGraph) -> QuantumGraph {
    QuantumGraph::from_classical(g)
}

pub fn complete_quantum_graph(m: &BlockAlgebra) -> Result<QuantumGraph> {
    QuantumGraph::complete(m.clone())
}

pub fn conjugate_graph(g: &QuantumGraph, u: &ComplexMatrix, tol: f64) -> Result<QuantumGraph> {
    g.conjugate(u, tol)
}

pub fn is_subgraph(g1: &QuantumGraph, g2: &QuantumGraph, tol: f64) -> Result<bool> {
    g1.is_subgraph_of(g2, tol)
}
