use crate::error::{ensure_dims, Error, Result};
use crate::opspace::ComplexMatrix;

/// `c` projections on `C^n ⊗ C^{d_N}` forming a (b-fold) coloring candidate.
///
/// `d_N = 1` is a local (classical-ancilla) strategy; any larger finite
/// `d_N` is a quantum one. Zero projections are allowed.
#[derive(Clone, Debug)]
pub struct ColoringCertificate {
    graph_dim: usize,
    ancilla_dim: usize,
    fold: usize,
    projections: Vec<ComplexMatrix>,
}

impl ColoringCertificate {
    /// Checks shapes only; use the verifiers for the coloring conditions.
    pub fn new(
        graph_dim: usize,
        ancilla_dim: usize,
        fold: usize,
        projections: Vec<ComplexMatrix>,
    ) -> Result<Self> {
        if graph_dim == 0 || ancilla_dim == 0 || fold == 0 {
            return Err(Error::InvalidInput(format!(
                "graph dim {graph_dim}, ancilla dim {ancilla_dim} and fold {fold} must be positive"
            )));
        }
        if projections.is_empty() {
            return Err(Error::InvalidInput("certificate with no colors".into()));
        }
        let total = graph_dim * ancilla_dim;
        for (a, p) in projections.iter().enumerate() {
            ensure_dims(p.is_square() && p.rows() == total, || {
                format!("projection {a} is {}x{}, expected {total}x{total}", p.rows(), p.cols())
            })?;
        }
        Ok(Self { graph_dim, ancilla_dim, fold, projections })
    }

    pub fn graph_dim(&self) -> usize {
        self.graph_dim
    }

    pub fn ancilla_dim(&self) -> usize {
        self.ancilla_dim
    }

    pub fn total_dim(&self) -> usize {
        self.graph_dim * self.ancilla_dim
    }

    pub fn fold(&self) -> usize {
        self.fold
    }

    pub fn colors(&self) -> usize {
        self.projections.len()
    }

    pub fn projections(&self) -> &[ComplexMatrix] {
        &self.projections
    }

    pub fn is_local(&self) -> bool {
        self.ancilla_dim == 1
    }

    /// `"loc"` for a trivial ancilla, `"q"` otherwise.
    pub fn strategy(&self) -> &'static str {
        if self.is_local() {
            "loc"
        } else {
            "q"
        }
    }

    /// Colors whose projection has HS norm at least 1/2 (a nonzero
    /// projection has norm `√rank ≥ 1`).
    pub fn nonzero_colors(&self) -> Vec<usize> {
        (0..self.colors())
            .filter(|&a| self.projections[a].hs_norm() >= 0.5)
            .collect()
    }

    /// Drops zero projections; returns the pruned certificate and, for each
    /// kept color, its index in `self`.
    pub fn prune(&self) -> Result<(Self, Vec<usize>)> {
        let keep = self.nonzero_colors();
        let projections = keep.iter().map(|&a| self.projections[a].clone()).collect();
        Ok((
            Self::new(self.graph_dim, self.ancilla_dim, self.fold, projections)?,
            keep,
        ))
    }

    /// `P ↦ (U* ⊗ I) P (U ⊗ I)`, matching [`crate::qgraph::QuantumGraph::conjugate`].
    pub fn conjugate_graph_leg(&self, u: &ComplexMatrix) -> Result<Self> {
        ensure_dims(u.is_square() && u.rows() == self.graph_dim, || {
            format!("{}x{} unitary on a graph of dim {}", u.rows(), u.cols(), self.graph_dim)
        })?;
        let w = u.adjoint().kron(&ComplexMatrix::identity(self.ancilla_dim));
        let projections = self.projections.iter().map(|p| p.conjugate_by(&w)).collect();
        Self::new(self.graph_dim, self.ancilla_dim, self.fold, projections)
    }

    /// Same data with a different declared fold.
    pub fn with_fold(&self, fold: usize) -> Result<Self> {
        Self::new(self.graph_dim, self.ancilla_dim, fold, self.projections.clone())
    }
}

/// Kraus operators `F_i : C^{n_src} ⊗ C^{d_N} → C^{n_dst}`.
#[derive(Clone, Debug)]
pub struct HomomorphismCertificate {
    source_dim: usize,
    target_dim: usize,
    ancilla_dim: usize,
    kraus: Vec<ComplexMatrix>,
}

impl HomomorphismCertificate {
    pub fn new(
        source_dim: usize,
        target_dim: usize,
        ancilla_dim: usize,
        kraus: Vec<ComplexMatrix>,
    ) -> Result<Self> {
        if source_dim == 0 || target_dim == 0 || ancilla_dim == 0 {
            return Err(Error::InvalidInput("dimensions must be positive".into()));
        }
        if kraus.is_empty() {
            return Err(Error::InvalidInput("empty Kraus family".into()));
        }
        let cols = source_dim * ancilla_dim;
        for (i, f) in kraus.iter().enumerate() {
            ensure_dims(f.rows() == target_dim && f.cols() == cols, || {
                format!(
                    "Kraus operator {i} is {}x{}, expected {target_dim}x{cols}",
                    f.rows(),
                    f.cols()
                )
            })?;
        }
        Ok(Self { source_dim, target_dim, ancilla_dim, kraus })
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn ancilla_dim(&self) -> usize {
        self.ancilla_dim
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }
}
