//! Finite-dimensional quantum graphs, their products, and machine-checkable
//! coloring certificates.
//!
//! A quantum graph is a triple `(S, M, M_n)`: a von Neumann algebra
//! `M ⊆ M_n` and an operator space `S ⊆ M_n` that is self-adjoint, an
//! `M'`-bimodule and orthogonal to `M'`. Classical graphs embed as
//! `S = span{E_ij : i ~ j}` over the diagonal algebra.
//!
//! * [`opspace`]: dense complex matrices and Hilbert–Schmidt subspaces.
//! * [`qgraph`]: block algebras, commutants and the quantum graph axioms.
//! * [`products`]: Cartesian, categorical, lexicographic and strong products.
//! * [`coloring`]: coloring and homomorphism certificates and their transformations.
//! * [`classical`]: exact classical solvers used as oracles.
//! * [`bounds`]: the product inequality battery over classical graphs.
//! * [`format`]: the JSON document formats.
//!
//! Inner products use the unnormalized trace, `⟨A, B⟩ = Tr(B* A)`.

pub mod bounds;
pub mod classical;
pub mod coloring;
pub mod error;
pub mod format;
pub mod opspace;
pub mod products;
pub mod qgraph;
pub mod report;

pub use classical::{BFoldAssignment, ClassicalGraph};
pub use coloring::{ColoringCertificate, HomomorphismCertificate};
pub use error::{Error, Result};
pub use opspace::{ComplexMatrix, OperatorSubspace, DEFAULT_TOL};
pub use products::ProductKind;
pub use qgraph::{Block, BlockAlgebra, QuantumGraph};
pub use report::CheckReport;
