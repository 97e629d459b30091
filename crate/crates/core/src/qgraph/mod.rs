//! Quantum graphs `(S, M, M_n)` and the block-algebra machinery behind `M` and `M'`.

mod algebra;
mod graph;

pub use algebra::{algebra_basis, algebra_tensor, commutant, Block, BlockAlgebra};
pub use graph::{
    complete_quantum_graph, conjugate_graph, from_classical, is_subgraph, verify_quantum_graph,
    QuantumGraph,
};
