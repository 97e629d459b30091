//! Classical graphs and exact combinatorial oracles.

mod bridge;
mod graph;
mod solve;

pub use bridge::{from_local_cert, to_local_cert};
pub(crate) use graph::GraphJson;
pub use graph::{subsets, ClassicalGraph};
pub use solve::{
    bfold_exact, bfold_feasible, chromatic_exact, greedy_clique, kneser_hom_check,
    optimal_coloring, BFoldAssignment, MAX_KNESER_VERTICES, MAX_PALETTE, MAX_VERTICES,
    NODE_BUDGET,
};

pub fn cycle(n: usize) -> ClassicalGraph {
    ClassicalGraph::cycle(n)
}

pub fn complete(n: usize) -> ClassicalGraph {
    ClassicalGraph::complete(n)
}

pub fn path(n: usize) -> ClassicalGraph {
    ClassicalGraph::path(n)
}

pub fn petersen() -> ClassicalGraph {
    ClassicalGraph::petersen()
}

pub fn kneser(c: usize, b: usize) -> ClassicalGraph {
    ClassicalGraph::kneser(c, b)
}

pub fn random_graph(n: usize, p: f64, seed: u64) -> ClassicalGraph {
    ClassicalGraph::random(n, p, seed)
}

pub fn classical_product(
    g: &ClassicalGraph,
    h: &ClassicalGraph,
    kind: crate::products::ProductKind,
) -> ClassicalGraph {
    g.product(h, kind)
}
