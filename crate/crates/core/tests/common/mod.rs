//! Graph corpora shared by the integration tests.
#![allow(dead_code)]

use qprod::{BlockAlgebra, ClassicalGraph, QuantumGraph};

/// `{K1, K2, K3, P3, C4, C5}` with display names.
pub fn named_corpus() -> Vec<(&'static str, ClassicalGraph)> {
    vec![
        ("K1", ClassicalGraph::complete(1)),
        ("K2", ClassicalGraph::complete(2)),
        ("K3", ClassicalGraph::complete(3)),
        ("P3", ClassicalGraph::path(3)),
        ("C4", ClassicalGraph::cycle(4)),
        ("C5", ClassicalGraph::cycle(5)),
    ]
}

/// Five fixed-seed random pairs on at most six vertices.
pub fn random_pairs() -> Vec<(String, ClassicalGraph, String, ClassicalGraph)> {
    const SPECS: [((usize, f64, u64), (usize, f64, u64)); 5] = [
        ((4, 0.5, 1), (5, 0.5, 2)),
        ((6, 0.4, 3), (3, 0.7, 4)),
        ((5, 0.6, 5), (6, 0.3, 6)),
        ((6, 0.5, 7), (4, 0.5, 8)),
        ((3, 0.5, 9), (6, 0.6, 10)),
    ];
    SPECS
        .iter()
        .map(|&((n1, p1, s1), (n2, p2, s2))| {
            (
                format!("random:{n1}:{p1}:{s1}"),
                ClassicalGraph::random(n1, p1, s1),
                format!("random:{n2}:{p2}:{s2}"),
                ClassicalGraph::random(n2, p2, s2),
            )
        })
        .collect()
}

/// Every ordered pair of the named corpus plus the random pairs.
pub fn classical_pairs() -> Vec<(String, ClassicalGraph, String, ClassicalGraph)> {
    let named = named_corpus();
    let mut out = Vec::new();
    for (gn, g) in &named {
        for (hn, h) in &named {
            out.push((gn.to_string(), g.clone(), hn.to_string(), h.clone()));
        }
    }
    out.extend(random_pairs());
    out
}

/// Classical embeddings of the named corpus plus the complete quantum graphs
/// over `M_2` and `C·I_2 ⊗ M_2`.
pub fn quantum_corpus() -> Vec<(String, QuantumGraph)> {
    let mut out: Vec<(String, QuantumGraph)> = named_corpus()
        .into_iter()
        .map(|(n, g)| (n.to_string(), QuantumGraph::from_classical(&g)))
        .collect();
    out.push((
        "complete(M2)".into(),
        QuantumGraph::complete(BlockAlgebra::full(2)).unwrap(),
    ));
    out.push((
        "complete(I2⊗M2)".into(),
        QuantumGraph::complete(BlockAlgebra::amplified(2, 2)).unwrap(),
    ));
    out
}

/// Unitary Q factor of the `n × n` matrix with the given row-major entries.
pub fn unitary_from(n: usize, entries: &[(f64, f64)]) -> qprod::ComplexMatrix {
    use faer::{c64, Mat};
    let a = Mat::<c64>::from_fn(n, n, |i, j| {
        let (re, im) = entries[i * n + j];
        // the diagonal shift keeps the draw well away from singular
        c64::new(re + if i == j { 3.0 } else { 0.0 }, im)
    });
    qprod::ComplexMatrix::from_mat(a.qr().compute_Q())
}

/// Strategy for a random unitary on `C^n`.
pub fn unitary(n: usize) -> impl proptest::strategy::Strategy<Value = qprod::ComplexMatrix> {
    use proptest::prelude::*;
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n * n).prop_map(move |v| unitary_from(n, &v))
}

/// Strategy for a random simple graph on `1..=max_n` vertices.
pub fn graph(max_n: usize) -> impl proptest::strategy::Strategy<Value = ClassicalGraph> {
    use proptest::prelude::*;
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            ClassicalGraph::new(n, edges).unwrap()
        })
    })
}
