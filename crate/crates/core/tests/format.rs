mod common;

use proptest::prelude::*;
use qprod::coloring::{bell_coloring, sabidussi_witness, Factor};
use qprod::format::{
    cert_from_json, cert_to_json, classical_from_json, classical_to_json, from_json, graph_from_json,
    graph_to_json, hom_from_json, hom_to_json, Document,
};
use qprod::products::product;
use qprod::{BlockAlgebra, ClassicalGraph, ProductKind, QuantumGraph};

const TOL: f64 = 1e-9;

fn graph_round_trip(g: &QuantumGraph) -> Result<(), TestCaseError> {
    let text = graph_to_json(g);
    let back = graph_from_json(&text, TOL).unwrap();
    prop_assert_eq!(graph_to_json(&back), text);
    prop_assert!(back.s().span_distance(g.s()).unwrap() <= TOL);
    prop_assert!(back.algebra().structurally_eq(g.algebra(), TOL));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conjugated_graphs_round_trip(g in common::graph(4), seed in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 16)) {
        let n = g.vertex_count();
        let u = common::unitary_from(n, &seed[..n * n]);
        graph_round_trip(&QuantumGraph::from_classical(&g).conjugate(&u, TOL).unwrap())?;
    }

    #[test]
    fn products_round_trip(g in common::graph(3), h in common::graph(3)) {
        let (qg, qh) = (QuantumGraph::from_classical(&g), QuantumGraph::from_classical(&h));
        for kind in ProductKind::ALL {
            graph_round_trip(&product(kind, &qg, &qh, TOL).unwrap())?;
        }
    }

    #[test]
    fn classical_graphs_round_trip(g in common::graph(8)) {
        let text = classical_to_json(&g);
        let back = classical_from_json(&text).unwrap();
        prop_assert_eq!(classical_to_json(&back), text);
        prop_assert_eq!(back, g);
    }
}

#[test]
fn quantum_corpus_round_trips() {
    for (name, g) in common::quantum_corpus() {
        let text = graph_to_json(&g);
        assert_eq!(graph_to_json(&graph_from_json(&text, TOL).unwrap()), text, "{name}");
    }
}

#[test]
fn homomorphism_round_trip() {
    let m2 = QuantumGraph::complete(BlockAlgebra::amplified(2, 2)).unwrap();
    let k2 = QuantumGraph::from_classical(&ClassicalGraph::complete(2));
    let w = sabidussi_witness(&m2, &k2, Factor::First);
    let text = hom_to_json(&w);
    assert!(text.contains("\"kind\": \"homomorphism\""));
    assert_eq!(hom_to_json(&hom_from_json(&text).unwrap()), text);
}

#[test]
fn documents_report_their_kind() {
    let text = cert_to_json(&bell_coloring(2));
    let doc = from_json(&text, TOL).unwrap();
    assert_eq!(doc.kind(), "certificate");
    assert!(matches!(doc, Document::Certificate(_)));
    assert!(text.starts_with("{\n  \"v\": 1,\n  \"kind\": \"certificate\""));
    assert!(text.ends_with("}\n"));
}

#[test]
fn malformed_documents_are_format_errors() {
    let cert = cert_to_json(&bell_coloring(1));
    let cases = [
        "not json".to_string(),
        "{\"v\": 1}".to_string(),
        cert.replace("\"colors\": 1", "\"colors\": 2"),
        cert.replace("\"rows\": 1", "\"rows\": 3"),
    ];
    for text in &cases {
        assert!(cert_from_json(text).is_err(), "{text}");
    }
    let g = graph_to_json(&QuantumGraph::complete(BlockAlgebra::full(2)).unwrap());
    assert!(graph_from_json(&g.replace("\"dim\": 2", "\"dim\": 3"), TOL).is_err());
}

#[test]
fn non_unitary_conjugators_are_rejected() {
    let u = common::unitary_from(2, &[(0.3, 0.1), (-0.2, 0.4), (0.5, -0.5), (0.1, 0.2)]);
    let m = BlockAlgebra::new(vec![qprod::Block::new(1, 1), qprod::Block::new(1, 1)], Some(u), TOL).unwrap();
    let g = QuantumGraph::complete(m).unwrap();
    let text = graph_to_json(&g);
    assert!(graph_from_json(&text, TOL).is_ok());
    let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
    value["algebra"]["conjugator"]["entries"][0][0] = serde_json::json!(9.0);
    let broken = serde_json::to_string(&value).unwrap();
    assert!(matches!(graph_from_json(&broken, TOL), Err(qprod::Error::NotUnitary { .. })));
}
