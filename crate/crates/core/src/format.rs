//! JSON documents for graphs and certificates.
//!
//! Every document is an object with `"v": 1` and a `"kind"` tag. Matrices are
//! `{"rows", "cols", "entries"}` with `entries` the row-major list of
//! `[re, im]` pairs. Floats are written in shortest round-trip form, so
//! parsing and re-serializing a document reproduces it byte for byte.

use faer::c64;
use serde::{Deserialize, Serialize};

use crate::classical::{ClassicalGraph, GraphJson};
use crate::coloring::{ColoringCertificate, HomomorphismCertificate};
use crate::error::{Error, Result};
use crate::opspace::{orthonormalize, ComplexMatrix, RANK_TOL};
use crate::qgraph::{Block, BlockAlgebra, QuantumGraph};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl From<&ComplexMatrix> for MatrixJson {
    fn from(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries_row_major().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<&MatrixJson> for ComplexMatrix {
    type Error = Error;

    fn try_from(m: &MatrixJson) -> Result<Self> {
        let entries: Vec<c64> = m.entries.iter().map(|&[re, im]| c64::new(re, im)).collect();
        ComplexMatrix::from_row_major(m.rows, m.cols, &entries)
            .map_err(|e| Error::Format(format!("matrix: {e}")))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct AlgebraJson {
    blocks: Vec<[usize; 2]>,
    conjugator: Option<MatrixJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct QuantumGraphJson {
    dim: usize,
    algebra: AlgebraJson,
    basis: Vec<MatrixJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CertificateJson {
    dim: usize,
    ancilla_dim: usize,
    fold: usize,
    colors: usize,
    projections: Vec<MatrixJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct HomomorphismJson {
    source_dim: usize,
    target_dim: usize,
    ancilla_dim: usize,
    kraus: Vec<MatrixJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Body {
    QuantumGraph(QuantumGraphJson),
    Certificate(CertificateJson),
    Homomorphism(HomomorphismJson),
    ClassicalGraph(GraphJson),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Envelope {
    v: u32,
    #[serde(flatten)]
    body: Body,
}

/// Any document the tools read or write.
#[derive(Debug, Clone)]
pub enum Document {
    QuantumGraph(QuantumGraph),
    Certificate(ColoringCertificate),
    Homomorphism(HomomorphismCertificate),
    ClassicalGraph(ClassicalGraph),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::QuantumGraph(_) => "quantum_graph",
            Document::Certificate(_) => "certificate",
            Document::Homomorphism(_) => "homomorphism",
            Document::ClassicalGraph(_) => "classical_graph",
        }
    }
}

fn matrices(ms: &[ComplexMatrix]) -> Vec<MatrixJson> {
    ms.iter().map(MatrixJson::from).collect()
}

fn parse_matrices(ms: &[MatrixJson]) -> Result<Vec<ComplexMatrix>> {
    ms.iter().map(ComplexMatrix::try_from).collect()
}

fn body_of(doc: &Document) -> Body {
    match doc {
        Document::QuantumGraph(g) => Body::QuantumGraph(QuantumGraphJson {
            dim: g.dim(),
            algebra: AlgebraJson {
                blocks: g
                    .algebra()
                    .blocks()
                    .iter()
                    .map(|b| [b.multiplicity, b.size])
                    .collect(),
                conjugator: g.algebra().conjugator().map(MatrixJson::from),
            },
            basis: matrices(&g.s().basis()),
        }),
        Document::Certificate(c) => Body::Certificate(CertificateJson {
            dim: c.graph_dim(),
            ancilla_dim: c.ancilla_dim(),
            fold: c.fold(),
            colors: c.colors(),
            projections: matrices(c.projections()),
        }),
        Document::Homomorphism(h) => Body::Homomorphism(HomomorphismJson {
            source_dim: h.source_dim(),
            target_dim: h.target_dim(),
            ancilla_dim: h.ancilla_dim(),
            kraus: matrices(h.kraus()),
        }),
        Document::ClassicalGraph(g) => Body::ClassicalGraph(GraphJson::from(g)),
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json(doc: &Document) -> String {
    let env = Envelope { v: SCHEMA_VERSION, body: body_of(doc) };
    let mut s = serde_json::to_string_pretty(&env).expect("documents serialize");
    s.push('\n');
    s
}

/// Parses any document; `tol` bounds the unitarity defect of a conjugator.
pub fn from_json(text: &str, tol: f64) -> Result<Document> {
    let env: Envelope = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    if env.v != SCHEMA_VERSION {
        return Err(Error::Format(format!(
            "unsupported schema version {} (expected {SCHEMA_VERSION})",
            env.v
        )));
    }
    Ok(match env.body {
        Body::QuantumGraph(j) => {
            let blocks = j.algebra.blocks.iter().map(|&[n, k]| Block::new(n, k)).collect();
            let conj = j.algebra.conjugator.as_ref().map(ComplexMatrix::try_from).transpose()?;
            let algebra = BlockAlgebra::new(blocks, conj, tol)?;
            if algebra.ambient_dim() != j.dim {
                return Err(Error::Format(format!(
                    "algebra acts on C^{} but dim is {}",
                    algebra.ambient_dim(),
                    j.dim
                )));
            }
            let basis = parse_matrices(&j.basis)?;
            let s = orthonormalize(j.dim, &basis, RANK_TOL)?;
            Document::QuantumGraph(QuantumGraph::new(s, algebra)?)
        }
        Body::Certificate(j) => {
            let ps = parse_matrices(&j.projections)?;
            if ps.len() != j.colors {
                return Err(Error::Format(format!(
                    "{} projections but colors = {}",
                    ps.len(),
                    j.colors
                )));
            }
            Document::Certificate(ColoringCertificate::new(j.dim, j.ancilla_dim, j.fold, ps)?)
        }
        Body::Homomorphism(j) => Document::Homomorphism(HomomorphismCertificate::new(
            j.source_dim,
            j.target_dim,
            j.ancilla_dim,
            parse_matrices(&j.kraus)?,
        )?),
        Body::ClassicalGraph(j) => Document::ClassicalGraph(ClassicalGraph::try_from(j)?),
    })
}

fn wrong_kind(expected: &str, got: &Document) -> Error {
    Error::Format(format!("expected a {expected} document, got {}", got.kind()))
}

pub fn graph_to_json(g: &QuantumGraph) -> String {
    to_json(&Document::QuantumGraph(g.clone()))
}

pub fn graph_from_json(text: &str, tol: f64) -> Result<QuantumGraph> {
    match from_json(text, tol)? {
        Document::QuantumGraph(g) => Ok(g),
        other => Err(wrong_kind("quantum_graph", &other)),
    }
}

pub fn cert_to_json(c: &ColoringCertificate) -> String {
    to_json(&Document::Certificate(c.clone()))
}

pub fn cert_from_json(text: &str) -> Result<ColoringCertificate> {
    match from_json(text, f64::INFINITY)? {
        Document::Certificate(c) => Ok(c),
        other => Err(wrong_kind("certificate", &other)),
    }
}

pub fn hom_to_json(h: &HomomorphismCertificate) -> String {
    to_json(&Document::Homomorphism(h.clone()))
}

pub fn hom_from_json(text: &str) -> Result<HomomorphismCertificate> {
    match from_json(text, f64::INFINITY)? {
        Document::Homomorphism(h) => Ok(h),
        other => Err(wrong_kind("homomorphism", &other)),
    }
}

pub fn classical_to_json(g: &ClassicalGraph) -> String {
    to_json(&Document::ClassicalGraph(g.clone()))
}

pub fn classical_from_json(text: &str) -> Result<ClassicalGraph> {
    match from_json(text, f64::INFINITY)? {
        Document::ClassicalGraph(g) => Ok(g),
        other => Err(wrong_kind("classical_graph", &other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::bell_coloring;

    #[test]
    fn graph_round_trip_is_byte_identical() {
        let g = QuantumGraph::complete(BlockAlgebra::amplified(2, 2)).unwrap();
        let text = graph_to_json(&g);
        assert!(text.contains("\"kind\": \"quantum_graph\""));
        let back = graph_from_json(&text, 1e-9).unwrap();
        assert_eq!(graph_to_json(&back), text);
    }

    #[test]
    fn certificate_round_trip_is_byte_identical() {
        let text = cert_to_json(&bell_coloring(3));
        assert_eq!(cert_to_json(&cert_from_json(&text).unwrap()), text);
    }

    #[test]
    fn rejects_wrong_version_and_kind() {
        let text = classical_to_json(&ClassicalGraph::cycle(4)).replace("\"v\": 1", "\"v\": 2");
        assert!(matches!(classical_from_json(&text), Err(Error::Format(_))));
        let cert = cert_to_json(&bell_coloring(1));
        assert!(matches!(graph_from_json(&cert, 1e-9), Err(Error::Format(_))));
    }

    #[test]
    fn classical_round_trip() {
        let g = ClassicalGraph::petersen();
        assert_eq!(classical_from_json(&classical_to_json(&g)).unwrap(), g);
    }
}
