use super::graph::ClassicalGraph;
use super::solve::BFoldAssignment;
use crate::coloring::ColoringCertificate;
use crate::error::{Error, Result};
use crate::opspace::ComplexMatrix;

/// Diagonal certificate with `(P_a)_{vv} = 1` iff `a ∈ φ(v)`, no ancilla.
pub fn to_local_cert(g: &ClassicalGraph, w: &BFoldAssignment) -> Result<ColoringCertificate> {
    w.validate(g)?;
    let n = g.vertex_count();
    let projections = (0..w.palette_size())
        .map(|a| {
            let diag: Vec<f64> = w
                .sets()
                .iter()
                .map(|s| if s.contains(&a) { 1.0 } else { 0.0 })
                .collect();
            ComplexMatrix::diag_real(&diag)
        })
        .collect();
    ColoringCertificate::new(n, 1, w.fold(), projections)
}

/// Reads `φ(v)` off the diagonals of a local certificate and validates it on `g`.
pub fn from_local_cert(
    g: &ClassicalGraph,
    cert: &ColoringCertificate,
    tol: f64,
) -> Result<BFoldAssignment> {
    let n = g.vertex_count();
    if cert.ancilla_dim() != 1 || cert.graph_dim() != n {
        return Err(Error::InvalidInput(format!(
            "expected a local certificate on {n} vertices, got graph dim {} with ancilla {}",
            cert.graph_dim(),
            cert.ancilla_dim()
        )));
    }
    let mut sets = vec![Vec::new(); n];
    for (a, p) in cert.projections().iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let z = p.get(i, j);
                let target = if i == j && z.re > 0.5 { 1.0 } else { 0.0 };
                if (z.re - target).abs() > tol || z.im.abs() > tol {
                    return Err(Error::InvalidInput(format!(
                        "projection {a} is not a diagonal 0/1 matrix at ({i}, {j})"
                    )));
                }
            }
            if p.get(i, i).re > 0.5 {
                sets[i].push(a);
            }
        }
    }
    let w = BFoldAssignment::new(cert.colors(), cert.fold(), sets)?;
    w.validate(g)?;
    Ok(w)
}
