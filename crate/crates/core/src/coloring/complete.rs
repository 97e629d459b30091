use std::f64::consts::PI;

use faer::c64;

use super::certificate::ColoringCertificate;
use super::verify::verify_bfold;
use crate::error::{Error, Result};
use crate::opspace::{projection_residuals, ComplexMatrix};
use crate::qgraph::QuantumGraph;
use crate::report::CheckReport;

/// `n²` rank-one projections onto the generalized Bell vectors
/// `(I ⊗ X^j Z^k)|Ω⟩`, `|Ω⟩ = n^{-1/2} Σ_v δ_v ⊗ δ_v`, ordered `j` outer.
///
/// Each satisfies `P (A ⊗ I) P = (Tr A / n) P`, so they color the complete
/// quantum graph over `M_n`, whose edge space is the traceless matrices.
pub fn bell_coloring(n: usize) -> ColoringCertificate {
    let n = n.max(1);
    let scale = 1.0 / (n as f64).sqrt();
    let omega = |e: usize| c64::from_polar(1.0, 2.0 * PI * (e % n) as f64 / n as f64);
    let mut projections = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            // X^j Z^k δ_v = ω^{kv} δ_{v+j}
            let mut psi = vec![c64::new(0.0, 0.0); n * n];
            for v in 0..n {
                psi[v * n + (v + j) % n] = omega(k * v) * scale;
            }
            projections.push(ComplexMatrix::from_fn(n * n, n * n, |r, c| psi[r] * psi[c].conj()));
        }
    }
    ColoringCertificate::new(n, n, 1, projections).expect("Bell projections have matching shapes")
}

/// `R_a = (k/d)·(Tr_H ⊗ id_N)(P_a)` for a graph over `C·I_d ⊗ M_k`.
///
/// The partial trace runs over the whole graph leg, so it is blind to the
/// algebra's conjugator and no change to standard form is needed.
pub fn lower_bound_operators(g: &QuantumGraph, cert: &ColoringCertificate) -> Result<Vec<ComplexMatrix>> {
    let blocks = g.algebra().blocks();
    let [block] = blocks else {
        return Err(Error::InvalidInput(format!(
            "lower-bound extraction needs a single-block algebra, got {} blocks",
            blocks.len()
        )));
    };
    if cert.graph_dim() != g.dim() {
        return Err(Error::DimensionMismatch(format!(
            "certificate for dim {} on a graph of dim {}",
            cert.graph_dim(),
            g.dim()
        )));
    }
    let (d, k) = (block.multiplicity, block.size);
    let factor = k as f64 / d as f64;
    cert.projections()
        .iter()
        .map(|p| Ok(p.partial_trace_first(g.dim(), cert.ancilla_dim())?.scale_real(factor)))
        .collect()
}

/// Checks that every `R_a` is a projection and that `Σ_a R_a = b k² I_N`,
/// which forces `c ≥ b·dim M`.
///
/// The certificate must pass [`verify_bfold`] at `tol`. Residuals are
/// held to `extract_tol`.
pub fn complete_lower_bound_extract(
    g: &QuantumGraph,
    cert: &ColoringCertificate,
    tol: f64,
    extract_tol: f64,
) -> Result<CheckReport> {
    let rs = lower_bound_operators(g, cert)?;
    let input = verify_bfold(g, cert, tol)?;
    if !input.passed() {
        return Err(Error::VerificationFailed {
            what: "certificate".into(),
            report: input,
        });
    }
    let k = g.algebra().blocks()[0].size;
    let b = cert.fold();
    let nd = cert.ancilla_dim();
    let (mut idem, mut herm) = (0.0_f64, 0.0_f64);
    for r in &rs {
        let (i, h) = projection_residuals(r);
        idem = idem.max(i);
        herm = herm.max(h);
    }
    let sum = rs.iter().fold(ComplexMatrix::zeros(nd, nd), |acc, r| &acc + r);
    let target = ComplexMatrix::identity(nd).scale_real((b * k * k) as f64);

    let mut report = CheckReport::new();
    report.push("R_a idempotent", idem, extract_tol);
    report.push("R_a self-adjoint", herm, extract_tol);
    report.push_with_detail(
        "Σ R_a = b·k²·I",
        sum.distance(&target),
        extract_tol,
        format!("b = {b}, k = {k}"),
    );
    let dim_m = g.algebra().algebra_dim();
    report.push_flag(
        "colors ≥ b·dim M",
        cert.colors() >= b * dim_m,
        format!("{} colors, b·dim M = {}", cert.colors(), b * dim_m),
    );
    Ok(report)
}
