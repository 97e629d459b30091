use super::certificate::ColoringCertificate;
use crate::classical::subsets;
use crate::error::{ensure_dims, Error, Result};
use crate::opspace::{projection_residuals, ComplexMatrix};
use crate::qgraph::{BlockAlgebra, QuantumGraph};
use crate::report::CheckReport;

/// One member `Q_T` of the PVM attached to a b-fold coloring.
pub type PvmEntry = (Vec<usize>, ComplexMatrix);

fn ensure_compatible(g: &QuantumGraph, cert: &ColoringCertificate) -> Result<()> {
    ensure_dims(cert.graph_dim() == g.dim(), || {
        format!("certificate for dim {} on a graph of dim {}", cert.graph_dim(), g.dim())
    })
}

/// `X ⊗ I_d` for every basis element `X` of `S`.
fn amplified_edges(g: &QuantumGraph, d: usize) -> Vec<ComplexMatrix> {
    let id = ComplexMatrix::identity(d);
    g.s().basis().iter().map(|x| x.kron(&id)).collect()
}

fn push_common(report: &mut CheckReport, g: &QuantumGraph, cert: &ColoringCertificate, tol: f64) {
    let proj = cert
        .projections()
        .iter()
        .map(|p| {
            let (idem, herm) = projection_residuals(p);
            idem.max(herm)
        })
        .fold(0.0, f64::max);
    report.push("projections", proj, tol);

    let host = g.algebra().tensor(&BlockAlgebra::full(cert.ancilla_dim())).basis();
    let membership = host
        .max_residual(cert.projections())
        .expect("projection shapes were checked");
    report.push("membership in M ⊗ M_N", membership, tol);
}

/// `max_{a, X} ‖P_a (X ⊗ I) P_a‖`.
fn edge_residual(edges: &[ComplexMatrix], ps: &[ComplexMatrix]) -> f64 {
    let mut worst = 0.0_f64;
    for x in edges {
        for p in ps {
            worst = worst.max((&(p * x) * p).hs_norm());
        }
    }
    worst
}

/// Coloring conditions for a 1-fold certificate.
///
/// Passing witnesses `χ_t(G) ≤ c` with `t = loc` when the ancilla is
/// trivial and `t = q` otherwise.
pub fn verify_coloring(g: &QuantumGraph, cert: &ColoringCertificate, tol: f64) -> Result<CheckReport> {
    ensure_compatible(g, cert)?;
    if cert.fold() != 1 {
        return Err(Error::InvalidInput(format!(
            "verify_coloring expects fold 1, got {}; use verify_bfold",
            cert.fold()
        )));
    }
    let ps = cert.projections();
    let mut report = CheckReport::new();
    push_common(&mut report, g, cert, tol);

    let total = cert.total_dim();
    let sum = ps.iter().fold(ComplexMatrix::zeros(total, total), |acc, p| &acc + p);
    report.push(
        "partition of identity",
        sum.distance(&ComplexMatrix::identity(total)),
        tol,
    );

    let mut ortho = 0.0_f64;
    for a in 0..ps.len() {
        for b in a + 1..ps.len() {
            ortho = ortho.max((&ps[a] * &ps[b]).hs_norm());
        }
    }
    report.push("pairwise orthogonal", ortho, tol);

    let edges = amplified_edges(g, cert.ancilla_dim());
    report.push("edge condition P(X⊗I)P = 0", edge_residual(&edges, ps), tol);
    report.note(format!(
        "{} colors, ancilla dim {} (t = {})",
        cert.colors(),
        cert.ancilla_dim(),
        cert.strategy()
    ));
    Ok(report)
}

fn max_commutator(ps: &[ComplexMatrix]) -> f64 {
    let mut worst = 0.0_f64;
    for a in 0..ps.len() {
        for b in a + 1..ps.len() {
            worst = worst.max(ps[a].commutator_norm(&ps[b]));
        }
    }
    worst
}

fn ordered_product(ps: &[ComplexMatrix], set: &[usize], dim: usize) -> ComplexMatrix {
    set.iter()
        .fold(ComplexMatrix::identity(dim), |acc, &a| &acc * &ps[a])
}

/// b-fold coloring conditions, including the derived PVM formulation.
///
/// For fold 1 this is exactly [`verify_coloring`].
pub fn verify_bfold(g: &QuantumGraph, cert: &ColoringCertificate, tol: f64) -> Result<CheckReport> {
    ensure_compatible(g, cert)?;
    let b = cert.fold();
    if b == 1 {
        return verify_coloring(g, cert, tol);
    }
    let ps = cert.projections();
    let (c, total) = (cert.colors(), cert.total_dim());
    let identity = ComplexMatrix::identity(total);
    let mut report = CheckReport::new();
    push_common(&mut report, g, cert, tol);
    report.push("pairwise commutation", max_commutator(ps), tol);

    let family: Vec<PvmEntry> = subsets(c, b)
        .into_iter()
        .map(|t| {
            let q = ordered_product(ps, &t, total);
            (t, q)
        })
        .collect();
    let qsum = family
        .iter()
        .fold(ComplexMatrix::zeros(total, total), |acc, (_, q)| &acc + q);
    report.push("b-subset partition of identity", qsum.distance(&identity), tol);

    let psum = ps.iter().fold(ComplexMatrix::zeros(total, total), |acc, p| &acc + p);
    report.push(
        "sum of projections = b·I",
        psum.distance(&identity.scale_real(b as f64)),
        tol,
    );

    let edges = amplified_edges(g, cert.ancilla_dim());
    report.push("edge condition P(X⊗I)P = 0", edge_residual(&edges, ps), tol);

    let qproj = family
        .iter()
        .map(|(_, q)| {
            let (i, h) = projection_residuals(q);
            i.max(h)
        })
        .fold(0.0, f64::max);
    report.push("Q_T projections", qproj, tol);

    // Members with ‖Q_T‖ ≤ tol are treated as zero below.
    let live: Vec<&PvmEntry> = family.iter().filter(|(_, q)| q.hs_norm() > tol).collect();
    let mut qortho = 0.0_f64;
    let mut qedge = 0.0_f64;
    for (i, (s, qs)) in live.iter().enumerate() {
        for (j, (t, qt)) in live.iter().enumerate() {
            if i < j {
                qortho = qortho.max((qs * qt).hs_norm());
            }
            if s.iter().any(|a| t.contains(a)) {
                for x in &edges {
                    qedge = qedge.max((&(qs * x) * qt).hs_norm());
                }
            }
        }
    }
    report.push("Q_T pairwise orthogonal", qortho, tol);
    report.push("Q_S(X⊗I)Q_T = 0 for S∩T ≠ ∅", qedge, tol);

    let over = subsets(c, b + 1)
        .iter()
        .map(|t| ordered_product(ps, t, total).hs_norm())
        .fold(0.0, f64::max);
    report.push("(b+1)-fold products vanish", over, tol);

    report.note(format!(
        "{b}-fold, {c} colors, ancilla dim {} (t = {}); {} nonzero Q_T of {}",
        cert.ancilla_dim(),
        cert.strategy(),
        live.len(),
        family.len()
    ));
    Ok(report)
}

/// `Q_T = Π_{a∈T} P_a` for every b-subset `T`, lexicographically.
pub fn pvm_from_bfold(cert: &ColoringCertificate, tol: f64) -> Result<Vec<PvmEntry>> {
    let ps = cert.projections();
    let residual = max_commutator(ps);
    if residual > tol {
        return Err(Error::NonCommuting { residual });
    }
    Ok(subsets(cert.colors(), cert.fold())
        .into_iter()
        .map(|t| {
            let q = ordered_product(ps, &t, cert.total_dim());
            (t, q)
        })
        .collect())
}

/// `P_a = Σ_{T∋a} Q_T`; subsets absent from `family` count as zero.
pub fn bfold_from_pvm(
    graph_dim: usize,
    ancilla_dim: usize,
    family: &[PvmEntry],
    colors: usize,
    fold: usize,
) -> Result<ColoringCertificate> {
    let total = graph_dim * ancilla_dim;
    let mut ps = vec![ComplexMatrix::zeros(total, total); colors];
    for (t, q) in family {
        let mut sorted = t.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != fold || sorted.iter().any(|&a| a >= colors) {
            return Err(Error::InvalidInput(format!(
                "{t:?} is not a {fold}-subset of 0..{colors}"
            )));
        }
        ensure_dims(q.is_square() && q.rows() == total, || {
            format!("Q_T of size {}x{}, expected {total}", q.rows(), q.cols())
        })?;
        for &a in &sorted {
            ps[a] = &ps[a] + q;
        }
    }
    ColoringCertificate::new(graph_dim, ancilla_dim, fold, ps)
}
