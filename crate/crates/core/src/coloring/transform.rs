//! Constructions that turn valid certificates into new ones.
//!
//! Each transformation verifies its inputs, builds the new projections, and
//! verifies the result; a failing output is returned as
//! [`Error::VerificationFailed`] with the full report.

use super::certificate::ColoringCertificate;
use super::verify::{bfold_from_pvm, pvm_from_bfold, verify_bfold, verify_coloring, PvmEntry};
use crate::error::{ensure_dims, Error, Result};
use crate::opspace::{permute_systems, projection_meet, ComplexMatrix};
use crate::products::{product_unchecked, ProductKind};
use crate::qgraph::QuantumGraph;
use crate::report::CheckReport;

// Lower bound on the eigenvalue window around 2 used for meets: `P + Q`
// carries the projection defects of both inputs.
const MEET_WINDOW: f64 = 1e-8;

/// A certificate produced by a transformation, with its verification report.
#[derive(Clone, Debug)]
pub struct Constructed {
    pub cert: ColoringCertificate,
    pub report: CheckReport,
}

/// Output of [`reduce_bfold`]; `color_map[i]` is the input color behind output color `i`.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub cert: ColoringCertificate,
    pub report: CheckReport,
    pub color_map: Vec<usize>,
}

fn require(what: &str, report: CheckReport) -> Result<CheckReport> {
    if report.passed() {
        Ok(report)
    } else {
        Err(Error::VerificationFailed { what: what.into(), report })
    }
}

fn require_fold_one(what: &str, cert: &ColoringCertificate) -> Result<()> {
    if cert.fold() == 1 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{what} must be a 1-fold coloring, got fold {}", cert.fold())))
    }
}

/// `X ⊗ Y` on `(H_G, N_G, H_H, N_H)` reordered to `(H_G, H_H, N_G, N_H)`.
fn interleave(x: &ComplexMatrix, y: &ComplexMatrix, dims: [usize; 4]) -> Result<ComplexMatrix> {
    permute_systems(&x.kron(y), &dims, &[0, 2, 1, 3])
}

/// Drops the smallest color of every vertex: `P̃_a = P_a (I − Σ_{m<a} P̃_m)`,
/// `P'_a = P_a − P̃_a`.
///
/// `P'_1 = 0` always, so at least one color disappears. Zero projections are
/// pruned and the surviving colors renumbered.
pub fn reduce_bfold(g: &QuantumGraph, cert: &ColoringCertificate, tol: f64) -> Result<Reduced> {
    if cert.fold() < 2 {
        return Err(Error::InvalidInput("reduction needs fold ≥ 2".into()));
    }
    require("input certificate", verify_bfold(g, cert, tol)?)?;
    let total = cert.total_dim();
    let identity = ComplexMatrix::identity(total);
    let mut covered = ComplexMatrix::zeros(total, total);
    let mut reduced = Vec::with_capacity(cert.colors());
    for p in cert.projections() {
        let first = p * &(&identity - &covered);
        reduced.push(p - &first);
        covered = &covered + &first;
    }
    let full = ColoringCertificate::new(cert.graph_dim(), cert.ancilla_dim(), cert.fold() - 1, reduced)?;
    let (cert, color_map) = full.prune()?;
    let report = require("reduced certificate", verify_bfold(g, &cert, tol)?)?;
    Ok(Reduced { cert, report, color_map })
}

/// Subadditivity: a `(b1, c)` and a `(b2, d)` coloring give a `(b1+b2, c+d)` one.
///
/// The palettes are kept disjoint (`cert2`'s colors shift by `c`), the
/// ancillas are tensored as `N_1 ⊗ N_2`, and
/// `Q_{S1 ∪ (S2+c)} = (Q¹_{S1} ⊗ I_{N2}) ∧ (Q²_{S2} ⊙ I_{N1})`.
/// The meet is exact; whether the family it produces is again a coloring is
/// left to the verifier.
pub fn combine_bfold(
    g: &QuantumGraph,
    cert1: &ColoringCertificate,
    cert2: &ColoringCertificate,
    tol: f64,
) -> Result<Constructed> {
    require("first certificate", verify_bfold(g, cert1, tol)?)?;
    require("second certificate", verify_bfold(g, cert2, tol)?)?;
    ensure_dims(cert1.graph_dim() == cert2.graph_dim(), || "certificates on different graphs".into())?;
    let n = g.dim();
    let (n1, n2) = (cert1.ancilla_dim(), cert2.ancilla_dim());
    let id1 = ComplexMatrix::identity(n1);
    let id2 = ComplexMatrix::identity(n2);
    let live = |fam: Vec<PvmEntry>| -> Vec<PvmEntry> {
        fam.into_iter().filter(|(_, q)| q.hs_norm() >= 0.5).collect()
    };
    let q1: Vec<PvmEntry> = live(pvm_from_bfold(cert1, tol)?)
        .into_iter()
        .map(|(s, q)| (s, q.kron(&id2)))
        .collect();
    let q2: Vec<PvmEntry> = live(pvm_from_bfold(cert2, tol)?)
        .into_iter()
        .map(|(s, q)| {
            // (H, N2, N1) → (H, N1, N2)
            let e = permute_systems(&q.kron(&id1), &[n, n2, n1], &[0, 2, 1]);
            (s, e)
        })
        .map(|(s, e)| e.map(|e| (s, e)))
        .collect::<Result<_>>()?;

    let c = cert1.colors();
    let mut family = Vec::with_capacity(q1.len() * q2.len());
    for (s1, a) in &q1 {
        for (s2, b) in &q2 {
            let meet = projection_meet(a, b, tol.max(MEET_WINDOW))?;
            let set: Vec<usize> = s1.iter().copied().chain(s2.iter().map(|&x| x + c)).collect();
            family.push((set, meet));
        }
    }
    let cert = bfold_from_pvm(
        n,
        n1 * n2,
        &family,
        c + cert2.colors(),
        cert1.fold() + cert2.fold(),
    )?;
    let report = require("combined b-fold coloring", verify_bfold(g, &cert, tol)?)?;
    Ok(Constructed { cert, report })
}

/// `b`-fold coloring with `b·c` colors from a 1-fold `c`-coloring, by
/// combining the certificate with itself `b − 1` times.
pub fn scale_bfold(g: &QuantumGraph, cert: &ColoringCertificate, b: usize, tol: f64) -> Result<Constructed> {
    require_fold_one("scaled certificate", cert)?;
    if b == 0 {
        return Err(Error::InvalidInput("fold must be at least 1".into()));
    }
    let report = require("input certificate", verify_coloring(g, cert, tol)?)?;
    let mut acc = Constructed { cert: cert.clone(), report };
    for _ in 1..b {
        acc = combine_bfold(g, &acc.cert, cert, tol)?;
    }
    Ok(acc)
}

/// `P^L_a = Σ_{T∋a} Q_T ⊙ P^H_{ψ(T,a)}` on `G[H]`, where `ψ(T,a)` is the
/// position of `a` in ascending `T`.
///
/// Needs `certG` b-fold with `c` colors and `certH` a 1-fold `b`-coloring;
/// yields a 1-fold `c`-coloring of the lexicographic product.
pub fn lexicographic_coloring(
    g: &QuantumGraph,
    h: &QuantumGraph,
    cert_g: &ColoringCertificate,
    cert_h: &ColoringCertificate,
    tol: f64,
) -> Result<Constructed> {
    require_fold_one("right-factor certificate", cert_h)?;
    if cert_g.fold() != cert_h.colors() {
        return Err(Error::InvalidInput(format!(
            "left certificate has fold {} but the right one uses {} colors",
            cert_g.fold(),
            cert_h.colors()
        )));
    }
    require("left-factor certificate", verify_bfold(g, cert_g, tol)?)?;
    require("right-factor certificate", verify_coloring(h, cert_h, tol)?)?;
    let dims = [g.dim(), cert_g.ancilla_dim(), h.dim(), cert_h.ancilla_dim()];
    let total: usize = dims.iter().product();
    let family = pvm_from_bfold(cert_g, tol)?;
    let mut ps = vec![ComplexMatrix::zeros(total, total); cert_g.colors()];
    for (t, q) in &family {
        if q.hs_norm() < 0.5 {
            continue;
        }
        for (rank, &a) in t.iter().enumerate() {
            ps[a] = &ps[a] + &interleave(q, &cert_h.projections()[rank], dims)?;
        }
    }
    let cert = ColoringCertificate::new(
        g.dim() * h.dim(),
        cert_g.ancilla_dim() * cert_h.ancilla_dim(),
        1,
        ps,
    )?;
    let lex = product_unchecked(ProductKind::Lexicographic, g, h);
    let report = require("lexicographic coloring", verify_coloring(&lex, &cert, tol)?)?;
    Ok(Constructed { cert, report })
}

/// `R_{a,b} = P^G_a ⊙ P^H_b`, ordered with `a` outer.
///
/// The report covers the strong product and, under the `cartesian:` prefix,
/// the Cartesian product, whose edge space is contained in it.
pub fn strong_coloring(
    g: &QuantumGraph,
    h: &QuantumGraph,
    cert_g: &ColoringCertificate,
    cert_h: &ColoringCertificate,
    tol: f64,
) -> Result<Constructed> {
    require_fold_one("left-factor certificate", cert_g)?;
    require_fold_one("right-factor certificate", cert_h)?;
    require("left-factor certificate", verify_coloring(g, cert_g, tol)?)?;
    require("right-factor certificate", verify_coloring(h, cert_h, tol)?)?;
    let dims = [g.dim(), cert_g.ancilla_dim(), h.dim(), cert_h.ancilla_dim()];
    let mut ps = Vec::with_capacity(cert_g.colors() * cert_h.colors());
    for p in cert_g.projections() {
        for q in cert_h.projections() {
            ps.push(interleave(p, q, dims)?);
        }
    }
    let cert = ColoringCertificate::new(
        g.dim() * h.dim(),
        cert_g.ancilla_dim() * cert_h.ancilla_dim(),
        1,
        ps,
    )?;
    let strong = product_unchecked(ProductKind::Strong, g, h);
    let cart = product_unchecked(ProductKind::Cartesian, g, h);
    let mut report = CheckReport::new();
    report.extend("strong: ", verify_coloring(&strong, &cert, tol)?);
    report.extend("cartesian: ", verify_coloring(&cart, &cert, tol)?);
    let report = require("strong-product coloring", report)?;
    Ok(Constructed { cert, report })
}

/// `P̃_a = P_a ⊙ I_{n_H}` colors `G × H` with the colors of `G`.
pub fn categorical_lift(
    g: &QuantumGraph,
    cert_g: &ColoringCertificate,
    h: &QuantumGraph,
    tol: f64,
) -> Result<Constructed> {
    require_fold_one("lifted certificate", cert_g)?;
    require("lifted certificate", verify_coloring(g, cert_g, tol)?)?;
    let (n, d, m) = (g.dim(), cert_g.ancilla_dim(), h.dim());
    let id = ComplexMatrix::identity(m);
    let ps = cert_g
        .projections()
        .iter()
        .map(|p| permute_systems(&p.kron(&id), &[n, d, m], &[0, 2, 1]))
        .collect::<Result<Vec<_>>>()?;
    let cert = ColoringCertificate::new(n * m, d, 1, ps)?;
    let cat = product_unchecked(ProductKind::Categorical, g, h);
    let report = require("categorical lift", verify_coloring(&cat, &cert, tol)?)?;
    Ok(Constructed { cert, report })
}
