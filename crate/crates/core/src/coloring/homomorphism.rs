use faer::{c64, Mat};

use super::certificate::HomomorphismCertificate;
use crate::error::{ensure_dims, Result};
use crate::opspace::{leg_permutation_unitary, ComplexMatrix, OperatorSubspace};
use crate::qgraph::QuantumGraph;
use crate::report::CheckReport;

/// Which factor of a product a witness refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    First,
    Second,
}

/// Worst residual of `F_i (X ⊗ I) F_j*` in `target` over all `i, j` and `xs`.
fn image_residual(target: &OperatorSubspace, kraus: &[ComplexMatrix], xs: &[ComplexMatrix], d: usize) -> f64 {
    let id = ComplexMatrix::identity(d);
    let amplified: Vec<ComplexMatrix> = xs.iter().map(|x| x.kron(&id)).collect();
    let adjoints: Vec<ComplexMatrix> = kraus.iter().map(ComplexMatrix::adjoint).collect();
    let mut worst = 0.0_f64;
    for fi in kraus {
        let left: Vec<ComplexMatrix> = amplified.iter().map(|x| fi * x).collect();
        for fj in &adjoints {
            let images: Vec<ComplexMatrix> = left.iter().map(|l| l * fj).collect();
            let r = target
                .max_residual(&images)
                .expect("Kraus shapes were checked");
            worst = worst.max(r);
        }
    }
    worst
}

/// Checks `Σ F_i* F_i = I`, `F_i (S_src ⊗ I) F_j* ⊆ S_dst` and
/// `F_i (M_src' ⊗ I) F_j* ⊆ M_dst'`.
pub fn verify_homomorphism(
    src: &QuantumGraph,
    dst: &QuantumGraph,
    cert: &HomomorphismCertificate,
    tol: f64,
) -> Result<CheckReport> {
    ensure_dims(cert.source_dim() == src.dim() && cert.target_dim() == dst.dim(), || {
        format!(
            "certificate {} → {} for graphs {} → {}",
            cert.source_dim(),
            cert.target_dim(),
            src.dim(),
            dst.dim()
        )
    })?;
    let d = cert.ancilla_dim();
    let cols = src.dim() * d;
    let mut gram = Mat::<c64>::zeros(cols, cols);
    for f in cert.kraus() {
        gram += f.as_mat().adjoint() * f.as_mat();
    }
    let tp = (&gram - Mat::<c64>::identity(cols, cols)).norm_l2();

    let mut report = CheckReport::new();
    report.push("trace preservation Σ F*F = I", tp, tol);
    report.push(
        "F (S_src ⊗ I) F* ⊆ S_dst",
        image_residual(dst.s(), cert.kraus(), &src.s().basis(), d),
        tol,
    );
    report.push(
        "F (M_src' ⊗ I) F* ⊆ M_dst'",
        image_residual(
            &dst.commutant_span(),
            cert.kraus(),
            &src.algebra().commutant_generators(),
            d,
        ),
        tol,
    );
    report.note(format!(
        "{} Kraus operators, ancilla dim {} (t = {})",
        cert.kraus().len(),
        d,
        if d == 1 { "loc" } else { "q" }
    ));
    Ok(report)
}

/// Witness for `G → G □ H` (or `H → G □ H`).
///
/// When the other factor's commutant holds a rank-one projection `uu*` the
/// single operator `I ⊗ u` (resp. `u ⊗ I`) is a local witness: it sends `X`
/// to `X ⊗ uu* ∈ S_G ⊗ M_H'`. Otherwise the witness uses an ancilla of the
/// other factor's dimension and the (leg-ordered) identity, sending `X` to
/// `X ⊗ I`.
pub fn sabidussi_witness(g: &QuantumGraph, h: &QuantumGraph, factor: Factor) -> HomomorphismCertificate {
    let (ng, nh) = (g.dim(), h.dim());
    let (source, other) = match factor {
        Factor::First => (g, h),
        Factor::Second => (h, g),
    };
    let (f, ancilla) = match other.algebra().commutant_rank_one_vector() {
        Some(u) => {
            let id = ComplexMatrix::identity(source.dim());
            let f = match factor {
                Factor::First => id.kron(&u),
                Factor::Second => u.kron(&id),
            };
            (f, 1)
        }
        None => {
            let f = match factor {
                Factor::First => ComplexMatrix::identity(ng * nh),
                // C^{n_H} ⊗ N with N = C^{n_G}, flipped into C^{n_G} ⊗ C^{n_H}
                Factor::Second => leg_permutation_unitary(&[nh, ng], &[1, 0])
                    .expect("two-leg flip is a permutation"),
            };
            (f, other.dim())
        }
    };
    HomomorphismCertificate::new(source.dim(), ng * nh, ancilla, vec![f])
        .expect("witness shapes are consistent")
}

/// Witness for `G × H → G` (or `→ H`): `K_j = I_G ⊗ e_j*` (resp. `e_j* ⊗ I_H`).
pub fn hedetniemi_witness(g: &QuantumGraph, h: &QuantumGraph, factor: Factor) -> HomomorphismCertificate {
    let (ng, nh) = (g.dim(), h.dim());
    let (kraus, target) = match factor {
        Factor::First => {
            let id = ComplexMatrix::identity(ng);
            let ks = (0..nh).map(|j| id.kron(&basis_row(nh, j))).collect();
            (ks, ng)
        }
        Factor::Second => {
            let id = ComplexMatrix::identity(nh);
            let ks = (0..ng).map(|j| basis_row(ng, j).kron(&id)).collect();
            (ks, nh)
        }
    };
    HomomorphismCertificate::new(ng * nh, target, 1, kraus).expect("witness shapes are consistent")
}

/// The row vector `e_j*` in `C^n`.
fn basis_row(n: usize, j: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(1, n, |_, k| if k == j { c64::new(1.0, 0.0) } else { c64::new(0.0, 0.0) })
}
