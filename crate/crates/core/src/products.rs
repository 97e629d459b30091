//! The four quantum graph products and their classical cross-check.
//!
//! For factors `G = (S_G, M_G)` on `C^{n_G}` and `H = (S_H, M_H)` on
//! `C^{n_H}`, every product lives on `C^{n_G} ⊗ C^{n_H}` over `M_G ⊗̄ M_H`:
//!
//! | kind          | edge space                                   |
//! |---------------|----------------------------------------------|
//! | cartesian     | `S_G ⊗ M_H' + M_G' ⊗ S_H`                    |
//! | categorical   | `S_G ⊗ S_H`                                  |
//! | lexicographic | `S_G ⊗ M_{n_H} + M_G' ⊗ S_H`                 |
//! | strong        | `S_G ⊗ M_H' + M_G' ⊗ S_H + S_G ⊗ S_H`        |
//!
//! The summands are pairwise HS-orthogonal because `S ⊥ M'` in each factor.
//! The lexicographic second summand uses `M_G'`; with `M_H'` in the left leg
//! the operator would not act on the product space.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classical::ClassicalGraph;
use crate::error::{Error, Result};
use crate::opspace::{ComplexMatrix, OperatorSubspace};
use crate::qgraph::QuantumGraph;
use crate::report::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    Cartesian,
    Categorical,
    Lexicographic,
    Strong,
}

impl ProductKind {
    pub const ALL: [ProductKind; 4] = [
        ProductKind::Cartesian,
        ProductKind::Categorical,
        ProductKind::Lexicographic,
        ProductKind::Strong,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProductKind::Cartesian => "cartesian",
            ProductKind::Categorical => "categorical",
            ProductKind::Lexicographic => "lexicographic",
            ProductKind::Strong => "strong",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            ProductKind::Cartesian => "□",
            ProductKind::Categorical => "×",
            ProductKind::Lexicographic => "[·]",
            ProductKind::Strong => "⊠",
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProductKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProductKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown product kind '{s}'")))
    }
}

/// Notice attached to every lexicographic product emitted by the tools.
pub const LEXICOGRAPHIC_NOTICE: &str = "lexicographic product built as S_G ⊗ B(H_H) + M_G' ⊗ S_H; \
     the defining formula's M_H' in the left leg is read as M_G', the only \
     dimensionally consistent choice and the one under which the classical \
     cross-check holds";

fn check_factor(name: &str, g: &QuantumGraph, tol: f64) -> Result<()> {
    let report = g.verify(tol);
    if report.passed() {
        Ok(())
    } else {
        Err(Error::VerificationFailed {
            what: format!("{name} factor"),
            report,
        })
    }
}

/// Product of two quantum graphs; both factors are verified at `tol` first.
pub fn product(kind: ProductKind, g: &QuantumGraph, h: &QuantumGraph, tol: f64) -> Result<QuantumGraph> {
    check_factor("left", g, tol)?;
    check_factor("right", h, tol)?;
    Ok(product_unchecked(kind, g, h))
}

/// Product without verifying the factors.
pub fn product_unchecked(kind: ProductKind, g: &QuantumGraph, h: &QuantumGraph) -> QuantumGraph {
    let n = g.dim() * h.dim();
    let (sg, sh) = (g.s(), h.s());
    let s = match kind {
        ProductKind::Categorical => sg.tensor(sh),
        _ => {
            let left = match kind {
                ProductKind::Lexicographic => sg.tensor(&OperatorSubspace::full(h.dim())),
                _ => sg.tensor(&h.commutant_span()),
            };
            let right = g.commutant_span().tensor(sh);
            let mut parts = vec![left, right];
            if kind == ProductKind::Strong {
                parts.push(sg.tensor(sh));
            }
            let refs: Vec<&OperatorSubspace> = parts.iter().collect();
            OperatorSubspace::sum_all(n, &refs).expect("summands share the product dimension")
        }
    };
    let algebra = g.algebra().tensor(h.algebra());
    QuantumGraph::new(s, algebra).expect("product dimensions agree")
}

pub fn cartesian(g: &QuantumGraph, h: &QuantumGraph, tol: f64) -> Result<QuantumGraph> {
    product(ProductKind::Cartesian, g, h, tol)
}

pub fn categorical(g: &QuantumGraph, h: &QuantumGraph, tol: f64) -> Result<QuantumGraph> {
    product(ProductKind::Categorical, g, h, tol)
}

pub fn lexicographic(g: &QuantumGraph, h: &QuantumGraph, tol: f64) -> Result<QuantumGraph> {
    product(ProductKind::Lexicographic, g, h, tol)
}

pub fn strong(g: &QuantumGraph, h: &QuantumGraph, tol: f64) -> Result<QuantumGraph> {
    product(ProductKind::Strong, g, h, tol)
}

/// Compares the quantum product of `Q(G)` and `Q(H)` with `Q(G ∘ H)`.
///
/// The identification unitary sends the product vertex `(v, w)` to
/// `δ_v ⊗ δ_w`; with the classical product's labeling `(v, w) ↦ v·|H| + w`
/// it is assembled entrywise rather than assumed to be the identity.
pub fn classical_crosscheck(
    g: &ClassicalGraph,
    h: &ClassicalGraph,
    kind: ProductKind,
    tol: f64,
) -> Result<CheckReport> {
    let (ng, nh) = (g.vertex_count(), h.vertex_count());
    let k = g.product(h, kind);
    let qk = QuantumGraph::from_classical(&k);
    let q = product(
        kind,
        &QuantumGraph::from_classical(g),
        &QuantumGraph::from_classical(h),
        tol,
    )?;

    let label = |v: usize, w: usize| v * nh + w;
    let mut map = vec![0; ng * nh];
    for v in 0..ng {
        for w in 0..nh {
            // column: classical vertex (v, w); row: δ_v ⊗ δ_w
            map[label(v, w)] = v * nh + w;
        }
    }
    let u = ComplexMatrix::permutation(&map);
    let ud = u.adjoint();

    let mut report = CheckReport::new();
    let s_image = qk.s().conjugate(&ud)?;
    report.push_with_detail(
        "edge space identification",
        s_image.span_distance(q.s())?,
        tol,
        format!("dim S_K = {}, dim S_product = {}", qk.s().dim(), q.s().dim()),
    );
    let m_image = qk.algebra().basis().conjugate(&ud)?;
    report.push(
        "algebra identification",
        m_image.span_distance(&q.algebra().basis())?,
        tol,
    );
    if kind == ProductKind::Lexicographic {
        report.note(LEXICOGRAPHIC_NOTICE);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opspace::DEFAULT_TOL;
    use crate::qgraph::BlockAlgebra;

    fn q(g: &ClassicalGraph) -> QuantumGraph {
        QuantumGraph::from_classical(g)
    }

    #[test]
    fn dimension_formulas() {
        let c3 = q(&ClassicalGraph::cycle(3));
        let k2 = q(&ClassicalGraph::complete(2));
        let t = DEFAULT_TOL;
        assert_eq!(cartesian(&c3, &c3, t).unwrap().s().dim(), 36);
        assert_eq!(categorical(&c3, &k2, t).unwrap().s().dim(), 12);
        assert_eq!(lexicographic(&c3, &k2, t).unwrap().s().dim(), 30);
    }

    #[test]
    fn single_vertex_left_factor() {
        let k1 = q(&ClassicalGraph::complete(1));
        let h = q(&ClassicalGraph::cycle(5));
        for kind in ProductKind::ALL {
            let p = product(kind, &k1, &h, DEFAULT_TOL).unwrap();
            let expected = if kind == ProductKind::Categorical { 0 } else { h.s().dim() };
            assert_eq!(p.s().dim(), expected, "{kind}");
        }
    }

    #[test]
    fn cartesian_is_contained_in_strong() {
        let c3 = q(&ClassicalGraph::cycle(3));
        let k2 = q(&ClassicalGraph::complete(2));
        let cart = cartesian(&c3, &k2, DEFAULT_TOL).unwrap();
        let st = strong(&c3, &k2, DEFAULT_TOL).unwrap();
        assert!(cart.is_subgraph_of(&st, DEFAULT_TOL).unwrap());
    }

    #[test]
    fn crosscheck_passes_on_small_pair() {
        for kind in ProductKind::ALL {
            let r = classical_crosscheck(
                &ClassicalGraph::cycle(5),
                &ClassicalGraph::complete(2),
                kind,
                DEFAULT_TOL,
            )
            .unwrap();
            assert!(r.passed(), "{kind}: {r}");
        }
    }

    #[test]
    fn invalid_factor_is_rejected() {
        let x = &ComplexMatrix::unit(2, 0, 1) + &ComplexMatrix::unit(2, 1, 0);
        let s = OperatorSubspace::span(2, &[x]).unwrap();
        let bad = QuantumGraph::new(s, BlockAlgebra::diagonal(2)).unwrap();
        let k2 = q(&ClassicalGraph::complete(2));
        assert!(matches!(
            cartesian(&bad, &k2, DEFAULT_TOL),
            Err(Error::VerificationFailed { .. })
        ));
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in ProductKind::ALL {
            assert_eq!(kind.name().parse::<ProductKind>().unwrap(), kind);
        }
        assert!("tensor".parse::<ProductKind>().is_err());
    }
}
