//! Chromatic bounds for the four products of two classical graphs, checked
//! with the exact solvers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classical::{bfold_exact, chromatic_exact, ClassicalGraph};
use crate::error::Result;
use crate::products::ProductKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Le,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Inequality {
    pub name: String,
    pub statement: String,
    pub lhs: usize,
    pub relation: Relation,
    pub rhs: usize,
    pub holds: bool,
}

impl Inequality {
    fn new(name: &str, statement: String, lhs: usize, relation: Relation, rhs: usize) -> Self {
        let holds = match relation {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
        };
        Self { name: name.into(), statement, lhs, relation, rhs, holds }
    }

    pub fn tight(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub g: String,
    pub h: String,
    pub chi_g: usize,
    pub chi_h: usize,
    pub chi_cartesian: usize,
    pub chi_categorical: usize,
    pub chi_lexicographic: usize,
    pub chi_strong: usize,
    /// `b = χ(H)` and `χ_b(G)`.
    pub b: usize,
    pub chi_b_g: usize,
    pub inequalities: Vec<Inequality>,
}

impl BoundsReport {
    pub fn all_hold(&self) -> bool {
        self.inequalities.iter().all(|i| i.holds)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Inequality> {
        self.inequalities.iter().filter(|i| !i.holds)
    }
}

/// Exact chromatic data for `G`, `H` and their products, with every bound checked.
pub fn bounds_report(g: &ClassicalGraph, h: &ClassicalGraph, g_name: &str, h_name: &str) -> Result<BoundsReport> {
    let chi_g = chromatic_exact(g)?;
    let chi_h = chromatic_exact(h)?;
    let chi = |kind| chromatic_exact(&g.product(h, kind));
    let chi_cartesian = chi(ProductKind::Cartesian)?;
    let chi_categorical = chi(ProductKind::Categorical)?;
    let chi_lexicographic = chi(ProductKind::Lexicographic)?;
    let chi_strong = chi(ProductKind::Strong)?;
    let b = chi_h;
    let chi_b_g = bfold_exact(g, b)?.palette_size();

    let (gn, hn) = (g_name, h_name);
    let max = chi_g.max(chi_h);
    let min = chi_g.min(chi_h);
    let prod = chi_g * chi_h;
    use Relation::{Eq, Le};
    let inequalities = vec![
        Inequality::new("cartesian lower", format!("max(χ({gn}), χ({hn})) ≤ χ({gn} □ {hn})"), max, Le, chi_cartesian),
        Inequality::new("cartesian upper", format!("χ({gn} □ {hn}) ≤ χ({gn})·χ({hn})"), chi_cartesian, Le, prod),
        Inequality::new("categorical upper", format!("χ({gn} × {hn}) ≤ min(χ({gn}), χ({hn}))"), chi_categorical, Le, min),
        Inequality::new("strong lower", format!("max(χ({gn}), χ({hn})) ≤ χ({gn} ⊠ {hn})"), max, Le, chi_strong),
        Inequality::new("strong upper", format!("χ({gn} ⊠ {hn}) ≤ χ({gn})·χ({hn})"), chi_strong, Le, prod),
        Inequality::new("cartesian in strong", format!("χ({gn} □ {hn}) ≤ χ({gn} ⊠ {hn})"), chi_cartesian, Le, chi_strong),
        Inequality::new("lexicographic upper", format!("χ({gn}[{hn}]) ≤ χ_{b}({gn})"), chi_lexicographic, Le, chi_b_g),
        Inequality::new("b-fold upper", format!("χ_{b}({gn}) ≤ χ({gn})·χ({hn})"), chi_b_g, Le, prod),
        Inequality::new("lexicographic identity", format!("χ({gn}[{hn}]) = χ_{b}({gn})"), chi_lexicographic, Eq, chi_b_g),
    ];
    Ok(BoundsReport {
        g: g_name.into(),
        h: h_name.into(),
        chi_g,
        chi_h,
        chi_cartesian,
        chi_categorical,
        chi_lexicographic,
        chi_strong,
        b,
        chi_b_g,
        inequalities,
    })
}

impl fmt::Display for BoundsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (g, h) = (&self.g, &self.h);
        writeln!(f, "χ({g}) = {}", self.chi_g)?;
        writeln!(f, "χ({h}) = {}", self.chi_h)?;
        writeln!(f, "χ({g} □ {h}) = {}", self.chi_cartesian)?;
        writeln!(f, "χ({g} × {h}) = {}", self.chi_categorical)?;
        writeln!(f, "χ({g}[{h}]) = {}", self.chi_lexicographic)?;
        writeln!(f, "χ({g} ⊠ {h}) = {}", self.chi_strong)?;
        writeln!(f, "χ_{}({g}) = {}", self.b, self.chi_b_g)?;
        writeln!(f)?;
        let width = self
            .inequalities
            .iter()
            .map(|i| i.statement.chars().count())
            .max()
            .unwrap_or(0);
        for i in &self.inequalities {
            let op = match i.relation {
                Relation::Le => "≤",
                Relation::Eq => "=",
            };
            let status = match (i.holds, i.tight()) {
                (false, _) => "VIOLATED",
                (true, true) => "holds (tight)",
                (true, false) => "holds",
            };
            let pad = width - i.statement.chars().count();
            writeln!(
                f,
                "{}{}  {:>3} {op} {:<3}  {status}",
                i.statement,
                " ".repeat(pad),
                i.lhs,
                i.rhs
            )?;
        }
        Ok(())
    }
}
