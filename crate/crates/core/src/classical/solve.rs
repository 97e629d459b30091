//! Exact chromatic and b-fold chromatic numbers by branch and bound.
//!
//! Every search carries a node budget. Exhausting it, or exceeding the size
//! guards, is reported as [`Error::TooLarge`]; a solver never returns an
//! answer it has not proven.

use serde::{Deserialize, Serialize};

use super::graph::{mask, subsets, ClassicalGraph};
use crate::error::{Error, Result};

/// Largest vertex count accepted by the exact solvers.
pub const MAX_VERTICES: usize = 64;
/// Largest palette accepted by the b-fold solver (colors are bits of a `u128`).
pub const MAX_PALETTE: usize = 128;
/// Largest Kneser graph the homomorphism search will materialize.
pub const MAX_KNESER_VERTICES: usize = 5000;
/// Search nodes allowed per solver call.
pub const NODE_BUDGET: u64 = 20_000_000;

/// A b-fold coloring `φ: V → ([c] choose b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BFoldAssignment {
    palette_size: usize,
    fold: usize,
    sets: Vec<Vec<usize>>,
}

impl BFoldAssignment {
    /// Sorts each color set; checks sizes and palette range but not adjacency.
    pub fn new(palette_size: usize, fold: usize, mut sets: Vec<Vec<usize>>) -> Result<Self> {
        if fold == 0 {
            return Err(Error::InvalidInput("fold must be at least 1".into()));
        }
        for (v, s) in sets.iter_mut().enumerate() {
            s.sort_unstable();
            s.dedup();
            if s.len() != fold {
                return Err(Error::InvalidInput(format!(
                    "vertex {v} has {} distinct colors, expected {fold}",
                    s.len()
                )));
            }
            if let Some(&a) = s.iter().find(|&&a| a >= palette_size) {
                return Err(Error::InvalidInput(format!(
                    "vertex {v} uses color {a} outside a palette of {palette_size}"
                )));
            }
        }
        Ok(Self { palette_size, fold, sets })
    }

    /// Proper coloring from a color index per vertex.
    pub fn from_coloring(palette_size: usize, colors: &[usize]) -> Result<Self> {
        Self::new(palette_size, 1, colors.iter().map(|&c| vec![c]).collect())
    }

    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    pub fn fold(&self) -> usize {
        self.fold
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// Checks vertex count and that adjacent vertices get disjoint sets.
    pub fn validate(&self, g: &ClassicalGraph) -> Result<()> {
        if self.sets.len() != g.vertex_count() {
            return Err(Error::InvalidInput(format!(
                "assignment covers {} vertices, graph has {}",
                self.sets.len(),
                g.vertex_count()
            )));
        }
        for &(u, v) in g.edges() {
            if self.sets[u].iter().any(|a| self.sets[v].contains(a)) {
                return Err(Error::InvalidInput(format!(
                    "adjacent vertices {u} and {v} share a color"
                )));
            }
        }
        Ok(())
    }
}

fn guard_size(g: &ClassicalGraph) -> Result<()> {
    if g.vertex_count() > MAX_VERTICES {
        return Err(Error::TooLarge(format!(
            "{} vertices exceeds the exact-solver limit of {MAX_VERTICES}",
            g.vertex_count()
        )));
    }
    Ok(())
}

fn budget_exceeded(what: &str) -> Error {
    Error::TooLarge(format!("{what}: search exceeded {NODE_BUDGET} nodes"))
}

/// Greedy clique: from each vertex, add neighbours in decreasing degree order.
pub fn greedy_clique(g: &ClassicalGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut best = vec![0];
    for start in 0..n {
        let mut cand: Vec<usize> = g.neighbors(start).to_vec();
        cand.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let mut clique = vec![start];
        for v in cand {
            if clique.iter().all(|&u| g.is_adjacent(u, v)) {
                clique.push(v);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

struct Dsatur<'a> {
    g: &'a ClassicalGraph,
    color: Vec<usize>,
    // neighbour_count[v * n + c]: coloured neighbours of v with colour c
    neighbour_count: Vec<u32>,
    saturation: Vec<usize>,
    lower: usize,
    best: usize,
    best_color: Vec<usize>,
    nodes: u64,
}

const UNCOLORED: usize = usize::MAX;

impl Dsatur<'_> {
    fn assign(&mut self, v: usize, c: usize) {
        let n = self.g.vertex_count();
        self.color[v] = c;
        for &u in self.g.neighbors(v) {
            let slot = &mut self.neighbour_count[u * n + c];
            if *slot == 0 {
                self.saturation[u] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let n = self.g.vertex_count();
        let c = self.color[v];
        self.color[v] = UNCOLORED;
        for &u in self.g.neighbors(v) {
            let slot = &mut self.neighbour_count[u * n + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[u] -= 1;
            }
        }
    }

    fn pick(&self) -> Option<usize> {
        (0..self.g.vertex_count())
            .filter(|&v| self.color[v] == UNCOLORED)
            .max_by_key(|&v| (self.saturation[v], self.g.degree(v), std::cmp::Reverse(v)))
    }

    fn search(&mut self, used: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > NODE_BUDGET {
            return Err(budget_exceeded("chromatic number"));
        }
        let Some(v) = self.pick() else {
            self.best = used;
            self.best_color = self.color.clone();
            return Ok(());
        };
        let n = self.g.vertex_count();
        for c in 0..=used {
            if self.best <= self.lower {
                break;
            }
            let opens = c == used;
            if opens && used + 1 >= self.best {
                break;
            }
            if !opens && self.neighbour_count[v * n + c] > 0 {
                continue;
            }
            self.assign(v, c);
            let r = self.search(used.max(c + 1));
            self.unassign(v);
            r?;
        }
        Ok(())
    }
}

/// An optimal proper coloring as one color index per vertex.
pub fn optimal_coloring(g: &ClassicalGraph) -> Result<Vec<usize>> {
    guard_size(g)?;
    let n = g.vertex_count();
    let clique = greedy_clique(g);
    let mut s = Dsatur {
        g,
        color: vec![UNCOLORED; n],
        neighbour_count: vec![0; n * n],
        saturation: vec![0; n],
        lower: clique.len(),
        best: n + 1,
        best_color: Vec::new(),
        nodes: 0,
    };
    // Any coloring can be permuted so the clique reads 0, 1, 2, …
    for (c, &v) in clique.iter().enumerate() {
        s.assign(v, c);
    }
    s.search(clique.len())?;
    let witness = BFoldAssignment::from_coloring(s.best, &s.best_color)?;
    witness.validate(g)?;
    Ok(s.best_color)
}

/// `χ(G)`.
pub fn chromatic_exact(g: &ClassicalGraph) -> Result<usize> {
    let colors = optimal_coloring(g)?;
    Ok(colors.iter().max().map_or(1, |&m| m + 1))
}

struct BFoldSearch<'a> {
    g: &'a ClassicalGraph,
    b: usize,
    c: usize,
    sets: Vec<u128>,
    // forbidden_count[v * c + a]: assigned neighbours of v holding colour a
    forbidden_count: Vec<u32>,
    forbidden: Vec<u128>,
    nodes: u64,
}

impl BFoldSearch<'_> {
    fn assign(&mut self, v: usize, set: u128) {
        self.sets[v] = set;
        for &u in self.g.neighbors(v) {
            for a in bits(set) {
                let slot = &mut self.forbidden_count[u * self.c + a];
                if *slot == 0 {
                    self.forbidden[u] |= 1 << a;
                }
                *slot += 1;
            }
        }
    }

    fn unassign(&mut self, v: usize) {
        let set = std::mem::take(&mut self.sets[v]);
        for &u in self.g.neighbors(v) {
            for a in bits(set) {
                let slot = &mut self.forbidden_count[u * self.c + a];
                *slot -= 1;
                if *slot == 0 {
                    self.forbidden[u] &= !(1 << a);
                }
            }
        }
    }

    /// Canonical palette: colours `0..used` have appeared; a new set may
    /// only open the next unused colours, in order.
    fn search(&mut self, used: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > NODE_BUDGET {
            return Err(budget_exceeded("b-fold chromatic number"));
        }
        let next = (0..self.g.vertex_count())
            .filter(|&v| self.sets[v] == 0)
            .max_by_key(|&v| {
                (
                    self.forbidden[v].count_ones(),
                    self.g.degree(v),
                    std::cmp::Reverse(v),
                )
            });
        let Some(v) = next else {
            return Ok(true);
        };
        if self.c - (self.forbidden[v].count_ones() as usize) < self.b {
            return Ok(false);
        }
        let used_mask = if used == 0 { 0 } else { u128::MAX >> (128 - used) };
        let avail: Vec<usize> = bits(!self.forbidden[v] & used_mask).collect();
        for fresh in 0..=self.b {
            let reuse = self.b - fresh;
            if used + fresh > self.c || avail.len() < reuse {
                continue;
            }
            let fresh_mask = mask(&(used..used + fresh).collect::<Vec<_>>());
            for pick in subsets(avail.len(), reuse) {
                let set = pick.iter().fold(fresh_mask, |m, &i| m | (1u128 << avail[i]));
                self.assign(v, set);
                let found = self.search(used + fresh);
                if !matches!(found, Ok(true)) {
                    self.unassign(v);
                }
                if found? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

fn bits(m: u128) -> impl Iterator<Item = usize> {
    (0..128).filter(move |&a| m >> a & 1 == 1)
}

/// A b-fold coloring with at most `c` colors, if one exists.
pub fn bfold_feasible(g: &ClassicalGraph, b: usize, c: usize) -> Result<Option<BFoldAssignment>> {
    guard_size(g)?;
    if b == 0 {
        return Err(Error::InvalidInput("fold must be at least 1".into()));
    }
    if c > MAX_PALETTE {
        return Err(Error::TooLarge(format!(
            "palette of {c} exceeds the limit of {MAX_PALETTE}"
        )));
    }
    if c < b {
        return Ok(None);
    }
    let n = g.vertex_count();
    let mut s = BFoldSearch {
        g,
        b,
        c,
        sets: vec![0; n],
        forbidden_count: vec![0; n * c],
        forbidden: vec![0; n],
        nodes: 0,
    };
    if !s.search(0)? {
        return Ok(None);
    }
    let sets = s.sets.iter().map(|&m| bits(m).collect()).collect();
    let w = BFoldAssignment::new(c, b, sets)?;
    w.validate(g)?;
    Ok(Some(w))
}

/// `χ_b(G)` with a witness whose palette size is the optimum.
pub fn bfold_exact(g: &ClassicalGraph, b: usize) -> Result<BFoldAssignment> {
    if b == 0 {
        return Err(Error::InvalidInput("fold must be at least 1".into()));
    }
    if b == 1 {
        let colors = optimal_coloring(g)?;
        let c = colors.iter().max().map_or(1, |&m| m + 1);
        return BFoldAssignment::from_coloring(c, &colors);
    }
    let lower = b * greedy_clique(g).len();
    let upper = b * chromatic_exact(g)?;
    for c in lower..=upper {
        if let Some(w) = bfold_feasible(g, b, c)? {
            return Ok(w);
        }
    }
    Err(Error::InvalidInput(format!(
        "no b-fold coloring within b·χ = {upper} colors; solver invariant broken"
    )))
}

/// Whether `G → K(c, b)`, by direct backtracking into the Kneser graph.
pub fn kneser_hom_check(g: &ClassicalGraph, c: usize, b: usize) -> Result<bool> {
    guard_size(g)?;
    if b == 0 || c < b {
        return Err(Error::InvalidInput(format!("Kneser graph K({c}, {b}) needs c ≥ b ≥ 1")));
    }
    if binomial(c, b) > MAX_KNESER_VERTICES {
        return Err(Error::TooLarge(format!(
            "K({c}, {b}) has more than {MAX_KNESER_VERTICES} vertices"
        )));
    }
    let k = ClassicalGraph::kneser(c, b);
    let m = k.vertex_count();
    let words = m.div_ceil(64);
    let mut rows = vec![0u64; m * words];
    for &(x, y) in k.edges() {
        rows[x * words + y / 64] |= 1 << (y % 64);
        rows[y * words + x / 64] |= 1 << (x % 64);
    }

    // Breadth-first order so that each vertex after a component's root has
    // an already-mapped neighbour constraining it.
    let n = g.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    order.push(u);
                }
            }
        }
    }

    struct Hom<'a> {
        g: &'a ClassicalGraph,
        order: Vec<usize>,
        image: Vec<usize>,
        rows: Vec<u64>,
        words: usize,
        m: usize,
        nodes: u64,
    }

    impl Hom<'_> {
        fn go(&mut self, depth: usize) -> Result<bool> {
            self.nodes += 1;
            if self.nodes > NODE_BUDGET {
                return Err(budget_exceeded("Kneser homomorphism"));
            }
            if depth == self.order.len() {
                return Ok(true);
            }
            let v = self.order[depth];
            let mut cand = vec![u64::MAX; self.words];
            if self.m % 64 != 0 {
                cand[self.words - 1] = (1u64 << (self.m % 64)) - 1;
            }
            for &u in self.g.neighbors(v) {
                let img = self.image[u];
                if img != UNCOLORED {
                    for (w, c) in cand.iter_mut().enumerate() {
                        *c &= self.rows[img * self.words + w];
                    }
                }
            }
            // Kneser graphs are vertex-transitive: the first vertex can be
            // sent to subset 0.
            if depth == 0 {
                cand.iter_mut().for_each(|c| *c = 0);
                cand[0] = 1;
            }
            for (w, &word) in cand.iter().enumerate() {
                let mut rest = word;
                while rest != 0 {
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    self.image[v] = w * 64 + bit;
                    if self.go(depth + 1)? {
                        return Ok(true);
                    }
                }
            }
            self.image[v] = UNCOLORED;
            Ok(false)
        }
    }

    let mut h = Hom {
        g,
        order,
        image: vec![UNCOLORED; n],
        rows,
        words,
        m,
        nodes: 0,
    };
    h.go(0)
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}
