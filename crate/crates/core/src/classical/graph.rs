use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::products::ProductKind;

/// A finite simple undirected graph on vertices `0..n`.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl ClassicalGraph {
    /// Builds a graph, normalizing edge orientation and dropping duplicates.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("a graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!("edge ({u}, {v}) outside 0..{n}")));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("loop at vertex {u}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self::from_sorted(n, set.into_iter().collect()))
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n.max(1), Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let n = n.max(1);
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_sorted(n, edges)
    }

    /// Path `0 - 1 - … - (n-1)`.
    pub fn path(n: usize) -> Self {
        let n = n.max(1);
        Self::from_sorted(n, (1..n).map(|v| (v - 1, v)).collect())
    }

    /// Cycle on `n ≥ 3` vertices; `cycle(1) = K_1`, `cycle(2) = K_2`.
    pub fn cycle(n: usize) -> Self {
        if n < 3 {
            return Self::path(n);
        }
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle edges are in range")
    }

    /// The Petersen graph, labeled as the Kneser graph `K(5, 2)`.
    pub fn petersen() -> Self {
        Self::kneser(5, 2)
    }

    /// Kneser graph: `b`-subsets of `0..c` in lexicographic order, adjacent when disjoint.
    ///
    /// Expects `c ≥ b`; with no subsets the result degenerates to `K_1`.
    pub fn kneser(c: usize, b: usize) -> Self {
        let sets = subsets(c, b);
        let masks: Vec<u128> = sets.iter().map(|s| mask(s)).collect();
        let mut edges = Vec::new();
        for i in 0..masks.len() {
            for j in i + 1..masks.len() {
                if masks[i] & masks[j] == 0 {
                    edges.push((i, j));
                }
            }
        }
        Self::from_sorted(masks.len().max(1), edges)
    }

    /// `G(n, p)` driven by a 64-bit LCG.
    ///
    /// The state starts at `seed` and advances as
    /// `s ← s·6364136223846793005 + 1442695040888963407 (mod 2^64)` once per
    /// vertex pair `i < j`, visited in lexicographic order. The pair becomes
    /// an edge when `(s >> 11) / 2^53 < p`.
    pub fn random(n: usize, p: f64, seed: u64) -> Self {
        let n = n.max(1);
        let mut state = seed;
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                let u = (state >> 11) as f64 / (1u64 << 53) as f64;
                if u < p {
                    edges.push((i, j));
                }
            }
        }
        Self::from_sorted(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n || perm.iter().any(|&p| p >= self.n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidInput("relabeling is not a permutation".into()));
        }
        Self::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Product on `V(G) × V(H)`; the pair `(v, w)` becomes vertex `v·|H| + w`.
    pub fn product(&self, other: &ClassicalGraph, kind: ProductKind) -> Self {
        let (n1, n2) = (self.n, other.n);
        let mut edges = Vec::new();
        for x in 0..n1 * n2 {
            let (v, a) = (x / n2, x % n2);
            for y in x + 1..n1 * n2 {
                let (w, b) = (y / n2, y % n2);
                let gv = self.is_adjacent(v, w);
                let hv = other.is_adjacent(a, b);
                let cart = (v == w && hv) || (gv && a == b);
                let adjacent = match kind {
                    ProductKind::Cartesian => cart,
                    ProductKind::Categorical => gv && hv,
                    ProductKind::Lexicographic => gv || (v == w && hv),
                    ProductKind::Strong => cart || (gv && hv),
                };
                if adjacent {
                    edges.push((x, y));
                }
            }
        }
        Self::from_sorted(n1 * n2, edges)
    }

    /// DIMACS edge format, 1-indexed.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }

    pub fn from_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let mut it = line.split_whitespace();
            let bad = |what: &str| Error::Format(format!("line {}: {what}", lineno + 1));
            match it.next() {
                None | Some("c") => {}
                Some("p") => {
                    if header.is_some() {
                        return Err(bad("duplicate problem line"));
                    }
                    let fmt = it.next().ok_or_else(|| bad("missing format"))?;
                    if fmt != "edge" && fmt != "col" {
                        return Err(bad("expected 'p edge N M'"));
                    }
                    let n = parse_num(it.next(), &bad)?;
                    let m = parse_num(it.next(), &bad)?;
                    header = Some((n, m));
                }
                Some("e") => {
                    let (n, _) = header.ok_or_else(|| bad("edge before problem line"))?;
                    let u = parse_num(it.next(), &bad)?;
                    let v = parse_num(it.next(), &bad)?;
                    if u == 0 || v == 0 || u > n || v > n {
                        return Err(bad("vertex out of range"));
                    }
                    edges.push((u - 1, v - 1));
                }
                Some(_) => return Err(bad("unrecognized line")),
            }
        }
        let (n, _) = header.ok_or_else(|| Error::Format("missing 'p edge' line".into()))?;
        Self::new(n, edges)
    }
}

fn parse_num(tok: Option<&str>, bad: &dyn Fn(&str) -> Error) -> Result<usize> {
    tok.ok_or_else(|| bad("missing number"))?
        .parse()
        .map_err(|_| bad("not a number"))
}

/// All `b`-subsets of `0..c` in lexicographic order.
pub fn subsets(c: usize, b: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if b > c {
        return out;
    }
    let mut cur: Vec<usize> = (0..b).collect();
    loop {
        out.push(cur.clone());
        // advance the rightmost index that still has room
        let Some(i) = (0..b).rev().find(|&i| cur[i] < c - b + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..b {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

pub(crate) fn mask(set: &[usize]) -> u128 {
    set.iter().fold(0, |m, &a| m | (1u128 << a))
}

/// JSON edge-list document (0-indexed).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub(crate) struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&ClassicalGraph> for GraphJson {
    fn from(g: &ClassicalGraph) -> Self {
        Self {
            vertices: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for ClassicalGraph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        ClassicalGraph::new(j.vertices, j.edges.into_iter().map(|[u, v]| (u, v)))
    }
}
