//! Signed multigraphs and their reduction to DP-coloring.
//!
//! A signed `k`-coloring uses the palette `N_k` and requires
//! `f(u) != sigma(e) f(v)` on every edge instance `e = uv`. Each positive
//! instance forbids the pairs `(i, i)`, each negative one the pairs
//! `(i, -i)`; their union over a vertex pair is a valid matching set, so
//! signed coloring is a special case of DP-coloring.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::cover::{Color, DPInstance, InstanceError, ListAssignment, MatchingAssignment};
use crate::multigraph::{self, BlockKind, GraphError, Multigraph};
use crate::solver::{self, SolveResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignedError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("color {color} of {vertex} is not in N_{k}")]
    ColorOutsideNk { vertex: String, color: Color, k: u32 },
    #[error("pair {u}-{v}: {got} signs for multiplicity {mult}")]
    SignCount { u: String, v: String, got: usize, mult: u32 },
    #[error("sign {0} is not +1 or -1")]
    BadSign(i64),
    #[error("expected {expected} lists, got {got}")]
    ListCount { expected: usize, got: usize },
    #[error("|L({vertex})| = {size} is below degree {degree}")]
    NotDegreeList { vertex: String, size: usize, degree: u32 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// The symmetric palette `N_k`: `{0, ±1, .., ±r}` for `k = 2r + 1` and
/// `{±1, .., ±r}` for `k = 2r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NkSet {
    pub k: u32,
    pub colors: BTreeSet<Color>,
}

pub fn n_k(k: u32) -> Result<NkSet, SignedError> {
    if k == 0 {
        return Err(SignedError::ZeroK);
    }
    let r = (k / 2) as Color;
    let mut colors: BTreeSet<Color> = (1..=r).flat_map(|i| [i, -i]).collect();
    if k % 2 == 1 {
        colors.insert(0);
    }
    Ok(NkSet { k, colors })
}

/// A multigraph with one sign per parallel edge instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedGraph {
    graph: Multigraph,
    signs: BTreeMap<(usize, usize), Vec<i8>>,
}

impl SignedGraph {
    /// `signs` maps each adjacent pair (either orientation) to one sign per
    /// instance; pairs left out are all positive.
    pub fn new(graph: Multigraph, signs: BTreeMap<(String, String), Vec<i8>>) -> Result<Self, SignedError> {
        let mut out = BTreeMap::new();
        for (u, v, mu) in graph.pairs() {
            out.insert((u, v), vec![1i8; mu as usize]);
        }
        for ((a, b), s) in signs {
            let ia = graph.index(&a).ok_or_else(|| GraphError::UnknownVertex(a.clone()))?;
            let ib = graph.index(&b).ok_or_else(|| GraphError::UnknownVertex(b.clone()))?;
            let key = (ia.min(ib), ia.max(ib));
            let mult = graph.mult(ia, ib);
            if s.len() != mult as usize {
                return Err(SignedError::SignCount { u: a, v: b, got: s.len(), mult });
            }
            if let Some(&bad) = s.iter().find(|&&x| x != 1 && x != -1) {
                return Err(SignedError::BadSign(bad as i64));
            }
            out.insert(key, s);
        }
        Ok(SignedGraph { graph, signs: out })
    }

    pub fn all_positive(graph: Multigraph) -> Self {
        SignedGraph::new(graph, BTreeMap::new()).unwrap()
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    /// Signs of the instances between `u` and `v` (empty if non-adjacent).
    pub fn signs(&self, u: usize, v: usize) -> &[i8] {
        self.signs.get(&(u.min(v), u.max(v))).map(|s| s.as_slice()).unwrap_or(&[])
    }

    pub fn set_signs(&mut self, u: usize, v: usize, signs: Vec<i8>) -> Result<(), SignedError> {
        let mult = self.graph.mult(u, v);
        if signs.len() != mult as usize {
            return Err(SignedError::SignCount {
                u: self.graph.name(u).into(),
                v: self.graph.name(v).into(),
                got: signs.len(),
                mult,
            });
        }
        self.signs.insert((u.min(v), u.max(v)), signs);
        Ok(())
    }

    pub fn iter_signs(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<i8>)> {
        self.signs.iter()
    }

    /// Negates every sign at `v`.
    pub fn switch(&self, v: usize) -> SignedGraph {
        let mut out = self.clone();
        for (&(a, b), s) in out.signs.iter_mut() {
            if a == v || b == v {
                s.iter_mut().for_each(|x| *x = -*x);
            }
        }
        out
    }

    /// Switches at every vertex in `set`.
    pub fn switch_set(&self, set: &[usize]) -> SignedGraph {
        set.iter().fold(self.clone(), |s, &v| s.switch(v))
    }

    /// The signed graph induced on `keep` (indices into this graph).
    pub fn induced(&self, keep: &[usize]) -> SignedGraph {
        let graph = self.graph.induced(keep);
        let mut signs = BTreeMap::new();
        for (a, b, _) in graph.pairs() {
            let (u, v) = (keep[a], keep[b]);
            signs.insert((a, b), self.signs(u, v).to_vec());
        }
        SignedGraph { graph, signs }
    }

    /// Switching potentials along a BFS forest, or `None` when some cycle
    /// (including a pair carrying both signs) has negative product.
    fn potentials(&self) -> Option<Vec<i8>> {
        let n = self.graph.vertex_count();
        let mut pot = vec![0i8; n];
        for root in 0..n {
            if pot[root] != 0 {
                continue;
            }
            pot[root] = 1;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for (v, _) in self.graph.neighbors(u) {
                    let s = self.signs(u, v);
                    if s.iter().any(|&x| x != s[0]) {
                        return None;
                    }
                    let want = pot[u] * s[0];
                    if pot[v] == 0 {
                        pot[v] = want;
                        queue.push_back(v);
                    } else if pot[v] != want {
                        return None;
                    }
                }
            }
        }
        Some(pot)
    }

    /// Whether some switching makes every sign positive.
    pub fn is_balanced(&self) -> Result<bool, SignedError> {
        self.graph.require_connected()?;
        Ok(self.potentials().is_some())
    }

    /// A switching that makes every sign positive, if one exists.
    pub fn balancing_set(&self) -> Option<Vec<usize>> {
        self.potentials().map(|p| (0..p.len()).filter(|&v| p[v] < 0).collect())
    }

    /// Whether the graph is some `H^2` with each doubled pair signed `{+1, -1}`.
    pub fn is_full(&self) -> bool {
        self.graph.pair_count() > 0
            && self.graph.pairs().all(|(u, v, mu)| {
                let s = self.signs(u, v);
                mu == 2 && s.contains(&1) && s.contains(&-1)
            })
    }
}

/// The DP-instance of a signed list-coloring problem. Lists are indexed
/// like the graph's vertices and must lie inside `N_k`.
pub fn signed_to_dp(s: &SignedGraph, lists: &ListAssignment, k: u32) -> Result<DPInstance, SignedError> {
    let nk = n_k(k)?;
    let g = s.graph();
    if lists.len() != g.vertex_count() {
        return Err(SignedError::ListCount { expected: g.vertex_count(), got: lists.len() });
    }
    for u in 0..g.vertex_count() {
        if let Some(&c) = lists.get(u).iter().find(|c| !nk.colors.contains(c)) {
            return Err(SignedError::ColorOutsideNk { vertex: g.name(u).into(), color: c, k });
        }
    }
    let mut m = MatchingAssignment::new();
    for (u, v, _) in g.pairs() {
        for &sign in s.signs(u, v) {
            for &i in lists.get(u) {
                let j = sign as Color * i;
                if lists.get(v).contains(&j) {
                    m.insert(u, i, v, j);
                }
            }
        }
    }
    Ok(DPInstance::new(g.clone(), lists.clone(), m)?)
}

/// Signed `k`-coloring via the DP reduction with all lists `N_k`.
pub fn solve_signed(s: &SignedGraph, k: u32) -> Result<SolveResult, SignedError> {
    let nk = n_k(k)?;
    let lists = ListAssignment::uniform(s.graph().vertex_count(), nk.colors);
    let inst = signed_to_dp(s, &lists, k)?;
    Ok(solver::solve_unchecked(&inst))
}

/// Whether every block, up to switching, is a balanced `K_n`, a balanced
/// odd cycle, an unbalanced even cycle, a full `K_n^2` or a full odd `C_n^2`.
///
/// Only the block shapes are inspected; the lists enter through the
/// degree-list precondition. Exact decisions for given lists go through
/// [`signed_to_dp`] and [`crate::obstruction::decide`].
pub fn ss_block_check(s: &SignedGraph, lists: &ListAssignment) -> Result<bool, SignedError> {
    let g = s.graph();
    g.require_connected()?;
    if lists.len() != g.vertex_count() {
        return Err(SignedError::ListCount { expected: g.vertex_count(), got: lists.len() });
    }
    if let Some(u) = (0..g.vertex_count()).find(|&u| lists.get(u).len() < g.degree(u) as usize) {
        return Err(SignedError::NotDegreeList { vertex: g.name(u).into(), size: lists.get(u).len(), degree: g.degree(u) });
    }
    let dec = multigraph::blocks(g)?;
    Ok(dec.blocks.iter().all(|b| {
        let blk = s.induced(b);
        // tree-positive canonical form: switch so that a BFS tree is positive
        let canon = canonical_switch(&blk);
        let balanced = canon.potentials().is_some();
        match multigraph::classify_unchecked(blk.graph(), &(0..b.len()).collect::<Vec<_>>()) {
            BlockKind::CompletePower { t: 1, .. } => balanced,
            BlockKind::CompletePower { t: 2, .. } => canon.is_full(),
            BlockKind::CyclePower { n, t: 1 } => balanced == (n % 2 == 1),
            BlockKind::CyclePower { n, t: 2 } => n % 2 == 1 && canon.is_full(),
            _ => false,
        }
    }))
}

/// Switches so that the first instance on every BFS tree edge is positive.
fn canonical_switch(s: &SignedGraph) -> SignedGraph {
    let g = s.graph();
    let n = g.vertex_count();
    let mut out = s.clone();
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for (v, _) in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    if out.signs(u, v)[0] < 0 {
                        out = out.switch(v);
                    }
                    queue.push_back(v);
                }
            }
        }
    }
    out
}

/// Brute-force signed list-coloring, for cross-checks on tiny graphs.
pub fn brute_force_signed(s: &SignedGraph, lists: &ListAssignment) -> Option<Vec<Color>> {
    let g = s.graph();
    let n = g.vertex_count();
    let opts: Vec<Vec<Color>> = lists.iter().map(|l| l.iter().copied().collect()).collect();
    let mut f = vec![0; n];
    fn rec(s: &SignedGraph, opts: &[Vec<Color>], f: &mut Vec<Color>, i: usize) -> bool {
        if i == opts.len() {
            return true;
        }
        for &c in &opts[i] {
            f[i] = c;
            let ok = (0..i).all(|j| s.signs(i, j).iter().all(|&sg| f[j] != sg as Color * c));
            if ok && rec(s, opts, f, i + 1) {
                return true;
            }
        }
        false
    }
    rec(s, &opts, &mut f, 0).then_some(f)
}
