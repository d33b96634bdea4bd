//! List assignments, matching assignments and the cover graph they induce.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::multigraph::{GraphError, Multigraph};

/// A color. Colors carry no meaning across vertices; only matchings relate
/// the colors of adjacent vertices.
pub type Color = i64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("invalid instance: {}", join_violations(.0))]
    InvalidInstance(Vec<Violation>),
    #[error("expected {expected} lists, got {got}")]
    ListCountMismatch { expected: usize, got: usize },
    #[error("color {color} is not in the list of `{vertex}`")]
    ColorNotInList { vertex: String, color: Color },
    #[error("unknown vertex `{0}`")]
    VertexNotFound(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// One failed consistency condition of a [`DPInstance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A color at `vertex` is matched more often than the pair multiplicity.
    DegreeBound { u: String, v: String, vertex: String, color: Color, degree: usize, mult: u32 },
    /// A matched color is missing from the list of `vertex`.
    ColorNotInList { u: String, v: String, vertex: String, color: Color },
    /// Pairs given between non-adjacent vertices.
    NonEdgePair { u: String, v: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DegreeBound { u, v, vertex, color, degree, mult } => write!(
                f,
                "pair {u}-{v}: color ({vertex},{color}) has degree {degree} > multiplicity {mult}"
            ),
            Violation::ColorNotInList { u, v, vertex, color } => {
                write!(f, "pair {u}-{v}: color {color} not in list of {vertex}")
            }
            Violation::NonEdgePair { u, v } => write!(f, "pair {u}-{v}: matching on a non-edge"),
        }
    }
}

/// Per-vertex color lists, indexed like the vertices of the graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ListAssignment(Vec<BTreeSet<Color>>);

impl ListAssignment {
    pub fn new(lists: Vec<BTreeSet<Color>>) -> Self {
        Self(lists)
    }

    /// The same list at each of `n` vertices.
    pub fn uniform(n: usize, colors: impl IntoIterator<Item = Color>) -> Self {
        let list: BTreeSet<Color> = colors.into_iter().collect();
        Self(vec![list; n])
    }

    /// `L(u) = [d(u)]` for every vertex.
    pub fn degree_lists(g: &Multigraph) -> Self {
        Self((0..g.vertex_count()).map(|u| (1..=g.degree(u) as Color).collect()).collect())
    }

    pub fn get(&self, u: usize) -> &BTreeSet<Color> {
        &self.0[u]
    }

    pub fn get_mut(&mut self, u: usize) -> &mut BTreeSet<Color> {
        &mut self.0[u]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &BTreeSet<Color>> {
        self.0.iter()
    }

    pub fn total_size(&self) -> usize {
        self.0.iter().map(BTreeSet::len).sum()
    }
}

/// Color pairs per vertex pair. Keys are `(i, j)` with `i < j` and each pair
/// is stored as `(color at i, color at j)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MatchingAssignment(BTreeMap<(usize, usize), BTreeSet<(Color, Color)>>);

impl MatchingAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds the cover edge `(u, cu)(v, cv)`.
    pub fn insert(&mut self, u: usize, cu: Color, v: usize, cv: Color) {
        assert_ne!(u, v, "matching pairs join distinct vertices");
        let (key, pair) = if u < v { ((u, v), (cu, cv)) } else { ((v, u), (cv, cu)) };
        self.0.entry(key).or_default().insert(pair);
    }

    pub fn remove(&mut self, u: usize, cu: Color, v: usize, cv: Color) -> bool {
        let (key, pair) = if u < v { ((u, v), (cu, cv)) } else { ((v, u), (cv, cu)) };
        let Some(set) = self.0.get_mut(&key) else { return false };
        let removed = set.remove(&pair);
        if set.is_empty() {
            self.0.remove(&key);
        }
        removed
    }

    pub fn contains(&self, u: usize, cu: Color, v: usize, cv: Color) -> bool {
        let (key, pair) = if u < v { ((u, v), (cu, cv)) } else { ((v, u), (cv, cu)) };
        self.0.get(&key).is_some_and(|s| s.contains(&pair))
    }

    /// Pairs of `uv` oriented as `(color at u, color at v)`.
    pub fn pairs(&self, u: usize, v: usize) -> Vec<(Color, Color)> {
        if u < v {
            self.0.get(&(u, v)).map(|s| s.iter().copied().collect()).unwrap_or_default()
        } else {
            self.0
                .get(&(v, u))
                .map(|s| s.iter().map(|&(a, b)| (b, a)).collect())
                .unwrap_or_default()
        }
    }

    /// Colors of `v` matched to `(u, c)`.
    pub fn matched(&self, u: usize, c: Color, v: usize) -> BTreeSet<Color> {
        self.pairs(u, v).into_iter().filter(|&(a, _)| a == c).map(|(_, b)| b).collect()
    }

    /// Replaces all pairs of `uv` (oriented as `(color at u, color at v)`).
    pub fn set_pairs(&mut self, u: usize, v: usize, pairs: impl IntoIterator<Item = (Color, Color)>) {
        let key = (u.min(v), u.max(v));
        self.0.remove(&key);
        for (a, b) in pairs {
            self.insert(u, a, v, b);
        }
    }

    /// Stored vertex pairs `(i, j)` with `i < j` and their color pairs.
    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &BTreeSet<(Color, Color)>)> {
        self.0.iter()
    }

    pub fn pair_total(&self) -> usize {
        self.0.values().map(BTreeSet::len).sum()
    }
}

/// A graph with a list assignment and a matching assignment over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DPInstance {
    graph: Multigraph,
    lists: ListAssignment,
    matching: MatchingAssignment,
}

impl DPInstance {
    /// Assembles an instance. Only the list count is checked here; use
    /// [`DPInstance::validate`] for the matching conditions.
    pub fn new(
        graph: Multigraph,
        lists: ListAssignment,
        matching: MatchingAssignment,
    ) -> Result<Self, InstanceError> {
        if lists.len() != graph.vertex_count() {
            return Err(InstanceError::ListCountMismatch {
                expected: graph.vertex_count(),
                got: lists.len(),
            });
        }
        Ok(Self { graph, lists, matching })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn lists(&self) -> &ListAssignment {
        &self.lists
    }

    pub fn matching(&self) -> &MatchingAssignment {
        &self.matching
    }

    pub fn list(&self, u: usize) -> &BTreeSet<Color> {
        self.lists.get(u)
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.graph.index(name)
    }

    pub fn with_matching(&self, matching: MatchingAssignment) -> DPInstance {
        DPInstance { graph: self.graph.clone(), lists: self.lists.clone(), matching }
    }

    /// Whether `(u, cu)` and `(v, cv)` are adjacent in the cover.
    pub fn conflicts(&self, u: usize, cu: Color, v: usize, cv: Color) -> bool {
        if u == v {
            cu != cv
        } else {
            self.matching.contains(u, cu, v, cv)
        }
    }

    /// All violated list/matching conditions; empty iff the instance is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let g = &self.graph;
        for (&(i, j), set) in self.matching.iter() {
            let (u, v) = (g.name(i).to_string(), g.name(j).to_string());
            let mult = g.mult(i, j);
            if mult == 0 {
                out.push(Violation::NonEdgePair { u, v });
                continue;
            }
            let mut deg_i: BTreeMap<Color, usize> = BTreeMap::new();
            let mut deg_j: BTreeMap<Color, usize> = BTreeMap::new();
            for &(a, b) in set {
                *deg_i.entry(a).or_default() += 1;
                *deg_j.entry(b).or_default() += 1;
            }
            for (side, degs) in [(i, &deg_i), (j, &deg_j)] {
                for (&color, &degree) in degs {
                    let vertex = g.name(side).to_string();
                    if !self.lists.get(side).contains(&color) {
                        out.push(Violation::ColorNotInList {
                            u: u.clone(),
                            v: v.clone(),
                            vertex: vertex.clone(),
                            color,
                        });
                    }
                    if degree > mult as usize {
                        out.push(Violation::DegreeBound {
                            u: u.clone(),
                            v: v.clone(),
                            vertex,
                            color,
                            degree,
                            mult,
                        });
                    }
                }
            }
        }
        out
    }

    pub(crate) fn require_valid(&self) -> Result<(), InstanceError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(InstanceError::InvalidInstance(v))
        }
    }

    /// `|L(u)| >= d(u)` everywhere.
    pub fn is_degree_list(&self) -> bool {
        (0..self.vertex_count()).all(|u| self.list(u).len() >= self.graph.degree(u) as usize)
    }

    /// `|L(u)| = d(u)` everywhere.
    pub fn is_exact_degree_list(&self) -> bool {
        (0..self.vertex_count()).all(|u| self.list(u).len() == self.graph.degree(u) as usize)
    }

    /// Sub-instance induced by the given vertices.
    pub fn induced(&self, keep: &[usize]) -> DPInstance {
        let graph = self.graph.induced(keep);
        let old: Vec<usize> = graph.vertices().iter().map(|n| self.graph.index(n).unwrap()).collect();
        let lists = ListAssignment(old.iter().map(|&o| self.list(o).clone()).collect());
        let mut matching = MatchingAssignment::new();
        for (a, &oa) in old.iter().enumerate() {
            for (b, &ob) in old.iter().enumerate().skip(a + 1) {
                for (ca, cb) in self.matching.pairs(oa, ob) {
                    matching.insert(a, ca, b, cb);
                }
            }
        }
        DPInstance { graph, lists, matching }
    }

    /// Sub-instances on the connected components.
    pub fn components(&self) -> Vec<DPInstance> {
        self.graph.components().iter().map(|c| self.induced(c)).collect()
    }

    /// The instance on `G - u` with `L(v)` reduced by the colors matched to
    /// `(u, c)` and the matching restricted to surviving colors.
    pub fn restrict(&self, u: &str, c: Color) -> Result<DPInstance, InstanceError> {
        let ui = self.index(u).ok_or_else(|| InstanceError::VertexNotFound(u.to_string()))?;
        if !self.list(ui).contains(&c) {
            return Err(InstanceError::ColorNotInList { vertex: u.to_string(), color: c });
        }
        Ok(self.restrict_idx(ui, c))
    }

    pub(crate) fn restrict_idx(&self, ui: usize, c: Color) -> DPInstance {
        let mut lists = self.lists.clone();
        for (v, _) in self.graph.neighbors(ui) {
            for lost in self.matching.matched(ui, c, v) {
                lists.get_mut(v).remove(&lost);
            }
        }
        let keep: Vec<usize> = (0..self.vertex_count()).filter(|&x| x != ui).collect();
        let graph = self.graph.induced(&keep);
        let mut matching = MatchingAssignment::new();
        for (&(i, j), set) in self.matching.iter() {
            if i == ui || j == ui {
                continue;
            }
            let (ni, nj) = (i - usize::from(i > ui), j - usize::from(j > ui));
            for &(a, b) in set {
                if lists.get(i).contains(&a) && lists.get(j).contains(&b) {
                    matching.insert(ni, a, nj, b);
                }
            }
        }
        let mut lists = lists.0;
        lists.remove(ui);
        DPInstance { graph, lists: ListAssignment(lists), matching }
    }

    /// Identity matchings on shared colors: the list-coloring instance.
    pub fn from_list_instance(g: &Multigraph, lists: ListAssignment) -> Result<DPInstance, InstanceError> {
        g.require_simple()?;
        let mut matching = MatchingAssignment::new();
        for (i, j, _) in g.pairs() {
            for &c in lists.get(i).intersection(lists.get(j)) {
                matching.insert(i, c, j, c);
            }
        }
        DPInstance::new(g.clone(), lists, matching)
    }

    /// Lists `[k]` everywhere and identity matchings: ordinary `k`-coloring.
    /// Parallel edges share the identity pair set.
    pub fn from_k_coloring(g: &Multigraph, k: u32) -> DPInstance {
        let lists = ListAssignment::uniform(g.vertex_count(), 1..=k as Color);
        let mut matching = MatchingAssignment::new();
        for (i, j, _) in g.pairs() {
            for c in 1..=k as Color {
                matching.insert(i, c, j, c);
            }
        }
        DPInstance { graph: g.clone(), lists, matching }
    }

    /// Cover graph of the instance.
    pub fn build_cover(&self) -> Result<Cover, InstanceError> {
        self.require_valid()?;
        Ok(Cover::from_instance(self))
    }
}

/// A choice of one color per vertex, keyed by vertex identifier.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Transversal(BTreeMap<String, Color>);

impl Transversal {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, vertex: impl Into<String>, color: Color) {
        self.0.insert(vertex.into(), color);
    }

    pub fn get(&self, vertex: &str) -> Option<Color> {
        self.0.get(vertex).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Color)> {
        self.0.iter()
    }

    pub fn as_map(&self) -> &BTreeMap<String, Color> {
        &self.0
    }

    pub fn extend(&mut self, other: &Transversal) {
        self.0.extend(other.0.iter().map(|(k, &v)| (k.clone(), v)));
    }

    /// Total on `V(G)`, inside the lists, and pairwise non-conflicting.
    pub fn is_valid_for(&self, inst: &DPInstance) -> bool {
        let g = inst.graph();
        if self.0.len() != g.vertex_count() {
            return false;
        }
        let mut picks = Vec::with_capacity(g.vertex_count());
        for u in 0..g.vertex_count() {
            match self.get(g.name(u)) {
                Some(c) if inst.list(u).contains(&c) => picks.push(c),
                _ => return false,
            }
        }
        g.pairs().all(|(i, j, _)| !inst.matching().contains(i, picks[i], j, picks[j]))
    }
}

impl FromIterator<(String, Color)> for Transversal {
    fn from_iter<I: IntoIterator<Item = (String, Color)>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// The cover graph on nodes `(vertex, color)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    names: Vec<String>,
    nodes: Vec<(usize, Color)>,
    index: HashMap<(usize, Color), usize>,
    adj: Vec<BTreeSet<usize>>,
}

impl Cover {
    fn from_instance(inst: &DPInstance) -> Cover {
        let g = inst.graph();
        let mut nodes = Vec::with_capacity(inst.lists().total_size());
        for u in 0..g.vertex_count() {
            nodes.extend(inst.list(u).iter().map(|&c| (u, c)));
        }
        let index: HashMap<(usize, Color), usize> =
            nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let mut adj = vec![BTreeSet::new(); nodes.len()];
        let mut start = 0;
        for u in 0..g.vertex_count() {
            let end = start + inst.list(u).len();
            for a in start..end {
                for b in start..end {
                    if a != b {
                        adj[a].insert(b);
                    }
                }
            }
            start = end;
        }
        for (&(i, j), set) in inst.matching().iter() {
            for &(a, b) in set {
                let (x, y) = (index[&(i, a)], index[&(j, b)]);
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        Cover { names: g.vertices().to_vec(), nodes, index, adj }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Nodes as `(vertex index, color)`, grouped by vertex.
    pub fn nodes(&self) -> &[(usize, Color)] {
        &self.nodes
    }

    pub fn node_index(&self, vertex: usize, color: Color) -> Option<usize> {
        self.index.get(&(vertex, color)).copied()
    }

    pub fn has_edge(&self, a: (usize, Color), b: (usize, Color)) -> bool {
        match (self.node_index(a.0, a.1), self.node_index(b.0, b.1)) {
            (Some(x), Some(y)) => self.adj[x].contains(&y),
            _ => false,
        }
    }

    pub fn neighbors(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[node].iter().copied()
    }

    /// Edges as node-index pairs `(a, b)` with `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, row) in self.adj.iter().enumerate() {
            out.extend(row.range(a + 1..).map(|&b| (a, b)));
        }
        out
    }

    /// Whether the transversal is an independent set with one node per vertex.
    pub fn is_independent_transversal(&self, picks: &Transversal) -> bool {
        if picks.len() != self.names.len() {
            return false;
        }
        let mut chosen = Vec::with_capacity(picks.len());
        for (u, name) in self.names.iter().enumerate() {
            match picks.get(name).and_then(|c| self.node_index(u, c)) {
                Some(x) => chosen.push(x),
                None => return false,
            }
        }
        chosen.iter().all(|x| chosen.iter().all(|y| !self.adj[*x].contains(y)))
    }

    /// Graphviz rendering with nodes named `u:c`; the per-vertex cliques are
    /// drawn only when `with_cliques` is set.
    pub fn to_dot(&self, with_cliques: bool) -> String {
        let label = |x: usize| {
            let (u, c) = self.nodes[x];
            format!("\"{}:{}\"", self.names[u], c)
        };
        let mut s = String::from("graph cover {\n");
        for x in 0..self.nodes.len() {
            s.push_str(&format!("  {};\n", label(x)));
        }
        for (a, b) in self.edges() {
            if !with_cliques && self.nodes[a].0 == self.nodes[b].0 {
                continue;
            }
            s.push_str(&format!("  {} -- {};\n", label(a), label(b)));
        }
        s.push_str("}\n");
        s
    }
}
