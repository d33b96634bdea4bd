//! Loopless multigraphs, block decomposition and recognition of the
//! `K_n^t` / `C_n^t` block shapes.
//!
//! Vertices are opaque string identifiers kept in lexicographic order; every
//! vertex is addressed internally by its index in that order, so all
//! iteration orders (and therefore every derived certificate) are
//! deterministic. Parallel edges are not individually identified: the
//! canonical representation is one multiplicity per unordered pair.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("loop at vertex `{0}`")]
    Loop(String),
    #[error("edge {0}-{1} has multiplicity 0")]
    ZeroMultiplicity(String, String),
    #[error("graph is empty")]
    EmptyGraph,
    #[error("graph is disconnected ({0} components)")]
    DisconnectedGraph(usize),
    #[error("vertex set is not a block of the graph")]
    NotABlock,
    #[error("expected a simple graph, pair {0}-{1} has multiplicity {2}")]
    MultigraphInput(String, String, u32),
    #[error("multiplicity factor must be positive")]
    ZeroPower,
}

/// A loopless multigraph with lexicographically ordered vertex identifiers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Multigraph {
    names: Vec<String>,
    adj: Vec<BTreeMap<usize, u32>>,
}

impl Multigraph {
    /// Creates an edgeless graph on the given identifiers.
    pub fn new<I, S>(vertices: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertex(w[0].clone()));
        }
        let adj = vec![BTreeMap::new(); names.len()];
        Ok(Self { names, adj })
    }

    /// Creates a graph from vertices and `(u, v, multiplicity)` triples.
    /// Repeated pairs accumulate.
    pub fn with_edges<I, S, E, T>(vertices: I, edges: E) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = (T, T, u32)>,
        T: AsRef<str>,
    {
        let mut g = Self::new(vertices)?;
        for (u, v, m) in edges {
            g.add_edge(u.as_ref(), v.as_ref(), m)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: &str, v: &str, mult: u32) -> Result<(), GraphError> {
        let i = self.require(u)?;
        let j = self.require(v)?;
        if i == j {
            return Err(GraphError::Loop(u.to_string()));
        }
        if mult == 0 {
            return Err(GraphError::ZeroMultiplicity(u.to_string(), v.to_string()));
        }
        self.add_edge_idx(i, j, mult);
        Ok(())
    }

    pub(crate) fn add_edge_idx(&mut self, i: usize, j: usize, mult: u32) {
        debug_assert!(i != j && mult > 0);
        *self.adj[i].entry(j).or_insert(0) += mult;
        *self.adj[j].entry(i).or_insert(0) += mult;
    }

    fn require(&self, name: &str) -> Result<usize, GraphError> {
        self.index(name).ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Vertex identifiers in lexicographic order.
    pub fn vertices(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    /// Multiplicity of the pair `ij` (0 when not adjacent).
    pub fn mult(&self, i: usize, j: usize) -> u32 {
        self.adj[i].get(&j).copied().unwrap_or(0)
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.adj[i].values().sum()
    }

    /// Neighbors of `i` with multiplicities, in index order.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.adj[i].iter().map(|(&j, &m)| (j, m))
    }

    /// All adjacent pairs `(i, j, mult)` with `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(i, row)| {
            row.range(i + 1..).map(move |(&j, &m)| (i, j, m))
        })
    }

    pub fn pair_count(&self) -> usize {
        self.pairs().count()
    }

    /// Number of edges counted with multiplicity.
    pub fn total_multiplicity(&self) -> u32 {
        self.pairs().map(|(_, _, m)| m).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.pairs().all(|(_, _, m)| m == 1)
    }

    pub(crate) fn require_simple(&self) -> Result<(), GraphError> {
        match self.pairs().find(|&(_, _, m)| m > 1) {
            Some((i, j, m)) => Err(GraphError::MultigraphInput(
                self.names[i].clone(),
                self.names[j].clone(),
                m,
            )),
            None => Ok(()),
        }
    }

    /// Connected components as sorted index lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in self.adj[x].keys() {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.components().len() == 1
    }

    pub(crate) fn require_connected(&self) -> Result<(), GraphError> {
        if self.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        match self.components().len() {
            1 => Ok(()),
            k => Err(GraphError::DisconnectedGraph(k)),
        }
    }

    /// Sub-multigraph induced by the given vertex indices.
    pub fn induced(&self, keep: &[usize]) -> Multigraph {
        let set: BTreeSet<usize> = keep.iter().copied().collect();
        let mut g = Multigraph::new(set.iter().map(|&i| self.names[i].clone()))
            .expect("identifiers are already unique");
        for (i, j, m) in self.pairs() {
            if set.contains(&i) && set.contains(&j) {
                let a = g.index(&self.names[i]).unwrap();
                let b = g.index(&self.names[j]).unwrap();
                g.add_edge_idx(a, b, m);
            }
        }
        g
    }

    pub fn without_vertex(&self, i: usize) -> Multigraph {
        let keep: Vec<usize> = (0..self.vertex_count()).filter(|&x| x != i).collect();
        self.induced(&keep)
    }

    /// `G^t`: every multiplicity scaled by `t`.
    pub fn edge_power(&self, t: u32) -> Result<Multigraph, GraphError> {
        if t == 0 {
            return Err(GraphError::ZeroPower);
        }
        let mut g = self.clone();
        for row in &mut g.adj {
            for m in row.values_mut() {
                *m *= t;
            }
        }
        Ok(g)
    }

    /// Complete graph on `v1..vn` (identifiers zero-padded so that the
    /// lexicographic order matches the numeric one).
    pub fn complete(n: usize) -> Multigraph {
        let names = numbered_names(n);
        let mut g = Multigraph::new(names).unwrap();
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge_idx(i, j, 1);
            }
        }
        g
    }

    /// Cycle `v1 v2 ... vn v1` (a path for `n = 2`, a single vertex for `n = 1`).
    pub fn cycle(n: usize) -> Multigraph {
        let mut g = Multigraph::path(n);
        if n >= 3 {
            g.add_edge_idx(n - 1, 0, 1);
        }
        g
    }

    pub fn path(n: usize) -> Multigraph {
        let names = numbered_names(n);
        let mut g = Multigraph::new(names).unwrap();
        for i in 1..n {
            g.add_edge_idx(i - 1, i, 1);
        }
        g
    }
}

/// `v1..vn`, zero-padded to a common width.
pub fn numbered_names(n: usize) -> Vec<String> {
    let width = n.to_string().len();
    (1..=n).map(|i| format!("v{i:0width$}")).collect()
}

/// Identifier of the product vertex `(a, b)`.
pub fn product_name(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// Cartesian product `G1 □ G2` of two simple graphs. Vertex `(a, b)` is
/// named by [`product_name`].
pub fn cartesian_product(g1: &Multigraph, g2: &Multigraph) -> Result<Multigraph, GraphError> {
    g1.require_simple()?;
    g2.require_simple()?;
    let mut names = Vec::with_capacity(g1.vertex_count() * g2.vertex_count());
    for a in g1.vertices() {
        for b in g2.vertices() {
            names.push(product_name(a, b));
        }
    }
    let mut g = Multigraph::new(names)?;
    let idx = |g: &Multigraph, a: &str, b: &str| g.index(&product_name(a, b)).unwrap();
    for a in g1.vertices() {
        for (x, y, _) in g2.pairs() {
            let (i, j) = (idx(&g, a, g2.name(x)), idx(&g, a, g2.name(y)));
            g.add_edge_idx(i, j, 1);
        }
    }
    for (x, y, _) in g1.pairs() {
        for b in g2.vertices() {
            let (i, j) = (idx(&g, g1.name(x), b), idx(&g, g1.name(y), b));
            g.add_edge_idx(i, j, 1);
        }
    }
    Ok(g)
}

/// Biconnected components with their cut vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Vertex index sets, each sorted; ordered by smallest member, then
    /// lexicographically.
    pub blocks: Vec<Vec<usize>>,
    pub cut_vertices: Vec<usize>,
    /// Edges `(block index, cut vertex)` of the block-cut tree.
    pub block_tree: Vec<(usize, usize)>,
}

impl BlockDecomposition {
    /// Indices of the blocks containing vertex `v`.
    pub fn blocks_of(&self, v: usize) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.binary_search(&v).is_ok())
            .map(|(i, _)| i)
            .collect()
    }
}

/// Hopcroft–Tarjan over the underlying simple graph; works on any graph.
/// Isolated vertices belong to no block.
fn biconnected_components(g: &Multigraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let nbrs: Vec<Vec<usize>> = (0..n).map(|i| g.adj[i].keys().copied().collect()).collect();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out: Vec<Vec<usize>> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX || nbrs[root].is_empty() {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, parent, next neighbor position)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&(v, parent, pos)) = stack.last() {
            if pos < nbrs[v].len() {
                let w = nbrs[v][pos];
                stack.last_mut().unwrap().2 += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = BTreeSet::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            block.insert(a);
                            block.insert(b);
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        out.push(block.into_iter().collect());
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Block decomposition of a connected, nonempty multigraph. A graph with a
/// single vertex has no blocks.
pub fn blocks(g: &Multigraph) -> Result<BlockDecomposition, GraphError> {
    g.require_connected()?;
    let blocks = biconnected_components(g);
    let mut count = vec![0usize; g.vertex_count()];
    for b in &blocks {
        for &v in b {
            count[v] += 1;
        }
    }
    let cut_vertices: Vec<usize> = (0..g.vertex_count()).filter(|&v| count[v] >= 2).collect();
    let mut block_tree = Vec::new();
    for (bi, b) in blocks.iter().enumerate() {
        for &v in b {
            if count[v] >= 2 {
                block_tree.push((bi, v));
            }
        }
    }
    Ok(BlockDecomposition { blocks, cut_vertices, block_tree })
}

/// Shape of a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// `K_n^t`, `n >= 2`. Triangles always land here.
    CompletePower { n: u32, t: u32 },
    /// `C_n^t`, `n >= 4`.
    CyclePower { n: u32, t: u32 },
    Other,
}

/// Classifies the sub-multigraph induced by `block`, which must be one of
/// the blocks of `g`.
pub fn classify_block(g: &Multigraph, block: &[usize]) -> Result<BlockKind, GraphError> {
    let mut sorted = block.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if !biconnected_components(g).contains(&sorted) {
        return Err(GraphError::NotABlock);
    }
    Ok(classify_unchecked(g, &sorted))
}

pub(crate) fn classify_unchecked(g: &Multigraph, block: &[usize]) -> BlockKind {
    let n = block.len();
    let mut mults = Vec::new();
    for (a, &u) in block.iter().enumerate() {
        for &v in &block[a + 1..] {
            let m = g.mult(u, v);
            if m > 0 {
                mults.push(m);
            }
        }
    }
    let Some(&t) = mults.first() else {
        return BlockKind::Other;
    };
    if mults.iter().any(|&m| m != t) {
        return BlockKind::Other;
    }
    if mults.len() == n * (n - 1) / 2 {
        return BlockKind::CompletePower { n: n as u32, t };
    }
    let within = |u: usize| block.iter().filter(|&&v| g.mult(u, v) > 0).count();
    if n >= 4 && mults.len() == n && block.iter().all(|&u| within(u) == 2) {
        // a 2-regular block is a single cycle
        return BlockKind::CyclePower { n: n as u32, t };
    }
    BlockKind::Other
}

/// Vertices of a cycle block in traversal order: starting from the smallest
/// index, stepping first to the smaller of its two neighbors.
pub(crate) fn cycle_order(g: &Multigraph, block: &[usize]) -> Vec<usize> {
    let in_block = |v: usize| block.binary_search(&v).is_ok();
    let start = block[0];
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = g.neighbors(cur).map(|(v, _)| v).find(|&v| in_block(v) && v != prev);
        match next {
            Some(v) if v != start => {
                order.push(v);
                prev = cur;
                cur = v;
            }
            _ => break,
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(vs: &[&str], es: &[(&str, &str, u32)]) -> Multigraph {
        Multigraph::with_edges(vs.iter().copied(), es.iter().map(|&(u, v, m)| (u, v, m))).unwrap()
    }

    /// Articulation points by deleting each vertex and counting components.
    fn brute_cut_vertices(g: &Multigraph) -> Vec<usize> {
        let base = g.components().len();
        (0..g.vertex_count())
            .filter(|&v| g.without_vertex(v).components().len() > base)
            .collect()
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        let mut g = Multigraph::new(["a", "b"]).unwrap();
        assert_eq!(g.add_edge("a", "a", 1), Err(GraphError::Loop("a".into())));
        assert!(matches!(g.add_edge("a", "z", 1), Err(GraphError::UnknownVertex(_))));
        assert!(matches!(Multigraph::new(["a", "a"]), Err(GraphError::DuplicateVertex(_))));
        g.add_edge("b", "a", 2).unwrap();
        g.add_edge("a", "b", 1).unwrap();
        assert_eq!(g.mult(0, 1), 3);
        assert_eq!(g.degree(0), 3);
    }

    #[test]
    fn single_edge_is_one_block() {
        let g = graph(&["u", "v"], &[("u", "v", 1)]);
        let d = blocks(&g).unwrap();
        assert_eq!(d.blocks, vec![vec![0, 1]]);
        assert!(d.cut_vertices.is_empty());
    }

    #[test]
    fn path_blocks_are_bridges() {
        let g = graph(&["a", "b", "c"], &[("a", "b", 1), ("b", "c", 1)]);
        let d = blocks(&g).unwrap();
        assert_eq!(d.blocks, vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(d.cut_vertices, vec![1]);
        assert_eq!(d.block_tree, vec![(0, 1), (1, 1)]);
    }

    #[test]
    fn bowtie_has_one_cut_vertex() {
        let g = graph(
            &["a", "b", "c", "d", "v"],
            &[("a", "b", 1), ("a", "v", 1), ("b", "v", 1), ("c", "d", 1), ("c", "v", 1), ("d", "v", 1)],
        );
        let d = blocks(&g).unwrap();
        assert_eq!(d.blocks.len(), 2);
        assert!(d.blocks.iter().all(|b| b.len() == 3));
        assert_eq!(d.cut_vertices, brute_cut_vertices(&g));
        assert_eq!(d.cut_vertices, vec![4]);
    }

    #[test]
    fn blocks_errors() {
        assert_eq!(blocks(&Multigraph::default()), Err(GraphError::EmptyGraph));
        let g = graph(&["a", "b", "c"], &[("a", "b", 1)]);
        assert_eq!(blocks(&g), Err(GraphError::DisconnectedGraph(2)));
        let single = graph(&["a"], &[]);
        assert!(blocks(&single).unwrap().blocks.is_empty());
    }

    #[test]
    fn classify_shapes() {
        let k4 = Multigraph::complete(4);
        assert_eq!(classify_block(&k4, &[0, 1, 2, 3]).unwrap(), BlockKind::CompletePower { n: 4, t: 1 });
        let c5 = Multigraph::cycle(5).edge_power(2).unwrap();
        assert_eq!(classify_block(&c5, &[0, 1, 2, 3, 4]).unwrap(), BlockKind::CyclePower { n: 5, t: 2 });
        let mut uneven = Multigraph::complete(4);
        uneven.add_edge_idx(0, 1, 1);
        assert_eq!(classify_block(&uneven, &[0, 1, 2, 3]).unwrap(), BlockKind::Other);
        let tri = Multigraph::cycle(3).edge_power(3).unwrap();
        assert_eq!(classify_block(&tri, &[0, 1, 2]).unwrap(), BlockKind::CompletePower { n: 3, t: 3 });
        let p = Multigraph::path(3);
        assert_eq!(classify_block(&p, &[0, 1, 2]), Err(GraphError::NotABlock));
        // K_4 minus an edge
        let mut k4e = Multigraph::new(["a", "b", "c", "d"]).unwrap();
        for (u, v) in [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")] {
            k4e.add_edge(u, v, 1).unwrap();
        }
        assert_eq!(classify_block(&k4e, &[0, 1, 2, 3]).unwrap(), BlockKind::Other);
    }

    #[test]
    fn complete_powers_classify() {
        for n in 2..=5 {
            for t in 1..=3 {
                let g = Multigraph::complete(n).edge_power(t).unwrap();
                let all: Vec<usize> = (0..n).collect();
                assert_eq!(
                    classify_block(&g, &all).unwrap(),
                    BlockKind::CompletePower { n: n as u32, t }
                );
            }
        }
    }

    #[test]
    fn edge_power_scales() {
        let c4 = Multigraph::cycle(4);
        assert_eq!(c4.edge_power(1).unwrap(), c4);
        let k3 = Multigraph::complete(3).edge_power(2).unwrap();
        assert!(k3.pairs().all(|(_, _, m)| m == 2));
        let p = graph(&["a", "b", "c"], &[("a", "b", 2), ("b", "c", 1)]).edge_power(3).unwrap();
        assert_eq!((p.mult(0, 1), p.mult(1, 2)), (6, 3));
        assert_eq!(c4.edge_power(0), Err(GraphError::ZeroPower));
    }

    #[test]
    fn products() {
        let k2 = Multigraph::complete(2);
        let sq = cartesian_product(&k2, &k2).unwrap();
        assert_eq!(sq.vertex_count(), 4);
        assert_eq!(sq.pair_count(), 4);
        assert!((0..4).all(|v| sq.degree(v) == 2));
        assert!(sq.is_connected());

        // prism: enumerate both adjacency clauses directly
        let k3 = Multigraph::complete(3);
        let prism = cartesian_product(&k3, &k2).unwrap();
        let mut expected = 0;
        for a in 0..3 {
            for b in 0..2 {
                for c in 0..3 {
                    for d in 0..2 {
                        let adj = (a == c && b != d) || (a != c && b == d);
                        if adj && (a, b) < (c, d) {
                            expected += 1;
                        }
                    }
                }
            }
        }
        assert_eq!((prism.vertex_count(), prism.pair_count()), (6, expected));
        assert_eq!(expected, 9);

        let k1 = Multigraph::complete(1);
        let c4 = Multigraph::cycle(4);
        let same = cartesian_product(&c4, &k1).unwrap();
        assert_eq!(same.pair_count(), 4);
        assert!(matches!(
            cartesian_product(&c4.edge_power(2).unwrap(), &k1),
            Err(GraphError::MultigraphInput(..))
        ));
    }

    #[test]
    fn cycle_order_walks_cycle() {
        let g = graph(
            &["a", "b", "c", "d", "e"],
            &[("a", "c", 1), ("c", "e", 1), ("e", "b", 1), ("b", "d", 1), ("d", "a", 1)],
        );
        let order = cycle_order(&g, &[0, 1, 2, 3, 4]);
        let names: Vec<&str> = order.iter().map(|&i| g.name(i)).collect();
        assert_eq!(names, ["a", "c", "e", "b", "d"]);
    }
}
