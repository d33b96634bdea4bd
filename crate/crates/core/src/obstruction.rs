//! Obstruction patterns and certificates for degree-list instances.
//!
//! A connected multigraph with a degree-list assignment has no coloring
//! exactly when every block is `K_n^t` or `C_n^t`, the lists split into
//! per-block parts of size `t(n-1)` (complete) or `2t` (cycle), and each
//! block's parts induce a fixed pattern in the cover: `H(n,t)` for complete
//! blocks, the `t`-fat ladder for odd cycles and the `t`-fat Möbius ladder
//! for even cycles. [`ObstructionCertificate`] records the partition and
//! the index maps onto the pattern, [`verify_certificate`] checks one, and
//! [`find_certificate`] constructs one whenever it exists.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::{Color, DPInstance, InstanceError, Transversal};
use crate::multigraph::{self, BlockKind, GraphError, Multigraph};
use crate::solver::{self, SolveResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("not a degree-list assignment: |L({vertex})| = {size} < degree {degree}; use solve instead")]
    NotDegreeList { vertex: String, size: usize, degree: u32 },
    #[error("invalid pattern parameters: {0}")]
    BadPattern(String),
    #[error("constructive coloring failed on a certificate-free instance: {0}")]
    Inconsistent(String),
}

/// The three obstruction patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternKind {
    /// `H(n,t)`: nodes `(i, j, k)`, `i in [n]`, `j in [n-1]`, `k in [t]`,
    /// adjacent iff `i = i'` or `j = j'`.
    Hnt,
    /// Nodes `(i, j, k)`, `j in {1,2}`; adjacent iff `i = i'`, or
    /// `i' = i + 1 (mod n)` and `j = j'`.
    FatLadder,
    /// As the ladder, except that the pair `(n, 1)` joins `j != j'`.
    FatMobius,
}

/// A pattern graph with its `(i, j, k)` node labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternGraph {
    pub kind: PatternKind,
    pub n: u32,
    pub t: u32,
}

pub fn make_pattern(kind: PatternKind, n: u32, t: u32) -> Result<PatternGraph, ObstructionError> {
    let min_n = match kind {
        PatternKind::Hnt => 2,
        PatternKind::FatLadder | PatternKind::FatMobius => 3,
    };
    if n < min_n || t == 0 {
        return Err(ObstructionError::BadPattern(format!("{kind:?} needs n >= {min_n}, t >= 1; got n={n}, t={t}")));
    }
    Ok(PatternGraph { kind, n, t })
}

impl PatternGraph {
    /// Number of `j` labels.
    pub fn classes(&self) -> u32 {
        match self.kind {
            PatternKind::Hnt => self.n - 1,
            _ => 2,
        }
    }

    /// Nodes in lexicographic `(i, j, k)` order, all indices 1-based.
    pub fn nodes(&self) -> Vec<(u32, u32, u32)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in 1..=self.classes() {
                for k in 1..=self.t {
                    out.push((i, j, k));
                }
            }
        }
        out
    }

    pub fn adjacent(&self, a: (u32, u32, u32), b: (u32, u32, u32)) -> bool {
        if a == b {
            return false;
        }
        let ((i, j, _), (i2, j2, _)) = (a, b);
        if i == i2 {
            return true;
        }
        let n = self.n;
        let next = |x: u32| x % n + 1;
        match self.kind {
            PatternKind::Hnt => j == j2,
            PatternKind::FatLadder => (next(i) == i2 || next(i2) == i) && j == j2,
            PatternKind::FatMobius => {
                let wrap = (i == n && i2 == 1) || (i2 == n && i == 1);
                if wrap {
                    j != j2
                } else {
                    i.abs_diff(i2) == 1 && j == j2
                }
            }
        }
    }

    /// Edges as index pairs into [`PatternGraph::nodes`], `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let nodes = self.nodes();
        let mut out = Vec::new();
        for a in 0..nodes.len() {
            for b in a + 1..nodes.len() {
                if self.adjacent(nodes[a], nodes[b]) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// The pattern as a simple graph with vertices named `i,j,k`.
    pub fn to_graph(&self) -> Multigraph {
        let nodes = self.nodes();
        let name = |(i, j, k): (u32, u32, u32)| format!("{i},{j},{k}");
        let mut g = Multigraph::new(nodes.iter().map(|&x| name(x))).unwrap();
        for (a, b) in self.edges() {
            g.add_edge(&name(nodes[a]), &name(nodes[b]), 1).unwrap();
        }
        g
    }
}

/// Block shape as recorded in a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertKind {
    Knt,
    Cnt,
}

/// One block of a certificate: its shape, the row index `i_u` of each
/// vertex and the `(j, k)` label of each color in `L_B(u)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCertificate {
    pub kind: CertKind,
    pub n: u32,
    pub t: u32,
    pub i_map: BTreeMap<String, u32>,
    pub labels: BTreeMap<String, BTreeMap<Color, (u32, u32)>>,
}

impl BlockCertificate {
    /// The pattern this block must induce.
    pub fn pattern(&self) -> PatternKind {
        match self.kind {
            CertKind::Knt => PatternKind::Hnt,
            CertKind::Cnt if self.n % 2 == 1 => PatternKind::FatLadder,
            CertKind::Cnt => PatternKind::FatMobius,
        }
    }

    /// `|L_B(u)|` required by the block shape.
    pub fn part_size(&self) -> usize {
        match self.kind {
            CertKind::Knt => (self.t * (self.n - 1)) as usize,
            CertKind::Cnt => (2 * self.t) as usize,
        }
    }
}

/// Proof that a degree-list instance has no coloring. `partition[u]` maps a
/// block name `B<index>` (index into `blocks`) to `L_B(u)`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ObstructionCertificate {
    pub blocks: Vec<BlockCertificate>,
    pub partition: BTreeMap<String, BTreeMap<String, BTreeSet<Color>>>,
}

pub fn block_name(index: usize) -> String {
    format!("B{index}")
}

impl ObstructionCertificate {
    /// One line per block, for human-readable output.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        for (b, blk) in self.blocks.iter().enumerate() {
            let shape = match blk.pattern() {
                PatternKind::Hnt => "H(n,t)",
                PatternKind::FatLadder => "fat ladder",
                PatternKind::FatMobius => "fat Moebius ladder",
            };
            let mut verts: Vec<(&u32, &String)> = blk.i_map.iter().map(|(v, i)| (i, v)).collect();
            verts.sort();
            let names: Vec<&str> = verts.into_iter().map(|(_, v)| v.as_str()).collect();
            s.push_str(&format!(
                "{}: {:?} n={} t={} {} on {}\n",
                block_name(b),
                blk.kind,
                blk.n,
                blk.t,
                shape,
                names.join(",")
            ));
        }
        s
    }
}

/// Result of certificate verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// The first condition found to fail.
    Invalid(String),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => f.write_str("valid"),
            Verdict::Invalid(why) => write!(f, "invalid: {why}"),
        }
    }
}

macro_rules! fail {
    ($($arg:tt)*) => { return Verdict::Invalid(format!($($arg)*)) };
}

/// Checks every condition of the certificate against the instance's cover:
/// exact degree lists, block shapes, the list partition with its part
/// sizes, and that each block's parts induce the required pattern under
/// the certificate's index maps.
pub fn verify_certificate(inst: &DPInstance, cert: &ObstructionCertificate) -> Result<Verdict, ObstructionError> {
    inst.require_valid()?;
    inst.graph().require_connected()?;
    Ok(verify_unchecked(inst, cert))
}

fn verify_unchecked(inst: &DPInstance, cert: &ObstructionCertificate) -> Verdict {
    let g = inst.graph();
    for u in 0..g.vertex_count() {
        if inst.list(u).len() != g.degree(u) as usize {
            fail!("|L({})| = {} but degree is {}", g.name(u), inst.list(u).len(), g.degree(u));
        }
    }
    let dec = multigraph::blocks(g).expect("connected");
    if dec.blocks.len() != cert.blocks.len() {
        fail!("graph has {} blocks, certificate lists {}", dec.blocks.len(), cert.blocks.len());
    }
    // certificate block index for each decomposition block
    let mut owner = vec![usize::MAX; dec.blocks.len()];
    for (cb, blk) in cert.blocks.iter().enumerate() {
        let mut verts = Vec::new();
        for name in blk.i_map.keys() {
            match g.index(name) {
                Some(v) => verts.push(v),
                None => fail!("{}: unknown vertex {name}", block_name(cb)),
            }
        }
        verts.sort_unstable();
        match dec.blocks.iter().position(|b| *b == verts) {
            Some(db) if owner[db] == usize::MAX => owner[db] = cb,
            _ => fail!("{}: vertex set is not a block of the graph", block_name(cb)),
        }
        let shape = multigraph::classify_unchecked(g, &verts);
        let ok = match (blk.kind, shape) {
            (CertKind::Knt, BlockKind::CompletePower { n, t }) => (n, t) == (blk.n, blk.t),
            (CertKind::Cnt, BlockKind::CyclePower { n, t }) => (n, t) == (blk.n, blk.t),
            _ => false,
        };
        if !ok {
            fail!("{}: declared {:?} n={} t={} but block is {:?}", block_name(cb), blk.kind, blk.n, blk.t, shape);
        }
    }

    // partition of every list
    for u in 0..g.vertex_count() {
        let name = g.name(u);
        let expected: BTreeSet<String> = dec.blocks_of(u).into_iter().map(|db| block_name(owner[db])).collect();
        let empty = BTreeMap::new();
        let parts = cert.partition.get(name).unwrap_or(&empty);
        let got: BTreeSet<String> = parts.keys().cloned().collect();
        if got != expected {
            fail!("partition of {name} names blocks {got:?}, expected {expected:?}");
        }
        let mut union = BTreeSet::new();
        for (bname, part) in parts {
            let cb: usize = bname[1..].parse().unwrap();
            let blk = &cert.blocks[cb];
            if part.len() != blk.part_size() {
                fail!("|L_{bname}({name})| = {} but {:?} n={} t={} needs {}", part.len(), blk.kind, blk.n, blk.t, blk.part_size());
            }
            for &c in part {
                if !union.insert(c) {
                    fail!("color {c} of {name} lies in two parts");
                }
            }
            let labelled: BTreeSet<Color> =
                blk.labels.get(name).map(|m| m.keys().copied().collect()).unwrap_or_default();
            if &labelled != part {
                fail!("{bname}: labels of {name} do not match its part");
            }
        }
        if &union != inst.list(u) {
            fail!("parts of {name} do not cover L({name})");
        }
    }

    // induced pattern per block
    for (cb, blk) in cert.blocks.iter().enumerate() {
        let pattern = PatternGraph { kind: blk.pattern(), n: blk.n, t: blk.t };
        if !blk.labels.keys().eq(blk.i_map.keys()) {
            fail!("{}: labels and i_map name different vertices", block_name(cb));
        }
        let rows: BTreeSet<u32> = blk.i_map.values().copied().collect();
        if rows != (1..=blk.n).collect() {
            fail!("{}: i_map is not a bijection onto 1..={}", block_name(cb), blk.n);
        }
        let mut nodes: Vec<(usize, Color, (u32, u32, u32))> = Vec::new();
        for (name, &i) in &blk.i_map {
            let u = g.index(name).unwrap();
            let Some(lab) = blk.labels.get(name) else { fail!("{}: no labels for {name}", block_name(cb)) };
            let jk: BTreeSet<(u32, u32)> = lab.values().copied().collect();
            let want: BTreeSet<(u32, u32)> =
                (1..=pattern.classes()).flat_map(|j| (1..=blk.t).map(move |k| (j, k))).collect();
            if jk != want || lab.len() != want.len() {
                fail!("{}: labels of {name} are not a bijection onto the (j,k) grid", block_name(cb));
            }
            nodes.extend(lab.iter().map(|(&c, &(j, k))| (u, c, (i, j, k))));
        }
        for a in 0..nodes.len() {
            for b in a + 1..nodes.len() {
                let (u, c, x) = nodes[a];
                let (v, d, y) = nodes[b];
                let in_cover = inst.conflicts(u, c, v, d);
                if in_cover != pattern.adjacent(x, y) {
                    fail!(
                        "{}: ({},{}) ~ ({},{}) is {} in the cover but {} in {:?}({},{})",
                        block_name(cb),
                        g.name(u),
                        c,
                        g.name(v),
                        d,
                        if in_cover { "an edge" } else { "a non-edge" },
                        if in_cover { "absent" } else { "present" },
                        pattern.kind,
                        pattern.n,
                        pattern.t
                    );
                }
            }
        }
    }
    Verdict::Valid
}

/// Finds an obstruction certificate, or `None` when none exists.
///
/// Requires exact degree lists and blocks of shape `K_n^t` / `C_n^t`. The
/// list partition is forced: peeling leaf blocks of the block-cut tree, the
/// non-cut vertices of a leaf block keep their whole remaining list and the
/// attaching cut vertex contributes exactly the colors matched into the
/// block. Inside a block, the colors of an anchor vertex are grouped by
/// their neighbor sets at the next vertex (groups of size `t`), and the
/// groups are carried around the block through the matchings. The result
/// is accepted only if it passes [`verify_certificate`].
pub fn find_certificate(inst: &DPInstance) -> Result<Option<ObstructionCertificate>, ObstructionError> {
    inst.require_valid()?;
    inst.graph().require_connected()?;
    Ok(search_certificate(inst))
}

fn search_certificate(inst: &DPInstance) -> Option<ObstructionCertificate> {
    let g = inst.graph();
    if !inst.is_exact_degree_list() {
        return None;
    }
    let dec = multigraph::blocks(g).ok()?;
    if dec.blocks.is_empty() {
        // a lone vertex: exact degree means an empty list
        let partition = BTreeMap::from([(g.name(0).to_string(), BTreeMap::new())]);
        return Some(ObstructionCertificate { blocks: Vec::new(), partition });
    }
    let mut shapes = Vec::with_capacity(dec.blocks.len());
    for b in &dec.blocks {
        match multigraph::classify_unchecked(g, b) {
            BlockKind::CompletePower { n, t } => shapes.push((CertKind::Knt, n, t)),
            BlockKind::CyclePower { n, t } => shapes.push((CertKind::Cnt, n, t)),
            BlockKind::Other => return None,
        }
    }

    let nb = dec.blocks.len();
    let mut remaining: Vec<BTreeSet<Color>> = inst.lists().iter().cloned().collect();
    let mut live = vec![0usize; g.vertex_count()];
    for b in &dec.blocks {
        for &v in b {
            live[v] += 1;
        }
    }
    let mut alive = vec![true; nb];
    let mut parts: Vec<BTreeMap<usize, BTreeSet<Color>>> = vec![BTreeMap::new(); nb];
    for _ in 0..nb {
        let b = (0..nb).find(|&b| alive[b] && dec.blocks[b].iter().filter(|&&v| live[v] >= 2).count() <= 1)?;
        let members = &dec.blocks[b];
        let cut = members.iter().copied().find(|&v| live[v] >= 2);
        let (kind, n, t) = shapes[b];
        let size = match kind {
            CertKind::Knt => (t * (n - 1)) as usize,
            CertKind::Cnt => (2 * t) as usize,
        };
        for &v in members {
            let part = if Some(v) == cut {
                remaining[v]
                    .iter()
                    .copied()
                    .filter(|&c| {
                        members.iter().any(|&w| {
                            w != v
                                && g.mult(v, w) > 0
                                && inst.matching().matched(v, c, w).iter().any(|d| remaining[w].contains(d))
                        })
                    })
                    .collect()
            } else {
                remaining[v].clone()
            };
            if part.len() != size {
                return None;
            }
            parts[b].insert(v, part);
        }
        for (&v, part) in &parts[b] {
            remaining[v].retain(|c| !part.contains(c));
            live[v] -= 1;
        }
        alive[b] = false;
    }
    if remaining.iter().any(|r| !r.is_empty()) {
        return None;
    }

    let mut cert = ObstructionCertificate::default();
    for (b, members) in dec.blocks.iter().enumerate() {
        let (kind, n, t) = shapes[b];
        let (order, labels) = label_block(inst, members, kind, t, &parts[b])?;
        let i_map = order.iter().enumerate().map(|(i, &v)| (g.name(v).to_string(), i as u32 + 1)).collect();
        let labels = labels.into_iter().map(|(v, l)| (g.name(v).to_string(), l)).collect();
        cert.blocks.push(BlockCertificate { kind, n, t, i_map, labels });
        for (&v, part) in &parts[b] {
            cert.partition.entry(g.name(v).to_string()).or_default().insert(block_name(b), part.clone());
        }
    }
    verify_unchecked(inst, &cert).is_valid().then_some(cert)
}

type Labels = BTreeMap<usize, BTreeMap<Color, (u32, u32)>>;

/// Row order and `(j, k)` labels for one block, or `None` if the parts do
/// not split into matched classes of size `t`.
fn label_block(
    inst: &DPInstance,
    members: &[usize],
    kind: CertKind,
    t: u32,
    parts: &BTreeMap<usize, BTreeSet<Color>>,
) -> Option<(Vec<usize>, Labels)> {
    let g = inst.graph();
    let order = match kind {
        CertKind::Knt => members.to_vec(),
        CertKind::Cnt => multigraph::cycle_order(g, members),
    };
    let classes = match kind {
        CertKind::Knt => members.len() - 1,
        CertKind::Cnt => 2,
    };
    let t = t as usize;
    let nbrs = |u: usize, c: Color, v: usize| -> BTreeSet<Color> {
        inst.matching().matched(u, c, v).into_iter().filter(|d| parts[&v].contains(d)).collect()
    };
    let (u0, u1) = (order[0], order[1]);
    let mut groups: BTreeMap<BTreeSet<Color>, BTreeSet<Color>> = BTreeMap::new();
    for &c in &parts[&u0] {
        groups.entry(nbrs(u0, c, u1)).or_default().insert(c);
    }
    if groups.len() != classes || groups.iter().any(|(nb, grp)| nb.len() != t || grp.len() != t) {
        return None;
    }
    let mut anchor: Vec<(BTreeSet<Color>, BTreeSet<Color>)> =
        groups.into_iter().map(|(nb, grp)| (grp, nb)).collect();
    anchor.sort_by_key(|(grp, _)| *grp.iter().next().unwrap());

    let mut class_of: BTreeMap<usize, Vec<BTreeSet<Color>>> = BTreeMap::new();
    class_of.insert(u0, anchor.iter().map(|(grp, _)| grp.clone()).collect());
    class_of.insert(u1, anchor.iter().map(|(_, nb)| nb.clone()).collect());
    for a in 2..order.len() {
        let w = order[a];
        let from = match kind {
            CertKind::Knt => u0,
            CertKind::Cnt => order[a - 1],
        };
        let cls: Vec<BTreeSet<Color>> = class_of[&from]
            .iter()
            .map(|src| src.iter().flat_map(|&c| nbrs(from, c, w)).collect())
            .collect();
        let union: BTreeSet<Color> = cls.iter().flatten().copied().collect();
        if cls.iter().any(|s| s.len() != t) || union != parts[&w] {
            return None;
        }
        class_of.insert(w, cls);
    }
    let labels = class_of
        .into_iter()
        .map(|(v, cls)| {
            let lab = cls
                .iter()
                .enumerate()
                .flat_map(|(j, s)| s.iter().enumerate().map(move |(k, &c)| (c, (j as u32 + 1, k as u32 + 1))))
                .collect();
            (v, lab)
        })
        .collect();
    Some((order, labels))
}

/// Colorability decision for a degree-list instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Colorable(Transversal),
    Obstructed(ObstructionCertificate),
}

impl Decision {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, Decision::Obstructed(_))
    }
}

fn require_degree_list(inst: &DPInstance) -> Result<(), ObstructionError> {
    let g = inst.graph();
    match (0..g.vertex_count()).find(|&u| inst.list(u).len() < g.degree(u) as usize) {
        Some(u) => Err(ObstructionError::NotDegreeList {
            vertex: g.name(u).to_string(),
            size: inst.list(u).len(),
            degree: g.degree(u),
        }),
        None => Ok(()),
    }
}

/// Decides a connected degree-list instance: a certificate when one exists,
/// otherwise an explicit coloring.
///
/// The coloring is built vertex by vertex. At a non-cut vertex `u` some
/// color `c` leaves every component of the restricted instance
/// certificate-free; those components are again degree-list instances, so
/// they are colorable and the coloring lifts back through `(u, c)`.
pub fn decide(inst: &DPInstance) -> Result<Decision, ObstructionError> {
    inst.require_valid()?;
    inst.graph().require_connected()?;
    require_degree_list(inst)?;
    if let Some(cert) = search_certificate(inst) {
        return Ok(Decision::Obstructed(cert));
    }
    let picks = color_constructively(inst)?;
    if !picks.is_valid_for(inst) {
        return Err(ObstructionError::Inconsistent("assembled coloring does not verify".into()));
    }
    Ok(Decision::Colorable(picks))
}

fn color_constructively(inst: &DPInstance) -> Result<Transversal, ObstructionError> {
    let mut picks = Transversal::new();
    let mut stack = vec![inst.clone()];
    while let Some(cur) = stack.pop() {
        if cur.vertex_count() == 0 {
            continue;
        }
        let g = cur.graph();
        let cuts = multigraph::blocks(g).map(|d| d.cut_vertices).unwrap_or_default();
        let u = (0..g.vertex_count()).find(|v| !cuts.contains(v)).unwrap_or(0);
        let step = cur.list(u).iter().copied().find_map(|c| {
            let rest = cur.restrict_idx(u, c).components();
            rest.iter().all(|comp| search_certificate(comp).is_none()).then_some((c, rest))
        });
        match step {
            Some((c, rest)) => {
                picks.insert(g.name(u), c);
                stack.extend(rest);
            }
            None => match solver::solve_unchecked(&cur) {
                // not expected for certificate-free degree-list instances
                SolveResult::Colorable(t) => picks.extend(&t),
                SolveResult::NotColorable { .. } => {
                    return Err(ObstructionError::Inconsistent(format!(
                        "no certificate yet no coloring on {:?}",
                        g.vertices()
                    )))
                }
            },
        }
    }
    Ok(picks)
}

/// Decides every connected component separately.
pub fn decide_components(inst: &DPInstance) -> Result<Vec<(DPInstance, Decision)>, ObstructionError> {
    inst.require_valid()?;
    if inst.vertex_count() == 0 {
        return Err(GraphError::EmptyGraph.into());
    }
    inst.components()
        .into_iter()
        .map(|c| decide(&c).map(|d| (c, d)))
        .collect()
}

/// For a simple connected graph: `false` exactly when every block is a
/// complete graph or an odd cycle, i.e. some degree-list assignment admits
/// no list coloring.
pub fn is_degree_choosable_shape(g: &Multigraph) -> Result<bool, ObstructionError> {
    g.require_simple()?;
    let dec = multigraph::blocks(g)?;
    let bad = dec.blocks.iter().all(|b| match multigraph::classify_unchecked(g, b) {
        BlockKind::CompletePower { .. } => true,
        BlockKind::CyclePower { n, .. } => n % 2 == 1,
        BlockKind::Other => false,
    });
    Ok(!bad)
}
