//! Instance and graph constructors: blow-ups, canonical non-colorable
//! instances on `K_n^t` / `C_n^t` blocks and on block trees of them,
//! seeded random matchings, and small graph families for sweeps.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::{Color, DPInstance, ListAssignment, MatchingAssignment};
use crate::multigraph::{self, BlockKind, GraphError, Multigraph};
use crate::obstruction::{block_name, BlockCertificate, CertKind, ObstructionCertificate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("K_n^t needs n >= 2 and t >= 1 (got n={n}, t={t})")]
    BadKnt { n: u32, t: u32 },
    #[error("C_n^t needs n >= 4 and t >= 1 (got n={n}, t={t}); for n = 3 use bad_instance_knt(3, t)")]
    BadCnt { n: u32, t: u32 },
    #[error("block {block}: expected {expected} vertex names, got {got}")]
    VertexCount { block: usize, expected: usize, got: usize },
    #[error("block {0} repeats a vertex")]
    RepeatedVertex(usize),
    #[error("blocks do not form a tree: {0}")]
    NotATree(String),
    #[error("plan has no blocks")]
    EmptyPlan,
    #[error("block {0:?} is neither K_n^t nor C_n^t")]
    UnsupportedBlock(Vec<String>),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Replaces every vertex `u` of a simple graph by a clique on `u#1..u#t`
/// and joins cliques of adjacent vertices completely.
pub fn blow_up(g: &Multigraph, t: u32) -> Result<Multigraph, GenError> {
    g.require_simple()?;
    if t == 0 {
        return Err(GraphError::ZeroPower.into());
    }
    let copy = |u: &str, k: u32| format!("{u}#{k}");
    let mut names = Vec::new();
    for u in g.vertices() {
        names.extend((1..=t).map(|k| copy(u, k)));
    }
    let mut h = Multigraph::new(names)?;
    for u in g.vertices() {
        for a in 1..=t {
            for b in a + 1..=t {
                h.add_edge(&copy(u, a), &copy(u, b), 1)?;
            }
        }
    }
    for (x, y, _) in g.pairs() {
        for a in 1..=t {
            for b in 1..=t {
                h.add_edge(&copy(g.name(x), a), &copy(g.name(y), b), 1)?;
            }
        }
    }
    Ok(h)
}

/// The ladder `C_n □ K_2`, vertex `(i, j)` named `i,j`.
pub fn ladder(n: usize) -> Multigraph {
    let names: Vec<String> = (1..=n).flat_map(|i| (1..=2).map(move |j| format!("{i},{j}"))).collect();
    let mut g = Multigraph::new(names).unwrap();
    for i in 1..=n {
        g.add_edge(&format!("{i},1"), &format!("{i},2"), 1).unwrap();
        let next = i % n + 1;
        for j in 1..=2 {
            if n >= 3 || i < n {
                g.add_edge(&format!("{i},{j}"), &format!("{next},{j}"), 1).unwrap();
            }
        }
    }
    g
}

/// One block of a glue plan. `vertices` lists the block's vertices in
/// row order (cycle order for `Cnt`); names shared between blocks become
/// cut vertices. An empty list means `v1..vn`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadBlockSpec {
    pub kind: CertKind,
    pub n: u32,
    pub t: u32,
    #[serde(default)]
    pub vertices: Vec<String>,
}

/// A block tree of bad blocks.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GluePlan {
    pub blocks: Vec<BadBlockSpec>,
}

impl GluePlan {
    /// The plan realizing `g`, if every block of `g` is `K_n^t` or `C_n^t`.
    pub fn from_graph(g: &Multigraph) -> Result<GluePlan, GenError> {
        let dec = multigraph::blocks(g)?;
        let mut plan = GluePlan::default();
        for b in &dec.blocks {
            let names = |order: &[usize]| order.iter().map(|&v| g.name(v).to_string()).collect();
            let spec = match multigraph::classify_unchecked(g, b) {
                BlockKind::CompletePower { n, t } => BadBlockSpec { kind: CertKind::Knt, n, t, vertices: names(b) },
                BlockKind::CyclePower { n, t } => BadBlockSpec {
                    kind: CertKind::Cnt,
                    n,
                    t,
                    vertices: names(&multigraph::cycle_order(g, b)),
                },
                BlockKind::Other => return Err(GenError::UnsupportedBlock(names(b))),
            };
            plan.blocks.push(spec);
        }
        Ok(plan)
    }
}

fn check_shape(kind: CertKind, n: u32, t: u32) -> Result<(), GenError> {
    match kind {
        CertKind::Knt if n < 2 || t == 0 => Err(GenError::BadKnt { n, t }),
        CertKind::Cnt if n < 4 || t == 0 => Err(GenError::BadCnt { n, t }),
        _ => Ok(()),
    }
}

fn part_size(kind: CertKind, n: u32, t: u32) -> u32 {
    match kind {
        CertKind::Knt => t * (n - 1),
        CertKind::Cnt => 2 * t,
    }
}

/// `K_n^t` on `v1..vn` whose cover is exactly `H(n,t)`. Color `(j-1)t + k`
/// of every vertex carries label `(j, k)`.
pub fn bad_instance_knt(n: u32, t: u32) -> Result<(DPInstance, ObstructionCertificate), GenError> {
    glue_bad(&GluePlan { blocks: vec![BadBlockSpec { kind: CertKind::Knt, n, t, vertices: Vec::new() }] })
}

/// `C_n^t` on the cycle `v1..vn` whose cover is the `t`-fat ladder (odd `n`)
/// or the `t`-fat Möbius ladder (even `n`).
pub fn bad_instance_cnt(n: u32, t: u32) -> Result<(DPInstance, ObstructionCertificate), GenError> {
    glue_bad(&GluePlan { blocks: vec![BadBlockSpec { kind: CertKind::Cnt, n, t, vertices: Vec::new() }] })
}

/// Glues bad blocks along a block tree. Block `b` uses colors
/// `b * stride + 1 ..= b * stride + |L_B|`, so cut vertices get the disjoint
/// union of their per-block lists.
pub fn glue_bad(plan: &GluePlan) -> Result<(DPInstance, ObstructionCertificate), GenError> {
    if plan.blocks.is_empty() {
        return Err(GenError::EmptyPlan);
    }
    let mut specs = plan.blocks.clone();
    for (b, s) in specs.iter_mut().enumerate() {
        check_shape(s.kind, s.n, s.t)?;
        if s.vertices.is_empty() {
            s.vertices = multigraph::numbered_names(s.n as usize);
        }
        if s.vertices.len() != s.n as usize {
            return Err(GenError::VertexCount { block: b, expected: s.n as usize, got: s.vertices.len() });
        }
        if s.vertices.iter().collect::<BTreeSet<_>>().len() != s.vertices.len() {
            return Err(GenError::RepeatedVertex(b));
        }
    }
    let names: BTreeSet<&String> = specs.iter().flat_map(|s| &s.vertices).collect();
    let incidences: usize = specs.iter().map(|s| s.vertices.len()).sum();
    if incidences != names.len() + specs.len() - 1 {
        return Err(GenError::NotATree(format!(
            "{} blocks and {} vertices need {} incidences, found {incidences}",
            specs.len(),
            names.len(),
            names.len() + specs.len() - 1
        )));
    }
    let mut g = Multigraph::new(names.iter().map(|s| s.as_str()))?;
    for s in &specs {
        let v = &s.vertices;
        let n = v.len();
        for a in 0..n {
            for b in a + 1..n {
                let adjacent = match s.kind {
                    CertKind::Knt => true,
                    CertKind::Cnt => b == a + 1 || (a == 0 && b == n - 1),
                };
                if adjacent {
                    g.add_edge(&v[a], &v[b], s.t)?;
                }
            }
        }
    }
    if !g.is_connected() {
        return Err(GenError::NotATree("blocks are not connected".into()));
    }

    let stride = specs.iter().map(|s| part_size(s.kind, s.n, s.t)).max().unwrap() as Color;
    let mut lists = vec![BTreeSet::new(); g.vertex_count()];
    let mut matching = MatchingAssignment::new();
    let mut cert = ObstructionCertificate::default();
    for (b, s) in specs.iter().enumerate() {
        let t = s.t as Color;
        let offset = b as Color * stride;
        let color = |j: u32, k: u32| offset + (j as Color - 1) * t + k as Color;
        let classes = match s.kind {
            CertKind::Knt => s.n - 1,
            CertKind::Cnt => 2,
        };
        let idx: Vec<usize> = s.vertices.iter().map(|v| g.index(v).unwrap()).collect();
        let mut labels = BTreeMap::new();
        for (pos, &u) in idx.iter().enumerate() {
            let mut lab = BTreeMap::new();
            for j in 1..=classes {
                for k in 1..=s.t {
                    lab.insert(color(j, k), (j, k));
                }
            }
            let part: BTreeSet<Color> = lab.keys().copied().collect();
            lists[u].extend(part.iter().copied());
            cert.partition.entry(s.vertices[pos].clone()).or_default().insert(block_name(b), part);
            labels.insert(s.vertices[pos].clone(), lab);
        }
        let n = idx.len();
        for a in 0..n {
            for c in a + 1..n {
                let crossed = match s.kind {
                    CertKind::Knt => false,
                    CertKind::Cnt if c == a + 1 => false,
                    CertKind::Cnt if a == 0 && c == n - 1 => n.is_multiple_of(2),
                    CertKind::Cnt => continue,
                };
                for j in 1..=classes {
                    let j2 = if crossed { 3 - j } else { j };
                    for k in 1..=s.t {
                        for k2 in 1..=s.t {
                            matching.insert(idx[a], color(j, k), idx[c], color(j2, k2));
                        }
                    }
                }
            }
        }
        let i_map = s.vertices.iter().enumerate().map(|(p, v)| (v.clone(), p as u32 + 1)).collect();
        cert.blocks.push(BlockCertificate { kind: s.kind, n: s.n, t: s.t, i_map, labels });
    }
    let inst = DPInstance::new(g, ListAssignment::new(lists), matching).expect("one list per vertex");
    Ok((inst, cert))
}

/// Seeded random matching assignment. For each adjacent pair `uv` it takes
/// the union of `ceil(density * mu(uv))` partial matchings, each of a size
/// drawn uniformly from `0..=min(|L(u)|, |L(v)|)` between shuffled lists.
///
/// # Panics
/// If `density` is outside `[0, 1]`.
pub fn random_matching(g: &Multigraph, lists: &ListAssignment, seed: u64, density: f64) -> MatchingAssignment {
    assert!((0.0..=1.0).contains(&density), "density {density} outside [0, 1]");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = MatchingAssignment::new();
    for (u, v, mu) in g.pairs() {
        let rounds = (density * mu as f64).ceil() as u32;
        let mut lu: Vec<Color> = lists.get(u).iter().copied().collect();
        let mut lv: Vec<Color> = lists.get(v).iter().copied().collect();
        for _ in 0..rounds {
            lu.shuffle(&mut rng);
            lv.shuffle(&mut rng);
            let size = rng.gen_range(0..=lu.len().min(lv.len()));
            for i in 0..size {
                m.insert(u, lu[i], v, lv[i]);
            }
        }
    }
    m
}

/// Random multigraph on `n` vertices with degeneracy at most `k`: vertex
/// `i` sends at most `k` edge instances (with repetition) back to earlier
/// vertices.
pub fn random_degenerate_graph(n: usize, k: u32, seed: u64) -> Multigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Multigraph::new(multigraph::numbered_names(n)).unwrap();
    for i in 1..n {
        let back = rng.gen_range(0..=k);
        for _ in 0..back {
            let j = rng.gen_range(0..i);
            g.add_edge_idx(j, i, 1);
        }
    }
    g
}

/// A uniformly shuffled relabeling of every list, applied to lists and
/// matchings alike. The result is isomorphic to the input.
pub fn relabel_colors(inst: &DPInstance, seed: u64) -> DPInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let maps: Vec<BTreeMap<Color, Color>> = inst
        .lists()
        .iter()
        .map(|l| {
            let old: Vec<Color> = l.iter().copied().collect();
            let mut new = old.clone();
            new.shuffle(&mut rng);
            old.into_iter().zip(new).collect()
        })
        .collect();
    let lists = ListAssignment::new(maps.iter().map(|m| m.values().copied().collect()).collect());
    let mut matching = MatchingAssignment::new();
    for (&(u, v), pairs) in inst.matching().iter() {
        for &(a, b) in pairs {
            let a2 = maps[u].get(&a).copied().unwrap_or(a);
            let b2 = maps[v].get(&b).copied().unwrap_or(b);
            matching.insert(u, a2, v, b2);
        }
    }
    DPInstance::new(inst.graph().clone(), lists, matching).expect("same vertex count")
}

/// All connected multigraphs on `1..=max_vertices` vertices with total
/// multiplicity at most `max_total`, one per isomorphism class, on
/// vertices `v1..vn`. Intended for `max_vertices <= 6`.
pub fn connected_multigraphs(max_vertices: usize, max_total: u32) -> Vec<Multigraph> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let perms = permutations(n);
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut mult = vec![0u32; pairs.len()];
        enumerate_mults(&mut mult, 0, max_total, &mut |m| {
            if n > 1 && m.iter().sum::<u32>() < (n as u32 - 1) {
                return;
            }
            let canon = perms
                .iter()
                .map(|p| {
                    let mut key = vec![0u32; pairs.len()];
                    for (e, &(i, j)) in pairs.iter().enumerate() {
                        let (a, b) = (p[i].min(p[j]), p[i].max(p[j]));
                        key[pair_index(n, a, b)] = m[e];
                    }
                    key
                })
                .max()
                .unwrap();
            if !seen.insert(canon.clone()) {
                return;
            }
            let mut g = Multigraph::new(multigraph::numbered_names(n)).unwrap();
            for (e, &(i, j)) in pairs.iter().enumerate() {
                if canon[e] > 0 {
                    g.add_edge_idx(i, j, canon[e]);
                }
            }
            if g.is_connected() {
                out.push(g);
            }
        });
    }
    out
}

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    // position of (a, b), a < b, in row-major order of the upper triangle
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

fn enumerate_mults(m: &mut Vec<u32>, pos: usize, budget: u32, visit: &mut dyn FnMut(&[u32])) {
    if pos == m.len() {
        visit(m);
        return;
    }
    for x in 0..=budget {
        m[pos] = x;
        enumerate_mults(m, pos + 1, budget - x, visit);
    }
    m[pos] = 0;
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap(n, &mut p, &mut out);
    out
}

fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k - 1 {
        heap(k - 1, p, out);
        if k.is_multiple_of(2) {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
    heap(k - 1, p, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::tests::c4_instance;
    use crate::obstruction::{find_certificate, make_pattern, verify_certificate, PatternKind};
    use crate::solver::solve;

    #[test]
    fn blow_up_examples() {
        let lad = ladder(4);
        assert_eq!(blow_up(&lad, 1).unwrap().pair_count(), lad.pair_count());
        let c = blow_up(&Multigraph::cycle(4), 2).unwrap();
        assert_eq!((c.vertex_count(), c.pair_count()), (8, 20));
        let k3 = blow_up(&Multigraph::complete(1), 3).unwrap();
        assert_eq!((k3.vertex_count(), k3.pair_count()), (3, 3));
        assert!(blow_up(&Multigraph::complete(3).edge_power(2).unwrap(), 2).is_err());
    }

    #[test]
    fn blown_up_ladder_is_fat_ladder() {
        for n in 3..=6u32 {
            for t in 1..=3u32 {
                let b = blow_up(&ladder(n as usize), t).unwrap();
                let p = make_pattern(PatternKind::FatLadder, n, t).unwrap();
                let nodes = p.nodes();
                assert_eq!(b.pair_count(), p.edge_count());
                for (x, y) in p.edges() {
                    let name = |(i, j, k): (u32, u32, u32)| format!("{i},{j}#{k}");
                    let (a, c) = (b.index(&name(nodes[x])).unwrap(), b.index(&name(nodes[y])).unwrap());
                    assert_eq!(b.mult(a, c), 1);
                }
            }
        }
    }

    #[test]
    fn knt_examples() {
        let (k3, _) = bad_instance_knt(3, 1).unwrap();
        let list = DPInstance::from_list_instance(&Multigraph::complete(3), ListAssignment::uniform(3, [1, 2])).unwrap();
        assert_eq!(k3, list);
        let (k2, _) = bad_instance_knt(2, 2).unwrap();
        assert_eq!(k2.graph().mult(0, 1), 2);
        assert_eq!(k2.matching().pair_total(), 4);
        assert!(bad_instance_knt(1, 1).is_err());
        assert!(bad_instance_knt(3, 0).is_err());
    }

    #[test]
    fn cnt_examples() {
        let (c4, cert) = bad_instance_cnt(4, 1).unwrap();
        assert_eq!(c4, c4_instance(true));
        assert_eq!(cert.blocks[0].pattern(), PatternKind::FatMobius);
        let (c5, cert5) = bad_instance_cnt(5, 1).unwrap();
        assert_eq!(cert5.blocks[0].pattern(), PatternKind::FatLadder);
        assert!(!solve(&c5).unwrap().is_colorable());
        let (c42, _) = bad_instance_cnt(4, 2).unwrap();
        assert!(c42.lists().iter().all(|l| l.len() == 4));
        assert!(!solve(&c42).unwrap().is_colorable());
        assert!(matches!(bad_instance_cnt(3, 1), Err(GenError::BadCnt { n: 3, .. })));
    }

    #[test]
    fn generated_certificates_verify() {
        for n in 2..=5 {
            for t in 1..=2 {
                let mut outs = vec![bad_instance_knt(n, t).unwrap()];
                if n >= 4 {
                    outs.push(bad_instance_cnt(n, t).unwrap());
                }
                for (inst, cert) in outs {
                    assert!(inst.validate().is_empty());
                    assert!(verify_certificate(&inst, &cert).unwrap().is_valid());
                    assert!(find_certificate(&inst).unwrap().is_some());
                    assert!(!solve(&inst).unwrap().is_colorable());
                }
            }
        }
    }

    fn spec(kind: CertKind, n: u32, vs: &[&str]) -> BadBlockSpec {
        BadBlockSpec { kind, n, t: 1, vertices: vs.iter().map(|s| s.to_string()).collect() }
    }

    #[test]
    fn glue_examples() {
        let plan = GluePlan { blocks: vec![spec(CertKind::Knt, 2, &["a", "b"]), spec(CertKind::Knt, 2, &["b", "c"])] };
        let (p3, cert) = glue_bad(&plan).unwrap();
        assert_eq!(p3.list(1).len(), 2);
        assert!(!solve(&p3).unwrap().is_colorable());
        assert!(verify_certificate(&p3, &cert).unwrap().is_valid());

        let plan = GluePlan {
            blocks: vec![spec(CertKind::Knt, 3, &["a", "b", "c"]), spec(CertKind::Cnt, 4, &["c", "d", "e", "f"])],
        };
        let (six, cert) = glue_bad(&plan).unwrap();
        assert_eq!(six.vertex_count(), 6);
        assert_eq!(six.list(six.index("c").unwrap()).len(), 4);
        assert!(!solve(&six).unwrap().is_colorable());
        assert!(verify_certificate(&six, &cert).unwrap().is_valid());

        let single = GluePlan { blocks: vec![BadBlockSpec { kind: CertKind::Knt, n: 4, t: 2, vertices: vec![] }] };
        assert_eq!(glue_bad(&single).unwrap(), bad_instance_knt(4, 2).unwrap());
    }

    #[test]
    fn glue_rejects_non_trees() {
        let cyc = GluePlan {
            blocks: vec![
                spec(CertKind::Knt, 2, &["a", "b"]),
                spec(CertKind::Knt, 2, &["b", "c"]),
                spec(CertKind::Knt, 2, &["c", "a"]),
            ],
        };
        assert!(matches!(glue_bad(&cyc), Err(GenError::NotATree(_))));
        let apart = GluePlan { blocks: vec![spec(CertKind::Knt, 2, &["a", "b"]), spec(CertKind::Knt, 2, &["c", "d"])] };
        assert!(matches!(glue_bad(&apart), Err(GenError::NotATree(_))));
        assert!(matches!(glue_bad(&GluePlan::default()), Err(GenError::EmptyPlan)));
    }

    #[test]
    fn plan_from_graph_round_trip() {
        let g = Multigraph::with_edges(
            ["a", "b", "c", "d", "e"],
            [("a", "b", 2), ("b", "c", 1), ("c", "d", 1), ("d", "e", 1), ("e", "b", 1)],
        )
        .unwrap();
        let plan = GluePlan::from_graph(&g).unwrap();
        let (inst, cert) = glue_bad(&plan).unwrap();
        assert_eq!(inst.graph(), &g);
        assert!(verify_certificate(&inst, &cert).unwrap().is_valid());
        assert!(GluePlan::from_graph(&Multigraph::with_edges(["a", "b", "c"], [("a", "b", 2), ("b", "c", 1), ("a", "c", 1)]).unwrap()).is_err());
    }

    #[test]
    fn random_matching_bounds_and_determinism() {
        let g = Multigraph::with_edges(["a", "b", "c"], [("a", "b", 2), ("b", "c", 1)]).unwrap();
        let l = ListAssignment::uniform(3, 1..=4);
        assert_eq!(random_matching(&g, &l, 42, 0.7), random_matching(&g, &l, 42, 0.7));
        assert_eq!(random_matching(&g, &l, 42, 0.0).pair_total(), 0);
        for seed in 0..1000 {
            let m = random_matching(&g, &l, seed, 1.0);
            let inst = DPInstance::new(g.clone(), l.clone(), m).unwrap();
            assert!(inst.validate().is_empty());
        }
    }

    #[test]
    fn relabeling_preserves_outcome() {
        let (inst, _) = bad_instance_cnt(5, 2).unwrap();
        let r = relabel_colors(&inst, 7);
        assert!(r.validate().is_empty());
        assert!(find_certificate(&r).unwrap().is_some());
    }

    #[test]
    fn degenerate_graphs_respect_k() {
        for seed in 0..200 {
            let g = random_degenerate_graph(10, 3, seed);
            assert!(crate::solver::degeneracy(&g) <= 3);
        }
    }

    #[test]
    fn multigraph_counts() {
        // connected simple graphs on 4 vertices: 6; on 3 vertices with total
        // multiplicity <= 3: path, triangle, path with one doubled edge
        let simple4 = connected_multigraphs(4, 6).into_iter().filter(|g| g.vertex_count() == 4 && g.is_simple()).count();
        assert_eq!(simple4, 6);
        let three = connected_multigraphs(3, 3).into_iter().filter(|g| g.vertex_count() == 3).count();
        assert_eq!(three, 3);
        let two = connected_multigraphs(2, 4).into_iter().filter(|g| g.vertex_count() == 2).count();
        assert_eq!(two, 4);
        assert_eq!(pair_index(5, 3, 4), 9);
        let by_n: Vec<usize> = (1..=5).map(|n| connected_multigraphs(5, 8).iter().filter(|g| g.vertex_count() == n).count()).collect();
        assert_eq!(by_n, vec![1, 8, 32, 138, 326]);
        assert_eq!(permutations(4).len(), 24);
    }
}
