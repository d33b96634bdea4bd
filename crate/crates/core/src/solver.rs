//! Exact coloring search, greedy coloring along a degeneracy order, and the
//! DP-chromatic number of very small graphs.

use std::collections::{BTreeSet, HashSet, VecDeque};

use thiserror::Error;

use crate::cover::{Color, DPInstance, InstanceError, ListAssignment, MatchingAssignment, Transversal};
use crate::multigraph::Multigraph;
use crate::par;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("order is not a permutation of the vertices: {0}")]
    BadOrder(String),
    #[error("guard exceeded: {vertices} vertices, k_max {k_max} (limits 5 and 3)")]
    GuardExceeded { vertices: usize, k_max: u32 },
}

/// Outcome of a coloring attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Colorable(Transversal),
    /// `witness` names a vertex whose list ran out, when one is known.
    NotColorable { witness: Option<String> },
}

impl SolveResult {
    pub fn is_colorable(&self) -> bool {
        matches!(self, SolveResult::Colorable(_))
    }

    pub fn transversal(&self) -> Option<&Transversal> {
        match self {
            SolveResult::Colorable(t) => Some(t),
            SolveResult::NotColorable { .. } => None,
        }
    }
}

/// Upper limit on remembered dead states per search.
const MEMO_LIMIT: usize = 1 << 20;

/// The instance compiled for backtracking. Positions are vertices in
/// branching order: ascending list size, then identifier.
struct Search {
    order: Vec<usize>,
    colors: Vec<Vec<Color>>,
    /// `conflicts[p][a]`: `(q, b)` with `q > p` for every cover edge from
    /// color `a` at position `p` to color `b` at position `q`.
    conflicts: Vec<Vec<Vec<(usize, usize)>>>,
    offset: Vec<usize>,
}

struct State {
    live: Vec<u64>,
    count: Vec<usize>,
    picks: Vec<usize>,
    memo: HashSet<Vec<u64>>,
}

impl Search {
    fn new(inst: &DPInstance) -> Search {
        let g = inst.graph();
        let n = g.vertex_count();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&u| (inst.list(u).len(), u));
        let mut pos = vec![0; n];
        for (p, &u) in order.iter().enumerate() {
            pos[u] = p;
        }
        let colors: Vec<Vec<Color>> = order.iter().map(|&u| inst.list(u).iter().copied().collect()).collect();
        let color_idx = |p: usize, c: Color| colors[p].binary_search(&c).ok();
        let mut conflicts: Vec<Vec<Vec<(usize, usize)>>> =
            colors.iter().map(|cs| vec![Vec::new(); cs.len()]).collect();
        for (&(i, j), set) in inst.matching().iter() {
            let (pi, pj) = (pos[i], pos[j]);
            for &(ci, cj) in set {
                let (Some(a), Some(b)) = (color_idx(pi, ci), color_idx(pj, cj)) else { continue };
                if pi < pj {
                    conflicts[pi][a].push((pj, b));
                } else {
                    conflicts[pj][b].push((pi, a));
                }
            }
        }
        let mut offset = Vec::with_capacity(n + 1);
        let mut total = 0;
        for cs in &colors {
            offset.push(total);
            total += cs.len().div_ceil(64).max(1);
        }
        offset.push(total);
        Search { order, colors, conflicts, offset }
    }

    fn positions(&self) -> usize {
        self.order.len()
    }

    fn initial_state(&self) -> State {
        let mut live = vec![0u64; *self.offset.last().unwrap()];
        for (p, cs) in self.colors.iter().enumerate() {
            for a in 0..cs.len() {
                live[self.offset[p] + a / 64] |= 1 << (a % 64);
            }
        }
        State {
            live,
            count: self.colors.iter().map(Vec::len).collect(),
            picks: Vec::with_capacity(self.positions()),
            memo: HashSet::new(),
        }
    }

    fn live_colors(&self, st: &State, p: usize) -> Vec<usize> {
        let words = &st.live[self.offset[p]..self.offset[p + 1]];
        let mut out = Vec::new();
        for (w, &bits) in words.iter().enumerate() {
            let mut b = bits;
            while b != 0 {
                let k = b.trailing_zeros() as usize;
                out.push(w * 64 + k);
                b &= b - 1;
            }
        }
        out
    }

    /// Removes the conflicts of color `a` at `p` from later live lists.
    /// Returns the undo log and whether some list became empty.
    fn apply(&self, st: &mut State, p: usize, a: usize) -> (Vec<(usize, usize, u64)>, bool) {
        let mut undo = Vec::new();
        for &(q, b) in &self.conflicts[p][a] {
            let w = self.offset[q] + b / 64;
            let bit = 1u64 << (b % 64);
            if st.live[w] & bit != 0 {
                st.live[w] &= !bit;
                st.count[q] -= 1;
                undo.push((q, w, bit));
                if st.count[q] == 0 {
                    return (undo, true);
                }
            }
        }
        (undo, false)
    }

    fn undo(st: &mut State, log: Vec<(usize, usize, u64)>) {
        for (q, w, bit) in log {
            st.live[w] |= bit;
            st.count[q] += 1;
        }
    }

    fn dfs(&self, st: &mut State, depth: usize) -> bool {
        if depth == self.positions() {
            return true;
        }
        let mut key = Vec::with_capacity(self.offset[self.positions()] - self.offset[depth] + 1);
        key.push(depth as u64);
        key.extend_from_slice(&st.live[self.offset[depth]..]);
        if st.memo.contains(&key) {
            return false;
        }
        for a in self.live_colors(st, depth) {
            let (log, dead) = self.apply(st, depth, a);
            if !dead {
                st.picks.push(a);
                if self.dfs(st, depth + 1) {
                    return true;
                }
                st.picks.pop();
            }
            Self::undo(st, log);
        }
        if st.memo.len() < MEMO_LIMIT {
            st.memo.insert(key);
        }
        false
    }

    fn transversal(&self, inst: &DPInstance, picks: &[usize]) -> Transversal {
        picks
            .iter()
            .enumerate()
            .map(|(p, &a)| (inst.graph().name(self.order[p]).to_string(), self.colors[p][a]))
            .collect()
    }

    fn empty_witness(&self, inst: &DPInstance) -> Option<SolveResult> {
        let p = self.colors.iter().position(Vec::is_empty)?;
        Some(SolveResult::NotColorable { witness: Some(inst.graph().name(self.order[p]).to_string()) })
    }

    fn run_sequential(&self, inst: &DPInstance) -> SolveResult {
        if let Some(r) = self.empty_witness(inst) {
            return r;
        }
        let mut st = self.initial_state();
        if self.dfs(&mut st, 0) {
            SolveResult::Colorable(self.transversal(inst, &st.picks))
        } else {
            SolveResult::NotColorable { witness: None }
        }
    }

    /// Root branches run independently; the least successful branch wins.
    fn run_split(&self, inst: &DPInstance) -> SolveResult {
        if let Some(r) = self.empty_witness(inst) {
            return r;
        }
        if self.positions() == 0 {
            return SolveResult::Colorable(Transversal::new());
        }
        let roots: Vec<usize> = (0..self.colors[0].len()).collect();
        let found = par::find_map_first(&roots, |&a| {
            let mut st = self.initial_state();
            let (_, dead) = self.apply(&mut st, 0, a);
            if dead {
                return None;
            }
            st.picks.push(a);
            self.dfs(&mut st, 1).then_some(st.picks)
        });
        match found {
            Some(picks) => SolveResult::Colorable(self.transversal(inst, &picks)),
            None => SolveResult::NotColorable { witness: None },
        }
    }
}

/// Exhaustive search for an independent transversal of the cover.
///
/// Vertices are branched in ascending list size (ties by identifier) and
/// colors in ascending order, so the result is the least transversal in
/// that vertex-then-color order. Picking a color deletes its matched colors
/// from the live lists of later vertices; an emptied list backtracks.
/// Root branches run in parallel when the `parallel` feature is on; the
/// answer does not depend on scheduling.
pub fn solve(inst: &DPInstance) -> Result<SolveResult, SolveError> {
    inst.require_valid()?;
    Ok(solve_unchecked(inst))
}

pub(crate) fn solve_unchecked(inst: &DPInstance) -> SolveResult {
    let search = Search::new(inst);
    if par::enabled() {
        search.run_split(inst)
    } else {
        search.run_sequential(inst)
    }
}

/// Single-threaded [`solve`].
pub fn solve_sequential(inst: &DPInstance) -> Result<SolveResult, SolveError> {
    inst.require_valid()?;
    Ok(Search::new(inst).run_sequential(inst))
}

/// [`solve`] with root branches evaluated concurrently.
#[cfg(feature = "parallel")]
pub fn solve_parallel(inst: &DPInstance) -> Result<SolveResult, SolveError> {
    inst.require_valid()?;
    Ok(Search::new(inst).run_split(inst))
}

/// Repeatedly removes a vertex of minimum remaining degree (counted with
/// multiplicity, ties by identifier) and returns the removal order.
pub fn degeneracy_order(g: &Multigraph) -> Vec<String> {
    peel(g).into_iter().map(|(v, _)| g.name(v).to_string()).collect()
}

/// Maximum remaining degree at removal along [`degeneracy_order`].
pub fn degeneracy(g: &Multigraph) -> u32 {
    peel(g).into_iter().map(|(_, d)| d).max().unwrap_or(0)
}

fn peel(g: &Multigraph) -> Vec<(usize, u32)> {
    let n = g.vertex_count();
    let mut deg: Vec<u32> = (0..n).map(|v| g.degree(v)).collect();
    let mut gone = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !gone[v]).min_by_key(|&v| (deg[v], v)).unwrap();
        gone[v] = true;
        out.push((v, deg[v]));
        for (w, m) in g.neighbors(v) {
            if !gone[w] {
                deg[w] -= m;
            }
        }
    }
    out
}

/// Colors vertices from the end of `order` to its start, each with the
/// least color not matched to an already chosen one. A heuristic: it can
/// fail on colorable instances, but never when every list is longer than
/// the number of edges to previously colored vertices.
pub fn greedy_color<S: AsRef<str>>(inst: &DPInstance, order: &[S]) -> Result<SolveResult, SolveError> {
    inst.require_valid()?;
    let g = inst.graph();
    let mut idx = Vec::with_capacity(order.len());
    let mut seen = vec![false; g.vertex_count()];
    for name in order {
        let name = name.as_ref();
        match g.index(name) {
            Some(v) if !seen[v] => {
                seen[v] = true;
                idx.push(v);
            }
            _ => return Err(SolveError::BadOrder(name.to_string())),
        }
    }
    if idx.len() != g.vertex_count() {
        return Err(SolveError::BadOrder(format!("{} of {} vertices", idx.len(), g.vertex_count())));
    }
    let mut pick: Vec<Option<Color>> = vec![None; g.vertex_count()];
    for &v in idx.iter().rev() {
        let chosen = inst.list(v).iter().copied().find(|&c| {
            g.neighbors(v)
                .all(|(w, _)| pick[w].is_none_or(|cw| !inst.matching().contains(v, c, w, cw)))
        });
        match chosen {
            Some(c) => pick[v] = Some(c),
            None => return Ok(SolveResult::NotColorable { witness: Some(g.name(v).to_string()) }),
        }
    }
    Ok(SolveResult::Colorable(
        (0..g.vertex_count()).map(|v| (g.name(v).to_string(), pick[v].unwrap())).collect(),
    ))
}

/// Result of the bounded DP-chromatic number computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChromaticNumber {
    Exact(u32),
    /// Larger than the `k_max` that was tried.
    Unknown,
}

/// Smallest `t <= k_max` such that every matching assignment over `t`-lists
/// is colorable. Only graphs with at most 5 vertices and `k_max <= 3` are
/// accepted.
///
/// Lists of size exactly `t` are enough: colors have no meaning outside the
/// matchings, so any `t`-list is a relabeling of `[t]`, and dropping colors
/// from a longer list only removes options. For the same reason only
/// inclusion-maximal matchings per pair are tried, and on spanning-tree
/// pairs one representative per relabeling of the child's colors.
pub fn dp_chromatic_number_small(g: &Multigraph, k_max: u32) -> Result<ChromaticNumber, SolveError> {
    if g.vertex_count() > 5 || k_max > 3 {
        return Err(SolveError::GuardExceeded { vertices: g.vertex_count(), k_max });
    }
    if g.is_empty() {
        return Ok(ChromaticNumber::Exact(0));
    }
    for t in 1..=k_max {
        if all_assignments_colorable(g, t) {
            return Ok(ChromaticNumber::Exact(t));
        }
    }
    Ok(ChromaticNumber::Unknown)
}

fn all_assignments_colorable(g: &Multigraph, t: u32) -> bool {
    let tu = t as usize;
    let parent = bfs_parents(g);
    let pairs: Vec<(usize, usize, u32)> = g.pairs().collect();
    let options: Vec<Vec<u32>> = pairs
        .iter()
        .map(|&(i, j, m)| {
            let maximal = maximal_masks(tu, m);
            // the child of a tree edge may be relabeled freely
            if parent[j] == Some(i) {
                canonical(&maximal, tu, Side::Column)
            } else if parent[i] == Some(j) {
                canonical(&maximal, tu, Side::Row)
            } else {
                maximal
            }
        })
        .collect();
    let total: usize = options.iter().map(Vec::len).product();
    let lists = ListAssignment::uniform(g.vertex_count(), 1..=t as Color);
    let indices: Vec<usize> = (0..total).collect();
    par::all(&indices, |&code| {
        let mut rest = code;
        let mut matching = MatchingAssignment::new();
        for (k, &(i, j, _)) in pairs.iter().enumerate() {
            let mask = options[k][rest % options[k].len()];
            rest /= options[k].len();
            for bit in 0..tu * tu {
                if mask & (1 << bit) != 0 {
                    matching.insert(i, (bit / tu) as Color + 1, j, (bit % tu) as Color + 1);
                }
            }
        }
        let inst = DPInstance::new(g.clone(), lists.clone(), matching).unwrap();
        solve_unchecked(&inst).is_colorable()
    })
}

fn bfs_parents(g: &Multigraph) -> Vec<Option<usize>> {
    let n = g.vertex_count();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for (w, _) in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
    }
    parent
}

/// Bipartite graphs on `[t] x [t]` (bit `r*t + c` for row `r`, column `c`)
/// with maximum degree `<= mult` to which no pair can be added.
fn maximal_masks(t: usize, mult: u32) -> Vec<u32> {
    let fits = |mask: u32| {
        (0..t).all(|r| (0..t).filter(|&c| mask & (1 << (r * t + c)) != 0).count() <= mult as usize)
            && (0..t).all(|c| (0..t).filter(|&r| mask & (1 << (r * t + c)) != 0).count() <= mult as usize)
    };
    (0u32..1 << (t * t))
        .filter(|&m| fits(m))
        .filter(|&m| (0..t * t).all(|b| m & (1 << b) != 0 || !fits(m | (1 << b))))
        .collect()
}

#[derive(Clone, Copy)]
enum Side {
    Row,
    Column,
}

fn canonical(masks: &[u32], t: usize, side: Side) -> Vec<u32> {
    let perms = permutations(t);
    let reps: BTreeSet<u32> = masks
        .iter()
        .map(|&mask| {
            perms
                .iter()
                .map(|p| {
                    let mut out = 0;
                    for r in 0..t {
                        for c in 0..t {
                            if mask & (1 << (r * t + c)) != 0 {
                                let (r2, c2) = match side {
                                    Side::Row => (p[r], c),
                                    Side::Column => (r, p[c]),
                                };
                                out |= 1 << (r2 * t + c2);
                            }
                        }
                    }
                    out
                })
                .min()
                .unwrap()
        })
        .collect();
    reps.into_iter().collect()
}

fn permutations(t: usize) -> Vec<Vec<usize>> {
    if t == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(t - 1) {
        for at in 0..=p.len() {
            let mut q = p.clone();
            q.insert(at, t - 1);
            out.push(q);
        }
    }
    out
}

/// Every matching assignment over the given lists whose pairs respect the
/// multiplicity bound, without any symmetry reduction. Each vertex pair may
/// contribute at most 16 candidate color pairs.
pub fn all_matching_assignments(g: &Multigraph, lists: &ListAssignment) -> Vec<MatchingAssignment> {
    let per_pair: Vec<(usize, usize, Vec<Vec<(Color, Color)>>)> = g
        .pairs()
        .map(|(i, j, m)| {
            let cand: Vec<(Color, Color)> = lists
                .get(i)
                .iter()
                .flat_map(|&a| lists.get(j).iter().map(move |&b| (a, b)))
                .collect();
            assert!(cand.len() <= 16, "pair {i}-{j} has too many candidate color pairs");
            let subsets = (0u32..1 << cand.len())
                .map(|mask| {
                    (0..cand.len()).filter(|&b| mask & (1 << b) != 0).map(|b| cand[b]).collect::<Vec<_>>()
                })
                .filter(|s| {
                    let deg_ok = |pick: fn(&(Color, Color)) -> Color| {
                        let mut seen = std::collections::BTreeMap::new();
                        s.iter().all(|p| {
                            let e = seen.entry(pick(p)).or_insert(0u32);
                            *e += 1;
                            *e <= m
                        })
                    };
                    deg_ok(|p| p.0) && deg_ok(|p| p.1)
                })
                .collect();
            (i, j, subsets)
        })
        .collect();
    let mut out = vec![MatchingAssignment::new()];
    for (i, j, subsets) in per_pair {
        let mut next = Vec::with_capacity(out.len() * subsets.len());
        for base in &out {
            for s in &subsets {
                let mut m = base.clone();
                for &(a, b) in s {
                    m.insert(i, a, j, b);
                }
                next.push(m);
            }
        }
        out = next;
    }
    out
}
