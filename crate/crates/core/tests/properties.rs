//! Property tests over random multigraphs, instances and signed graphs.

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dpcover::cover::{Color, DPInstance, ListAssignment};
use dpcover::gen;
use dpcover::multigraph::{self, cartesian_product, Multigraph};
use dpcover::obstruction;
use dpcover::signed::{self, SignedGraph};
use dpcover::solver::{self, SolveResult};

fn multigraph_strategy() -> impl Strategy<Value = Multigraph> {
    (1usize..=7).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n, 1u32..=3), 0..=12).prop_map(move |edges| {
            let mut g = Multigraph::new(multigraph::numbered_names(n)).unwrap();
            for (i, j, m) in edges {
                if i != j {
                    let (a, b) = (g.name(i).to_string(), g.name(j).to_string());
                    g.add_edge(&a, &b, m).unwrap();
                }
            }
            g
        })
    })
}

fn connected_strategy() -> impl Strategy<Value = Multigraph> {
    multigraph_strategy().prop_filter("connected", |g| g.is_connected())
}

/// Random instance on `g`: list sizes around the degree, colors from a
/// small pool, random matchings.
fn instance_on(g: &Multigraph, seed: u64, slack: i64) -> DPInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<Color> = (1..=10).collect();
    let lists = ListAssignment::new(
        (0..g.vertex_count())
            .map(|u| {
                let size = (g.degree(u) as i64 + rng.gen_range(-1..=slack)).clamp(0, 10) as usize;
                pool.choose_multiple(&mut rng, size).copied().collect()
            })
            .collect(),
    );
    let density = rng.gen_range(0.0..=1.0);
    let m = gen::random_matching(g, &lists, seed ^ 0x5eed, density);
    DPInstance::new(g.clone(), lists, m).unwrap()
}

fn degree_instance_on(g: &Multigraph, seed: u64) -> DPInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lists = ListAssignment::new(
        (0..g.vertex_count())
            .map(|u| {
                let size = g.degree(u) as usize + rng.gen_range(0..=1);
                (1..=size as Color).collect()
            })
            .collect(),
    );
    let m = gen::random_matching(g, &lists, seed, 1.0);
    DPInstance::new(g.clone(), lists, m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn blocks_partition_edges(g in connected_strategy()) {
        let dec = multigraph::blocks(&g).unwrap();
        let in_blocks: u32 = dec
            .blocks
            .iter()
            .map(|b| {
                let mut s = 0;
                for (x, &i) in b.iter().enumerate() {
                    for &j in &b[x + 1..] {
                        s += g.mult(i, j);
                    }
                }
                s
            })
            .sum();
        prop_assert_eq!(in_blocks, g.total_multiplicity());
        for v in 0..g.vertex_count() {
            prop_assert_eq!(dec.cut_vertices.contains(&v), dec.blocks_of(v).len() >= 2);
            // brute force: removing v disconnects the graph
            let rest = g.without_vertex(v);
            let cut = rest.vertex_count() > 0 && !rest.is_connected();
            prop_assert_eq!(dec.cut_vertices.contains(&v), cut);
        }
    }

    #[test]
    fn product_with_clique_counts(g in multigraph_strategy(), k in 1usize..=4) {
        let mut simple = Multigraph::new(g.vertices().to_vec()).unwrap();
        for (i, j, _) in g.pairs() {
            let (a, b) = (g.name(i).to_string(), g.name(j).to_string());
            simple.add_edge(&a, &b, 1).unwrap();
        }
        let p = cartesian_product(&simple, &Multigraph::complete(k)).unwrap();
        prop_assert_eq!(p.vertex_count(), simple.vertex_count() * k);
        prop_assert_eq!(p.pair_count(), simple.vertex_count() * k * (k - 1) / 2 + k * simple.pair_count());
    }

    #[test]
    fn cover_counts_closed_form(g in multigraph_strategy(), seed in any::<u64>()) {
        let inst = instance_on(&g, seed, 2);
        prop_assert!(inst.validate().is_empty());
        let cover = inst.build_cover().unwrap();
        let nodes: usize = inst.lists().iter().map(|l| l.len()).sum();
        let cliques: usize = inst.lists().iter().map(|l| l.len() * l.len().saturating_sub(1) / 2).sum();
        prop_assert_eq!(cover.node_count(), nodes);
        prop_assert_eq!(cover.edge_count(), cliques + inst.matching().pair_total());
    }

    #[test]
    fn restriction_keeps_degree_lists_and_lifts(g in connected_strategy(), seed in any::<u64>()) {
        let inst = degree_instance_on(&g, seed);
        prop_assert!(inst.is_degree_list());
        for (u, name) in g.vertices().iter().enumerate() {
            for &c in inst.list(u) {
                let r = inst.restrict(name, c).unwrap();
                prop_assert!(r.is_degree_list());
                prop_assert!(r.validate().is_empty());
                if let SolveResult::Colorable(mut t) = solver::solve(&r).unwrap() {
                    t.insert(name.clone(), c);
                    prop_assert!(t.is_valid_for(&inst));
                }
            }
        }
    }

    #[test]
    fn solver_sound_and_schedule_independent(g in multigraph_strategy(), seed in any::<u64>()) {
        let inst = instance_on(&g, seed, 1);
        let a = solver::solve(&inst).unwrap();
        let b = solver::solve_sequential(&inst).unwrap();
        if let SolveResult::Colorable(t) = &a {
            prop_assert!(t.is_valid_for(&inst));
            prop_assert!(inst.build_cover().unwrap().is_independent_transversal(t));
        }
        prop_assert_eq!(a.transversal(), b.transversal());
    }

    #[test]
    fn decide_matches_solve(g in connected_strategy(), seed in any::<u64>()) {
        let inst = degree_instance_on(&g, seed);
        let d = obstruction::decide(&inst).unwrap();
        prop_assert_eq!(d.is_obstructed(), !solver::solve(&inst).unwrap().is_colorable());
        if let obstruction::Decision::Colorable(t) = d {
            prop_assert!(t.is_valid_for(&inst));
        }
    }

    #[test]
    fn obstructed_restrictions_stay_stuck(seed in any::<u64>(), which in 0usize..6) {
        let plans = [
            gen::bad_instance_knt(3, 2), gen::bad_instance_knt(4, 1), gen::bad_instance_cnt(4, 2),
            gen::bad_instance_cnt(5, 1), gen::bad_instance_knt(2, 3), gen::bad_instance_cnt(6, 1),
        ];
        let (bad, _) = plans[which].clone().unwrap();
        let inst = gen::relabel_colors(&bad, seed);
        let cert = obstruction::find_certificate(&inst).unwrap().expect("relabeling keeps the obstruction");
        prop_assert!(obstruction::verify_certificate(&inst, &cert).unwrap().is_valid());
        for (u, name) in inst.graph().vertices().iter().enumerate() {
            for &c in inst.list(u) {
                prop_assert!(!solver::solve(&inst.restrict(name, c).unwrap()).unwrap().is_colorable());
            }
        }
    }

    #[test]
    fn switching_preserves_colorability(seed in any::<u64>(), k in 1u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=5);
        let mut g = Multigraph::new(multigraph::numbered_names(n)).unwrap();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.5) {
                    let (a, b) = (g.name(i).to_string(), g.name(j).to_string());
                    g.add_edge(&a, &b, rng.gen_range(1..=2)).unwrap();
                }
            }
        }
        let mut s = SignedGraph::all_positive(g.clone());
        for (i, j, m) in g.pairs() {
            s.set_signs(i, j, (0..m).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect()).unwrap();
        }
        let v = rng.gen_range(0..n);
        let sw = s.switch(v);
        prop_assert_eq!(sw.switch(v), s.clone());
        let a = signed::solve_signed(&s, k).unwrap();
        let b = signed::solve_signed(&sw, k).unwrap();
        prop_assert_eq!(a.is_colorable(), b.is_colorable());
        if let SolveResult::Colorable(t) = b {
            let mut f: Vec<Color> = g.vertices().iter().map(|x| t.get(x).unwrap()).collect();
            f[v] = -f[v];
            let ok = g.pairs().all(|(i, j, _)| s.signs(i, j).iter().all(|&x| f[i] != x as Color * f[j]));
            prop_assert!(ok);
        }
    }
}

fn cycle_products_positive(s: &SignedGraph) -> bool {
    // no pair mixes signs, and every simple cycle of length >= 3 (enumerated
    // from its smallest vertex) has sign product +1
    let g = s.graph();
    let n = g.vertex_count();
    for (u, v, _) in g.pairs() {
        let sg = s.signs(u, v);
        if sg.iter().any(|&x| x != sg[0]) {
            return false;
        }
    }
    fn dfs(s: &SignedGraph, start: usize, u: usize, seen: &mut Vec<bool>, prod: i8, depth: usize) -> bool {
        let g = s.graph();
        for (v, _) in g.neighbors(u) {
            let p = prod * s.signs(u, v)[0];
            if v == start && depth >= 2 && p < 0 {
                return false;
            }
            if !seen[v] && v > start {
                seen[v] = true;
                if !dfs(s, start, v, seen, p, depth + 1) {
                    return false;
                }
                seen[v] = false;
            }
        }
        true
    }
    (0..n).all(|st| {
        let mut seen = vec![false; n];
        seen[st] = true;
        dfs(s, st, st, &mut seen, 1, 0)
    })
}

#[test]
fn balance_matches_cycle_products_and_switching_search() {
    let graphs: Vec<Multigraph> = gen::connected_multigraphs(5, 7).into_iter().filter(|g| g.pair_count() <= 7).collect();
    let mut checked = 0;
    for g in &graphs {
        let pairs: Vec<(usize, usize, u32)> = g.pairs().collect();
        let instances: u32 = pairs.iter().map(|p| p.2).sum();
        if instances > 8 {
            continue;
        }
        for mask in 0u32..1 << instances {
            let mut s = SignedGraph::all_positive(g.clone());
            let mut bit = 0;
            for &(u, v, m) in &pairs {
                let sg = (0..m).map(|b| if mask >> (bit + b) & 1 == 1 { -1 } else { 1 }).collect();
                bit += m;
                s.set_signs(u, v, sg).unwrap();
            }
            let n = g.vertex_count();
            let brute = (0u32..1 << n).any(|sub| {
                let set: Vec<usize> = (0..n).filter(|&v| sub >> v & 1 == 1).collect();
                s.switch_set(&set).iter_signs().all(|(_, x)| x.iter().all(|&y| y == 1))
            });
            let bal = s.is_balanced().unwrap();
            assert_eq!(bal, brute);
            assert_eq!(bal, cycle_products_positive(&s));
            for v in 0..n {
                assert_eq!(cycle_products_positive(&s.switch(v)), cycle_products_positive(&s));
            }
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

/// Smallest `k` whose palette contains every `N_d` with `d <= max_degree`.
fn palette_k(g: &Multigraph) -> u32 {
    let d = (0..g.vertex_count()).map(|u| g.degree(u)).max().unwrap_or(1).max(1);
    if d % 2 == 1 {
        d
    } else {
        d + 1
    }
}

#[test]
fn block_taxonomy_implies_non_colorable_on_two_connected_graphs() {
    // every connected simple graph and every doubled (full-capable) graph on
    // <= 5 vertices, all signings, lists N_{d(u)}
    let mut graphs: Vec<Multigraph> = gen::connected_multigraphs(5, 10).into_iter().filter(|g| g.is_simple()).collect();
    let doubled: Vec<Multigraph> = graphs.iter().filter(|g| g.pair_count() <= 5).map(|g| g.edge_power(2).unwrap()).collect();
    graphs.extend(doubled);
    let mut two_connected_hits = 0;
    let mut multi_block_gaps = 0;
    for g in &graphs {
        if g.vertex_count() < 2 {
            continue;
        }
        let k = palette_k(g);
        let lists = ListAssignment::new(
            (0..g.vertex_count()).map(|u| signed::n_k(g.degree(u)).unwrap().colors).collect(),
        );
        let pairs: Vec<(usize, usize, u32)> = g.pairs().collect();
        let instances: u32 = pairs.iter().map(|p| p.2).sum();
        if instances > 10 {
            continue;
        }
        let single_block = multigraph::blocks(g).unwrap().blocks.len() == 1;
        for mask in 0u32..1 << instances {
            let mut s = SignedGraph::all_positive(g.clone());
            let mut bit = 0;
            for &(u, v, m) in &pairs {
                s.set_signs(u, v, (0..m).map(|b| if mask >> (bit + b) & 1 == 1 { -1 } else { 1 }).collect()).unwrap();
                bit += m;
            }
            if !signed::ss_block_check(&s, &lists).unwrap() {
                continue;
            }
            let inst = signed::signed_to_dp(&s, &lists, k).unwrap();
            let stuck = !solver::solve(&inst).unwrap().is_colorable();
            if single_block {
                assert!(stuck, "2-connected {:?} passes the block check but is colorable", g.vertices());
                two_connected_hits += 1;
            } else if !stuck {
                multi_block_gaps += 1;
            }
        }
    }
    assert!(two_connected_hits > 0);
    // the implication does not extend to several blocks at the lists N_{d(u)}
    assert!(multi_block_gaps > 0);
}

#[test]
fn block_taxonomy_is_shape_only() {
    // positive path a-b-c: two balanced K_2 blocks, lists {0}, {-1, 1}, {0}
    let g = Multigraph::path(3);
    let s = SignedGraph::all_positive(g.clone());
    let lists = ListAssignment::new(vec![BTreeSet::from([0]), BTreeSet::from([-1, 1]), BTreeSet::from([0])]);
    assert!(signed::ss_block_check(&s, &lists).unwrap());
    let inst = signed::signed_to_dp(&s, &lists, 3).unwrap();
    assert!(solver::solve(&inst).unwrap().is_colorable());
    assert!(!obstruction::decide(&inst).unwrap().is_obstructed());
}

#[test]
fn generator_outputs_are_certified() {
    for n in 2..=5 {
        for t in 1..=2 {
            let mut outs = vec![gen::bad_instance_knt(n, t).unwrap()];
            if n >= 4 {
                outs.push(gen::bad_instance_cnt(n, t).unwrap());
            }
            for (inst, cert) in outs {
                assert!(inst.validate().is_empty());
                assert!(obstruction::verify_certificate(&inst, &cert).unwrap().is_valid());
                assert!(!solver::solve(&inst).unwrap().is_colorable());
            }
        }
    }
}

#[test]
fn k_coloring_cover_on_five_vertices() {
    let graphs: Vec<Multigraph> = gen::connected_multigraphs(5, 10).into_iter().filter(|g| g.is_simple()).collect();
    for g in &graphs {
        let n = g.vertex_count();
        for k in 1..=3usize {
            let proper = (0..k.pow(n as u32)).any(|code| {
                let col: Vec<usize> = (0..n).map(|v| code / k.pow(v as u32) % k).collect();
                g.pairs().all(|(i, j, _)| col[i] != col[j])
            });
            let inst = DPInstance::from_k_coloring(g, k as u32);
            assert_eq!(solver::solve(&inst).unwrap().is_colorable(), proper);
        }
    }
}
