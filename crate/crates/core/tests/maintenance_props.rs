//! Randomized checks of incremental maintenance against the brute-force
//! oracle, plus the structural properties every update must satisfy.

mod common;

use std::collections::BTreeSet;

use coremaint::decompose::{check_nested_cores, check_xy_bounds};
use coremaint::maintain::{color, recolor_delete, recolor_insert, y_prune_color};
use coremaint::{
    brute_force_core, decompose, Algorithm, CoreState, DynamicCore, Graph, NodeId, UpdateKind, UpdateReport,
    UpdateWorkspace, Variant,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn n(i: u32) -> NodeId {
    NodeId(i)
}

fn graph_strategy(max_nodes: usize) -> impl Strategy<Value = Graph> {
    (2..=max_nodes).prop_flat_map(|nodes| {
        let pairs = nodes * (nodes - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::with_nodes(nodes);
            let mut k = 0;
            for a in 0..nodes {
                for b in a + 1..nodes {
                    if bits[k] {
                        g.insert_edge(NodeId::from(a), NodeId::from(b)).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

/// Turns raw index pairs into valid updates for the evolving graph: a pair
/// that is an edge gets deleted, any other distinct pair gets inserted.
fn next_update(g: &Graph, a: usize, b: usize) -> Option<(UpdateKind, NodeId, NodeId)> {
    let cap = g.capacity();
    let (u, v) = (NodeId::from(a % cap), NodeId::from(b % cap));
    if u == v {
        return None;
    }
    let kind = if g.has_edge(u, v) { UpdateKind::Delete } else { UpdateKind::Insert };
    Some((kind, u, v))
}

fn sorted(v: &[NodeId]) -> BTreeSet<NodeId> {
    v.iter().copied().collect()
}

fn check_report(report: &UpdateReport, before: &CoreState, candidates: &[NodeId]) {
    for ch in &report.changed {
        assert_eq!(ch.old.abs_diff(ch.new), 1, "change of node {} is not a single step", ch.node);
        assert_eq!(ch.old, report.c, "only nodes at the pivot core move");
        assert_eq!(before.get(ch.node), ch.old);
    }
    // Nodes a search never reached never change.
    let vc = sorted(candidates);
    for v in report.changed_nodes() {
        assert!(vc.contains(&v), "node {v} changed without being a candidate");
    }
    assert!(report.recolor_rounds <= candidates.len() + 1);
    if report.kind == UpdateKind::Insert && before.get(report.u) == before.get(report.v) {
        let moved = report.changed_nodes();
        assert_eq!(moved.contains(&report.u), moved.contains(&report.v), "endpoints move together");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn decompose_matches_brute_force(g in graph_strategy(40)) {
        let cs = decompose(&g);
        prop_assert_eq!(&cs, &brute_force_core(&g));
        prop_assert_eq!(check_xy_bounds(&g, &cs), None);
        prop_assert!(check_nested_cores(&g, &cs).is_ok());
    }

    #[test]
    fn every_variant_tracks_the_oracle(
        g in graph_strategy(24),
        ops in proptest::collection::vec((0usize..64, 0usize..64), 1..40),
    ) {
        let mut runs: Vec<DynamicCore> = Algorithm::ALL.iter().map(|&a| DynamicCore::new(g.clone(), a)).collect();
        let mut shadow = g.clone();
        for (a, b) in ops {
            let Some((kind, u, v)) = next_update(&shadow, a, b) else { continue };
            match kind {
                UpdateKind::Insert => shadow.insert_edge(u, v).unwrap(),
                UpdateKind::Delete => shadow.delete_edge(u, v).unwrap(),
            }
            let truth = brute_force_core(&shadow);
            let mut changed_sets = Vec::new();
            let mut candidate_sets = Vec::new();
            for dc in &mut runs {
                let before = dc.cores().clone();
                let report = dc.apply(kind, u, v).unwrap();
                prop_assert_eq!(dc.cores(), &truth, "{} after {:?} ({}, {})", dc.algorithm(), kind, u, v);
                let cands = match dc.algorithm() {
                    Algorithm::Recompute => report.changed_nodes(),
                    Algorithm::Incremental(_) => dc.workspace().candidates().to_vec(),
                };
                check_report(&report, &before, &cands);
                changed_sets.push(report.changed_nodes());
                candidate_sets.push(sorted(&cands));
            }
            prop_assert!(changed_sets.windows(2).all(|w| w[0] == w[1]));
            prop_assert_eq!(check_xy_bounds(&shadow, &truth), None);
            // Order in Algorithm::ALL: B, N, X, Y, XY.
            let (nn, x, y, xy) = (&candidate_sets[1], &candidate_sets[2], &candidate_sets[3], &candidate_sets[4]);
            prop_assert!(xy.is_subset(x), "XY {:?} not within X {:?}", xy, x);
            prop_assert!(xy.is_subset(y), "XY {:?} not within Y {:?}", xy, y);
            prop_assert!(x.is_subset(nn));
            prop_assert!(y.is_subset(nn));
        }
    }

    #[test]
    fn basic_candidates_all_sit_at_the_pivot(
        g in graph_strategy(24),
        ops in proptest::collection::vec((0usize..64, 0usize..64), 1..20),
    ) {
        let mut dc = DynamicCore::new(g, Algorithm::Incremental(Variant::Basic));
        for (a, b) in ops {
            let Some((kind, u, v)) = next_update(dc.graph(), a, b) else { continue };
            let before = dc.cores().clone();
            let report = dc.apply(kind, u, v).unwrap();
            for &w in dc.workspace().candidates() {
                prop_assert_eq!(before.get(w), report.c);
            }
        }
    }

    #[test]
    fn recolor_fixpoint_ignores_candidate_order(
        g in graph_strategy(24),
        a in 0usize..64,
        b in 0usize..64,
        seed in any::<u64>(),
    ) {
        let Some((kind, u, v)) = next_update(&g, a, b) else { return Ok(()) };
        let cs = decompose(&g);
        let mut g2 = g.clone();
        let c = cs.get(u).min(cs.get(v));
        match kind {
            UpdateKind::Insert => g2.insert_edge(u, v).unwrap(),
            UpdateKind::Delete => g2.delete_edge(u, v).unwrap(),
        }
        let mut ws = UpdateWorkspace::new(g2.capacity());
        ws.begin(g2.capacity());
        let seed_node = if cs.get(u) <= cs.get(v) { u } else { v };
        color(&g2, &cs, &mut ws, seed_node, c);
        if kind == UpdateKind::Delete && cs.get(u) == cs.get(v) && !ws.is_colored(v) {
            ws.reset_visited();
            color(&g2, &cs, &mut ws, v, c);
        }
        let mut shuffled = ws.clone();
        shuffled.candidates_mut().shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let finish = |ws: &mut UpdateWorkspace| {
            match kind {
                UpdateKind::Insert => recolor_insert(&g2, &cs, ws, c),
                UpdateKind::Delete => recolor_delete(&g2, &cs, ws, c),
            }
            ws.colored_candidates().collect::<BTreeSet<_>>()
        };
        prop_assert_eq!(finish(&mut ws), finish(&mut shuffled));
    }

    #[test]
    fn relabeling_permutes_cores_and_changes(
        g in graph_strategy(30),
        seed in any::<u64>(),
        ops in proptest::collection::vec((0usize..64, 0usize..64), 1..10),
    ) {
        let perm = coremaint::generate::random_permutation(g.capacity(), seed);
        let h = g.permuted(&perm);
        let (cg, ch) = (decompose(&g), decompose(&h));
        for v in g.nodes() {
            prop_assert_eq!(cg.get(v), ch.get(perm[v.index()]));
        }
        let mut dg = DynamicCore::new(g, Algorithm::Incremental(Variant::XYPrune));
        let mut dh = DynamicCore::new(h, Algorithm::Incremental(Variant::XYPrune));
        for (a, b) in ops {
            let Some((kind, u, v)) = next_update(dg.graph(), a, b) else { continue };
            let rg = dg.apply(kind, u, v).unwrap();
            let rh = dh.apply(kind, perm[u.index()], perm[v.index()]).unwrap();
            let mut mapped: Vec<NodeId> = rg.changed_nodes().iter().map(|w| perm[w.index()]).collect();
            mapped.sort_unstable();
            prop_assert_eq!(mapped, rh.changed_nodes());
        }
    }

    #[test]
    fn node_removal_keeps_cores_exact(g in graph_strategy(24), victims in proptest::collection::vec(0usize..64, 1..5)) {
        for variant in Variant::ALL {
            let mut dc = DynamicCore::new(g.clone(), Algorithm::Incremental(variant));
            for &x in &victims {
                let w = NodeId::from(x % g.capacity());
                if !dc.graph().is_live(w) {
                    prop_assert!(dc.remove_node(w).is_err());
                    continue;
                }
                dc.remove_node(w).unwrap();
                prop_assert!(!dc.graph().is_live(w));
                prop_assert_eq!(dc.core(w), 0);
                prop_assert!(dc.graph().validate().is_ok());
                prop_assert_eq!(dc.cores(), &brute_force_core(dc.graph()));
            }
            let fresh = dc.add_node();
            prop_assert_eq!(fresh.index(), g.capacity());
            prop_assert_eq!(dc.core(fresh), 0);
        }
    }
}

#[test]
fn worked_small_cases() {
    // Triangle {0,1,2} plus pendant 3 on 2; insert (3, 0).
    let g = Graph::from_edges(4, [(n(0), n(1)), (n(1), n(2)), (n(2), n(0)), (n(2), n(3))]);
    for alg in Algorithm::ALL {
        let mut dc = DynamicCore::new(g.clone(), alg);
        let r = dc.insert_edge(n(3), n(0)).unwrap();
        assert_eq!(r.changed_nodes(), vec![n(3)], "{alg}");
        assert_eq!((r.changed[0].old, r.changed[0].new), (1, 2));
    }
    // Two isolated nodes joined.
    for alg in Algorithm::ALL {
        let mut dc = DynamicCore::new(Graph::with_nodes(2), alg);
        let r = dc.insert_edge(n(0), n(1)).unwrap();
        assert_eq!(r.changed_nodes(), vec![n(0), n(1)]);
        let r = dc.delete_edge(n(0), n(1)).unwrap();
        assert_eq!(r.changed_nodes(), vec![n(0), n(1)]);
        assert!(r.changed.iter().all(|ch| ch.new == 0));
    }
    // K4 minus an edge is a 2-core.
    for alg in Algorithm::ALL {
        let mut dc = DynamicCore::new(common::complete(4), alg);
        let r = dc.delete_edge(n(0), n(1)).unwrap();
        assert_eq!(r.changed_nodes(), vec![n(0), n(1), n(2), n(3)], "{alg}");
        assert!(r.changed.iter().all(|ch| ch.old == 3 && ch.new == 2));
    }
}

#[test]
fn update_errors_leave_state_untouched() {
    let g = Graph::from_edges(3, [(n(0), n(1))]);
    for alg in Algorithm::ALL {
        let mut dc = DynamicCore::new(g.clone(), alg);
        let before = dc.cores().clone();
        assert!(dc.insert_edge(n(0), n(1)).is_err());
        assert!(dc.insert_edge(n(2), n(2)).is_err());
        assert!(dc.delete_edge(n(1), n(2)).is_err());
        assert!(dc.insert_edge(n(0), n(7)).is_err());
        assert_eq!(dc.cores(), &before);
        assert_eq!(dc.graph().num_edges(), 1);
    }
}

/// Triangle {t1,t2,t3}, path t1 - b - a. Inserting (t2, a) lifts a and b
/// into the 2-core. Before the update a has core 1 and, counting the new
/// edge, one neighbor of higher core, so a search that stops at nodes with
/// `c` higher-core neighbors never leaves a.
#[test]
fn y_search_must_not_count_the_new_edge_at_the_seed() {
    let (t1, t2, t3, a, b) = (n(0), n(1), n(2), n(3), n(4));
    let g = Graph::from_edges(5, [(t1, t2), (t2, t3), (t3, t1), (a, b), (b, t1)]);
    let cs = decompose(&g);
    assert_eq!((cs.get(a), cs.get(b)), (1, 1));
    let mut g2 = g.clone();
    g2.insert_edge(t2, a).unwrap();

    let mut ws = UpdateWorkspace::new(5);
    ws.begin(5);
    y_prune_color(&g2, &cs, &mut ws, a, None, 1);
    assert_eq!(ws.candidates(), &[a]);
    recolor_insert(&g2, &cs, &mut ws, 1);
    assert_eq!(ws.colored_candidates().count(), 0, "stopping at the seed loses b");

    for variant in [Variant::YPrune, Variant::XYPrune] {
        let mut dc = DynamicCore::new(g.clone(), Algorithm::Incremental(variant));
        let r = dc.insert_edge(t2, a).unwrap();
        assert_eq!(r.changed_nodes(), vec![a, b], "{variant}");
        assert_eq!(dc.cores(), &decompose(dc.graph()));
    }
}

#[test]
fn long_mixed_stream_on_generated_graph() {
    let g = coremaint::generate::generate_power_law(3000, 4, 9).unwrap();
    let cfg = coremaint::harness::TrialConfig {
        num_deletions: 300,
        num_insertions: 300,
        algorithms: Algorithm::ALL.to_vec(),
        rng_seed: 3,
        warmup: 0,
    };
    let report = coremaint::harness::run_trial(&g, &cfg).unwrap();
    let mut shadow = g.clone();
    for up in &report.stream.updates {
        match up.kind {
            UpdateKind::Insert => shadow.insert_edge(up.u, up.v).unwrap(),
            UpdateKind::Delete => shadow.delete_edge(up.u, up.v).unwrap(),
        }
    }
    assert_eq!(report.final_cores(), &brute_force_core(&shadow));
}
