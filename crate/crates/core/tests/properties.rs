//! Property tests over randomly generated trees and graphs.

use proptest::prelude::*;

use leafcut::{
    bipartition, cut_leaves_labeling, heights, simulate, validate_labeling, GameGraph, Labeling,
    Outcome, Player, SpeechMode,
};

const SIM: SpeechMode = SpeechMode::Simultaneous;
const ALT_A: SpeechMode = SpeechMode::Alternating { starter: Player::A };

/// A random labeled tree on 2..=9 vertices, as a Prüfer sequence plus a
/// relabeling permutation.
fn tree_strategy() -> impl Strategy<Value = (usize, Vec<usize>, Vec<usize>)> {
    (2usize..=9).prop_flat_map(|n| {
        (
            Just(n),
            proptest::collection::vec(0..n, if n >= 3 { n - 2 } else { 0 }),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        )
    })
}

fn tree_edges(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    if n == 2 {
        return vec![(0, 1)];
    }
    let mut deg = vec![1u32; n];
    for &s in seq {
        deg[s] += 1;
    }
    let mut ptr = 0;
    while deg[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        edges.push((leaf, s));
        deg[s] -= 1;
        if deg[s] == 1 && s < ptr {
            leaf = s;
        } else {
            ptr += 1;
            while deg[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    edges
}

fn graph_with_names(edges: &[(usize, usize)], names: &[String]) -> GameGraph {
    let pairs: Vec<(&str, &str)> = edges
        .iter()
        .map(|&(u, v)| (names[u].as_str(), names[v].as_str()))
        .collect();
    GameGraph::undirected(&[], &pairs).expect("simple")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Heights are intrinsic: any relabeling permutes the table.
    #[test]
    fn heights_survive_relabeling((n, seq, perm) in tree_strategy()) {
        let edges = tree_edges(n, &seq);
        let base_names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let renamed: Vec<String> = perm.iter().map(|&p| format!("y{p}")).collect();
        let g1 = graph_with_names(&edges, &base_names);
        let g2 = graph_with_names(&edges, &renamed);
        let h1 = heights(&g1).unwrap();
        let h2 = heights(&g2).unwrap();
        for ((u, v), value) in h1.pairs() {
            let iu: usize = u[1..].parse().unwrap();
            let iv: usize = v[1..].parse().unwrap();
            prop_assert_eq!(h2.h(&format!("y{}", perm[iu]), &format!("y{}", perm[iv])), Some(value));
        }
    }

    /// The two bipartition sides swap when anchored across an edge.
    #[test]
    fn bipartition_swaps_across_edges((n, seq, _) in tree_strategy()) {
        let edges = tree_edges(n, &seq);
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let g = graph_with_names(&edges, &names);
        let (u, v) = g.edges().next().map(|(u, v)| (u.to_owned(), v.to_owned())).unwrap();
        let p1 = bipartition(&g, &u).unwrap();
        let p2 = bipartition(&g, &v).unwrap();
        prop_assert_eq!(&p1.side_a, &p2.side_b);
        prop_assert_eq!(&p1.side_b, &p2.side_a);
    }

    /// The canonical labeling validates in both modes, and labels are
    /// bounded by the vertex count.
    #[test]
    fn cut_leaves_always_validates((n, seq, _) in tree_strategy()) {
        let edges = tree_edges(n, &seq);
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let g = graph_with_names(&edges, &names);
        for mode in [SIM, ALT_A] {
            let lab = cut_leaves_labeling(&g, mode, "x0").unwrap();
            prop_assert!(validate_labeling(&g, mode, &lab, "x0").unwrap().is_empty());
            for row in lab.rows() {
                prop_assert!(row.label as usize <= 2 * n);
            }
        }
    }

    /// Labeling JSON round-trips losslessly.
    #[test]
    fn labeling_json_round_trip((n, seq, _) in tree_strategy()) {
        let edges = tree_edges(n, &seq);
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let g = graph_with_names(&edges, &names);
        let lab = cut_leaves_labeling(&g, SIM, "x0").unwrap();
        let json = serde_json::to_string(&lab).unwrap();
        let back: Labeling = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(lab, back);
    }

    /// Edge-list text round-trips losslessly.
    #[test]
    fn edge_list_round_trip((n, seq, _) in tree_strategy()) {
        let edges = tree_edges(n, &seq);
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let g = graph_with_names(&edges, &names);
        let back = GameGraph::parse(&g.to_edge_list()).unwrap();
        prop_assert_eq!(g, back);
    }

    /// On trees, every silent step before the first announcement strictly
    /// shrinks the surviving world set, and the trace's outcome matches
    /// the placement. Adding a detached component changes nothing.
    #[test]
    fn oracle_trace_monotone_and_component_blind((n, seq, _) in tree_strategy(), k in 0usize..4) {
        let edges = tree_edges(n, &seq);
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let g = graph_with_names(&edges, &names);
        let (a, b) = {
            let (u, v) = g.edges().nth(k % g.edge_count()).unwrap();
            (u.to_owned(), v.to_owned())
        };
        for mode in [SIM, ALT_A] {
            let trace = simulate(&g, &a, &b, mode).unwrap();
            prop_assert_ne!(trace.outcome, Outcome::Never);
            let mut last = usize::MAX;
            for step in &trace.steps {
                prop_assert!(step.surviving.len() <= last);
                if step.announcements.is_empty() {
                    prop_assert!(!step.eliminated.is_empty());
                }
                last = step.surviving.len();
            }
            // A far-away triangle must not affect the trace or outcome.
            let mut lines = g.to_edge_list();
            lines.push_str("z1 z2\nz2 z3\nz3 z1\n");
            let bigger = GameGraph::parse(&lines).unwrap();
            let same = simulate(&bigger, &a, &b, mode).unwrap();
            prop_assert_eq!(same.outcome, trace.outcome);
            prop_assert_eq!(same.steps.len(), trace.steps.len());
        }
    }

    /// Trees are guessable from every placement; with an extra chord the
    /// graph acquires a stalling placement (checked on small cycles glued
    /// to the tree via the mask sweep elsewhere; here: outcome equality of
    /// the trace-producing and outcome-only entry points).
    #[test]
    fn outcome_only_path_agrees_with_trace((n, seq, _) in tree_strategy()) {
        let edges = tree_edges(n, &seq);
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let g = graph_with_names(&edges, &names);
        // Disconnected input: add a detached path.
        let mut lines = g.to_edge_list();
        lines.push_str("z1 z2\nz2 z3\n");
        let disconnected = GameGraph::parse(&lines).unwrap();
        for (u, v) in disconnected.edges() {
            for mode in [SIM, ALT_A] {
                let trace = simulate(&disconnected, u, v, mode).unwrap();
                let outcome =
                    leafcut::oracle::simulate_outcome(&disconnected, u, v, mode).unwrap();
                prop_assert_eq!(trace.outcome, outcome);
            }
        }
    }
}
