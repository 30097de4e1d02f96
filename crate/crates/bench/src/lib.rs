//! Benchmark-only crate; see `benches/engine.rs`.

use rand::prelude::*;

use leafcut::GameGraph;

/// A uniformly random labeled tree on `n` vertices (random Prüfer
/// sequence), vertices named `x0..x{n-1}`.
pub fn random_tree(n: usize, rng: &mut impl Rng) -> GameGraph {
    assert!(n >= 2);
    let seq: Vec<usize> = (0..n.saturating_sub(2))
        .map(|_| rng.gen_range(0..n))
        .collect();
    let mut deg = vec![1u32; n];
    for &s in &seq {
        deg[s] += 1;
    }
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(n - 1);
    if n == 2 {
        edges.push((0, 1));
    } else {
        let mut ptr = 0;
        while deg[ptr] != 1 {
            ptr += 1;
        }
        let mut leaf = ptr;
        for &s in &seq {
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
    }
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let pairs: Vec<(&str, &str)> = edges
        .iter()
        .map(|&(u, v)| (names[u].as_str(), names[v].as_str()))
        .collect();
    GameGraph::undirected(&[], &pairs).expect("simple")
}

/// A random simple digraph on `n` vertices with arc probability 1/2.
pub fn random_digraph(n: usize, rng: &mut impl Rng) -> GameGraph {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut arcs: Vec<(&str, &str)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(0.5) {
                arcs.push((names[i].as_str(), names[j].as_str()));
            }
        }
    }
    GameGraph::directed(&names.iter().map(String::as_str).collect::<Vec<_>>(), &arcs)
        .expect("simple")
}
