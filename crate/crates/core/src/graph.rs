//! Graph representation, structural predicates, and rooted-height tables.
//!
//! Vertices are opaque whitespace-free string tokens. All deterministic
//! ordering (indices, serialized output, iteration) is lexicographic by
//! vertex name.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use crate::error::Error;
use crate::Result;

/// A finite simple graph, optionally edge-oriented.
///
/// Undirected form: edges are unordered pairs, no duplicates, no self-loops.
/// Directed form: edges are ordered pairs; `(u, v)` and `(v, u)` may
/// coexist, but neither may repeat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameGraph {
    directed: bool,
    /// Vertex names, sorted lexicographically; index == lexicographic rank.
    names: Vec<String>,
    index: HashMap<String, usize>,
    /// Undirected adjacency (for directed graphs: the underlying graph,
    /// in-neighbors and out-neighbors merged, deduplicated).
    adj: Vec<Vec<usize>>,
    /// Directed only; empty vectors for undirected graphs.
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    /// Undirected: normalized (min, max) index pairs. Directed: (tail, head).
    edges: Vec<(usize, usize)>,
}

impl GameGraph {
    /// Builds an undirected graph from named edges. Extra isolated vertices
    /// may be listed in `vertices`; edge endpoints are declared implicitly.
    pub fn undirected(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        Self::build(false, vertices, edges)
    }

    /// Builds a directed graph; each pair is `(tail, head)`.
    pub fn directed(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        Self::build(true, vertices, edges)
    }

    fn build(directed: bool, vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let mut names: BTreeSet<&str> = vertices.iter().copied().collect();
        for (u, v) in edges {
            names.insert(u);
            names.insert(v);
        }
        let names: Vec<String> = names.into_iter().map(str::to_owned).collect();
        let index: HashMap<String, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();

        let n = names.len();
        let mut g = GameGraph {
            directed,
            names,
            index,
            adj: vec![Vec::new(); n],
            out: vec![Vec::new(); n],
            inn: vec![Vec::new(); n],
            edges: Vec::with_capacity(edges.len()),
        };

        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        for (u, v) in edges {
            let ui = g.index[*u];
            let vi = g.index[*v];
            if ui == vi {
                return Err(Error::SelfLoop {
                    vertex: (*u).to_owned(),
                });
            }
            let key = if directed {
                (ui, vi)
            } else {
                (ui.min(vi), ui.max(vi))
            };
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge {
                    u: (*u).to_owned(),
                    v: (*v).to_owned(),
                });
            }
            g.edges.push(key);
            if directed {
                g.out[ui].push(vi);
                g.inn[vi].push(ui);
                if !g.adj[ui].contains(&vi) {
                    g.adj[ui].push(vi);
                    g.adj[vi].push(ui);
                }
            } else {
                g.adj[ui].push(vi);
                g.adj[vi].push(ui);
            }
        }
        for list in g
            .adj
            .iter_mut()
            .chain(g.out.iter_mut())
            .chain(g.inn.iter_mut())
        {
            list.sort_unstable();
        }
        g.edges.sort_unstable();
        Ok(g)
    }

    /// Parses the edge-list text format: one edge per line, `u v` for
    /// undirected, `u > v` for directed, a single token for an isolated
    /// vertex. Blank lines and `#` comments are ignored. Directed and
    /// undirected edge lines may not be mixed.
    pub fn parse(text: &str) -> Result<Self> {
        let mut vertices: Vec<String> = Vec::new();
        let mut undirected_edges: Vec<(String, String)> = Vec::new();
        let mut directed_edges: Vec<(String, String)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let tokens: Vec<&str> = content.split_whitespace().collect();
            match tokens.as_slice() {
                [] => {}
                [v] => vertices.push((*v).to_owned()),
                [u, v] => undirected_edges.push(((*u).to_owned(), (*v).to_owned())),
                [u, ">", v] => directed_edges.push(((*u).to_owned(), (*v).to_owned())),
                _ => {
                    return Err(Error::Parse {
                        line,
                        message: format!(
                            "expected `u v`, `u > v`, or a single vertex, got `{}`",
                            content.trim()
                        ),
                    })
                }
            }
        }
        if !undirected_edges.is_empty() && !directed_edges.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "mixed directed and undirected edge lines".to_owned(),
            });
        }
        let directed = !directed_edges.is_empty();
        let edges = if directed {
            directed_edges
        } else {
            undirected_edges
        };
        let vertex_refs: Vec<&str> = vertices.iter().map(String::as_str).collect();
        let edge_refs: Vec<(&str, &str)> = edges
            .iter()
            .map(|(u, v)| (u.as_str(), v.as_str()))
            .collect();
        Self::build(directed, &vertex_refs, &edge_refs)
    }

    /// Renders the graph back to the edge-list format, deterministically.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for &(u, v) in &self.edges {
            if self.directed {
                let _ = writeln!(s, "{} > {}", self.names[u], self.names[v]);
            } else {
                let _ = writeln!(s, "{} {}", self.names[u], self.names[v]);
            }
        }
        for (i, name) in self.names.iter().enumerate() {
            if self.adj[i].is_empty() {
                let _ = writeln!(s, "{name}");
            }
        }
        s
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertex names in lexicographic order.
    pub fn vertices(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    pub fn has_vertex(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Edges as name pairs: normalized `(min, max)` when undirected,
    /// `(tail, head)` when directed. Sorted.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.edges
            .iter()
            .map(move |&(u, v)| (self.names[u].as_str(), self.names[v].as_str()))
    }

    /// Neighbors in the underlying undirected graph, sorted by name.
    pub fn neighbors(&self, name: &str) -> Result<impl Iterator<Item = &str>> {
        let i = self.idx(name)?;
        Ok(self.adj[i].iter().map(move |&j| self.names[j].as_str()))
    }

    pub fn degree(&self, name: &str) -> Result<usize> {
        Ok(self.adj[self.idx(name)?].len())
    }

    /// True if `{u, v}` is an edge of the underlying undirected graph.
    pub fn has_edge(&self, u: &str, v: &str) -> bool {
        match (self.idx(u), self.idx(v)) {
            (Ok(ui), Ok(vi)) => self.adj[ui].binary_search(&vi).is_ok(),
            _ => false,
        }
    }

    /// True if the directed arc `tail -> head` exists.
    pub fn has_arc(&self, tail: &str, head: &str) -> bool {
        match (self.idx(tail), self.idx(head)) {
            (Ok(t), Ok(h)) => self.out[t].binary_search(&h).is_ok(),
            _ => false,
        }
    }

    /// Returns a directed graph with every arc reversed.
    pub fn reversed(&self) -> GameGraph {
        let mut g = self.clone();
        std::mem::swap(&mut g.out, &mut g.inn);
        g.edges = g.edges.iter().map(|&(u, v)| (v, u)).collect();
        g.edges.sort_unstable();
        g
    }

    /// The induced subgraph on the connected component (weak component for
    /// directed graphs) containing `v`.
    pub fn component_of(&self, v: &str) -> Result<GameGraph> {
        let start = self.idx(v)?;
        let mut in_comp = vec![false; self.names.len()];
        let mut stack = vec![start];
        in_comp[start] = true;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !in_comp[w] {
                    in_comp[w] = true;
                    stack.push(w);
                }
            }
        }
        self.induced(&in_comp)
    }

    /// The induced subgraph on the given vertex names.
    pub fn induced_on<'a>(&self, keep: impl IntoIterator<Item = &'a str>) -> Result<GameGraph> {
        let mut mask = vec![false; self.names.len()];
        for name in keep {
            mask[self.idx(name)?] = true;
        }
        self.induced(&mask)
    }

    fn induced(&self, mask: &[bool]) -> Result<GameGraph> {
        let vertices: Vec<&str> = self
            .names
            .iter()
            .enumerate()
            .filter(|(i, _)| mask[*i])
            .map(|(_, n)| n.as_str())
            .collect();
        let edges: Vec<(&str, &str)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| mask[u] && mask[v])
            .map(|&(u, v)| (self.names[u].as_str(), self.names[v].as_str()))
            .collect();
        Self::build(self.directed, &vertices, &edges)
    }

    pub(crate) fn idx(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex {
                name: name.to_owned(),
            })
    }

    pub(crate) fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub(crate) fn adj_idx(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub(crate) fn out_idx(&self, i: usize) -> &[usize] {
        &self.out[i]
    }

    pub(crate) fn in_idx(&self, i: usize) -> &[usize] {
        &self.inn[i]
    }

    pub(crate) fn edge_idx_pairs(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub(crate) fn connected(&self) -> bool {
        if self.names.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.names.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.names.len()
    }
}

/// True iff the undirected graph is connected and acyclic.
pub fn is_tree(g: &GameGraph) -> Result<bool> {
    if g.is_directed() {
        return Err(Error::RequiresUndirected {
            operation: "is_tree".to_owned(),
        });
    }
    Ok(g.vertex_count() > 0 && g.connected() && g.edge_count() == g.vertex_count() - 1)
}

pub(crate) fn ensure_tree(g: &GameGraph, operation: &str) -> Result<()> {
    if g.is_directed() {
        return Err(Error::RequiresUndirected {
            operation: operation.to_owned(),
        });
    }
    if g.vertex_count() == 0 {
        return Err(Error::NotATree {
            detail: "graph has no vertices".to_owned(),
        });
    }
    if !g.connected() {
        let mut seen = vec![false; g.vertex_count()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &w in &g.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        let unreachable = seen.iter().position(|&s| !s).unwrap();
        return Err(Error::NotATree {
            detail: format!(
                "disconnected: vertex `{}` is unreachable from `{}`",
                g.names[unreachable], g.names[0]
            ),
        });
    }
    if g.edge_count() != g.vertex_count() - 1 {
        return Err(Error::NotATree {
            detail: format!(
                "contains a cycle ({} vertices, {} edges)",
                g.vertex_count(),
                g.edge_count()
            ),
        });
    }
    Ok(())
}

/// Two-coloring of a tree with the anchor on side A.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub side_a: BTreeSet<String>,
    pub side_b: BTreeSet<String>,
}

impl Bipartition {
    pub fn side_of(&self, v: &str) -> Option<crate::mode::Player> {
        if self.side_a.contains(v) {
            Some(crate::mode::Player::A)
        } else if self.side_b.contains(v) {
            Some(crate::mode::Player::B)
        } else {
            None
        }
    }
}

/// 2-colors a tree, anchor on side A. Deterministic for a given (g, anchor).
pub fn bipartition(g: &GameGraph, anchor: &str) -> Result<Bipartition> {
    ensure_tree(g, "bipartition")?;
    let classes = bipartition_classes(g, g.idx(anchor)?);
    let mut side_a = BTreeSet::new();
    let mut side_b = BTreeSet::new();
    for (i, &in_a) in classes.iter().enumerate() {
        if in_a {
            side_a.insert(g.names[i].clone());
        } else {
            side_b.insert(g.names[i].clone());
        }
    }
    Ok(Bipartition { side_a, side_b })
}

/// Index-level 2-coloring by BFS parity; `true` marks the anchor's class.
/// Assumes the component of `anchor` is bipartite (always true on trees).
pub(crate) fn bipartition_classes(g: &GameGraph, anchor: usize) -> Vec<bool> {
    let mut in_a = vec![false; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    let mut frontier = vec![anchor];
    seen[anchor] = true;
    in_a[anchor] = true;
    let mut a_side = true;
    while !frontier.is_empty() {
        a_side = !a_side;
        let mut next = Vec::new();
        for &u in &frontier {
            for &w in &g.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    in_a[w] = a_side;
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    in_a
}

/// Rooted-height table of a tree: for each ordered adjacent pair `(u, v)`,
/// `h(u, v)` counts the vertices on the longest downward path from `v` in
/// the tree rooted at `u`. Equivalently it is the edge count of the longest
/// simple path that starts at `u` and continues through `v`. A leaf hanging
/// off `u` has height 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightTable {
    names: Vec<String>,
    table: HashMap<(usize, usize), u32>,
}

impl HeightTable {
    /// Height of `v`'s subtree seen from its neighbor `u`, or `None` if the
    /// vertices are not adjacent.
    pub fn h(&self, u: &str, v: &str) -> Option<u32> {
        let ui = self.names.binary_search_by(|n| n.as_str().cmp(u)).ok()?;
        let vi = self.names.binary_search_by(|n| n.as_str().cmp(v)).ok()?;
        self.table.get(&(ui, vi)).copied()
    }

    /// All ordered adjacent pairs with their heights, sorted by name pair.
    pub fn pairs(&self) -> Vec<((&str, &str), u32)> {
        let mut out: Vec<((&str, &str), u32)> = self
            .table
            .iter()
            .map(|(&(u, v), &h)| ((self.names[u].as_str(), self.names[v].as_str()), h))
            .collect();
        out.sort_unstable();
        out
    }
}

/// Computes the full rooted-height table of a tree in linear time by
/// two-pass rerooting: a bottom-up pass fills heights toward the root, a
/// top-down pass fills the reverse direction using top-two maxima.
pub fn heights(g: &GameGraph) -> Result<HeightTable> {
    ensure_tree(g, "heights")?;
    let n = g.vertex_count();
    let mut table: HashMap<(usize, usize), u32> = HashMap::with_capacity(2 * n);
    if n > 1 {
        // Iterative DFS order from vertex 0.
        let root = 0usize;
        let mut parent = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![root];
        parent[root] = root;
        while let Some(u) = stack.pop() {
            order.push(u);
            for &w in g.adj_idx(u) {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    stack.push(w);
                }
            }
        }
        // Bottom-up: h(parent(v), v).
        for &v in order.iter().rev() {
            if v == root {
                continue;
            }
            let mut best = 0;
            for &w in g.adj_idx(v) {
                if w != parent[v] {
                    best = best.max(table[&(v, w)]);
                }
            }
            table.insert((parent[v], v), best + 1);
        }
        // Top-down: h(v, parent(v)), via top-two heights around the parent.
        for &p in order.iter() {
            // Heights of all branches hanging off p: children (downward
            // entries already present) plus the parent side (filled by the
            // time p is visited, since `order` is a preorder).
            let mut top1 = 0u32;
            let mut top1_at = usize::MAX;
            let mut top2 = 0u32;
            for &w in g.adj_idx(p) {
                let h = table[&(p, w)];
                if h > top1 {
                    top2 = top1;
                    top1 = h;
                    top1_at = w;
                } else if h > top2 {
                    top2 = h;
                }
            }
            for &v in g.adj_idx(p) {
                if v == root || parent[v] != p {
                    continue;
                }
                let best = if v == top1_at { top2 } else { top1 };
                table.insert((v, p), best + 1);
            }
        }
    }
    Ok(HeightTable {
        names: g.names.clone(),
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle for heights: DFS over all simple paths starting at
    /// `u` whose second vertex is `v`, returning the maximum edge count.
    fn longest_path_from(g: &GameGraph, u: &str, v: &str) -> u32 {
        fn dfs(g: &GameGraph, at: usize, visited: &mut Vec<bool>) -> u32 {
            let mut best = 0;
            for &w in g.adj_idx(at) {
                if !visited[w] {
                    visited[w] = true;
                    best = best.max(1 + dfs(g, w, visited));
                    visited[w] = false;
                }
            }
            best
        }
        let ui = g.idx(u).unwrap();
        let vi = g.idx(v).unwrap();
        let mut visited = vec![false; g.vertex_count()];
        visited[ui] = true;
        visited[vi] = true;
        1 + dfs(g, vi, &mut visited)
    }

    fn path(n: usize) -> GameGraph {
        let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let edges: Vec<(&str, &str)> = names
            .windows(2)
            .map(|w| (w[0].as_str(), w[1].as_str()))
            .collect();
        GameGraph::undirected(&[], &edges).unwrap()
    }

    pub(crate) fn reference_tree() -> GameGraph {
        GameGraph::parse(include_str!("../../../fixtures/fig1.edges")).unwrap()
    }

    #[test]
    fn single_edge_is_tree() {
        let g = GameGraph::undirected(&[], &[("a", "b")]).unwrap();
        assert!(is_tree(&g).unwrap());
    }

    #[test]
    fn triangle_is_not_tree() {
        let g = GameGraph::undirected(&[], &[("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
        assert!(!is_tree(&g).unwrap());
    }

    #[test]
    fn reference_tree_is_a_tree() {
        let g = reference_tree();
        assert_eq!(g.vertex_count(), 22);
        assert_eq!(g.edge_count(), 21);
        assert!(is_tree(&g).unwrap());
    }

    #[test]
    fn disconnected_is_not_tree() {
        let g = GameGraph::undirected(&[], &[("a", "b"), ("c", "d")]).unwrap();
        assert!(!is_tree(&g).unwrap());
        assert!(matches!(
            ensure_tree(&g, "test"),
            Err(Error::NotATree { .. })
        ));
    }

    #[test]
    fn bipartition_path() {
        let g = path(3);
        let b = bipartition(&g, "v1").unwrap();
        assert_eq!(
            b.side_a,
            ["v1", "v3"].iter().map(|s| s.to_string()).collect()
        );
        assert_eq!(b.side_b, ["v2"].iter().map(|s| s.to_string()).collect());
    }

    #[test]
    fn bipartition_single_edge_anchor_b() {
        let g = GameGraph::undirected(&[], &[("a", "b")]).unwrap();
        let p = bipartition(&g, "b").unwrap();
        assert!(p.side_a.contains("b"));
        assert!(p.side_b.contains("a"));
    }

    #[test]
    fn bipartition_sides_swap_at_adjacent_anchor() {
        let g = reference_tree();
        let p1 = bipartition(&g, "w8").unwrap();
        let p2 = bipartition(&g, "b5").unwrap();
        assert_eq!(p1.side_a, p2.side_b);
        assert_eq!(p1.side_b, p2.side_a);
    }

    #[test]
    fn bipartition_rejects_non_tree() {
        let g = GameGraph::undirected(&[], &[("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
        assert!(bipartition(&g, "a").is_err());
    }

    #[test]
    fn reference_tree_class_split() {
        let g = reference_tree();
        let p = bipartition(&g, "w8").unwrap();
        assert!(p.side_a.iter().all(|v| v.starts_with('w')));
        assert!(p.side_b.iter().all(|v| v.starts_with('b')));
        assert_eq!(p.side_a.len(), 12);
        assert_eq!(p.side_b.len(), 10);
    }

    #[test]
    fn heights_path3() {
        let g = path(3);
        let h = heights(&g).unwrap();
        assert_eq!(h.h("v2", "v1"), Some(1));
        assert_eq!(h.h("v1", "v2"), Some(2));
        assert_eq!(h.h("v2", "v3"), Some(1));
        assert_eq!(h.h("v3", "v2"), Some(2));
        assert_eq!(h.h("v1", "v3"), None);
    }

    #[test]
    fn heights_single_edge() {
        let g = GameGraph::undirected(&[], &[("a", "b")]).unwrap();
        let h = heights(&g).unwrap();
        assert_eq!(h.h("a", "b"), Some(1));
        assert_eq!(h.h("b", "a"), Some(1));
    }

    #[test]
    fn heights_path4_middle() {
        let g = path(4);
        let h = heights(&g).unwrap();
        assert_eq!(h.h("v2", "v3"), Some(2));
        assert_eq!(h.h("v3", "v2"), Some(2));
    }

    #[test]
    fn heights_match_longest_path_enumeration() {
        for g in [path(2), path(5), path(9), reference_tree()] {
            let h = heights(&g).unwrap();
            for ((u, v), value) in h.pairs() {
                assert_eq!(value, longest_path_from(&g, u, v), "h({u},{v})");
            }
        }
    }

    #[test]
    fn heights_bounded_by_vertex_count() {
        let g = reference_tree();
        let h = heights(&g).unwrap();
        let n = g.vertex_count() as u32;
        for (_, value) in h.pairs() {
            assert!(value < n);
        }
        // Equality is reached exactly on a path graph, at the far end.
        let p = path(6);
        let hp = heights(&p).unwrap();
        assert_eq!(hp.h("v1", "v2"), Some(5));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!(
            GameGraph::parse("a b c d"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            GameGraph::parse("a b\nc > d"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn parse_comments_and_isolated() {
        let g = GameGraph::parse("# header\n\na b # trailing\nlonely\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_vertex("lonely"));
    }

    #[test]
    fn parse_directed() {
        let g = GameGraph::parse("u > v\nv > u\nu > w\n").unwrap();
        assert!(g.is_directed());
        assert!(g.has_arc("u", "v"));
        assert!(g.has_arc("v", "u"));
        assert!(!g.has_arc("w", "u"));
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn rejects_self_loop_and_duplicate() {
        assert!(matches!(
            GameGraph::undirected(&[], &[("a", "a")]),
            Err(Error::SelfLoop { .. })
        ));
        assert!(matches!(
            GameGraph::undirected(&[], &[("a", "b"), ("b", "a")]),
            Err(Error::DuplicateEdge { .. })
        ));
        assert!(matches!(
            GameGraph::directed(&[], &[("a", "b"), ("a", "b")]),
            Err(Error::DuplicateEdge { .. })
        ));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = reference_tree();
        let again = GameGraph::parse(&g.to_edge_list()).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn component_restriction() {
        let g = GameGraph::undirected(&[], &[("a", "b"), ("c", "d"), ("d", "e")]).unwrap();
        let c = g.component_of("d").unwrap();
        assert_eq!(c.vertex_count(), 3);
        assert!(c.has_edge("c", "d") && c.has_edge("d", "e"));
    }
}
