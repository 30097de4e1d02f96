//! The cutting-off-leaves edge labeling and everything derived from it.
//!
//! A labeling decorates every tree edge with one or two guess records: a
//! direction (toward the vertex whose occupant announces first) and the
//! announcement time. The canonical labeling is produced by iterated leaf
//! pruning; arbitrary labelings can be validated against the structural
//! invariants that any correct strategy must satisfy, and every valid
//! labeling can be compiled into a per-player playbook.
//!
//! An edge may carry two records in two shapes: a `both` row (both players
//! announce at the same tick — only possible when speaking simultaneously),
//! or a *split pair* of two opposite rows with distinct labels, which is how
//! a simultaneous double guess is rescheduled onto an alternating clock.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::{bipartition_classes, ensure_tree, GameGraph};
use crate::mode::{Player, SpeechMode};
use crate::Result;

/// Which endpoint(s) of a normalized row the edge points into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Toward the row's first endpoint.
    U,
    /// Toward the row's second endpoint.
    V,
    /// Toward both endpoints at once (a simultaneous double guess).
    Both,
}

/// One guess record: edge, direction, announcement time.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LabelRow {
    pub u: String,
    pub v: String,
    pub direction: Direction,
    pub label: u32,
}

impl LabelRow {
    pub fn new(u: &str, v: &str, direction: Direction, label: u32) -> LabelRow {
        let mut row = LabelRow {
            u: u.to_owned(),
            v: v.to_owned(),
            direction,
            label,
        };
        row.normalize();
        row
    }

    fn normalize(&mut self) {
        if self.u > self.v {
            std::mem::swap(&mut self.u, &mut self.v);
            self.direction = match self.direction {
                Direction::U => Direction::V,
                Direction::V => Direction::U,
                Direction::Both => Direction::Both,
            };
        }
    }

    /// Arcs of this row as (tail, head, label).
    pub(crate) fn arcs(&self) -> impl Iterator<Item = (&str, &str, u32)> {
        let (u, v, l) = (self.u.as_str(), self.v.as_str(), self.label);
        let pair: [Option<(&str, &str, u32)>; 2] = match self.direction {
            Direction::U => [Some((v, u, l)), None],
            Direction::V => [Some((u, v, l)), None],
            Direction::Both => [Some((u, v, l)), Some((v, u, l))],
        };
        pair.into_iter().flatten()
    }
}

#[derive(Serialize, Deserialize)]
struct RowRepr {
    edge: [String; 2],
    direction: Direction,
    label: u32,
}

/// A set of guess records, canonically ordered. Serializes as a JSON array
/// of `{"edge": [u, v], "direction": "u"|"v"|"both", "label": n}` rows.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Labeling {
    rows: Vec<LabelRow>,
}

impl Labeling {
    pub fn from_rows(mut rows: Vec<LabelRow>) -> Labeling {
        for row in &mut rows {
            row.normalize();
        }
        rows.sort_unstable();
        Labeling { rows }
    }

    pub fn rows(&self) -> &[LabelRow] {
        &self.rows
    }

    /// All arcs (tail, head, label); a `both` row contributes two arcs.
    pub fn arcs(&self) -> impl Iterator<Item = (&str, &str, u32)> {
        self.rows.iter().flat_map(LabelRow::arcs)
    }

    /// Announcement times on the edge `{first, second}`, as
    /// `(toward_first, toward_second)`. `None` if the edge carries no row.
    pub fn guess_times(&self, first: &str, second: &str) -> Option<(Option<u32>, Option<u32>)> {
        let mut toward_first = None;
        let mut toward_second = None;
        let mut found = false;
        for row in &self.rows {
            if (row.u == first && row.v == second) || (row.u == second && row.v == first) {
                for (_, head, label) in row.arcs() {
                    if head == first {
                        toward_first = Some(label);
                    } else {
                        toward_second = Some(label);
                    }
                }
                found = true;
            }
        }
        if found {
            Some((toward_first, toward_second))
        } else {
            None
        }
    }

    /// The unique outgoing arc of `vertex`, as (head, label), if any.
    /// Meaningful on validated labelings (at most one outgoing edge).
    pub fn outgoing(&self, vertex: &str) -> Option<(&str, u32)> {
        self.arcs()
            .find(|(tail, _, _)| *tail == vertex)
            .map(|(_, head, label)| (head, label))
    }

    /// Labels of arcs pointing into `vertex`.
    pub fn incoming(&self, vertex: &str) -> Vec<(&str, u32)> {
        let mut v: Vec<(&str, u32)> = self
            .arcs()
            .filter(|(_, head, _)| *head == vertex)
            .map(|(tail, _, label)| (tail, label))
            .collect();
        v.sort_unstable();
        v
    }

    /// GraphViz export: one arc per directed row, `dir=both` on double
    /// guesses, edge labels carrying the announcement times.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph labeling {\n");
        for row in &self.rows {
            let line = match row.direction {
                Direction::U => {
                    format!("  \"{}\" -> \"{}\" [label={}];\n", row.v, row.u, row.label)
                }
                Direction::V => {
                    format!("  \"{}\" -> \"{}\" [label={}];\n", row.u, row.v, row.label)
                }
                Direction::Both => format!(
                    "  \"{}\" -> \"{}\" [label={}, dir=both];\n",
                    row.u, row.v, row.label
                ),
            };
            s.push_str(&line);
        }
        s.push_str("}\n");
        s
    }
}

impl Serialize for Labeling {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let repr: Vec<RowRepr> = self
            .rows
            .iter()
            .map(|r| RowRepr {
                edge: [r.u.clone(), r.v.clone()],
                direction: r.direction,
                label: r.label,
            })
            .collect();
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Labeling {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let repr = Vec::<RowRepr>::deserialize(deserializer)?;
        Ok(Labeling::from_rows(
            repr.into_iter()
                .map(|r| LabelRow::new(&r.edge[0], &r.edge[1], r.direction, r.label))
                .collect(),
        ))
    }
}

/// A structural defect of a labeling. Violations are data, not failures:
/// the validator reports all of them instead of stopping at the first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    UnknownEdge {
        u: String,
        v: String,
    },
    MissingEdge {
        u: String,
        v: String,
    },
    ConflictingRows {
        u: String,
        v: String,
    },
    NonPositiveLabel {
        u: String,
        v: String,
    },
    MultipleOutgoing {
        vertex: String,
        count: usize,
    },
    NonIncreasing {
        from: String,
        via: String,
        to: String,
        first_label: u32,
        second_label: u32,
    },
    MultipleDoubleGuesses {
        count: usize,
    },
    NoSink,
    TooManySinks {
        sinks: Vec<String>,
    },
    DoubleGuessEndpointNotSink {
        vertex: String,
    },
    BidirectedInAlternating {
        u: String,
        v: String,
    },
    ParityViolation {
        u: String,
        v: String,
        head: String,
        label: u32,
        expected_odd: bool,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownEdge { u, v } => write!(f, "row references unknown edge {u}-{v}"),
            Violation::MissingEdge { u, v } => write!(f, "edge {u}-{v} carries no label"),
            Violation::ConflictingRows { u, v } => write!(f, "conflicting rows on edge {u}-{v}"),
            Violation::NonPositiveLabel { u, v } => {
                write!(f, "edge {u}-{v} carries a non-positive label")
            }
            Violation::MultipleOutgoing { vertex, count } => {
                write!(f, "vertex {vertex} has {count} outgoing edges (at most 1 allowed)")
            }
            Violation::NonIncreasing {
                from,
                via,
                to,
                first_label,
                second_label,
            } => write!(
                f,
                "labels not strictly increasing along {from}->{via}->{to}: {first_label} then {second_label}"
            ),
            Violation::MultipleDoubleGuesses { count } => {
                write!(f, "{count} double-guess edges (at most 1 allowed)")
            }
            Violation::NoSink => write!(f, "no vertex has all incident edges ingoing"),
            Violation::TooManySinks { sinks } => {
                write!(f, "too many all-ingoing vertices: {}", sinks.join(", "))
            }
            Violation::DoubleGuessEndpointNotSink { vertex } => write!(
                f,
                "double-guess endpoint {vertex} has another outgoing edge"
            ),
            Violation::BidirectedInAlternating { u, v } => {
                write!(f, "bidirected edge {u}-{v} is impossible under alternation")
            }
            Violation::ParityViolation {
                u,
                v,
                head,
                label,
                expected_odd,
            } => write!(
                f,
                "edge {u}-{v} into {head} has label {label}, expected {}",
                if *expected_odd { "odd" } else { "even" }
            ),
        }
    }
}

/// Computes the cutting-off-leaves labeling of a tree.
///
/// Simultaneous: at each tick every current leaf is pruned; a pruned edge
/// points into its surviving endpoint and carries the tick as its label.
/// When the residual component is down to a single edge, both occupants
/// announce at once and the edge becomes bidirected.
///
/// Alternating: at odd ticks only leaves in the class opposite the starter
/// are pruned, at even ticks the starter's class; `anchor_a` fixes which
/// bipartition class player A occupies (ignored when simultaneous). No
/// bidirected edge can arise: on a final single edge the permitted side
/// announces first.
pub fn cut_leaves_labeling(g: &GameGraph, mode: SpeechMode, anchor_a: &str) -> Result<Labeling> {
    ensure_tree(g, "cut_leaves_labeling")?;
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let n = g.vertex_count();
    let mut deg: Vec<usize> = (0..n).map(|i| g.adj_idx(i).len()).collect();
    let mut alive_vertex = vec![true; n];
    let mut edge_alive: BTreeMap<(usize, usize), bool> =
        g.edge_idx_pairs().iter().map(|&e| (e, true)).collect();
    let mut remaining = g.edge_count();

    // `prune_class[i]` is Some(class) in alternating mode: true = pruned at
    // odd ticks. The class opposite the starter goes first.
    let prune_odd: Option<Vec<bool>> = match mode {
        SpeechMode::Simultaneous => None,
        SpeechMode::Alternating { starter } => {
            let anchor_idx = g.idx(anchor_a)?;
            let in_anchor_class = bipartition_classes(g, anchor_idx);
            // in_anchor_class = player A's class; the starter's class is the
            // same when A starts. Odd ticks prune the non-starter class.
            let odd_pruned_is_anchor_class = starter == Player::B;
            Some(
                in_anchor_class
                    .iter()
                    .map(|&a| a == odd_pruned_is_anchor_class)
                    .collect(),
            )
        }
    };

    let mut rows: Vec<LabelRow> = Vec::with_capacity(g.edge_count());
    let mut t: u32 = 0;
    while remaining > 0 {
        t += 1;
        debug_assert!(t as usize <= 2 * n + 2, "leaf pruning failed to terminate");
        let cut: Vec<usize> = (0..n)
            .filter(|&i| {
                alive_vertex[i]
                    && deg[i] == 1
                    && prune_odd.as_ref().is_none_or(|p| p[i] == (t % 2 == 1))
            })
            .collect();
        for &leaf in &cut {
            for &w in g.adj_idx(leaf) {
                let key = (leaf.min(w), leaf.max(w));
                let alive = edge_alive.get_mut(&key).expect("edge exists");
                if !*alive {
                    continue;
                }
                *alive = false;
                remaining -= 1;
                deg[leaf] -= 1;
                deg[w] -= 1;
                let both_cut = cut.binary_search(&w).is_ok();
                // Direction is relative to the (leaf, survivor) argument
                // order; row normalization reorders the endpoints.
                let direction = if both_cut {
                    Direction::Both
                } else {
                    Direction::V
                };
                rows.push(LabelRow::new(g.name(leaf), g.name(w), direction, t));
            }
        }
        for &leaf in &cut {
            alive_vertex[leaf] = false;
        }
    }
    Ok(Labeling::from_rows(rows))
}

/// Checks a labeling against every structural invariant; returns the full
/// list of violations (empty means valid for the given mode).
pub fn validate_labeling(
    g: &GameGraph,
    mode: SpeechMode,
    lab: &Labeling,
    anchor_a: &str,
) -> Result<Vec<Violation>> {
    ensure_tree(g, "validate_labeling")?;
    let mut violations = Vec::new();

    // Per-edge row grouping and basic sanity.
    let mut per_edge: BTreeMap<(&str, &str), Vec<&LabelRow>> = BTreeMap::new();
    for row in lab.rows() {
        if row.label == 0 {
            violations.push(Violation::NonPositiveLabel {
                u: row.u.clone(),
                v: row.v.clone(),
            });
        }
        if !g.has_edge(&row.u, &row.v) {
            violations.push(Violation::UnknownEdge {
                u: row.u.clone(),
                v: row.v.clone(),
            });
            continue;
        }
        per_edge
            .entry((row.u.as_str(), row.v.as_str()))
            .or_default()
            .push(row);
    }
    for (u, v) in g.edges() {
        if !per_edge.contains_key(&(u, v)) {
            violations.push(Violation::MissingEdge {
                u: u.to_owned(),
                v: v.to_owned(),
            });
        }
    }

    // Classify each labeled edge; reject conflicting row pairs. A valid
    // pair is two opposite single directions with distinct labels.
    let mut double_guesses: Vec<(&str, &str)> = Vec::new();
    let mut arcs: Vec<(&str, &str, u32)> = Vec::new();
    for (&(u, v), rows) in &per_edge {
        let ok = match rows.as_slice() {
            [single] => {
                if single.direction == Direction::Both {
                    double_guesses.push((u, v));
                }
                true
            }
            [r1, r2] => {
                let opposite = matches!(
                    (r1.direction, r2.direction),
                    (Direction::U, Direction::V) | (Direction::V, Direction::U)
                );
                if opposite && r1.label != r2.label {
                    double_guesses.push((u, v));
                    true
                } else {
                    false
                }
            }
            _ => false,
        };
        if ok {
            for row in rows {
                arcs.extend(row.arcs());
            }
        } else {
            violations.push(Violation::ConflictingRows {
                u: u.to_owned(),
                v: v.to_owned(),
            });
        }
    }

    if double_guesses.len() > 1 {
        violations.push(Violation::MultipleDoubleGuesses {
            count: double_guesses.len(),
        });
    }

    // Out-degree: at most one outgoing edge per vertex (a double guess
    // counts as outgoing at both endpoints).
    let mut out_edges: BTreeMap<&str, Vec<(&str, &str)>> = BTreeMap::new();
    for (&(u, v), rows) in &per_edge {
        let mut tails: Vec<&str> = Vec::new();
        for row in rows {
            for (tail, _, _) in row.arcs() {
                tails.push(tail);
            }
        }
        tails.sort_unstable();
        tails.dedup();
        for tail in tails {
            out_edges.entry(tail).or_default().push((u, v));
        }
    }
    for (vertex, edges) in &out_edges {
        if edges.len() > 1 {
            violations.push(Violation::MultipleOutgoing {
                vertex: (*vertex).to_owned(),
                count: edges.len(),
            });
        }
    }

    // Strict monotonicity along directed paths: it suffices to check every
    // length-2 directed path (x -> via -> z, z != x).
    arcs.sort_unstable();
    for &(tail_in, via, l1) in &arcs {
        for &(tail_out, head_out, l2) in &arcs {
            if tail_out == via && head_out != tail_in && l1 >= l2 {
                violations.push(Violation::NonIncreasing {
                    from: tail_in.to_owned(),
                    via: via.to_owned(),
                    to: head_out.to_owned(),
                    first_label: l1,
                    second_label: l2,
                });
            }
        }
    }

    // Sink structure, skipped on single-edge trees.
    if g.edge_count() >= 2 && violations.is_empty() {
        let double = double_guesses.first().copied();
        let sinks: Vec<&str> = g
            .vertices()
            .filter(|vtx| {
                out_edges
                    .get(vtx)
                    .is_none_or(|edges| edges.iter().all(|&e| Some(e) == double))
            })
            .collect();
        match double {
            None => {
                if sinks.is_empty() {
                    violations.push(Violation::NoSink);
                } else if sinks.len() > 1 {
                    violations.push(Violation::TooManySinks {
                        sinks: sinks.iter().map(|s| (*s).to_owned()).collect(),
                    });
                }
            }
            Some((u, v)) => {
                for endpoint in [u, v] {
                    if !sinks.contains(&endpoint) {
                        violations.push(Violation::DoubleGuessEndpointNotSink {
                            vertex: endpoint.to_owned(),
                        });
                    }
                }
                let extra: Vec<String> = sinks
                    .iter()
                    .filter(|s| **s != u && **s != v)
                    .map(|s| (*s).to_owned())
                    .collect();
                if !extra.is_empty() {
                    violations.push(Violation::TooManySinks { sinks: extra });
                }
            }
        }
    }

    // Alternating-only rules: no bidirected rows, and label parity must
    // match the class the edge points into (odd into the starter's class).
    if let SpeechMode::Alternating { starter } = mode {
        for row in lab.rows() {
            if row.direction == Direction::Both {
                violations.push(Violation::BidirectedInAlternating {
                    u: row.u.clone(),
                    v: row.v.clone(),
                });
            }
        }
        let anchor_idx = g.idx(anchor_a)?;
        let in_anchor_class = bipartition_classes(g, anchor_idx);
        for row in lab.rows() {
            if row.direction == Direction::Both || !g.has_edge(&row.u, &row.v) {
                continue;
            }
            for (_, head, label) in row.arcs() {
                let head_in_anchor = in_anchor_class[g.idx(head)?];
                // Player A occupies the anchor class; the starter speaks at
                // odd times.
                let head_player = if head_in_anchor { Player::A } else { Player::B };
                let expected_odd = head_player == starter;
                if (label % 2 == 1) != expected_odd {
                    violations.push(Violation::ParityViolation {
                        u: row.u.clone(),
                        v: row.v.clone(),
                        head: head.to_owned(),
                        label,
                        expected_odd,
                    });
                }
            }
        }
    }

    Ok(violations)
}

/// What a player does upon observing the partner on a given vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PlaybookEntry {
    Announce { time: u32, announce: String },
    Silent(String),
}

impl PlaybookEntry {
    pub fn silent() -> PlaybookEntry {
        PlaybookEntry::Silent("silent".to_owned())
    }
}

/// Pre-compiled strategy: per player, a map from observed partner vertex to
/// the scheduled announcement (or eternal silence).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Playbook {
    pub a: BTreeMap<String, PlaybookEntry>,
    pub b: BTreeMap<String, PlaybookEntry>,
}

impl Playbook {
    pub fn for_player(&self, p: Player) -> &BTreeMap<String, PlaybookEntry> {
        match p {
            Player::A => &self.a,
            Player::B => &self.b,
        }
    }
}

/// Compiles a valid labeling into playbooks: observing the partner on `w`,
/// follow `w`'s outgoing arc `(w -> x, n)` and announce `x` at time `n`; if
/// `w` has no outgoing arc, stay silent forever. A double-guess edge yields
/// announce entries for both players.
pub fn playbook_from_labeling(
    g: &GameGraph,
    mode: SpeechMode,
    lab: &Labeling,
    anchor_a: &str,
) -> Result<Playbook> {
    let violations = validate_labeling(g, mode, lab, anchor_a)?;
    if !violations.is_empty() {
        return Err(Error::invalid_labeling(violations));
    }
    let mut map: BTreeMap<String, PlaybookEntry> = BTreeMap::new();
    for w in g.vertices() {
        let entry = match lab.outgoing(w) {
            Some((head, label)) => PlaybookEntry::Announce {
                time: label,
                announce: head.to_owned(),
            },
            None => PlaybookEntry::silent(),
        };
        map.insert(w.to_owned(), entry);
    }
    Ok(Playbook {
        a: map.clone(),
        b: map,
    })
}

/// Re-schedules a labeling from one speech mode onto another while guessing
/// the same edge set.
///
/// Simultaneous -> alternating maps each guess at time `t` to the earliest
/// tick `>= 2t - 1` at which the guessing player may speak; a bidirected
/// edge splits into two directed resolutions at consecutive permitted
/// ticks. Alternating -> simultaneous keeps labels unchanged (whoever was
/// silent stays silent). `anchor_a` fixes player A's class whenever an
/// alternating schedule is involved.
pub fn adapt_mode(
    lab: &Labeling,
    from: SpeechMode,
    to: SpeechMode,
    anchor_a: &str,
) -> Result<Labeling> {
    // The tree is implicit in the labeling: every edge carries a row.
    let edges: Vec<(&str, &str)> = {
        let mut e: Vec<(&str, &str)> = lab
            .rows()
            .iter()
            .map(|r| (r.u.as_str(), r.v.as_str()))
            .collect();
        e.sort_unstable();
        e.dedup();
        e
    };
    let g = GameGraph::undirected(&[], &edges)?;
    let violations = validate_labeling(&g, from, lab, anchor_a)?;
    if !violations.is_empty() {
        return Err(Error::invalid_labeling(violations));
    }

    match (from, to) {
        (SpeechMode::Simultaneous, SpeechMode::Simultaneous) => Ok(lab.clone()),
        (SpeechMode::Alternating { .. }, SpeechMode::Simultaneous) => Ok(lab.clone()),
        (SpeechMode::Alternating { starter: s1 }, SpeechMode::Alternating { starter: s2 }) => {
            if s1 == s2 {
                Ok(lab.clone())
            } else {
                // Reschedule via the simultaneous reading of the labels.
                let as_sim = adapt_mode(lab, from, SpeechMode::Simultaneous, anchor_a)?;
                adapt_mode(&as_sim, SpeechMode::Simultaneous, to, anchor_a)
            }
        }
        (SpeechMode::Simultaneous, SpeechMode::Alternating { starter }) => {
            let anchor_idx = g.idx(anchor_a)?;
            let in_anchor_class = bipartition_classes(&g, anchor_idx);
            let slot = |head: &str, t: u32| -> Result<u32> {
                let head_player = if in_anchor_class[g.idx(head)?] {
                    Player::A
                } else {
                    Player::B
                };
                let speaks_odd = head_player == starter;
                Ok(if speaks_odd { 2 * t - 1 } else { 2 * t })
            };
            let mut rows = Vec::with_capacity(lab.rows().len());
            for row in lab.rows() {
                for (_, head, label) in row.arcs() {
                    let direction = if head == row.u {
                        Direction::U
                    } else {
                        Direction::V
                    };
                    rows.push(LabelRow::new(&row.u, &row.v, direction, slot(head, label)?));
                }
            }
            Ok(Labeling::from_rows(rows))
        }
    }
}
