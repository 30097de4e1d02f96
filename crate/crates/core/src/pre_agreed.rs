//! The pre-agreed labeling under which both players always determine their
//! position: spread the cutting-off-leaves labels out by an edge bijection
//! so that every announcement time is unique, then the partner can always
//! invert the observed announcement.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::graph::{bipartition_classes, ensure_tree, GameGraph};
use crate::labeling::{cut_leaves_labeling, playbook_from_labeling, Direction, LabelRow, Labeling};
use crate::mode::{Player, SpeechMode};
use crate::oracle::{simulate_with_playbook_outcome, Outcome};
use crate::Result;

/// A bijection from the edges of a graph onto `0..|E|-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeBijection {
    map: BTreeMap<(String, String), u32>,
}

impl EdgeBijection {
    /// The default bijection: edges in lexicographic order.
    pub fn lexicographic(g: &GameGraph) -> EdgeBijection {
        let map = g
            .edges()
            .enumerate()
            .map(|(i, (u, v))| ((u.to_owned(), v.to_owned()), i as u32))
            .collect();
        EdgeBijection { map }
    }

    /// An explicit assignment; must cover every edge exactly once with the
    /// values `0..|E|-1`.
    pub fn from_pairs(g: &GameGraph, pairs: &[((String, String), u32)]) -> Result<EdgeBijection> {
        let mut map: BTreeMap<(String, String), u32> = BTreeMap::new();
        for ((u, v), value) in pairs {
            let (u, v) = if u <= v { (u, v) } else { (v, u) };
            if !g.has_edge(u, v) {
                return Err(Error::InvalidPhi {
                    reason: format!("`{u}`-`{v}` is not an edge"),
                });
            }
            if map.insert((u.clone(), v.clone()), *value).is_some() {
                return Err(Error::InvalidPhi {
                    reason: format!("edge `{u}`-`{v}` assigned twice"),
                });
            }
        }
        if map.len() != g.edge_count() {
            return Err(Error::InvalidPhi {
                reason: format!("{} of {} edges assigned", map.len(), g.edge_count()),
            });
        }
        let mut values: Vec<u32> = map.values().copied().collect();
        values.sort_unstable();
        if values.iter().enumerate().any(|(i, &v)| v != i as u32) {
            return Err(Error::InvalidPhi {
                reason: format!("values must be a permutation of 0..{}", g.edge_count()),
            });
        }
        Ok(EdgeBijection { map })
    }

    pub fn value(&self, u: &str, v: &str) -> Option<u32> {
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        self.map.get(&(u.to_owned(), v.to_owned())).copied()
    }
}

/// Builds the pre-agreed labeling: start from the simultaneous
/// cutting-off-leaves labeling, stretch every label to `|E| * label +
/// phi(e)` (keeping directions; the bidirected edge keeps both), and for an
/// alternating schedule double the result, subtracting 1 exactly on edges
/// pointing into the starter's class. All labels come out pairwise distinct
/// and the result validates for the requested mode; a bidirected base edge
/// under alternation resolves into two directed labels at consecutive
/// permitted ticks.
pub fn both_players_labeling(
    g: &GameGraph,
    mode: SpeechMode,
    anchor_a: &str,
    phi: &EdgeBijection,
) -> Result<Labeling> {
    ensure_tree(g, "both_players_labeling")?;
    let base = cut_leaves_labeling(g, SpeechMode::Simultaneous, anchor_a)?;
    let e = g.edge_count() as u32;
    let stretched = |row: &LabelRow| -> Result<u32> {
        let phi_e = phi.value(&row.u, &row.v).ok_or_else(|| Error::InvalidPhi {
            reason: format!("no value for edge `{}`-`{}`", row.u, row.v),
        })?;
        Ok(e * row.label + phi_e)
    };

    let rows = match mode {
        SpeechMode::Simultaneous => base
            .rows()
            .iter()
            .map(|row| {
                Ok(LabelRow::new(
                    &row.u,
                    &row.v,
                    row.direction,
                    stretched(row)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?,
        SpeechMode::Alternating { starter } => {
            let anchor_idx = g.idx(anchor_a)?;
            let in_anchor_class = bipartition_classes(g, anchor_idx);
            let mut out = Vec::with_capacity(base.rows().len() + 1);
            for row in base.rows() {
                let m = stretched(row)?;
                for (_, head, _) in row.arcs() {
                    let head_player = if in_anchor_class[g.idx(head)?] {
                        Player::A
                    } else {
                        Player::B
                    };
                    let label = if head_player == starter {
                        2 * m - 1
                    } else {
                        2 * m
                    };
                    let direction = if head == row.u {
                        Direction::U
                    } else {
                        Direction::V
                    };
                    out.push(LabelRow::new(&row.u, &row.v, direction, label));
                }
            }
            out
        }
    };
    Ok(Labeling::from_rows(rows))
}

/// True iff, under the playbook compiled from `lab`, every placement ends
/// with both players correctly determined (a simultaneous double
/// announcement, or an announcement the partner can invert). Placements
/// range over every orientation consistent with the labeling: under
/// alternation player A must occupy the class the labeling assigns to A.
pub fn verify_both_learn(g: &GameGraph, mode: SpeechMode, lab: &Labeling) -> Result<bool> {
    ensure_tree(g, "verify_both_learn")?;
    let anchor = infer_anchor(g, mode, lab)?;
    let playbook = playbook_from_labeling(g, mode, lab, &anchor)?;

    let restrict_a_class = mode.is_alternating();
    let anchor_idx = g.idx(&anchor)?;
    let in_a_class = bipartition_classes(g, anchor_idx);

    for (u, v) in g.edges() {
        for (a, b) in [(u, v), (v, u)] {
            if restrict_a_class && !in_a_class[g.idx(a)?] {
                continue;
            }
            let (outcome, announcements) =
                simulate_with_playbook_outcome(g, a, b, mode, &playbook)?;
            let both = match outcome {
                Outcome::BothAt { .. } | Outcome::SecondAt { .. } => true,
                Outcome::FirstAt { .. } | Outcome::Never => false,
            };
            if !both {
                return Ok(false);
            }
            // Announced contents must also be correct.
            for (player, content) in &announcements {
                let truth = match player {
                    Player::A => a,
                    Player::B => b,
                };
                if content != truth {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Picks a representative of player A's class. Under alternation the
/// classes are encoded in the labels themselves: odd labels point into the
/// starter's class.
fn infer_anchor(g: &GameGraph, mode: SpeechMode, lab: &Labeling) -> Result<String> {
    let starter = match mode {
        SpeechMode::Simultaneous => {
            return Ok(g.vertices().next().ok_or(Error::NoEdges)?.to_owned())
        }
        SpeechMode::Alternating { starter } => starter,
    };
    let (tail, head, label) = lab.arcs().next().ok_or(Error::NoEdges)?;
    let (starter_rep, other_rep) = if label % 2 == 1 {
        (head, tail)
    } else {
        (tail, head)
    };
    Ok(if starter == Player::A {
        starter_rep.to_owned()
    } else {
        other_rep.to_owned()
    })
}
