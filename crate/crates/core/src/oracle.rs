//! First-principles epistemic simulator.
//!
//! The commonly known state of the game is a set of *worlds*: ordered
//! placements `(a, b)` of the two players on an edge. Each tick, every
//! permitted speaker announces iff their candidate set (worlds matching
//! what they observe) is a singleton. Observed silence then eliminates
//! every world in which a permitted speaker *would* have announced, and an
//! observed announcement eliminates every world inconsistent with its
//! speaker, time, and content. No analytic shortcut enters anywhere, which
//! is what makes this module the arbiter for the rest of the crate.

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::GameGraph;
use crate::labeling::{Playbook, PlaybookEntry};
use crate::mode::{Player, SpeechMode};
use crate::predictor::{Prediction, SecondOutcome};
use crate::Result;

/// One possible joint placement: player A on `a`, player B on `b`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct World {
    pub a: String,
    pub b: String,
}

impl Serialize for World {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&self.a)?;
        seq.serialize_element(&self.b)?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for World {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[String; 2]>::deserialize(deserializer)?;
        Ok(World { a, b })
    }
}

/// How a run ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    /// One player announced; the partner stays undetermined.
    FirstAt { player: Player, time: u32 },
    /// Both players announced in the same tick.
    BothAt { time: u32 },
    /// One player announced at `time - 1` and the partner then worked out
    /// their own position.
    SecondAt { player: Player, time: u32 },
    /// The world set reached a fixpoint with no announcement in sight.
    Never,
}

impl Outcome {
    /// The analytic reading of this outcome.
    pub fn to_prediction(self) -> Prediction {
        match self {
            Outcome::FirstAt { player, time } => Prediction::First {
                player,
                time,
                second: SecondOutcome::Never,
            },
            Outcome::BothAt { time } => Prediction::Both { time },
            Outcome::SecondAt { player, time } => Prediction::First {
                player: player.other(),
                time: time - 1,
                second: SecondOutcome::LearnsAt(time),
            },
            Outcome::Never => Prediction::Never,
        }
    }
}

/// Record of a single tick.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub time: u32,
    pub speakers: Vec<Player>,
    /// `(speaker, announced own vertex)` pairs, at most one per speaker.
    pub announcements: Vec<(Player, String)>,
    pub eliminated: Vec<World>,
    pub surviving: Vec<World>,
}

/// Full run record: per-tick detail plus the outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleTrace {
    pub steps: Vec<TraceStep>,
    pub outcome: Outcome,
}

impl OracleTrace {
    /// JSON-lines rendering: one step per line, trailing outcome record.
    pub fn to_jsonl(&self) -> String {
        let mut s = String::new();
        for step in &self.steps {
            s.push_str(&serde_json::to_string(step).expect("trace step serializes"));
            s.push('\n');
        }
        s.push_str(&format!(
            "{{\"outcome\":{}}}\n",
            serde_json::to_string(&self.outcome).expect("outcome serializes")
        ));
        s
    }
}

/// Index-level world bookkeeping shared by both simulators.
struct WorldSet {
    /// (a-coordinate, b-coordinate) vertex indices, sorted.
    worlds: Vec<(usize, usize)>,
    by_a: Vec<Vec<usize>>,
    by_b: Vec<Vec<usize>>,
    alive: Vec<bool>,
    cnt_a: Vec<usize>,
    cnt_b: Vec<usize>,
    alive_total: usize,
}

impl WorldSet {
    fn new(g: &GameGraph) -> WorldSet {
        let n = g.vertex_count();
        let mut worlds: Vec<(usize, usize)> = Vec::new();
        for &(u, v) in g.edge_idx_pairs() {
            worlds.push((u, v));
            if !g.is_directed() {
                worlds.push((v, u));
            }
        }
        worlds.sort_unstable();
        let mut by_a = vec![Vec::new(); n];
        let mut by_b = vec![Vec::new(); n];
        for (i, &(x, y)) in worlds.iter().enumerate() {
            by_a[x].push(i);
            by_b[y].push(i);
        }
        let cnt_a: Vec<usize> = by_a.iter().map(Vec::len).collect();
        let cnt_b: Vec<usize> = by_b.iter().map(Vec::len).collect();
        let alive_total = worlds.len();
        WorldSet {
            alive: vec![true; worlds.len()],
            worlds,
            by_a,
            by_b,
            cnt_a,
            cnt_b,
            alive_total,
        }
    }

    fn kill(&mut self, w: usize) {
        debug_assert!(self.alive[w]);
        self.alive[w] = false;
        let (x, y) = self.worlds[w];
        self.cnt_a[x] -= 1;
        self.cnt_b[y] -= 1;
        self.alive_total -= 1;
    }

    fn alive_worlds(&self, g: &GameGraph) -> Vec<World> {
        self.worlds
            .iter()
            .enumerate()
            .filter(|(i, _)| self.alive[*i])
            .map(|(_, &(x, y))| World {
                a: g.name(x).to_owned(),
                b: g.name(y).to_owned(),
            })
            .collect()
    }

    fn name_worlds(&self, g: &GameGraph, ids: &[usize]) -> Vec<World> {
        let mut v: Vec<World> = ids
            .iter()
            .map(|&i| {
                let (x, y) = self.worlds[i];
                World {
                    a: g.name(x).to_owned(),
                    b: g.name(y).to_owned(),
                }
            })
            .collect();
        v.sort_unstable();
        v
    }
}

fn check_placement(g: &GameGraph, a: &str, b: &str) -> Result<()> {
    g.idx(a)?;
    g.idx(b)?;
    if g.is_directed() {
        if !g.has_arc(a, b) {
            return Err(Error::InvalidPlacement {
                a: a.to_owned(),
                b: b.to_owned(),
                reason: if g.has_arc(b, a) {
                    format!("edge is oriented {b} > {a}, player A must sit on the tail")
                } else {
                    "no such directed edge".to_owned()
                },
            });
        }
    } else if !g.has_edge(a, b) {
        return Err(Error::InvalidPlacement {
            a: a.to_owned(),
            b: b.to_owned(),
            reason: "vertices are not adjacent".to_owned(),
        });
    }
    Ok(())
}

/// Runs the rational game: no pre-agreed strategy, perfect reasoners,
/// common knowledge of graph and protocol. Player A sits on `a` (the arc
/// tail when the graph is directed), player B on `b`.
pub fn simulate(g: &GameGraph, a: &str, b: &str, mode: SpeechMode) -> Result<OracleTrace> {
    run_rational(g, a, b, mode, true)
}

/// Outcome-only variant of [`simulate`]; skips per-step trace assembly.
pub fn simulate_outcome(g: &GameGraph, a: &str, b: &str, mode: SpeechMode) -> Result<Outcome> {
    Ok(run_rational(g, a, b, mode, false)?.outcome)
}

fn run_rational(
    g_full: &GameGraph,
    a: &str,
    b: &str,
    mode: SpeechMode,
    record: bool,
) -> Result<OracleTrace> {
    check_placement(g_full, a, b)?;
    // Traces restrict to the placement's component. The outcome-only path
    // skips the restriction: worlds in other components never share a
    // coordinate with the placement's, so they cannot influence any
    // candidate set or announcement.
    let component;
    let g: &GameGraph = if record && !g_full.connected() {
        component = g_full.component_of(a)?;
        &component
    } else {
        g_full
    };
    let a_true = g.idx(a)?;
    let b_true = g.idx(b)?;
    let mut ws = WorldSet::new(g);
    let mut steps: Vec<TraceStep> = Vec::new();
    let period = mode.period();
    let mut stall_streak = 0u32;
    let limit = (ws.worlds.len() as u32 + 2) * period + period;

    for t in 1..=limit {
        let speakers = mode.permitted(t);
        let a_announces = speakers.contains(&Player::A) && ws.cnt_b[b_true] == 1;
        let b_announces = speakers.contains(&Player::B) && ws.cnt_a[a_true] == 1;

        if a_announces || b_announces {
            let mut announcements: Vec<(Player, String)> = Vec::new();
            if a_announces {
                announcements.push((Player::A, g.name(a_true).to_owned()));
            }
            if b_announces {
                announcements.push((Player::B, g.name(b_true).to_owned()));
            }
            let outcome = if a_announces && b_announces {
                Outcome::BothAt { time: t }
            } else {
                let (speaker, partner) = if a_announces {
                    (Player::A, Player::B)
                } else {
                    (Player::B, Player::A)
                };
                // One inference step for the partner: their candidate set
                // restricted to worlds in which the speaker announces
                // exactly now with exactly that vertex.
                let candidates = if a_announces {
                    ws.by_a[a_true]
                        .iter()
                        .filter(|&&w| ws.alive[w] && ws.cnt_b[ws.worlds[w].1] == 1)
                        .count()
                } else {
                    ws.by_b[b_true]
                        .iter()
                        .filter(|&&w| ws.alive[w] && ws.cnt_a[ws.worlds[w].0] == 1)
                        .count()
                };
                if candidates == 1 {
                    Outcome::SecondAt {
                        player: partner,
                        time: t + 1,
                    }
                } else {
                    Outcome::FirstAt {
                        player: speaker,
                        time: t,
                    }
                }
            };
            if record {
                // Worlds inconsistent with the observed announcements.
                let mut eliminated = Vec::new();
                for (w, &(x, y)) in ws.worlds.iter().enumerate() {
                    if !ws.alive[w] {
                        continue;
                    }
                    let consistent_a = !a_announces || (ws.cnt_b[y] == 1 && x == a_true);
                    let consistent_b = !b_announces || (ws.cnt_a[x] == 1 && y == b_true);
                    if !(consistent_a && consistent_b) {
                        eliminated.push(w);
                    }
                }
                let eliminated_worlds = ws.name_worlds(g, &eliminated);
                for w in eliminated {
                    ws.kill(w);
                }
                steps.push(TraceStep {
                    time: t,
                    speakers: speakers.to_vec(),
                    announcements,
                    eliminated: eliminated_worlds,
                    surviving: ws.alive_worlds(g),
                });
            }
            return Ok(OracleTrace { steps, outcome });
        }

        // Silence: every permitted speaker's counterfactual singleton dies.
        let mut kills: Vec<usize> = Vec::new();
        for (w, &(x, y)) in ws.worlds.iter().enumerate() {
            if !ws.alive[w] {
                continue;
            }
            let a_would = speakers.contains(&Player::A) && ws.cnt_b[y] == 1;
            let b_would = speakers.contains(&Player::B) && ws.cnt_a[x] == 1;
            if a_would || b_would {
                kills.push(w);
            }
        }
        debug_assert!(!kills.contains(
            &ws.worlds
                .iter()
                .position(|&(x, y)| x == a_true && y == b_true)
                .unwrap_or(usize::MAX)
        ));
        let eliminated_worlds = if record {
            ws.name_worlds(g, &kills)
        } else {
            Vec::new()
        };
        let killed = !kills.is_empty();
        for w in kills {
            ws.kill(w);
        }
        if record {
            steps.push(TraceStep {
                time: t,
                speakers: speakers.to_vec(),
                announcements: Vec::new(),
                eliminated: eliminated_worlds,
                surviving: ws.alive_worlds(g),
            });
        }
        stall_streak = if killed { 0 } else { stall_streak + 1 };
        if stall_streak >= period {
            return Ok(OracleTrace {
                steps,
                outcome: Outcome::Never,
            });
        }
    }
    unreachable!("world elimination is monotone; the loop bound cannot be hit");
}

/// Runs scripted play: announcements come from the playbooks instead of
/// rational silence-inference. The partner's one inference step inverts the
/// playbook: candidate own-positions whose entry matches the observed
/// announcement time and content.
pub fn simulate_with_playbook(
    g_full: &GameGraph,
    a: &str,
    b: &str,
    mode: SpeechMode,
    playbook: &Playbook,
) -> Result<OracleTrace> {
    run_playbook(g_full, a, b, mode, playbook, true)
}

/// Outcome plus final announcements of [`simulate_with_playbook`], without
/// assembling per-step world sets. The worlds are trace decoration here:
/// scripted announcements and the playbook inversion never consult them.
pub fn simulate_with_playbook_outcome(
    g_full: &GameGraph,
    a: &str,
    b: &str,
    mode: SpeechMode,
    playbook: &Playbook,
) -> Result<(Outcome, Vec<(Player, String)>)> {
    let trace = run_playbook(g_full, a, b, mode, playbook, false)?;
    let announcements = trace
        .steps
        .last()
        .map(|s| s.announcements.clone())
        .unwrap_or_default();
    Ok((trace.outcome, announcements))
}

fn run_playbook(
    g_full: &GameGraph,
    a: &str,
    b: &str,
    mode: SpeechMode,
    playbook: &Playbook,
    record: bool,
) -> Result<OracleTrace> {
    if g_full.is_directed() {
        return Err(Error::RequiresUndirected {
            operation: "simulate_with_playbook".to_owned(),
        });
    }
    check_placement(g_full, a, b)?;
    let component;
    let g: &GameGraph = if g_full.connected() {
        g_full
    } else {
        component = g_full.component_of(a)?;
        &component
    };

    // Entries must cover every observable vertex and announce only
    // adjacent vertices.
    for player in [Player::A, Player::B] {
        let map = playbook.for_player(player);
        for w in g.vertices() {
            match map.get(w) {
                None => {
                    return Err(Error::InvalidPlaybook {
                        reason: format!("player {player} has no entry for observed vertex `{w}`"),
                    })
                }
                Some(PlaybookEntry::Announce { announce, .. }) => {
                    if !g.has_edge(w, announce) {
                        return Err(Error::InvalidPlaybook {
                            reason: format!(
                                "player {player} observing `{w}` would announce non-adjacent `{announce}`"
                            ),
                        });
                    }
                }
                Some(PlaybookEntry::Silent(_)) => {}
            }
        }
    }

    let a_true = g.idx(a)?;
    let b_true = g.idx(b)?;
    let mut ws = if record { Some(WorldSet::new(g)) } else { None };
    let mut steps = Vec::new();

    // In world (x, y): A observes y and follows A's entry for y; B observes
    // x. An entry fires at its stated time if its owner may speak then.
    let entry_time = |player: Player, observed: &str| -> Option<(u32, &str)> {
        match &playbook.for_player(player)[observed] {
            PlaybookEntry::Announce { time, announce } => Some((*time, announce.as_str())),
            PlaybookEntry::Silent(_) => None,
        }
    };

    let horizon = g
        .vertices()
        .flat_map(|w| {
            [Player::A, Player::B]
                .into_iter()
                .filter_map(move |p| entry_time(p, w).map(|(t, _)| t))
        })
        .max()
        .unwrap_or(0);

    for t in 1..=horizon.max(1) + mode.period() {
        let speakers = mode.permitted(t);
        let mut announcements: Vec<(Player, String)> = Vec::new();
        for &p in speakers {
            let observed = match p {
                Player::A => g.name(b_true),
                Player::B => g.name(a_true),
            };
            if let Some((time, content)) = entry_time(p, observed) {
                if time == t {
                    announcements.push((p, content.to_owned()));
                }
            }
        }

        if !announcements.is_empty() {
            let outcome = if announcements.len() == 2 {
                Outcome::BothAt { time: t }
            } else {
                let (speaker, content) = (&announcements[0].0, announcements[0].1.as_str());
                let partner = speaker.other();
                // Invert the speaker's playbook over the partner's possible
                // own positions.
                let speaker_pos = match speaker {
                    Player::A => a_true,
                    Player::B => b_true,
                };
                let matching = g
                    .adj_idx(speaker_pos)
                    .iter()
                    .filter(|&&w| {
                        entry_time(*speaker, g.name(w))
                            .is_some_and(|(tm, c)| tm == t && c == content)
                    })
                    .count();
                if matching == 1 {
                    Outcome::SecondAt {
                        player: partner,
                        time: t + 1,
                    }
                } else {
                    Outcome::FirstAt {
                        player: *speaker,
                        time: t,
                    }
                }
            };
            // Record worlds inconsistent with the observed announcements.
            let (eliminated_worlds, surviving) = match &mut ws {
                Some(ws) => {
                    let mut eliminated = Vec::new();
                    for (w, &(x, y)) in ws.worlds.iter().enumerate() {
                        if !ws.alive[w] {
                            continue;
                        }
                        let consistent = announcements.iter().all(|(p, content)| {
                            let observed = match p {
                                Player::A => g.name(y),
                                Player::B => g.name(x),
                            };
                            entry_time(*p, observed)
                                .is_some_and(|(tm, c)| tm == t && c == content.as_str())
                        });
                        if !consistent {
                            eliminated.push(w);
                        }
                    }
                    let named = ws.name_worlds(g, &eliminated);
                    for w in eliminated {
                        ws.kill(w);
                    }
                    (named, ws.alive_worlds(g))
                }
                None => (Vec::new(), Vec::new()),
            };
            steps.push(TraceStep {
                time: t,
                speakers: speakers.to_vec(),
                announcements,
                eliminated: eliminated_worlds,
                surviving,
            });
            return Ok(OracleTrace { steps, outcome });
        }

        // Silence eliminates worlds whose scripted announcement was due.
        if let Some(ws) = &mut ws {
            let mut kills = Vec::new();
            for (w, &(x, y)) in ws.worlds.iter().enumerate() {
                if !ws.alive[w] {
                    continue;
                }
                let due = speakers.iter().any(|&p| {
                    let observed = match p {
                        Player::A => g.name(y),
                        Player::B => g.name(x),
                    };
                    entry_time(p, observed).is_some_and(|(tm, _)| tm == t)
                });
                if due {
                    kills.push(w);
                }
            }
            let eliminated_worlds = ws.name_worlds(g, &kills);
            for w in kills {
                ws.kill(w);
            }
            steps.push(TraceStep {
                time: t,
                speakers: speakers.to_vec(),
                announcements: Vec::new(),
                eliminated: eliminated_worlds,
                surviving: ws.alive_worlds(g),
            });
        }
    }
    Ok(OracleTrace {
        steps,
        outcome: Outcome::Never,
    })
}
