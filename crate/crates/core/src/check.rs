//! Exhaustive cross-validation harnesses.
//!
//! Everything analytic in this crate is checked against the epistemic
//! simulator over enumerated instance families: all labeled trees up to a
//! vertex budget (via Prüfer sequences), all connected non-trees, cycles,
//! and directed-graph censuses (exhaustively for small orders, by
//! canonical representatives and seeded random samples beyond that — every
//! compared quantity is invariant under vertex relabeling, which the raw
//! exhaustive and random passes double-check).

use rayon::prelude::*;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::directed::{
    analyze_directed, is_zigzag_forest, reduce_tail, simulate_directed_outcome,
    OrientationConvention,
};
use crate::graph::{bipartition_classes, heights, is_tree, GameGraph};
use crate::labeling::{
    adapt_mode, cut_leaves_labeling, playbook_from_labeling, validate_labeling, Labeling,
};
use crate::mode::{Player, SpeechMode};
use crate::oracle::{simulate_outcome, simulate_with_playbook_outcome, Outcome};
use crate::pre_agreed::{both_players_labeling, verify_both_learn, EdgeBijection};
use crate::predictor::{predict, Prediction};
use crate::Result;

/// Seed for every randomized census in the crate.
pub const SAMPLE_SEED: u64 = 0x1EAF_C0DE;

const MAX_REPORTED: usize = 25;
const SIM: SpeechMode = SpeechMode::Simultaneous;
const ALT_A: SpeechMode = SpeechMode::Alternating { starter: Player::A };
const ALT_B: SpeechMode = SpeechMode::Alternating { starter: Player::B };

static NAMES: [&str; 9] = ["1", "2", "3", "4", "5", "6", "7", "8", "9"];

/// Tally of one sweep: how many subjects (trees, graphs) and individual
/// cases were checked, and the mismatches found (capped sample plus count).
#[derive(Debug, Default, Clone)]
pub struct SweepReport {
    pub subjects: u64,
    pub cases: u64,
    pub mismatch_count: u64,
    pub mismatches: Vec<String>,
}

impl SweepReport {
    fn mismatch(&mut self, msg: String) {
        self.mismatch_count += 1;
        if self.mismatches.len() < MAX_REPORTED {
            self.mismatches.push(msg);
        }
    }

    fn merge(mut self, other: SweepReport) -> SweepReport {
        self.subjects += other.subjects;
        self.cases += other.cases;
        self.mismatch_count += other.mismatch_count;
        for m in other.mismatches {
            if self.mismatches.len() < MAX_REPORTED {
                self.mismatches.push(m);
            }
        }
        self
    }

    pub fn is_clean(&self) -> bool {
        self.mismatch_count == 0
    }

    pub fn summary(&self, what: &str) -> String {
        format!(
            "{what}: {} subjects, {} cases, {} mismatches",
            self.subjects, self.cases, self.mismatch_count
        )
    }
}

/// Decodes one Prüfer sequence into tree edges over `0..n`.
fn prufer_decode(seq: &[usize], n: usize, edges: &mut Vec<(usize, usize)>) {
    edges.clear();
    let mut deg = vec![1u32; n];
    for &s in seq {
        deg[s] += 1;
    }
    let mut ptr = 0;
    while deg[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
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
}

/// Number of labeled trees on `n` vertices (n^(n-2)).
pub fn labeled_tree_count(n: usize) -> u64 {
    match n {
        0 => 0,
        1 | 2 => 1,
        _ => (n as u64).pow(n as u32 - 2),
    }
}

/// Builds the `idx`-th labeled tree on `n` vertices (Prüfer order).
pub fn labeled_tree(n: usize, idx: u64, edges: &mut Vec<(usize, usize)>) {
    debug_assert!(idx < labeled_tree_count(n));
    match n {
        0 | 1 => edges.clear(),
        2 => {
            edges.clear();
            edges.push((0, 1));
        }
        _ => {
            let mut seq = vec![0usize; n - 2];
            let mut rest = idx;
            for slot in seq.iter_mut() {
                *slot = (rest % n as u64) as usize;
                rest /= n as u64;
            }
            prufer_decode(&seq, n, edges);
        }
    }
}

fn tree_graph(edges: &[(usize, usize)]) -> GameGraph {
    let pairs: Vec<(&str, &str)> = edges.iter().map(|&(u, v)| (NAMES[u], NAMES[v])).collect();
    GameGraph::undirected(&[], &pairs).expect("tree edges are simple")
}

fn first_announcement_time(outcome: Outcome) -> Option<u32> {
    match outcome {
        Outcome::FirstAt { time, .. } | Outcome::BothAt { time } => Some(time),
        Outcome::SecondAt { time, .. } => Some(time - 1),
        Outcome::Never => None,
    }
}

/// First guesser and time as the labeling sees the placement edge.
fn labeling_first(lab: &Labeling, a: &str, b: &str) -> Option<(Option<Player>, u32)> {
    let (toward_a, toward_b) = lab.guess_times(a, b)?;
    Some(match (toward_a, toward_b) {
        (Some(ta), Some(tb)) if ta == tb => (None, ta),
        (Some(ta), Some(tb)) => {
            if ta < tb {
                (Some(Player::A), ta)
            } else {
                (Some(Player::B), tb)
            }
        }
        (Some(ta), None) => (Some(Player::A), ta),
        (None, Some(tb)) => (Some(Player::B), tb),
        (None, None) => return None,
    })
}

fn prediction_first(p: Prediction) -> Option<(Option<Player>, u32)> {
    match p {
        Prediction::First { player, time, .. } => Some((Some(player), time)),
        Prediction::Both { time } => Some((None, time)),
        Prediction::Never => None,
    }
}

/// Runs the full oracle / predictor / labeling agreement check over every
/// labeled tree with 2..=max_n vertices, every ordered placement, both
/// speech modes. Also asserts, along the way: the canonical labeling
/// validates cleanly; simultaneous labels equal `min(h(u,v), h(v,u))` with
/// the direction toward the smaller side; alternating announcement times
/// carry the speaker's parity; and no tree placement ever stalls.
pub fn cross_validate_trees(max_n: usize) -> SweepReport {
    let mut total = SweepReport::default();
    for n in 2..=max_n {
        let count = labeled_tree_count(n);
        let chunk = 4096u64.max(count / 256);
        let report = (0..count)
            .step_by(chunk as usize)
            .collect::<Vec<u64>>()
            .into_par_iter()
            .map(|start| {
                let mut rep = SweepReport::default();
                let mut edges = Vec::with_capacity(n);
                for idx in start..(start + chunk).min(count) {
                    labeled_tree(n, idx, &mut edges);
                    let g = tree_graph(&edges);
                    check_tree(&g, n, idx, &mut rep);
                }
                rep
            })
            .reduce(SweepReport::default, SweepReport::merge);
        total = total.merge(report);
    }
    total
}

fn check_tree(g: &GameGraph, n: usize, idx: u64, rep: &mut SweepReport) {
    rep.subjects += 1;
    let tag = |a: &str, b: &str, mode: &str| format!("tree n={n} #{idx} ({a},{b}) {mode}");

    let ht = heights(g).expect("tree");
    let lab_sim = cut_leaves_labeling(g, SIM, NAMES[0]).expect("tree");
    if !validate_labeling(g, SIM, &lab_sim, NAMES[0])
        .expect("tree")
        .is_empty()
    {
        rep.mismatch(format!("tree n={n} #{idx}: simultaneous labeling invalid"));
    }

    // Simultaneous labels are exactly the height minima.
    for (u, v) in g.edges() {
        let hu = ht.h(u, v).unwrap();
        let hv = ht.h(v, u).unwrap();
        let expected = match hu.cmp(&hv) {
            std::cmp::Ordering::Less => (Some(hu), None),
            std::cmp::Ordering::Greater => (None, Some(hv)),
            std::cmp::Ordering::Equal => (Some(hu), Some(hu)),
        };
        if lab_sim.guess_times(u, v) != Some(expected) {
            rep.mismatch(format!(
                "tree n={n} #{idx}: label on {u}-{v} is {:?}, heights say {expected:?}",
                lab_sim.guess_times(u, v)
            ));
        }
    }

    // Alternating labelings per anchor class.
    let classes = bipartition_classes(g, 0);
    let rep_a = NAMES[0];
    let rep_b = (0..n).find(|&i| !classes[i]).map(|i| NAMES[i]);
    let mut lab_alt: Vec<(usize, Labeling)> = Vec::new();
    for anchor in std::iter::once(rep_a).chain(rep_b) {
        let lab = cut_leaves_labeling(g, ALT_A, anchor).expect("tree");
        if !validate_labeling(g, ALT_A, &lab, anchor)
            .expect("tree")
            .is_empty()
        {
            rep.mismatch(format!(
                "tree n={n} #{idx}: alternating labeling (anchor {anchor}) invalid"
            ));
        }
        let key = usize::from(classes[g.idx(anchor).unwrap()]);
        lab_alt.push((key, lab));
    }

    for (u, v) in g.edges() {
        for (a, b) in [(u, v), (v, u)] {
            for mode in [SIM, ALT_A] {
                rep.cases += 1;
                let mode_name = if mode == SIM { "sim" } else { "alt" };
                let oracle = simulate_outcome(g, a, b, mode).expect("valid placement");
                if oracle == Outcome::Never {
                    rep.mismatch(format!(
                        "{}: oracle stalled on a tree",
                        tag(a, b, mode_name)
                    ));
                    continue;
                }
                let analytic = predict(g, a, b, mode).expect("tree placement");
                if oracle.to_prediction() != analytic {
                    rep.mismatch(format!(
                        "{}: oracle {:?} vs predictor {analytic:?}",
                        tag(a, b, mode_name),
                        oracle.to_prediction()
                    ));
                }
                let lab = match mode {
                    SpeechMode::Simultaneous => &lab_sim,
                    SpeechMode::Alternating { .. } => {
                        let key = usize::from(classes[g.idx(a).unwrap()]);
                        &lab_alt.iter().find(|(k, _)| *k == key).unwrap().1
                    }
                };
                // The labeling's direction and time on the placement edge,
                // read with A on `a`.
                let from_label = labeling_first(lab, a, b);
                if from_label != prediction_first(analytic) {
                    rep.mismatch(format!(
                        "{}: labeling says {from_label:?}, predictor {:?}",
                        tag(a, b, mode_name),
                        prediction_first(analytic)
                    ));
                }
                if mode == ALT_A {
                    if let Prediction::First { player, time, .. } = analytic {
                        let expected_odd = player == Player::A;
                        if (time % 2 == 1) != expected_odd {
                            rep.mismatch(format!(
                                "{}: first time {time} has wrong parity",
                                tag(a, b, mode_name)
                            ));
                        }
                    }
                }
            }
        }
    }
}

/// Dichotomy sweep over non-trees: every connected graph with a cycle on
/// 3..=max_n vertices must stall on at least one placement.
pub fn nontree_never_sweep(max_n: usize) -> SweepReport {
    let mut total = SweepReport::default();
    for n in 3..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect();
        let bits = pairs.len();
        let count: u64 = 1 << bits;
        let chunk = 1u64 << 14;
        let report = (0..count)
            .step_by(chunk as usize)
            .collect::<Vec<u64>>()
            .into_par_iter()
            .map(|start| {
                let mut rep = SweepReport::default();
                for mask in start..(start + chunk).min(count) {
                    check_nontree_mask(n, &pairs, mask, &mut rep);
                }
                rep
            })
            .reduce(SweepReport::default, SweepReport::merge);
        total = total.merge(report);
    }
    total
}

fn check_nontree_mask(n: usize, pairs: &[(usize, usize)], mask: u64, rep: &mut SweepReport) {
    let edge_count = mask.count_ones() as usize;
    // Connected non-trees have at least n edges.
    if edge_count < n {
        return;
    }
    // Union-find connectivity over the mask.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = n;
    for (k, &(i, j)) in pairs.iter().enumerate() {
        if mask >> k & 1 == 1 {
            let ri = find(&mut parent, i);
            let rj = find(&mut parent, j);
            if ri != rj {
                parent[ri] = rj;
                components -= 1;
            }
        }
    }
    if components != 1 {
        return;
    }
    rep.subjects += 1;
    rep.cases += 1;
    let edges: Vec<(&str, &str)> = pairs
        .iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, &(i, j))| (NAMES[i], NAMES[j]))
        .collect();
    let g = GameGraph::undirected(&[], &edges).expect("simple");
    let found_never = g
        .edges()
        .any(|(u, v)| simulate_outcome(&g, u, v, SIM).expect("placement") == Outcome::Never);
    if !found_never {
        rep.mismatch(format!(
            "connected non-tree n={n} mask={mask:#x}: no stalling placement"
        ));
    }
}

/// Every placement on every cycle C_3..C_max stalls, in both modes.
pub fn cycles_never_sweep(max_n: usize) -> SweepReport {
    let mut rep = SweepReport::default();
    for n in 3..=max_n {
        rep.subjects += 1;
        let edges: Vec<(&str, &str)> = (0..n).map(|i| (NAMES[i], NAMES[(i + 1) % n])).collect();
        let g = GameGraph::undirected(&[], &edges).expect("cycle");
        for (u, v) in g.edges() {
            for (a, b) in [(u, v), (v, u)] {
                for mode in [SIM, ALT_A] {
                    rep.cases += 1;
                    let outcome = simulate_outcome(&g, a, b, mode).expect("placement");
                    if outcome != Outcome::Never {
                        rep.mismatch(format!("C_{n} placement ({a},{b}) {mode}: got {outcome:?}"));
                    }
                }
            }
        }
    }
    rep
}

/// Pre-agreed-strategy sweep: the labeling has pairwise distinct
/// labels, validates, teaches both players on every placement, and never
/// beats the canonical labeling on any edge (cut-leaves minimality).
pub fn pre_agreed_sweep(max_n: usize) -> SweepReport {
    let mut total = SweepReport::default();
    for n in 2..=max_n {
        let count = labeled_tree_count(n);
        let chunk = 4096u64.max(count / 256);
        let report = (0..count)
            .step_by(chunk as usize)
            .collect::<Vec<u64>>()
            .into_par_iter()
            .map(|start| {
                let mut rep = SweepReport::default();
                let mut edges = Vec::with_capacity(n);
                for idx in start..(start + chunk).min(count) {
                    labeled_tree(n, idx, &mut edges);
                    let g = tree_graph(&edges);
                    check_pre_agreed(&g, n, idx, &mut rep);
                }
                rep
            })
            .reduce(SweepReport::default, SweepReport::merge);
        total = total.merge(report);
    }
    total
}

fn min_edge_label(lab: &Labeling, u: &str, v: &str) -> u32 {
    let (tu, tv) = lab.guess_times(u, v).expect("edge labeled");
    tu.into_iter().chain(tv).min().expect("edge labeled")
}

fn check_pre_agreed(g: &GameGraph, n: usize, idx: u64, rep: &mut SweepReport) {
    rep.subjects += 1;
    let phi = EdgeBijection::lexicographic(g);
    let classes = bipartition_classes(g, 0);
    let anchors_alt: Vec<&str> = {
        let mut v = vec![NAMES[0]];
        if let Some(i) = (0..n).find(|&i| !classes[i]) {
            v.push(NAMES[i]);
        }
        v
    };

    let mut run = |mode: SpeechMode, anchor: &str| {
        rep.cases += 1;
        let tag = format!("tree n={n} #{idx} {mode} anchor {anchor}");
        let lab = match both_players_labeling(g, mode, anchor, &phi) {
            Ok(l) => l,
            Err(e) => {
                rep.mismatch(format!("{tag}: construction failed: {e}"));
                return;
            }
        };
        let mut labels: Vec<u32> = lab.rows().iter().map(|r| r.label).collect();
        labels.sort_unstable();
        let distinct = labels.windows(2).all(|w| w[0] != w[1]);
        if !distinct {
            rep.mismatch(format!("{tag}: duplicate labels"));
        }
        match validate_labeling(g, mode, &lab, anchor) {
            Ok(v) if v.is_empty() => {}
            Ok(v) => rep.mismatch(format!("{tag}: {} violations: {:?}", v.len(), v.first())),
            Err(e) => rep.mismatch(format!("{tag}: validation errored: {e}")),
        }
        match verify_both_learn(g, mode, &lab) {
            Ok(true) => {}
            Ok(false) => rep.mismatch(format!("{tag}: some placement leaves a player stuck")),
            Err(e) => rep.mismatch(format!("{tag}: verify errored: {e}")),
        }
        // Cut-leaves minimality against this independently valid labeling.
        let baseline = cut_leaves_labeling(g, mode, anchor).expect("tree");
        for (u, v) in g.edges() {
            if min_edge_label(&baseline, u, v) > min_edge_label(&lab, u, v) {
                rep.mismatch(format!("{tag}: cut-leaves loses minimality on {u}-{v}"));
            }
        }
    };

    run(SIM, NAMES[0]);
    for anchor in anchors_alt {
        run(ALT_A, anchor);
    }
}

/// Mode-adaptation sweep: round trips keep every edge
/// guessable, confirmed by scripted playbook simulation.
pub fn adapt_roundtrip_sweep(max_n: usize) -> SweepReport {
    let mut total = SweepReport::default();
    for n in 2..=max_n {
        let count = labeled_tree_count(n);
        let chunk = 4096u64.max(count / 256);
        let report = (0..count)
            .step_by(chunk as usize)
            .collect::<Vec<u64>>()
            .into_par_iter()
            .map(|start| {
                let mut rep = SweepReport::default();
                let mut edges = Vec::with_capacity(n);
                for idx in start..(start + chunk).min(count) {
                    labeled_tree(n, idx, &mut edges);
                    let g = tree_graph(&edges);
                    check_adapt(&g, n, idx, &mut rep);
                }
                rep
            })
            .reduce(SweepReport::default, SweepReport::merge);
        total = total.merge(report);
    }
    total
}

/// Every placement consistent with the labeling's orientation must end
/// with a correct first announcement under the compiled playbook.
fn playbook_guesses_every_edge(
    g: &GameGraph,
    mode: SpeechMode,
    lab: &Labeling,
    anchor: &str,
    restrict_a_class: bool,
) -> std::result::Result<(), String> {
    let playbook = match playbook_from_labeling(g, mode, lab, anchor) {
        Ok(p) => p,
        Err(e) => return Err(format!("playbook rejected: {e}")),
    };
    let classes = bipartition_classes(g, g.idx(anchor).expect("anchor"));
    for (u, v) in g.edges() {
        for (a, b) in [(u, v), (v, u)] {
            if restrict_a_class && !classes[g.idx(a).expect("vertex")] {
                continue;
            }
            let (outcome, announcements) = simulate_with_playbook_outcome(g, a, b, mode, &playbook)
                .map_err(|e| format!("simulation failed: {e}"))?;
            if outcome == Outcome::Never {
                return Err(format!("placement ({a},{b}) never guessed"));
            }
            for (player, content) in &announcements {
                let truth = match player {
                    Player::A => a,
                    Player::B => b,
                };
                if content != truth {
                    return Err(format!("placement ({a},{b}): wrong announcement {content}"));
                }
            }
        }
    }
    Ok(())
}

fn check_adapt(g: &GameGraph, n: usize, idx: u64, rep: &mut SweepReport) {
    rep.subjects += 1;
    let classes = bipartition_classes(g, 0);
    let mut anchors = vec![NAMES[0]];
    if let Some(i) = (0..n).find(|&i| !classes[i]) {
        anchors.push(NAMES[i]);
    }

    // Simultaneous -> alternating -> simultaneous.
    let lab_sim = cut_leaves_labeling(g, SIM, NAMES[0]).expect("tree");
    for anchor in &anchors {
        rep.cases += 1;
        let tag = format!("tree n={n} #{idx} anchor {anchor}");
        let alt = match adapt_mode(&lab_sim, SIM, ALT_A, anchor) {
            Ok(l) => l,
            Err(e) => {
                rep.mismatch(format!("{tag}: sim->alt failed: {e}"));
                continue;
            }
        };
        match validate_labeling(g, ALT_A, &alt, anchor) {
            Ok(v) if v.is_empty() => {}
            other => {
                rep.mismatch(format!("{tag}: adapted labeling invalid: {other:?}"));
                continue;
            }
        }
        if let Err(e) = playbook_guesses_every_edge(g, ALT_A, &alt, anchor, true) {
            rep.mismatch(format!("{tag} alt leg: {e}"));
        }
        let back = match adapt_mode(&alt, ALT_A, SIM, anchor) {
            Ok(l) => l,
            Err(e) => {
                rep.mismatch(format!("{tag}: alt->sim failed: {e}"));
                continue;
            }
        };
        if let Err(e) = playbook_guesses_every_edge(g, SIM, &back, anchor, false) {
            rep.mismatch(format!("{tag} round trip: {e}"));
        }
        // Any valid labeling is at best as fast as cutting off leaves.
        for (u, v) in g.edges() {
            if min_edge_label(&lab_sim, u, v) > min_edge_label(&back, u, v) {
                rep.mismatch(format!(
                    "{tag}: adapted labeling beats cut-leaves on {u}-{v}"
                ));
            }
        }
    }

    // Alternating -> simultaneous is the identity on labels.
    for anchor in &anchors {
        rep.cases += 1;
        let lab_alt = cut_leaves_labeling(g, ALT_A, anchor).expect("tree");
        match adapt_mode(&lab_alt, ALT_A, SIM, anchor) {
            Ok(as_sim) => {
                if as_sim != lab_alt {
                    rep.mismatch(format!(
                        "tree n={n} #{idx} anchor {anchor}: alt->sim changed labels"
                    ));
                }
                if let Err(e) = playbook_guesses_every_edge(g, SIM, &as_sim, anchor, false) {
                    rep.mismatch(format!("tree n={n} #{idx} anchor {anchor} alt->sim: {e}"));
                }
            }
            Err(e) => rep.mismatch(format!("tree n={n} #{idx} anchor {anchor}: {e}")),
        }
    }
}

/// Simultaneous closed form on paths: placed on the k-th edge of an
/// n-vertex path, the first announcement lands at `min(k, n - k)`.
pub fn path_closed_form(max_n: usize) -> SweepReport {
    let mut rep = SweepReport::default();
    for n in 2..=max_n {
        rep.subjects += 1;
        let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let edges: Vec<(&str, &str)> = names
            .windows(2)
            .map(|w| (w[0].as_str(), w[1].as_str()))
            .collect();
        let g = GameGraph::undirected(&[], &edges).expect("path");
        for k in 1..n {
            rep.cases += 1;
            let a = format!("v{k}");
            let b = format!("v{}", k + 1);
            let outcome = simulate_outcome(&g, &a, &b, SIM).expect("placement");
            let expected = (k as u32).min((n - k) as u32);
            if first_announcement_time(outcome) != Some(expected) {
                rep.mismatch(format!(
                    "P_{n} placement ({a},{b}): {outcome:?}, expected first time {expected}"
                ));
            }
        }
    }
    rep
}

// ---------------------------------------------------------------------------
// Directed censuses
// ---------------------------------------------------------------------------

/// Arc indexing for mask-encoded digraphs: the k-th ordered pair (i, j),
/// i != j, in lexicographic order.
fn arc_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect()
}

/// Independent zig-zag-cycle detector.
///
/// A zig-zag cycle may pass through a vertex twice — once as a local
/// source, once as a local sink — so test for simple cycles in the *peg
/// graph*: every vertex contributes a source peg and a sink peg, and each
/// arc `u -> v` joins u's source peg to v's sink peg. Built straight from
/// the arc list, with acyclicity decided by edge/component counting, this
/// shares no code with the restriction/split pipeline.
fn has_zigzag_cycle_brute(g: &GameGraph) -> bool {
    let n = g.vertex_count();
    let pegs = 2 * n;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); pegs];
    let mut arcs = 0usize;
    for (u, v) in g.edges() {
        let ui = g.idx(u).expect("vertex");
        let vi = g.idx(v).expect("vertex");
        adj[ui].push(n + vi);
        adj[n + vi].push(ui);
        arcs += 1;
    }
    let mut seen = vec![false; pegs];
    let mut components = 0usize;
    for start in 0..pegs {
        if seen[start] {
            continue;
        }
        components += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(p) = stack.pop() {
            for &q in &adj[p] {
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
    }
    arcs > pegs - components
}

/// Trees encoded as arc pairs (one arc each way per edge) must behave
/// exactly like the undirected pipeline.
pub fn embedded_undirected_sweep(max_n: usize) -> SweepReport {
    let mut total = SweepReport::default();
    for n in 2..=max_n {
        let count = labeled_tree_count(n);
        let report = (0..count)
            .collect::<Vec<u64>>()
            .into_par_iter()
            .with_min_len(64)
            .fold(SweepReport::default, |mut rep, idx| {
                let mut edges = Vec::with_capacity(n);
                labeled_tree(n, idx, &mut edges);
                rep.subjects += 1;
                let und = tree_graph(&edges);
                let arcs: Vec<(&str, &str)> = edges
                    .iter()
                    .flat_map(|&(u, v)| [(NAMES[u], NAMES[v]), (NAMES[v], NAMES[u])])
                    .collect();
                let dir = GameGraph::directed(&[], &arcs).expect("simple");
                for (u, v) in und.edges() {
                    for (a, b) in [(u, v), (v, u)] {
                        for mode in [SIM, ALT_A] {
                            rep.cases += 1;
                            let expected = predict(&und, a, b, mode).expect("tree");
                            let got = analyze_directed(
                                &dir,
                                a,
                                b,
                                OrientationConvention::ATail,
                                mode,
                            )
                            .expect("admissible");
                            if got != expected {
                                rep.mismatch(format!(
                                    "tree n={n} #{idx} ({a},{b}) {mode}: embedded {got:?} vs undirected {expected:?}"
                                ));
                            }
                        }
                    }
                }
                rep
            })
            .reduce(SweepReport::default, SweepReport::merge);
        total = total.merge(report);
    }
    total
}

fn digraph_from_mask(_n: usize, pairs: &[(usize, usize)], mask: u64) -> GameGraph {
    let arcs: Vec<(&str, &str)> = pairs
        .iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, &(i, j))| (NAMES[i], NAMES[j]))
        .collect();
    GameGraph::directed(&[], &arcs).expect("simple digraph")
}

/// Per-graph directed consistency check: for every admissible placement
/// and every listed mode, the reduction pipeline must equal the directed
/// oracle in outcome and timing; and the zig-zag-forest verdict must equal
/// "every admissible placement is guessable". Runs `analyze_directed`
/// end-to-end on every case.
fn check_directed_graph(
    g: &GameGraph,
    extra_modes: &[SpeechMode],
    tag: &str,
    rep: &mut SweepReport,
) {
    rep.subjects += 1;
    let mut all_guessable = true;
    let arcs: Vec<(String, String)> = g
        .edges()
        .map(|(u, v)| (u.to_owned(), v.to_owned()))
        .collect();
    for (a, b) in &arcs {
        for mode in std::iter::once(SIM).chain(extra_modes.iter().copied()) {
            rep.cases += 1;
            let analytic = match analyze_directed(g, a, b, OrientationConvention::ATail, mode) {
                Ok(p) => p,
                Err(e) => {
                    rep.mismatch(format!("{tag} ({a},{b}) {mode}: analyze failed: {e}"));
                    continue;
                }
            };
            let oracle =
                match simulate_directed_outcome(g, a, b, OrientationConvention::ATail, mode) {
                    Ok(o) => o,
                    Err(e) => {
                        rep.mismatch(format!("{tag} ({a},{b}) {mode}: oracle failed: {e}"));
                        continue;
                    }
                };
            if oracle.to_prediction() != analytic {
                rep.mismatch(format!(
                    "{tag} ({a},{b}) {mode}: oracle {:?} vs analytic {analytic:?}",
                    oracle.to_prediction()
                ));
            }
            if mode == SIM && oracle == Outcome::Never {
                all_guessable = false;
            }
        }
    }
    match is_zigzag_forest(g) {
        Ok(zz) => {
            if zz != all_guessable {
                rep.mismatch(format!(
                    "{tag}: zig-zag forest {zz} but all-guessable {all_guessable}"
                ));
            }
            // Second route: peg-graph cycle counting must agree with the
            // restriction/split classifier.
            if zz == has_zigzag_cycle_brute(g) {
                rep.mismatch(format!(
                    "{tag}: split verdict {zz} contradicts peg-graph cycle count"
                ));
            }
        }
        Err(e) => rep.mismatch(format!("{tag}: zig-zag test failed: {e}")),
    }
}

/// The same consistency check, sharing the tail-determined reduction
/// across placements (the large canonical census uses this). The analytic
/// side goes through the same staged helpers `analyze_directed` is built
/// from; on non-tree components, where `analyze_directed` falls back to
/// the oracle by contract, the comparison is consistent by construction
/// and only the oracle side is executed.
fn check_directed_graph_fast(
    g: &GameGraph,
    extra_modes: &[SpeechMode],
    tag: &str,
    rep: &mut SweepReport,
) {
    use std::collections::BTreeMap;
    rep.subjects += 1;
    let mut all_guessable = true;

    let mut by_tail: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (a, b) in g.edges() {
        by_tail.entry(a).or_default().push(b);
    }
    let modes: Vec<SpeechMode> = std::iter::once(SIM)
        .chain(extra_modes.iter().copied())
        .collect();

    for (a, heads) in by_tail {
        let red = match reduce_tail(g, a, OrientationConvention::ATail) {
            Ok(r) => r,
            Err(e) => {
                rep.mismatch(format!("{tag} tail {a}: reduction failed: {e}"));
                continue;
            }
        };
        // Per-mode predictor ingredients, shared across this tail's heads.
        let ingredients: Option<Vec<(SpeechMode, crate::graph::HeightTable, Labeling)>> =
            red.tree.as_ref().map(|tree| {
                modes
                    .iter()
                    .map(|&mode| {
                        let ht = heights(tree).expect("tree");
                        let lab = cut_leaves_labeling(tree, mode, &red.a_split).expect("tree");
                        (mode, ht, lab)
                    })
                    .collect()
            });
        for b in heads {
            for &mode in &modes {
                rep.cases += 1;
                let oracle =
                    match simulate_directed_outcome(g, a, b, OrientationConvention::ATail, mode) {
                        Ok(o) => o,
                        Err(e) => {
                            rep.mismatch(format!("{tag} ({a},{b}) {mode}: oracle failed: {e}"));
                            continue;
                        }
                    };
                if mode == SIM && oracle == Outcome::Never {
                    all_guessable = false;
                }
                let (tree, triple) = match (&red.tree, &ingredients) {
                    (Some(t), Some(i)) => (t, i),
                    _ => continue, // oracle fallback: consistent by contract
                };
                let b_s = red
                    .head_vertex(b, OrientationConvention::ATail)
                    .expect("head is in the closure");
                let (_, ht, lab) = triple.iter().find(|(m, _, _)| *m == mode).unwrap();
                let analytic =
                    match crate::predictor::predict_with(tree, ht, lab, &red.a_split, &b_s, mode) {
                        Ok(p) => p,
                        Err(e) => {
                            rep.mismatch(format!("{tag} ({a},{b}) {mode}: predict failed: {e}"));
                            continue;
                        }
                    };
                if oracle.to_prediction() != analytic {
                    rep.mismatch(format!(
                        "{tag} ({a},{b}) {mode}: oracle {:?} vs analytic {analytic:?}",
                        oracle.to_prediction()
                    ));
                }
            }
        }
    }
    match is_zigzag_forest(g) {
        Ok(zz) => {
            if zz != all_guessable {
                rep.mismatch(format!(
                    "{tag}: zig-zag forest {zz} but all-guessable {all_guessable}"
                ));
            }
            // Second route: peg-graph cycle counting must agree with the
            // restriction/split classifier.
            if zz == has_zigzag_cycle_brute(g) {
                rep.mismatch(format!(
                    "{tag}: split verdict {zz} contradicts peg-graph cycle count"
                ));
            }
        }
        Err(e) => rep.mismatch(format!("{tag}: zig-zag test failed: {e}")),
    }
}

/// Raw exhaustive census of every labeled digraph on `1..=max_n` vertices
/// (three modes). Feasible for max_n <= 4.
pub fn directed_raw_exhaustive(max_n: usize) -> SweepReport {
    let mut total = SweepReport::default();
    for n in 1..=max_n {
        let pairs = arc_pairs(n);
        let count: u64 = 1 << pairs.len();
        let report = (0..count)
            .collect::<Vec<u64>>()
            .into_par_iter()
            .with_min_len(1024)
            .fold(SweepReport::default, |mut rep, mask| {
                let g = digraph_from_mask(n, &pairs, mask);
                check_directed_graph(
                    &g,
                    &[ALT_A, ALT_B],
                    &format!("digraph n={n} {mask:#x}"),
                    &mut rep,
                );
                rep
            })
            .reduce(SweepReport::default, SweepReport::merge);
        total = total.merge(report);
    }
    total
}

/// Permutation tables for canonical-form testing of mask-encoded digraphs,
/// laid out for byte-at-a-time application.
struct ArcPermTables {
    bytes: usize,
    /// tables[p * bytes + pos][value] = permuted image of that byte.
    tables: Vec<[u32; 256]>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out
}

impl ArcPermTables {
    fn build(n: usize) -> ArcPermTables {
        let pairs = arc_pairs(n);
        let bits = pairs.len();
        assert!(bits <= 32, "canonical census only supports n <= 6");
        let bytes = bits.div_ceil(8);
        let index_of =
            |i: usize, j: usize| -> usize { i * (n - 1) + if j > i { j - 1 } else { j } };
        let perms: Vec<Vec<usize>> = permutations(n)
            .into_iter()
            .filter(|p| p.iter().enumerate().any(|(i, &pi)| i != pi))
            .collect();
        let mut tables = Vec::with_capacity(perms.len() * bytes);
        for p in &perms {
            for pos in 0..bytes {
                let mut table = [0u32; 256];
                for value in 0..256usize {
                    let mut img = 0u32;
                    for bit in 0..8 {
                        if value >> bit & 1 == 1 {
                            let k = pos * 8 + bit;
                            if k < bits {
                                let (i, j) = pairs[k];
                                img |= 1 << index_of(p[i], p[j]);
                            }
                        }
                    }
                    table[value] = img;
                }
                tables.push(table);
            }
        }
        ArcPermTables { bytes, tables }
    }

    /// True iff `mask` is the minimum of its isomorphism orbit.
    fn is_canonical(&self, mask: u32) -> bool {
        let b: [u8; 4] = mask.to_le_bytes();
        let mut base = 0;
        while base < self.tables.len() {
            let mut img = 0u32;
            for (pos, &byte) in b.iter().enumerate().take(self.bytes) {
                img |= self.tables[base + pos][byte as usize];
            }
            if img < mask {
                return false;
            }
            base += self.bytes;
        }
        true
    }
}

/// Census over canonical representatives of every digraph isomorphism
/// class on exactly `n` vertices (n <= 6). Every quantity compared is
/// invariant under vertex relabeling, so checking one representative per
/// class covers all labeled digraphs; the raw exhaustive and random-sample
/// censuses double-check that invariance empirically.
pub fn directed_canonical_census(n: usize, extra_modes: &[SpeechMode]) -> SweepReport {
    let pairs = arc_pairs(n);
    let tables = ArcPermTables::build(n);
    let count: u64 = 1 << pairs.len();
    let chunk: u64 = 1 << 16;
    (0..count)
        .step_by(chunk as usize)
        .collect::<Vec<u64>>()
        .into_par_iter()
        .map(|start| {
            let mut rep = SweepReport::default();
            for mask in start..(start + chunk).min(count) {
                if !tables.is_canonical(mask as u32) {
                    continue;
                }
                let g = digraph_from_mask(n, &pairs, mask);
                check_directed_graph_fast(
                    &g,
                    extra_modes,
                    &format!("digraph n={n} {mask:#x}"),
                    &mut rep,
                );
            }
            rep
        })
        .reduce(SweepReport::default, SweepReport::merge)
}

/// Seeded random census of labeled digraphs on exactly `n` vertices.
pub fn directed_random_census(
    n: usize,
    count: usize,
    seed: u64,
    extra_modes: &[SpeechMode],
) -> SweepReport {
    let pairs = arc_pairs(n);
    let bits = pairs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let masks: Vec<u64> = (0..count)
        .map(|_| rng.next_u64() & ((1u64 << bits) - 1))
        .collect();
    masks
        .into_par_iter()
        .with_min_len(64)
        .fold(SweepReport::default, |mut rep, mask| {
            let g = digraph_from_mask(n, &pairs, mask);
            check_directed_graph(
                &g,
                extra_modes,
                &format!("digraph n={n} {mask:#x}"),
                &mut rep,
            );
            rep
        })
        .reduce(SweepReport::default, SweepReport::merge)
}

// ---------------------------------------------------------------------------
// Single-graph cross-validation (CLI `check <graph>`)
// ---------------------------------------------------------------------------

/// Per-placement cross-validation of one supplied graph: oracle versus
/// predictor versus labeling on trees, oracle versus reduction pipeline on
/// directed graphs, plain oracle outcomes on undirected non-trees.
pub struct GraphCheckReport {
    pub lines: Vec<String>,
    pub cases: u64,
    pub mismatches: u64,
}

pub fn cross_validate_graph(g: &GameGraph, modes: &[SpeechMode]) -> Result<GraphCheckReport> {
    let mut lines = Vec::new();
    let mut cases = 0u64;
    let mut mismatches = 0u64;

    if g.is_directed() {
        let arcs: Vec<(String, String)> = g
            .edges()
            .map(|(u, v)| (u.to_owned(), v.to_owned()))
            .collect();
        for (a, b) in &arcs {
            for &mode in modes {
                cases += 1;
                let analytic = analyze_directed(g, a, b, OrientationConvention::ATail, mode)?;
                let oracle =
                    simulate_directed_outcome(g, a, b, OrientationConvention::ATail, mode)?
                        .to_prediction();
                let ok = analytic == oracle;
                if !ok {
                    mismatches += 1;
                }
                lines.push(format!(
                    "({a},{b}) {mode}: oracle {oracle:?}, reduction {analytic:?}{}",
                    if ok { "" } else { "  <-- MISMATCH" }
                ));
            }
        }
        lines.push(format!("zig-zag forest: {}", is_zigzag_forest(g)?));
        return Ok(GraphCheckReport {
            lines,
            cases,
            mismatches,
        });
    }

    let tree = is_tree(g)?;
    let placements: Vec<(String, String)> = g
        .edges()
        .flat_map(|(u, v)| [(u.to_owned(), v.to_owned()), (v.to_owned(), u.to_owned())])
        .collect();
    for (a, b) in &placements {
        for &mode in modes {
            cases += 1;
            let oracle = simulate_outcome(g, a, b, mode)?;
            if tree {
                let analytic = predict(g, a, b, mode)?;
                let lab = cut_leaves_labeling(g, mode, a)?;
                let label_first = labeling_first(&lab, a, b);
                let ok =
                    oracle.to_prediction() == analytic && label_first == prediction_first(analytic);
                if !ok {
                    mismatches += 1;
                }
                lines.push(format!(
                    "({a},{b}) {mode}: oracle {:?}, predictor {analytic:?}, label {label_first:?}{}",
                    oracle.to_prediction(),
                    if ok { "" } else { "  <-- MISMATCH" }
                ));
            } else {
                lines.push(format!(
                    "({a},{b}) {mode}: oracle {:?}",
                    oracle.to_prediction()
                ));
            }
        }
    }
    Ok(GraphCheckReport {
        lines,
        cases,
        mismatches,
    })
}
