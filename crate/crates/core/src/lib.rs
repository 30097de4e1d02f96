//! Analysis engine for the two-player edge-guessing game on graphs.
//!
//! Two players sit on adjacent vertices of a known graph. Each sees the
//! other's vertex but not their own, and at every tick either stays silent
//! or names their own vertex (only when certain). Silence is informative:
//! round after round it prunes the commonly known set of possible
//! placements. This crate computes who figures out their position, when,
//! and under which strategies, and checks every analytic answer against a
//! first-principles possible-worlds simulator.
//!
//! The main entry points:
//!
//! * [`graph`] — graph representation, edge-list parsing, tree predicates,
//!   and the rooted-height tables the analytic layer runs on.
//! * [`labeling`] — the cutting-off-leaves edge labeling (direction = first
//!   guesser, label = announcement time), labeling validation, playbook
//!   synthesis, and adaptation between speech schedules.
//! * [`predictor`] — closed-form "who is first, when, does the partner also
//!   learn" answers derived from heights alone.
//! * [`oracle`] — the epistemic simulator: iterated elimination over
//!   possible worlds, with no analytic shortcuts. Ground truth for
//!   everything else, and the only engine that handles non-tree graphs.
//! * [`directed`] — reduction of the directed-edge variant to the
//!   undirected machinery via zig-zag reachability and vertex splitting.
//! * [`pre_agreed`] — the pre-agreed labeling under which both players
//!   always determine their position.
//! * [`check`] — exhaustive cross-validation harnesses (tree enumeration
//!   via Prüfer sequences, graph censuses, oracle-vs-analytics sweeps).

pub mod check;
pub mod directed;
pub mod error;
pub mod graph;
pub mod labeling;
pub mod mode;
pub mod oracle;
pub mod pre_agreed;
pub mod predictor;

pub use directed::{
    analyze_directed, candidate_sets, is_zigzag_forest, split, CandidateSets,
    OrientationConvention, SplitGraph,
};
pub use error::Error;
pub use graph::{bipartition, heights, is_tree, Bipartition, GameGraph, HeightTable};
pub use labeling::{
    adapt_mode, cut_leaves_labeling, playbook_from_labeling, validate_labeling, Direction,
    LabelRow, Labeling, Playbook, PlaybookEntry, Violation,
};
pub use mode::{Player, SpeechMode};
pub use oracle::{
    simulate, simulate_outcome, simulate_with_playbook, simulate_with_playbook_outcome,
    OracleTrace, Outcome, TraceStep, World,
};
pub use pre_agreed::{both_players_labeling, verify_both_learn, EdgeBijection};
pub use predictor::{predict, second_guesser, ParityHeights, Prediction, SecondOutcome};

pub type Result<T> = std::result::Result<T, Error>;
