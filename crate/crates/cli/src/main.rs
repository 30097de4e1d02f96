//! Command-line surface for the edge-guessing game engine.
//!
//! Exit codes: 0 success, 1 check found mismatches or violations, 2 input
//! parse error, 3 invalid placement or unknown vertex, 4 precondition
//! violation (non-tree input to a tree-only command, invalid labeling,
//! inadmissible orientation, ...).

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use leafcut::check::{cross_validate_graph, cross_validate_trees, GraphCheckReport};
use leafcut::{
    both_players_labeling, candidate_sets, cut_leaves_labeling, is_zigzag_forest,
    playbook_from_labeling, predict, simulate, split, validate_labeling, EdgeBijection, Error,
    GameGraph, Labeling, OrientationConvention, Playbook, Player, SpeechMode,
};

#[derive(Parser)]
#[command(
    name = "leafcut",
    version,
    about = "Edge-guessing game analysis on graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Simultaneous,
    Alternating,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlayerArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

impl From<PlayerArg> for Player {
    fn from(p: PlayerArg) -> Player {
        match p {
            PlayerArg::A => Player::A,
            PlayerArg::B => Player::B,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum FormatArg {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Tail,
    Head,
}

impl From<ConventionArg> for OrientationConvention {
    fn from(c: ConventionArg) -> OrientationConvention {
        match c {
            ConventionArg::Tail => OrientationConvention::ATail,
            ConventionArg::Head => OrientationConvention::AHead,
        }
    }
}

#[derive(Args)]
struct ModeArgs {
    /// Speech schedule.
    #[arg(long, value_enum, default_value = "simultaneous")]
    mode: ModeArg,
    /// Starting player (required with --mode alternating).
    #[arg(long, value_enum)]
    starter: Option<PlayerArg>,
}

impl ModeArgs {
    fn speech_mode(&self) -> Result<SpeechMode, String> {
        match (self.mode, self.starter) {
            (ModeArg::Simultaneous, _) => Ok(SpeechMode::Simultaneous),
            (ModeArg::Alternating, Some(s)) => Ok(SpeechMode::Alternating { starter: s.into() }),
            (ModeArg::Alternating, None) => {
                Err("--starter A|B is required with --mode alternating".to_owned())
            }
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the cutting-off-leaves labeling of a tree.
    Analyze {
        graph: PathBuf,
        #[command(flatten)]
        mode: ModeArgs,
        /// Player A's vertex, fixing A's bipartition class (required with
        /// --mode alternating; ignored otherwise).
        #[arg(long)]
        a: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Closed-form prediction for one placement.
    Predict {
        graph: PathBuf,
        #[command(flatten)]
        mode: ModeArgs,
        /// Player A's vertex.
        #[arg(long)]
        a: String,
        /// Player B's vertex.
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Run the epistemic simulator on one placement.
    Simulate {
        graph: PathBuf,
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Emit the per-step trace as JSON lines.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Directed reduction: candidate sets, split graph, zig-zag verdict.
    Reduce {
        graph: PathBuf,
        /// Player A's vertex (the closure is built from it).
        #[arg(long)]
        a: String,
        /// Which end of an oriented edge player A occupies.
        #[arg(long, value_enum, default_value = "tail")]
        convention: ConventionArg,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        /// Write the split graph as an edge list to this path, with the
        /// origin map in a `.origin.json` sidecar.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pre-agreed labeling and playbooks under which both players learn.
    Strategy {
        graph: PathBuf,
        #[command(flatten)]
        mode: ModeArgs,
        /// Player A's vertex (class anchor; required with alternating).
        #[arg(long)]
        a: Option<String>,
        /// Explicit edge bijection file: one `u v value` line per edge.
        #[arg(long)]
        phi: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Cross-validate oracle against predictor and labeling.
    Check {
        /// Graph to check placement-by-placement; without it, enumerate
        /// all labeled trees up to --max-n.
        graph: Option<PathBuf>,
        #[command(flatten)]
        mode: ModeArgs,
        /// Player A's class anchor (labeling validation, alternating).
        #[arg(long)]
        a: Option<String>,
        /// Enumeration ceiling for the tree sweep.
        #[arg(long, default_value = "7")]
        max_n: usize,
        /// Validate this labeling file against the graph instead.
        #[arg(long)]
        labeling: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err.downcast_ref::<Error>() {
                Some(Error::Parse { .. }) => 2,
                Some(Error::UnknownVertex { .. }) | Some(Error::InvalidPlacement { .. }) => 3,
                Some(_) => 4,
                None => 2,
            })
        }
    }
}

fn load_graph(path: &Path) -> anyhow::Result<GameGraph> {
    let text = fs::read_to_string(path).map_err(|e| {
        anyhow::anyhow!(Error::Parse {
            line: 0,
            message: format!("cannot read {}: {e}", path.display()),
        })
    })?;
    Ok(GameGraph::parse(&text)?)
}

fn usage_error(msg: String) -> anyhow::Error {
    anyhow::anyhow!(Error::Parse {
        line: 0,
        message: msg,
    })
}

fn default_anchor(g: &GameGraph, a: Option<String>, mode: SpeechMode) -> anyhow::Result<String> {
    match (a, mode) {
        (Some(a), _) => Ok(a),
        (None, SpeechMode::Simultaneous) => Ok(g
            .vertices()
            .next()
            .ok_or_else(|| usage_error("graph has no vertices".to_owned()))?
            .to_owned()),
        (None, SpeechMode::Alternating { .. }) => Err(usage_error(
            "--a <vertex> is required with --mode alternating (fixes player A's class)".to_owned(),
        )),
    }
}

fn labeling_text(lab: &Labeling) -> String {
    let mut s = String::new();
    for row in lab.rows() {
        let line = match row.direction {
            leafcut::Direction::U => format!("{} -> {}  @ {}\n", row.v, row.u, row.label),
            leafcut::Direction::V => format!("{} -> {}  @ {}\n", row.u, row.v, row.label),
            leafcut::Direction::Both => format!("{} <-> {}  @ {}\n", row.u, row.v, row.label),
        };
        s.push_str(&line);
    }
    s
}

fn print_labeling(lab: &Labeling, format: FormatArg) {
    match format {
        FormatArg::Json => println!("{}", serde_json::to_string(lab).expect("serializable")),
        FormatArg::Dot => print!("{}", lab.to_dot()),
        FormatArg::Text => print!("{}", labeling_text(lab)),
    }
}

fn parse_phi(g: &GameGraph, path: &Path) -> anyhow::Result<EdgeBijection> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage_error(format!("cannot read {}: {e}", path.display())))?;
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            [u, v, k] => {
                let value: u32 = k.parse().map_err(|_| {
                    anyhow::anyhow!(Error::Parse {
                        line: lineno + 1,
                        message: format!("bad bijection value `{k}`"),
                    })
                })?;
                pairs.push((((*u).to_owned(), (*v).to_owned()), value));
            }
            _ => {
                return Err(anyhow::anyhow!(Error::Parse {
                    line: lineno + 1,
                    message: format!("expected `u v value`, got `{}`", content.trim()),
                }))
            }
        }
    }
    Ok(EdgeBijection::from_pairs(g, &pairs)?)
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Analyze {
            graph,
            mode,
            a,
            format,
        } => {
            let g = load_graph(&graph)?;
            let mode = mode.speech_mode().map_err(usage_error)?;
            let anchor = default_anchor(&g, a, mode)?;
            let lab = cut_leaves_labeling(&g, mode, &anchor)?;
            print_labeling(&lab, format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Predict {
            graph,
            mode,
            a,
            b,
            format,
        } => {
            let g = load_graph(&graph)?;
            let mode = mode.speech_mode().map_err(usage_error)?;
            let p = predict(&g, &a, &b, mode)?;
            match format {
                FormatArg::Text => println!("{}", prediction_text(p)),
                _ => println!("{}", serde_json::to_string(&p).expect("serializable")),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate {
            graph,
            mode,
            a,
            b,
            trace,
            format,
        } => {
            let g = load_graph(&graph)?;
            let mode = mode.speech_mode().map_err(usage_error)?;
            let result = simulate(&g, &a, &b, mode)?;
            if trace {
                print!("{}", result.to_jsonl());
            } else {
                match format {
                    FormatArg::Text => println!("{}", outcome_text(result.outcome)),
                    _ => println!(
                        "{{\"outcome\":{}}}",
                        serde_json::to_string(&result.outcome).expect("serializable")
                    ),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce {
            graph,
            a,
            convention,
            format,
            out,
        } => {
            let g = load_graph(&graph)?;
            let convention = convention.into();
            let cs = candidate_sets(&g, &a, convention)?;
            let sg = split(&cs.restricted)?;
            let zigzag = is_zigzag_forest(&g)?;
            if let Some(path) = &out {
                fs::write(path, sg.graph.to_edge_list())?;
                let sidecar = path.with_extension(
                    path.extension()
                        .map(|e| format!("{}.origin.json", e.to_string_lossy()))
                        .unwrap_or_else(|| "origin.json".to_owned()),
                );
                fs::write(
                    &sidecar,
                    serde_json::to_string_pretty(&sg.origin).expect("serializable"),
                )?;
            }
            match format {
                FormatArg::Json => {
                    let payload = serde_json::json!({
                        "va": cs.va,
                        "vb": cs.vb,
                        "dropped": cs.dropped,
                        "split_edges": sg.graph.edges().collect::<Vec<_>>(),
                        "origin": sg.origin,
                        "zigzag_forest": zigzag,
                    });
                    println!("{payload}");
                }
                FormatArg::Dot => {
                    let mut s = String::from("digraph split {\n");
                    for (u, v) in sg.graph.edges() {
                        s.push_str(&format!("  \"{u}\" -> \"{v}\";\n"));
                    }
                    s.push_str("}\n");
                    print!("{s}");
                }
                FormatArg::Text => {
                    println!("candidates for A: {}", cs.va.join(" "));
                    println!("candidates for B: {}", cs.vb.join(" "));
                    println!("dropped: {}", cs.dropped.join(" "));
                    print!("{}", sg.graph.to_edge_list());
                    println!("zig-zag forest: {zigzag}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Strategy {
            graph,
            mode,
            a,
            phi,
            format,
        } => {
            let g = load_graph(&graph)?;
            let mode = mode.speech_mode().map_err(usage_error)?;
            let anchor = default_anchor(&g, a, mode)?;
            let bijection = match &phi {
                Some(path) => parse_phi(&g, path)?,
                None => EdgeBijection::lexicographic(&g),
            };
            let lab = both_players_labeling(&g, mode, &anchor, &bijection)?;
            let playbook = playbook_from_labeling(&g, mode, &lab, &anchor)?;
            match format {
                FormatArg::Json => {
                    let payload = serde_json::json!({
                        "labeling": lab,
                        "playbook": playbook,
                    });
                    println!("{payload}");
                }
                FormatArg::Dot => print!("{}", lab.to_dot()),
                FormatArg::Text => {
                    print!("{}", labeling_text(&lab));
                    print!("{}", playbook_text(&playbook));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check {
            graph,
            mode,
            a,
            max_n,
            labeling,
            format,
        } => {
            let mode_sel = mode.speech_mode().map_err(usage_error)?;
            if let Some(lab_path) = labeling {
                let graph = graph.ok_or_else(|| {
                    usage_error("--labeling requires a graph argument".to_owned())
                })?;
                let g = load_graph(&graph)?;
                let text = fs::read_to_string(&lab_path)
                    .map_err(|e| usage_error(format!("cannot read {}: {e}", lab_path.display())))?;
                let lab: Labeling = serde_json::from_str(&text).map_err(|e| {
                    anyhow::anyhow!(Error::Parse {
                        line: 0,
                        message: format!("bad labeling JSON: {e}"),
                    })
                })?;
                let anchor = default_anchor(&g, a, mode_sel)?;
                let violations = validate_labeling(&g, mode_sel, &lab, &anchor)?;
                for v in &violations {
                    println!("violation: {v}");
                }
                println!("{} violations", violations.len());
                return Ok(if violations.is_empty() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                });
            }
            if let Some(graph) = graph {
                let g = load_graph(&graph)?;
                let report = cross_validate_graph(&g, &[mode_sel])?;
                print_graph_report(&report, format);
                return Ok(if report.mismatches == 0 {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                });
            }
            let report = cross_validate_trees(max_n);
            match format {
                FormatArg::Json => println!(
                    "{}",
                    serde_json::json!({
                        "trees": report.subjects,
                        "cases": report.cases,
                        "mismatches": report.mismatch_count,
                        "detail": report.mismatches,
                    })
                ),
                _ => {
                    for m in &report.mismatches {
                        println!("mismatch: {m}");
                    }
                    println!(
                        "checked {} trees (n <= {max_n}), {} cases: {} mismatches",
                        report.subjects, report.cases, report.mismatch_count
                    );
                }
            }
            Ok(if report.is_clean() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn print_graph_report(report: &GraphCheckReport, format: FormatArg) {
    match format {
        FormatArg::Json => println!(
            "{}",
            serde_json::json!({
                "cases": report.cases,
                "mismatches": report.mismatches,
                "lines": report.lines,
            })
        ),
        _ => {
            for line in &report.lines {
                println!("{line}");
            }
            println!("{} cases: {} mismatches", report.cases, report.mismatches);
        }
    }
}

fn prediction_text(p: leafcut::Prediction) -> String {
    use leafcut::{Prediction, SecondOutcome};
    match p {
        Prediction::First {
            player,
            time,
            second,
        } => {
            let second = match second {
                SecondOutcome::LearnsAt(t) => format!("the partner learns at time {t}"),
                SecondOutcome::Never => "the partner never learns".to_owned(),
            };
            format!("player {player} announces first at time {time}; {second}")
        }
        Prediction::Both { time } => format!("both players announce at time {time}"),
        Prediction::Never => "no announcement ever".to_owned(),
    }
}

fn outcome_text(outcome: leafcut::Outcome) -> String {
    use leafcut::Outcome;
    match outcome {
        Outcome::FirstAt { player, time } => {
            format!("player {player} announces at time {time}; the partner stays undetermined")
        }
        Outcome::BothAt { time } => format!("both players announce at time {time}"),
        Outcome::SecondAt { player, time } => format!(
            "player {} announces at time {}; player {player} follows at time {time}",
            player.other(),
            time - 1
        ),
        Outcome::Never => "never: the game stalls".to_owned(),
    }
}

fn playbook_text(pb: &Playbook) -> String {
    let render = |map: &BTreeMap<String, leafcut::PlaybookEntry>| -> String {
        map.iter()
            .map(|(w, entry)| match entry {
                leafcut::PlaybookEntry::Announce { time, announce } => {
                    format!("  observing {w}: announce {announce} at time {time}\n")
                }
                leafcut::PlaybookEntry::Silent(_) => format!("  observing {w}: stay silent\n"),
            })
            .collect()
    };
    format!("player A:\n{}player B:\n{}", render(&pb.a), render(&pb.b))
}
