//! End-to-end tour on the bundled 22-vertex tree: label it, predict a
//! placement, replay the same placement through the simulator, and build
//! the pre-agreed strategy under which both players always learn.
//!
//! Run with: cargo run -p leafcut --example walkthrough

use leafcut::{
    both_players_labeling, cut_leaves_labeling, playbook_from_labeling, predict, simulate,
    simulate_with_playbook, EdgeBijection, GameGraph, SpeechMode,
};

fn main() -> Result<(), leafcut::Error> {
    let text = include_str!("../../../fixtures/fig1.edges");
    let g = GameGraph::parse(text)?;
    let mode = SpeechMode::Simultaneous;

    let lab = cut_leaves_labeling(&g, mode, "w1")?;
    println!("cutting-off-leaves labeling ({} rows):", lab.rows().len());
    for row in lab.rows().iter().take(5) {
        println!("  {row:?}");
    }
    println!("  ...");

    let p = predict(&g, "w7", "b4", mode)?;
    println!("\nplacement (w7, b4): {p:?}");

    let trace = simulate(&g, "w7", "b4", mode)?;
    println!("simulator outcome:  {:?}", trace.outcome);
    println!("steps taken:        {}", trace.steps.len());

    let phi = EdgeBijection::lexicographic(&g);
    let agreed = both_players_labeling(&g, mode, "w1", &phi)?;
    let playbook = playbook_from_labeling(&g, mode, &agreed, "w1")?;
    let scripted = simulate_with_playbook(&g, "w7", "b4", mode, &playbook)?;
    println!("\nwith the pre-agreed strategy: {:?}", scripted.outcome);
    Ok(())
}
