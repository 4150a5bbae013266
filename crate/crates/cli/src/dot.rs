//! Graphviz export. Player 0 vertices are circles, Player 1 vertices boxes.

use std::fmt::Write as _;

use costgames::{Cost, Game, GameSolution, Player, Strategy};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Edges some memory state of `strategy` moves along.
fn strategy_edges(strategy: &Strategy, n: usize) -> Vec<(usize, usize)> {
    let fs = &strategy.to_finite_state();
    let mut out: Vec<(usize, usize)> = (0..n)
        .flat_map(|v| (0..fs.memory.state_count()).filter_map(move |m| Some(v).zip(fs.next_move(v, m))))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn export_dot(game: &Game, solution: Option<&GameSolution>) -> String {
    let arena = &game.arena;
    let mut out = String::from("digraph game {\n  rankdir=LR;\n");
    for v in arena.vertices() {
        let shape = match arena.owner(v) {
            Player::Zero => "circle",
            Player::One => "box",
        };
        let label = match game.coloring() {
            Some(c) => format!("{} : {}", arena.name(v), c.color(v)),
            None => arena.name(v).to_string(),
        };
        let _ = write!(out, "  {} [shape={shape}, label={}", quote(arena.name(v)), quote(&label));
        if let Some(sol) = solution {
            let fill = if sol.region0.contains(v) { "lightblue" } else { "lightsalmon" };
            let _ = write!(out, ", style=filled, fillcolor={fill}");
        }
        out.push_str("];\n");
    }
    let bold: Vec<(usize, usize)> = solution
        .map(|sol| {
            let mut all: Vec<(usize, usize)> = [&sol.strategy0, &sol.strategy1]
                .into_iter()
                .flatten()
                .flat_map(|s| strategy_edges(s, arena.vertex_count()))
                .collect();
            all.sort_unstable();
            all
        })
        .unwrap_or_default();
    for e in arena.edges() {
        let label = if e.is_all_epsilon() {
            "ε".to_string()
        } else if e.costs.len() == 1 {
            "i".to_string()
        } else {
            e.costs.iter().map(|c| if *c == Cost::Increment { 'i' } else { 'ε' }).collect()
        };
        let _ = write!(out, "  {} -> {} [label={}", quote(arena.name(e.source)), quote(arena.name(e.target)), quote(&label));
        if bold.binary_search(&(e.source, e.target)).is_ok() {
            out.push_str(", style=bold");
        }
        out.push_str("];\n");
    }
    out.push_str("}\n");
    out
}
