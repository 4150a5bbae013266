//! Strategy files.
//!
//! ```text
//! strategy player=1 variant=bounded-cost
//! region a b c d e f
//! memory s0 s1          # omitted for positional strategies
//! init a s0             # one per vertex
//! update s0 a s1        # one per state and vertex
//! move a s0 b           # `move a b` when positional
//! ```
//!
//! Lines missing from a finite-state table default to the first memory
//! state; vertices without a `move` line have no prescribed move.

use std::fmt::Write as _;

use costgames::{Arena, FiniteStateStrategy, MemoryStructure, Player, PositionalStrategy, Strategy, Variant, VertexSet};

use crate::game_file::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyFile {
    pub strategy: Strategy,
    pub variant: Option<Variant>,
    /// The vertices the strategy claims to win from.
    pub region: VertexSet,
}

pub fn serialize_strategy(arena: &Arena, strategy: &Strategy, variant: Variant, region: &VertexSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "strategy player={} variant={variant}", strategy.player().index());
    let region = arena.format_set(region);
    let _ = writeln!(out, "{}", format!("region {region}").trim_end());
    match strategy {
        Strategy::Positional(p) => {
            for v in arena.vertices() {
                if let Some(u) = p.get(v) {
                    let _ = writeln!(out, "move {} {}", arena.name(v), arena.name(u));
                }
            }
        }
        Strategy::FiniteState(fs) => {
            let memory = &fs.memory;
            let _ = writeln!(out, "memory {}", memory.state_names().join(" "));
            for v in arena.vertices() {
                let _ = writeln!(out, "init {} {}", arena.name(v), memory.state_name(memory.init(v)));
            }
            for m in 0..memory.state_count() {
                for v in arena.vertices() {
                    let to = memory.update(m, v);
                    let _ = writeln!(out, "update {} {} {}", memory.state_name(m), arena.name(v), memory.state_name(to));
                }
            }
            for v in arena.vertices() {
                for m in 0..memory.state_count() {
                    if let Some(u) = fs.next_move(v, m) {
                        let _ = writeln!(out, "move {} {} {}", arena.name(v), memory.state_name(m), arena.name(u));
                    }
                }
            }
        }
    }
    out
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

pub fn parse_strategy(arena: &Arena, text: &str) -> Result<StrategyFile, ParseError> {
    let n = arena.vertex_count();
    let mut player = None;
    let mut variant = None;
    let mut region = None;
    let mut states: Option<Vec<String>> = None;
    let mut init = vec![0; n];
    let mut update: Vec<usize> = Vec::new();
    let mut moves: Vec<(usize, Option<usize>, usize, usize)> = Vec::new();
    let mut last_line = 1;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let tokens: Vec<&str> = crate::game_file::strip_comment(raw).split_whitespace().collect();
        let Some((&directive, args)) = tokens.split_first() else { continue };
        let vertex = |name: &str| arena.vertex(name).map_or_else(|| err(line, format!("unknown vertex `{name}`")), Ok);
        let state = |states: &Option<Vec<String>>, name: &str| {
            let names = states.as_ref().map_or_else(|| err(line, "`memory` must precede memory tables"), Ok)?;
            names.iter().position(|s| s == name).map_or_else(|| err(line, format!("unknown memory state `{name}`")), Ok)
        };
        if player.is_none() && directive != "strategy" {
            return err(line, "expected header `strategy player=<0|1> [variant=<variant>]`");
        }
        match (directive, args) {
            ("strategy", _) if player.is_some() => return err(line, "header repeated"),
            ("strategy", _) => {
                for token in args {
                    match token.split_once('=') {
                        Some(("player", "0")) => player = Some(Player::Zero),
                        Some(("player", "1")) => player = Some(Player::One),
                        Some(("variant", v)) => {
                            variant = Some(v.parse::<Variant>().or_else(|_| err(line, format!("unknown variant `{v}`")))?)
                        }
                        _ => return err(line, format!("unexpected attribute `{token}`")),
                    }
                }
                if player.is_none() {
                    return err(line, "header lacks player=<0|1>");
                }
            }
            ("region", names) => {
                let mut set = VertexSet::empty(n);
                for name in names {
                    set.insert(vertex(name)?);
                }
                region = Some(set);
            }
            ("memory", names) if states.is_none() && !names.is_empty() => {
                states = Some(names.iter().map(|s| s.to_string()).collect());
                update = vec![0; names.len() * n];
            }
            ("memory", _) => return err(line, "memory must list its states once"),
            ("init", [v, m]) => init[vertex(v)?] = state(&states, m)?,
            ("update", [m, v, to]) => update[state(&states, m)? * n + vertex(v)?] = state(&states, to)?,
            ("move", [v, u]) => moves.push((line, None, vertex(v)?, vertex(u)?)),
            ("move", [v, m, u]) => moves.push((line, Some(state(&states, m)?), vertex(v)?, vertex(u)?)),
            (other, _) => return err(line, format!("malformed `{other}` line")),
        }
    }
    let Some(player) = player else {
        return err(1, "missing header `strategy player=<0|1>`");
    };
    let Some(region) = region else {
        return err(last_line, "missing `region` line");
    };
    let strategy = match states {
        None => {
            let mut p = PositionalStrategy::empty(player, n);
            for (line, m, v, u) in moves {
                if m.is_some() {
                    return err(line, "positional strategy with a memory state");
                }
                p.moves[v] = Some(u);
            }
            Strategy::Positional(p)
        }
        Some(names) => {
            let k = names.len();
            let mut next = vec![None; n * k];
            for (line, m, v, u) in moves {
                let Some(m) = m else {
                    return err(line, "finite-state move without a memory state");
                };
                next[v * k + m] = Some(u);
            }
            let memory = MemoryStructure::new(names, init, update).or_else(|e| err(last_line, e.to_string()))?;
            let fs = FiniteStateStrategy::new(player, memory, next).or_else(|e| err(last_line, e.to_string()))?;
            Strategy::FiniteState(fs)
        }
    };
    Ok(StrategyFile { strategy, variant, region })
}
