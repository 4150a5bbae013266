//! The fixed-point iteration: solve the bounded game, remove Player 0's
//! attractor of its winning region, repeat until the bounded region is empty.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{attractor, remove_region};
use crate::strategy::{Layer, LayeredCertificate};
use crate::{FiniteStateStrategy, Game, GameSolution, MemoryStructure, Player, PositionalStrategy, Result, Strategy, VertexSet};

/// Solves the bounded game on a subgame. Strategies refer to the subgame.
pub type LayerSolver<'a> = dyn FnMut(&Game) -> Result<GameSolution> + 'a;

/// One round of the iteration, over the original vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iteration {
    /// `X_j`, Player 0's region in the bounded game on the remaining arena.
    pub winning: VertexSet,
    /// `W^j`, everything removed so far.
    pub accumulated: VertexSet,
}

#[derive(Clone, Debug)]
pub struct FixpointOutcome {
    /// Player 1's strategy is unavailable: it needs infinite memory.
    pub solution: GameSolution,
    /// One entry per round including the final one with `X_j = ∅`.
    pub trace: Vec<Iteration>,
    /// The bounded-game strategy of Player 1 on the arena left at the end,
    /// embedded into the original arena. The spoiler restarts it.
    pub opponent: Option<Strategy>,
}

impl FixpointOutcome {
    pub fn certificate(&self) -> &LayeredCertificate {
        self.solution.certificate.as_ref().expect("fixpoint always certifies")
    }

    pub fn iterations(&self) -> usize {
        self.trace.len()
    }
}

pub fn fixpoint(game: &Game, solve_bounded: &mut LayerSolver<'_>) -> Result<FixpointOutcome> {
    let n = game.vertex_count();
    let mut current = game.clone();
    let mut origin: Vec<usize> = (0..n).collect();
    let mut accumulated = VertexSet::empty(n);
    let mut layers = Vec::new();
    let mut trace = Vec::new();
    let lift = |origin: &[usize], set: &VertexSet| VertexSet::from_indices(n, set.iter().map(|i| origin[i]));
    let opponent = loop {
        let bounded = solve_bounded(&current)?;
        if bounded.region0.is_empty() {
            trace.push(Iteration { winning: VertexSet::empty(n), accumulated: accumulated.clone() });
            break bounded.strategy1.map(|s| s.embed(&origin, n));
        }
        let att = attractor(&current.arena, Player::Zero, &bounded.region0, None)?;
        let mut rank = vec![None; n];
        for (i, r) in att.rank.iter().enumerate() {
            rank[origin[i]] = *r;
        }
        let strategy0 = bounded.strategy0.ok_or_else(|| {
            crate::Error::Inconsistent(String::from("bounded solver returned no Player 0 strategy"))
        })?;
        let layer = Layer {
            arena: lift(&origin, &VertexSet::full(current.vertex_count())),
            winning: lift(&origin, &bounded.region0),
            attractor: lift(&origin, &att.set),
            rank,
            attractor_moves: match Strategy::Positional(att.strategy).embed(&origin, n) {
                Strategy::Positional(p) => p,
                Strategy::FiniteState(_) => unreachable!("positional stays positional"),
            },
            bounded: strategy0.embed(&origin, n),
        };
        accumulated = accumulated.union(&layer.attractor);
        trace.push(Iteration { winning: layer.winning.clone(), accumulated: accumulated.clone() });
        layers.push(layer);
        let (rest, inner) = remove_region(&current, &att.set)?;
        origin = inner.iter().map(|&i| origin[i]).collect();
        current = rest;
    };
    let certificate = LayeredCertificate { layers };
    let strategy0 = layered_strategy(&certificate, game);
    Ok(FixpointOutcome {
        solution: GameSolution {
            region1: accumulated.complement(),
            region0: accumulated,
            strategy0: Some(strategy0),
            strategy1: None,
            certificate: Some(certificate),
        },
        trace,
        opponent,
    })
}

/// Largest memory among the layers' bounded strategies; states of different
/// layers can share this pool because the current vertex determines the layer.
pub fn memory_pool_size(certificate: &LayeredCertificate) -> usize {
    certificate.layers.iter().map(|l| l.bounded.memory_size()).max().unwrap_or(1)
}

/// Combines the layers into one Player 0 strategy: the bounded strategy of
/// layer `j` inside `X_j`, its attractor moves elsewhere in the layer.
///
/// With positional bounded strategies the result is positional. Otherwise the
/// memory is `⊥` outside every `X_j` and `(j, m)` inside `X_j`, restarting the
/// inner memory whenever the play enters a different `X_j`.
pub fn layered_strategy(certificate: &LayeredCertificate, game: &Game) -> Strategy {
    let arena = &game.arena;
    let n = arena.vertex_count();
    let positional = certificate.layers.iter().all(|l| matches!(l.bounded, Strategy::Positional(_)));
    if positional {
        let mut out = PositionalStrategy::empty(Player::Zero, n);
        for layer in &certificate.layers {
            let Strategy::Positional(inner) = &layer.bounded else { unreachable!() };
            for v in layer.attractor.iter().filter(|&v| arena.owner(v) == Player::Zero) {
                let mv = if layer.winning.contains(v) { inner.get(v) } else { layer.attractor_moves.get(v) };
                if let Some(t) = mv {
                    out.set(v, t);
                }
            }
        }
        return Strategy::Positional(out);
    }

    let inner: Vec<FiniteStateStrategy> = certificate.layers.iter().map(|l| l.bounded.to_finite_state()).collect();
    let mut offset = vec![1usize];
    let mut names = vec![String::from("⊥")];
    for (j, fs) in inner.iter().enumerate() {
        for m in 0..fs.memory.state_count() {
            names.push(format!("{}:{}", j + 1, fs.memory.state_name(m)));
        }
        offset.push(offset[j] + fs.memory.state_count());
    }
    let mut x_layer = vec![None; n];
    for (j, layer) in certificate.layers.iter().enumerate() {
        for v in layer.winning.iter() {
            x_layer[v] = Some(j);
        }
    }
    let decode = |state: usize| -> Option<(usize, usize)> {
        if state == 0 {
            return None;
        }
        let j = offset.iter().rposition(|&o| o <= state).expect("offset 1 <= state");
        Some((j, state - offset[j]))
    };
    let init = |v: usize| x_layer[v].map_or(0, |j| offset[j] + inner[j].memory.init(v));
    let update = |state: usize, v: usize| match (x_layer[v], decode(state)) {
        (None, _) => 0,
        (Some(j), Some((k, m))) if j == k => offset[j] + inner[j].memory.update(m, v),
        (Some(_), _) => init(v),
    };
    let memory = MemoryStructure::from_fn(names, n, init, update).expect("layered memory");
    Strategy::FiniteState(FiniteStateStrategy::from_fn(Player::Zero, memory, |v, state| {
        if arena.owner(v) != Player::Zero {
            return None;
        }
        let j = certificate.layer_of(v)?;
        let layer = &certificate.layers[j];
        if layer.winning.contains(v) {
            let (k, m) = decode(state)?;
            if k != j {
                return None;
            }
            inner[j].next_move(v, m)
        } else {
            layer.attractor_moves.get(v)
        }
    }))
}
