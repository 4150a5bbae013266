//! Two-player graph games with cost-based winning conditions.
//!
//! The crate solves parity and Streett games in three flavours: classical,
//! with costs (some bound on the cost of answering requests exists) and
//! bounded with costs (additionally no request stays open while infinitely
//! many increment edges are traversed). Every solver emits strategies that can
//! be independently checked by the verifiers in [`verify`].
//!
//! The crate is `no_std` and only needs `alloc`. File formats, DOT export and
//! the command line front end live in the `costgames-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arena;
pub mod condition;
pub mod cost_parity;
mod error;
pub mod graph;
pub mod lasso;
pub mod parity;
pub mod sheets;
pub mod strategy;
pub mod streett;
pub mod verify;
mod vset;

pub use arena::{Arena, ArenaBuilder, Cost, Edge, Player, Violation};
pub use condition::{Condition, Game, ParityColoring, StreettPair, StreettSpec, Variant};
pub use error::Error;
pub use lasso::{ExtNat, Lasso};
pub use strategy::{FiniteStateStrategy, GameSolution, MemoryStructure, PositionalStrategy, Strategy};
pub use vset::VertexSet;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Solves `game` read as `variant`, dispatching on the kind of condition.
///
/// In the cost variants Player 1 needs infinite memory and gets no strategy.
pub fn solve(game: &Game, variant: Variant) -> Result<GameSolution> {
    game.validate()?;
    match (&game.condition, variant) {
        (Condition::Parity(coloring), Variant::Classical) => {
            let sol = parity::solve_parity(&game.arena, coloring)?;
            Ok(GameSolution {
                region0: sol.region0,
                region1: sol.region1,
                strategy0: Some(Strategy::Positional(sol.strategy0)),
                strategy1: Some(Strategy::Positional(sol.strategy1)),
                certificate: None,
            })
        }
        (Condition::Parity(_), Variant::Cost) => Ok(cost_parity::solve_cost_parity(game)?.solution),
        (Condition::Parity(_), Variant::BoundedCost) => Ok(cost_parity::solve_bounded_cost_parity(game)?.solution),
        (Condition::Streett(spec), Variant::Classical) => Ok(streett::solve_streett(&game.arena, spec)?.solution),
        (Condition::Streett(_), Variant::Cost) => Ok(streett::solve_cost_streett(game)?.solution),
        (Condition::Streett(_), Variant::BoundedCost) => Ok(streett::solve_bounded_cost_streett(game)?.solution),
    }
}
