//! Parity games with costs.
//!
//! The bounded variant reduces to a classical parity game: subdivide the
//! increment edges, remember the largest open request and color the product
//! so that Player 0 wins iff every request is eventually answered or only
//! finitely many increments occur while one is open. The unbounded variant is
//! solved by iterating the bounded solver and peeling off attractors.

mod fixpoint;
mod spoiler;

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::condition::answers;
use crate::graph::{product, subdivide, Origin, ProductMap, Subdivision};
use crate::parity::{ParityBackend, ParitySolution, Zielonka};
use crate::{
    Arena, Error, FiniteStateStrategy, Game, GameSolution, MemoryStructure, ParityColoring, Player,
    PositionalStrategy, Result, Strategy, VertexSet,
};

pub use fixpoint::{fixpoint, layered_strategy, memory_pool_size, FixpointOutcome, Iteration, LayerSolver};
pub use spoiler::{build_spoiler, simulate_play, Driver, OpenRequests, PlayTrace, Spoiler, SpoilerRestart, StepAnnotation, StrategyDriver};

/// The memory `O ∪ {⊥}` tracking the largest unanswered request.
///
/// State 0 is `⊥`; state `i > 0` is the `i`-th smallest odd color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RequestMemory {
    pub memory: MemoryStructure,
    pub odd: Vec<u32>,
}

impl RequestMemory {
    pub const BOTTOM: usize = 0;

    pub fn new(coloring: &ParityColoring) -> RequestMemory {
        let odd = coloring.odd_colors();
        let mut names = vec!["⊥".to_string()];
        names.extend(odd.iter().map(|c| c.to_string()));
        let state_of = |c: u32| odd.binary_search(&c).map(|i| i + 1).expect("odd color of the coloring");
        let init = |v: usize| {
            let c = coloring.color(v);
            if c % 2 == 1 {
                state_of(c)
            } else {
                Self::BOTTOM
            }
        };
        let update = |m: usize, v: usize| {
            if m == Self::BOTTOM {
                return init(v);
            }
            let open = odd[m - 1];
            let c = coloring.color(v);
            if c % 2 == 1 {
                state_of(c.max(open))
            } else if answers(open, c) {
                Self::BOTTOM
            } else {
                m
            }
        };
        let memory = MemoryStructure::from_fn(names, coloring.len(), init, update).expect("well-formed request memory");
        RequestMemory { memory, odd }
    }

    /// The open request represented by a state.
    pub fn request(&self, m: usize) -> Option<u32> {
        if m == Self::BOTTOM {
            None
        } else {
            Some(self.odd[m - 1])
        }
    }

    pub fn state_of(&self, request: Option<u32>) -> Option<usize> {
        match request {
            None => Some(Self::BOTTOM),
            Some(c) => self.odd.binary_search(&c).ok().map(|i| i + 1),
        }
    }
}

/// The game on `subdivided arena × request memory` with the PCRR coloring.
#[derive(Clone, Debug)]
pub struct PcrrReduction {
    pub subdivision: Subdivision,
    pub memory: RequestMemory,
    /// Full product: every pair `(v, m)` is a vertex.
    pub product: Arena,
    pub map: ProductMap,
    pub coloring: ParityColoring,
    pub increment_vertices: VertexSet,
    pub ell: u32,
}

impl PcrrReduction {
    /// Maps a vertex of the subdivided arena to the original vertex it leads to.
    pub fn project(&self, original: &Arena, v: usize) -> usize {
        match self.subdivision.origin[v] {
            Origin::Vertex(o) => o,
            Origin::Edge(e) => original.edge(e).target,
        }
    }

    /// The product vertex a play from original vertex `v` starts in.
    pub fn initial(&self, v: usize) -> usize {
        self.map.initial(&self.memory.memory, v).expect("full product")
    }
}

pub(crate) fn require_single_cost_parity(game: &Game) -> Result<&ParityColoring> {
    let coloring = game
        .coloring()
        .ok_or_else(|| Error::ConditionMismatch("expected a parity condition".into()))?;
    if game.arena.cost_dimension() != 1 {
        return Err(Error::ConditionMismatch(format!(
            "parity games with costs carry one cost function, found {}",
            game.arena.cost_dimension()
        )));
    }
    Ok(coloring)
}

/// The coloring `ℓ+1` on `(v, ⊥)`, `ℓ` on `(v, m)` with `v` an increment-vertex,
/// `Ω(v)` otherwise.
pub fn pcrr_coloring(
    map: &ProductMap,
    coloring: &ParityColoring,
    increment_vertices: &VertexSet,
    ell: u32,
) -> ParityColoring {
    ParityColoring::new(
        map.backward
            .iter()
            .map(|&(v, m)| {
                if m == RequestMemory::BOTTOM {
                    ell + 1
                } else if increment_vertices.contains(v) {
                    ell
                } else {
                    coloring.color(v)
                }
            })
            .collect(),
    )
}

pub fn pcrr_reduction(game: &Game) -> Result<PcrrReduction> {
    let coloring = require_single_cost_parity(game)?;
    let subdivision = subdivide(game);
    let sub_coloring = subdivision.game.coloring().expect("subdivision keeps the condition");
    let memory = RequestMemory::new(sub_coloring);
    let (product, map) = product(&subdivision.game.arena, &memory.memory, true);
    let increment_vertices = subdivision.increment_vertices(0);
    let ell = coloring.ell();
    let pcrr = pcrr_coloring(&map, sub_coloring, &increment_vertices, ell);
    Ok(PcrrReduction { subdivision, memory, product, map, coloring: pcrr, increment_vertices, ell })
}

/// Output of the bounded cost-parity solver.
#[derive(Clone, Debug)]
pub struct BoundedCostParity {
    /// Player 0 gets a positional strategy, Player 1 one with `|O| + 1` states.
    pub solution: GameSolution,
    /// Player 0's strategy read off the product before positionalization; it
    /// uses the request memory of the original arena.
    pub memory_strategy0: FiniteStateStrategy,
    pub reduction: PcrrReduction,
    pub product_solution: ParitySolution,
}

pub fn solve_bounded_cost_parity(game: &Game) -> Result<BoundedCostParity> {
    solve_bounded_cost_parity_with(game, &Zielonka)
}

pub fn solve_bounded_cost_parity_with(game: &Game, backend: &dyn ParityBackend) -> Result<BoundedCostParity> {
    let reduction = pcrr_reduction(game)?;
    let psol = backend.solve(&reduction.product, &reduction.coloring)?;
    let n = game.vertex_count();
    let region0 = VertexSet::from_fn(n, |v| psol.region0.contains(reduction.initial(v)));
    let region1 = region0.complement();
    let memory = RequestMemory::new(game.coloring().expect("checked by the reduction"));

    // The bounded condition is not prefix independent: Player 1 may win by
    // moving into Player 0's region, so its moves are kept everywhere the
    // product says it wins.
    let read_off = |player: Player, region: Option<&VertexSet>| {
        FiniteStateStrategy::from_fn(player, memory.memory.clone(), |v, m| {
            if game.arena.owner(v) != player || region.is_some_and(|r| !r.contains(v)) {
                return None;
            }
            let p = reduction.map.get(v, m)?;
            if !psol.region(player).contains(p) {
                return None;
            }
            psol.strategy(player).get(p).map(|q| reduction.project(&game.arena, reduction.map.vertex(q)))
        })
    };
    let memory_strategy0 = read_off(Player::Zero, Some(&region0));
    let strategy1 = read_off(Player::One, None);
    let strategy0 = extract_positional_max(game, &reduction, &psol)?.restricted(&game.arena, &region0);

    Ok(BoundedCostParity {
        solution: GameSolution {
            region0,
            region1,
            strategy0: Some(Strategy::Positional(strategy0)),
            strategy1: Some(Strategy::FiniteState(strategy1)),
            certificate: None,
        },
        memory_strategy0,
        reduction,
        product_solution: psol,
    })
}

/// Plays, at each vertex, what the product strategy does in the worst memory
/// state Player 0 still wins from. Checks along the way that the product's
/// winning region is downward closed in the memory order `⊥ < 1 < 3 < …`.
pub fn extract_positional_max(game: &Game, reduction: &PcrrReduction, psol: &ParitySolution) -> Result<PositionalStrategy> {
    let sub_arena = &reduction.subdivision.game.arena;
    let states = reduction.memory.memory.state_count();
    let mut out = PositionalStrategy::empty(Player::Zero, game.vertex_count());
    for v in sub_arena.vertices() {
        let winning: Vec<bool> = (0..states)
            .map(|m| psol.region0.contains(reduction.map.get(v, m).expect("full product")))
            .collect();
        if let Some(m) = (1..states).find(|&m| winning[m] && !winning[m - 1]) {
            return Err(Error::Inconsistent(format!(
                "winning region not downward closed at ({}, {})",
                sub_arena.name(v),
                reduction.memory.memory.state_name(m)
            )));
        }
        let Some(max) = winning.iter().rposition(|&w| w) else {
            continue;
        };
        if !reduction.subdivision.is_original(v) || sub_arena.owner(v) != Player::Zero {
            continue;
        }
        let p = reduction.map.get(v, max).expect("full product");
        let q = psol
            .strategy0
            .get(p)
            .ok_or_else(|| Error::Inconsistent(format!("no product move at {}", reduction.product.name(p))))?;
        out.set(v, reduction.project(&game.arena, reduction.map.vertex(q)));
    }
    Ok(out)
}

/// Solves the cost-parity game by the fixed-point iteration over bounded games.
pub fn solve_cost_parity(game: &Game) -> Result<FixpointOutcome> {
    solve_cost_parity_with(game, &Zielonka)
}

pub fn solve_cost_parity_with(game: &Game, backend: &dyn ParityBackend) -> Result<FixpointOutcome> {
    require_single_cost_parity(game)?;
    fixpoint(game, &mut |g: &Game| {
        let bounded = solve_bounded_cost_parity_with(g, backend)?;
        Ok(bounded.solution)
    })
}

#[cfg(test)]
mod tests;
