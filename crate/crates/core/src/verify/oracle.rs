//! Brute-force solvers: enumerate positional strategies and analyse the
//! cycles each one allows. Exact wherever the relevant player has positional
//! winning strategies, and only feasible on tiny games.

use alloc::vec::Vec;

use super::{streett_satisfying_cycles, verify_strategy, NodePairs, Verdict};
use crate::graph::{parity_cycle_check, Digraph};
use crate::parity::{ParityBackend, ParitySolution};
use crate::{Arena, Error, Game, ParityColoring, Player, PositionalStrategy, Result, Strategy, StreettSpec, Variant, VertexSet};

/// Default limit on the number of strategies enumerated.
pub const DEFAULT_STRATEGY_BUDGET: usize = 1_000_000;

/// All positional strategies of `player` defined on every vertex it owns, in
/// lexicographic order of successor choices.
pub struct PositionalStrategies<'a> {
    arena: &'a Arena,
    player: Player,
    owned: Vec<usize>,
    choice: Vec<usize>,
    done: bool,
}

impl<'a> PositionalStrategies<'a> {
    pub fn new(arena: &'a Arena, player: Player, budget: usize) -> Result<Self> {
        let owned: Vec<usize> = arena.vertices().filter(|&v| arena.owner(v) == player).collect();
        let mut count: usize = 1;
        for &v in &owned {
            count = count.saturating_mul(arena.out_edges(v).len());
            if count > budget {
                return Err(Error::BudgetExceeded { what: "positional strategies", limit: budget });
            }
        }
        Ok(PositionalStrategies { arena, player, choice: alloc::vec![0; owned.len()], owned, done: false })
    }
}

impl Iterator for PositionalStrategies<'_> {
    type Item = PositionalStrategy;

    fn next(&mut self) -> Option<PositionalStrategy> {
        if self.done {
            return None;
        }
        let mut out = PositionalStrategy::empty(self.player, self.arena.vertex_count());
        for (i, &v) in self.owned.iter().enumerate() {
            out.set(v, self.arena.edge(self.arena.out_edges(v)[self.choice[i]]).target);
        }
        self.done = true;
        for i in (0..self.owned.len()).rev() {
            self.choice[i] += 1;
            if self.choice[i] < self.arena.out_edges(self.owned[i]).len() {
                self.done = false;
                break;
            }
            self.choice[i] = 0;
        }
        Some(out)
    }
}

/// The arena's graph with the owner's edges cut down to the strategy's moves.
fn restricted_graph(arena: &Arena, strategy: &PositionalStrategy) -> Digraph {
    let mut g = Digraph::new(arena.vertex_count());
    for v in arena.vertices() {
        match strategy.get(v) {
            Some(t) if arena.owner(v) == strategy.player => g.add_edge(v, t),
            _ => arena.successors(v).for_each(|t| g.add_edge(v, t)),
        }
    }
    g
}

/// Vertices from which a positional parity strategy wins.
fn parity_good_set(arena: &Arena, coloring: &ParityColoring, strategy: &PositionalStrategy) -> VertexSet {
    let g = restricted_graph(arena, strategy);
    let report = parity_cycle_check(&g, |v| coloring.color(v), strategy.player.opponent());
    VertexSet::from_fn(arena.vertex_count(), |v| !report.bad_reachable[v])
}

/// Winning regions of the classical parity game by enumerating Player 0's
/// positional strategies: `v` is in region 0 iff one of them wins from `v`.
pub fn parity_oracle_enumerate(arena: &Arena, coloring: &ParityColoring, budget: usize) -> Result<(VertexSet, VertexSet)> {
    let mut region0 = VertexSet::empty(arena.vertex_count());
    for s in PositionalStrategies::new(arena, Player::Zero, budget)? {
        region0 = region0.union(&parity_good_set(arena, coloring, &s));
        if region0.len() == arena.vertex_count() {
            break;
        }
    }
    let region1 = region0.complement();
    Ok((region0, region1))
}

/// A parity backend that enumerates strategies of both players. It shares no
/// code with the recursive solver beyond the cycle analysis.
#[derive(Copy, Clone, Debug)]
pub struct EnumerationOracle {
    pub budget: usize,
}

impl Default for EnumerationOracle {
    fn default() -> Self {
        EnumerationOracle { budget: DEFAULT_STRATEGY_BUDGET }
    }
}

impl EnumerationOracle {
    /// Some positional strategy of `player` winning from all of its region,
    /// which exists by uniform positional determinacy.
    fn uniform(&self, arena: &Arena, coloring: &ParityColoring, player: Player) -> Result<(VertexSet, PositionalStrategy)> {
        let mut region = VertexSet::empty(arena.vertex_count());
        let mut best: Option<(VertexSet, PositionalStrategy)> = None;
        for s in PositionalStrategies::new(arena, player, self.budget)? {
            let good = parity_good_set(arena, coloring, &s);
            region = region.union(&good);
            if best.as_ref().is_none_or(|(b, _)| good.len() > b.len()) {
                best = Some((good, s));
            }
        }
        let (good, strategy) = best.expect("every arena admits a strategy");
        if good != region {
            return Err(Error::Inconsistent("no uniform positional strategy found".into()));
        }
        Ok((region, strategy))
    }
}

impl ParityBackend for EnumerationOracle {
    fn solve(&self, arena: &Arena, coloring: &ParityColoring) -> Result<ParitySolution> {
        let (region0, s0) = self.uniform(arena, coloring, Player::Zero)?;
        let (region1, s1) = self.uniform(arena, coloring, Player::One)?;
        if region0 != region1.complement() {
            return Err(Error::Inconsistent("enumerated regions do not partition the arena".into()));
        }
        Ok(ParitySolution {
            strategy0: s0.restricted(arena, &region0),
            strategy1: s1.restricted(arena, &region1),
            region0,
            region1,
        })
    }
}

/// Winning regions of the classical Streett game by enumerating Player 1's
/// positional strategies: `v` is in region 1 iff under one of them no cycle
/// satisfying every pair is reachable from `v`.
pub fn streett_oracle_enumerate(arena: &Arena, spec: &StreettSpec, budget: usize) -> Result<(VertexSet, VertexSet)> {
    let n = arena.vertex_count();
    let pairs: NodePairs = spec.pairs.iter().map(|p| (p.requests.clone(), p.responses.clone())).collect();
    let mut region1 = VertexSet::empty(n);
    for s in PositionalStrategies::new(arena, Player::One, budget)? {
        let g = restricted_graph(arena, &s);
        let good = streett_satisfying_cycles(&g, &pairs);
        let heads = good.iter().map(|c| c[0]);
        let lost = g.reverse().reachable(heads);
        region1 = region1.union(&lost.complement());
        if region1.len() == n {
            break;
        }
    }
    Ok((region1.complement(), region1))
}

/// Positional strategies of `player` that win `game` (read as `variant`)
/// from `from`, checked by the verifiers.
pub fn winning_positional_strategies(
    game: &Game,
    variant: Variant,
    player: Player,
    from: usize,
    budget: usize,
) -> Result<Vec<PositionalStrategy>> {
    let start = VertexSet::from_indices(game.vertex_count(), [from]);
    let mut out = Vec::new();
    for s in PositionalStrategies::new(&game.arena, player, budget)? {
        let strategy = Strategy::Positional(s);
        if verify_strategy(game, variant, &strategy, &start)? == Verdict::Accepted {
            let Strategy::Positional(s) = strategy else { unreachable!() };
            out.push(s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::ArenaBuilder;
    use crate::verify::fixtures::running_example;
    use crate::{Cost, StreettPair};

    #[test]
    fn even_self_loop_is_won_everywhere() {
        let mut b = ArenaBuilder::new(1);
        b.vertex("v", Player::Zero);
        b.uniform_edge("v", "v", Cost::Epsilon).unwrap();
        let arena = b.build().unwrap();
        let (w0, _) = parity_oracle_enumerate(&arena, &ParityColoring::new(alloc::vec![0]), 10).unwrap();
        assert_eq!(w0, VertexSet::full(1));
    }

    #[test]
    fn example_classical_region() {
        let g = running_example();
        let (w0, w1) = parity_oracle_enumerate(&g.arena, g.coloring().unwrap(), 10).unwrap();
        assert_eq!(w0, VertexSet::full(7));
        assert!(w1.is_empty());
    }

    #[test]
    fn streett_without_requests_is_won_by_player_zero() {
        let g = running_example();
        let spec = StreettSpec::new(alloc::vec![StreettPair { requests: VertexSet::empty(7), responses: VertexSet::empty(7) }]);
        let (w0, _) = streett_oracle_enumerate(&g.arena, &spec, 10).unwrap();
        assert_eq!(w0, VertexSet::full(7));
    }

    #[test]
    fn enumeration_counts_choices() {
        let g = running_example();
        // a, d, f, g have one successor; b, c, e have two.
        assert_eq!(PositionalStrategies::new(&g.arena, Player::One, 100).unwrap().count(), 8);
        assert!(PositionalStrategies::new(&g.arena, Player::One, 7).is_err());
    }
}
