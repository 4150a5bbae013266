//! Classical parity games: recursive attractor decomposition.

use crate::graph::attractor;
use crate::{Arena, ParityColoring, Player, PositionalStrategy, Result, VertexSet};

/// Winning regions with uniform positional strategies for both players.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParitySolution {
    pub region0: VertexSet,
    pub region1: VertexSet,
    pub strategy0: PositionalStrategy,
    pub strategy1: PositionalStrategy,
}

impl ParitySolution {
    pub fn region(&self, player: Player) -> &VertexSet {
        match player {
            Player::Zero => &self.region0,
            Player::One => &self.region1,
        }
    }

    pub fn strategy(&self, player: Player) -> &PositionalStrategy {
        match player {
            Player::Zero => &self.strategy0,
            Player::One => &self.strategy1,
        }
    }
}

/// A classical parity game solver. The reductions are parameterized over it
/// so that independent implementations can be compared.
pub trait ParityBackend {
    fn solve(&self, arena: &Arena, coloring: &ParityColoring) -> Result<ParitySolution>;
}

/// Zielonka's recursive algorithm.
#[derive(Copy, Clone, Debug, Default)]
pub struct Zielonka;

impl ParityBackend for Zielonka {
    fn solve(&self, arena: &Arena, coloring: &ParityColoring) -> Result<ParitySolution> {
        solve_parity(arena, coloring)
    }
}

/// Solves the max-parity game on `arena`. Ties between equally good moves go
/// to the successor declared first.
pub fn solve_parity(arena: &Arena, coloring: &ParityColoring) -> Result<ParitySolution> {
    let n = arena.vertex_count();
    let mut moves = [PositionalStrategy::empty(Player::Zero, n), PositionalStrategy::empty(Player::One, n)];
    let (region0, region1) = zielonka(arena, coloring, &VertexSet::full(n), &mut moves)?;
    let [s0, s1] = moves;
    Ok(ParitySolution {
        strategy0: s0.restricted(arena, &region0),
        strategy1: s1.restricted(arena, &region1),
        region0,
        region1,
    })
}

// Each call sets the moves of player q on the whole of its region W_q in `alive`.
fn zielonka(
    arena: &Arena,
    coloring: &ParityColoring,
    alive: &VertexSet,
    moves: &mut [PositionalStrategy; 2],
) -> Result<(VertexSet, VertexSet)> {
    let n = arena.vertex_count();
    if alive.is_empty() {
        return Ok((VertexSet::empty(n), VertexSet::empty(n)));
    }
    let top = alive.iter().map(|v| coloring.color(v)).max().expect("nonempty");
    let p = Player::of_parity(top);
    let q = p.opponent();
    let u = VertexSet::from_fn(n, |v| alive.contains(v) && coloring.color(v) == top);
    let att = attractor(arena, p, &u, Some(alive))?;
    let (w0, w1) = zielonka(arena, coloring, &alive.difference(&att.set), moves)?;
    let lost = if q == Player::Zero { &w0 } else { &w1 };
    if lost.is_empty() {
        let own = &mut moves[p.index()];
        for v in att.set.iter().filter(|&v| arena.owner(v) == p) {
            let next = if u.contains(v) {
                arena.successors(v).find(|&s| alive.contains(s)).expect("subgame without dead ends")
            } else {
                att.strategy.get(v).expect("attractor move")
            };
            own.set(v, next);
        }
        return Ok(match p {
            Player::Zero => (alive.clone(), VertexSet::empty(n)),
            Player::One => (VertexSet::empty(n), alive.clone()),
        });
    }
    let back = attractor(arena, q, lost, Some(alive))?;
    for v in back.set.difference(lost).iter().filter(|&v| arena.owner(v) == q) {
        moves[q.index()].set(v, back.strategy.get(v).expect("attractor move"));
    }
    let (r0, r1) = zielonka(arena, coloring, &alive.difference(&back.set), moves)?;
    Ok(match q {
        Player::Zero => (r0.union(&back.set), r1),
        Player::One => (r0, r1.union(&back.set)),
    })
}

/// Maps colors onto a dense range with the same order and parities. Adjacent
/// used colors of equal parity collapse into one.
pub fn compress_colors(coloring: &ParityColoring) -> ParityColoring {
    let mut used: alloc::vec::Vec<u32> = coloring.colors().to_vec();
    used.sort_unstable();
    used.dedup();
    let mut image: alloc::vec::Vec<u32> = alloc::vec::Vec::with_capacity(used.len());
    for &c in &used {
        let x = match image.last() {
            None => c % 2,
            Some(&prev) if prev % 2 == c % 2 => prev,
            Some(&prev) => prev + 1,
        };
        image.push(x);
    }
    let dense = |c: u32| image[used.binary_search(&c).expect("used color")];
    ParityColoring::new(coloring.colors().iter().map(|&c| dense(c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::fixtures::running_example;
    use crate::{ArenaBuilder, Cost};

    #[test]
    fn even_self_loop() {
        let mut b = ArenaBuilder::new(1);
        b.vertex("v", Player::Zero);
        b.uniform_edge("v", "v", Cost::Epsilon).unwrap();
        let arena = b.build().unwrap();
        let sol = solve_parity(&arena, &ParityColoring::new(alloc::vec![2])).unwrap();
        assert_eq!(sol.region0, VertexSet::full(1));
        assert_eq!(sol.strategy0.get(0), Some(0));
    }

    #[test]
    fn example_without_costs_is_won_by_player_zero() {
        let game = running_example();
        let sol = solve_parity(&game.arena, game.coloring().unwrap()).unwrap();
        assert_eq!(sol.region0, VertexSet::full(7));
    }

    #[test]
    fn compression_keeps_order_and_parity() {
        let c = compress_colors(&ParityColoring::new(alloc::vec![7, 2, 4, 9, 2]));
        assert_eq!(c.colors(), [1, 0, 0, 1, 0]);
    }
}
