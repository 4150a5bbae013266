//! Score sheets: a total preorder on play prefixes of a bounded cost-parity
//! game that turns any finite-state winning strategy of Player 0 into a
//! positional one.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Arena, Error, FiniteStateStrategy, Game, ParityColoring, Player, PositionalStrategy, Result, VertexSet};

/// Bounds of the sheets of one game.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SheetSpace {
    /// Odd bound on all colors.
    pub ell: u32,
    /// Bound on every coordinate but the first.
    pub t: u32,
}

/// A sheet `(c, n, s_ℓ, s_{ℓ-2}, …, s_1)` or one of the sentinels. The derived
/// order is the lexicographic one with `Bottom` least and `Top` greatest.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sheet {
    Bottom,
    Proper(Vec<u32>),
    Top,
}

impl fmt::Display for Sheet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sheet::Bottom => f.write_str("⊥"),
            Sheet::Top => f.write_str("⊤"),
            Sheet::Proper(xs) => {
                f.write_str("(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl SheetSpace {
    pub fn new(ell: u32, t: u32) -> Result<SheetSpace> {
        if ell.is_multiple_of(2) || t == 0 {
            return Err(Error::InvalidSpec(format!("sheet space needs odd ℓ and t ≥ 1, got ℓ={ell}, t={t}")));
        }
        Ok(SheetSpace { ell, t })
    }

    /// The space used for `strategy` on `game`: ℓ is the least odd bound on
    /// the colors and `t` counts the subdivided arena's vertices times the
    /// strategy's memory.
    pub fn for_strategy(game: &Game, coloring: &ParityColoring, memory_size: usize) -> Result<SheetSpace> {
        let subdivided = game.vertex_count() + game.arena.edges().iter().filter(|e| !e.is_all_epsilon()).count();
        let t = u32::try_from(subdivided * memory_size)
            .map_err(|_| Error::BudgetExceeded { what: "sheet coordinate bound", limit: u32::MAX as usize })?;
        SheetSpace::new(coloring.odd_ceiling(), t.max(1))
    }

    /// Number of coordinates, `2 + (ℓ+1)/2`.
    pub fn len(&self) -> usize {
        2 + (self.ell as usize).div_ceil(2)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// 1-based coordinate holding the score of odd color `c`.
    pub fn score_coordinate(&self, c: u32) -> usize {
        3 + ((self.ell - c) / 2) as usize
    }

    pub fn is_proper(&self, xs: &[u32]) -> bool {
        xs.len() == self.len()
            && xs[0] % 2 == 1
            && xs[0] <= self.ell
            && xs[1..].iter().all(|&x| x <= self.t)
    }

    fn is_full(&self, xs: &[u32], k: usize) -> bool {
        if k == 1 {
            xs[0] == self.ell
        } else {
            xs[k - 1] == self.t
        }
    }

    /// Increments a proper sheet at 1-based coordinate `k`, overflowing into
    /// the largest non-full coordinate `k' <= k`.
    pub fn increment(&self, sheet: &Sheet, k: usize) -> Result<Sheet> {
        let Sheet::Proper(xs) = sheet else {
            return Err(Error::InvalidSpec(format!("cannot increment the sentinel {sheet}")));
        };
        if k == 0 || k > self.len() || !self.is_proper(xs) {
            return Err(Error::InvalidSpec(format!("bad increment of {sheet} at {k}")));
        }
        let Some(kp) = (1..=k).rev().find(|&j| !self.is_full(xs, j)) else {
            return Ok(Sheet::Top);
        };
        let mut out = vec![0; self.len()];
        if kp == 1 {
            out[0] = xs[0] + 2;
        } else {
            out[..kp - 1].copy_from_slice(&xs[..kp - 1]);
            out[kp - 1] = xs[kp - 1] + 1;
        }
        Ok(Sheet::Proper(out))
    }

    /// `Sh(v)`: `⊥` for even colors, `(Ω(v), 0, …, 0)` for odd ones.
    pub fn initial(&self, color: u32) -> Sheet {
        if color.is_multiple_of(2) {
            Sheet::Bottom
        } else {
            let mut xs = vec![0; self.len()];
            xs[0] = color;
            Sheet::Proper(xs)
        }
    }

    /// The sheet after moving to a vertex of color `color` along an edge
    /// with the given increment flag.
    pub fn step(&self, sheet: &Sheet, color: u32, increment: bool) -> Sheet {
        match sheet {
            Sheet::Top => Sheet::Top,
            Sheet::Bottom => self.initial(color),
            Sheet::Proper(xs) => {
                let open = xs[0];
                if color > open {
                    self.initial(color)
                } else if increment {
                    self.increment(sheet, 2).expect("proper sheet")
                } else if color.is_multiple_of(2) {
                    // Scores of the colors answered by `color` sit behind s_{color+1}.
                    let keep = self.score_coordinate(color + 1);
                    let mut out = xs.clone();
                    out[keep..].iter_mut().for_each(|x| *x = 0);
                    Sheet::Proper(out)
                } else {
                    self.increment(sheet, self.score_coordinate(color)).expect("proper sheet")
                }
            }
        }
    }

    /// `Sh` of a nonempty play prefix.
    pub fn of_prefix(&self, arena: &Arena, coloring: &ParityColoring, prefix: &[usize]) -> Sheet {
        let mut sheet = self.initial(coloring.color(prefix[0]));
        for w in prefix.windows(2) {
            let e = arena.edge_between(w[0], w[1]).expect("prefix follows edges");
            sheet = self.step(&sheet, coloring.color(w[1]), arena.edge(e).is_increment(0));
        }
        sheet
    }
}

/// Default cap on the triples explored by [`positionalize`].
pub const DEFAULT_EXPLORATION_BUDGET: usize = 5_000_000;

/// Statistics of a positionalization run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Positionalized {
    pub strategy: PositionalStrategy,
    pub space: SheetSpace,
    /// Reachable `(vertex, memory, sheet)` triples.
    pub explored: usize,
    /// Largest sheet reached at each vertex.
    pub max_sheet: Vec<Option<Sheet>>,
}

/// Turns a finite-state Player 0 strategy winning the bounded game from
/// `region` into a positional one: at every vertex, play what `strategy`
/// plays in a reachable configuration with the largest sheet.
///
/// Ties between configurations with equal sheets go to the smaller memory
/// state. Fails with [`Error::NotWinning`] if `⊤` becomes reachable.
pub fn positionalize(
    game: &Game,
    strategy: &FiniteStateStrategy,
    region: &VertexSet,
    budget: usize,
) -> Result<Positionalized> {
    let coloring = crate::cost_parity::require_single_cost_parity(game)?;
    if strategy.player != Player::Zero {
        return Err(Error::InvalidStrategy("positionalization is for Player 0".into()));
    }
    let arena = &game.arena;
    let memory = &strategy.memory;
    let space = SheetSpace::for_strategy(game, coloring, memory.state_count())?;
    let mut seen: BTreeMap<(usize, usize, Sheet), ()> = BTreeMap::new();
    let mut best: Vec<Option<(Sheet, usize)>> = vec![None; arena.vertex_count()];
    let mut queue = VecDeque::new();
    let mut push = |v: usize, m: usize, sheet: Sheet, queue: &mut VecDeque<(usize, usize, Sheet)>| -> Result<()> {
        if sheet == Sheet::Top {
            return Err(Error::NotWinning(format!("sheet ⊤ reachable at {}", arena.name(v))));
        }
        let key = (v, m, sheet);
        if seen.contains_key(&key) {
            return Ok(());
        }
        if seen.len() >= budget {
            return Err(Error::BudgetExceeded { what: "sheet exploration", limit: budget });
        }
        seen.insert(key.clone(), ());
        queue.push_back(key);
        Ok(())
    };
    for v in region.iter() {
        push(v, memory.init(v), space.initial(coloring.color(v)), &mut queue)?;
    }
    while let Some((v, m, sheet)) = queue.pop_front() {
        let better = match &best[v] {
            None => true,
            Some((s, bm)) => sheet > *s || (sheet == *s && m < *bm),
        };
        if better {
            best[v] = Some((sheet.clone(), m));
        }
        let moves: Vec<usize> = if arena.owner(v) == Player::Zero {
            let t = strategy
                .next_move(v, m)
                .ok_or_else(|| Error::InvalidStrategy(format!("no move at {} in state {}", arena.name(v), memory.state_name(m))))?;
            vec![t]
        } else {
            arena.successors(v).collect()
        };
        for t in moves {
            let e = arena
                .edge_between(v, t)
                .ok_or_else(|| Error::InvalidStrategy(format!("move {} -> {} is not an edge", arena.name(v), arena.name(t))))?;
            let next = space.step(&sheet, coloring.color(t), arena.edge(e).is_increment(0));
            push(t, memory.update(m, t), next, &mut queue)?;
        }
    }
    let mut out = PositionalStrategy::empty(Player::Zero, arena.vertex_count());
    for v in arena.vertices().filter(|&v| arena.owner(v) == Player::Zero) {
        if let Some((_, m)) = &best[v] {
            out.set(v, strategy.next_move(v, *m).expect("explored configurations have moves"));
        }
    }
    Ok(Positionalized {
        strategy: out,
        space,
        explored: seen.len(),
        max_sheet: best.into_iter().map(|b| b.map(|(s, _)| s)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::fixtures::running_example;

    fn proper(xs: &[u32]) -> Sheet {
        Sheet::Proper(xs.to_vec())
    }

    #[test]
    fn overflow_examples() {
        let space = SheetSpace::new(5, 3).unwrap();
        let s = proper(&[3, 3, 0, 1, 3]);
        for k in [1, 2] {
            assert_eq!(space.increment(&s, k).unwrap(), proper(&[5, 0, 0, 0, 0]));
        }
        assert_eq!(space.increment(&s, 3).unwrap(), proper(&[3, 3, 1, 0, 0]));
        for k in [4, 5] {
            assert_eq!(space.increment(&s, k).unwrap(), proper(&[3, 3, 0, 2, 0]));
        }
        assert_eq!(space.increment(&proper(&[5, 3, 3, 3, 3]), 5).unwrap(), Sheet::Top);
        assert!(space.increment(&Sheet::Bottom, 1).is_err());
    }

    #[test]
    fn lexicographic_order() {
        assert!(proper(&[3, 3, 0, 1, 1]) < proper(&[3, 3, 1, 0, 3]));
        assert!(Sheet::Bottom < proper(&[1, 0, 0]));
        assert!(proper(&[5, 9, 9]) < Sheet::Top);
    }

    #[test]
    fn example_steps() {
        let game = running_example();
        let space = SheetSpace::new(3, 4).unwrap();
        let arena = &game.arena;
        let c = game.coloring().unwrap();
        let v = |n: &str| arena.vertex(n).unwrap();
        assert_eq!(space.initial(c.color(v("a"))), proper(&[1, 0, 0, 0]));
        assert_eq!(space.initial(c.color(v("b"))), Sheet::Bottom);
        assert_eq!(space.of_prefix(arena, c, &[v("a"), v("b")]), proper(&[1, 0, 0, 0]));
        assert_eq!(space.of_prefix(arena, c, &[v("a"), v("b"), v("b")]), proper(&[1, 1, 0, 0]));
        assert_eq!(space.of_prefix(arena, c, &[v("a"), v("b"), v("c")]), Sheet::Bottom);
        assert_eq!(space.step(&Sheet::Bottom, 0, false), Sheet::Bottom);
    }

    #[test]
    fn odd_step_bumps_its_score_and_even_step_clears_lower_scores() {
        let space = SheetSpace::new(5, 3).unwrap();
        let s = proper(&[5, 1, 0, 2, 2]);
        assert_eq!(space.step(&s, 3, false), proper(&[5, 1, 0, 3, 0]));
        assert_eq!(space.step(&s, 2, false), proper(&[5, 1, 0, 2, 0]));
        assert_eq!(space.step(&s, 4, false), proper(&[5, 1, 0, 0, 0]));
        assert_eq!(space.step(&s, 0, true), proper(&[5, 2, 0, 0, 0]));
    }
}
