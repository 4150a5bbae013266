//! Ultimately periodic plays and the reference semantics of every winning
//! condition on them.
//!
//! These evaluators decide membership of `u·w^ω` exactly from the periodic
//! structure and are the ground truth the solvers are tested against.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::condition::answers;
use crate::{Arena, Condition, Error, Game, ParityColoring, Player, Result, StreettSpec, Variant, VertexSet};

/// A natural number or infinity.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtNat {
    Finite(u64),
    Infinite,
}

impl ExtNat {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }
}

impl PartialOrd for ExtNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtNat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => a.cmp(b),
            (ExtNat::Finite(_), ExtNat::Infinite) => Ordering::Less,
            (ExtNat::Infinite, ExtNat::Finite(_)) => Ordering::Greater,
            (ExtNat::Infinite, ExtNat::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(n) => write!(f, "{n}"),
            ExtNat::Infinite => write!(f, "inf"),
        }
    }
}

/// The play `prefix · cycle^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lasso {
    pub prefix: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl Lasso {
    pub fn new(prefix: Vec<usize>, cycle: Vec<usize>) -> Self {
        Lasso { prefix, cycle }
    }

    pub fn from_names(arena: &Arena, prefix: &[&str], cycle: &[&str]) -> Result<Self> {
        let map = |names: &[&str]| names.iter().map(|n| arena.vertex_or_err(n)).collect::<Result<Vec<_>>>();
        let lasso = Lasso::new(map(prefix)?, map(cycle)?);
        lasso.validate(arena)?;
        Ok(lasso)
    }

    pub fn validate(&self, arena: &Arena) -> Result<()> {
        if self.cycle.is_empty() {
            return Err(Error::InvalidLasso("empty cycle".into()));
        }
        let n = arena.vertex_count();
        if let Some(&v) = self.prefix.iter().chain(self.cycle.iter()).find(|&&v| v >= n) {
            return Err(Error::InvalidLasso(format!("vertex index {v} out of range")));
        }
        for k in 0..self.prefix.len() + self.cycle.len() {
            let (u, v) = (self.at(k), self.at(k + 1));
            if !arena.has_edge(u, v) {
                return Err(Error::InvalidLasso(format!("no edge {} -> {}", arena.name(u), arena.name(v))));
            }
        }
        Ok(())
    }

    /// Vertex at position `k` of the infinite play.
    pub fn at(&self, k: usize) -> usize {
        if k < self.prefix.len() {
            self.prefix[k]
        } else {
            self.cycle[(k - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// Positions `0..transient_len()` represent every position up to periodicity.
    pub fn transient_len(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    /// Label of the edge leaving position `k` in cost dimension `dim`.
    pub fn step_increments(&self, arena: &Arena, k: usize, dim: usize) -> bool {
        let e = arena.edge_between(self.at(k), self.at(k + 1)).expect("lasso validated against arena");
        arena.edge(e).is_increment(dim)
    }

    pub fn cycle_has_increment(&self, arena: &Arena, dim: usize) -> bool {
        let p = self.prefix.len();
        (p..p + self.cycle.len()).any(|k| self.step_increments(arena, k, dim))
    }

    pub fn cycle_vertices(&self) -> &[usize] {
        &self.cycle
    }

    /// Minimal cost from position `k` to the first position `k' >= k` whose
    /// vertex satisfies `is_answer`; infinite if no such position exists.
    fn cost_to(&self, arena: &Arena, k: usize, dim: usize, is_answer: impl Fn(usize) -> bool) -> ExtNat {
        let horizon = k.max(self.prefix.len()) + self.cycle.len();
        let mut cost = 0u64;
        for j in k..horizon {
            if is_answer(self.at(j)) {
                return ExtNat::Finite(cost);
            }
            if self.step_increments(arena, j, dim) {
                cost += 1;
            }
        }
        ExtNat::Infinite
    }

    fn answered(&self, k: usize, is_answer: impl Fn(usize) -> bool) -> bool {
        let horizon = k.max(self.prefix.len()) + self.cycle.len();
        (k..horizon).any(|j| is_answer(self.at(j)))
    }

    /// Maps every vertex through `f` (e.g. projecting product vertices).
    pub fn map(&self, f: impl Fn(usize) -> usize) -> Lasso {
        Lasso::new(self.prefix.iter().map(|&v| f(v)).collect(), self.cycle.iter().map(|&v| f(v)).collect())
    }
}

/// Classical max-parity: Player 0 wins iff the largest cycle color is even.
pub fn eval_parity(lasso: &Lasso, coloring: &ParityColoring) -> Player {
    let max = lasso.cycle.iter().map(|&v| coloring.color(v)).max().unwrap_or(0);
    Player::of_parity(max)
}

/// Cost-of-response at position `k` for the single cost function of a parity game.
pub fn cor(arena: &Arena, coloring: &ParityColoring, lasso: &Lasso, k: usize) -> ExtNat {
    let request = coloring.color(lasso.at(k));
    if request.is_multiple_of(2) {
        return ExtNat::Finite(0);
    }
    lasso.cost_to(arena, k, 0, |v| answers(request, coloring.color(v)))
}

/// Cost-of-response of pair `c` at position `k`, measured with cost function `c`.
pub fn streett_cor(arena: &Arena, spec: &StreettSpec, lasso: &Lasso, c: usize, k: usize) -> ExtNat {
    if !spec.is_request(c, lasso.at(k)) {
        return ExtNat::Finite(0);
    }
    lasso.cost_to(arena, k, c, |v| spec.is_response(c, v))
}

/// Classical Streett: every pair requested on the cycle is answered on the cycle.
pub fn eval_streett(spec: &StreettSpec, lasso: &Lasso) -> Player {
    let ok = spec.pairs.iter().all(|p| {
        !lasso.cycle.iter().any(|&v| p.requests.contains(v)) || lasso.cycle.iter().any(|&v| p.responses.contains(v))
    });
    if ok {
        Player::Zero
    } else {
        Player::One
    }
}

fn winner(zero_wins: bool) -> Player {
    if zero_wins {
        Player::Zero
    } else {
        Player::One
    }
}

/// Decides which player wins `lasso` under `game`'s condition read as `variant`.
///
/// On ultimately periodic plays the cost condition coincides with the
/// classical one: a request on the cycle is either answered within one
/// period (bounded cost) or never. The bounded variant additionally rejects
/// any request that stays unanswered while the cycle traverses an increment
/// edge of the relevant cost function.
pub fn eval_condition(game: &Game, lasso: &Lasso, variant: Variant) -> Result<Player> {
    lasso.validate(&game.arena)?;
    let arena = &game.arena;
    match &game.condition {
        Condition::Parity(coloring) => {
            let classical = eval_parity(lasso, coloring);
            if variant != Variant::BoundedCost || classical == Player::One {
                return Ok(classical);
            }
            if !lasso.cycle_has_increment(arena, 0) {
                return Ok(Player::Zero);
            }
            let unanswered = (0..lasso.transient_len()).any(|k| cor(arena, coloring, lasso, k) == ExtNat::Infinite);
            Ok(winner(!unanswered))
        }
        Condition::Streett(spec) => {
            let classical = eval_streett(spec, lasso);
            if variant != Variant::BoundedCost || classical == Player::One {
                return Ok(classical);
            }
            for c in 0..spec.pair_count() {
                if !lasso.cycle_has_increment(arena, c) {
                    continue;
                }
                if (0..lasso.transient_len()).any(|k| streett_cor(arena, spec, lasso, c, k) == ExtNat::Infinite) {
                    return Ok(Player::One);
                }
            }
            Ok(Player::Zero)
        }
    }
}

/// `(Parity(Ω) ∩ coBüchi(I)) ∪ RR(Ω)`, the ω-regular relaxation of the
/// bounded cost-parity condition; `increment_vertices` are the vertices with
/// incoming increment edges.
pub fn eval_pcrr(coloring: &ParityColoring, increment_vertices: &VertexSet, lasso: &Lasso) -> Player {
    let parity_finite_cost =
        eval_parity(lasso, coloring) == Player::Zero && !lasso.cycle.iter().any(|&v| increment_vertices.contains(v));
    let all_answered = (0..lasso.transient_len()).all(|k| {
        let request = coloring.color(lasso.at(k));
        request.is_multiple_of(2) || lasso.answered(k, |v| answers(request, coloring.color(v)))
    });
    winner(parity_finite_cost || all_answered)
}

/// The Streett analogue of [`eval_pcrr`], one conjunct per pair; pair `c`
/// uses `increment_vertices[c]`.
pub fn eval_scrr(spec: &StreettSpec, increment_vertices: &[VertexSet], lasso: &Lasso) -> Player {
    let ok = spec.pairs.iter().enumerate().all(|(c, p)| {
        let streett = !lasso.cycle.iter().any(|&v| p.requests.contains(v)) || lasso.cycle.iter().any(|&v| p.responses.contains(v));
        let finite_cost = !lasso.cycle.iter().any(|&v| increment_vertices[c].contains(v));
        let all_answered = (0..lasso.transient_len())
            .all(|k| !p.requests.contains(lasso.at(k)) || lasso.answered(k, |v| p.responses.contains(v)));
        (streett && finite_cost) || all_answered
    });
    winner(ok)
}

/// Büchi acceptance: the cycle meets `target`.
pub fn eval_buchi(target: &VertexSet, lasso: &Lasso) -> bool {
    lasso.cycle.iter().any(|&v| target.contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::fixtures::running_example;
    use alloc::vec;

    #[test]
    fn parity_of_cycle_max() {
        let game = running_example();
        let coloring = game.coloring().unwrap();
        let l = Lasso::from_names(&game.arena, &["a"], &["b", "c", "a"]).unwrap();
        assert_eq!(eval_parity(&l, coloring), Player::Zero);
        let l = Lasso::from_names(&game.arena, &["d"], &["e"]).unwrap();
        assert_eq!(eval_parity(&l, coloring), Player::Zero);
    }

    #[test]
    fn cost_of_response_on_example() {
        let game = running_example();
        let coloring = game.coloring().unwrap();
        let l = Lasso::from_names(&game.arena, &[], &["a", "b", "c"]).unwrap();
        assert_eq!(cor(&game.arena, coloring, &l, 0), ExtNat::Finite(0));
        assert_eq!(cor(&game.arena, coloring, &l, 1), ExtNat::Finite(0));
        let l = Lasso::from_names(&game.arena, &["a"], &["b"]).unwrap();
        assert_eq!(cor(&game.arena, coloring, &l, 0), ExtNat::Infinite);
        let l = Lasso::from_names(&game.arena, &["a", "b", "b"], &["c", "a", "b"]).unwrap();
        assert_eq!(cor(&game.arena, coloring, &l, 0), ExtNat::Finite(1));
    }

    #[test]
    fn example_condition_examples() {
        let game = running_example();
        let check = |prefix: &[&str], cycle: &[&str], expected: [Player; 3]| {
            let l = Lasso::from_names(&game.arena, prefix, cycle).unwrap();
            for (variant, want) in Variant::ALL.iter().zip(expected) {
                assert_eq!(eval_condition(&game, &l, *variant).unwrap(), want, "{prefix:?}{cycle:?} {variant}");
            }
        };
        use Player::{One, Zero};
        check(&["a"], &["b"], [Zero, Zero, One]);
        check(&[], &["g"], [Zero, Zero, Zero]);
        check(&[], &["a", "b", "c"], [Zero, Zero, Zero]);
    }

    #[test]
    fn invalid_lasso_is_rejected() {
        let game = running_example();
        let l = Lasso::new(vec![], vec![0, 6]);
        assert!(matches!(eval_condition(&game, &l, Variant::Cost), Err(Error::InvalidLasso(_))));
    }
}
