//! Winning conditions: parity colorings, Streett pairs and the variant flag.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Arena, Error, Result, VertexSet};

/// Max-parity coloring: Player 0 wins iff the largest color seen infinitely
/// often is even.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityColoring {
    colors: Vec<u32>,
}

impl ParityColoring {
    pub fn new(colors: Vec<u32>) -> Self {
        ParityColoring { colors }
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn max_color(&self) -> u32 {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    /// Smallest odd number strictly greater than every used color.
    pub fn ell(&self) -> u32 {
        let m = self.max_color();
        if self.colors.is_empty() {
            1
        } else if m.is_multiple_of(2) {
            m + 1
        } else {
            m + 2
        }
    }

    /// Smallest odd `l` with every color in `0..=l`.
    pub fn odd_ceiling(&self) -> u32 {
        let m = self.max_color();
        if m.is_multiple_of(2) {
            m + 1
        } else {
            m
        }
    }

    /// Odd colors in the image, ascending.
    pub fn odd_colors(&self) -> Vec<u32> {
        let mut odd: Vec<u32> = self.colors.iter().copied().filter(|c| c % 2 == 1).collect();
        odd.sort_unstable();
        odd.dedup();
        odd
    }

    pub fn restrict(&self, keep: &[usize]) -> ParityColoring {
        ParityColoring::new(keep.iter().map(|&v| self.colors[v]).collect())
    }

    /// Shifts every color up by one, swapping the roles of the players.
    pub fn shifted(&self) -> ParityColoring {
        ParityColoring::new(self.colors.iter().map(|c| c + 1).collect())
    }
}

/// `answer` answers a request of color `request`: it is even and not smaller.
pub fn answers(request: u32, answer: u32) -> bool {
    answer.is_multiple_of(2) && answer >= request
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StreettPair {
    pub requests: VertexSet,
    pub responses: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StreettSpec {
    pub pairs: Vec<StreettPair>,
}

impl StreettSpec {
    pub fn new(pairs: Vec<StreettPair>) -> Self {
        StreettSpec { pairs }
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_request(&self, c: usize, v: usize) -> bool {
        self.pairs[c].requests.contains(v)
    }

    pub fn is_response(&self, c: usize, v: usize) -> bool {
        self.pairs[c].responses.contains(v)
    }

    pub fn restrict(&self, keep: &[usize]) -> StreettSpec {
        let n = keep.len();
        StreettSpec::new(
            self.pairs
                .iter()
                .map(|p| StreettPair {
                    requests: VertexSet::from_fn(n, |i| p.requests.contains(keep[i])),
                    responses: VertexSet::from_fn(n, |i| p.responses.contains(keep[i])),
                })
                .collect(),
        )
    }

    /// The standard encoding of a max-parity coloring: one pair per odd color
    /// `c` with requests `{v | Ω(v) = c}` and responses `{v | Ω(v) even, Ω(v) > c}`.
    /// Each request position belongs to exactly one pair and is answered at the
    /// same positions as in the parity reading, so all three variants agree.
    pub fn from_parity(coloring: &ParityColoring) -> StreettSpec {
        let n = coloring.len();
        let pairs = coloring
            .odd_colors()
            .into_iter()
            .map(|c| StreettPair {
                requests: VertexSet::from_fn(n, |v| coloring.color(v) == c),
                responses: VertexSet::from_fn(n, |v| answers(c, coloring.color(v))),
            })
            .collect();
        StreettSpec::new(pairs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition {
    Parity(ParityColoring),
    Streett(StreettSpec),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    Classical,
    Cost,
    BoundedCost,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Classical, Variant::Cost, Variant::BoundedCost];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Classical => "classical",
            Variant::Cost => "cost",
            Variant::BoundedCost => "bounded-cost",
        }
    }

    /// Classical and cost conditions are prefix independent; bounded-cost is not.
    pub fn is_prefix_independent(self) -> bool {
        self != Variant::BoundedCost
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(Variant::Classical),
            "cost" => Ok(Variant::Cost),
            "bounded-cost" => Ok(Variant::BoundedCost),
            other => Err(Error::InvalidSpec(format!("unknown variant `{other}`"))),
        }
    }
}

/// An arena together with a winning condition for Player 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Game {
    pub arena: Arena,
    pub condition: Condition,
}

impl Game {
    pub fn new(arena: Arena, condition: Condition) -> Result<Game> {
        let game = Game { arena, condition };
        game.validate()?;
        Ok(game)
    }

    pub fn parity(arena: Arena, coloring: ParityColoring) -> Result<Game> {
        Self::new(arena, Condition::Parity(coloring))
    }

    pub fn streett(arena: Arena, spec: StreettSpec) -> Result<Game> {
        Self::new(arena, Condition::Streett(spec))
    }

    pub fn validate(&self) -> Result<()> {
        let violations = self.arena.violations();
        if !violations.is_empty() {
            return Err(Error::InvalidArena(violations));
        }
        let n = self.arena.vertex_count();
        match &self.condition {
            Condition::Parity(coloring) => {
                if coloring.len() != n {
                    return Err(Error::ConditionMismatch(format!(
                        "coloring covers {} of {} vertices",
                        coloring.len(),
                        n
                    )));
                }
                if self.arena.cost_dimension() != 1 {
                    return Err(Error::ConditionMismatch(format!(
                        "parity games carry one cost function, found {}",
                        self.arena.cost_dimension()
                    )));
                }
            }
            Condition::Streett(spec) => {
                if spec.pairs.is_empty() {
                    return Err(Error::ConditionMismatch("Streett condition without pairs".into()));
                }
                for p in &spec.pairs {
                    if p.requests.universe() != n || p.responses.universe() != n {
                        return Err(Error::ConditionMismatch("pair sets over a different vertex set".into()));
                    }
                }
                if self.arena.cost_dimension() != spec.pair_count() {
                    return Err(Error::ConditionMismatch(format!(
                        "{} Streett pairs but {} cost functions",
                        spec.pair_count(),
                        self.arena.cost_dimension()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn coloring(&self) -> Option<&ParityColoring> {
        match &self.condition {
            Condition::Parity(c) => Some(c),
            Condition::Streett(_) => None,
        }
    }

    pub fn streett_spec(&self) -> Option<&StreettSpec> {
        match &self.condition {
            Condition::Streett(s) => Some(s),
            Condition::Parity(_) => None,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.arena.vertex_count()
    }

    /// Same arena and condition with every edge label replaced by epsilon.
    pub fn without_costs(&self) -> Game {
        let edges = self
            .arena
            .edges()
            .iter()
            .map(|e| crate::Edge {
                source: e.source,
                target: e.target,
                costs: alloc::vec![crate::Cost::Epsilon; e.costs.len()],
            })
            .collect();
        Game {
            arena: Arena::unchecked(
                self.arena.names().to_vec(),
                self.arena.owners().to_vec(),
                edges,
                self.arena.cost_dimension(),
            ),
            condition: self.condition.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ell_is_smallest_odd_above_every_color() {
        assert_eq!(ParityColoring::new(alloc::vec![0, 1, 2]).ell(), 3);
        assert_eq!(ParityColoring::new(alloc::vec![0, 3]).ell(), 5);
        assert_eq!(ParityColoring::new(alloc::vec![0]).ell(), 1);
    }

    #[test]
    fn answer_sets() {
        assert!(answers(1, 2));
        assert!(answers(2, 2));
        assert!(!answers(3, 2));
        assert!(!answers(1, 3));
    }
}
