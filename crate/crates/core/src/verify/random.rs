//! Seeded random games for the cross-check batches.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Arena, Cost, Edge, Error, Game, ParityColoring, Player, Result, StreettPair, StreettSpec, VertexSet};

#[derive(Copy, Clone, Debug, PartialEq)]
pub enum RandomCondition {
    /// Colors drawn from `0..colors`.
    Parity { colors: u32 },
    /// Every vertex joins each request and each response set with
    /// probability one third.
    Streett { pairs: usize },
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct RandomGameSpec {
    pub vertices: usize,
    /// Probability of each ordered pair (self-loops included) being an edge.
    pub density: f64,
    pub condition: RandomCondition,
    /// Probability of an edge label being an increment, per dimension.
    pub increment_probability: f64,
    /// Surplus edges beyond this out-degree are dropped at random.
    pub max_out_degree: Option<usize>,
    pub seed: u64,
}

impl RandomGameSpec {
    pub fn parity(vertices: usize, colors: u32, seed: u64) -> Self {
        RandomGameSpec {
            vertices,
            density: 0.35,
            condition: RandomCondition::Parity { colors },
            increment_probability: 0.5,
            max_out_degree: Some(3),
            seed,
        }
    }

    pub fn streett(vertices: usize, pairs: usize, seed: u64) -> Self {
        RandomGameSpec { condition: RandomCondition::Streett { pairs }, ..Self::parity(vertices, 1, seed) }
    }

    fn check(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidSpec(msg.into()));
        if self.vertices == 0 {
            return bad("a game needs at least one vertex");
        }
        if !(0.0..=1.0).contains(&self.density) || !(0.0..=1.0).contains(&self.increment_probability) {
            return bad("probabilities must lie in [0, 1]");
        }
        if self.density == 0.0 && self.vertices > 1 {
            return bad("zero edge density leaves no edges to choose from");
        }
        if self.max_out_degree == Some(0) {
            return bad("out-degree bound must be positive");
        }
        match self.condition {
            RandomCondition::Parity { colors: 0 } => bad("at least one color"),
            RandomCondition::Streett { pairs: 0 } => bad("at least one Streett pair"),
            _ => Ok(()),
        }
    }
}

/// Draws a game; the same spec always yields the same game. Every vertex has
/// at least one successor.
pub fn generate_random_game(spec: &RandomGameSpec) -> Result<Game> {
    spec.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.vertices;
    let dim = match spec.condition {
        RandomCondition::Parity { .. } => 1,
        RandomCondition::Streett { pairs } => pairs,
    };
    let names = (0..n).map(|v| format!("v{v}")).collect();
    let owners = (0..n).map(|_| if rng.gen_bool(0.5) { Player::Zero } else { Player::One }).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        let mut targets: Vec<usize> = (0..n).filter(|_| rng.gen_bool(spec.density)).collect();
        if targets.is_empty() {
            targets.push(rng.gen_range(0..n));
        }
        if let Some(k) = spec.max_out_degree {
            if targets.len() > k {
                targets.shuffle(&mut rng);
                targets.truncate(k);
                targets.sort_unstable();
            }
        }
        for v in targets {
            let costs =
                (0..dim).map(|_| if rng.gen_bool(spec.increment_probability) { Cost::Increment } else { Cost::Epsilon }).collect();
            edges.push(Edge { source: u, target: v, costs });
        }
    }
    let arena = Arena::new(names, owners, edges, dim)?;
    match spec.condition {
        RandomCondition::Parity { colors } => {
            let coloring = ParityColoring::new((0..n).map(|_| rng.gen_range(0..colors)).collect());
            Game::parity(arena, coloring)
        }
        RandomCondition::Streett { pairs } => {
            let mut draw = || VertexSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(1.0 / 3.0)).collect::<Vec<_>>());
            let pairs = (0..pairs).map(|_| StreettPair { requests: draw(), responses: draw() }).collect();
            Game::streett(arena, StreettSpec::new(pairs))
        }
    }
}

/// A batch of `count` seeds derived from `base`.
pub fn seeds(base: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(base);
    let mut out = vec![0; count];
    out.iter_mut().for_each(|s| *s = rng.gen());
    out
}
