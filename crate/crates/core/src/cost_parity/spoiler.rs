//! Playing out strategies, including Player 1's infinite-memory spoiler for
//! cost-parity games.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::FixpointOutcome;
use crate::{Arena, Error, FiniteStateStrategy, Game, ParityColoring, Player, Result, VertexSet};

/// Bookkeeping of open parity requests along a play.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OpenRequests {
    /// Open request color -> increments seen before it was raised.
    raised_at: BTreeMap<u32, u64>,
    increments: u64,
}

impl OpenRequests {
    pub fn new() -> Self {
        Self::default()
    }

    /// Processes the color of the vertex just visited.
    pub fn visit(&mut self, color: u32) {
        if color.is_multiple_of(2) {
            self.raised_at.retain(|&c, _| c > color);
        } else {
            self.raised_at.entry(color).or_insert(self.increments);
        }
    }

    /// Processes the edge just taken.
    pub fn traverse(&mut self, increment: bool) {
        if increment {
            self.increments += 1;
        }
    }

    pub fn largest_open(&self) -> Option<u32> {
        self.raised_at.keys().next_back().copied()
    }

    /// Increments since the oldest request that is still open.
    pub fn oldest_open_cost(&self) -> Option<u64> {
        self.raised_at.values().min().map(|&start| self.increments - start)
    }
}

/// Something that picks moves for one player while observing the play.
pub trait Driver {
    fn player(&self) -> Player;
    /// Called once with the initial vertex.
    fn reset(&mut self, start: usize) -> Result<()>;
    /// Picks a successor of `v`, which belongs to this driver's player.
    fn choose(&mut self, arena: &Arena, v: usize) -> Result<usize>;
    /// Observes the move `from -> to` (by either player).
    fn advance(&mut self, arena: &Arena, from: usize, to: usize) -> Result<()>;
    /// Short description of the internal state for traces.
    fn describe(&self) -> String;
}

/// Follows a finite-state strategy.
#[derive(Clone, Debug)]
pub struct StrategyDriver {
    strategy: FiniteStateStrategy,
    state: usize,
}

impl StrategyDriver {
    pub fn new(strategy: FiniteStateStrategy) -> Self {
        StrategyDriver { strategy, state: 0 }
    }
}

impl Driver for StrategyDriver {
    fn player(&self) -> Player {
        self.strategy.player
    }

    fn reset(&mut self, start: usize) -> Result<()> {
        self.state = self.strategy.memory.init(start);
        Ok(())
    }

    fn choose(&mut self, arena: &Arena, v: usize) -> Result<usize> {
        self.strategy
            .next_move(v, self.state)
            .ok_or_else(|| Error::InvalidStrategy(format!("no move at {}", arena.name(v))))
    }

    fn advance(&mut self, _arena: &Arena, _from: usize, to: usize) -> Result<()> {
        self.state = self.strategy.memory.update(self.state, to);
        Ok(())
    }

    fn describe(&self) -> String {
        self.strategy.memory.state_name(self.state).to_string()
    }
}

/// The moment the spoiler gave up on bound `bound`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SpoilerRestart {
    /// Number of moves played when the bound was exceeded.
    pub step: usize,
    pub bound: u64,
    /// Increments the oldest open request had been waiting for.
    pub cost: u64,
}

pub const DEFAULT_SUFFIX_CAP: usize = 1_000_000;

/// Player 1's winning strategy for cost-parity games: play a bounded-game
/// strategy from the start of the recorded suffix; once a request stays open
/// for more than `b` increments, raise `b` and restart from the current vertex.
#[derive(Clone, Debug)]
pub struct Spoiler<'a> {
    arena: &'a Arena,
    coloring: &'a ParityColoring,
    tau: FiniteStateStrategy,
    region: VertexSet,
    bound: u64,
    suffix: Vec<usize>,
    state: usize,
    open: OpenRequests,
    cap: usize,
    steps: usize,
    restarts: Vec<SpoilerRestart>,
}

/// Builds the spoiler from the outcome of the cost-parity fixed point.
pub fn build_spoiler<'a>(game: &'a Game, outcome: &FixpointOutcome) -> Result<Spoiler<'a>> {
    let coloring = super::require_single_cost_parity(game)?;
    let tau = outcome
        .opponent
        .as_ref()
        .ok_or_else(|| Error::Inconsistent("no bounded-game strategy for Player 1".into()))?
        .to_finite_state();
    if tau.player != Player::One {
        return Err(Error::InvalidStrategy("spoiler needs a Player 1 strategy".into()));
    }
    Ok(Spoiler {
        arena: &game.arena,
        coloring,
        tau,
        region: outcome.solution.region1.clone(),
        bound: 1,
        suffix: Vec::new(),
        state: 0,
        open: OpenRequests::new(),
        cap: DEFAULT_SUFFIX_CAP,
        steps: 0,
        restarts: Vec::new(),
    })
}

impl<'a> Spoiler<'a> {
    pub fn with_suffix_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn suffix(&self) -> &[usize] {
        &self.suffix
    }

    pub fn restarts(&self) -> &[SpoilerRestart] {
        &self.restarts
    }

    fn restart_at(&mut self, v: usize) {
        self.suffix.clear();
        self.suffix.push(v);
        self.state = self.tau.memory.init(v);
        self.open = OpenRequests::new();
        self.open.visit(self.coloring.color(v));
    }
}

impl Driver for Spoiler<'_> {
    fn player(&self) -> Player {
        Player::One
    }

    fn reset(&mut self, start: usize) -> Result<()> {
        if !self.region.contains(start) {
            return Err(Error::InvalidSpec(format!(
                "spoiler started at {}, outside Player 1's region",
                self.arena.name(start)
            )));
        }
        self.bound = 1;
        self.steps = 0;
        self.restarts.clear();
        self.restart_at(start);
        Ok(())
    }

    fn choose(&mut self, arena: &Arena, v: usize) -> Result<usize> {
        self.tau
            .next_move(v, self.state)
            .ok_or_else(|| Error::InvalidStrategy(format!("bounded-game strategy undefined at {}", arena.name(v))))
    }

    fn advance(&mut self, arena: &Arena, from: usize, to: usize) -> Result<()> {
        let e = arena
            .edge_between(from, to)
            .ok_or_else(|| Error::InvalidLasso(format!("no edge {} -> {}", arena.name(from), arena.name(to))))?;
        self.steps += 1;
        self.open.traverse(arena.edge(e).is_increment(0));
        self.open.visit(self.coloring.color(to));
        self.state = self.tau.memory.update(self.state, to);
        if self.suffix.len() >= self.cap {
            return Err(Error::BudgetExceeded { what: "spoiler suffix", limit: self.cap });
        }
        self.suffix.push(to);
        if let Some(cost) = self.open.oldest_open_cost() {
            if cost > self.bound {
                self.restarts.push(SpoilerRestart { step: self.steps, bound: self.bound, cost });
                self.bound += 1;
                self.restart_at(to);
            }
        }
        Ok(())
    }

    fn describe(&self) -> String {
        format!("b={} |w|={} m={}", self.bound, self.suffix.len(), self.tau.memory.state_name(self.state))
    }
}

/// Per-position information of a simulated play.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepAnnotation {
    pub vertex: usize,
    /// Largest open request after visiting `vertex`.
    pub open_request: Option<u32>,
    /// Increments the oldest open request has been waiting for.
    pub cost_since_request: Option<u64>,
    /// Driver states of Player 0 and Player 1 after the step.
    pub drivers: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayTrace {
    pub steps: Vec<StepAnnotation>,
}

impl PlayTrace {
    pub fn vertices(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.vertex).collect()
    }
}

/// Plays `steps` moves from `start`; the result has `steps + 1` positions.
pub fn simulate_play(
    game: &Game,
    start: usize,
    drivers: [&mut dyn Driver; 2],
    steps: usize,
) -> Result<PlayTrace> {
    let coloring = game
        .coloring()
        .ok_or_else(|| Error::ConditionMismatch("simulation annotates parity requests".into()))?;
    let arena = &game.arena;
    if start >= arena.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{start}")));
    }
    let [d0, d1] = drivers;
    if d0.player() != Player::Zero || d1.player() != Player::One {
        return Err(Error::InvalidStrategy("drivers passed in the wrong order".into()));
    }
    d0.reset(start)?;
    d1.reset(start)?;
    let mut open = OpenRequests::new();
    open.visit(coloring.color(start));
    let annotate = |v: usize, open: &OpenRequests, d0: &dyn Driver, d1: &dyn Driver| StepAnnotation {
        vertex: v,
        open_request: open.largest_open(),
        cost_since_request: open.oldest_open_cost(),
        drivers: [d0.describe(), d1.describe()],
    };
    let mut out = vec![annotate(start, &open, d0, d1)];
    let mut v = start;
    for _ in 0..steps {
        let next = match arena.owner(v) {
            Player::Zero => d0.choose(arena, v)?,
            Player::One => d1.choose(arena, v)?,
        };
        let e = arena.edge_between(v, next).ok_or_else(|| {
            Error::InvalidStrategy(format!("move {} -> {} is not an edge", arena.name(v), arena.name(next)))
        })?;
        open.traverse(arena.edge(e).is_increment(0));
        open.visit(coloring.color(next));
        d0.advance(arena, v, next)?;
        d1.advance(arena, v, next)?;
        v = next;
        out.push(annotate(v, &open, d0, d1));
    }
    Ok(PlayTrace { steps: out })
}
