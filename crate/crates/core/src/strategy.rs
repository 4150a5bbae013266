//! Memory structures, strategies and solver results.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::{Arena, Error, Player, Result, VertexSet};

/// A finite memory `(M, Init, Upd)` over the vertices of an arena.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemoryStructure {
    state_names: Vec<String>,
    vertex_count: usize,
    init: Vec<usize>,
    /// Row-major: `update[m * vertex_count + v]`.
    update: Vec<usize>,
}

impl MemoryStructure {
    pub fn new(state_names: Vec<String>, init: Vec<usize>, update: Vec<usize>) -> Result<Self> {
        let states = state_names.len();
        let n = init.len();
        if states == 0 {
            return Err(Error::InvalidStrategy("memory without states".into()));
        }
        if update.len() != states * n {
            return Err(Error::InvalidStrategy(format!(
                "update table has {} entries, expected {}",
                update.len(),
                states * n
            )));
        }
        if init.iter().chain(update.iter()).any(|&m| m >= states) {
            return Err(Error::InvalidStrategy("memory map leaves the state set".into()));
        }
        Ok(MemoryStructure { state_names, vertex_count: n, init, update })
    }

    /// Builds a memory from closures, evaluated on every state and vertex.
    pub fn from_fn(
        state_names: Vec<String>,
        vertex_count: usize,
        init: impl Fn(usize) -> usize,
        update: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let states = state_names.len();
        let init = (0..vertex_count).map(init).collect();
        let mut table = Vec::with_capacity(states * vertex_count);
        for m in 0..states {
            for v in 0..vertex_count {
                table.push(update(m, v));
            }
        }
        Self::new(state_names, init, table)
    }

    /// The one-state memory that implements positional strategies.
    pub fn trivial(vertex_count: usize) -> Self {
        MemoryStructure {
            state_names: vec!["*".to_string()],
            vertex_count,
            init: vec![0; vertex_count],
            update: vec![0; vertex_count],
        }
    }

    pub fn state_count(&self) -> usize {
        self.state_names.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn state_name(&self, m: usize) -> &str {
        &self.state_names[m]
    }

    pub fn state_names(&self) -> &[String] {
        &self.state_names
    }

    pub fn state_by_name(&self, name: &str) -> Option<usize> {
        self.state_names.iter().position(|s| s == name)
    }

    pub fn init(&self, v: usize) -> usize {
        self.init[v]
    }

    pub fn update(&self, m: usize, v: usize) -> usize {
        self.update[m * self.vertex_count + v]
    }

    /// `Upd⁺` of a nonempty play prefix.
    pub fn run(&self, prefix: &[usize]) -> usize {
        let mut m = self.init(prefix[0]);
        for &v in &prefix[1..] {
            m = self.update(m, v);
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionalStrategy {
    pub player: Player,
    /// Successor chosen at each vertex; `None` where the strategy is undefined.
    pub moves: Vec<Option<usize>>,
}

impl PositionalStrategy {
    pub fn empty(player: Player, vertex_count: usize) -> Self {
        PositionalStrategy { player, moves: vec![None; vertex_count] }
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        self.moves.get(v).copied().flatten()
    }

    pub fn set(&mut self, v: usize, target: usize) {
        self.moves[v] = Some(target);
    }

    /// Keeps only moves from owned vertices inside `domain`.
    pub fn restricted(&self, arena: &Arena, domain: &VertexSet) -> Self {
        let moves = (0..self.moves.len())
            .map(|v| {
                if domain.contains(v) && arena.owner(v) == self.player {
                    self.moves[v]
                } else {
                    None
                }
            })
            .collect();
        PositionalStrategy { player: self.player, moves }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteStateStrategy {
    pub player: Player,
    pub memory: MemoryStructure,
    /// Row-major: `next[v * states + m]`.
    next: Vec<Option<usize>>,
}

impl FiniteStateStrategy {
    pub fn new(player: Player, memory: MemoryStructure, next: Vec<Option<usize>>) -> Result<Self> {
        if next.len() != memory.vertex_count() * memory.state_count() {
            return Err(Error::InvalidStrategy("next-move table has the wrong size".into()));
        }
        Ok(FiniteStateStrategy { player, memory, next })
    }

    pub fn from_fn(player: Player, memory: MemoryStructure, next: impl Fn(usize, usize) -> Option<usize>) -> Self {
        let states = memory.state_count();
        let mut table = Vec::with_capacity(memory.vertex_count() * states);
        for v in 0..memory.vertex_count() {
            for m in 0..states {
                table.push(next(v, m));
            }
        }
        FiniteStateStrategy { player, memory, next: table }
    }

    pub fn next_move(&self, v: usize, m: usize) -> Option<usize> {
        self.next[v * self.memory.state_count() + m]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    Positional(PositionalStrategy),
    FiniteState(FiniteStateStrategy),
}

impl Strategy {
    pub fn player(&self) -> Player {
        match self {
            Strategy::Positional(s) => s.player,
            Strategy::FiniteState(s) => s.player,
        }
    }

    pub fn memory_size(&self) -> usize {
        match self {
            Strategy::Positional(_) => 1,
            Strategy::FiniteState(s) => s.memory.state_count(),
        }
    }

    /// Views the strategy as a finite-state one; positional strategies get
    /// the trivial one-state memory.
    pub fn to_finite_state(&self) -> FiniteStateStrategy {
        match self {
            Strategy::FiniteState(s) => s.clone(),
            Strategy::Positional(p) => {
                let n = p.moves.len();
                FiniteStateStrategy { player: p.player, memory: MemoryStructure::trivial(n), next: p.moves.clone() }
            }
        }
    }

    /// Transports a strategy of a subarena, whose vertex `i` is vertex
    /// `origin[i]` of an arena with `n` vertices. Memory updates outside the
    /// subarena keep the state unchanged.
    pub fn embed(&self, origin: &[usize], n: usize) -> Strategy {
        match self {
            Strategy::Positional(p) => {
                let mut out = PositionalStrategy::empty(p.player, n);
                for (i, &o) in origin.iter().enumerate() {
                    if let Some(t) = p.get(i) {
                        out.set(o, origin[t]);
                    }
                }
                Strategy::Positional(out)
            }
            Strategy::FiniteState(fs) => {
                let mut inner = vec![None; n];
                for (i, &o) in origin.iter().enumerate() {
                    inner[o] = Some(i);
                }
                let mem = &fs.memory;
                let memory = MemoryStructure::from_fn(
                    mem.state_names().to_vec(),
                    n,
                    |v| inner[v].map_or(0, |i| mem.init(i)),
                    |m, v| inner[v].map_or(m, |i| mem.update(m, i)),
                )
                .expect("embedding preserves the state set");
                Strategy::FiniteState(FiniteStateStrategy::from_fn(fs.player, memory, |v, m| {
                    inner[v].and_then(|i| fs.next_move(i, m)).map(|t| origin[t])
                }))
            }
        }
    }

    /// Inverse of [`Strategy::embed`]: reads the strategy on the subarena
    /// whose vertex `i` is vertex `origin[i]`. Moves leaving the subarena are
    /// dropped.
    pub fn to_subarena(&self, origin: &[usize], n: usize) -> Strategy {
        let mut inner = vec![None; n];
        for (i, &o) in origin.iter().enumerate() {
            inner[o] = Some(i);
        }
        match self {
            Strategy::Positional(p) => {
                let mut out = PositionalStrategy::empty(p.player, origin.len());
                for (i, &o) in origin.iter().enumerate() {
                    if let Some(t) = p.get(o).and_then(|t| inner[t]) {
                        out.set(i, t);
                    }
                }
                Strategy::Positional(out)
            }
            Strategy::FiniteState(fs) => {
                let mem = &fs.memory;
                let memory = MemoryStructure::from_fn(
                    mem.state_names().to_vec(),
                    origin.len(),
                    |i| mem.init(origin[i]),
                    |m, i| mem.update(m, origin[i]),
                )
                .expect("restriction preserves the state set");
                Strategy::FiniteState(FiniteStateStrategy::from_fn(fs.player, memory, |i, m| {
                    fs.next_move(origin[i], m).and_then(|t| inner[t])
                }))
            }
        }
    }

    /// Checks that every defined move follows an edge and that every owned
    /// vertex of `domain` has a move (in every memory state reachable there).
    pub fn check_moves(&self, arena: &Arena, domain: &VertexSet) -> Result<()> {
        let fs = self.to_finite_state();
        if fs.memory.vertex_count() != arena.vertex_count() {
            return Err(Error::InvalidStrategy("strategy built for a different arena".into()));
        }
        for v in arena.vertices() {
            for m in 0..fs.memory.state_count() {
                if let Some(t) = fs.next_move(v, m) {
                    if !arena.has_edge(v, t) {
                        return Err(Error::InvalidStrategy(format!(
                            "move {} -> {} is not an edge",
                            arena.name(v),
                            arena.name(t)
                        )));
                    }
                }
            }
            if domain.contains(v) && arena.owner(v) == fs.player && self.memory_size() == 1 && fs.next_move(v, 0).is_none() {
                return Err(Error::InvalidStrategy(format!("no move at {}", arena.name(v))));
            }
        }
        Ok(())
    }
}

/// Per-iteration data of the fixed-point algorithm for games with costs.
///
/// All sets are over the vertices of the original arena.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    /// Vertices of the arena the bounded game was solved on.
    pub arena: VertexSet,
    /// Player 0's winning region of the bounded game on `arena`.
    pub winning: VertexSet,
    /// Player 0 attractor of `winning` inside `arena`.
    pub attractor: VertexSet,
    /// Attractor rank of each vertex of `attractor`.
    pub rank: Vec<Option<usize>>,
    pub attractor_moves: PositionalStrategy,
    /// Winning strategy of the bounded game, defined on `winning`.
    pub bounded: Strategy,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LayeredCertificate {
    pub layers: Vec<Layer>,
}

impl LayeredCertificate {
    pub fn region(&self, vertex_count: usize) -> VertexSet {
        let mut region = VertexSet::empty(vertex_count);
        for layer in &self.layers {
            for v in layer.attractor.iter() {
                region.insert(v);
            }
        }
        region
    }

    /// Index of the layer whose attractor contains `v`.
    pub fn layer_of(&self, v: usize) -> Option<usize> {
        self.layers.iter().position(|l| l.attractor.contains(v))
    }
}

/// Winning regions and strategies of a solved game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameSolution {
    pub region0: VertexSet,
    pub region1: VertexSet,
    pub strategy0: Option<Strategy>,
    /// `None` when Player 1 needs infinite memory (games with costs); use the
    /// spoiler driver instead.
    pub strategy1: Option<Strategy>,
    pub certificate: Option<LayeredCertificate>,
}

impl GameSolution {
    pub fn region(&self, player: Player) -> &VertexSet {
        match player {
            Player::Zero => &self.region0,
            Player::One => &self.region1,
        }
    }

    pub fn strategy(&self, player: Player) -> Option<&Strategy> {
        match player {
            Player::Zero => self.strategy0.as_ref(),
            Player::One => self.strategy1.as_ref(),
        }
    }

    pub fn is_partition(&self) -> bool {
        self.region0.is_disjoint(&self.region1) && self.region0.len() + self.region1.len() == self.region0.universe()
    }
}

/// Builds a memory structure from an update function on an arbitrary state
/// type, keeping only the states reachable along edges of `arena` from some
/// `(v, init(v))`. Updates leading outside the explored states (which no
/// play can trigger) go to state 0.
pub fn reachable_memory<S: Ord + Clone>(
    arena: &Arena,
    init: impl Fn(usize) -> S,
    update: impl Fn(&S, usize) -> S,
    name: impl Fn(&S) -> String,
    budget: usize,
) -> Result<(MemoryStructure, Vec<S>)> {
    use alloc::collections::BTreeMap;
    let mut index: BTreeMap<S, usize> = BTreeMap::new();
    let mut states: Vec<S> = Vec::new();
    let mut seen: BTreeMap<(usize, usize), ()> = BTreeMap::new();
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let intern = |s: S, index: &mut BTreeMap<S, usize>, states: &mut Vec<S>| -> Result<usize> {
        if let Some(&i) = index.get(&s) {
            return Ok(i);
        }
        if states.len() >= budget {
            return Err(Error::BudgetExceeded { what: "memory states", limit: budget });
        }
        index.insert(s.clone(), states.len());
        states.push(s);
        Ok(states.len() - 1)
    };
    let mut inits = Vec::with_capacity(arena.vertex_count());
    for v in arena.vertices() {
        let m = intern(init(v), &mut index, &mut states)?;
        inits.push(m);
        if seen.insert((v, m), ()).is_none() {
            stack.push((v, m));
        }
    }
    while let Some((v, m)) = stack.pop() {
        for t in arena.successors(v) {
            let next = update(&states[m], t);
            let mt = intern(next, &mut index, &mut states)?;
            if seen.insert((t, mt), ()).is_none() {
                stack.push((t, mt));
            }
        }
    }
    let n = arena.vertex_count();
    if n == 0 {
        return Ok((MemoryStructure::trivial(0), states));
    }
    let mut table = Vec::with_capacity(states.len() * n);
    for s in &states {
        for v in 0..n {
            table.push(index.get(&update(s, v)).copied().unwrap_or(0));
        }
    }
    let names = states.iter().map(&name).collect();
    let memory = MemoryStructure::new(names, inits, table)?;
    Ok((memory, states))
}
