//! Streett games: a classical solver through index appearance records and
//! the cost variants through the open-request memory.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cost_parity::{fixpoint, FixpointOutcome};
use crate::graph::{lift_from_subdivision, product, product_strategy_to_base, subdivide, ProductMap, Subdivision};
use crate::parity::{ParityBackend, Zielonka};
use crate::strategy::reachable_memory;
use crate::{
    Arena, Edge, Error, FiniteStateStrategy, Game, GameSolution, MemoryStructure, ParityColoring, Player,
    PositionalStrategy, Result, Strategy, StreettPair, StreettSpec, VertexSet,
};

/// Default limit on the number of pairs handed to the record construction.
pub const DEFAULT_PAIR_CAP: usize = 8;
/// Default limit on product vertices and memory states.
pub const DEFAULT_PRODUCT_BUDGET: usize = 2_000_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct StreettOptions {
    pub pair_cap: usize,
    pub product_budget: usize,
    /// Compute a positional strategy for Player 1. This re-solves the game
    /// once per fixed choice and can be skipped when only regions matter.
    pub positional_player1: bool,
}

impl Default for StreettOptions {
    fn default() -> Self {
        StreettOptions { pair_cap: DEFAULT_PAIR_CAP, product_budget: DEFAULT_PRODUCT_BUDGET, positional_player1: true }
    }
}

impl StreettOptions {
    pub fn with_budget(budget: usize) -> Self {
        StreettOptions { product_budget: budget, ..Self::default() }
    }
}

/// An index appearance record: the pairs ordered by how recently their
/// response set was visited (least recent first), plus the color of the
/// last step.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RecordState {
    pub order: Vec<u8>,
    pub color: u32,
}

/// Moves the pairs answered at `v` to the back and colors the step: even
/// `2(k+2-r)` if the first answered pair sits at position `r` and no earlier
/// pair is requested, odd `2(k+2-q)-1` if a pair at position `q < r` is
/// requested but not answered (positions are 1-based, `k+1` means none).
pub fn record_step(spec: &StreettSpec, order: &[u8], v: usize) -> RecordState {
    let k = order.len();
    let none = k + 1;
    let r = order.iter().position(|&c| spec.is_response(c as usize, v)).map_or(none, |i| i + 1);
    let q = order
        .iter()
        .position(|&c| spec.is_request(c as usize, v) && !spec.is_response(c as usize, v))
        .map_or(none, |i| i + 1);
    let color = if r <= q { 2 * (k + 2 - r) } else { 2 * (k + 2 - q) - 1 } as u32;
    let mut next: Vec<u8> = order.iter().copied().filter(|&c| !spec.is_response(c as usize, v)).collect();
    next.extend(order.iter().copied().filter(|&c| spec.is_response(c as usize, v)));
    RecordState { order: next, color }
}

/// The parity game on the reachable part of `arena × records`.
#[derive(Clone, Debug)]
pub struct RecordProduct {
    pub arena: Arena,
    pub coloring: ParityColoring,
    pub states: Vec<RecordState>,
    /// Product vertex -> (vertex, record state index).
    pub backward: Vec<(usize, usize)>,
    pub forward: BTreeMap<(usize, usize), usize>,
    /// Record state index of `Init(v)`.
    pub init: Vec<usize>,
}

impl RecordProduct {
    pub fn get(&self, v: usize, s: usize) -> Option<usize> {
        self.forward.get(&(v, s)).copied()
    }

    pub fn initial(&self, v: usize) -> usize {
        self.forward[&(v, self.init[v])]
    }
}

pub fn record_product(arena: &Arena, spec: &StreettSpec, options: &StreettOptions) -> Result<RecordProduct> {
    let k = spec.pair_count();
    if k > options.pair_cap {
        return Err(Error::BudgetExceeded { what: "Streett pairs", limit: options.pair_cap });
    }
    let budget = options.product_budget;
    let identity: Vec<u8> = (0..k as u8).collect();
    let mut state_index: BTreeMap<RecordState, usize> = BTreeMap::new();
    let mut states: Vec<RecordState> = Vec::new();
    let mut forward: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut backward: Vec<(usize, usize)> = Vec::new();
    let mut queue: alloc::collections::VecDeque<usize> = alloc::collections::VecDeque::new();

    fn intern(
        s: RecordState,
        state_index: &mut BTreeMap<RecordState, usize>,
        states: &mut Vec<RecordState>,
    ) -> usize {
        *state_index.entry(s.clone()).or_insert_with(|| {
            states.push(s);
            states.len() - 1
        })
    }
    let visit = |v: usize,
                     s: usize,
                     forward: &mut BTreeMap<(usize, usize), usize>,
                     backward: &mut Vec<(usize, usize)>,
                     queue: &mut alloc::collections::VecDeque<usize>|
     -> Result<usize> {
        if let Some(&p) = forward.get(&(v, s)) {
            return Ok(p);
        }
        if backward.len() >= budget {
            return Err(Error::BudgetExceeded { what: "record product", limit: budget });
        }
        forward.insert((v, s), backward.len());
        backward.push((v, s));
        queue.push_back(backward.len() - 1);
        Ok(backward.len() - 1)
    };

    let mut init = Vec::with_capacity(arena.vertex_count());
    for v in arena.vertices() {
        let s = intern(record_step(spec, &identity, v), &mut state_index, &mut states);
        init.push(s);
        visit(v, s, &mut forward, &mut backward, &mut queue)?;
    }
    let mut edges = Vec::new();
    while let Some(p) = queue.pop_front() {
        let (v, s) = backward[p];
        for &e in arena.out_edges(v) {
            let edge = arena.edge(e);
            let next = record_step(spec, &states[s].order, edge.target);
            let ns = intern(next, &mut state_index, &mut states);
            let q = visit(edge.target, ns, &mut forward, &mut backward, &mut queue)?;
            edges.push(Edge { source: p, target: q, costs: edge.costs.clone() });
        }
    }
    let names = backward.iter().map(|&(v, s)| format!("{}#{}", arena.name(v), s)).collect();
    let owners = backward.iter().map(|&(v, _)| arena.owner(v)).collect();
    let coloring = ParityColoring::new(backward.iter().map(|&(_, s)| states[s].color).collect());
    let product = Arena::unchecked(names, owners, edges, arena.cost_dimension());
    Ok(RecordProduct { arena: product, coloring, states, backward, forward, init })
}

/// Output of the classical Streett solver.
#[derive(Clone, Debug)]
pub struct StreettSolution {
    /// Player 0 uses the record memory, Player 1 is positional (if requested).
    pub solution: GameSolution,
    pub record_states: usize,
    pub product_size: usize,
}

pub fn solve_streett(arena: &Arena, spec: &StreettSpec) -> Result<StreettSolution> {
    solve_streett_with(arena, spec, &StreettOptions::default(), &Zielonka)
}

fn check_spec(arena: &Arena, spec: &StreettSpec) -> Result<()> {
    let n = arena.vertex_count();
    if spec.pairs.iter().any(|p| p.requests.universe() != n || p.responses.universe() != n) {
        return Err(Error::ConditionMismatch("pair sets over a different vertex set".into()));
    }
    Ok(())
}

pub fn solve_streett_with(
    arena: &Arena,
    spec: &StreettSpec,
    options: &StreettOptions,
    backend: &dyn ParityBackend,
) -> Result<StreettSolution> {
    check_spec(arena, spec)?;
    let rp = record_product(arena, spec, options)?;
    let psol = backend.solve(&rp.arena, &rp.coloring)?;
    let n = arena.vertex_count();
    let region0 = VertexSet::from_fn(n, |v| psol.region0.contains(rp.initial(v)));
    let region1 = region0.complement();

    let names: Vec<String> = (0..rp.states.len().max(1)).map(|s| format!("r{s}")).collect();
    let index: BTreeMap<&RecordState, usize> = rp.states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let memory = MemoryStructure::from_fn(names, n, |v| rp.init[v], |s, v| {
        let next = record_step(spec, &rp.states[s].order, v);
        index.get(&next).copied().unwrap_or(0)
    })?;
    let strategy0 = FiniteStateStrategy::from_fn(Player::Zero, memory, |v, s| {
        if arena.owner(v) != Player::Zero || !region0.contains(v) {
            return None;
        }
        let p = rp.get(v, s)?;
        psol.strategy0.get(p).map(|q| rp.backward[q].0)
    });

    let strategy1 = if options.positional_player1 {
        let hint = |v: usize| psol.strategy1.get(rp.initial(v)).map(|q| rp.backward[q].0);
        Some(Strategy::Positional(positional_player1(arena, spec, options, backend, &region1, hint)?))
    } else {
        None
    };
    Ok(StreettSolution {
        solution: GameSolution {
            region0,
            region1,
            strategy0: Some(Strategy::FiniteState(strategy0)),
            strategy1,
            certificate: None,
        },
        record_states: rp.states.len(),
        product_size: rp.arena.vertex_count(),
    })
}

fn streett_region1(arena: &Arena, spec: &StreettSpec, options: &StreettOptions, backend: &dyn ParityBackend) -> Result<VertexSet> {
    let rp = record_product(arena, spec, options)?;
    let psol = backend.solve(&rp.arena, &rp.coloring)?;
    Ok(VertexSet::from_fn(arena.vertex_count(), |v| psol.region1.contains(rp.initial(v))))
}

/// Fixes Player 1's choices one vertex at a time, keeping a choice whenever
/// Player 1 still wins from all of `region1` in the restricted game. Player 1
/// has positional winning strategies in Streett games, so some choice always
/// survives.
fn positional_player1(
    arena: &Arena,
    spec: &StreettSpec,
    options: &StreettOptions,
    backend: &dyn ParityBackend,
    region1: &VertexSet,
    hint: impl Fn(usize) -> Option<usize>,
) -> Result<PositionalStrategy> {
    let n = arena.vertex_count();
    let mut chosen: Vec<Option<usize>> = vec![None; n];
    let mut out = PositionalStrategy::empty(Player::One, n);
    let restricted = |chosen: &[Option<usize>]| {
        let edges = arena
            .edges()
            .iter()
            .filter(|e| chosen[e.source].is_none_or(|t| t == e.target))
            .cloned()
            .collect();
        Arena::unchecked(arena.names().to_vec(), arena.owners().to_vec(), edges, arena.cost_dimension())
    };
    for v in region1.iter().filter(|&v| arena.owner(v) == Player::One) {
        let succ: Vec<usize> = arena.successors(v).filter(|&s| region1.contains(s)).collect();
        let mut candidates: Vec<usize> = hint(v).into_iter().filter(|s| succ.contains(s)).collect();
        candidates.extend(succ.iter().copied().filter(|s| Some(*s) != hint(v)));
        if arena.successors(v).count() == 1 {
            chosen[v] = candidates.first().copied();
            out.set(v, candidates[0]);
            continue;
        }
        let mut fixed = false;
        for &s in &candidates {
            chosen[v] = Some(s);
            let w1 = streett_region1(&restricted(&chosen), spec, options, backend)?;
            if region1.is_subset(&w1) {
                out.set(v, s);
                fixed = true;
                break;
            }
        }
        if !fixed {
            return Err(Error::Inconsistent(format!(
                "no positional choice for Player 1 at {} keeps the winning region",
                arena.name(v)
            )));
        }
    }
    Ok(out)
}

fn pair_mask_name(mask: usize, pairs: usize) -> String {
    let mut out = String::from("{");
    for c in (0..pairs).filter(|c| mask >> c & 1 == 1) {
        if out.len() > 1 {
            out.push(',');
        }
        out.push_str(&format!("{}", c + 1));
    }
    out.push('}');
    out
}

/// The memory of open requests: state `O ⊆ [d]` is the bitmask `O`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenRequestMemory {
    pub memory: MemoryStructure,
    pub pairs: usize,
}

impl OpenRequestMemory {
    pub fn new(spec: &StreettSpec, vertex_count: usize) -> Result<OpenRequestMemory> {
        let d = spec.pair_count();
        if d > 16 {
            return Err(Error::BudgetExceeded { what: "open-request memory pairs", limit: 16 });
        }
        let mask = |v: usize, f: &dyn Fn(usize, usize) -> bool| (0..d).filter(|&c| f(c, v)).fold(0usize, |m, c| m | 1 << c);
        let requests: Vec<usize> = (0..vertex_count).map(|v| mask(v, &|c, v| spec.is_request(c, v))).collect();
        let responses: Vec<usize> = (0..vertex_count).map(|v| mask(v, &|c, v| spec.is_response(c, v))).collect();
        let names = (0..1usize << d).map(|m| pair_mask_name(m, d)).collect();
        let memory = MemoryStructure::from_fn(
            names,
            vertex_count,
            |v| requests[v] & !responses[v],
            |o, v| (o | requests[v]) & !responses[v],
        )?;
        Ok(OpenRequestMemory { memory, pairs: d })
    }

    pub fn is_open(&self, state: usize, c: usize) -> bool {
        state >> c & 1 == 1
    }
}

/// The Streett game on `subdivided arena × open requests` with `2d` pairs:
/// `(Q_c, P_c ∪ F_c)` and `(I_c, F_c)`, where `F_c` holds the product
/// vertices in which request `c` is not open.
#[derive(Clone, Debug)]
pub struct ScrrReduction {
    pub subdivision: Subdivision,
    pub memory: OpenRequestMemory,
    pub product: Arena,
    pub map: ProductMap,
    pub spec: StreettSpec,
    pub increment_vertices: Vec<VertexSet>,
}

impl ScrrReduction {
    pub fn initial(&self, v: usize) -> usize {
        self.map.initial(&self.memory.memory, v).expect("initial states are reachable")
    }
}

pub(crate) fn require_cost_streett(game: &Game) -> Result<&StreettSpec> {
    let spec = game
        .streett_spec()
        .ok_or_else(|| Error::ConditionMismatch("expected a Streett condition".into()))?;
    if game.arena.cost_dimension() != spec.pair_count() {
        return Err(Error::ConditionMismatch(format!(
            "{} Streett pairs but {} cost functions",
            spec.pair_count(),
            game.arena.cost_dimension()
        )));
    }
    check_spec(&game.arena, spec)?;
    Ok(spec)
}

pub fn scrr_reduction(game: &Game) -> Result<ScrrReduction> {
    let spec = require_cost_streett(game)?;
    let d = spec.pair_count();
    let subdivision = subdivide(game);
    let sub_spec = subdivision.game.streett_spec().expect("subdivision keeps the condition");
    let memory = OpenRequestMemory::new(sub_spec, subdivision.game.vertex_count())?;
    let (product, map) = product(&subdivision.game.arena, &memory.memory, false);
    let increment_vertices: Vec<VertexSet> = (0..d).map(|c| subdivision.increment_vertices(c)).collect();
    let np = product.vertex_count();
    let lifted = |set: &VertexSet| VertexSet::from_fn(np, |p| set.contains(map.vertex(p)));
    let not_open: Vec<VertexSet> =
        (0..d).map(|c| VertexSet::from_fn(np, |p| !memory.is_open(map.state(p), c))).collect();
    let mut pairs = Vec::with_capacity(2 * d);
    for (pair, closed) in sub_spec.pairs.iter().zip(&not_open) {
        pairs.push(StreettPair { requests: lifted(&pair.requests), responses: lifted(&pair.responses).union(closed) });
    }
    for (incremented, closed) in increment_vertices.iter().zip(&not_open) {
        pairs.push(StreettPair { requests: lifted(incremented), responses: closed.clone() });
    }
    Ok(ScrrReduction { subdivision, memory, product, map, spec: StreettSpec::new(pairs), increment_vertices })
}

/// Output of the bounded cost-Streett solver.
#[derive(Clone, Debug)]
pub struct BoundedCostStreett {
    pub solution: GameSolution,
    pub reduction: ScrrReduction,
    pub derived: StreettSolution,
}

pub fn solve_bounded_cost_streett(game: &Game) -> Result<BoundedCostStreett> {
    solve_bounded_cost_streett_with(game, &StreettOptions::default(), &Zielonka)
}

pub fn solve_bounded_cost_streett_with(
    game: &Game,
    options: &StreettOptions,
    backend: &dyn ParityBackend,
) -> Result<BoundedCostStreett> {
    let reduction = scrr_reduction(game)?;
    let derived = solve_streett_with(&reduction.product, &reduction.spec, options, backend)?;
    let n = game.vertex_count();
    let region0 = VertexSet::from_fn(n, |v| derived.solution.region0.contains(reduction.initial(v)));
    let region1 = region0.complement();
    let sub_arena = &reduction.subdivision.game.arena;
    // Player 1 may win by entering Player 0's region, so its strategy is not
    // cut down to its own region.
    let lift = |s: &Strategy, region: Option<&VertexSet>| -> Result<Strategy> {
        let on_sub = product_strategy_to_base(s, sub_arena, &reduction.memory.memory, &reduction.map, options.product_budget)?;
        let lifted = lift_from_subdivision(&Strategy::FiniteState(on_sub), &reduction.subdivision, &game.arena, options.product_budget)?;
        Ok(match region {
            Some(r) => restrict_strategy(&lifted, &game.arena, r),
            None => lifted,
        })
    };
    let strategy0 = derived.solution.strategy0.as_ref().map(|s| lift(s, Some(&region0))).transpose()?;
    let strategy1 = derived.solution.strategy1.as_ref().map(|s| lift(s, None)).transpose()?;
    Ok(BoundedCostStreett {
        solution: GameSolution { region0, region1, strategy0, strategy1, certificate: None },
        reduction,
        derived,
    })
}

/// Drops moves at vertices outside `region` or not owned by the strategy's player.
pub fn restrict_strategy(strategy: &Strategy, arena: &Arena, region: &VertexSet) -> Strategy {
    match strategy {
        Strategy::Positional(p) => Strategy::Positional(p.restricted(arena, region)),
        Strategy::FiniteState(fs) => {
            let player = fs.player;
            Strategy::FiniteState(FiniteStateStrategy::from_fn(player, fs.memory.clone(), |v, m| {
                if region.contains(v) && arena.owner(v) == player {
                    fs.next_move(v, m)
                } else {
                    None
                }
            }))
        }
    }
}

pub fn solve_cost_streett(game: &Game) -> Result<FixpointOutcome> {
    solve_cost_streett_with(game, &StreettOptions::default(), &Zielonka)
}

/// The fixed-point iteration with the bounded cost-Streett solver. Player 1's
/// bounded strategies are not needed and are skipped.
pub fn solve_cost_streett_with(game: &Game, options: &StreettOptions, backend: &dyn ParityBackend) -> Result<FixpointOutcome> {
    require_cost_streett(game)?;
    let inner = StreettOptions { positional_player1: false, ..*options };
    fixpoint(game, &mut |g: &Game| Ok(solve_bounded_cost_streett_with(g, &inner, backend)?.solution))
}

/// The explicit strategy memorizing Player 0's binary choices in the family
/// with 2d pairs: `d` bits, one per choice `v_j -> q_{2j}` or `q_{2j+1}`.
/// Player 1 answers at `v'_j` by moving to the `p` of the same parity.
pub fn choice_memory_strategy(game: &Game, d: usize) -> Result<FiniteStateStrategy> {
    let arena = &game.arena;
    let q = |c: usize| arena.vertex_or_err(&format!("q{c}"));
    let n = arena.vertex_count();
    let mut bit_of = vec![None; n];
    for j in 0..d {
        bit_of[q(2 * j)?] = Some((j, 0));
        bit_of[q(2 * j + 1)?] = Some((j, 1));
    }
    let names = (0..1usize << d).map(|m| format!("{m:0d$b}")).collect::<Vec<_>>();
    let (memory, states) = reachable_memory(
        arena,
        |v| bit_of[v].map_or(0usize, |(j, b)| b << j),
        |&m, v| match bit_of[v] {
            Some((j, b)) => (m & !(1 << j)) | b << j,
            None => m,
        },
        |&m| names[m].clone(),
        1 << d,
    )?;
    let mut owner_index = vec![None; n];
    for j in 0..d {
        owner_index[arena.vertex_or_err(&format!("v'{j}"))?] = Some(j);
    }
    let p = |c: usize| arena.vertex(&format!("p{c}"));
    Ok(FiniteStateStrategy::from_fn(Player::One, memory, |v, m| {
        let j = owner_index[v]?;
        let bit = states[m] >> j & 1;
        p(2 * j + bit)
    }))
}

#[cfg(test)]
mod tests;
