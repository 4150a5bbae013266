//! Independent certification of solver output.
//!
//! A strategy is checked on the graph of plays consistent with it. Its nodes
//! are triples of arena vertex, condition memory state and strategy memory
//! state, reachable from the claimed region. The opponent controls every
//! branch of that graph, so the strategy wins iff no reachable cycle is good
//! for the opponent.

pub mod fixtures;
pub mod oracle;
pub mod random;

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cost_parity::RequestMemory;
use crate::graph::{induced_subgame, parity_cycle_check, subdivide, witness_lasso, Digraph, Subdivision};
use crate::streett::OpenRequestMemory;
use crate::strategy::LayeredCertificate;
use crate::{
    Arena, Condition, Error, FiniteStateStrategy, Game, Lasso, MemoryStructure, ParityColoring, Player, Result,
    Strategy, StreettSpec, Variant, VertexSet,
};

/// Limit on the nodes of a strategy-restricted play graph.
pub const DEFAULT_NODE_BUDGET: usize = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub reason: String,
    /// A play consistent with the strategy that the opponent wins, when one
    /// exists. Unbounded-cost failures have none.
    pub lasso: Option<Lasso>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected(Rejection),
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }

    pub fn rejection(&self) -> Option<&Rejection> {
        match self {
            Verdict::Accepted => None,
            Verdict::Rejected(r) => Some(r),
        }
    }

    fn reject(reason: String, lasso: Option<Lasso>) -> Verdict {
        Verdict::Rejected(Rejection { reason, lasso })
    }
}

/// The plays consistent with a strategy, tracked together with a memory for
/// the winning condition.
struct PlayGraph {
    graph: Digraph,
    /// `(vertex, condition state, strategy state)`.
    nodes: Vec<(usize, usize, usize)>,
    /// Start node of each vertex of the claimed region.
    starts: Vec<(usize, usize)>,
}

impl PlayGraph {
    fn node_count(&self) -> usize {
        self.nodes.len()
    }

    fn vertex(&self, p: usize) -> usize {
        self.nodes[p].0
    }

    fn condition_state(&self, p: usize) -> usize {
        self.nodes[p].1
    }

    fn select(&self, f: impl Fn(usize) -> bool) -> VertexSet {
        VertexSet::from_fn(self.node_count(), f)
    }

    fn to_lasso(&self, nodes: &Lasso) -> Lasso {
        nodes.map(|p| self.vertex(p))
    }

    /// The first start vertex, in vertex order, from which one of the
    /// witness cycles is reachable, with the connecting lasso.
    fn first_witness(&self, witnesses: &[Vec<usize>]) -> Option<(usize, Lasso)> {
        if witnesses.is_empty() {
            return None;
        }
        self.starts
            .iter()
            .find_map(|&(v, p)| witness_lasso(&self.graph, p, witnesses).map(|l| (v, self.to_lasso(&l))))
    }
}

/// Builds the play graph from `starts`. Returns a rejection if the strategy
/// is undefined or illegal somewhere, or (with `stay_inside`) leaves it.
fn play_graph(
    arena: &Arena,
    condition: &MemoryStructure,
    strategy: &FiniteStateStrategy,
    starts: &VertexSet,
    stay_inside: Option<&VertexSet>,
    budget: usize,
) -> Result<core::result::Result<PlayGraph, Rejection>> {
    let player = strategy.player;
    let mut index: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    let mut nodes: Vec<(usize, usize, usize)> = Vec::new();
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern = |key: (usize, usize, usize), nodes: &mut Vec<_>, succ: &mut Vec<Vec<usize>>, queue: &mut VecDeque<usize>| {
        if let Some(&p) = index.get(&key) {
            return Ok(p);
        }
        if nodes.len() >= budget {
            return Err(Error::BudgetExceeded { what: "play graph nodes", limit: budget });
        }
        index.insert(key, nodes.len());
        nodes.push(key);
        succ.push(Vec::new());
        queue.push_back(nodes.len() - 1);
        Ok(nodes.len() - 1)
    };
    let mut start_nodes = Vec::new();
    for v in starts.iter() {
        let p = intern((v, condition.init(v), strategy.memory.init(v)), &mut nodes, &mut succ, &mut queue)?;
        start_nodes.push((v, p));
    }
    let reject = |reason: String| Ok(Err(Rejection { reason, lasso: None }));
    while let Some(p) = queue.pop_front() {
        let (v, c, s) = nodes[p];
        let targets: Vec<usize> = if arena.owner(v) == player {
            match strategy.next_move(v, s) {
                Some(t) if t < arena.vertex_count() && arena.has_edge(v, t) => vec![t],
                Some(t) => return reject(format!("move from {} to vertex {t} is not an edge", arena.name(v))),
                None => {
                    return reject(format!(
                        "no move at {} in memory state {}",
                        arena.name(v),
                        strategy.memory.state_name(s)
                    ))
                }
            }
        } else {
            arena.successors(v).collect()
        };
        for t in targets {
            if let Some(region) = stay_inside {
                if !region.contains(t) {
                    return reject(format!("edge {} -> {} leaves the claimed region", arena.name(v), arena.name(t)));
                }
            }
            let q = intern((t, condition.update(c, t), strategy.memory.update(s, t)), &mut nodes, &mut succ, &mut queue)?;
            if !succ[p].contains(&q) {
                succ[p].push(q);
            }
        }
    }
    Ok(Ok(PlayGraph { graph: Digraph { succ }, nodes, starts: start_nodes }))
}

fn check_player_region(arena: &Arena, region: &VertexSet) -> Result<()> {
    if region.universe() != arena.vertex_count() {
        return Err(Error::UnknownVertex(format!("claimed region over {} vertices", region.universe())));
    }
    Ok(())
}

fn parity_verdict(pg: &PlayGraph, arena: &Arena, player: Player, color: impl Fn(usize) -> u32) -> (Verdict, Option<Lasso>) {
    let report = parity_cycle_check(&pg.graph, color, player.opponent());
    match pg.first_witness(&report.witnesses) {
        None => (Verdict::Accepted, None),
        Some((v, lasso)) => {
            let reason = format!("a cycle won by Player {} is reachable from {}", player.opponent().index(), arena.name(v));
            (Verdict::reject(reason, None), Some(lasso))
        }
    }
}

fn with_lasso(verdict: (Verdict, Option<Lasso>), project: impl Fn(Lasso) -> Lasso) -> Verdict {
    match verdict {
        (Verdict::Rejected(r), Some(l)) => Verdict::reject(r.reason, Some(project(l))),
        (v, _) => v,
    }
}

/// Checks that `strategy` wins the classical parity game from every vertex of
/// `region`. Plays must stay inside `region`.
pub fn verify_parity_strategy(
    arena: &Arena,
    coloring: &ParityColoring,
    strategy: &Strategy,
    region: &VertexSet,
) -> Result<Verdict> {
    check_player_region(arena, region)?;
    let fs = strategy.to_finite_state();
    let trivial = MemoryStructure::trivial(arena.vertex_count());
    let pg = match play_graph(arena, &trivial, &fs, region, Some(region), DEFAULT_NODE_BUDGET)? {
        Ok(pg) => pg,
        Err(r) => return Ok(Verdict::Rejected(r)),
    };
    Ok(with_lasso(parity_verdict(&pg, arena, fs.player, |p| coloring.color(pg.vertex(p))), |l| l))
}

/// Reads a strategy of the original arena on the subdivided one: memory is
/// unchanged at inserted vertices, which move to their only successor.
fn lift_to_subdivision(strategy: &Strategy, sub: &Subdivision, original: &Arena) -> FiniteStateStrategy {
    let fs = strategy.to_finite_state();
    let mem = &fs.memory;
    let n = original.vertex_count();
    let sub_arena = &sub.game.arena;
    let memory = MemoryStructure::from_fn(
        mem.state_names().to_vec(),
        sub_arena.vertex_count(),
        |v| if v < n { mem.init(v) } else { 0 },
        |m, v| if v < n { mem.update(m, v) } else { m },
    )
    .expect("same state set");
    FiniteStateStrategy::from_fn(fs.player, memory, |v, m| {
        if v >= n {
            return if sub_arena.owner(v) == fs.player { sub_arena.successors(v).next() } else { None };
        }
        fs.next_move(v, m).map(|t| if original.has_edge(v, t) { sub.first_hop(original, v, t) } else { t })
    })
}

/// Checks a strategy for the bounded cost-parity game through the
/// ω-regular reduction: the play graph over the subdivided arena tracks the
/// largest open request and is colored as in the reduction.
pub fn verify_bounded_strategy(game: &Game, strategy: &Strategy, region: &VertexSet) -> Result<Verdict> {
    let coloring = crate::cost_parity::require_single_cost_parity(game)?;
    check_player_region(&game.arena, region)?;
    let sub = subdivide(game);
    let sub_coloring = sub.game.coloring().expect("subdivision keeps the condition");
    let requests = RequestMemory::new(sub_coloring);
    let lifted = lift_to_subdivision(strategy, &sub, &game.arena);
    let starts = VertexSet::from_fn(sub.game.vertex_count(), |v| v < game.vertex_count() && region.contains(v));
    let pg = match play_graph(&sub.game.arena, &requests.memory, &lifted, &starts, None, DEFAULT_NODE_BUDGET)? {
        Ok(pg) => pg,
        Err(r) => return Ok(Verdict::Rejected(r)),
    };
    let increments = sub.increment_vertices(0);
    let ell = coloring.ell();
    let color = |p: usize| {
        let v = pg.vertex(p);
        if pg.condition_state(p) == RequestMemory::BOTTOM {
            ell + 1
        } else if increments.contains(v) {
            ell
        } else {
            sub_coloring.color(v)
        }
    };
    Ok(with_lasso(parity_verdict(&pg, &sub.game.arena, lifted.player, color), |l| sub.project_lasso(&l)))
}

/// Node predicates `(requests, responses)` of a Streett condition.
type NodePairs = Vec<(VertexSet, VertexSet)>;

/// Cycles violating some pair: per pair, a cycle through a request that
/// avoids every response.
fn streett_violations(graph: &Digraph, pairs: &NodePairs) -> Vec<Vec<usize>> {
    let n = graph.node_count();
    let mut out = Vec::new();
    for (requests, responses) in pairs {
        let allowed = responses.complement();
        for comp in graph.sccs(&allowed) {
            if !graph.is_nontrivial(&comp) {
                continue;
            }
            if let Some(&q) = comp.iter().find(|&&p| requests.contains(p)) {
                let members = VertexSet::from_indices(n, comp.iter().copied());
                out.push(graph.cycle_through(q, |p| members.contains(p)).expect("nontrivial SCC"));
            }
        }
    }
    out
}

/// A closed walk through every node of the strongly connected `comp`.
fn tour(graph: &Digraph, comp: &[usize]) -> Vec<usize> {
    let n = graph.node_count();
    let members = VertexSet::from_indices(n, comp.iter().copied());
    let inside = |p: usize| members.contains(p);
    let mut walk = vec![comp[0]];
    let mut seen = VertexSet::from_indices(n, [comp[0]]);
    let mut cur = comp[0];
    for &t in &comp[1..] {
        if seen.contains(t) {
            continue;
        }
        let path = graph.shortest_path(cur, &VertexSet::from_indices(n, [t]), inside).expect("strongly connected");
        for &p in &path[1..] {
            seen.insert(p);
            walk.push(p);
        }
        cur = t;
    }
    if comp.len() == 1 {
        return walk;
    }
    let back = graph.shortest_path(cur, &VertexSet::from_indices(n, [comp[0]]), inside).expect("strongly connected");
    walk.extend_from_slice(&back[1..back.len() - 1]);
    walk
}

/// Closed walks satisfying every pair: a strongly connected set is good if
/// each pair it requests is also answered in it; otherwise the unanswered
/// requests are removed and the rest is decomposed again.
fn streett_satisfying_cycles(graph: &Digraph, pairs: &NodePairs) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut pending = vec![VertexSet::full(graph.node_count())];
    while let Some(set) = pending.pop() {
        for comp in graph.sccs(&set) {
            if !graph.is_nontrivial(&comp) {
                continue;
            }
            let members = VertexSet::from_indices(graph.node_count(), comp.iter().copied());
            let unanswered: Vec<&VertexSet> = pairs
                .iter()
                .filter(|(q, p)| !members.is_disjoint(q) && members.is_disjoint(p))
                .map(|(q, _)| q)
                .collect();
            if unanswered.is_empty() {
                out.push(tour(graph, &comp));
            } else {
                let rest = unanswered.iter().fold(members, |acc, q| acc.difference(q));
                pending.push(rest);
            }
        }
    }
    out
}

fn streett_verdict(pg: &PlayGraph, arena: &Arena, player: Player, pairs: &NodePairs) -> (Verdict, Option<Lasso>) {
    let witnesses = match player {
        Player::Zero => streett_violations(&pg.graph, pairs),
        Player::One => streett_satisfying_cycles(&pg.graph, pairs),
    };
    match pg.first_witness(&witnesses) {
        None => (Verdict::Accepted, None),
        Some((v, lasso)) => {
            let reason = format!("a cycle won by Player {} is reachable from {}", player.opponent().index(), arena.name(v));
            (Verdict::reject(reason, None), Some(lasso))
        }
    }
}

fn spec_pairs(pg: &PlayGraph, spec: &StreettSpec) -> NodePairs {
    spec.pairs
        .iter()
        .map(|pair| {
            (pg.select(|p| pair.requests.contains(pg.vertex(p))), pg.select(|p| pair.responses.contains(pg.vertex(p))))
        })
        .collect()
}

/// Checks that `strategy` wins the classical Streett game from every vertex
/// of `region`. Plays must stay inside `region`.
pub fn verify_streett_strategy(arena: &Arena, spec: &StreettSpec, strategy: &Strategy, region: &VertexSet) -> Result<Verdict> {
    check_player_region(arena, region)?;
    let fs = strategy.to_finite_state();
    let trivial = MemoryStructure::trivial(arena.vertex_count());
    let pg = match play_graph(arena, &trivial, &fs, region, Some(region), DEFAULT_NODE_BUDGET)? {
        Ok(pg) => pg,
        Err(r) => return Ok(Verdict::Rejected(r)),
    };
    let pairs = spec_pairs(&pg, spec);
    Ok(with_lasso(streett_verdict(&pg, arena, fs.player, &pairs), |l| l))
}

/// Checks a strategy for the bounded cost-Streett game through the
/// reduction: over the subdivided arena with the open-request memory, pair
/// `c` becomes `(Q_c, P_c ∪ F_c)` and `(I_c, F_c)` where `F_c` means request
/// `c` is not open and `I_c` marks increment vertices of dimension `c`.
pub fn verify_bounded_streett_strategy(game: &Game, strategy: &Strategy, region: &VertexSet) -> Result<Verdict> {
    let spec = crate::streett::require_cost_streett(game)?;
    check_player_region(&game.arena, region)?;
    let sub = subdivide(game);
    let sub_spec = sub.game.streett_spec().expect("subdivision keeps the condition");
    let open = OpenRequestMemory::new(sub_spec, sub.game.vertex_count())?;
    let lifted = lift_to_subdivision(strategy, &sub, &game.arena);
    let starts = VertexSet::from_fn(sub.game.vertex_count(), |v| v < game.vertex_count() && region.contains(v));
    let pg = match play_graph(&sub.game.arena, &open.memory, &lifted, &starts, None, DEFAULT_NODE_BUDGET)? {
        Ok(pg) => pg,
        Err(r) => return Ok(Verdict::Rejected(r)),
    };
    let d = spec.pair_count();
    let mut pairs = spec_pairs(&pg, sub_spec);
    let closed: Vec<VertexSet> = (0..d).map(|c| pg.select(|p| !open.is_open(pg.condition_state(p), c))).collect();
    for (c, pair) in pairs.iter_mut().enumerate() {
        pair.1 = pair.1.union(&closed[c]);
    }
    for (c, f) in closed.into_iter().enumerate() {
        let inc = sub.increment_vertices(c);
        pairs.push((pg.select(|p| inc.contains(pg.vertex(p))), f));
    }
    Ok(with_lasso(streett_verdict(&pg, &sub.game.arena, lifted.player, &pairs), |l| sub.project_lasso(&l)))
}

/// Nodes reachable from `sources` inside `allowed`, following `graph` edges.
fn reach_within(graph: &Digraph, sources: impl IntoIterator<Item = usize>, allowed: &VertexSet) -> VertexSet {
    let mut seen = VertexSet::empty(graph.node_count());
    let mut stack = Vec::new();
    for s in sources {
        if allowed.contains(s) && seen.insert(s) {
            stack.push(s);
        }
    }
    while let Some(u) = stack.pop() {
        for &v in &graph.succ[u] {
            if allowed.contains(v) && seen.insert(v) {
                stack.push(v);
            }
        }
    }
    seen
}

/// Checks a Player 0 strategy for the cost condition (parity or Streett).
///
/// Besides the classical condition, the opponent must not be able to pump:
/// inside a strongly connected part of the play graph, from a request, reach
/// a cycle with an increment edge while avoiding every answer, and return.
/// Doing this with growing repetitions makes the cost of response unbounded.
/// Such plays are not ultimately periodic, so these rejections carry no lasso.
pub fn verify_cost_strategy(game: &Game, strategy: &Strategy, region: &VertexSet) -> Result<Verdict> {
    if strategy.player() != Player::Zero {
        return Err(Error::InvalidStrategy("cost conditions are verified for Player 0 strategies only".into()));
    }
    let arena = &game.arena;
    check_player_region(arena, region)?;
    let fs = strategy.to_finite_state();
    let trivial = MemoryStructure::trivial(arena.vertex_count());
    let pg = match play_graph(arena, &trivial, &fs, region, Some(region), DEFAULT_NODE_BUDGET)? {
        Ok(pg) => pg,
        Err(r) => return Ok(Verdict::Rejected(r)),
    };
    // (requests, answers, cost dimension) per request kind.
    let kinds: Vec<(VertexSet, VertexSet, usize)> = match &game.condition {
        Condition::Parity(coloring) => {
            let classical = parity_verdict(&pg, arena, Player::Zero, |p| coloring.color(pg.vertex(p)));
            if !classical.0.is_accepted() {
                return Ok(with_lasso(classical, |l| l));
            }
            coloring
                .odd_colors()
                .into_iter()
                .map(|c| {
                    (
                        pg.select(|p| coloring.color(pg.vertex(p)) == c),
                        pg.select(|p| crate::condition::answers(c, coloring.color(pg.vertex(p)))),
                        0,
                    )
                })
                .collect()
        }
        Condition::Streett(spec) => {
            let pairs = spec_pairs(&pg, spec);
            let classical = streett_verdict(&pg, arena, Player::Zero, &pairs);
            if !classical.0.is_accepted() {
                return Ok(with_lasso(classical, |l| l));
            }
            pairs.into_iter().enumerate().map(|(c, (q, p))| (q, p, c)).collect()
        }
    };
    let n = pg.node_count();
    let increments = |u: usize, w: usize, dim: usize| {
        let e = arena.edge_between(pg.vertex(u), pg.vertex(w)).expect("play graph follows edges");
        arena.edge(e).is_increment(dim)
    };
    for comp in pg.graph.sccs(&VertexSet::full(n)) {
        if !pg.graph.is_nontrivial(&comp) {
            continue;
        }
        let members = VertexSet::from_indices(n, comp.iter().copied());
        for (requests, answers, dim) in &kinds {
            let open = members.difference(answers);
            let pending: Vec<usize> = comp.iter().copied().filter(|&p| requests.contains(p) && open.contains(p)).collect();
            if pending.is_empty() {
                continue;
            }
            let reach = reach_within(&pg.graph, pending.iter().copied(), &open);
            for pump in pg.graph.sccs(&reach) {
                let inside = VertexSet::from_indices(n, pump.iter().copied());
                let has_increment =
                    pump.iter().any(|&u| pg.graph.succ[u].iter().any(|&w| inside.contains(w) && increments(u, w, *dim)));
                if has_increment {
                    let from = pg.starts.iter().find(|&&(_, s)| pg.graph.reachable([s]).contains(comp[0]));
                    let name = from.map_or("?", |&(v, _)| arena.name(v));
                    return Ok(Verdict::reject(
                        format!(
                            "from {name}, Player 1 can delay an answer at {} across increments at {} without bound",
                            arena.name(pg.vertex(pending[0])),
                            arena.name(pg.vertex(pump[0]))
                        ),
                        None,
                    ));
                }
            }
        }
    }
    Ok(Verdict::Accepted)
}

/// Dispatches to the verifier matching the condition and variant.
pub fn verify_strategy(game: &Game, variant: Variant, strategy: &Strategy, region: &VertexSet) -> Result<Verdict> {
    match (&game.condition, variant) {
        (Condition::Parity(c), Variant::Classical) => verify_parity_strategy(&game.arena, c, strategy, region),
        (Condition::Streett(s), Variant::Classical) => verify_streett_strategy(&game.arena, s, strategy, region),
        (_, Variant::Cost) => verify_cost_strategy(game, strategy, region),
        (Condition::Parity(_), Variant::BoundedCost) => verify_bounded_strategy(game, strategy, region),
        (Condition::Streett(_), Variant::BoundedCost) => verify_bounded_streett_strategy(game, strategy, region),
    }
}

/// Greedily merges memory states of `strategy` while the merged strategy
/// still passes [`verify_strategy`] from `region`. Each merged state behaves
/// like the member that is actually reached at the current vertex, so merges
/// of states that never meet at a vertex are free. Returns the input
/// unchanged if it does not verify in the first place.
pub fn shrink_memory(game: &Game, variant: Variant, strategy: &Strategy, region: &VertexSet) -> Result<Strategy> {
    if !verify_strategy(game, variant, strategy, region)?.is_accepted() {
        return Ok(strategy.clone());
    }
    let arena = &game.arena;
    let fs = strategy.to_finite_state();
    let states = fs.memory.state_count();
    if states == 1 {
        return Ok(strategy.clone());
    }
    let n = arena.vertex_count();
    // at[v * states + m]: configuration (v, m) occurs; enters[m * n + v]: some
    // occurring configuration in state m moves to v.
    let mut at = vec![false; n * states];
    let mut enters = vec![false; states * n];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for v in region.iter() {
        let m = fs.memory.init(v);
        if !core::mem::replace(&mut at[v * states + m], true) {
            stack.push((v, m));
        }
    }
    while let Some((v, m)) = stack.pop() {
        let targets: Vec<usize> = if arena.owner(v) == fs.player {
            fs.next_move(v, m).into_iter().collect()
        } else {
            arena.successors(v).collect()
        };
        for t in targets {
            enters[m * n + t] = true;
            let mt = fs.memory.update(m, t);
            if !core::mem::replace(&mut at[t * states + mt], true) {
                stack.push((t, mt));
            }
        }
    }
    let build = |class: &[usize]| -> Strategy {
        let mut reps: Vec<usize> = class.to_vec();
        reps.sort_unstable();
        reps.dedup();
        let reps = &reps;
        let index = move |m: usize| reps.binary_search(&class[m]).expect("representative");
        let pick = move |k: usize, used: &dyn Fn(usize) -> bool| {
            (0..states).filter(|&m| class[m] == reps[k]).find(|&m| used(m)).unwrap_or(reps[k])
        };
        let names = reps.iter().map(|&r| String::from(fs.memory.state_name(r))).collect();
        let memory = MemoryStructure::from_fn(names, n, |v| index(fs.memory.init(v)), |k, v| {
            index(fs.memory.update(pick(k, &|m| enters[m * n + v]), v))
        })
        .expect("merged memory");
        Strategy::FiniteState(FiniteStateStrategy::from_fn(fs.player, memory, |v, k| {
            fs.next_move(v, pick(k, &|m| at[v * states + m]))
        }))
    };
    let mut class: Vec<usize> = (0..states).collect();
    let mut current = strategy.clone();
    for b in 1..states {
        for a in 0..b {
            if class[a] != a || class[b] != b {
                continue;
            }
            let mut merged = class.clone();
            merged.iter_mut().filter(|c| **c == b).for_each(|c| *c = a);
            let candidate = build(&merged);
            if verify_strategy(game, variant, &candidate, region)?.is_accepted() {
                class = merged;
                current = candidate;
                break;
            }
        }
    }
    Ok(current)
}

/// The parts of a layered certificate checked separately.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Clause {
    /// Layers partition the region and sit inside the arena left over.
    Structure,
    /// `X_j` is won in the bounded game on layer `j`'s arena.
    Bounded,
    /// Attractor moves decrease the rank.
    Rank,
    /// Player 1 leaves `X_j` only towards earlier layers and Player 0's
    /// moves stay inside `X_j`.
    Trap,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertificateReport {
    pub failures: Vec<(Clause, String)>,
}

impl CertificateReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fails(&self, clause: Clause) -> bool {
        self.failures.iter().any(|(c, _)| *c == clause)
    }
}

/// Checks the certificate of the fixed-point iteration against `game`.
pub fn verify_layered_certificate(game: &Game, certificate: &LayeredCertificate) -> Result<CertificateReport> {
    let arena = &game.arena;
    let n = arena.vertex_count();
    let mut report = CertificateReport::default();
    let mut fail = |clause: Clause, msg: String| report.failures.push((clause, msg));
    let mut earlier = VertexSet::empty(n);
    for (j, layer) in certificate.layers.iter().enumerate() {
        let tag = j + 1;
        if layer.arena != earlier.complement() {
            fail(Clause::Structure, format!("layer {tag} is not played on the vertices left by earlier layers"));
        }
        if !layer.winning.is_subset(&layer.attractor) || !layer.attractor.is_subset(&layer.arena) {
            fail(Clause::Structure, format!("layer {tag} violates X ⊆ attractor ⊆ arena"));
        }
        if layer.winning.is_empty() {
            fail(Clause::Structure, format!("layer {tag} has an empty winning region"));
        }

        if layer.arena.is_subset(&earlier.complement()) && layer.winning.is_subset(&layer.arena) && !layer.winning.is_empty() {
            match induced_subgame(game, &layer.arena) {
                Err(e) => fail(Clause::Bounded, format!("layer {tag}: {e}")),
                Ok((sub, origin)) => {
                    let strategy = layer.bounded.to_subarena(&origin, n);
                    let claimed = VertexSet::from_fn(origin.len(), |i| layer.winning.contains(origin[i]));
                    let verdict = match &game.condition {
                        Condition::Parity(_) => verify_bounded_strategy(&sub, &strategy, &claimed)?,
                        Condition::Streett(_) => verify_bounded_streett_strategy(&sub, &strategy, &claimed)?,
                    };
                    if let Verdict::Rejected(r) = verdict {
                        fail(Clause::Bounded, format!("layer {tag}: {}", r.reason));
                    }
                }
            }
        }

        for v in layer.attractor.iter() {
            let Some(r) = layer.rank[v] else {
                fail(Clause::Rank, format!("layer {tag}: {} has no rank", arena.name(v)));
                continue;
            };
            if layer.winning.contains(v) {
                if r != 0 {
                    fail(Clause::Rank, format!("layer {tag}: {} in X has rank {r}", arena.name(v)));
                }
                continue;
            }
            let lower = |t: usize| layer.attractor.contains(t) && layer.rank[t].is_some_and(|rt| rt < r);
            let ok = match arena.owner(v) {
                Player::Zero => layer.attractor_moves.get(v).is_some_and(|t| arena.has_edge(v, t) && lower(t)),
                Player::One => arena.successors(v).filter(|&t| layer.arena.contains(t)).all(lower),
            };
            if !ok {
                fail(Clause::Rank, format!("layer {tag}: attractor move at {} does not decrease rank {r}", arena.name(v)));
            }
        }

        let settled = earlier.union(&layer.winning);
        let fs = layer.bounded.to_finite_state();
        for v in layer.winning.iter() {
            match arena.owner(v) {
                Player::One => {
                    if let Some(t) = arena.successors(v).find(|&t| !settled.contains(t)) {
                        fail(Clause::Trap, format!("layer {tag}: Player 1 escapes {} -> {}", arena.name(v), arena.name(t)));
                    }
                }
                Player::Zero => {
                    for m in 0..fs.memory.state_count() {
                        if let Some(t) = fs.next_move(v, m).filter(|&t| !layer.winning.contains(t)) {
                            fail(Clause::Trap, format!("layer {tag}: Player 0 leaves X at {} -> {}", arena.name(v), arena.name(t)));
                            break;
                        }
                    }
                }
            }
        }
        earlier = earlier.union(&layer.attractor);
    }
    Ok(report)
}
