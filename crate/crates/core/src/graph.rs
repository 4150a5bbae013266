//! Graph machinery shared by the solvers and verifiers.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::strategy::reachable_memory;
use crate::{
    Arena, Condition, Cost, Edge, Error, FiniteStateStrategy, Game, Lasso, MemoryStructure, ParityColoring, Player,
    PositionalStrategy, Result, Strategy, StreettPair, StreettSpec, VertexSet,
};

/// Plain adjacency lists; used for strategy-restricted graphs and products.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Digraph {
    pub succ: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(node_count: usize) -> Self {
        Digraph { succ: vec![Vec::new(); node_count] }
    }

    pub fn from_arena(arena: &Arena) -> Self {
        Digraph { succ: arena.vertices().map(|v| arena.successors(v).collect()).collect() }
    }

    pub fn node_count(&self) -> usize {
        self.succ.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.succ[u].push(v);
    }

    pub fn reverse(&self) -> Digraph {
        let mut rev = Digraph::new(self.node_count());
        for (u, vs) in self.succ.iter().enumerate() {
            for &v in vs {
                rev.succ[v].push(u);
            }
        }
        rev
    }

    /// Nodes reachable from `sources` (inclusive).
    pub fn reachable(&self, sources: impl IntoIterator<Item = usize>) -> VertexSet {
        let mut seen = VertexSet::empty(self.node_count());
        let mut stack: Vec<usize> = Vec::new();
        for s in sources {
            if seen.insert(s) {
                stack.push(s);
            }
        }
        while let Some(u) = stack.pop() {
            for &v in &self.succ[u] {
                if seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// Shortest path from `from` to any node of `targets` using only nodes
    /// accepted by `allowed` (endpoints included). Ties go to smaller node
    /// indices because successors are explored in order.
    pub fn shortest_path(&self, from: usize, targets: &VertexSet, allowed: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
        if !allowed(from) {
            return None;
        }
        let mut parent: Vec<Option<usize>> = vec![None; self.node_count()];
        let mut seen = VertexSet::empty(self.node_count());
        let mut queue = VecDeque::new();
        seen.insert(from);
        queue.push_back(from);
        while let Some(u) = queue.pop_front() {
            if targets.contains(u) {
                let mut path = vec![u];
                let mut cur = u;
                while let Some(p) = parent[cur] {
                    path.push(p);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            for &v in &self.succ[u] {
                if allowed(v) && seen.insert(v) {
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        None
    }

    /// A cycle through `start` (as a node sequence starting at `start`, the
    /// closing edge back to `start` implied) staying in `allowed`.
    pub fn cycle_through(&self, start: usize, allowed: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
        let mut best: Option<Vec<usize>> = None;
        for &v in &self.succ[start] {
            if v == start {
                return Some(vec![start]);
            }
            if !allowed(v) {
                continue;
            }
            let target = VertexSet::from_indices(self.node_count(), [start]);
            if let Some(mut path) = self.shortest_path(v, &target, &allowed) {
                path.pop();
                path.insert(0, start);
                if best.as_ref().is_none_or(|b| path.len() < b.len()) {
                    best = Some(path);
                }
            }
        }
        best
    }

    /// Strongly connected components of the subgraph induced by `nodes`,
    /// each listed in increasing node order. Iterative Tarjan.
    pub fn sccs(&self, nodes: &VertexSet) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut out = Vec::new();
        let mut counter = 0usize;
        for root in nodes.iter() {
            if index[root] != usize::MAX {
                continue;
            }
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (u, ref mut i)) = call.last_mut() {
                if *i < self.succ[u].len() {
                    let v = self.succ[u][*i];
                    *i += 1;
                    if !nodes.contains(v) {
                        continue;
                    }
                    if index[v] == usize::MAX {
                        index[v] = counter;
                        low[v] = counter;
                        counter += 1;
                        stack.push(v);
                        on_stack[v] = true;
                        call.push((v, 0));
                    } else if on_stack[v] {
                        low[u] = low[u].min(index[v]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        low[parent] = low[parent].min(low[u]);
                    }
                    if low[u] == index[u] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().expect("tarjan stack");
                            on_stack[w] = false;
                            comp.push(w);
                            if w == u {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        out.push(comp);
                    }
                }
            }
        }
        out
    }

    /// An SCC is nontrivial if it contains a cycle (several nodes or a self-loop).
    pub fn is_nontrivial(&self, comp: &[usize]) -> bool {
        comp.len() > 1 || self.succ[comp[0]].contains(&comp[0])
    }
}

/// Result of an attractor computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttractorResult {
    pub set: VertexSet,
    /// Moves of the attracting player on `set ∖ target`.
    pub strategy: PositionalStrategy,
    /// Step `j` of the inductive construction at which each vertex entered.
    pub rank: Vec<Option<usize>>,
}

/// The `player`-attractor of `target` inside the subarena induced by `within`
/// (the whole arena if `None`).
pub fn attractor(arena: &Arena, player: Player, target: &VertexSet, within: Option<&VertexSet>) -> Result<AttractorResult> {
    let n = arena.vertex_count();
    if target.universe() != n {
        return Err(Error::UnknownVertex(format!("target set over {} vertices", target.universe())));
    }
    let inside = |v: usize| within.is_none_or(|w| w.contains(v));
    let mut rank: Vec<Option<usize>> = vec![None; n];
    let mut set = VertexSet::empty(n);
    let mut remaining: Vec<usize> = arena.vertices().map(|v| arena.successors(v).filter(|&s| inside(s)).count()).collect();
    let mut queue = VecDeque::new();
    for v in target.iter().filter(|&v| inside(v)) {
        set.insert(v);
        rank[v] = Some(0);
        queue.push_back(v);
    }
    while let Some(u) = queue.pop_front() {
        let r = rank[u].expect("ranked");
        for p in arena.predecessors(u) {
            if !inside(p) || set.contains(p) {
                continue;
            }
            let joins = if arena.owner(p) == player {
                true
            } else {
                remaining[p] -= 1;
                remaining[p] == 0
            };
            if joins {
                set.insert(p);
                rank[p] = Some(r + 1);
                queue.push_back(p);
            }
        }
    }
    let mut strategy = PositionalStrategy::empty(player, n);
    for v in set.iter() {
        if arena.owner(v) != player || target.contains(v) {
            continue;
        }
        let want = rank[v].expect("ranked") - 1;
        let choice = arena
            .successors(v)
            .find(|&s| inside(s) && rank[s] == Some(want))
            .expect("attracted vertex has a successor one rank lower");
        strategy.set(v, choice);
    }
    Ok(AttractorResult { set, strategy, rank })
}

/// `X` is a trap for `player`: `player` cannot leave and the opponent can stay.
pub fn is_trap(arena: &Arena, player: Player, x: &VertexSet) -> bool {
    x.iter().all(|v| {
        if arena.owner(v) == player {
            arena.successors(v).all(|s| x.contains(s))
        } else {
            arena.successors(v).any(|s| x.contains(s))
        }
    })
}

/// The subgame induced by `keep`, with the map from new to old indices.
pub fn induced_subgame(game: &Game, keep: &VertexSet) -> Result<(Game, Vec<usize>)> {
    let arena = &game.arena;
    let old: Vec<usize> = keep.iter().collect();
    let mut new_index = vec![usize::MAX; arena.vertex_count()];
    for (i, &v) in old.iter().enumerate() {
        new_index[v] = i;
    }
    for &v in &old {
        if !arena.successors(v).any(|s| keep.contains(s)) {
            return Err(Error::TerminalVertex(arena.name(v).into()));
        }
    }
    let edges = arena
        .edges()
        .iter()
        .filter(|e| keep.contains(e.source) && keep.contains(e.target))
        .map(|e| Edge { source: new_index[e.source], target: new_index[e.target], costs: e.costs.clone() })
        .collect();
    let sub_arena = Arena::unchecked(
        old.iter().map(|&v| String::from(arena.name(v))).collect(),
        old.iter().map(|&v| arena.owner(v)).collect(),
        edges,
        arena.cost_dimension(),
    );
    let condition = match &game.condition {
        Condition::Parity(c) => Condition::Parity(c.restrict(&old)),
        Condition::Streett(s) => Condition::Streett(s.restrict(&old)),
    };
    Ok((Game { arena: sub_arena, condition }, old))
}

/// Removes `region` from the game. Fails if a remaining vertex would lose all
/// its successors, which cannot happen when `region` is an attractor.
pub fn remove_region(game: &Game, region: &VertexSet) -> Result<(Game, Vec<usize>)> {
    induced_subgame(game, &region.complement())
}

/// Where a vertex of a subdivided arena comes from.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Vertex(usize),
    /// The vertex `sub(e)` inserted on edge `e` of the original arena.
    Edge(usize),
}

#[derive(Clone, Debug)]
pub struct Subdivision {
    pub game: Game,
    /// Indexed by vertex of the subdivided arena.
    pub origin: Vec<Origin>,
    /// For each original edge, the inserted vertex if it was subdivided.
    pub edge_vertex: Vec<Option<usize>>,
}

impl Subdivision {
    pub fn original_vertex_count(&self) -> usize {
        self.origin.iter().filter(|o| matches!(o, Origin::Vertex(_))).count()
    }

    /// Original vertices keep their index, so projection is the identity on them.
    pub fn is_original(&self, v: usize) -> bool {
        matches!(self.origin[v], Origin::Vertex(_))
    }

    /// Vertices with incoming increment edges in dimension `dim`.
    pub fn increment_vertices(&self, dim: usize) -> VertexSet {
        let arena = &self.game.arena;
        VertexSet::from_fn(arena.vertex_count(), |v| arena.in_edges(v).iter().any(|&e| arena.edge(e).is_increment(dim)))
    }

    /// The subdivided counterpart of a move `u -> v` of the original arena.
    pub fn first_hop(&self, original: &Arena, u: usize, v: usize) -> usize {
        let e = original.edge_between(u, v).expect("move along an edge");
        self.edge_vertex[e].unwrap_or(v)
    }

    /// Drops inserted vertices from a lasso of the subdivided arena.
    pub fn project_lasso(&self, lasso: &Lasso) -> Lasso {
        let keep = |seq: &[usize]| seq.iter().copied().filter(|&v| self.is_original(v)).collect::<Vec<_>>();
        let cycle = keep(&lasso.cycle);
        Lasso::new(keep(&lasso.prefix), cycle)
    }
}

fn fresh_name(taken: &BTreeMap<String, ()>, base: String) -> String {
    let mut name = base;
    while taken.contains_key(&name) {
        name.push('\'');
    }
    name
}

/// Replaces every edge that is not all-epsilon by `u -> sub(e)` (carrying the
/// original labels) and `sub(e) -> v` (all-epsilon). `sub(e)` belongs to
/// Player 1, takes the color of `v` and joins no Streett set. Original
/// vertices keep their indices; new vertices follow in edge order.
pub fn subdivide(game: &Game) -> Subdivision {
    let arena = &game.arena;
    let n = arena.vertex_count();
    let dim = arena.cost_dimension();
    let mut names: Vec<String> = arena.names().to_vec();
    let mut owners: Vec<Player> = arena.owners().to_vec();
    let mut origin: Vec<Origin> = (0..n).map(Origin::Vertex).collect();
    let mut taken: BTreeMap<String, ()> = names.iter().map(|s| (s.clone(), ())).collect();
    let mut edges = Vec::new();
    let mut edge_vertex = vec![None; arena.edge_count()];
    for (i, e) in arena.edges().iter().enumerate() {
        if e.is_all_epsilon() {
            edges.push(e.clone());
            continue;
        }
        let name = fresh_name(&taken, format!("sub({},{})", arena.name(e.source), arena.name(e.target)));
        taken.insert(name.clone(), ());
        let s = names.len();
        names.push(name);
        owners.push(Player::One);
        origin.push(Origin::Edge(i));
        edge_vertex[i] = Some(s);
        edges.push(Edge { source: e.source, target: s, costs: e.costs.clone() });
        edges.push(Edge { source: s, target: e.target, costs: vec![Cost::Epsilon; dim] });
    }
    let total = names.len();
    let target_of = |v: usize| match origin[v] {
        Origin::Vertex(o) => o,
        Origin::Edge(e) => arena.edge(e).target,
    };
    let condition = match &game.condition {
        Condition::Parity(c) => Condition::Parity(ParityColoring::new((0..total).map(|v| c.color(target_of(v))).collect())),
        Condition::Streett(s) => Condition::Streett(StreettSpec::new(
            s.pairs
                .iter()
                .map(|p| StreettPair {
                    requests: VertexSet::from_fn(total, |v| v < n && p.requests.contains(v)),
                    responses: VertexSet::from_fn(total, |v| v < n && p.responses.contains(v)),
                })
                .collect(),
        )),
    };
    let arena = Arena::unchecked(names, owners, edges, dim);
    Subdivision { game: Game { arena, condition }, origin, edge_vertex }
}

/// Bijection between product vertices and `(vertex, memory state)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductMap {
    pub states: usize,
    /// `forward[v * states + m]`.
    pub forward: Vec<Option<usize>>,
    pub backward: Vec<(usize, usize)>,
}

impl ProductMap {
    pub fn get(&self, v: usize, m: usize) -> Option<usize> {
        self.forward[v * self.states + m]
    }

    pub fn vertex(&self, p: usize) -> usize {
        self.backward[p].0
    }

    pub fn state(&self, p: usize) -> usize {
        self.backward[p].1
    }

    pub fn initial(&self, memory: &MemoryStructure, v: usize) -> Option<usize> {
        self.get(v, memory.init(v))
    }
}

/// The expanded arena `A × M`: `((v,m),(v',m'))` is an edge iff `(v,v')` is
/// one and `Upd(m, v') = m'`. With `full` every pair `(v, m)` is a vertex;
/// otherwise only those reachable from some `(v, Init(v))`. Owners and edge
/// labels are inherited; vertices are ordered by `(v, m)`.
pub fn product(arena: &Arena, memory: &MemoryStructure, full: bool) -> (Arena, ProductMap) {
    let n = arena.vertex_count();
    let states = memory.state_count();
    let mut present = vec![false; n * states];
    if full {
        present.iter_mut().for_each(|p| *p = true);
    } else {
        let mut stack = Vec::new();
        for v in arena.vertices() {
            let key = v * states + memory.init(v);
            if !present[key] {
                present[key] = true;
                stack.push((v, memory.init(v)));
            }
        }
        while let Some((v, m)) = stack.pop() {
            for s in arena.successors(v) {
                let ms = memory.update(m, s);
                let key = s * states + ms;
                if !present[key] {
                    present[key] = true;
                    stack.push((s, ms));
                }
            }
        }
    }
    let mut forward = vec![None; n * states];
    let mut backward = Vec::new();
    for v in 0..n {
        for m in 0..states {
            if present[v * states + m] {
                forward[v * states + m] = Some(backward.len());
                backward.push((v, m));
            }
        }
    }
    let names = backward.iter().map(|&(v, m)| format!("{}@{}", arena.name(v), memory.state_name(m))).collect();
    let owners = backward.iter().map(|&(v, _)| arena.owner(v)).collect();
    let mut edges = Vec::new();
    for (p, &(v, m)) in backward.iter().enumerate() {
        for &e in arena.out_edges(v) {
            let edge = arena.edge(e);
            let ms = memory.update(m, edge.target);
            if let Some(q) = forward[edge.target * states + ms] {
                edges.push(Edge { source: p, target: q, costs: edge.costs.clone() });
            }
        }
    }
    (Arena::unchecked(names, owners, edges, arena.cost_dimension()), ProductMap { states, forward, backward })
}

/// The extended play of `lasso` in `A × M`, unrolled until the memory
/// repeats at the start of the cycle.
pub fn lift_lasso(lasso: &Lasso, memory: &MemoryStructure, map: &ProductMap) -> Option<Lasso> {
    let mut m = memory.init(lasso.at(0));
    let mut prefix = Vec::new();
    for k in 0..lasso.prefix.len() {
        if k > 0 {
            m = memory.update(m, lasso.at(k));
        }
        prefix.push(map.get(lasso.at(k), m)?);
    }
    let p = lasso.prefix.len();
    let period = lasso.cycle.len();
    let mut first_seen: BTreeMap<usize, usize> = BTreeMap::new();
    let mut unrolled = Vec::new();
    let mut k = p;
    loop {
        if k > 0 {
            m = memory.update(m, lasso.at(k));
        }
        if (k - p).is_multiple_of(period) {
            if let Some(&start) = first_seen.get(&m) {
                let cycle = unrolled.split_off(start);
                prefix.extend(unrolled);
                return Some(Lasso::new(prefix, cycle));
            }
            first_seen.insert(m, unrolled.len());
        }
        unrolled.push(map.get(lasso.at(k), m)?);
        k += 1;
    }
}

/// Per-vertex verdict of [`parity_cycle_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleReport {
    /// A cycle whose largest color has the bad parity is reachable.
    pub bad_reachable: Vec<bool>,
    /// Witness cycles (node sequences, closing edge implied).
    pub witnesses: Vec<Vec<usize>>,
}

/// For every node, decides whether a cycle whose maximal color has parity
/// `bad` is reachable. Per color `c` of that parity, looks for a nontrivial
/// SCC of the subgraph of colors `<= c` containing a color-`c` node.
pub fn parity_cycle_check(graph: &Digraph, color: impl Fn(usize) -> u32, bad: Player) -> CycleReport {
    let n = graph.node_count();
    let mut colors: Vec<u32> = (0..n).map(&color).filter(|&c| Player::of_parity(c) == bad).collect();
    colors.sort_unstable();
    colors.dedup();
    let mut on_bad = VertexSet::empty(n);
    let mut witnesses = Vec::new();
    for &c in &colors {
        let low = VertexSet::from_fn(n, |v| color(v) <= c);
        for comp in graph.sccs(&low) {
            if !graph.is_nontrivial(&comp) {
                continue;
            }
            let Some(&top) = comp.iter().find(|&&v| color(v) == c) else {
                continue;
            };
            let members = VertexSet::from_indices(n, comp.iter().copied());
            let cycle = graph.cycle_through(top, |v| members.contains(v)).expect("nontrivial SCC has a cycle");
            for &v in &comp {
                on_bad.insert(v);
            }
            witnesses.push(cycle);
        }
    }
    let reach = graph.reverse().reachable(on_bad.iter());
    CycleReport { bad_reachable: (0..n).map(|v| reach.contains(v)).collect(), witnesses }
}

/// A lasso from `start` to one of the witness cycles (shortest access path).
pub fn witness_lasso(graph: &Digraph, start: usize, witnesses: &[Vec<usize>]) -> Option<Lasso> {
    let heads = VertexSet::from_indices(graph.node_count(), witnesses.iter().map(|c| c[0]));
    let path = graph.shortest_path(start, &heads, |_| true)?;
    let head = *path.last()?;
    let cycle = witnesses.iter().find(|c| c[0] == head)?.clone();
    let mut prefix = path;
    prefix.pop();
    Some(Lasso::new(prefix, cycle))
}

/// Reads a strategy of `base × memory` (built by [`product`]) as a strategy
/// of the base arena. Positional product strategies need only `memory`;
/// finite-state ones run their own memory alongside it.
pub fn product_strategy_to_base(
    strategy: &Strategy,
    base: &Arena,
    memory: &MemoryStructure,
    map: &ProductMap,
    budget: usize,
) -> Result<FiniteStateStrategy> {
    match strategy {
        Strategy::Positional(tau) => Ok(FiniteStateStrategy::from_fn(tau.player, memory.clone(), |v, m| {
            map.get(v, m).and_then(|p| tau.get(p)).map(|q| map.vertex(q))
        })),
        Strategy::FiniteState(sigma) => {
            let inner = &sigma.memory;
            let (mem, states) = reachable_memory(
                base,
                |v| {
                    let m1 = memory.init(v);
                    (m1, map.get(v, m1).map_or(0, |p| inner.init(p)))
                },
                |&(m1, m2), v| {
                    let n1 = memory.update(m1, v);
                    (n1, map.get(v, n1).map_or(0, |p| inner.update(m2, p)))
                },
                |&(m1, m2)| format!("{}|{}", memory.state_name(m1), inner.state_name(m2)),
                budget,
            )?;
            Ok(FiniteStateStrategy::from_fn(sigma.player, mem, |v, m| {
                let (m1, m2) = states[m];
                map.get(v, m1).and_then(|p| sigma.next_move(p, m2)).map(|q| map.vertex(q))
            }))
        }
    }
}

/// Turns a strategy of the subdivided arena into one of the original arena.
///
/// Positional strategies project directly. A finite-state strategy keeps its
/// memory when the detour through an inserted vertex leaves the memory
/// unchanged; otherwise the memory also records the current vertex so that
/// the skipped inserted vertex can be replayed.
pub fn lift_from_subdivision(strategy: &Strategy, sub: &Subdivision, original: &Arena, budget: usize) -> Result<Strategy> {
    let n = original.vertex_count();
    let project = |t: usize| match sub.origin[t] {
        Origin::Vertex(o) => o,
        Origin::Edge(e) => original.edge(e).target,
    };
    match strategy {
        Strategy::Positional(p) => {
            let mut out = PositionalStrategy::empty(p.player, n);
            for v in 0..n {
                if let Some(t) = p.get(v) {
                    out.set(v, project(t));
                }
            }
            Ok(Strategy::Positional(out))
        }
        Strategy::FiniteState(fs) => {
            let inner = &fs.memory;
            let detours: Vec<(usize, usize)> = original
                .edges()
                .iter()
                .enumerate()
                .filter_map(|(e, edge)| sub.edge_vertex[e].map(|s| (s, edge.target)))
                .collect();
            let transparent = (0..inner.state_count())
                .all(|m| detours.iter().all(|&(s, t)| inner.update(inner.update(m, s), t) == inner.update(m, t)));
            if transparent {
                let memory = MemoryStructure::from_fn(inner.state_names().to_vec(), n, |v| inner.init(v), |m, v| {
                    inner.update(m, v)
                })?;
                return Ok(Strategy::FiniteState(FiniteStateStrategy::from_fn(fs.player, memory, |v, m| {
                    fs.next_move(v, m).map(project)
                })));
            }
            let (memory, states) = reachable_memory(
                original,
                |v| (v, inner.init(v)),
                |&(u, m), v| {
                    let through = original.edge_between(u, v).and_then(|e| sub.edge_vertex[e]);
                    let m = match through {
                        Some(s) => inner.update(inner.update(m, s), v),
                        None => inner.update(m, v),
                    };
                    (v, m)
                },
                |&(u, m)| format!("{}|{}", original.name(u), inner.state_name(m)),
                budget,
            )?;
            Ok(Strategy::FiniteState(FiniteStateStrategy::from_fn(fs.player, memory, |v, m| {
                let (u, inner_m) = states[m];
                if u == v {
                    fs.next_move(v, inner_m).map(project)
                } else {
                    None
                }
            })))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::fixtures::running_example;

    #[test]
    fn attractor_trivial_targets() {
        let game = running_example();
        let n = game.vertex_count();
        let all = attractor(&game.arena, Player::Zero, &VertexSet::full(n), None).unwrap();
        assert_eq!(all.set, VertexSet::full(n));
        let none = attractor(&game.arena, Player::Zero, &VertexSet::empty(n), None).unwrap();
        assert!(none.set.is_empty());
    }

    #[test]
    fn example_attractor_of_g() {
        let game = running_example();
        let g = game.arena.set_of_names(&["g"]).unwrap();
        let att = attractor(&game.arena, Player::Zero, &g, None).unwrap();
        assert_eq!(game.arena.format_set(&att.set), "f g");
        assert_eq!(att.rank[game.arena.vertex("f").unwrap()], Some(1));
    }

    #[test]
    fn example_trap() {
        let game = running_example();
        let b = game.arena.set_of_names(&["b"]).unwrap();
        assert!(is_trap(&game.arena, Player::Zero, &b));
        assert!(!is_trap(&game.arena, Player::One, &b));
        assert!(is_trap(&game.arena, Player::Zero, &VertexSet::full(7)));
    }

    #[test]
    fn example_remove_attractor() {
        let game = running_example();
        let g = game.arena.set_of_names(&["g"]).unwrap();
        let att = attractor(&game.arena, Player::Zero, &g, None).unwrap();
        let (sub, origin) = remove_region(&game, &att.set).unwrap();
        assert_eq!(sub.arena.names(), ["a", "b", "c", "d", "e"]);
        assert_eq!(origin, [0, 1, 2, 3, 4]);
        assert!(sub.arena.violations().is_empty());
        let (same, _) = remove_region(&game, &VertexSet::empty(7)).unwrap();
        assert_eq!(same, game);
    }

    #[test]
    fn removing_a_non_attractor_can_strand_vertices() {
        let game = running_example();
        let c = game.arena.set_of_names(&["a", "b", "c"]).unwrap();
        let mut x = c.clone();
        x.remove(1);
        assert!(remove_region(&game, &x).is_ok());
        let g = game.arena.set_of_names(&["g"]).unwrap();
        assert!(matches!(remove_region(&game, &g), Err(Error::TerminalVertex(v)) if v == "f"));
    }

    #[test]
    fn example_subdivision_adds_one_vertex_per_increment_edge() {
        let game = running_example();
        let sub = subdivide(&game);
        assert_eq!(sub.game.vertex_count(), 10);
        assert_eq!(sub.game.arena.edge_count(), 13);
        assert!(sub.game.arena.violations().is_empty());
        let b = game.arena.vertex("b").unwrap();
        let sb = sub.edge_vertex[game.arena.edge_between(b, b).unwrap()].unwrap();
        assert_eq!(sub.game.arena.name(sb), "sub(b,b)");
        assert_eq!(sub.game.coloring().unwrap().color(sb), 0);
        assert_eq!(sub.increment_vertices(0).len(), 3);
    }

    #[test]
    fn one_state_product_is_isomorphic() {
        let game = running_example();
        let memory = MemoryStructure::trivial(7);
        let (prod, map) = product(&game.arena, &memory, false);
        assert_eq!(prod.vertex_count(), 7);
        assert_eq!(prod.edge_count(), game.arena.edge_count());
        assert_eq!(map.get(3, 0), Some(3));
    }

    #[test]
    fn cycle_check_self_loops() {
        let mut g = Digraph::new(1);
        g.add_edge(0, 0);
        assert!(!parity_cycle_check(&g, |_| 2, Player::One).bad_reachable[0]);
        assert!(parity_cycle_check(&g, |_| 3, Player::One).bad_reachable[0]);
    }
}
