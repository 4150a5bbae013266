//! Arenas: finite directed graphs with an owner partition and cost labels.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result, VertexSet};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Player {
    Zero,
    One,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Zero => Player::One,
            Player::One => Player::Zero,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Player::Zero => 0,
            Player::One => 1,
        }
    }

    pub fn from_index(i: usize) -> Option<Player> {
        match i {
            0 => Some(Player::Zero),
            1 => Some(Player::One),
            _ => None,
        }
    }

    /// The player who wins a play whose dominating parity color is `color`.
    pub fn of_parity(color: u32) -> Player {
        if color.is_multiple_of(2) {
            Player::Zero
        } else {
            Player::One
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Label of an edge for one cost function.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cost {
    Epsilon,
    Increment,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    /// One label per cost dimension.
    pub costs: Vec<Cost>,
}

impl Edge {
    pub fn is_increment(&self, dim: usize) -> bool {
        self.costs.get(dim) == Some(&Cost::Increment)
    }

    pub fn is_all_epsilon(&self) -> bool {
        self.costs.iter().all(|&c| c == Cost::Epsilon)
    }
}

/// A structural problem found by [`Arena::violations`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoSuccessor(String),
    DuplicateVertex(String),
    DuplicateEdge(String, String),
    DanglingEdge(usize),
    WrongCostDimension { edge: usize, expected: usize, found: usize },
    ZeroCostDimension,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoSuccessor(v) => write!(f, "vertex `{v}` has no outgoing edge"),
            Violation::DuplicateVertex(v) => write!(f, "vertex `{v}` declared twice"),
            Violation::DuplicateEdge(u, v) => write!(f, "edge `{u}` -> `{v}` declared twice"),
            Violation::DanglingEdge(e) => write!(f, "edge #{e} has an endpoint outside the arena"),
            Violation::WrongCostDimension { edge, expected, found } => {
                write!(f, "edge #{edge} carries {found} cost labels, expected {expected}")
            }
            Violation::ZeroCostDimension => write!(f, "cost dimension must be at least 1"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arena {
    names: Vec<String>,
    owners: Vec<Player>,
    edges: Vec<Edge>,
    dim: usize,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    index: BTreeMap<String, usize>,
}

impl Arena {
    /// Builds an arena without checking its invariants; see [`Arena::violations`].
    pub fn unchecked(names: Vec<String>, owners: Vec<Player>, edges: Vec<Edge>, dim: usize) -> Arena {
        let n = names.len();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            if e.source < n && e.target < n {
                succ[e.source].push(i);
                pred[e.target].push(i);
            }
        }
        let mut index = BTreeMap::new();
        for (i, name) in names.iter().enumerate() {
            index.entry(name.clone()).or_insert(i);
        }
        Arena { names, owners, edges, dim, succ, pred, index }
    }

    /// Builds an arena and rejects it if any invariant is violated.
    pub fn new(names: Vec<String>, owners: Vec<Player>, edges: Vec<Edge>, dim: usize) -> Result<Arena> {
        let arena = Self::unchecked(names, owners, edges, dim);
        let violations = arena.violations();
        if violations.is_empty() {
            Ok(arena)
        } else {
            Err(Error::InvalidArena(violations))
        }
    }

    /// Lists every broken invariant; empty iff the arena is well formed.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.dim == 0 {
            out.push(Violation::ZeroCostDimension);
        }
        for (i, name) in self.names.iter().enumerate() {
            if self.index.get(name) != Some(&i) {
                out.push(Violation::DuplicateVertex(name.clone()));
            }
        }
        let n = self.names.len();
        let mut seen = BTreeMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.source >= n || e.target >= n {
                out.push(Violation::DanglingEdge(i));
                continue;
            }
            if e.costs.len() != self.dim {
                out.push(Violation::WrongCostDimension { edge: i, expected: self.dim, found: e.costs.len() });
            }
            if seen.insert((e.source, e.target), i).is_some() {
                out.push(Violation::DuplicateEdge(self.names[e.source].clone(), self.names[e.target].clone()));
            }
        }
        for v in 0..n {
            if self.succ[v].is_empty() {
                out.push(Violation::NoSuccessor(self.names[v].clone()));
            }
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn cost_dimension(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> core::ops::Range<usize> {
        0..self.names.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn vertex_or_err(&self, name: &str) -> Result<usize> {
        self.vertex(name).ok_or_else(|| Error::UnknownVertex(name.into()))
    }

    pub fn owner(&self, v: usize) -> Player {
        self.owners[v]
    }

    pub fn owners(&self) -> &[Player] {
        &self.owners
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    /// Outgoing edge indices of `v` in declaration order.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.pred[v]
    }

    pub fn successors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.succ[v].iter().map(move |&e| self.edges[e].target)
    }

    pub fn predecessors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.pred[v].iter().map(move |&e| self.edges[e].source)
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.succ.get(u)?.iter().copied().find(|&e| self.edges[e].target == v)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_between(u, v).is_some()
    }

    pub fn vertices_of(&self, player: Player) -> VertexSet {
        VertexSet::from_fn(self.vertex_count(), |v| self.owners[v] == player)
    }

    pub fn has_increment_edges(&self) -> bool {
        self.edges.iter().any(|e| !e.is_all_epsilon())
    }

    /// Formats a set as space separated names in declaration order.
    pub fn format_set(&self, set: &VertexSet) -> String {
        let mut out = String::new();
        for v in set.iter() {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&self.names[v]);
        }
        out
    }

    pub fn set_of_names(&self, names: &[&str]) -> Result<VertexSet> {
        let mut set = VertexSet::empty(self.vertex_count());
        for name in names {
            set.insert(self.vertex_or_err(name)?);
        }
        Ok(set)
    }
}

/// Incremental construction of an [`Arena`] by vertex name.
#[derive(Clone, Debug, Default)]
pub struct ArenaBuilder {
    names: Vec<String>,
    owners: Vec<Player>,
    edges: Vec<Edge>,
    index: BTreeMap<String, usize>,
    dim: usize,
}

impl ArenaBuilder {
    pub fn new(dim: usize) -> Self {
        ArenaBuilder { dim, ..Default::default() }
    }

    pub fn vertex(&mut self, name: &str, owner: Player) -> usize {
        let id = self.names.len();
        self.names.push(name.into());
        self.owners.push(owner);
        self.index.entry(name.into()).or_insert(id);
        id
    }

    pub fn edge(&mut self, source: &str, target: &str, costs: Vec<Cost>) -> Result<usize> {
        let s = *self.index.get(source).ok_or_else(|| Error::UnknownVertex(source.into()))?;
        let t = *self.index.get(target).ok_or_else(|| Error::UnknownVertex(target.into()))?;
        self.edges.push(Edge { source: s, target: t, costs });
        Ok(self.edges.len() - 1)
    }

    /// Adds an edge with the same label in every dimension.
    pub fn uniform_edge(&mut self, source: &str, target: &str, cost: Cost) -> Result<usize> {
        let costs = vec![cost; self.dim];
        self.edge(source, target, costs)
    }

    pub fn build(self) -> Result<Arena> {
        Arena::new(self.names, self.owners, self.edges, self.dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn self_loop_is_minimal_legal_arena() {
        let mut b = ArenaBuilder::new(1);
        b.vertex("v", Player::Zero);
        b.uniform_edge("v", "v", Cost::Epsilon).unwrap();
        let arena = b.build().unwrap();
        assert!(arena.violations().is_empty());
    }

    #[test]
    fn dead_end_is_reported_by_name() {
        let arena = Arena::unchecked(
            vec!["v".to_string(), "u".to_string()],
            vec![Player::Zero, Player::One],
            vec![Edge { source: 0, target: 1, costs: vec![Cost::Epsilon] }],
            1,
        );
        assert_eq!(arena.violations(), vec![Violation::NoSuccessor("u".into())]);
    }

    #[test]
    fn duplicate_edges_and_bad_dimensions_are_reported() {
        let e = Edge { source: 0, target: 0, costs: vec![Cost::Epsilon] };
        let arena = Arena::unchecked(
            vec!["v".to_string()],
            vec![Player::Zero],
            vec![e.clone(), e, Edge { source: 0, target: 3, costs: vec![] }],
            1,
        );
        let violations = arena.violations();
        assert!(violations.contains(&Violation::DuplicateEdge("v".into(), "v".into())));
        assert!(violations.contains(&Violation::DanglingEdge(2)));
    }
}
