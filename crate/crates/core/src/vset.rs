use alloc::vec;
use alloc::vec::Vec;

/// A set of vertex indices over a fixed universe `0..n`.
///
/// Iteration always follows index order, which is the declaration order of
/// the arena the set belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: Vec<bool>,
    len: usize,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet { bits: vec![false; universe], len: 0 }
    }

    pub fn full(universe: usize) -> Self {
        VertexSet { bits: vec![true; universe], len: universe }
    }

    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(universe);
        for v in indices {
            set.insert(v);
        }
        set
    }

    pub fn from_fn(universe: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        Self::from_indices(universe, (0..universe).filter(|&v| f(v)))
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.get(v).copied().unwrap_or(false)
    }

    /// Returns `true` if `v` was not yet present.
    pub fn insert(&mut self, v: usize) -> bool {
        if self.bits[v] {
            false
        } else {
            self.bits[v] = true;
            self.len += 1;
            true
        }
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if self.bits[v] {
            self.bits[v] = false;
            self.len -= 1;
            true
        } else {
            false
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter_map(|(i, &b)| b.then_some(i))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_fn(self.universe(), |v| self.contains(v) || other.contains(v))
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_fn(self.universe(), |v| self.contains(v) && other.contains(v))
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_fn(self.universe(), |v| self.contains(v) && !other.contains(v))
    }

    pub fn complement(&self) -> VertexSet {
        VertexSet::from_fn(self.universe(), |v| !self.contains(v))
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}
