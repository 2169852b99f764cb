//! Undirected graphs with dense vertex ids, vertex sets and weights.

mod algo;
pub mod gen;
pub mod io;

pub use algo::{
    biconnected_components, bridges, components, dfs_forest, feedback_edge_set, fes_number,
    min_vertex_cover, DfsForest,
};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A set of vertex ids backed by a bitset of fixed capacity.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        VertexSet { bits: FixedBitSet::with_capacity(capacity) }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::new(capacity);
        s.bits.insert_range(..);
        s
    }

    /// Panics if an id is not below `capacity`.
    pub fn from_ids(capacity: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(capacity);
        for v in ids {
            s.insert(v);
        }
        s
    }

    /// Like `from_ids` but reports out-of-range ids instead of panicking.
    pub fn try_from_ids(capacity: usize, ids: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::new(capacity);
        for v in ids {
            if v >= capacity {
                return Err(Error::input(format!("vertex {v} out of range 0..{capacity}")));
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.bits.len() && self.bits.contains(v)
    }

    pub fn insert(&mut self, v: usize) -> bool {
        let had = self.bits.contains(v);
        self.bits.insert(v);
        !had
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if !self.contains(v) {
            return false;
        }
        self.bits.set(v, false);
        true
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        if other.capacity() > self.capacity() {
            self.bits.grow(other.capacity());
        }
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    /// Complement with respect to `0..capacity`.
    pub fn complement(&self) -> VertexSet {
        let mut s = self.clone();
        s.bits.toggle_range(..);
        s
    }
}

/// Natural-number vertex weights.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Weights(Vec<u64>);

impl Weights {
    pub fn unit(n: usize) -> Self {
        Weights(vec![1; n])
    }

    pub fn new(w: Vec<u64>) -> Self {
        Weights(w)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn of(&self, v: usize) -> u64 {
        self.0[v]
    }

    pub fn set(&mut self, v: usize, weight: u64) {
        self.0[v] = weight;
    }

    pub fn total(&self, s: &VertexSet) -> u64 {
        s.iter().map(|v| self.0[v]).sum()
    }

    pub fn total_of(&self, ids: impl IntoIterator<Item = usize>) -> u64 {
        ids.into_iter().map(|v| self.0[v]).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&w| w == 1)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    /// Weights of the vertices listed in `map`, in that order.
    pub fn restrict(&self, map: &[usize]) -> Weights {
        Weights(map.iter().map(|&v| self.0[v]).collect())
    }
}

/// Undirected graph on vertices `0..n` without self-loops.
///
/// Parallel edges are only admitted through [`Graph::new_multi`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    multi: bool,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n], multi: false }
    }

    /// Simple graph; rejects self-loops, out-of-range ids and repeated pairs.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::build(n, edges, false)
    }

    /// Graph that may carry parallel edges.
    pub fn new_multi(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::build(n, edges, true)
    }

    /// Simple graph that silently drops repeated pairs.
    pub fn new_dedup(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Ok(Self::build(n, edges, true)?.normalized())
    }

    fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>, multi: bool) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!("edge ({u},{v}) out of range 0..{n}")));
            }
            if u == v {
                return Err(Error::input(format!("self-loop at {u}")));
            }
            list.push((u.min(v), u.max(v)));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        if !multi {
            for (u, a) in adj.iter().enumerate() {
                if a.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::input(format!("parallel edges at vertex {u}")));
                }
            }
        }
        let has_parallel = adj.iter().any(|a| a.windows(2).any(|w| w[0] == w[1]));
        Ok(Graph { n, edges: list, adj, multi: has_parallel })
    }

    /// Copy with parallel edges merged.
    pub fn normalized(&self) -> Graph {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e.dedup();
        Graph::build(self.n, e, false).expect("deduplicated edges form a simple graph")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` pairs in insertion order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// True when some vertex pair carries more than one edge.
    pub fn has_parallel_edges(&self) -> bool {
        self.multi
    }

    /// Errors if the graph has parallel edges; solver entry points call this.
    pub fn require_simple(&self) -> Result<()> {
        if self.multi {
            return Err(Error::input("graph has parallel edges"));
        }
        Ok(())
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        let mut s = VertexSet::from_ids(self.n, self.adj[v].iter().copied());
        s.insert(v);
        s
    }

    /// N[S]: vertices in `s` or adjacent to it.
    pub fn closed_neighborhood_of(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.n);
        for v in s.iter() {
            out.insert(v);
            for &u in &self.adj[v] {
                out.insert(u);
            }
        }
        out
    }

    /// N(S) = N[S] \ S.
    pub fn open_neighborhood_of(&self, s: &VertexSet) -> VertexSet {
        self.closed_neighborhood_of(s).difference(s)
    }

    /// Subgraph induced by `keep`, plus the map from new ids to old ids.
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = (0..self.n).filter(|&v| keep.contains(v)).collect();
        let mut inv = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            inv[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep.contains(u) && keep.contains(v))
            .map(|&(u, v)| (inv[u], inv[v]));
        let g = Graph::build(map.len(), edges, true).expect("induced edges stay in range");
        (g, map)
    }

    /// G - S, keeping ids and leaving removed vertices isolated.
    pub fn without_vertices(&self, s: &VertexSet) -> Graph {
        let edges = self.edges.iter().copied().filter(|&(u, v)| !s.contains(u) && !s.contains(v));
        Graph::build(self.n, edges, true).expect("subset of valid edges")
    }

    /// Copy with one extra vertex `n` adjacent to `nbrs`.
    pub fn with_apex(&self, nbrs: &VertexSet) -> Graph {
        let x = self.n;
        let edges = self.edges.iter().copied().chain(nbrs.iter().map(|v| (v, x)));
        Graph::build(self.n + 1, edges, self.multi).expect("apex edges stay in range")
    }

    /// Adjacency lists rebuilt from the edge list; equal to the stored index.
    pub fn rebuilt_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }
}

/// True iff every vertex in `targets` has a closed neighbor in `s`.
pub fn is_dominating(g: &Graph, s: &VertexSet, targets: &VertexSet) -> Result<bool> {
    for v in s.iter().chain(targets.iter()) {
        if v >= g.n() {
            return Err(Error::input(format!("vertex {v} out of range 0..{}", g.n())));
        }
    }
    Ok(targets.iter().all(|t| s.contains(t) || g.neighbors(t).iter().any(|&u| s.contains(u))))
}

/// Shorthand for domination of the whole vertex set.
pub fn dominates_all(g: &Graph, s: &VertexSet) -> bool {
    (0..g.n()).all(|t| s.contains(t) || g.neighbors(t).iter().any(|&u| s.contains(u)))
}
