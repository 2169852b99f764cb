//! Tree decompositions: raw and nice forms, verification, construction and
//! the bag-balanced vertex partition.

mod build;
mod partition;
pub mod pace;

pub use build::{
    decompose, decompose_bounded, exact_treewidth_order, from_elimination_order, min_fill_order, Decomposition,
    EXACT_TREEWIDTH_MAX_N,
};
pub use partition::{balanced_partition, BalancedPartition, PARTITION_SLACK};

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Unrooted decomposition: bags plus the edges of the decomposition tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Largest bag size minus one; 0 when every bag is empty.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }
}

/// A violated decomposition axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotATree(String),
    VertexOutOfRange { node: usize, vertex: usize },
    VertexUncovered(usize),
    EdgeUncovered(usize, usize),
    DisconnectedOccurrence(usize),
    NotNice { node: usize, reason: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree(why) => write!(f, "tree axiom: {why}"),
            Violation::VertexOutOfRange { node, vertex } => write!(f, "bag {node} holds unknown vertex {vertex}"),
            Violation::VertexUncovered(v) => write!(f, "vertex coverage axiom: vertex {v} in no bag"),
            Violation::EdgeUncovered(u, v) => write!(f, "edge coverage axiom: edge ({u},{v}) in no bag"),
            Violation::DisconnectedOccurrence(v) => {
                write!(f, "connectivity axiom: bags holding vertex {v} are not connected")
            }
            Violation::NotNice { node, reason } => write!(f, "nice form: node {node} {reason}"),
        }
    }
}

fn into_error(v: Vec<Violation>) -> Error {
    Error::InvalidDecomposition(v.iter().map(ToString::to_string).collect())
}

/// Every violated axiom of a raw decomposition of `g`.
pub fn verify_raw(td: &TreeDecomposition, g: &Graph) -> Vec<Violation> {
    let k = td.bags.len();
    let mut out = Vec::new();
    if k == 0 {
        out.push(Violation::NotATree("no bags".into()));
        return out;
    }
    if td.edges.len() + 1 != k {
        out.push(Violation::NotATree(format!("{} bags but {} tree edges", k, td.edges.len())));
    }
    let mut uf = UnionFind::new(k);
    for &(a, b) in &td.edges {
        if a >= k || b >= k {
            out.push(Violation::NotATree(format!("tree edge ({a},{b}) names a missing bag")));
        } else if !uf.union(a, b) {
            out.push(Violation::NotATree(format!("tree edge ({a},{b}) closes a cycle")));
        }
    }
    if out.is_empty() && (1..k).any(|i| uf.find(i) != uf.find(0)) {
        out.push(Violation::NotATree("decomposition tree is disconnected".into()));
    }
    check_bag_axioms(g, &td.bags, &td.edges, &mut out);
    out
}

fn check_bag_axioms(g: &Graph, bags: &[Vec<usize>], tree_edges: &[(usize, usize)], out: &mut Vec<Violation>) {
    let n = g.n();
    let mut occurrences = vec![0usize; n];
    let mut member = vec![Vec::new(); bags.len()];
    for (i, bag) in bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                out.push(Violation::VertexOutOfRange { node: i, vertex: v });
            } else {
                occurrences[v] += 1;
            }
        }
        let mut b: Vec<usize> = bag.iter().copied().filter(|&v| v < n).collect();
        b.sort_unstable();
        b.dedup();
        member[i] = b;
    }
    for v in 0..n {
        if occurrences[v] == 0 {
            out.push(Violation::VertexUncovered(v));
        }
    }
    // Per vertex, #bags holding it minus #tree edges inside those bags is the
    // number of connected pieces.
    let mut inner_edges = vec![0usize; n];
    for &(a, b) in tree_edges {
        if a >= bags.len() || b >= bags.len() {
            continue;
        }
        for &v in &member[a] {
            if member[b].binary_search(&v).is_ok() {
                inner_edges[v] += 1;
            }
        }
    }
    for v in 0..n {
        if occurrences[v] > 0 && occurrences[v] != inner_edges[v] + 1 {
            out.push(Violation::DisconnectedOccurrence(v));
        }
    }
    let mut covered = std::collections::HashSet::new();
    for b in &member {
        for (i, &u) in b.iter().enumerate() {
            for &v in &b[i + 1..] {
                covered.insert((u, v));
            }
        }
    }
    for &(u, v) in g.edges() {
        if !covered.contains(&(u.min(v), u.max(v))) {
            out.push(Violation::EdgeUncovered(u, v));
        }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NodeKind,
    /// Sorted ascending.
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Rooted nice decomposition. Nodes are stored so that every child precedes
/// its parent; the root is the last node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn width(&self) -> usize {
        self.nodes.iter().map(|x| x.bag.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// Parent index per node; `None` for the root.
    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut p = vec![None; self.nodes.len()];
        for (i, x) in self.nodes.iter().enumerate() {
            for &c in &x.children {
                p[c] = Some(i);
            }
        }
        p
    }

    pub fn to_raw(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|x| x.bag.clone()).collect();
        let edges = self.nodes.iter().enumerate().flat_map(|(i, x)| x.children.iter().map(move |&c| (c, i))).collect();
        TreeDecomposition { bags, edges }
    }

    /// Copy with `extra` added to every bag; Leaf and root nodes get chains
    /// of Introduce and Forget nodes so the result stays nice. Existing
    /// Introduce and Forget nodes of `extra` vertices are dropped.
    pub fn with_vertices_in_every_bag(&self, extra: &[usize]) -> NiceTreeDecomposition {
        let mut extra: Vec<usize> = extra.to_vec();
        extra.sort_unstable();
        extra.dedup();
        let mut nodes: Vec<NiceNode> = Vec::with_capacity(self.nodes.len() + 2 * extra.len());
        let mut remap = vec![0usize; self.nodes.len()];
        let widen = |bag: &[usize]| {
            let mut b: Vec<usize> = bag.iter().copied().chain(extra.iter().copied()).collect();
            b.sort_unstable();
            b.dedup();
            b
        };
        for (i, x) in self.nodes.iter().enumerate() {
            let idx = match x.kind {
                NodeKind::Leaf => {
                    nodes.push(NiceNode { kind: NodeKind::Leaf, bag: Vec::new(), children: Vec::new() });
                    let mut bag = Vec::new();
                    for &v in &extra {
                        bag.push(v);
                        bag.sort_unstable();
                        let child = nodes.len() - 1;
                        nodes.push(NiceNode { kind: NodeKind::Introduce(v), bag: bag.clone(), children: vec![child] });
                    }
                    nodes.len() - 1
                }
                NodeKind::Introduce(v) | NodeKind::Forget(v) if extra.binary_search(&v).is_ok() => remap[x.children[0]],
                _ => {
                    let children = x.children.iter().map(|&c| remap[c]).collect();
                    nodes.push(NiceNode { kind: x.kind, bag: widen(&x.bag), children });
                    nodes.len() - 1
                }
            };
            remap[i] = idx;
        }
        let mut bag = widen(&[]);
        for &v in &extra {
            bag.retain(|&u| u != v);
            let child = nodes.len() - 1;
            nodes.push(NiceNode { kind: NodeKind::Forget(v), bag: bag.clone(), children: vec![child] });
        }
        NiceTreeDecomposition { nodes }
    }

    /// Wraps prebuilt nodes; callers run [`verify`] on the result.
    pub fn from_nodes(nodes: Vec<NiceNode>) -> Self {
        NiceTreeDecomposition { nodes }
    }
}

/// Every violated axiom of a nice decomposition of `g`, including the shape
/// rules of the nice form.
pub fn verify(td: &NiceTreeDecomposition, g: &Graph) -> Vec<Violation> {
    let mut out = Vec::new();
    if td.nodes.is_empty() {
        out.push(Violation::NotATree("no nodes".into()));
        return out;
    }
    let mut parent_count = vec![0usize; td.nodes.len()];
    for (i, x) in td.nodes.iter().enumerate() {
        for &c in &x.children {
            if c >= i {
                out.push(Violation::NotATree(format!("node {i} has child {c} stored after it")));
            } else {
                parent_count[c] += 1;
            }
        }
        if x.bag.windows(2).any(|w| w[0] >= w[1]) {
            out.push(Violation::NotNice { node: i, reason: "bag is not sorted and duplicate-free".into() });
        }
        check_shape(td, i, &mut out);
    }
    for (i, &c) in parent_count.iter().enumerate() {
        let expect = usize::from(i != td.root());
        if c != expect {
            out.push(Violation::NotATree(format!("node {i} has {c} parents")));
        }
    }
    if !td.nodes[td.root()].bag.is_empty() {
        out.push(Violation::NotNice { node: td.root(), reason: "root bag is not empty".into() });
    }
    let raw = td.to_raw();
    check_bag_axioms(g, &raw.bags, &raw.edges, &mut out);
    out
}

fn check_shape(td: &NiceTreeDecomposition, i: usize, out: &mut Vec<Violation>) {
    let x = &td.nodes[i];
    let bad = |reason: &str| Violation::NotNice { node: i, reason: reason.into() };
    let child_bag = |k: usize| x.children.get(k).and_then(|&c| td.nodes.get(c)).map(|c| &c.bag);
    match x.kind {
        NodeKind::Leaf => {
            if !x.children.is_empty() || !x.bag.is_empty() {
                out.push(bad("leaf must have no children and an empty bag"));
            }
        }
        NodeKind::Introduce(v) | NodeKind::Forget(v) => {
            let Some(cb) = child_bag(0).filter(|_| x.children.len() == 1) else {
                out.push(bad("introduce/forget needs exactly one child"));
                return;
            };
            let (big, small) = if matches!(x.kind, NodeKind::Introduce(_)) { (&x.bag, cb) } else { (cb, &x.bag) };
            let mut expect = small.clone();
            expect.push(v);
            expect.sort_unstable();
            if small.contains(&v) || &expect != big {
                out.push(bad("bag differs from its child by more than the named vertex"));
            }
        }
        NodeKind::Join => {
            if x.children.len() != 2 || child_bag(0) != Some(&x.bag) || child_bag(1) != Some(&x.bag) {
                out.push(bad("join needs two children with equal bags"));
            }
        }
    }
}

/// Converts a valid raw decomposition into nice form of the same width.
/// Rooted at bag 0; children are handled in ascending bag index.
pub fn make_nice(g: &Graph, raw: &TreeDecomposition) -> Result<NiceTreeDecomposition> {
    let violations = verify_raw(raw, g);
    if !violations.is_empty() {
        return Err(into_error(violations));
    }
    let k = raw.bags.len();
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in &raw.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    let bags: Vec<Vec<usize>> = raw
        .bags
        .iter()
        .map(|b| {
            let mut b = b.clone();
            b.sort_unstable();
            b.dedup();
            b
        })
        .collect();
    // Iterative postorder from bag 0.
    let mut parent = vec![usize::MAX; k];
    let mut order = Vec::with_capacity(k);
    let mut stack = vec![0usize];
    parent[0] = 0;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &c in adj[x].iter().rev() {
            if parent[c] == usize::MAX {
                parent[c] = x;
                stack.push(c);
            }
        }
    }
    let mut nodes: Vec<NiceNode> = Vec::new();
    let mut top = vec![usize::MAX; k];
    for &x in order.iter().rev() {
        let children: Vec<usize> = adj[x].iter().copied().filter(|&c| c != 0 && parent[c] == x).collect();
        let mut tops = Vec::new();
        for &c in &children {
            tops.push(transition(&mut nodes, top[c], &bags[c], &bags[x]));
        }
        let node = if tops.is_empty() {
            nodes.push(NiceNode { kind: NodeKind::Leaf, bag: Vec::new(), children: Vec::new() });
            let leaf = nodes.len() - 1;
            transition(&mut nodes, leaf, &[], &bags[x])
        } else {
            let mut acc = tops[0];
            for &t in &tops[1..] {
                nodes.push(NiceNode { kind: NodeKind::Join, bag: bags[x].clone(), children: vec![acc, t] });
                acc = nodes.len() - 1;
            }
            acc
        };
        top[x] = node;
    }
    let root_top = top[0];
    let last = transition(&mut nodes, root_top, &bags[0], &[]);
    debug_assert_eq!(last, nodes.len() - 1);
    Ok(NiceTreeDecomposition { nodes })
}

/// Appends Forget nodes for `from \ to`, then Introduce nodes for
/// `to \ from`, both in ascending order. Returns the topmost node.
fn transition(nodes: &mut Vec<NiceNode>, mut at: usize, from: &[usize], to: &[usize]) -> usize {
    let mut bag: Vec<usize> = from.to_vec();
    for &v in from {
        if to.binary_search(&v).is_err() {
            bag.retain(|&u| u != v);
            nodes.push(NiceNode { kind: NodeKind::Forget(v), bag: bag.clone(), children: vec![at] });
            at = nodes.len() - 1;
        }
    }
    for &v in to {
        if from.binary_search(&v).is_err() {
            let p = bag.binary_search(&v).unwrap_err();
            bag.insert(p, v);
            nodes.push(NiceNode { kind: NodeKind::Introduce(v), bag: bag.clone(), children: vec![at] });
            at = nodes.len() - 1;
        }
    }
    at
}
