//! Decompositions from elimination orderings: greedy low-degree elimination
//! for width ≤ 2, exact branch and bound for small components, min-fill
//! otherwise.

use std::collections::{BTreeSet, HashMap};

use super::{make_nice, NiceTreeDecomposition, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{components, Graph};

/// Largest component handed to the exact treewidth search.
pub const EXACT_TREEWIDTH_MAX_N: usize = 25;
const SEARCH_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub raw: TreeDecomposition,
    pub nice: NiceTreeDecomposition,
    pub width: usize,
    /// True when `width` is known to equal the treewidth.
    pub exact: bool,
}

fn simple_adjacency(g: &Graph) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); g.n()];
    for &(u, v) in g.edges() {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    adj
}

fn eliminate(adj: &mut [BTreeSet<usize>], v: usize) -> Vec<usize> {
    let nbrs: Vec<usize> = std::mem::take(&mut adj[v]).into_iter().collect();
    for (i, &a) in nbrs.iter().enumerate() {
        adj[a].remove(&v);
        for &b in &nbrs[i + 1..] {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    nbrs
}

/// Repeatedly eliminates the smallest-id vertex of current degree ≤ `d`.
/// For d ≤ 2 this succeeds exactly when tw(g) ≤ d, since each step is a
/// minor operation.
fn low_degree_order(g: &Graph, d: usize) -> Option<Vec<usize>> {
    let mut adj = simple_adjacency(g);
    let mut ready: BTreeSet<usize> = (0..g.n()).filter(|&v| adj[v].len() <= d).collect();
    let mut order = Vec::with_capacity(g.n());
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for u in eliminate(&mut adj, v) {
            if adj[u].len() <= d {
                ready.insert(u);
            } else {
                ready.remove(&u);
            }
        }
    }
    (order.len() == g.n()).then_some(order)
}

/// Bag i holds order[n-1-i] and its later neighbours in the filled graph, so
/// bag 0 belongs to the last eliminated vertex.
pub fn from_elimination_order(g: &Graph, order: &[usize]) -> Result<TreeDecomposition> {
    let n = g.n();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return Err(Error::input("elimination order must be a permutation of the vertices"));
    }
    if n == 0 {
        return Ok(TreeDecomposition { bags: vec![Vec::new()], edges: Vec::new() });
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let slot = |i: usize| n - 1 - i;
    let mut adj = simple_adjacency(g);
    let mut bags = vec![Vec::new(); n];
    let mut edges = Vec::with_capacity(n - 1);
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later = eliminate(&mut adj, v);
        let mut bag = later.clone();
        bag.push(v);
        bag.sort_unstable();
        bags[slot(i)] = bag;
        match later.iter().map(|&u| pos[u]).min() {
            Some(p) => edges.push((slot(i), slot(p))),
            None => roots.push(slot(i)),
        }
    }
    edges.extend(roots.windows(2).map(|w| (w[0], w[1])));
    Ok(TreeDecomposition { bags, edges })
}

/// Min-fill heuristic; ties by degree, then id.
pub fn min_fill_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut adj = simple_adjacency(g);
    let fill_of = |adj: &[BTreeSet<usize>], v: usize| {
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        let mut missing = 0usize;
        for (i, &a) in nb.iter().enumerate() {
            missing += nb[i + 1..].iter().filter(|&&b| !adj[a].contains(&b)).count();
        }
        missing
    };
    let mut key: Vec<(usize, usize)> = (0..n).map(|v| (fill_of(&adj, v), adj[v].len())).collect();
    let mut queue: BTreeSet<(usize, usize, usize)> = (0..n).map(|v| (key[v].0, key[v].1, v)).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    while let Some((_, _, v)) = queue.pop_first() {
        alive[v] = false;
        order.push(v);
        let nbrs = eliminate(&mut adj, v);
        let mut dirty = BTreeSet::new();
        for &u in &nbrs {
            dirty.insert(u);
            dirty.extend(adj[u].iter().copied());
        }
        for u in dirty {
            if !alive[u] {
                continue;
            }
            queue.remove(&(key[u].0, key[u].1, u));
            key[u] = (fill_of(&adj, u), adj[u].len());
            queue.insert((key[u].0, key[u].1, u));
        }
    }
    order
}

fn width_of_order(g: &Graph, order: &[usize]) -> usize {
    let mut adj = simple_adjacency(g);
    order.iter().map(|&v| eliminate(&mut adj, v).len()).max().unwrap_or(0)
}

struct Search {
    best: usize,
    best_order: Vec<usize>,
    memo: HashMap<u32, usize>,
    nodes: u64,
    exhausted: bool,
}

fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

fn eliminate_mask(adj: &mut [u32], rem: u32, v: usize) {
    let nb = adj[v] & rem & !(1 << v);
    for u in bits(nb) {
        adj[u] |= nb & !(1 << u);
        adj[u] &= !(1 << v);
    }
}

fn is_clique(adj: &[u32], nb: u32) -> bool {
    bits(nb).all(|u| adj[u] & nb == nb & !(1 << u))
}

/// Minor-min-width lower bound on the treewidth of the graph induced by `rem`.
fn minor_min_width(adj: &[u32], mut rem: u32) -> usize {
    let mut adj = adj.to_vec();
    let mut lb = 0;
    while rem.count_ones() > 1 {
        let v = bits(rem).min_by_key(|&v| (adj[v] & rem).count_ones()).unwrap();
        let nb = adj[v] & rem;
        lb = lb.max(nb.count_ones() as usize);
        if nb != 0 {
            let u = bits(nb).min_by_key(|&u| (adj[u] & rem).count_ones()).unwrap();
            adj[u] |= nb & !(1 << u);
            for x in bits(nb) {
                if x != u {
                    adj[x] = (adj[x] & !(1 << v)) | 1 << u;
                }
            }
            adj[u] &= !(1 << v);
        }
        rem &= !(1 << v);
    }
    lb
}

impl Search {
    fn run(&mut self, adj: &[u32], rem: u32, cur: usize, prefix: &mut Vec<usize>) {
        if cur >= self.best || self.exhausted {
            return;
        }
        let cnt = rem.count_ones() as usize;
        if cnt == 0 || cnt - 1 <= cur {
            self.best = cur.max(cnt.saturating_sub(1));
            self.best_order = prefix.iter().copied().chain(bits(rem)).collect();
            return;
        }
        if self.memo.get(&rem).is_some_and(|&c| c <= cur) {
            return;
        }
        self.memo.insert(rem, cur);
        self.nodes += 1;
        if self.nodes > SEARCH_BUDGET {
            self.exhausted = true;
            return;
        }
        let lb = minor_min_width(adj, rem);
        if lb.max(cur) >= self.best {
            return;
        }
        // Simplicial vertices, and almost simplicial ones of degree ≤ lb, are
        // safe to eliminate without branching.
        for v in bits(rem) {
            let nb = adj[v] & rem;
            let deg = nb.count_ones() as usize;
            let safe = is_clique(adj, nb) || deg <= lb && bits(nb).any(|u| is_clique(adj, nb & !(1 << u)));
            if safe {
                let mut next = adj.to_vec();
                eliminate_mask(&mut next, rem, v);
                prefix.push(v);
                self.run(&next, rem & !(1 << v), cur.max(deg), prefix);
                prefix.pop();
                return;
            }
        }
        let mut cand: Vec<usize> = bits(rem).collect();
        cand.sort_by_key(|&v| ((adj[v] & rem).count_ones(), v));
        for v in cand {
            let deg = (adj[v] & rem).count_ones() as usize;
            let mut next = adj.to_vec();
            eliminate_mask(&mut next, rem, v);
            prefix.push(v);
            self.run(&next, rem & !(1 << v), cur.max(deg), prefix);
            prefix.pop();
        }
    }
}

/// Optimal elimination order of a graph with at most
/// [`EXACT_TREEWIDTH_MAX_N`] vertices. The flag is false when the node budget
/// ran out and the order is only the best found.
pub fn exact_treewidth_order(g: &Graph) -> Result<(Vec<usize>, bool)> {
    let n = g.n();
    if n > EXACT_TREEWIDTH_MAX_N {
        return Err(Error::resource("exact treewidth vertex count", n, EXACT_TREEWIDTH_MAX_N));
    }
    let mut adj = vec![0u32; n];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let heuristic = min_fill_order(g);
    let mut s = Search {
        best: width_of_order(g, &heuristic),
        best_order: heuristic,
        memo: HashMap::new(),
        nodes: 0,
        exhausted: false,
    };
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    s.run(&adj, full, 0, &mut Vec::new());
    Ok((s.best_order, !s.exhausted))
}

fn finish(g: &Graph, order: &[usize], exact: bool) -> Result<Decomposition> {
    let raw = from_elimination_order(g, order)?;
    let nice = make_nice(g, &raw)?;
    Ok(Decomposition { width: raw.width(), raw, nice, exact })
}

/// Best-effort decomposition: width ≤ 2 whenever tw ≤ 2, exact per component
/// up to [`EXACT_TREEWIDTH_MAX_N`] vertices, min-fill beyond.
pub fn decompose(g: &Graph) -> Result<Decomposition> {
    for d in 0..=2 {
        if let Some(order) = low_degree_order(g, d) {
            return finish(g, &order, true);
        }
    }
    let mut order = Vec::with_capacity(g.n());
    let mut exact = true;
    for comp in components(g) {
        let keep = crate::VertexSet::from_ids(g.n(), comp.iter().copied());
        let (sub, map) = g.induced(&keep);
        let local = if sub.n() <= EXACT_TREEWIDTH_MAX_N {
            let (o, ok) = exact_treewidth_order(&sub)?;
            exact &= ok;
            o
        } else {
            exact = false;
            min_fill_order(&sub)
        };
        order.extend(local.into_iter().map(|v| map[v]));
    }
    // The width is the maximum over components, so per-component optimality
    // makes the whole order optimal.
    finish(g, &order, exact)
}

/// For d ≤ 2 a decomposition of width ≤ d, or `WidthExceeded` when tw > d.
/// For d ≥ 3 the result of [`decompose`], whose width may exceed d.
pub fn decompose_bounded(g: &Graph, d: usize) -> Result<NiceTreeDecomposition> {
    if d >= 3 {
        return Ok(decompose(g)?.nice);
    }
    for dd in 0..=d {
        if let Some(order) = low_degree_order(g, dd) {
            return Ok(finish(g, &order, true)?.nice);
        }
    }
    Err(Error::WidthExceeded { bound: d })
}
