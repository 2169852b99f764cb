//! Modulators from a feedback edge set: a DFS scan that removes at most
//! ⌊fes/2⌋ vertices and leaves a cactus, and the exact solver that widens a
//! width-2 decomposition of the cactus by the removed vertices.

use serde::Serialize;

use crate::decomp::decompose_bounded;
use crate::dp_tw::{solve_exact_tw, DpSolution};
use crate::error::{Error, Result};
use crate::graph::{biconnected_components, bridges, dfs_forest, DfsForest, Graph, VertexSet, Weights};
use crate::modulator::MODULATOR_MAX;

/// Non-tree edges that stopped lying on a cycle when `vertex` was removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Deactivation {
    pub vertex: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct FesModulatorResult {
    pub modulator: VertexSet,
    /// Removed vertices in the order the scan removed them.
    pub order: Vec<usize>,
    /// Non-tree edges as `(top, bottom)`.
    pub feedback_edges: Vec<(usize, usize)>,
    pub tree: DfsForest,
    pub deactivation: Vec<Deactivation>,
    /// Vertices in the order the scan visited them.
    pub scan: Vec<usize>,
}

/// Preorder scan of a DFS forest with one tracked non-tree edge `e`:
/// reset `e` at its bottom; remove a vertex that is the top of two or more
/// non-tree edges, or the top of one while `e` is set; otherwise adopt its
/// single edge and visit the tree path towards that edge's bottom first.
/// `e` is also reset at every component root.
pub fn fes_modulator(g: &Graph) -> FesModulatorResult {
    let n = g.n();
    let tree = dfs_forest(g);
    let children = tree.children();
    let mut tops: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(t, b)) in tree.back_edges.iter().enumerate() {
        assert!(tree.depth[b] > tree.depth[t], "non-tree edge spans fewer than one tree edge");
        tops[t].push(i);
    }
    let mut priority: Vec<Option<usize>> = vec![None; n];
    let mut prioritized: Vec<usize> = Vec::new();
    let mut removed = VertexSet::new(n);
    let mut order = Vec::new();
    let mut scan = Vec::with_capacity(n);
    for &root in &tree.roots {
        let mut e: Option<usize> = None;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            scan.push(v);
            if e.is_some_and(|i| tree.back_edges[i].1 == v) {
                e = None;
            }
            if !tops[v].is_empty() {
                if tops[v].len() >= 2 || e.is_some() {
                    removed.insert(v);
                    order.push(v);
                    e = None;
                } else {
                    let i = tops[v][0];
                    e = Some(i);
                    for x in prioritized.drain(..) {
                        priority[x] = None;
                    }
                    let mut x = tree.back_edges[i].1;
                    while x != v {
                        let p = tree.parent[x].expect("bottom lies below top");
                        priority[p] = Some(x);
                        prioritized.push(p);
                        x = p;
                    }
                }
            }
            // Push in reverse so the prioritized child, then ascending ids,
            // come off the stack first.
            let first = priority[v];
            for &c in children[v].iter().rev() {
                if Some(c) != first {
                    stack.push(c);
                }
            }
            if let Some(c) = first {
                stack.push(c);
            }
        }
    }
    let deactivation = deactivation_log(g, &tree.back_edges, &order);
    FesModulatorResult { modulator: removed, order, feedback_edges: tree.back_edges.clone(), tree, deactivation, scan }
}

/// An edge is active for a removed set when both ends survive and it lies on
/// a cycle of what remains.
fn active_edges(g: &Graph, f: &[(usize, usize)], removed: &VertexSet) -> Vec<bool> {
    let h = g.without_vertices(removed);
    let br: std::collections::HashSet<(usize, usize)> = bridges(&h).into_iter().collect();
    f.iter()
        .map(|&(a, b)| {
            !removed.contains(a) && !removed.contains(b) && !br.contains(&(a.min(b), a.max(b)))
        })
        .collect()
}

/// Non-tree edges newly inactive after each removal, recomputed from the
/// prefixes of the removal order.
pub fn deactivation_log(g: &Graph, f: &[(usize, usize)], order: &[usize]) -> Vec<Deactivation> {
    let mut removed = VertexSet::new(g.n());
    let mut before = active_edges(g, f, &removed);
    let mut log = Vec::with_capacity(order.len());
    for &v in order {
        removed.insert(v);
        let after = active_edges(g, f, &removed);
        let edges = f.iter().zip(before.iter().zip(&after)).filter(|(_, (&b, &a))| b && !a).map(|(&e, _)| e).collect();
        log.push(Deactivation { vertex: v, edges });
        before = after;
    }
    log
}

/// True iff every biconnected component is a single edge or a single cycle.
pub fn is_cactus(g: &Graph) -> bool {
    biconnected_components(g).iter().all(|block| {
        let mut vs: Vec<usize> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
        vs.sort_unstable();
        vs.dedup();
        block.len() == 1 || block.len() == vs.len()
    })
}

/// Exact minimum-weight dominating set through the scan's modulator.
pub fn solve_exact_fes(g: &Graph, w: &Weights) -> Result<DpSolution> {
    let res = fes_modulator(g);
    if res.order.len() > MODULATOR_MAX {
        return Err(Error::resource("feedback modulator size", res.order.len(), MODULATOR_MAX));
    }
    let rest = g.without_vertices(&res.modulator);
    let td = decompose_bounded(&rest, 2)?.with_vertices_in_every_bag(&res.order);
    solve_exact_tw(g, w, &td)
}
