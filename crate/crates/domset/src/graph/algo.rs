use super::{Graph, VertexSet};

/// Connected components, each sorted, ordered by smallest member.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                    stack.push(u);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Depth-first spanning forest.
#[derive(Clone, Debug)]
pub struct DfsForest {
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<usize>,
    /// Vertices in DFS discovery order.
    pub preorder: Vec<usize>,
    pub roots: Vec<usize>,
    /// Non-tree edges as `(top, bottom)`; the top is the ancestor endpoint.
    pub back_edges: Vec<(usize, usize)>,
}

impl DfsForest {
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.parent.len()];
        for &v in &self.preorder {
            if let Some(p) = self.parent[v] {
                ch[p].push(v);
            }
        }
        for c in &mut ch {
            c.sort_unstable();
        }
        ch
    }

    pub fn is_ancestor(&self, a: usize, mut v: usize) -> bool {
        while self.depth[v] > self.depth[a] {
            v = self.parent[v].expect("non-root has a parent");
        }
        v == a
    }
}

/// DFS forest rooted at the smallest id of each component, visiting
/// neighbors in ascending order. Parallel copies of a tree edge become back
/// edges.
pub fn dfs_forest(g: &Graph) -> DfsForest {
    let n = g.n();
    let mut parent = vec![None; n];
    let mut depth = vec![0; n];
    let mut visited = vec![false; n];
    let mut preorder = Vec::with_capacity(n);
    let mut roots = Vec::new();
    let mut back_edges = Vec::new();
    // Position in the neighbor list and whether the tree edge to the parent
    // has been consumed once already.
    let mut pos = vec![0usize; n];
    let mut parent_edge_used = vec![false; n];
    for r in 0..n {
        if visited[r] {
            continue;
        }
        roots.push(r);
        visited[r] = true;
        preorder.push(r);
        let mut stack = vec![r];
        while let Some(&v) = stack.last() {
            let nb = g.neighbors(v);
            if pos[v] == nb.len() {
                stack.pop();
                continue;
            }
            let u = nb[pos[v]];
            pos[v] += 1;
            if !visited[u] {
                visited[u] = true;
                parent[u] = Some(v);
                depth[u] = depth[v] + 1;
                preorder.push(u);
                stack.push(u);
            } else if parent[v] == Some(u) && !parent_edge_used[v] {
                parent_edge_used[v] = true;
            } else if depth[u] < depth[v] {
                back_edges.push((u, v));
            }
        }
    }
    DfsForest { parent, depth, preorder, roots, back_edges }
}

/// Non-tree edges of a DFS spanning forest; its size is m - n + #components.
pub fn feedback_edge_set(g: &Graph) -> Vec<(usize, usize)> {
    dfs_forest(g).back_edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect()
}

pub fn fes_number(g: &Graph) -> usize {
    g.m() + components(g).len() - g.n()
}

/// Edge-partition into biconnected components (each component an edge list).
pub fn biconnected_components(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.n();
    let mut inc: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        inc[u].push((v, id));
        inc[v].push((u, id));
    }
    for l in &mut inc {
        l.sort_unstable();
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut pos = vec![0usize; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut on_stack = vec![false; g.m()];
    let mut out = Vec::new();
    let mut time = 0;
    for r in 0..n {
        if disc[r] != usize::MAX {
            continue;
        }
        disc[r] = time;
        low[r] = time;
        time += 1;
        let mut stack = vec![r];
        while let Some(&v) = stack.last() {
            if pos[v] < inc[v].len() {
                let (u, id) = inc[v][pos[v]];
                pos[v] += 1;
                if id == parent_edge[v] {
                    continue;
                }
                if disc[u] == usize::MAX {
                    parent_edge[u] = id;
                    edge_stack.push(id);
                    on_stack[id] = true;
                    disc[u] = time;
                    low[u] = time;
                    time += 1;
                    stack.push(u);
                } else if disc[u] < disc[v] {
                    low[v] = low[v].min(disc[u]);
                    if !on_stack[id] {
                        edge_stack.push(id);
                        on_stack[id] = true;
                    }
                }
            } else {
                stack.pop();
                if let Some(&p) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut comp = Vec::new();
                        while let Some(id) = edge_stack.pop() {
                            comp.push(g.edges()[id]);
                            if id == parent_edge[v] {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        out.push(comp);
                    }
                }
            }
        }
    }
    out
}

/// Edges that lie on no cycle.
pub fn bridges(g: &Graph) -> Vec<(usize, usize)> {
    let mut b: Vec<_> = biconnected_components(g).into_iter().filter(|c| c.len() == 1).map(|c| c[0]).collect();
    b.sort_unstable();
    b
}

/// Minimum vertex cover if one of size at most `budget` exists.
pub fn min_vertex_cover(g: &Graph, budget: usize) -> Option<VertexSet> {
    let mut alive = vec![true; g.n()];
    for k in 0..=budget.min(g.n()) {
        let mut chosen = Vec::new();
        if vc_branch(g, &mut alive, k, &mut chosen) {
            return Some(VertexSet::from_ids(g.n(), chosen));
        }
    }
    None
}

fn vc_branch(g: &Graph, alive: &mut [bool], k: usize, chosen: &mut Vec<usize>) -> bool {
    let live_deg = |v: usize, alive: &[bool]| g.neighbors(v).iter().filter(|&&u| alive[u]).count();
    let mut best = None;
    for v in g.vertices() {
        if alive[v] {
            let d = live_deg(v, alive);
            if d > 0 && best.is_none_or(|(bd, _)| d > bd) {
                best = Some((d, v));
            }
        }
    }
    let Some((d, v)) = best else { return true };
    if k == 0 {
        return false;
    }
    // An edge set with max degree d needs at least m/d cover vertices.
    let live_edges = g.edges().iter().filter(|&&(a, b)| alive[a] && alive[b]).count();
    if live_edges > k * d {
        return false;
    }
    alive[v] = false;
    chosen.push(v);
    if vc_branch(g, alive, k - 1, chosen) {
        return true;
    }
    chosen.pop();
    alive[v] = true;
    let nbrs: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| alive[u]).collect();
    if nbrs.len() <= k {
        for &u in &nbrs {
            alive[u] = false;
            chosen.push(u);
        }
        if vc_branch(g, alive, k - nbrs.len(), chosen) {
            return true;
        }
        for &u in &nbrs {
            alive[u] = true;
            chosen.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn k4() -> Graph {
        Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn fes_of_tree_cycle_and_k4() {
        let tree = Graph::new(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        assert!(feedback_edge_set(&tree).is_empty());
        assert_eq!(feedback_edge_set(&cycle(5)).len(), 1);
        assert_eq!(feedback_edge_set(&k4()).len(), 3);
        assert_eq!(fes_number(&k4()), 3);
    }

    #[test]
    fn vertex_cover_examples() {
        assert_eq!(min_vertex_cover(&Graph::empty(3), 0).unwrap().len(), 0);
        let star = Graph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(min_vertex_cover(&star, 4).unwrap().to_vec(), vec![0]);
        assert_eq!(min_vertex_cover(&cycle(5), 5).unwrap().len(), 3);
        assert!(min_vertex_cover(&cycle(5), 2).is_none());
    }

    #[test]
    fn blocks_of_bowtie() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let b = biconnected_components(&g);
        assert_eq!(b.len(), 2);
        assert!(b.iter().all(|c| c.len() == 3));
        assert!(bridges(&g).is_empty());
    }

    #[test]
    fn bridges_of_path_with_triangle() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 1), (3, 4)]).unwrap();
        assert_eq!(bridges(&g), vec![(0, 1), (3, 4)]);
    }

    #[test]
    fn parallel_pair_is_not_a_bridge() {
        let g = Graph::new_multi(3, [(0, 1), (0, 1), (1, 2)]).unwrap();
        assert_eq!(bridges(&g), vec![(1, 2)]);
        assert_eq!(feedback_edge_set(&g).len(), 1);
    }
}
