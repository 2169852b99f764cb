//! Degree-two elimination and the split of a graph into a kernel and a
//! forest of cacti hanging from it.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{biconnected_components, components, Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EliminationOrder {
    /// Queue of low-degree vertices, ascending ids on ties.
    Fifo,
    /// Stack of low-degree vertices.
    Lifo,
}

/// Entry of a vertex's cycle collection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece {
    Vertex(usize),
    /// Vertices in cyclic order, starting at the owner of the collection.
    Cycle(Vec<usize>),
}

#[derive(Clone, Debug)]
pub struct Elimination {
    /// Surviving edges, each as the original path it stands for.
    pub kernel_edges: Vec<Vec<usize>>,
    /// Endpoints of surviving edges, ascending.
    pub kernel_vertices: Vec<usize>,
    /// The last vertex of every component that lost all its edges.
    pub leftovers: Vec<usize>,
    pub collections: Vec<Vec<Piece>>,
    /// Edges removed by degree-one eliminations, as `(eliminated, neighbor)`.
    pub bridges: Vec<(usize, usize)>,
    pub order: Vec<usize>,
}

impl Elimination {
    /// Surviving edges as sorted original edge sets, sorted; equal for any
    /// elimination order.
    pub fn kernel_signature(&self) -> Vec<Vec<(usize, usize)>> {
        let mut sig: Vec<Vec<(usize, usize)>> = self.kernel_edges.iter().map(|p| path_edges(p)).collect();
        for s in &mut sig {
            s.sort_unstable();
        }
        sig.sort_unstable();
        sig
    }
}

pub(crate) fn path_edges(p: &[usize]) -> Vec<(usize, usize)> {
    p.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect()
}

fn oriented(p: &[usize], from: usize) -> Vec<usize> {
    if p[0] == from {
        p.to_vec()
    } else {
        p.iter().rev().copied().collect()
    }
}

pub fn eliminate(g: &Graph) -> Elimination {
    eliminate_with(g, EliminationOrder::Fifo)
}

/// Repeatedly removes a vertex of degree one (recording a bridge), a vertex
/// of degree two with both edges to the same neighbor (recording a cycle),
/// or any other vertex of degree two (splicing its edges into one).
pub fn eliminate_with(g: &Graph, how: EliminationOrder) -> Elimination {
    let n = g.n();
    let mut ends: Vec<(usize, usize)> = g.edges().to_vec();
    let mut path: Vec<Vec<usize>> = ends.iter().map(|&(a, b)| vec![a, b]).collect();
    let mut live = vec![true; ends.len()];
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (id, &(a, b)) in ends.iter().enumerate() {
        inc[a].push(id);
        inc[b].push(id);
    }
    let mut deg: Vec<usize> = inc.iter().map(Vec::len).collect();
    let mut gone = vec![false; n];
    let mut queued = vec![false; n];
    let mut work: VecDeque<usize> = VecDeque::new();
    let push = |v: usize, work: &mut VecDeque<usize>, queued: &mut Vec<bool>| {
        if !queued[v] {
            queued[v] = true;
            work.push_back(v);
        }
    };
    let initial: Vec<usize> = match how {
        EliminationOrder::Fifo => (0..n).collect(),
        EliminationOrder::Lifo => (0..n).rev().collect(),
    };
    for v in initial {
        if deg[v] <= 2 {
            push(v, &mut work, &mut queued);
        }
    }
    let mut collections: Vec<Vec<Piece>> = vec![Vec::new(); n];
    let mut bridges = Vec::new();
    let mut order = Vec::new();
    loop {
        let next = match how {
            EliminationOrder::Fifo => work.pop_front(),
            EliminationOrder::Lifo => work.pop_back(),
        };
        let Some(v) = next else { break };
        queued[v] = false;
        if gone[v] {
            continue;
        }
        inc[v].retain(|&e| live[e]);
        let other = |e: usize| if ends[e].0 == v { ends[e].1 } else { ends[e].0 };
        match inc[v].len() {
            0 => continue,
            1 => {
                let e = inc[v][0];
                let w = other(e);
                live[e] = false;
                deg[w] -= 1;
                bridges.push((v, w));
                if collections[v].is_empty() {
                    collections[v].push(Piece::Vertex(v));
                }
                if deg[w] <= 2 {
                    push(w, &mut work, &mut queued);
                }
            }
            2 => {
                let (e1, e2) = (inc[v][0], inc[v][1]);
                let (a, b) = (other(e1), other(e2));
                live[e1] = false;
                live[e2] = false;
                if a == b {
                    let mut cyc = oriented(&path[e1], a);
                    let back = oriented(&path[e2], v);
                    cyc.extend_from_slice(&back[1..back.len() - 1]);
                    collections[a].push(Piece::Cycle(cyc));
                    deg[a] -= 2;
                    if deg[a] <= 2 {
                        push(a, &mut work, &mut queued);
                    }
                } else {
                    let mut p = oriented(&path[e1], a);
                    p.extend_from_slice(&oriented(&path[e2], v)[1..]);
                    let id = ends.len();
                    ends.push((a, b));
                    path.push(p);
                    live.push(true);
                    inc[a].push(id);
                    inc[b].push(id);
                }
            }
            _ => unreachable!("queued vertices have degree at most two"),
        }
        deg[v] = 0;
        gone[v] = true;
        order.push(v);
    }
    let kernel_edges: Vec<Vec<usize>> = (0..ends.len()).filter(|&e| live[e]).map(|e| path[e].clone()).collect();
    let kernel_vertices = (0..n).filter(|&v| !gone[v] && deg[v] > 0).collect();
    let leftovers = (0..n).filter(|&v| !gone[v] && deg[v] == 0).collect();
    Elimination { kernel_edges, kernel_vertices, leftovers, collections, bridges, order }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Attachment {
    Root,
    /// Shares its articulation vertex with the parent.
    Vertex,
    /// Its articulation vertex is joined by a bridge to `parent_vertex`.
    Edge { parent_vertex: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CactusNode {
    /// Cycle vertices in cyclic order, or a single vertex on no cycle.
    pub cycle: Vec<usize>,
    pub articulation: usize,
    pub attachment: Attachment,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

/// Rooted tree over the cycles and cycle-free vertices of a cactus; node 0
/// holds the cactus root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CactusTree {
    pub nodes: Vec<CactusNode>,
}

impl CactusTree {
    pub fn postorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(0usize, false)];
        while let Some((x, done)) = stack.pop() {
            if done {
                out.push(x);
                continue;
            }
            stack.push((x, true));
            for &c in self.nodes[x].children.iter().rev() {
                stack.push((c, false));
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct Cactus {
    pub root: usize,
    /// Ascending.
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub tree: CactusTree,
}

/// `None` unless every vertex of the block has exactly two block neighbors.
fn cyclic_order(block: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut adj: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
    for &(a, b) in block {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.values().any(|a| a.len() != 2) {
        return None;
    }
    let start = block.iter().map(|&(a, _)| a).min().expect("non-empty block");
    let mut cyc = vec![start];
    let mut prev = start;
    let mut cur = adj[&start].iter().copied().min().expect("cycle vertex has neighbors");
    while cur != start {
        cyc.push(cur);
        let next = adj[&cur].iter().copied().find(|&x| x != prev).expect("cycle vertex has two neighbors");
        prev = cur;
        cur = next;
    }
    Some(cyc)
}

impl Cactus {
    /// Checks that every block of `edges` is a single edge or a cycle and
    /// builds the rooted tree of cycles.
    pub fn new(n: usize, root: usize, edges: &[(usize, usize)]) -> Result<Cactus> {
        let sub = Graph::new(n, edges.iter().copied())?;
        Self::from_blocks(&sub, root, biconnected_components(&sub))
    }

    fn from_blocks(sub: &Graph, root: usize, blocks: Vec<Vec<(usize, usize)>>) -> Result<Cactus> {
        let n = sub.n();
        if root >= n {
            return Err(Error::input(format!("cactus root {root} out of range")));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut bridge_at: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut cycles_at: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut edges = Vec::new();
        for block in &blocks {
            edges.extend_from_slice(block);
            if block.len() == 1 {
                let (a, b) = block[0];
                bridge_at[a].push(b);
                bridge_at[b].push(a);
                continue;
            }
            let cyc = cyclic_order(block)
                .filter(|c| c.len() == block.len())
                .ok_or_else(|| Error::input("not a cactus: a block is neither an edge nor a cycle"))?;
            for &v in &cyc {
                cycles_at[v].push(cycles.len());
            }
            cycles.push(cyc);
        }
        let mut seen_cycle = vec![false; cycles.len()];
        let mut seen_vertex = VertexSet::new(n);
        let mut nodes: Vec<CactusNode> = Vec::new();
        let open_node = |cycle: Vec<usize>, articulation, attachment, parent: Option<usize>, nodes: &mut Vec<CactusNode>| {
            let id = nodes.len();
            nodes.push(CactusNode { cycle, articulation, attachment, parent, children: Vec::new() });
            if let Some(p) = parent {
                nodes[p].children.push(id);
            }
            id
        };
        let rotated = |cyc: &[usize], at: usize| {
            let i = cyc.iter().position(|&x| x == at).expect("articulation on its cycle");
            let mut c = cyc[i..].to_vec();
            c.extend_from_slice(&cyc[..i]);
            c
        };
        let first = match cycles_at[root].first() {
            Some(&c) => {
                seen_cycle[c] = true;
                rotated(&cycles[c], root)
            }
            None => vec![root],
        };
        open_node(first, root, Attachment::Root, None, &mut nodes);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let members = nodes[x].cycle.clone();
            for &v in &members {
                seen_vertex.insert(v);
            }
            for &v in &members {
                for &c in &cycles_at[v] {
                    if !seen_cycle[c] {
                        seen_cycle[c] = true;
                        let id = open_node(rotated(&cycles[c], v), v, Attachment::Vertex, Some(x), &mut nodes);
                        queue.push_back(id);
                    }
                }
                for &y in &bridge_at[v] {
                    if seen_vertex.contains(y) {
                        continue;
                    }
                    seen_vertex.insert(y);
                    let attach = Attachment::Edge { parent_vertex: v };
                    let cycle = match cycles_at[y].first() {
                        Some(&c) => {
                            seen_cycle[c] = true;
                            rotated(&cycles[c], y)
                        }
                        None => vec![y],
                    };
                    let id = open_node(cycle, y, attach, Some(x), &mut nodes);
                    queue.push_back(id);
                }
            }
        }
        if seen_cycle.iter().any(|&s| !s) {
            return Err(Error::input("cactus is not connected to its root"));
        }
        let mut vertices: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).chain([root]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.iter().any(|&v| !seen_vertex.contains(v)) {
            return Err(Error::input("cactus is not connected to its root"));
        }
        edges.sort_unstable();
        Ok(Cactus { root, vertices, edges, tree: CactusTree { nodes } })
    }
}

/// Kernel paths plus the cacti hanging from kernel vertices.
#[derive(Clone, Debug)]
pub struct CactusKernel {
    pub elimination: Elimination,
    /// Original vertex ids, kernel edges only.
    pub kernel: Graph,
    /// Vertices on kernel paths and one leftover per fully eliminated
    /// component.
    pub kernel_vertices: VertexSet,
    /// Vertices surviving elimination with at least one edge.
    pub high_degree: VertexSet,
    pub cacti: Vec<Cactus>,
    /// Edges minus vertices plus components.
    pub cycle_rank: usize,
}

pub fn cactus_kernel(g: &Graph) -> Result<CactusKernel> {
    g.require_simple()?;
    let n = g.n();
    let el = eliminate(g);
    let mut kernel_edges: Vec<(usize, usize)> = el.kernel_edges.iter().flat_map(|p| path_edges(p)).collect();
    kernel_edges.sort_unstable();
    let mut kernel_vertices = VertexSet::from_ids(n, el.kernel_edges.iter().flatten().copied());
    for &v in &el.leftovers {
        kernel_vertices.insert(v);
    }
    let high_degree = VertexSet::from_ids(n, el.kernel_vertices.iter().copied());
    let rest: Vec<(usize, usize)> =
        g.edges().iter().copied().filter(|e| kernel_edges.binary_search(e).is_err()).collect();
    let gc = Graph::new(n, rest)?;
    let mut comp_of = vec![usize::MAX; n];
    let comps: Vec<Vec<usize>> = components(&gc).into_iter().filter(|c| c.len() > 1).collect();
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let mut blocks: Vec<Vec<Vec<(usize, usize)>>> = vec![Vec::new(); comps.len()];
    for b in biconnected_components(&gc) {
        blocks[comp_of[b[0].0]].push(b);
    }
    let mut cacti = Vec::with_capacity(comps.len());
    for (c, bl) in comps.iter().zip(blocks) {
        let roots: Vec<usize> = c.iter().copied().filter(|&v| kernel_vertices.contains(v)).collect();
        let [root] = roots[..] else {
            return Err(Error::Strategy(format!("cactus with {} kernel vertices", roots.len())));
        };
        cacti.push(Cactus::from_blocks(&gc, root, bl)?);
    }
    Ok(CactusKernel {
        kernel: Graph::new(n, kernel_edges)?,
        elimination: el,
        kernel_vertices,
        high_degree,
        cacti,
        cycle_rank: g.m() + components(g).len() - n,
    })
}
