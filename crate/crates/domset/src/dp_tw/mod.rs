//! Dynamic programs over nice tree decompositions.
//!
//! Each bag vertex carries a digit: `FREE` (not in the solution, no demand),
//! `IN` (in the solution) and, for vertices of the set to dominate, `REQ`
//! (not in the solution, must be dominated inside the subtree). A node table
//! has exactly 2^a·3^c entries for a bag with a free vertices outside the
//! target set and c inside it. The entry of a state is the minimum weight of
//! S within the subtree whose bag part is the `IN` vertices and which
//! dominates every forgotten target and every `REQ` vertex.

mod join;

pub use join::{join_convolution, join_naive, CONVOLUTION_THRESHOLD, MAX_CONVOLUTION_DEGREE};

use crate::decomp::{balanced_partition, verify, NiceTreeDecomposition, NodeKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, Weights};

pub const INF: u64 = u64::MAX / 2;

pub const FREE: u8 = 0;
pub const IN: u8 = 1;
pub const REQ: u8 = 2;

pub(crate) fn add(a: u64, b: u64) -> u64 {
    a.saturating_add(b).min(INF)
}

/// Mixed-radix indexing of the states of one bag.
#[derive(Clone, Debug)]
pub struct Layout {
    pub bag: Vec<usize>,
    pub target: Vec<bool>,
    stride: Vec<usize>,
    size: usize,
}

impl Layout {
    pub fn new(bag: &[usize], targets: &VertexSet) -> Self {
        let target: Vec<bool> = bag.iter().map(|&v| targets.contains(v)).collect();
        let mut stride = Vec::with_capacity(bag.len());
        let mut size = 1usize;
        for &t in &target {
            stride.push(size);
            size *= if t { 3 } else { 2 };
        }
        Layout { bag: bag.to_vec(), target, stride, size }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn radix(&self, i: usize) -> usize {
        if self.target[i] {
            3
        } else {
            2
        }
    }

    pub fn decode(&self, mut idx: usize, out: &mut Vec<u8>) {
        out.clear();
        for i in 0..self.bag.len() {
            let r = self.radix(i);
            out.push((idx % r) as u8);
            idx /= r;
        }
    }

    pub fn encode(&self, digits: &[u8]) -> usize {
        digits.iter().zip(&self.stride).map(|(&d, &s)| d as usize * s).sum()
    }

    fn pos(&self, v: usize) -> usize {
        self.bag.binary_search(&v).expect("vertex in bag")
    }
}

/// Complete tables of one run; kept for backtracking.
#[derive(Clone, Debug)]
pub struct DomTables {
    layouts: Vec<Layout>,
    tables: Vec<Vec<u64>>,
}

impl DomTables {
    pub fn table_len(&self, node: usize) -> usize {
        self.tables[node].len()
    }

    pub fn layout(&self, node: usize) -> &Layout {
        &self.layouts[node]
    }

    pub fn table(&self, node: usize) -> &[u64] {
        &self.tables[node]
    }

    pub fn optimum(&self) -> u64 {
        self.tables.last().map_or(0, |t| t[0])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpSolution {
    pub set: VertexSet,
    pub weight: u64,
}

fn bag_adjacency(g: &Graph, bag: &[usize]) -> Vec<u64> {
    bag.iter()
        .map(|&u| bag.iter().enumerate().filter(|&(_, &v)| g.has_edge(u, v)).fold(0u64, |m, (i, _)| m | 1 << i))
        .collect()
}

fn check_inputs(g: &Graph, w: &Weights, td: &NiceTreeDecomposition, targets: &VertexSet) -> Result<()> {
    if w.len() != g.n() {
        return Err(Error::input(format!("{} weights for {} vertices", w.len(), g.n())));
    }
    if targets.capacity() != g.n() {
        return Err(Error::input("target set sized for a different graph"));
    }
    let v = verify(td, g);
    if !v.is_empty() {
        return Err(Error::InvalidDecomposition(v.iter().map(ToString::to_string).collect()));
    }
    if td.width() >= 40 {
        return Err(Error::resource("decomposition width", td.width(), 39));
    }
    Ok(())
}

/// Fills all node tables. Join nodes use the convolution once the bag holds
/// more than [`CONVOLUTION_THRESHOLD`] target vertices.
pub fn build_tables(g: &Graph, w: &Weights, td: &NiceTreeDecomposition, targets: &VertexSet) -> Result<DomTables> {
    check_inputs(g, w, td, targets)?;
    let nodes = td.nodes();
    let layouts: Vec<Layout> = nodes.iter().map(|x| Layout::new(&x.bag, targets)).collect();
    let mut tables: Vec<Vec<u64>> = Vec::with_capacity(nodes.len());
    let mut ds = Vec::new();
    let mut cs = Vec::new();
    for (i, x) in nodes.iter().enumerate() {
        let lay = &layouts[i];
        let table = match x.kind {
            NodeKind::Leaf => vec![0],
            NodeKind::Forget(v) => {
                let y = x.children[0];
                let (cl, ct) = (&layouts[y], &tables[y]);
                let p = cl.pos(v);
                let options: &[u8] = if cl.target[p] { &[REQ, IN] } else { &[FREE, IN] };
                let mut t = vec![INF; lay.size()];
                for (s, slot) in t.iter_mut().enumerate() {
                    lay.decode(s, &mut ds);
                    cs.clear();
                    cs.extend_from_slice(&ds[..p]);
                    cs.push(0);
                    cs.extend_from_slice(&ds[p..]);
                    for &d in options {
                        cs[p] = d;
                        *slot = (*slot).min(ct[cl.encode(&cs)]);
                    }
                }
                t
            }
            NodeKind::Introduce(v) => {
                let y = x.children[0];
                let (cl, ct) = (&layouts[y], &tables[y]);
                let p = lay.pos(v);
                let nb = bag_adjacency(g, &lay.bag)[p];
                let mut t = vec![INF; lay.size()];
                for (s, slot) in t.iter_mut().enumerate() {
                    lay.decode(s, &mut ds);
                    *slot = match introduce_child(&ds, p, nb, &mut cs) {
                        Some(true) => add(ct[cl.encode(&cs)], w.of(v)),
                        Some(false) => ct[cl.encode(&cs)],
                        None => INF,
                    };
                }
                t
            }
            NodeKind::Join => {
                let (y, z) = (x.children[0], x.children[1]);
                let targets_in_bag = lay.target.iter().filter(|&&t| t).count();
                if targets_in_bag > CONVOLUTION_THRESHOLD {
                    join_convolution(lay, w, &tables[y], &tables[z])
                } else {
                    join_naive(lay, w, &tables[y], &tables[z])
                }
            }
        };
        debug_assert_eq!(table.len(), lay.size());
        tables.push(table);
    }
    Ok(DomTables { layouts, tables })
}

/// Child digits of an Introduce state into `out`. `Some(true)` when the
/// introduced vertex is `IN`, `None` for an unsatisfiable `REQ`.
fn introduce_child(ds: &[u8], p: usize, nb: u64, out: &mut Vec<u8>) -> Option<bool> {
    out.clear();
    let introduced = ds[p];
    if introduced == REQ && !(0..ds.len()).any(|i| nb >> i & 1 == 1 && ds[i] == IN) {
        return None;
    }
    for (i, &d) in ds.iter().enumerate() {
        if i == p {
            continue;
        }
        // A neighbour in the solution satisfies the demand below.
        let relaxed = introduced == IN && d == REQ && nb >> i & 1 == 1;
        out.push(if relaxed { FREE } else { d });
    }
    Some(introduced == IN)
}

/// Recovers one optimal set by recomputing, top-down, a child state that
/// attains each chosen entry.
pub fn backtrack(g: &Graph, w: &Weights, td: &NiceTreeDecomposition, tables: &DomTables) -> VertexSet {
    let nodes = td.nodes();
    let mut set = VertexSet::new(g.n());
    let mut stack = vec![(td.root(), 0usize)];
    let mut ds = Vec::new();
    let mut cs = Vec::new();
    while let Some((i, s)) = stack.pop() {
        let x = &nodes[i];
        let lay = &tables.layouts[i];
        let value = tables.tables[i][s];
        lay.decode(s, &mut ds);
        match x.kind {
            NodeKind::Leaf => {}
            NodeKind::Forget(v) => {
                let y = x.children[0];
                let cl = &tables.layouts[y];
                let p = cl.pos(v);
                let options: &[u8] = if cl.target[p] { &[REQ, IN] } else { &[FREE, IN] };
                cs.clear();
                cs.extend_from_slice(&ds[..p]);
                cs.push(0);
                cs.extend_from_slice(&ds[p..]);
                let pick = options
                    .iter()
                    .map(|&d| {
                        cs[p] = d;
                        cl.encode(&cs)
                    })
                    .find(|&c| tables.tables[y][c] == value)
                    .expect("forget entry has an attaining child state");
                stack.push((y, pick));
            }
            NodeKind::Introduce(v) => {
                let y = x.children[0];
                let p = lay.pos(v);
                let nb = bag_adjacency(g, &lay.bag)[p];
                let is_in = introduce_child(&ds, p, nb, &mut cs).expect("finite entry");
                if is_in {
                    set.insert(v);
                }
                stack.push((y, tables.layouts[y].encode(&cs)));
            }
            NodeKind::Join => {
                let (y, z) = (x.children[0], x.children[1]);
                let (a, b) = join::split(lay, w, &ds, value, &tables.tables[y], &tables.tables[z])
                    .expect("join entry has an attaining split");
                stack.push((z, b));
                stack.push((y, a));
            }
        }
    }
    set
}

/// Minimum-weight S ⊆ V dominating `targets`.
pub fn solve_half_width(
    g: &Graph,
    w: &Weights,
    td: &NiceTreeDecomposition,
    targets: &VertexSet,
) -> Result<DpSolution> {
    let tables = build_tables(g, w, td, targets)?;
    let weight = tables.optimum();
    if weight >= INF {
        return Err(Error::Infeasible("no dominating set within the weight range".into()));
    }
    let set = backtrack(g, w, td, &tables);
    debug_assert_eq!(w.total(&set), weight);
    Ok(DpSolution { set, weight })
}

/// Minimum-weight dominating set.
pub fn solve_exact_tw(g: &Graph, w: &Weights, td: &NiceTreeDecomposition) -> Result<DpSolution> {
    solve_half_width(g, w, td, &VertexSet::full(g.n()))
}

/// Union of the optimal dominators of the two sides of a balanced partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approx2 {
    pub set: VertexSet,
    pub weight: u64,
    /// Optimal weight of dominating the first side; at most the optimum.
    pub first_weight: u64,
    pub second_weight: u64,
    pub slack: usize,
}

pub fn approx2_tw(g: &Graph, w: &Weights, td: &NiceTreeDecomposition) -> Result<Approx2> {
    let part = balanced_partition(g, td)?;
    let s1 = solve_half_width(g, w, td, &part.first)?;
    let s2 = solve_half_width(g, w, td, &part.second)?;
    let set = s1.set.union(&s2.set);
    Ok(Approx2 { weight: w.total(&set), set, first_weight: s1.weight, second_weight: s2.weight, slack: part.slack })
}
