//! Compression of Dominating Set to a relaxed instance whose size is linear
//! in the feedback edge set number, with a trace that lifts any solution of
//! the compressed instance back to the input graph.
//!
//! A relaxed instance pairs a graph with an exempt set: a solution must
//! dominate every vertex outside the exempt set. Compression first solves
//! the cacti hanging off the kernel exactly, then rewrites the kernel with
//! leaf, cycle and induced-path rules until every maximal induced path is
//! short.

mod domination;
mod kernel;
mod rules;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use domination::{dominate_dangling_cactus, path_dominate, rdsc_solve, RdscCase};
pub use kernel::{
    cactus_kernel, eliminate, eliminate_with, Attachment, Cactus, CactusKernel, CactusNode, CactusTree, Elimination,
    EliminationOrder, Piece,
};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::oracle::{brute_min_rds, OracleResult};

/// Graph plus the vertices that need not be dominated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RdsInstance {
    pub graph: Graph,
    pub exempt: VertexSet,
}

impl RdsInstance {
    pub fn new(graph: Graph, exempt: VertexSet) -> Result<Self> {
        graph.require_simple()?;
        if exempt.capacity() != graph.n() {
            return Err(Error::input(format!(
                "exempt set sized for {} vertices, graph has {}",
                exempt.capacity(),
                graph.n()
            )));
        }
        Ok(RdsInstance { graph, exempt })
    }

    pub fn plain(graph: Graph) -> Self {
        let n = graph.n();
        RdsInstance { graph, exempt: VertexSet::new(n) }
    }

    /// True iff `s` dominates every non-exempt vertex.
    pub fn is_solution(&self, s: &VertexSet) -> bool {
        self.graph.vertices().all(|v| {
            self.exempt.contains(v) || s.contains(v) || self.graph.neighbors(v).iter().any(|&u| s.contains(u))
        })
    }
}

/// Exhaustive minimum for a relaxed instance.
pub fn rds_brute(inst: &RdsInstance) -> Result<OracleResult> {
    brute_min_rds(&inst.graph, &inst.exempt)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// A dangling cactus solved exactly and removed.
    Cactus,
    /// A vertex forced into the solution and removed.
    Take,
    Isolated,
    Leaf,
    /// A component that is a single cycle, solved exactly.
    Cycle,
    /// An edge between two exempt vertices dropped.
    ExemptEdge,
    /// Three consecutive non-exempt path vertices contracted away.
    WFree,
    /// `w1-u-w2-v-w3` becomes `w1-u-v-w3`.
    B1,
    /// `w1-u1-u2-w2-v1-v2-w3` becomes `w1-u1-v2-w3`.
    B2,
    /// `w1-u1-u2-w2-v1-w3` becomes `w1-u1-w3`, in either direction.
    B3,
}

/// One reduction: graph edits, the vertices it adds to the partial
/// solution and the vertices it makes exempt.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: Rule,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub removed_vertices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub removed_edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub added_edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub solution: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub exempt_added: Vec<usize>,
    /// Vertices re-solved locally when lifting; the step's solution then
    /// only stands in for the optimum shift.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub region: Vec<usize>,
    /// Optimum of the instance before the step minus the optimum after it.
    pub delta: usize,
}

impl TraceStep {
    fn new(rule: Rule) -> Self {
        TraceStep {
            rule,
            removed_vertices: Vec::new(),
            removed_edges: Vec::new(),
            added_edges: Vec::new(),
            solution: Vec::new(),
            exempt_added: Vec::new(),
            region: Vec::new(),
            delta: 0,
        }
    }
}

/// One JSON object per line.
pub fn write_trace(trace: &[TraceStep]) -> String {
    let mut out = String::new();
    for step in trace {
        out.push_str(&serde_json::to_string(step).expect("trace steps serialize"));
        out.push('\n');
    }
    out
}

pub fn parse_trace(text: &str) -> Result<Vec<TraceStep>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() }))
        .collect()
}

/// Mutable relaxed instance over stable vertex ids that records every
/// reduction applied to it.
#[derive(Clone, Debug)]
pub struct Reducer {
    adj: Vec<BTreeSet<usize>>,
    alive: VertexSet,
    exempt: VertexSet,
    partial: VertexSet,
    trace: Vec<TraceStep>,
}

fn edge(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl Reducer {
    pub fn new(inst: &RdsInstance) -> Self {
        let n = inst.graph.n();
        let adj = inst.graph.vertices().map(|v| inst.graph.neighbors(v).iter().copied().collect()).collect();
        Reducer {
            adj,
            alive: VertexSet::full(n),
            exempt: inst.exempt.clone(),
            partial: VertexSet::new(n),
            trace: Vec::new(),
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        Self::new(&RdsInstance::plain(g.clone()))
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.alive.contains(v)
    }

    pub fn is_exempt(&self, v: usize) -> bool {
        self.exempt.contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn alive(&self) -> &VertexSet {
        &self.alive
    }

    /// Vertices added to the solution so far, including stand-ins.
    pub fn partial(&self) -> &VertexSet {
        &self.partial
    }

    pub fn trace(&self) -> &[TraceStep] {
        &self.trace
    }

    pub fn edge_count(&self) -> usize {
        self.alive.iter().map(|v| self.adj[v].len()).sum::<usize>() / 2
    }

    /// Current instance over the live vertices, renumbered ascending, with
    /// the map from new ids to stable ids.
    pub fn instance(&self) -> (RdsInstance, Vec<usize>) {
        let map = self.alive.to_vec();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let index = &index;
        let edges: Vec<(usize, usize)> = map
            .iter()
            .flat_map(|&v| self.adj[v].iter().filter(move |&&u| u > v).map(move |&u| (index[v], index[u])))
            .collect();
        let graph = Graph::new(map.len(), edges).expect("reducer keeps a simple graph");
        let exempt = VertexSet::from_ids(map.len(), map.iter().enumerate().filter(|&(_, &v)| self.exempt.contains(v)).map(|(i, _)| i));
        (RdsInstance { graph, exempt }, map)
    }

    /// Validates and performs a step, then records it.
    pub fn apply(&mut self, step: TraceStep) -> Result<()> {
        let n = self.n();
        let bad = |msg: String| Err(Error::input(format!("{:?} step: {msg}", step.rule)));
        let in_range = |v: usize| v < n;
        let all_ids = step
            .removed_vertices
            .iter()
            .chain(&step.solution)
            .chain(&step.exempt_added)
            .chain(&step.region)
            .copied()
            .chain(step.removed_edges.iter().chain(&step.added_edges).flat_map(|&(a, b)| [a, b]));
        for v in all_ids {
            if !in_range(v) {
                return bad(format!("vertex {v} out of range"));
            }
        }
        for &(a, b) in &step.removed_edges {
            if !self.adj[a].contains(&b) {
                return bad(format!("edge ({a},{b}) is not present"));
            }
        }
        for &v in step.removed_vertices.iter().chain(&step.region) {
            if !self.alive.contains(v) {
                return bad(format!("vertex {v} is not present"));
            }
        }
        for &v in &step.solution {
            if !step.removed_vertices.contains(&v) {
                return bad(format!("solution vertex {v} is not removed"));
            }
        }
        if step.solution.len() != step.delta && step.region.is_empty() {
            return bad("delta differs from the solution size".into());
        }
        let mut removed_edges = BTreeSet::new();
        for &(a, b) in &step.removed_edges {
            if !removed_edges.insert(edge(a, b)) {
                return bad(format!("edge ({a},{b}) removed twice"));
            }
        }
        let mut removed = BTreeSet::new();
        for &v in &step.removed_vertices {
            if !removed.insert(v) {
                return bad(format!("vertex {v} removed twice"));
            }
            if self.adj[v].iter().any(|&u| !removed_edges.contains(&edge(u, v))) {
                return bad(format!("removed vertex {v} keeps edges"));
            }
        }
        let mut added = BTreeSet::new();
        for &(a, b) in &step.added_edges {
            let e = edge(a, b);
            let live = |v: usize| self.alive.contains(v) && !removed.contains(&v);
            if a == b || !live(a) || !live(b) || self.adj[a].contains(&b) || !added.insert(e) {
                return bad(format!("cannot add edge ({a},{b})"));
            }
        }
        let mut newly_exempt = BTreeSet::new();
        for &v in &step.exempt_added {
            if !self.alive.contains(v) || removed.contains(&v) || self.exempt.contains(v) || !newly_exempt.insert(v) {
                return bad(format!("cannot make {v} exempt"));
            }
        }
        for &(a, b) in &step.removed_edges {
            self.adj[a].remove(&b);
            self.adj[b].remove(&a);
        }
        for &v in &step.removed_vertices {
            self.alive.remove(v);
        }
        for &(a, b) in &step.added_edges {
            self.adj[a].insert(b);
            self.adj[b].insert(a);
        }
        for &v in &step.exempt_added {
            self.exempt.insert(v);
        }
        for &v in &step.solution {
            self.partial.insert(v);
        }
        self.trace.push(step);
        Ok(())
    }

    fn undo_last(&mut self) -> TraceStep {
        let step = self.trace.pop().expect("a step to undo");
        for &(a, b) in &step.added_edges {
            self.adj[a].remove(&b);
            self.adj[b].remove(&a);
        }
        for &v in &step.exempt_added {
            self.exempt.remove(v);
        }
        for &v in &step.removed_vertices {
            self.alive.insert(v);
        }
        for &(a, b) in &step.removed_edges {
            self.adj[a].insert(b);
            self.adj[b].insert(a);
        }
        for &v in &step.solution {
            self.partial.remove(v);
        }
        step
    }

    /// Turns a solution of the current instance (stable ids) into one of
    /// the original instance, undoing the trace step by step.
    pub fn lift(&self, solution: &VertexSet) -> Result<VertexSet> {
        if let Some(v) = solution.iter().find(|&v| !self.alive.contains(v)) {
            return Err(Error::input(format!("solution vertex {v} is not in the reduced instance")));
        }
        let mut state = self.clone();
        let mut cur = solution.clone();
        while !state.trace.is_empty() {
            let step = state.undo_last();
            if step.region.is_empty() {
                for &v in &step.solution {
                    cur.insert(v);
                }
            } else {
                cur = state.complete(&cur, &step.region)?;
            }
        }
        Ok(cur)
    }

    /// Keeps `cur` outside `region` and adds a smallest subset of `region`
    /// that dominates the non-exempt vertices in and around it.
    fn complete(&self, cur: &VertexSet, region: &[usize]) -> Result<VertexSet> {
        const MAX_REGION: usize = 16;
        if region.len() > MAX_REGION {
            return Err(Error::resource("lift region", region.len(), MAX_REGION));
        }
        let mut base = cur.clone();
        for &v in region {
            base.remove(v);
        }
        let mut targets: Vec<usize> = region.iter().flat_map(|&v| std::iter::once(v).chain(self.adj[v].iter().copied())).collect();
        targets.sort_unstable();
        targets.dedup();
        targets.retain(|&v| !self.exempt.contains(v));
        let covered = |s: &VertexSet, v: usize| s.contains(v) || self.adj[v].iter().any(|&u| s.contains(u));
        let r = region.len();
        let mut masks: Vec<u32> = (0..1u32 << r).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        for m in masks {
            let mut s = base.clone();
            for (i, &v) in region.iter().enumerate() {
                if m >> i & 1 == 1 {
                    s.insert(v);
                }
            }
            if targets.iter().all(|&t| covered(&s, t)) {
                return Ok(s);
            }
        }
        unreachable!("the whole region dominates itself and its neighbors")
    }
}

/// Output of [`compress`].
#[derive(Clone, Debug)]
pub struct Compression {
    pub instance: RdsInstance,
    /// Compressed id to original id.
    pub map: Vec<usize>,
    /// Partial solution over original ids; its size plus the optimum of
    /// `instance` is the optimum of the input.
    pub partial: VertexSet,
    pub trace: Vec<TraceStep>,
    /// Feedback edge set number of the input.
    pub cycle_rank: usize,
    reducer: Reducer,
}

impl Compression {
    /// Vertices of degree at least three in the compressed graph.
    pub fn high_degree_count(&self) -> usize {
        let g = &self.instance.graph;
        g.vertices().filter(|&v| g.degree(v) > 2).count()
    }

    /// True iff the compressed instance meets the size guarantees.
    pub fn within_bounds(&self) -> bool {
        let k = self.cycle_rank;
        self.instance.graph.m() <= 27 * k && self.instance.graph.n() <= 26 * k && self.high_degree_count() <= 2 * k
    }

    /// Full solution of the input from a solution of the compressed
    /// instance (compressed ids).
    pub fn lift(&self, solution: &VertexSet) -> Result<VertexSet> {
        let stable = map_solution(solution, &self.map, self.reducer.n())?;
        self.reducer.lift(&stable)
    }
}

fn map_solution(solution: &VertexSet, map: &[usize], n: usize) -> Result<VertexSet> {
    if solution.capacity() != map.len() {
        return Err(Error::input(format!(
            "solution sized for {} vertices, compressed instance has {}",
            solution.capacity(),
            map.len()
        )));
    }
    Ok(VertexSet::from_ids(n, solution.iter().map(|v| map[v])))
}

/// Cacti first, then leaf, cycle and path rules on the kernel until none
/// applies.
pub fn compress(g: &Graph) -> Result<Compression> {
    let ck = cactus_kernel(g)?;
    let mut red = Reducer::from_graph(g);
    for cactus in &ck.cacti {
        let sol = dominate_dangling_cactus(g, cactus)?;
        red.remove_cactus(cactus, &sol)?;
    }
    loop {
        let cleaned = red.cleanup()?;
        let rewritten = red.induced_path_reduce()?;
        if !cleaned && !rewritten {
            break;
        }
    }
    let (instance, map) = red.instance();
    let out = Compression {
        instance,
        map,
        partial: red.partial().clone(),
        trace: red.trace().to_vec(),
        cycle_rank: ck.cycle_rank,
        reducer: red,
    };
    assert!(out.within_bounds(), "compressed instance exceeds its size bounds");
    Ok(out)
}

/// Replays `trace` on `g` and lifts a solution of the resulting compressed
/// instance (compressed ids) to a solution of `g`.
pub fn lift(g: &Graph, trace: &[TraceStep], solution: &VertexSet) -> Result<VertexSet> {
    let red = replay(g, trace)?;
    let (_, map) = red.instance();
    red.lift(&map_solution(solution, &map, g.n())?)
}

/// The reducer after applying `trace` to `g`.
pub fn replay(g: &Graph, trace: &[TraceStep]) -> Result<Reducer> {
    let mut red = Reducer::from_graph(g);
    for step in trace {
        red.apply(step.clone())?;
    }
    Ok(red)
}
