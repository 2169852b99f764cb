//! Exact relaxed domination on paths, cycles and dangling cacti.

use super::kernel::{Attachment, Cactus};
use super::RdsInstance;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Minimum set of path vertices dominating every non-exempt vertex of the
/// path `seq`, by leaf elimination from `seq[0]`.
pub(crate) fn dominate_sequence(seq: &[usize], exempt: impl Fn(usize) -> bool) -> Vec<usize> {
    dominate_flags(seq, seq.iter().map(|&v| exempt(v)).collect())
}

fn dominate_flags(seq: &[usize], mut ex: Vec<bool>) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < seq.len() {
        if ex[i] {
            i += 1;
        } else if i + 1 == seq.len() {
            out.push(seq[i]);
            i += 1;
        } else {
            out.push(seq[i + 1]);
            if i + 2 < seq.len() {
                ex[i + 2] = true;
            }
            i += 2;
        }
    }
    out
}

/// Vertices of a path graph from one end to the other, or an input error.
pub(crate) fn path_order(g: &Graph) -> Result<Vec<usize>> {
    let n = g.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    if g.m() + 1 != n || g.max_degree() > 2 {
        return Err(Error::input("graph is not a path"));
    }
    let start = g.vertices().find(|&v| g.degree(v) <= 1).ok_or_else(|| Error::input("graph is not a path"))?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = g.neighbors(cur).iter().find(|&&x| x != prev) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    if order.len() != n {
        return Err(Error::input("graph is not a path"));
    }
    Ok(order)
}

/// Minimum exempt-aware dominating set of a path graph.
pub fn path_dominate(inst: &RdsInstance) -> Result<VertexSet> {
    let order = path_order(&inst.graph)?;
    let s = dominate_sequence(&order, |v| inst.exempt.contains(v));
    Ok(VertexSet::from_ids(inst.graph.n(), s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RdscCase {
    /// The special vertex is in the solution.
    Include,
    /// The special vertex is outside the solution and needs no domination.
    Exclude,
}

/// Minimum set containing `forced` that dominates every vertex of the cycle
/// (or path, when `closed` is false) outside `exempt`, with the special
/// vertex `t` in or out of the set according to `case`. Vertices that need
/// no domination and touch another such vertex are never useful and split
/// the strand into paths, which leaf elimination solves.
pub fn rdsc_solve(
    strand: &[usize],
    closed: bool,
    forced: &VertexSet,
    exempt: &VertexSet,
    t: usize,
    case: RdscCase,
) -> Result<Vec<usize>> {
    let len = strand.len();
    let Some(tp) = strand.iter().position(|&x| x == t) else {
        return Err(Error::input(format!("special vertex {t} is not on the strand")));
    };
    if closed && len < 3 {
        return Err(Error::input("a cycle needs at least three vertices"));
    }
    if strand.iter().any(|&x| forced.contains(x) && exempt.contains(x)) {
        return Err(Error::input("forced and exempt vertices overlap"));
    }
    if case == RdscCase::Exclude && forced.contains(t) {
        return Err(Error::input("special vertex is forced but must be excluded"));
    }
    let mut in_s: Vec<bool> = strand.iter().map(|&x| forced.contains(x)).collect();
    let mut ex: Vec<bool> = strand.iter().map(|&x| exempt.contains(x)).collect();
    match case {
        RdscCase::Include => in_s[tp] = true,
        RdscCase::Exclude => ex[tp] = true,
    }
    let nbrs = |i: usize| -> [Option<usize>; 2] {
        let left = if i > 0 { Some(i - 1) } else if closed { Some(len - 1) } else { None };
        let right = if i + 1 < len { Some(i + 1) } else if closed { Some(0) } else { None };
        [left, right]
    };
    for i in 0..len {
        if in_s[i] {
            for j in nbrs(i).into_iter().flatten() {
                ex[j] = true;
            }
        }
    }
    let mut cut = in_s.clone();
    cut[tp] = true;
    let edge_count = if closed { len } else { len - 1 };
    for i in 0..edge_count {
        let j = (i + 1) % len;
        if (ex[i] || in_s[i]) && (ex[j] || in_s[j]) {
            cut[i] = true;
            cut[j] = true;
        }
    }
    let mut out: Vec<usize> = (0..len).filter(|&i| in_s[i]).map(|i| strand[i]).collect();
    // Walk once around from just after the special vertex, which is cut.
    let walk: Vec<usize> = if closed { (1..len).map(|d| (tp + d) % len).collect() } else { (0..len).collect() };
    let mut piece: Vec<usize> = Vec::new();
    for i in walk.into_iter().chain([tp]) {
        if cut[i] {
            let seq: Vec<usize> = piece.iter().map(|&k| strand[k]).collect();
            out.extend(dominate_flags(&seq, piece.iter().map(|&k| ex[k]).collect()));
            piece.clear();
        } else {
            piece.push(i);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Smallest [`RdscCase::Exclude`] solution in which a strand neighbor of
/// `t` dominates `t`.
pub(crate) fn rdsc_dominating_special(
    strand: &[usize],
    closed: bool,
    forced: &VertexSet,
    exempt: &VertexSet,
    t: usize,
) -> Result<Option<Vec<usize>>> {
    let len = strand.len();
    let tp = strand.iter().position(|&x| x == t).ok_or_else(|| Error::input("special vertex not on strand"))?;
    let mut cands = Vec::new();
    if tp > 0 || closed {
        cands.push(strand[(tp + len - 1) % len]);
    }
    if tp + 1 < len || closed {
        cands.push(strand[(tp + 1) % len]);
    }
    let mut best: Option<Vec<usize>> = None;
    for c in cands {
        let mut f = forced.clone();
        f.insert(c);
        let mut e = exempt.clone();
        e.remove(c);
        let s = rdsc_solve(strand, closed, &f, &e, t, RdscCase::Exclude)?;
        if best.as_ref().is_none_or(|b| s.len() < b.len()) {
            best = Some(s);
        }
    }
    Ok(best)
}

/// Exact minimum set dominating the non-exempt vertices of a cycle.
pub(crate) fn cycle_dominate(cycle: &[usize], exempt: &VertexSet) -> Result<Vec<usize>> {
    let none = VertexSet::new(exempt.capacity());
    let t = cycle[0];
    let mut best = rdsc_solve(cycle, true, &none, exempt, t, RdscCase::Include)?;
    let other = if exempt.contains(t) {
        Some(rdsc_solve(cycle, true, &none, exempt, t, RdscCase::Exclude)?)
    } else {
        rdsc_dominating_special(cycle, true, &none, exempt, t)?
    };
    if let Some(s) = other {
        if s.len() < best.len() {
            best = s;
        }
    }
    Ok(best)
}

/// Minimum set dominating every cactus vertex except possibly its root,
/// chosen so that some minimum dominating set of `g` contains it: the
/// cycle tree is processed children first, and among equally small local
/// choices one containing, then one dominating, the articulation vertex
/// is preferred.
pub fn dominate_dangling_cactus(g: &Graph, cactus: &Cactus) -> Result<VertexSet> {
    let n = g.n();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in &cactus.edges {
        if a >= n || b >= n || !g.has_edge(a, b) {
            return Err(Error::input(format!("cactus edge ({a},{b}) is not in the graph")));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    for &v in &cactus.vertices {
        if v != cactus.root && g.degree(v) != adj[v].len() {
            return Err(Error::input(format!("cactus vertex {v} has neighbors outside the cactus")));
        }
    }
    let mut in_s = VertexSet::new(n);
    let mut dom = VertexSet::new(n);
    let add = |x: usize, in_s: &mut VertexSet, dom: &mut VertexSet| {
        in_s.insert(x);
        dom.insert(x);
        for &y in &adj[x] {
            dom.insert(y);
        }
    };
    for id in cactus.tree.postorder() {
        let node = &cactus.tree.nodes[id];
        if node.cycle.iter().all(|&v| dom.contains(v)) {
            continue;
        }
        if node.cycle.len() == 1 {
            if let Attachment::Edge { parent_vertex } = node.attachment {
                add(parent_vertex, &mut in_s, &mut dom);
            }
            continue;
        }
        let t = node.articulation;
        let forced = VertexSet::from_ids(n, node.cycle.iter().copied().filter(|&v| in_s.contains(v)));
        let exempt = VertexSet::from_ids(n, node.cycle.iter().copied().filter(|&v| dom.contains(v) && !in_s.contains(v)));
        let include = rdsc_solve(&node.cycle, true, &forced, &exempt, t, RdscCase::Include)?;
        let mut chosen = include.clone();
        let mut parent_extra = None;
        if !forced.contains(t) {
            let exclude = rdsc_solve(&node.cycle, true, &forced, &exempt, t, RdscCase::Exclude)?;
            if exclude.len() < include.len() {
                let dominating = if exempt.contains(t) {
                    Some(exclude.clone())
                } else {
                    rdsc_dominating_special(&node.cycle, true, &forced, &exempt, t)?
                };
                match dominating {
                    Some(s) if s.len() == exclude.len() => chosen = s,
                    _ => {
                        chosen = exclude;
                        if let Attachment::Edge { parent_vertex } = node.attachment {
                            parent_extra = Some(parent_vertex);
                        }
                    }
                }
            }
        }
        for x in chosen.into_iter().chain(parent_extra) {
            add(x, &mut in_s, &mut dom);
        }
    }
    Ok(in_s)
}
