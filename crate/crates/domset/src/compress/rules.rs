//! Reduction rules on a [`Reducer`]. Each rule builds one [`TraceStep`]
//! and hands it to [`Reducer::apply`].

use std::collections::BTreeSet;

use super::domination::cycle_dominate;
use super::kernel::Cactus;
use super::{edge, Reducer, Rule, TraceStep};
use crate::error::{Error, Result};
use crate::graph::VertexSet;

impl Reducer {
    /// Edges touching any of `vs`, each once.
    fn edges_at(&self, vs: &[usize]) -> Vec<(usize, usize)> {
        let set: BTreeSet<(usize, usize)> = vs.iter().flat_map(|&v| self.adj[v].iter().map(move |&u| edge(u, v))).collect();
        set.into_iter().collect()
    }

    fn newly_exempt(&self, vs: impl IntoIterator<Item = usize>, removed: &[usize]) -> Vec<usize> {
        let set: BTreeSet<usize> =
            vs.into_iter().filter(|&v| !self.exempt.contains(v) && !removed.contains(&v)).collect();
        set.into_iter().collect()
    }

    fn require_alive(&self, vs: &[usize]) -> Result<()> {
        match vs.iter().find(|&&v| v >= self.n() || !self.alive.contains(v)) {
            Some(v) => Err(Error::input(format!("vertex {v} is not in the instance"))),
            None => Ok(()),
        }
    }

    /// Removes every non-root cactus vertex, adding `solution` minus the
    /// root; the root then joins the solution or becomes exempt if the
    /// cactus solution covers it.
    pub fn remove_cactus(&mut self, cactus: &Cactus, solution: &VertexSet) -> Result<()> {
        let rest: Vec<usize> = cactus.vertices.iter().copied().filter(|&v| v != cactus.root).collect();
        self.require_alive(&cactus.vertices)?;
        let root = cactus.root;
        let mut step = TraceStep::new(Rule::Cactus);
        step.removed_edges = cactus.edges.clone();
        step.solution = rest.iter().copied().filter(|&v| solution.contains(v)).collect();
        step.delta = step.solution.len();
        let root_covered = cactus.edges.iter().any(|&(a, b)| {
            (a == root && solution.contains(b)) || (b == root && solution.contains(a))
        });
        if !solution.contains(root) && root_covered && !self.exempt.contains(root) {
            step.exempt_added.push(root);
        }
        step.removed_vertices = rest;
        self.apply(step)?;
        if solution.contains(root) {
            self.take(root)?;
        }
        Ok(())
    }

    /// Puts `v` into the solution, removes it and exempts its neighbors.
    pub fn take(&mut self, v: usize) -> Result<()> {
        self.require_alive(&[v])?;
        let mut step = TraceStep::new(Rule::Take);
        step.removed_edges = self.edges_at(&[v]);
        step.exempt_added = self.newly_exempt(self.adj[v].iter().copied(), &[v]);
        step.removed_vertices = vec![v];
        step.solution = vec![v];
        step.delta = 1;
        self.apply(step)
    }

    /// Removes a vertex of degree at most one. An exempt vertex just goes;
    /// otherwise its neighbor (or itself, when isolated) joins the solution
    /// and the neighbor's other neighbors become exempt.
    pub fn leaf_reduce(&mut self, v: usize) -> Result<()> {
        self.require_alive(&[v])?;
        match self.degree(v) {
            0 => {
                let mut step = TraceStep::new(Rule::Isolated);
                step.removed_vertices = vec![v];
                if !self.exempt.contains(v) {
                    step.solution = vec![v];
                    step.delta = 1;
                }
                self.apply(step)
            }
            1 => {
                let u = *self.adj[v].first().expect("degree one");
                let mut step = TraceStep::new(Rule::Leaf);
                if self.exempt.contains(v) {
                    step.removed_edges = vec![edge(u, v)];
                    step.removed_vertices = vec![v];
                } else {
                    step.removed_edges = self.edges_at(&[u, v]);
                    step.exempt_added = self.newly_exempt(self.adj[u].iter().copied(), &[u, v]);
                    step.removed_vertices = vec![v, u];
                    step.solution = vec![u];
                    step.delta = 1;
                }
                self.apply(step)
            }
            d => Err(Error::input(format!("vertex {v} has degree {d}, not a leaf"))),
        }
    }

    /// Consumes the path `path[0] - ... - path[last - 1]` hanging from
    /// `path[last]` by leaf reductions; `path[0]` must be a leaf and the
    /// vertices between have degree two.
    pub fn dangling_path_reduce(&mut self, path: &[usize]) -> Result<()> {
        self.require_alive(path)?;
        let Some((&end, body)) = path.split_last() else {
            return Err(Error::input("empty dangling path"));
        };
        if body.is_empty() {
            return Err(Error::input("dangling path needs a leaf before its end"));
        }
        if self.degree(path[0]) != 1 {
            return Err(Error::input(format!("vertex {} is not a leaf", path[0])));
        }
        for w in path.windows(2) {
            if !self.adj[w[0]].contains(&w[1]) {
                return Err(Error::input(format!("({},{}) is not an edge", w[0], w[1])));
            }
        }
        if let Some(&v) = body[1..].iter().find(|&&v| self.degree(v) != 2) {
            return Err(Error::input(format!("inner path vertex {v} does not have degree two")));
        }
        let mut i = 0;
        while i < body.len() {
            let x = body[i];
            let jump = if self.exempt.contains(x) { 1 } else { 2 };
            self.leaf_reduce(x)?;
            i += jump;
        }
        debug_assert!(i > body.len() || self.is_alive(end));
        Ok(())
    }

    /// Solves a component that is a single cycle, given in cyclic order.
    pub fn solve_cycle_component(&mut self, cycle: &[usize]) -> Result<()> {
        self.require_alive(cycle)?;
        let len = cycle.len();
        for i in 0..len {
            let (a, b) = (cycle[i], cycle[(i + 1) % len]);
            if self.degree(a) != 2 || !self.adj[a].contains(&b) {
                return Err(Error::input("vertices do not form a cycle component"));
            }
        }
        let sol = cycle_dominate(cycle, &self.exempt)?;
        let mut step = TraceStep::new(Rule::Cycle);
        step.removed_edges = self.edges_at(cycle);
        step.removed_vertices = cycle.to_vec();
        step.delta = sol.len();
        step.solution = sol;
        self.apply(step)
    }

    pub fn drop_exempt_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.require_alive(&[a, b])?;
        if !self.exempt.contains(a) || !self.exempt.contains(b) || !self.adj[a].contains(&b) {
            return Err(Error::input(format!("({a},{b}) is not an edge between exempt vertices")));
        }
        let mut step = TraceStep::new(Rule::ExemptEdge);
        step.removed_edges = vec![edge(a, b)];
        self.apply(step)
    }

    /// Checks that `seq` is a walk whose inner vertices have degree two and
    /// whose vertices are distinct.
    fn check_segment(&self, seq: &[usize]) -> Result<()> {
        self.require_alive(seq)?;
        let distinct: BTreeSet<usize> = seq.iter().copied().collect();
        if distinct.len() != seq.len() {
            return Err(Error::input("segment repeats a vertex"));
        }
        for w in seq.windows(2) {
            if !self.adj[w[0]].contains(&w[1]) {
                return Err(Error::input(format!("({},{}) is not an edge", w[0], w[1])));
            }
        }
        if let Some(&v) = seq[1..seq.len() - 1].iter().find(|&&v| self.degree(v) != 2) {
            return Err(Error::input(format!("inner vertex {v} does not have degree two")));
        }
        Ok(())
    }

    /// Replaces `u-u1-u2-u3-v` with the edge `u-v` when `u1, u2, u3` are
    /// not exempt; `u2` stands in for the removed optimum.
    pub fn wfree_path_reduce(&mut self, seg: &[usize]) -> Result<()> {
        let [u, u1, u2, u3, v] = *seg else {
            return Err(Error::input("segment needs five vertices"));
        };
        self.check_segment(seg)?;
        if [u1, u2, u3].iter().any(|&x| self.exempt.contains(x)) {
            return Err(Error::input("segment interior contains an exempt vertex"));
        }
        let mut step = TraceStep::new(Rule::WFree);
        step.removed_edges = self.edges_at(&[u1, u2, u3]);
        step.removed_vertices = vec![u1, u2, u3];
        if !self.adj[u].contains(&v) {
            step.added_edges = vec![edge(u, v)];
        }
        step.solution = vec![u2];
        step.region = vec![u1, u2, u3];
        step.delta = 1;
        self.apply(step)
    }

    /// Applies B1, B2 or B3 to a segment from one exempt vertex to another
    /// with a single exempt vertex inside, chosen by the segment length.
    pub fn exempt_path_reduce(&mut self, seg: &[usize]) -> Result<()> {
        self.check_segment(seg)?;
        let ex: Vec<bool> = seg.iter().map(|&v| self.exempt.contains(v)).collect();
        let mid = match seg.len() {
            5 => 2,
            7 => 3,
            6 if ex[3] => 3,
            6 => 2,
            _ => return Err(Error::input("segment length matches no rule")),
        };
        let last = seg.len() - 1;
        if (1..last).any(|i| ex[i] != (i == mid)) || !ex[0] || !ex[last] {
            return Err(Error::input("segment does not alternate exempt vertices as a rule requires"));
        }
        let mut step;
        match seg.len() {
            5 => {
                let [_, a, w2, b, _] = *seg else { unreachable!() };
                step = TraceStep::new(Rule::B1);
                step.removed_edges = vec![edge(a, w2), edge(w2, b)];
                step.removed_vertices = vec![w2];
                step.added_edges = vec![edge(a, b)];
                step.region = vec![a, w2, b];
            }
            7 => {
                let [_, u1, u2, w2, v1, v2, _] = *seg else { unreachable!() };
                step = TraceStep::new(Rule::B2);
                step.removed_edges = self.edges_at(&[u2, w2, v1]);
                step.removed_vertices = vec![u2, w2, v1];
                step.added_edges = vec![edge(u1, v2)];
                step.solution = vec![w2];
                step.region = vec![u1, u2, w2, v1, v2];
                step.delta = 1;
            }
            _ => {
                // Orient as w1-u1-u2-w2-v1-w3.
                let s: Vec<usize> = if mid == 3 { seg.to_vec() } else { seg.iter().rev().copied().collect() };
                let [_, u1, u2, w2, v1, w3] = s[..] else { unreachable!() };
                step = TraceStep::new(Rule::B3);
                step.removed_edges = self.edges_at(&[u2, w2, v1]);
                step.removed_vertices = vec![u2, w2, v1];
                step.added_edges = vec![edge(u1, w3)];
                step.solution = vec![u2];
                step.region = vec![u1, u2, w2, v1];
                step.delta = 1;
            }
        }
        self.apply(step)
    }

    /// Maximal paths whose inner vertices have degree two, from a vertex of
    /// another degree to a vertex of another degree (possibly the same
    /// one), with at least three inner vertices.
    pub fn chains(&self) -> Vec<Vec<usize>> {
        let mut seen = VertexSet::new(self.n());
        let mut out = Vec::new();
        for x in self.alive.iter() {
            if self.degree(x) == 2 {
                continue;
            }
            for &y in &self.adj[x] {
                if self.degree(y) != 2 || seen.contains(y) {
                    continue;
                }
                let mut seq = vec![x, y];
                let (mut prev, mut cur) = (x, y);
                while self.degree(cur) == 2 {
                    seen.insert(cur);
                    let next = *self.adj[cur].iter().find(|&&z| z != prev).expect("degree two");
                    prev = cur;
                    cur = next;
                    seq.push(cur);
                }
                if seq.len() >= 5 {
                    out.push(seq);
                }
            }
        }
        out
    }

    /// Rewrites one chain in place until no rule applies to it. Returns
    /// whether anything changed.
    fn rewrite_chain(&mut self, mut seq: Vec<usize>) -> Result<bool> {
        let mut changed = false;
        'outer: loop {
            let last = seq.len() - 1;
            for j in 1..last.saturating_sub(2) {
                if (j..j + 3).all(|i| !self.exempt.contains(seq[i])) && seq[j - 1] != seq[j + 3] {
                    let had_edge = self.adj[seq[j - 1]].contains(&seq[j + 3]);
                    self.wfree_path_reduce(&seq[j - 1..=j + 3])?;
                    changed = true;
                    if had_edge {
                        break 'outer;
                    }
                    seq.drain(j..j + 3);
                    continue 'outer;
                }
            }
            let marks: Vec<usize> = (0..=last).filter(|&i| self.exempt.contains(seq[i])).collect();
            for t in marks.windows(3) {
                let (a, b, c) = (t[0], t[1], t[2]);
                let gaps = (b - a - 1, c - b - 1);
                if !(1..=2).contains(&gaps.0) || !(1..=2).contains(&gaps.1) || seq[a] == seq[c] {
                    continue;
                }
                self.exempt_path_reduce(&seq[a..=c])?;
                changed = true;
                let gone: Vec<usize> = match gaps {
                    (1, 1) => vec![b],
                    (2, 2) => vec![a + 2, b, b + 1],
                    (2, 1) => vec![a + 2, b, b + 1],
                    _ => vec![a + 1, b, b + 1],
                };
                for i in gone.into_iter().rev() {
                    seq.remove(i);
                }
                continue 'outer;
            }
            break;
        }
        Ok(changed)
    }

    /// Removes leaves and isolated vertices starting from `start`, then
    /// from every vertex they expose.
    fn cascade(&mut self, start: impl IntoIterator<Item = usize>) -> Result<bool> {
        let mut work: Vec<usize> = start.into_iter().collect();
        let mut changed = false;
        while let Some(v) = work.pop() {
            if !self.alive.contains(v) || self.degree(v) > 1 {
                continue;
            }
            let touched: Vec<usize> = match self.adj[v].first() {
                Some(&u) => self.adj[u].iter().copied().chain([u]).collect(),
                None => Vec::new(),
            };
            self.leaf_reduce(v)?;
            changed = true;
            work.extend(touched.into_iter().filter(|&x| self.alive.contains(x)));
        }
        Ok(changed)
    }

    /// Removes leaves and isolated vertices to exhaustion and solves cycle
    /// components.
    pub fn cleanup(&mut self) -> Result<bool> {
        let all: Vec<usize> = self.alive.iter().collect();
        let mut changed = self.cascade(all.into_iter().rev())?;
        let mut seen = VertexSet::new(self.n());
        for s in self.alive.to_vec() {
            if seen.contains(s) || self.degree(s) != 2 {
                continue;
            }
            let mut cyc = vec![s];
            seen.insert(s);
            let (mut prev, mut cur) = (s, *self.adj[s].first().expect("degree two"));
            let mut pure = true;
            while cur != s {
                if self.degree(cur) != 2 {
                    pure = false;
                    break;
                }
                seen.insert(cur);
                cyc.push(cur);
                let next = *self.adj[cur].iter().find(|&&z| z != prev).expect("degree two");
                prev = cur;
                cur = next;
            }
            if pure {
                self.solve_cycle_component(&cyc)?;
                changed = true;
            }
        }
        Ok(changed)
    }

    /// Drops edges between exempt vertices (consuming any dangling paths
    /// this creates) and rewrites every chain with the W-free contraction
    /// and the three exempt-vertex rules, until nothing changes.
    pub fn induced_path_reduce(&mut self) -> Result<bool> {
        let mut any = false;
        loop {
            let mut changed = false;
            let exempt_edges: Vec<(usize, usize)> = self
                .alive
                .iter()
                .filter(|&a| self.exempt.contains(a))
                .flat_map(|a| self.adj[a].iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
                .filter(|&(_, b)| self.exempt.contains(b))
                .collect();
            for (a, b) in exempt_edges {
                if !self.alive.contains(a) || !self.adj[a].contains(&b) || !self.exempt.contains(b) {
                    continue;
                }
                self.drop_exempt_edge(a, b)?;
                let exposed: Vec<usize> = [a, b].into_iter().filter(|&x| self.degree(x) == 1).collect();
                for x in exposed {
                    self.consume_dangling(x)?;
                }
                changed = true;
            }
            for chain in self.chains() {
                if chain.iter().any(|&v| !self.alive.contains(v)) || chain[1..chain.len() - 1].iter().any(|&v| self.degree(v) != 2) {
                    continue;
                }
                changed |= self.rewrite_chain(chain)?;
            }
            if !changed {
                return Ok(any);
            }
            any = true;
        }
    }

    /// Dangling path reduction from leaf `x` up to the first vertex whose
    /// degree is not two.
    fn consume_dangling(&mut self, x: usize) -> Result<()> {
        if !self.alive.contains(x) || self.degree(x) != 1 {
            return Ok(());
        }
        let mut path = vec![x];
        let (mut prev, mut cur) = (x, *self.adj[x].first().expect("degree one"));
        while self.degree(cur) == 2 {
            path.push(cur);
            let next = *self.adj[cur].iter().find(|&&z| z != prev).expect("degree two");
            prev = cur;
            cur = next;
        }
        path.push(cur);
        if cur == x {
            return Ok(());
        }
        self.dangling_path_reduce(&path)
    }
}
