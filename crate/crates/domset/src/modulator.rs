//! Solvers that branch over a modulator M, a vertex set whose removal leaves
//! treewidth at most d: dominating subsets of M through set cover, dominating
//! V \ M through one apex gadget per L ⊆ M, their union as a
//! 2-approximation, and the exact vertex-cover algorithm.

use crate::decomp::{decompose, decompose_bounded, NiceTreeDecomposition};
use crate::dp_tw::{solve_exact_tw, DpSolution};
use crate::error::{Error, Result};
use crate::graph::{min_vertex_cover, Graph, VertexSet, Weights};
use crate::setcover::{solve_generalized_capped, GeneralizedTable, SetCoverInstance};

/// Cap on |M| for every solver that enumerates subsets of M.
pub const MODULATOR_MAX: usize = 25;
/// Largest graph for which a modulator is searched exhaustively.
pub const MODULATOR_SEARCH_MAX_N: usize = 20;

fn check_size(m: &VertexSet) -> Result<()> {
    if m.len() > MODULATOR_MAX {
        return Err(Error::resource("modulator size", m.len(), MODULATOR_MAX));
    }
    Ok(())
}

/// Decomposition of the residual graph of width at most `d`. For d ≥ 3 the
/// verified width of the best-effort decomposition decides.
fn bounded_decomposition(h: &Graph, d: usize) -> Result<NiceTreeDecomposition> {
    if d <= 2 {
        return decompose_bounded(h, d);
    }
    let dec = decompose(h)?;
    if dec.width > d {
        return Err(Error::WidthExceeded { bound: d });
    }
    Ok(dec.nice)
}

#[derive(Clone, Debug)]
pub struct ModulatorInstance {
    pub graph: Graph,
    pub weights: Weights,
    pub modulator: VertexSet,
    pub bound: usize,
    residual: Graph,
    /// Residual id to original id.
    residual_map: Vec<usize>,
    residual_td: NiceTreeDecomposition,
}

impl ModulatorInstance {
    /// Fails with `WidthExceeded` unless tw(G - M) ≤ d is confirmed.
    pub fn new(graph: Graph, weights: Weights, modulator: VertexSet, bound: usize) -> Result<Self> {
        if weights.len() != graph.n() || modulator.capacity() != graph.n() {
            return Err(Error::input("weights and modulator must match the vertex count"));
        }
        let (residual, residual_map) = graph.induced(&modulator.complement());
        let residual_td = bounded_decomposition(&residual, bound)?;
        Ok(ModulatorInstance { graph, weights, modulator, bound, residual, residual_map, residual_td })
    }

    pub fn residual_width(&self) -> usize {
        self.residual_td.width()
    }

    fn members(&self) -> Vec<usize> {
        self.modulator.to_vec()
    }
}

/// Minimum-weight dominators of every subset of M.
#[derive(Clone, Debug)]
pub struct ModulatorTable {
    members: Vec<usize>,
    /// Representative vertex per deduplicated family member.
    reps: Vec<usize>,
    instance: SetCoverInstance,
    table: GeneralizedTable,
    n: usize,
}

impl ModulatorTable {
    fn mask(&self, a: &VertexSet) -> Option<u32> {
        let mut mask = 0u32;
        for v in a.iter() {
            mask |= 1 << self.members.binary_search(&v).ok()?;
        }
        Some(mask)
    }

    /// Dominator of `a` ⊆ M and its weight; `None` if `a` leaves M.
    pub fn get(&self, a: &VertexSet) -> Option<(VertexSet, u64)> {
        let mask = self.mask(a)?;
        let picks = self.table.subfamily(mask, &self.instance)?;
        let weight = self.table.weight(mask)?;
        Some((VertexSet::from_ids(self.n, picks.into_iter().map(|j| self.reps[j])), weight))
    }

    pub fn weight(&self, a: &VertexSet) -> Option<u64> {
        self.table.weight(self.mask(a)?)
    }
}

/// Set-cover reduction over the family {N[v] ∩ M}, one member per distinct
/// trace, represented by its lightest vertex (smallest id on ties).
pub fn modulator_table(g: &Graph, w: &Weights, m: &VertexSet) -> Result<ModulatorTable> {
    check_size(m)?;
    let members = m.to_vec();
    let mut best: std::collections::BTreeMap<u32, usize> = std::collections::BTreeMap::new();
    for v in g.vertices() {
        let trace = std::iter::once(v)
            .chain(g.neighbors(v).iter().copied())
            .filter_map(|u| members.binary_search(&u).ok())
            .fold(0u32, |acc, i| acc | 1 << i);
        if trace == 0 {
            continue;
        }
        let slot = best.entry(trace).or_insert(v);
        if w.of(v) < w.of(*slot) {
            *slot = v;
        }
    }
    let k = members.len();
    let sets: Vec<Vec<usize>> = best.keys().map(|&t| (0..k).filter(|&i| t >> i & 1 == 1).collect()).collect();
    let reps: Vec<usize> = best.values().copied().collect();
    let instance = SetCoverInstance::new(k, &sets, reps.iter().map(|&v| w.of(v)).collect())?;
    let table = solve_generalized_capped(&instance, MODULATOR_MAX)?;
    Ok(ModulatorTable { members, reps, instance, table, n: g.n() })
}

pub fn solve_generalized_modulator(inst: &ModulatorInstance) -> Result<ModulatorTable> {
    modulator_table(&inst.graph, &inst.weights, &inst.modulator)
}

/// Minimum-weight S dominating V \ M. For each L ⊆ M the gadget is G - M
/// plus an apex x of weight w(L) adjacent to N(L) \ M; an optimal gadget
/// solution containing x maps back to (S' \ x) ∪ L.
pub fn solve_decomposition_domination(inst: &ModulatorInstance) -> Result<DpSolution> {
    check_size(&inst.modulator)?;
    let g = &inst.graph;
    let h = &inst.residual;
    let x = h.n();
    let mut to_residual = vec![usize::MAX; g.n()];
    for (i, &v) in inst.residual_map.iter().enumerate() {
        to_residual[v] = i;
    }
    let td = inst.residual_td.with_vertices_in_every_bag(&[x]);
    let members = inst.members();
    let mut best: Option<DpSolution> = None;
    for mask in 0u64..1 << members.len() {
        let l = VertexSet::from_ids(g.n(), (0..members.len()).filter(|&i| mask >> i & 1 == 1).map(|i| members[i]));
        let apex_nbrs =
            VertexSet::from_ids(x, g.open_neighborhood_of(&l).difference(&inst.modulator).iter().map(|v| to_residual[v]));
        let gl = h.with_apex(&apex_nbrs);
        let mut wl: Vec<u64> = inst.residual_map.iter().map(|&v| inst.weights.of(v)).collect();
        wl.push(inst.weights.total(&l));
        let sol = solve_exact_tw(&gl, &Weights::new(wl), &td)?;
        let mut set = VertexSet::from_ids(g.n(), sol.set.iter().filter(|&v| v != x).map(|v| inst.residual_map[v]));
        if sol.set.contains(x) {
            set.union_with(&l);
        }
        let weight = inst.weights.total(&set);
        if best.as_ref().is_none_or(|b| weight < b.weight) {
            best = Some(DpSolution { set, weight });
        }
    }
    Ok(best.expect("the empty L is always tried"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulatorApprox {
    pub set: VertexSet,
    pub weight: u64,
    /// Optimal weight of dominating M; at most the optimum.
    pub modulator_weight: u64,
    /// Optimal weight of dominating V \ M; at most the optimum.
    pub rest_weight: u64,
}

pub fn approx2_twd(inst: &ModulatorInstance) -> Result<ModulatorApprox> {
    let table = solve_generalized_modulator(inst)?;
    let (s1, w1) = table.get(&inst.modulator).expect("every member of M dominates itself");
    let s2 = solve_decomposition_domination(inst)?;
    let set = s1.union(&s2.set);
    Ok(ModulatorApprox { weight: inst.weights.total(&set), set, modulator_weight: w1, rest_weight: s2.weight })
}

/// Exact minimum-weight dominating set by branching over A = S ∩ cover.
/// Independent vertices outside N(A) must join S; the remaining undominated
/// cover vertices are completed from the modulator table.
pub fn solve_exact_vc(g: &Graph, w: &Weights, cover: Option<&VertexSet>) -> Result<DpSolution> {
    let m = match cover {
        Some(c) => {
            if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| !c.contains(u) && !c.contains(v)) {
                return Err(Error::input(format!("edge ({u},{v}) is not covered")));
            }
            c.clone()
        }
        None => min_vertex_cover(g, MODULATOR_MAX)
            .ok_or_else(|| Error::resource("vertex cover size", MODULATOR_MAX + 1, MODULATOR_MAX))?,
    };
    check_size(&m)?;
    let table = modulator_table(g, w, &m)?;
    let members = m.to_vec();
    let outside = m.complement();
    let mut best: Option<DpSolution> = None;
    for mask in 0u64..1 << members.len() {
        let a = VertexSet::from_ids(g.n(), (0..members.len()).filter(|&i| mask >> i & 1 == 1).map(|i| members[i]));
        let mut forced = outside.difference(&g.open_neighborhood_of(&a));
        forced.union_with(&a);
        let rest = m.difference(&g.closed_neighborhood_of(&forced));
        let (extra, _) = table.get(&rest).expect("subsets of M are always coverable");
        let set = forced.union(&extra);
        let weight = w.total(&set);
        if best.as_ref().is_none_or(|b| weight < b.weight) {
            best = Some(DpSolution { set, weight });
        }
    }
    Ok(best.expect("the empty A is always tried"))
}

/// Some M with tw(G - M) ≤ d: a minimum vertex cover for d = 0, otherwise
/// the first deletion set by size and id order, for n ≤
/// [`MODULATOR_SEARCH_MAX_N`].
pub fn find_modulator(g: &Graph, d: usize) -> Result<VertexSet> {
    if d == 0 {
        return min_vertex_cover(g, MODULATOR_MAX)
            .ok_or_else(|| Error::resource("vertex cover size", MODULATOR_MAX + 1, MODULATOR_MAX));
    }
    let n = g.n();
    if n > MODULATOR_SEARCH_MAX_N {
        return Err(Error::input(format!(
            "no modulator given and n = {n} exceeds the search limit {MODULATOR_SEARCH_MAX_N}"
        )));
    }
    let fits = |m: &VertexSet| bounded_decomposition(&g.induced(&m.complement()).0, d).is_ok();
    for size in 0..=n {
        let mut pick: Vec<usize> = (0..size).collect();
        loop {
            let m = VertexSet::from_ids(n, pick.iter().copied());
            if fits(&m) {
                return Ok(m);
            }
            // Next combination in lexicographic order.
            let Some(i) = (0..size).rev().find(|&i| pick[i] < n - size + i) else { break };
            pick[i] += 1;
            for j in i + 1..size {
                pick[j] = pick[j - 1] + 1;
            }
        }
    }
    unreachable!("removing every vertex leaves treewidth 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::dominates_all;
    use crate::graph::gen::{complete, cycle, path, star};
    use crate::oracle::brute_min_dominating;

    fn bowtie() -> Graph {
        Graph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap()
    }

    #[test]
    fn generalized_examples() {
        let g = star(3);
        let t = modulator_table(&g, &Weights::unit(4), &VertexSet::from_ids(4, [0])).unwrap();
        assert_eq!(t.weight(&VertexSet::new(4)), Some(0));
        assert_eq!(t.weight(&VertexSet::from_ids(4, [0])), Some(1));
        let p = path(4);
        let w = Weights::new(vec![1, 0, 0, 1]);
        let m = VertexSet::from_ids(4, [0, 3]);
        let t = modulator_table(&p, &w, &m).unwrap();
        let (s, weight) = t.get(&m).unwrap();
        assert_eq!((s.to_vec(), weight), (vec![1, 2], 0));
    }

    #[test]
    fn decomposition_domination_examples() {
        let g = cycle(4);
        let inst = ModulatorInstance::new(g, Weights::unit(4), VertexSet::full(4), 0).unwrap();
        let s = solve_decomposition_domination(&inst).unwrap();
        assert_eq!((s.weight, s.set.len()), (0, 0));
        let inst = ModulatorInstance::new(bowtie(), Weights::unit(5), VertexSet::from_ids(5, [2]), 1).unwrap();
        // The shared vertex alone dominates the other four.
        let s = solve_decomposition_domination(&inst).unwrap();
        let none = VertexSet::new(5);
        let rest = VertexSet::from_ids(5, [0, 1, 3, 4]);
        let oracle = brute_min_dominating(&bowtie(), &Weights::unit(5), &rest, &none, &none).unwrap();
        assert_eq!((Some(s.weight), s.set.to_vec()), (oracle.weight, vec![2]));
        assert_eq!(s.weight, 1);
        let inst =
            ModulatorInstance::new(path(3), Weights::new(vec![1, 0, 1]), VertexSet::from_ids(3, [1]), 0).unwrap();
        let s = solve_decomposition_domination(&inst).unwrap();
        assert_eq!((s.weight, s.set.to_vec()), (0, vec![1]));
    }

    #[test]
    fn approx_examples() {
        let inst = ModulatorInstance::new(Graph::empty(3), Weights::unit(3), VertexSet::new(3), 0).unwrap();
        assert_eq!(approx2_twd(&inst).unwrap().weight, 3);
        let inst = ModulatorInstance::new(cycle(6), Weights::unit(6), VertexSet::from_ids(6, [0]), 2).unwrap();
        let a = approx2_twd(&inst).unwrap();
        assert!(dominates_all(&cycle(6), &a.set) && a.weight <= 4);
        let inst = ModulatorInstance::new(complete(4), Weights::unit(4), VertexSet::from_ids(4, [0]), 2).unwrap();
        assert!(approx2_twd(&inst).unwrap().weight <= 2);
    }

    #[test]
    fn width_is_checked() {
        let err = ModulatorInstance::new(complete(4), Weights::unit(4), VertexSet::new(4), 2).unwrap_err();
        assert_eq!(err, Error::WidthExceeded { bound: 2 });
    }

    #[test]
    fn exact_vc_examples() {
        assert_eq!(solve_exact_vc(&star(4), &Weights::unit(5), None).unwrap().weight, 1);
        assert_eq!(solve_exact_vc(&cycle(5), &Weights::unit(5), None).unwrap().weight, 2);
        let s = solve_exact_vc(&path(4), &Weights::new(vec![10, 1, 1, 10]), None).unwrap();
        assert_eq!(s.weight, 2);
        assert!(solve_exact_vc(&path(4), &Weights::unit(4), Some(&VertexSet::from_ids(4, [1]))).is_err());
    }

    #[test]
    fn random_against_oracle() {
        use crate::graph::gen::{gen_random, gen_weights};
        for seed in 0..25 {
            let g = gen_random(10, 0.3, seed).unwrap();
            let w = gen_weights(10, 5, seed);
            let m = find_modulator(&g, 1).unwrap();
            let inst = ModulatorInstance::new(g.clone(), w.clone(), m.clone(), 1).unwrap();
            let none = VertexSet::new(10);
            let rest = m.complement();
            let dd = solve_decomposition_domination(&inst).unwrap();
            assert_eq!(Some(dd.weight), brute_min_dominating(&g, &w, &rest, &none, &none).unwrap().weight);
            let table = solve_generalized_modulator(&inst).unwrap();
            let members = m.to_vec();
            for mask in 0u32..1 << members.len() {
                let a = VertexSet::from_ids(10, (0..members.len()).filter(|&i| mask >> i & 1 == 1).map(|i| members[i]));
                let (s, wt) = table.get(&a).unwrap();
                assert_eq!(Some(wt), brute_min_dominating(&g, &w, &a, &none, &none).unwrap().weight);
                assert_eq!(w.total(&s), wt);
            }
            let opt = crate::oracle::brute_min_ds(&g, &w).unwrap().weight.unwrap();
            assert_eq!(solve_exact_vc(&g, &w, None).unwrap().weight, opt);
        }
    }
}
