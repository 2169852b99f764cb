//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use common::{compression_corpus, random_family, rng, small_corpus, Case};
use domset::approx_k::{approx_tradeoff, gadget, greedy_dominating_set, Alpha, TradeoffConfig};
use domset::compress::{
    cactus_kernel, compress, dominate_dangling_cactus, eliminate_with, path_dominate, rds_brute, rdsc_solve,
    EliminationOrder, RdsInstance, RdscCase, Reducer,
};
use domset::decomp::{balanced_partition, decompose, decompose_bounded, make_nice, verify, verify_raw, PARTITION_SLACK};
use domset::dp_tw::{approx2_tw, solve_exact_tw, solve_half_width};
use domset::fes::{fes_modulator, is_cactus, solve_exact_fes};
use domset::graph::gen::{cycle, gen_from_hitting_set, gen_from_set_cover, gen_random, path};
use domset::graph::{dominates_all, fes_number};
use domset::modulator::{approx2_twd, solve_exact_vc, ModulatorInstance};
use domset::oracle::{brute_min_dominating, brute_min_ds, brute_min_hitting_set, brute_min_set_cover};
use domset::setcover::{harmonic, solve_generalized, SetCoverInstance};
use domset::{Graph, VertexSet, Weights};
use rand::Rng;

/// Violations recorded by one criterion; at most a few are kept verbatim.
#[derive(Default)]
struct Tally {
    checked: usize,
    violations: usize,
    examples: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.examples.len() < 3 {
                self.examples.push(what());
            }
        }
    }

    fn summary(&self, detail: &str) -> (bool, String) {
        let mut s = format!("{} checks, {} violations; {detail}", self.checked, self.violations);
        for e in &self.examples {
            write!(s, "\n      {e}").unwrap();
        }
        (self.violations == 0, s)
    }
}

fn optimum(c: &Case) -> u64 {
    brute_min_ds(&c.graph, &c.weights).unwrap().weight.unwrap()
}

fn exactness() -> (bool, String) {
    let corpus = small_corpus();
    let weighted = corpus.iter().filter(|c| !c.weights.is_unit()).count();
    let mut t = Tally::default();
    for c in &corpus {
        let (g, w) = (&c.graph, &c.weights);
        let opt = optimum(c);
        let td = decompose(g).unwrap().nice;
        let results = [
            ("tw", solve_exact_tw(g, w, &td).map(|s| s.weight)),
            ("half", solve_half_width(g, w, &td, &VertexSet::full(g.n())).map(|s| s.weight)),
            ("vc", solve_exact_vc(g, w, None).map(|s| s.weight)),
            ("fes", solve_exact_fes(g, w).map(|s| s.weight)),
        ];
        for (algo, r) in results {
            t.check(r == Ok(opt), || format!("{algo} on {}: {r:?} vs {opt}", c.name));
        }
    }
    let ok_size = corpus.len() >= 500 && weighted >= 50;
    let (ok, s) = t.summary(&format!("{} graphs, {weighted} weighted", corpus.len()));
    (ok && ok_size, s)
}

fn approximation() -> (bool, String) {
    let mut t = Tally::default();
    let corpus = small_corpus();
    for c in &corpus {
        let (g, w) = (&c.graph, &c.weights);
        let opt = optimum(c);
        let td = decompose(g).unwrap().nice;
        let a = approx2_tw(g, w, &td).unwrap();
        t.check(dominates_all(g, &a.set), || format!("approx2_tw on {} does not dominate", c.name));
        t.check(a.weight <= 2 * opt, || format!("approx2_tw on {}: {} > 2*{opt}", c.name, a.weight));
        t.check(a.first_weight <= opt && a.second_weight <= opt, || format!("approx2_tw halves on {}", c.name));
        let m = fes_modulator(g).modulator;
        let inst = ModulatorInstance::new(g.clone(), w.clone(), m, 2).unwrap();
        let b = approx2_twd(&inst).unwrap();
        t.check(dominates_all(g, &b.set), || format!("approx2_twd on {} does not dominate", c.name));
        t.check(b.weight <= 2 * opt, || format!("approx2_twd on {}: {} > 2*{opt}", c.name, b.weight));
        t.check(b.modulator_weight <= opt && b.rest_weight <= opt, || format!("approx2_twd halves on {}", c.name));
    }
    t.summary(&format!("{} graphs", corpus.len()))
}

fn fes_modulators() -> (bool, String) {
    let mut t = Tally::default();
    let mut graphs = 0;
    for seed in 0..520u64 {
        let n = 10 + seed as usize % 31;
        let p = [0.05, 0.08, 0.1, 0.15, 0.2][seed as usize % 5];
        let g = gen_random(n, p, seed).unwrap();
        graphs += 1;
        let r = fes_modulator(&g);
        let k = fes_number(&g);
        t.check(r.order.len() <= k / 2, || format!("seed {seed}: |M| = {} > {}", r.order.len(), k / 2));
        t.check(is_cactus(&g.without_vertices(&r.modulator)), || format!("seed {seed}: G - M is not a cactus"));
        let mut seen = BTreeSet::new();
        for d in &r.deactivation {
            let fresh = d.edges.iter().filter(|e| seen.insert(**e)).count();
            t.check(fresh >= 2, || format!("seed {seed}: vertex {} deactivates {fresh} edges", d.vertex));
        }
    }
    t.summary(&format!("{graphs} graphs"))
}

fn kernel_bounds() -> (bool, String) {
    let mut t = Tally::default();
    let mut graphs: Vec<(String, Graph)> = small_corpus().into_iter().map(|c| (c.name, c.graph)).collect();
    graphs.extend(compression_corpus().into_iter().map(|c| (c.name, c.graph)));
    for seed in 0..200u64 {
        graphs.push((format!("gnp(40, seed={seed})"), gen_random(40, 0.06, seed).unwrap()));
    }
    for (name, g) in &graphs {
        let k = fes_number(g);
        let fifo = eliminate_with(g, EliminationOrder::Fifo);
        let lifo = eliminate_with(g, EliminationOrder::Lifo);
        let edges: usize = fifo.kernel_edges.len();
        t.check(fifo.kernel_vertices.len() <= 2 * k, || format!("{name}: |V(H)| = {}", fifo.kernel_vertices.len()));
        t.check(edges <= 3 * k, || format!("{name}: |E(H)| = {edges} > {}", 3 * k));
        t.check(fifo.kernel_signature() == lifo.kernel_signature(), || format!("{name}: orders disagree"));
    }
    t.summary(&format!("{} graphs", graphs.len()))
}

fn compression() -> (bool, String) {
    let mut t = Tally::default();
    let corpus = compression_corpus();
    for c in &corpus {
        let g = &c.graph;
        let comp = compress(g).unwrap();
        let k = comp.cycle_rank;
        let h = &comp.instance.graph;
        t.check(h.m() <= 27 * k, || format!("{}: m' = {} > 27k", c.name, h.m()));
        t.check(h.n() <= 26 * k, || format!("{}: n' = {} > 26k", c.name, h.n()));
        t.check(comp.high_degree_count() <= 2 * k, || format!("{}: too many branch vertices", c.name));
        let rest = rds_brute(&comp.instance).unwrap();
        let total = comp.partial.len() as u64 + rest.weight.unwrap();
        let opt = optimum(c);
        t.check(total == opt, || format!("{}: |S| + OPT' = {total}, OPT = {opt}", c.name));
        let lifted = comp.lift(&rest.witness).unwrap();
        t.check(dominates_all(g, &lifted) && lifted.len() as u64 == opt, || format!("{}: lift", c.name));
    }
    let c12 = compress(&cycle(12)).unwrap();
    let total = c12.partial.len() as u64 + rds_brute(&c12.instance).unwrap().weight.unwrap();
    t.check(total == 4, || format!("C12 total {total}"));
    let (ok, s) = t.summary(&format!("{} connected graphs, C12 total {total}", corpus.len()));
    (ok && corpus.len() >= 300, s)
}

/// Every minimum solution of a small relaxed instance.
fn all_optima(i: &RdsInstance) -> Vec<VertexSet> {
    let n = i.graph.n();
    let best = rds_brute(i).unwrap().weight.unwrap() as u32;
    (0u32..1 << n)
        .filter(|m| m.count_ones() == best)
        .map(|m| VertexSet::from_ids(n, (0..n).filter(|&v| m >> v & 1 == 1)))
        .filter(|s| i.is_solution(s))
        .collect()
}

fn preserves_lifted_optimum(before: &RdsInstance, red: &Reducer) -> bool {
    let (after, map) = red.instance();
    let delta: usize = red.trace().iter().map(|s| s.delta).sum();
    let opt = rds_brute(before).unwrap().weight.unwrap();
    if opt != rds_brute(&after).unwrap().weight.unwrap() + delta as u64 {
        return false;
    }
    all_optima(&after).into_iter().all(|sol| {
        let stable = VertexSet::from_ids(red.n(), sol.iter().map(|v| map[v]));
        red.lift(&stable).is_ok_and(|l| before.is_solution(&l) && l.len() as u64 == opt)
    })
}

fn small_subsets(n: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() <= 3).map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect()).collect()
}

fn reductions() -> (bool, String) {
    let mut t = Tally::default();
    // Cycles and paths against constrained brute force.
    for len in 2..=10usize {
        for closed in [false, true] {
            if closed && len < 3 {
                continue;
            }
            let g = if closed { cycle(len) } else { path(len) };
            let strand: Vec<usize> = (0..len).collect();
            let subs = small_subsets(len);
            for u in &subs {
                for ex in subs.iter().filter(|ex| ex.iter().all(|x| !u.contains(x))) {
                    let forced = VertexSet::from_ids(len, u.iter().copied());
                    let exempt = VertexSet::from_ids(len, ex.iter().copied());
                    for tv in 0..len {
                        for case in [RdscCase::Include, RdscCase::Exclude] {
                            let got = rdsc_solve(&strand, closed, &forced, &exempt, tv, case);
                            if case == RdscCase::Exclude && forced.contains(tv) {
                                t.check(got.is_err(), || "exclude with t in U accepted".into());
                                continue;
                            }
                            let mut targets = exempt.complement();
                            let mut f_in = forced.clone();
                            let mut f_out = VertexSet::new(len);
                            match case {
                                RdscCase::Include => {
                                    f_in.insert(tv);
                                }
                                RdscCase::Exclude => {
                                    targets.remove(tv);
                                    f_out.insert(tv);
                                }
                            }
                            let o = brute_min_dominating(&g, &Weights::unit(len), &targets, &f_in, &f_out).unwrap();
                            let fine = got.as_ref().is_ok_and(|s| {
                                let set = VertexSet::from_ids(len, s.iter().copied());
                                Some(s.len() as u64) == o.weight
                                    && f_in.is_subset(&set)
                                    && set.is_disjoint(&f_out)
                                    && targets.iter().all(|x| {
                                        set.contains(x) || g.neighbors(x).iter().any(|&y| set.contains(y))
                                    })
                            });
                            t.check(fine, || format!("rdsc len {len} closed {closed} U {u:?} W {ex:?} t {tv} {case:?}"));
                        }
                    }
                }
            }
        }
        for mask in 0u32..1 << len {
            let exempt = VertexSet::from_ids(len, (0..len).filter(|&v| mask >> v & 1 == 1));
            let inst = RdsInstance::new(path(len), exempt).unwrap();
            let s = path_dominate(&inst).unwrap();
            let opt = rds_brute(&inst).unwrap().weight.unwrap();
            t.check(inst.is_solution(&s) && s.len() as u64 == opt, || format!("path_dominate P{len} W {mask:b}"));
        }
    }
    // Single rules on instances with at most 14 vertices.
    let mut fired = BTreeSet::new();
    for seed in 0..200u64 {
        let g = domset::graph::gen::gen_subdivided(14, seed);
        let n = g.n();
        let mut r = rng(seed);
        let exempt = VertexSet::from_ids(n, (0..n).filter(|_| r.gen_bool(0.45)));
        let before = RdsInstance::new(g, exempt).unwrap();
        let base = Reducer::new(&before);
        let mut attempts: Vec<Box<dyn Fn(&mut Reducer) -> domset::Result<()>>> = Vec::new();
        for v in 0..n {
            attempts.push(Box::new(move |r: &mut Reducer| r.leaf_reduce(v)));
        }
        for &(a, b) in before.graph.edges() {
            attempts.push(Box::new(move |r: &mut Reducer| r.drop_exempt_edge(a, b)));
        }
        for chain in base.chains() {
            for len in 5..=7 {
                for w in chain.windows(len) {
                    let w = w.to_vec();
                    if len == 5 {
                        let w5 = w.clone();
                        attempts.push(Box::new(move |r: &mut Reducer| r.wfree_path_reduce(&w5)));
                    }
                    attempts.push(Box::new(move |r: &mut Reducer| r.exempt_path_reduce(&w)));
                }
            }
        }
        for f in attempts {
            let mut red = base.clone();
            if f(&mut red).is_ok() {
                let rule = red.trace()[0].rule;
                fired.insert(format!("{rule:?}"));
                t.check(preserves_lifted_optimum(&before, &red), || format!("{rule:?} on seed {seed}"));
            }
        }
        let mut red = base.clone();
        if red.cleanup().is_ok() && red.induced_path_reduce().is_ok() {
            t.check(preserves_lifted_optimum(&before, &red), || format!("cleanup chain on seed {seed}"));
        }
    }
    // Dangling cacti: minimum within the cactus and extendable to an optimum.
    for seed in 0..200u64 {
        let g = domset::graph::gen::gen_subdivided(16, seed + 5000);
        let n = g.n();
        let unit = Weights::unit(n);
        let opt = brute_min_ds(&g, &unit).unwrap().weight.unwrap();
        for c in cactus_kernel(&g).unwrap().cacti {
            let s = dominate_dangling_cactus(&g, &c).unwrap();
            let inside = VertexSet::from_ids(n, c.vertices.iter().copied());
            let mut targets = inside.clone();
            targets.remove(c.root);
            let local = brute_min_dominating(&g, &unit, &targets, &VertexSet::new(n), &inside.complement()).unwrap();
            t.check(Some(s.len() as u64) == local.weight, || format!("dangling cactus size, seed {seed}"));
            let ext = brute_min_dominating(&g, &unit, &VertexSet::full(n), &s, &VertexSet::new(n)).unwrap();
            t.check(ext.weight == Some(opt), || format!("dangling cactus extension, seed {seed}"));
        }
    }
    let all_rules = ["Leaf", "Isolated", "ExemptEdge", "WFree", "B1", "B2", "B3"];
    let missing: Vec<&str> = all_rules.iter().copied().filter(|r| !fired.contains(*r)).collect();
    let (ok, s) = t.summary(&format!("rules exercised: {}", fired.into_iter().collect::<Vec<_>>().join(",")));
    (ok && missing.is_empty(), s)
}

fn set_cover_table() -> (bool, String) {
    let mut t = Tally::default();
    let mut instances = 0;
    for seed in 0..400u64 {
        let mut r = rng(seed + 77);
        let universe = 1 + seed as usize % 8;
        let m = r.gen_range(1..=12);
        let family = random_family(&mut r, universe, m);
        let weights: Vec<u64> = (0..m).map(|_| r.gen_range(0..=6)).collect();
        let inst = SetCoverInstance::new(universe, &family, weights.clone()).unwrap();
        let table = solve_generalized(&inst).unwrap();
        instances += 1;
        // Cheapest subfamily per exact union, then closed upwards to covers.
        let full = 1usize << universe;
        let mut best = vec![u64::MAX; full];
        for pick in 0u32..1 << m {
            let (mut union, mut w) = (0usize, 0u64);
            for j in (0..m).filter(|&j| pick >> j & 1 == 1) {
                union |= family[j].iter().fold(0, |a, &e| a | 1 << e);
                w += weights[j];
            }
            best[union] = best[union].min(w);
        }
        for bit in 0..universe {
            for a in (0..full).rev() {
                if a >> bit & 1 == 0 {
                    best[a] = best[a].min(best[a | 1 << bit]);
                }
            }
        }
        for a in 0..full {
            let expect = (best[a] != u64::MAX).then_some(best[a]);
            let got = table.weight(a as u32);
            t.check(got == expect, || format!("seed {seed} A {a:b}: {got:?} vs {expect:?}"));
            if let Some(picks) = table.subfamily(a as u32, &inst) {
                let union = picks.iter().flat_map(|&j| family[j].iter()).fold(0usize, |x, &e| x | 1 << e);
                let w: u64 = picks.iter().map(|&j| weights[j]).sum();
                t.check(union & a == a && Some(w) == got, || format!("seed {seed} A {a:b}: bad subfamily"));
            }
            for bit in (0..universe).filter(|&b| a >> b & 1 == 0) {
                let bigger = table.weight((a | 1 << bit) as u32);
                let mono = match (got, bigger) {
                    (Some(x), Some(y)) => x <= y,
                    (None, Some(_)) => false,
                    _ => true,
                };
                t.check(mono, || format!("seed {seed}: not monotone at {a:b} + {bit}"));
            }
        }
    }
    t.summary(&format!("{instances} families, all subsets"))
}

fn tradeoff() -> (bool, String) {
    let mut t = Tally::default();
    let mut bounded = 0;
    let alphas = [Alpha::zero(), Alpha::new(1, 4).unwrap(), Alpha::new(1, 2).unwrap(), Alpha::new(3, 4).unwrap()];
    let corpus = small_corpus();
    for c in corpus.iter().filter(|c| c.weights.is_unit()) {
        let g = &c.graph;
        let witness = brute_min_ds(g, &c.weights).unwrap();
        let opt = witness.weight.unwrap() as usize;
        for (i, &alpha) in alphas.iter().enumerate() {
            let k = if i % 2 == 0 { opt } else { opt + 1 };
            let mut cfg = TradeoffConfig::new(alpha, k);
            cfg.subset_limit = 16;
            let r = approx_tradeoff(g, &cfg).unwrap();
            t.check(dominates_all(g, &r.set) && r.size == r.set.len(), || format!("{}: not dominating", c.name));
            if opt <= cfg.subset_size() {
                bounded += 1;
                let (gu, _) = gadget(g, &witness.witness);
                let delta = gu.vertices().map(|v| gu.degree(v) + 1).max().unwrap_or(0);
                let bound = opt as f64 + harmonic(delta);
                t.check(r.size as f64 <= bound + 1e-9, || format!("{}: {} > {bound}", c.name, r.size));
            }
            if alpha == Alpha::zero() {
                let greedy = greedy_dominating_set(g).len();
                t.check(r.size <= greedy, || format!("{}: α=0 gives {} > greedy {greedy}", c.name, r.size));
            }
        }
    }
    t.summary(&format!("{bounded} runs within the enumerated-optimum regime"))
}

/// All families of one to four distinct non-empty subsets of `0..universe`.
fn families(universe: usize) -> Vec<Vec<Vec<usize>>> {
    let subsets: Vec<Vec<usize>> =
        (1u32..1 << universe).map(|m| (0..universe).filter(|&e| m >> e & 1 == 1).collect()).collect();
    let mut out = Vec::new();
    let mut frontier: Vec<(usize, Vec<Vec<usize>>)> = vec![(0, Vec::new())];
    for _ in 0..4 {
        let mut next = Vec::new();
        for (start, fam) in &frontier {
            for (i, s) in subsets.iter().enumerate().skip(*start) {
                let mut f = fam.clone();
                f.push(s.clone());
                out.push(f.clone());
                next.push((i + 1, f));
            }
        }
        frontier = next;
    }
    out
}

fn gadgets() -> (bool, String) {
    let mut t = Tally::default();
    for universe in 1..=4 {
        for fam in families(universe) {
            let hs = brute_min_hitting_set(universe, &fam).unwrap().weight.unwrap();
            let g = gen_from_hitting_set(universe, &fam).unwrap();
            let ds = brute_min_ds(&g, &Weights::unit(g.n())).unwrap().weight.unwrap();
            t.check(ds == hs + 1, || format!("hitting set |U|={universe} {fam:?}: {ds} vs {hs}+1"));
            if let Some(sc) = brute_min_set_cover(universe, &fam).unwrap().weight {
                let g = gen_from_set_cover(universe, &fam).unwrap();
                let ds = brute_min_ds(&g, &Weights::unit(g.n())).unwrap().weight.unwrap();
                t.check(ds == sc + 1, || format!("set cover |U|={universe} {fam:?}: {ds} vs {sc}+1"));
            }
        }
    }
    t.summary("all families with |U| ≤ 4, 1 ≤ |F| ≤ 4")
}

fn structure() -> (bool, String) {
    let mut t = Tally::default();
    let mut graphs: Vec<(String, Graph)> = small_corpus().into_iter().map(|c| (c.name, c.graph)).collect();
    for seed in 0..100u64 {
        graphs.push((format!("gnp(30, seed={seed})"), gen_random(30, 0.1, seed).unwrap()));
    }
    let mut max_slack = 0;
    for (name, g) in &graphs {
        let d = decompose(g).unwrap();
        t.check(verify_raw(&d.raw, g).is_empty(), || format!("{name}: raw decomposition invalid"));
        t.check(verify(&d.nice, g).is_empty(), || format!("{name}: nice decomposition invalid"));
        let nice = make_nice(g, &d.raw).unwrap();
        t.check(nice.width() == d.raw.width(), || format!("{name}: make_nice changed the width"));
        t.check(verify(&nice, g).is_empty(), || format!("{name}: make_nice output invalid"));
        let wide = d.nice.with_vertices_in_every_bag(&[0]);
        if g.n() > 0 {
            t.check(verify(&wide, g).is_empty(), || format!("{name}: widened decomposition invalid"));
        }
        for bound in 1..=2 {
            if let Ok(b) = decompose_bounded(g, bound) {
                t.check(verify(&b, g).is_empty() && b.width() <= bound, || format!("{name}: bounded({bound})"));
            }
        }
        let p = balanced_partition(g, &d.nice).unwrap();
        max_slack = max_slack.max(p.slack);
        t.check(p.slack <= PARTITION_SLACK, || format!("{name}: slack {}", p.slack));
        t.check(p.first.union(&p.second).len() == g.n() && p.first.is_disjoint(&p.second), || {
            format!("{name}: not a partition")
        });
        for node in d.nice.nodes() {
            let a = node.bag.iter().filter(|&&v| p.first.contains(v)).count();
            let b = node.bag.len() - a;
            t.check(a.max(b) <= p.bound(), || format!("{name}: bag side {} > {}", a.max(b), p.bound()));
        }
    }
    t.summary(&format!("{} graphs, max slack {max_slack}", graphs.len()))
}

type Criterion = (&'static str, fn() -> (bool, String));

fn main() {
    // `cargo test` passes libtest flags; a name filter other than ours skips
    // the suite.
    let args: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !args.is_empty() && !args.iter().any(|a| "acceptance".contains(a.as_str())) {
        return;
    }
    let criteria: [Criterion; 10] = [
        ("1 exactness against the oracle", exactness),
        ("2 2-approximation contracts", approximation),
        ("3 feedback-edge modulators", fes_modulators),
        ("4 elimination kernel bounds", kernel_bounds),
        ("5 compression bounds and optimum", compression),
        ("6 cycle, path and single-rule reductions", reductions),
        ("7 set cover table", set_cover_table),
        ("8 size-parameter tradeoff", tradeoff),
        ("9 lower-bound gadgets", gadgets),
        ("10 structural verifiers", structure),
    ];
    let results: Vec<(bool, String, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, f)| {
                s.spawn(move || {
                    let start = Instant::now();
                    let (ok, detail) = f();
                    (ok, detail, start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap_or((false, "panicked".into(), 0.0))).collect()
    });
    let mut failed = 0;
    for ((name, _), (ok, detail, secs)) in criteria.iter().zip(&results) {
        println!("{} criterion {name} ({secs:.1}s): {detail}", if *ok { "PASS" } else { "FAIL" });
        failed += usize::from(!ok);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
