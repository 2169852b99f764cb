//! Approximation by solution size: guess a part U of an optimum with
//! |U| ≤ ⌊αk⌋ + 1, cover the rest greedily and keep the smallest result.
//!
//! For each U the gadget G_U is G - U plus an apex x adjacent to N(U) \ U.
//! Greedy set cover over the closed neighbourhoods of G_U returns S', which
//! maps back to (S' \ {x}) ∪ U.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{dominates_all, Graph, VertexSet};
use crate::setcover::{greedy_approx, SetCoverInstance};

/// Default cap on the size of the enumerated subsets.
pub const DEFAULT_SUBSET_LIMIT: usize = 6;
/// Cap on the number of enumerated subsets.
pub const MAX_ITERATIONS: usize = 5_000_000;

/// A rational α = num/den in [0, 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Alpha {
    pub num: u64,
    pub den: u64,
}

impl Alpha {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num >= den {
            return Err(Error::input(format!("alpha {num}/{den} is not in [0, 1)")));
        }
        Ok(Alpha { num, den })
    }

    pub fn zero() -> Self {
        Alpha { num: 0, den: 1 }
    }
}

impl FromStr for Alpha {
    type Err = Error;

    /// Accepts `p/q` or a plain integer numerator over 1, so only `0` passes.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::input(format!("alpha '{s}' is not of the form p/q"));
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        Alpha::new(p.parse().map_err(|_| bad())?, q.parse().map_err(|_| bad())?)
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TradeoffConfig {
    pub alpha: Alpha,
    pub k: usize,
    pub subset_limit: usize,
    /// Worker threads; 0 picks the available parallelism.
    pub threads: usize,
}

impl TradeoffConfig {
    pub fn new(alpha: Alpha, k: usize) -> Self {
        TradeoffConfig { alpha, k, subset_limit: DEFAULT_SUBSET_LIMIT, threads: 0 }
    }

    /// ⌊αk⌋ + 1.
    pub fn subset_size(&self) -> usize {
        (self.alpha.num as u128 * self.k as u128 / self.alpha.den as u128) as usize + 1
    }
}

/// A new best result found during the enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Improvement {
    pub subset: Vec<usize>,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TradeoffReport {
    pub subset_size: usize,
    pub iterations: usize,
    pub best_subset: Vec<usize>,
    /// Stopped because some U dominates the graph on its own.
    pub early_exit: bool,
    pub improvements: Vec<Improvement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TradeoffResult {
    pub set: VertexSet,
    pub size: usize,
    pub report: TradeoffReport,
}

/// G_U: vertices of G - U in id order, then the apex. Returns the gadget and
/// the original id of each non-apex vertex.
pub fn gadget(g: &Graph, u: &VertexSet) -> (Graph, Vec<usize>) {
    let (rest, map) = g.induced(&u.complement());
    let mut to_rest = vec![usize::MAX; g.n()];
    for (i, &v) in map.iter().enumerate() {
        to_rest[v] = i;
    }
    let nbrs = VertexSet::from_ids(rest.n(), g.open_neighborhood_of(u).difference(u).iter().map(|v| to_rest[v]));
    (rest.with_apex(&nbrs), map)
}

/// Greedy set cover over closed neighbourhoods, members in vertex order.
pub fn greedy_dominating_set(g: &Graph) -> VertexSet {
    let order: Vec<usize> = g.vertices().collect();
    greedy_in_order(g, &order)
}

fn greedy_in_order(g: &Graph, order: &[usize]) -> VertexSet {
    let sets: Vec<Vec<usize>> = order.iter().map(|&v| g.closed_neighborhood(v).to_vec()).collect();
    let inst = SetCoverInstance::unit(g.n(), &sets).expect("closed neighbourhoods lie in the vertex set");
    let (picked, _) = greedy_approx(&inst).expect("closed neighbourhoods cover every vertex");
    VertexSet::from_ids(g.n(), picked.into_iter().map(|j| order[j]))
}

/// S_U for one guessed U.
pub fn solve_for_subset(g: &Graph, u: &VertexSet) -> VertexSet {
    if dominates_all(g, u) {
        return u.clone();
    }
    let (gu, map) = gadget(g, u);
    let apex = map.len();
    // The apex goes first so that greedy ties fall to it.
    let order: Vec<usize> = std::iter::once(apex).chain(0..apex).collect();
    let picked = greedy_in_order(&gu, &order);
    let mut set = u.clone();
    for v in picked.iter().filter(|&v| v != apex) {
        set.insert(map[v]);
    }
    set
}

fn binomial_prefix(n: usize, s: usize) -> Option<usize> {
    let mut total = 0usize;
    let mut term = 1usize;
    for j in 0..=s.min(n) {
        total = total.checked_add(term)?;
        term = term.checked_mul(n - j)? / (j + 1);
    }
    Some(total)
}

/// All j-subsets of `0..n` in lexicographic order.
fn subsets_of_size(n: usize, j: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut pick: Vec<usize> = (0..j).collect();
    if j > n {
        return out;
    }
    loop {
        out.push(pick.clone());
        let Some(i) = (0..j).rev().find(|&i| pick[i] < n - j + i) else { break };
        pick[i] += 1;
        for t in i + 1..j {
            pick[t] = pick[t - 1] + 1;
        }
    }
    out
}

fn worker_count(cfg: &TradeoffConfig) -> usize {
    if cfg.threads > 0 {
        cfg.threads
    } else {
        std::thread::available_parallelism().map_or(1, |p| p.get())
    }
}

/// Smallest S_U over all U with |U| ≤ ⌊αk⌋ + 1, by size then enumeration
/// order. Subsets are enumerated by increasing size; the enumeration stops
/// after the first size at which some U dominates the graph.
pub fn approx_tradeoff(g: &Graph, cfg: &TradeoffConfig) -> Result<TradeoffResult> {
    let s = cfg.subset_size();
    if s > cfg.subset_limit {
        return Err(Error::resource("enumerated subset size", s, cfg.subset_limit));
    }
    let n = g.n();
    let count = binomial_prefix(n, s).unwrap_or(usize::MAX);
    if count > MAX_ITERATIONS {
        return Err(Error::resource("enumerated subsets", count, MAX_ITERATIONS));
    }
    let threads = worker_count(cfg);
    let mut best: Option<(VertexSet, Vec<usize>)> = None;
    let mut improvements = Vec::new();
    let mut iterations = 0;
    let mut early_exit = false;
    for j in 0..=s.min(n) {
        let level = subsets_of_size(n, j);
        iterations += level.len();
        let chunk = level.len().div_ceil(threads).max(1);
        let results: Vec<(VertexSet, bool)> = std::thread::scope(|scope| {
            let handles: Vec<_> = level
                .chunks(chunk)
                .map(|part| {
                    scope.spawn(move || {
                        part.iter()
                            .map(|u| {
                                let uset = VertexSet::from_ids(n, u.iter().copied());
                                let certified = dominates_all(g, &uset);
                                (solve_for_subset(g, &uset), certified)
                            })
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
        });
        for (u, (set, certified)) in level.into_iter().zip(results) {
            early_exit |= certified;
            if best.as_ref().is_none_or(|(b, _)| set.len() < b.len()) {
                improvements.push(Improvement { subset: u.clone(), size: set.len() });
                best = Some((set, u));
            }
        }
        if early_exit {
            break;
        }
    }
    let (set, best_subset) = best.expect("the empty subset is always enumerated");
    debug_assert!(dominates_all(g, &set));
    Ok(TradeoffResult {
        size: set.len(),
        set,
        report: TradeoffReport { subset_size: s, iterations, best_subset, early_exit, improvements },
    })
}
