//! Exhaustive solvers used as ground truth.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, Weights};

/// Largest graph the domination oracle enumerates.
pub const ORACLE_MAX_N: usize = 22;
/// Largest universe or family the hitting-set and set-cover oracles accept.
pub const ORACLE_MAX_SETS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    /// `None` when no set satisfies the constraints.
    pub weight: Option<u64>,
    pub witness: VertexSet,
    /// Number of feasible sets attaining the optimum.
    pub optima: u64,
}

impl OracleResult {
    pub fn is_feasible(&self) -> bool {
        self.weight.is_some()
    }
}

/// Minimum-weight S with `forced_in` ⊆ S, S ∩ `forbidden` = ∅ and every
/// target dominated. Enumerates the free vertices in Gray-code order with
/// per-target domination counters.
pub fn brute_min_dominating(
    g: &Graph,
    w: &Weights,
    targets: &VertexSet,
    forced_in: &VertexSet,
    forbidden: &VertexSet,
) -> Result<OracleResult> {
    let n = g.n();
    if n > ORACLE_MAX_N {
        return Err(Error::resource("oracle vertex count", n, ORACLE_MAX_N));
    }
    if !forced_in.is_disjoint(forbidden) {
        return Ok(OracleResult { weight: None, witness: VertexSet::new(n), optima: 0 });
    }
    let mut count = vec![0u32; n];
    let mut undominated = targets.iter().filter(|&t| t < n).count();
    let mut cur = forced_in.clone();
    let mut weight: u64 = 0;
    let add = |v: usize, count: &mut [u32], undominated: &mut usize, sign: bool| {
        for u in std::iter::once(v).chain(g.neighbors(v).iter().copied()) {
            if targets.contains(u) {
                if sign {
                    if count[u] == 0 {
                        *undominated -= 1;
                    }
                    count[u] += 1;
                } else {
                    count[u] -= 1;
                    if count[u] == 0 {
                        *undominated += 1;
                    }
                }
            }
        }
    };
    for v in forced_in.iter() {
        add(v, &mut count, &mut undominated, true);
        weight += w.of(v);
    }
    let free: Vec<usize> = (0..n).filter(|&v| !forced_in.contains(v) && !forbidden.contains(v)).collect();
    let mut best: Option<u64> = None;
    let mut witness = VertexSet::new(n);
    let mut optima = 0u64;
    let mut consider = |weight: u64, undominated: usize, cur: &VertexSet| {
        if undominated != 0 {
            return;
        }
        match best {
            Some(b) if weight > b => {}
            Some(b) if weight == b => optima += 1,
            _ => {
                best = Some(weight);
                witness = cur.clone();
                optima = 1;
            }
        }
    };
    consider(weight, undominated, &cur);
    for i in 1u64..(1u64 << free.len()) {
        let v = free[i.trailing_zeros() as usize];
        if cur.contains(v) {
            cur.remove(v);
            weight -= w.of(v);
            add(v, &mut count, &mut undominated, false);
        } else {
            cur.insert(v);
            weight += w.of(v);
            add(v, &mut count, &mut undominated, true);
        }
        consider(weight, undominated, &cur);
    }
    Ok(OracleResult { weight: best, witness, optima })
}

/// Unconstrained minimum-weight dominating set.
pub fn brute_min_ds(g: &Graph, w: &Weights) -> Result<OracleResult> {
    let n = g.n();
    brute_min_dominating(g, w, &VertexSet::full(n), &VertexSet::new(n), &VertexSet::new(n))
}

/// Size of a minimum dominating set of the non-exempt vertices.
pub fn brute_min_rds(g: &Graph, exempt: &VertexSet) -> Result<OracleResult> {
    let n = g.n();
    let targets = exempt.complement();
    let targets = VertexSet::from_ids(n, targets.iter().filter(|&v| v < n));
    brute_min_dominating(g, &Weights::unit(n), &targets, &VertexSet::new(n), &VertexSet::new(n))
}

fn check_family(universe: usize, family: &[Vec<usize>]) -> Result<Vec<u32>> {
    if universe > ORACLE_MAX_SETS {
        return Err(Error::resource("oracle universe size", universe, ORACLE_MAX_SETS));
    }
    if family.len() > ORACLE_MAX_SETS {
        return Err(Error::resource("oracle family size", family.len(), ORACLE_MAX_SETS));
    }
    family
        .iter()
        .map(|f| {
            f.iter().try_fold(0u32, |acc, &e| {
                if e >= universe {
                    Err(Error::input(format!("element {e} outside universe of size {universe}")))
                } else {
                    Ok(acc | 1 << e)
                }
            })
        })
        .collect()
}

/// Minimum number of universe elements meeting every family member.
pub fn brute_min_hitting_set(universe: usize, family: &[Vec<usize>]) -> Result<OracleResult> {
    let masks = check_family(universe, family)?;
    let mut best: Option<(u32, u32)> = None;
    let mut optima = 0;
    for s in 0u32..(1u32 << universe) {
        if masks.iter().all(|&f| f & s != 0) {
            let size = s.count_ones();
            match best {
                Some((b, _)) if size > b => {}
                Some((b, _)) if size == b => optima += 1,
                _ => {
                    best = Some((size, s));
                    optima = 1;
                }
            }
        }
    }
    Ok(mask_result(universe, best, optima))
}

/// Minimum number of family members whose union is the universe.
pub fn brute_min_set_cover(universe: usize, family: &[Vec<usize>]) -> Result<OracleResult> {
    let masks = check_family(universe, family)?;
    let full = if universe == 32 { u32::MAX } else { (1u32 << universe) - 1 };
    let mut best: Option<(u32, u32)> = None;
    let mut optima = 0;
    for s in 0u32..(1u32 << family.len()) {
        let cover = masks.iter().enumerate().filter(|&(i, _)| s >> i & 1 == 1).fold(0, |a, (_, &f)| a | f);
        if cover == full {
            let size = s.count_ones();
            match best {
                Some((b, _)) if size > b => {}
                Some((b, _)) if size == b => optima += 1,
                _ => {
                    best = Some((size, s));
                    optima = 1;
                }
            }
        }
    }
    Ok(mask_result(family.len(), best, optima))
}

fn mask_result(cap: usize, best: Option<(u32, u32)>, optima: u64) -> OracleResult {
    match best {
        Some((size, s)) => OracleResult {
            weight: Some(u64::from(size)),
            witness: VertexSet::from_ids(cap, (0..cap).filter(|&i| s >> i & 1 == 1)),
            optima,
        },
        None => OracleResult { weight: None, witness: VertexSet::new(cap), optima: 0 },
    }
}
