//! Weighted set cover: the all-subsets table and the greedy approximation.

use crate::error::{Error, Result};
use crate::graph::VertexSet;

/// Default cap on the universe size of [`solve_generalized`].
pub const GENERALIZED_MAX_UNIVERSE: usize = 25;

#[derive(Clone, Debug)]
pub struct SetCoverInstance {
    pub universe: usize,
    pub sets: Vec<VertexSet>,
    pub weights: Vec<u64>,
}

impl SetCoverInstance {
    pub fn new(universe: usize, sets: &[Vec<usize>], weights: Vec<u64>) -> Result<Self> {
        if sets.len() != weights.len() {
            return Err(Error::input("one weight per family member required"));
        }
        let sets = sets
            .iter()
            .map(|s| VertexSet::try_from_ids(universe, s.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Ok(SetCoverInstance { universe, sets, weights })
    }

    pub fn unit(universe: usize, sets: &[Vec<usize>]) -> Result<Self> {
        Self::new(universe, sets, vec![1; sets.len()])
    }

    pub fn is_coverable(&self) -> bool {
        let mut all = VertexSet::new(self.universe);
        for s in &self.sets {
            all.union_with(s);
        }
        all.len() == self.universe
    }
}

/// Minimum cover weight of every subset of the universe, as bitmasks.
#[derive(Clone, Debug)]
pub struct GeneralizedTable {
    universe: usize,
    weight: Vec<u64>,
    choice: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl GeneralizedTable {
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// `None` when `subset` cannot be covered.
    pub fn weight(&self, subset: u32) -> Option<u64> {
        let w = self.weight[subset as usize];
        (w != u64::MAX).then_some(w)
    }

    /// Indices of a minimum-weight subfamily covering `subset`.
    pub fn subfamily(&self, mut subset: u32, inst: &SetCoverInstance) -> Option<Vec<usize>> {
        self.weight(subset)?;
        let mut out = Vec::new();
        while subset != 0 {
            let j = self.choice[subset as usize];
            out.push(j as usize);
            subset &= !mask_of(&inst.sets[j as usize]);
        }
        out.sort_unstable();
        out.dedup();
        Some(out)
    }
}

fn mask_of(s: &VertexSet) -> u32 {
    s.iter().fold(0u32, |a, e| a | 1 << e)
}

pub fn solve_generalized(inst: &SetCoverInstance) -> Result<GeneralizedTable> {
    solve_generalized_capped(inst, GENERALIZED_MAX_UNIVERSE)
}

/// entry(A) = min over members F meeting A of w(F) + entry(A \ F), entry(∅) = 0.
pub fn solve_generalized_capped(inst: &SetCoverInstance, cap: usize) -> Result<GeneralizedTable> {
    if inst.universe > cap.min(31) {
        return Err(Error::resource("set cover universe", inst.universe, cap.min(31)));
    }
    let size = 1usize << inst.universe;
    let masks: Vec<u32> = inst.sets.iter().map(mask_of).collect();
    let mut weight = vec![u64::MAX; size];
    let mut choice = vec![NONE; size];
    weight[0] = 0;
    for a in 1..size as u32 {
        let mut best = u64::MAX;
        let mut arg = NONE;
        for (j, &f) in masks.iter().enumerate() {
            if f & a == 0 {
                continue;
            }
            let rest = weight[(a & !f) as usize];
            if rest == u64::MAX {
                continue;
            }
            let cand = rest.saturating_add(inst.weights[j]);
            if cand < best {
                best = cand;
                arg = j as u32;
            }
        }
        weight[a as usize] = best;
        choice[a as usize] = arg;
    }
    Ok(GeneralizedTable { universe: inst.universe, weight, choice })
}

/// Classic greedy: repeatedly take the member with the lowest weight per
/// newly covered element, smallest index on ties.
pub fn greedy_approx(inst: &SetCoverInstance) -> Result<(Vec<usize>, u64)> {
    if !inst.is_coverable() {
        return Err(Error::input("family does not cover the universe"));
    }
    let mut uncovered = VertexSet::full(inst.universe);
    let mut picked = Vec::new();
    let mut total = 0u64;
    while !uncovered.is_empty() {
        let mut best: Option<(usize, u64, usize)> = None;
        for (j, s) in inst.sets.iter().enumerate() {
            let gain = s.iter().filter(|&e| uncovered.contains(e)).count();
            if gain == 0 {
                continue;
            }
            let w = inst.weights[j];
            // w / gain < bw / bgain, compared without division.
            let better = match best {
                None => true,
                Some((_, bw, bgain)) => u128::from(w) * (bgain as u128) < u128::from(bw) * (gain as u128),
            };
            if better {
                best = Some((j, w, gain));
            }
        }
        let (j, w, _) = best.expect("coverable instance always has a useful member");
        uncovered.difference_with(&inst.sets[j]);
        picked.push(j);
        total += w;
    }
    picked.sort_unstable();
    Ok((picked, total))
}

/// H(s) = 1 + 1/2 + ... + 1/s.
pub fn harmonic(s: usize) -> f64 {
    (1..=s).map(|i| 1.0 / i as f64).sum()
}
