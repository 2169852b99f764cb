use super::NiceTreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Slack the greedy strategy guarantees over ⌈width/2⌉.
pub const PARTITION_SLACK: usize = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedPartition {
    pub first: VertexSet,
    pub second: VertexSet,
    /// Achieved slack: max over bags and sides of the side count minus
    /// ⌈width/2⌉, floored at 0.
    pub slack: usize,
    pub width: usize,
}

impl BalancedPartition {
    pub fn bound(&self) -> usize {
        self.width.div_ceil(2) + self.slack
    }
}

/// Walks the decomposition from the root; each vertex, at the topmost bag
/// holding it, joins the side that currently has fewer members of that bag.
/// Going down, a bag gains at most one vertex per step and it lands on the
/// smaller side, so no side exceeds ⌈(width+1)/2⌉. Vertices in no bag go to
/// the first side.
pub fn balanced_partition(g: &Graph, td: &NiceTreeDecomposition) -> Result<BalancedPartition> {
    let n = g.n();
    let mut side: Vec<Option<bool>> = vec![None; n];
    for x in td.nodes().iter().rev() {
        let mut second = x.bag.iter().filter(|&&v| v < n && side[v] == Some(true)).count();
        let mut first = x.bag.iter().filter(|&&v| v < n && side[v] == Some(false)).count();
        for &v in &x.bag {
            if v < n && side[v].is_none() {
                let to_second = second < first;
                side[v] = Some(to_second);
                if to_second {
                    second += 1;
                } else {
                    first += 1;
                }
            }
        }
    }
    let second = VertexSet::from_ids(n, (0..n).filter(|&v| side[v] == Some(true)));
    let first = second.complement();
    let width = td.width();
    let half = width.div_ceil(2);
    let mut worst = 0;
    for x in td.nodes() {
        let a = x.bag.iter().filter(|&&v| v < n && first.contains(v)).count();
        let b = x.bag.iter().filter(|&&v| v < n && second.contains(v)).count();
        worst = worst.max(a).max(b);
    }
    let slack = worst.saturating_sub(half);
    if slack > PARTITION_SLACK {
        return Err(Error::Strategy(format!(
            "balanced partition reached slack {slack}, above the guaranteed {PARTITION_SLACK}"
        )));
    }
    Ok(BalancedPartition { first, second, slack, width })
}
