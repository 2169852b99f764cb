//! Join-node combinators. Both take the two child tables over the same bag
//! and return the parent table; the demanded set of a state is split between
//! the children and the doubly counted solution weight is subtracted.

use super::{add, Layout, INF, IN, REQ};
use crate::graph::Weights;

/// Targets in a join bag above which [`super::build_tables`] switches to the
/// convolution.
pub const CONVOLUTION_THRESHOLD: usize = 8;
/// Largest value spread, per child slice, encoded as polynomial degree.
pub const MAX_CONVOLUTION_DEGREE: u64 = 64;

fn in_weight(lay: &Layout, w: &Weights, ds: &[u8]) -> u64 {
    ds.iter().zip(&lay.bag).filter(|&(&d, _)| d == IN).map(|(_, &v)| w.of(v)).sum()
}

fn combine(a: u64, b: u64, w_in: u64) -> u64 {
    let s = add(a, b);
    if s >= INF {
        INF
    } else {
        s - w_in
    }
}

/// Offsets of the `REQ` digits of a state; clearing all of them gives the
/// state with those vertices `FREE`.
fn req_offsets(lay: &Layout, ds: &[u8]) -> Vec<usize> {
    ds.iter().enumerate().filter(|&(_, &d)| d == REQ).map(|(i, _)| 2 * lay.stride[i]).collect()
}

fn subset_offset(offsets: &[usize], mask: usize) -> usize {
    offsets.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &o)| o).sum()
}

/// Minimum over all partitions of the demanded set.
pub fn join_naive(lay: &Layout, w: &Weights, y: &[u64], z: &[u64]) -> Vec<u64> {
    let mut t = vec![INF; lay.size()];
    let mut ds = Vec::new();
    for (s, slot) in t.iter_mut().enumerate() {
        lay.decode(s, &mut ds);
        let w_in = in_weight(lay, w, &ds);
        let offs = req_offsets(lay, &ds);
        let base = s - offs.iter().sum::<usize>();
        let full = (1usize << offs.len()) - 1;
        for a in 0..=full {
            let ya = base + subset_offset(&offs, a);
            let zb = base + subset_offset(&offs, full ^ a);
            *slot = (*slot).min(combine(y[ya], z[zb], w_in));
        }
    }
    t
}

/// Child state indices attaining `value` at a join state, smallest split
/// mask first.
pub(super) fn split(lay: &Layout, w: &Weights, ds: &[u8], value: u64, y: &[u64], z: &[u64]) -> Option<(usize, usize)> {
    let s = lay.encode(ds);
    let w_in = in_weight(lay, w, ds);
    let offs = req_offsets(lay, ds);
    let base = s - offs.iter().sum::<usize>();
    let full = (1usize << offs.len()) - 1;
    (0..=full).find_map(|a| {
        let ya = base + subset_offset(&offs, a);
        let zb = base + subset_offset(&offs, full ^ a);
        (combine(y[ya], z[zb], w_in) == value).then_some((ya, zb))
    })
}

/// Cover product over the demanded set. Child tables only grow with the
/// demanded set, so a minimum over covers equals the minimum over
/// partitions. Values become exponents of a polynomial; subset sums,
/// pointwise products and Möbius inversion then count covering pairs per
/// total, and the smallest total with a positive count is the entry.
/// Slices whose spread exceeds [`MAX_CONVOLUTION_DEGREE`] fall back to the
/// naive enumeration.
pub fn join_convolution(lay: &Layout, w: &Weights, y: &[u64], z: &[u64]) -> Vec<u64> {
    let mut t = vec![INF; lay.size()];
    let mut ds = Vec::new();
    for base in 0..lay.size() {
        lay.decode(base, &mut ds);
        if ds.contains(&REQ) {
            continue;
        }
        let w_in = in_weight(lay, w, &ds);
        let offs: Vec<usize> = (0..ds.len()).filter(|&i| lay.target[i] && ds[i] != IN).map(|i| 2 * lay.stride[i]).collect();
        let p = offs.len();
        let idx = |mask: usize| base + subset_offset(&offs, mask);
        let fy: Vec<u64> = (0..1usize << p).map(|m| y[idx(m)]).collect();
        let fz: Vec<u64> = (0..1usize << p).map(|m| z[idx(m)]).collect();
        match cover_product(&fy, &fz, p) {
            Some(h) => {
                for (m, v) in h.into_iter().enumerate() {
                    t[idx(m)] = if v >= INF { INF } else { v - w_in };
                }
            }
            None => {
                for r in 0..1usize << p {
                    let mut best = INF;
                    let mut a = r;
                    loop {
                        best = best.min(combine(fy[a], fz[r ^ a], w_in));
                        if a == 0 {
                            break;
                        }
                        a = (a - 1) & r;
                    }
                    t[idx(r)] = best;
                }
            }
        }
    }
    t
}

/// h(R) = min over A ∪ B = R of fy(A) + fz(B), or `None` when the value
/// spread is too wide to encode.
fn cover_product(fy: &[u64], fz: &[u64], p: usize) -> Option<Vec<u64>> {
    let size = 1usize << p;
    let lo = |f: &[u64]| f.iter().copied().filter(|&v| v < INF).min();
    let (Some(ly), Some(lz)) = (lo(fy), lo(fz)) else {
        return Some(vec![INF; size]);
    };
    let spread = |f: &[u64], l: u64| f.iter().copied().filter(|&v| v < INF).map(|v| v - l).max().unwrap_or(0);
    let (dy, dz) = (spread(fy, ly), spread(fz, lz));
    if dy > MAX_CONVOLUTION_DEGREE || dz > MAX_CONVOLUTION_DEGREE {
        return None;
    }
    let (len_y, len_z) = (dy as usize + 1, dz as usize + 1);
    let encode = |f: &[u64], l: u64, len: usize| {
        let mut poly = vec![0i128; size * len];
        for (m, &v) in f.iter().enumerate() {
            if v < INF {
                poly[m * len + (v - l) as usize] = 1;
            }
        }
        zeta(&mut poly, p, len);
        poly
    };
    let py = encode(fy, ly, len_y);
    let pz = encode(fz, lz, len_z);
    let len_h = len_y + len_z - 1;
    let mut ph = vec![0i128; size * len_h];
    for m in 0..size {
        let (a, b) = (&py[m * len_y..(m + 1) * len_y], &pz[m * len_z..(m + 1) * len_z]);
        let out = &mut ph[m * len_h..(m + 1) * len_h];
        for (i, &ca) in a.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in b.iter().enumerate() {
                out[i + j] += ca * cb;
            }
        }
    }
    mobius(&mut ph, p, len_h);
    Some(
        (0..size)
            .map(|m| {
                ph[m * len_h..(m + 1) * len_h].iter().position(|&c| c > 0).map_or(INF, |k| k as u64 + ly + lz)
            })
            .collect(),
    )
}

fn zeta(poly: &mut [i128], p: usize, len: usize) {
    for bit in 0..p {
        for m in 0..1usize << p {
            if m >> bit & 1 == 1 {
                let src = (m ^ 1 << bit) * len;
                for k in 0..len {
                    poly[m * len + k] += poly[src + k];
                }
            }
        }
    }
}

fn mobius(poly: &mut [i128], p: usize, len: usize) {
    for bit in 0..p {
        for m in 0..1usize << p {
            if m >> bit & 1 == 1 {
                let src = (m ^ 1 << bit) * len;
                for k in 0..len {
                    poly[m * len + k] -= poly[src + k];
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::FREE;
    use super::*;
    use crate::graph::VertexSet;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Random table that only grows with the demanded set: each entry is the
    /// maximum of raw values over the states with fewer demands.
    fn monotone_table(lay: &Layout, rng: &mut ChaCha8Rng, spread: u64) -> Vec<u64> {
        let raw: Vec<u64> =
            (0..lay.size()).map(|_| if rng.gen_bool(0.1) { INF } else { rng.gen_range(0..=spread) }).collect();
        let mut t = raw.clone();
        let mut ds = Vec::new();
        for (s, slot) in t.iter_mut().enumerate() {
            lay.decode(s, &mut ds);
            let offs = req_offsets(lay, &ds);
            let base = s - offs.iter().sum::<usize>();
            let full = (1usize << offs.len()) - 1;
            let mut a = full;
            loop {
                *slot = (*slot).max(raw[base + subset_offset(&offs, a)]);
                if a == 0 {
                    break;
                }
                a = (a - 1) & full;
            }
        }
        // Entries must cover the weight of their own solution vertices.
        let w_in_bound = lay.bag.len() as u64 * 3;
        t.iter().map(|&v| if v >= INF { INF } else { v + w_in_bound }).collect()
    }

    #[test]
    fn empty_demand_single_combination() {
        let targets = VertexSet::from_ids(2, [0, 1]);
        let lay = Layout::new(&[0, 1], &targets);
        let w = Weights::new(vec![3, 5]);
        let y = vec![10; lay.size()];
        let z = vec![20; lay.size()];
        let t = join_naive(&lay, &w, &y, &z);
        assert_eq!(t[lay.encode(&[FREE, FREE])], 30);
        assert_eq!(t[lay.encode(&[IN, FREE])], 27);
        assert_eq!(t[lay.encode(&[IN, IN])], 22);
    }

    #[test]
    fn two_demands_take_best_of_four_splits() {
        let targets = VertexSet::from_ids(2, [0, 1]);
        let lay = Layout::new(&[0, 1], &targets);
        let w = Weights::unit(2);
        let mut y = vec![50; lay.size()];
        let mut z = vec![50; lay.size()];
        y[lay.encode(&[REQ, FREE])] = 4;
        z[lay.encode(&[FREE, REQ])] = 6;
        let t = join_naive(&lay, &w, &y, &z);
        assert_eq!(t[lay.encode(&[REQ, REQ])], 10);
    }

    #[test]
    fn naive_matches_convolution_on_random_tables() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for round in 0..60 {
            let k = rng.gen_range(1..=7);
            let n = k + 1;
            let targets = VertexSet::from_ids(n, (0..k).filter(|_| rng.gen_bool(0.8)));
            let bag: Vec<usize> = (0..k).collect();
            let lay = Layout::new(&bag, &targets);
            let w = Weights::new((0..n).map(|_| rng.gen_range(0..=3)).collect());
            let spread = if round % 5 == 0 { 200 } else { 20 };
            let y = monotone_table(&lay, &mut rng, spread);
            let z = monotone_table(&lay, &mut rng, spread);
            assert_eq!(join_naive(&lay, &w, &y, &z), join_convolution(&lay, &w, &y, &z));
        }
    }
}
