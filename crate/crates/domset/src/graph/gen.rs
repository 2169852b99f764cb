//! Instance generators: seeded random graphs, cacti, named families and the
//! two lower-bound gadgets that encode hitting set and set cover.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, Weights};
use crate::error::{Error, Result};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p): each pair independently with probability `p`.
pub fn gen_random(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!("edge probability {p} outside [0,1]")));
    }
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// Random spanning tree plus G(n, p) edges; always connected.
pub fn gen_random_connected(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!("edge probability {p} outside [0,1]")));
    }
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((r.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new_dedup(n, edges)
}

/// Connected cactus grown by attaching pendant vertices and cycles of
/// length 3 to 7 at random existing vertices.
pub fn gen_cactus(n: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    let mut count = usize::from(n > 0);
    while count < n {
        let a = r.gen_range(0..count);
        let room = n - count;
        if room >= 2 && r.gen_bool(0.6) {
            let len = r.gen_range(3..=(room + 1).min(7));
            let mut prev = a;
            for _ in 0..len - 1 {
                edges.push((prev, count));
                prev = count;
                count += 1;
            }
            edges.push((prev, a));
        } else {
            edges.push((a, count));
            count += 1;
        }
    }
    Graph::new(n, edges).expect("cactus construction is simple")
}

/// Few branch vertices joined by long subdivided paths, with pendant
/// vertices, at most `cap` vertices.
pub fn gen_subdivided(cap: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let branch = r.gen_range(2..=4);
    let mut edges = Vec::new();
    let mut n = branch;
    for v in 1..branch {
        edges.push((r.gen_range(0..v), v, r.gen_range(0..=6)));
    }
    for _ in 0..r.gen_range(1..=3) {
        let a = r.gen_range(0..branch);
        let b = r.gen_range(0..branch);
        edges.push((a, b, r.gen_range(if a == b { 2..=6 } else { 1..=6 })));
    }
    let mut out = Vec::new();
    for (a, b, k) in edges {
        if n + k > cap {
            continue;
        }
        let mut prev = a;
        for _ in 0..k {
            out.push((prev, n));
            prev = n;
            n += 1;
        }
        out.push((prev, b));
    }
    while n < cap && r.gen_bool(0.5) {
        let a = r.gen_range(0..n);
        out.push((a, n));
        n += 1;
    }
    Graph::new_dedup(n, out.into_iter().filter(|&(a, b)| a != b)).expect("generated edges are in range")
}

/// Uniform random weights in `1..=max`.
pub fn gen_weights(n: usize, max: u64, seed: u64) -> Weights {
    let mut r = rng(seed);
    Weights::new((0..n).map(|_| r.gen_range(1..=max.max(1))).collect())
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// Panics for n < 3.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

/// K_{1,leaves} with center 0.
pub fn star(leaves: usize) -> Graph {
    Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// Two vertices 0 and 1 joined by internally disjoint paths with the given
/// numbers of interior vertices.
pub fn theta(interiors: &[usize]) -> Graph {
    let mut edges = Vec::new();
    let mut next = 2;
    for &k in interiors {
        let mut prev = 0;
        for _ in 0..k {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, 1));
    }
    Graph::new(next, edges).expect("theta paths need at least one interior vertex when repeated")
}

/// Vertex layout shared by both gadgets: elements `0..u`, one vertex per
/// family member after them, then `x`, then `y`.
fn gadget_layout(universe: usize, family: &[Vec<usize>]) -> Result<(usize, usize)> {
    if family.is_empty() {
        return Err(Error::input("empty family"));
    }
    for (i, f) in family.iter().enumerate() {
        if f.is_empty() {
            return Err(Error::input(format!("family member {i} is empty")));
        }
        if let Some(&e) = f.iter().find(|&&e| e >= universe) {
            return Err(Error::input(format!("element {e} outside universe of size {universe}")));
        }
    }
    let x = universe + family.len();
    Ok((x, x + 1))
}

/// Dominating set gadget whose optimum is the minimum hitting set plus one.
pub fn gen_from_hitting_set(universe: usize, family: &[Vec<usize>]) -> Result<Graph> {
    let (x, y) = gadget_layout(universe, family)?;
    let mut edges = Vec::new();
    for (i, f) in family.iter().enumerate() {
        for &u in f {
            edges.push((u, universe + i));
        }
    }
    edges.extend((0..universe).map(|u| (u, x)));
    edges.push((x, y));
    Graph::new_dedup(y + 1, edges)
}

/// Dominating set gadget whose optimum is the minimum set cover plus one.
pub fn gen_from_set_cover(universe: usize, family: &[Vec<usize>]) -> Result<Graph> {
    let (x, y) = gadget_layout(universe, family)?;
    let mut edges = Vec::new();
    for (i, f) in family.iter().enumerate() {
        for &u in f {
            edges.push((u, universe + i));
        }
        edges.push((x, universe + i));
    }
    edges.push((x, y));
    Graph::new_dedup(y + 1, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::components;

    #[test]
    fn random_extremes() {
        assert_eq!(gen_random(5, 0.0, 7).unwrap().m(), 0);
        assert_eq!(gen_random(4, 1.0, 7).unwrap().m(), 6);
        assert!(gen_random(4, 1.5, 7).is_err());
    }

    #[test]
    fn random_is_seeded() {
        assert_eq!(gen_random(12, 0.3, 42).unwrap(), gen_random(12, 0.3, 42).unwrap());
        assert_eq!(gen_cactus(20, 3), gen_cactus(20, 3));
    }

    #[test]
    fn connected_generator_is_connected() {
        for seed in 0..20 {
            let g = gen_random_connected(15, 0.1, seed).unwrap();
            assert_eq!(components(&g).len(), 1);
        }
    }

    #[test]
    fn cactus_sizes() {
        for n in 0..30 {
            let g = gen_cactus(n, n as u64);
            assert_eq!(g.n(), n);
            if n > 0 {
                assert_eq!(components(&g).len(), 1);
            }
        }
    }

    #[test]
    fn gadget_shapes() {
        let g = gen_from_hitting_set(1, &[vec![0]]).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 3);
        assert!(gen_from_hitting_set(2, &[]).is_err());
        assert!(gen_from_set_cover(2, &[vec![]]).is_err());
        let h = gen_from_set_cover(1, &[vec![0], vec![0]]).unwrap();
        assert_eq!(h.m(), 5);
    }

    #[test]
    fn theta_counts() {
        let g = theta(&[1, 2, 3]);
        assert_eq!(g.n(), 8);
        assert_eq!(g.m(), 9);
    }
}
