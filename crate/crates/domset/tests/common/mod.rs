//! Instance corpus shared by the integration targets.

#![allow(dead_code)]

use domset::graph::gen::{
    cycle, gen_cactus, gen_from_hitting_set, gen_from_set_cover, gen_random, gen_random_connected, gen_subdivided,
    gen_weights, path, star,
};
use domset::{Graph, Weights};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Case {
    pub name: String,
    pub graph: Graph,
    pub weights: Weights,
}

impl Case {
    fn unit(name: String, graph: Graph) -> Self {
        let weights = Weights::unit(graph.n());
        Case { name, graph, weights }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random family of non-empty subsets of `0..universe`.
pub fn random_family(r: &mut ChaCha8Rng, universe: usize, members: usize) -> Vec<Vec<usize>> {
    (0..members)
        .map(|_| {
            let mut f: Vec<usize> = (0..universe).filter(|_| r.gen_bool(0.4)).collect();
            if f.is_empty() {
                f.push(r.gen_range(0..universe));
            }
            f
        })
        .collect()
}

/// Graphs with at most 14 vertices: G(n, p) for p in 0.1..=0.5 (every fifth
/// one weighted), paths, cycles, stars, cacti and both lower-bound gadgets.
pub fn small_corpus() -> Vec<Case> {
    let mut out = Vec::new();
    for seed in 0..420u64 {
        let n = 4 + seed as usize % 11;
        let p = 0.1 * (1 + seed % 5) as f64;
        let g = gen_random(n, p, seed).unwrap();
        let name = format!("gnp(n={n},p={p:.1},seed={seed})");
        if seed % 5 == 0 {
            let weights = gen_weights(n, 9, seed);
            out.push(Case { name: format!("weighted {name}"), graph: g, weights });
        } else {
            out.push(Case::unit(name, g));
        }
    }
    for n in 1..=14 {
        out.push(Case::unit(format!("path({n})"), path(n)));
        out.push(Case::unit(format!("star({})", n - 1), star(n - 1)));
    }
    for n in 3..=14 {
        out.push(Case::unit(format!("cycle({n})"), cycle(n)));
    }
    for seed in 0..20u64 {
        let n = 5 + seed as usize % 10;
        out.push(Case::unit(format!("cactus(n={n},seed={seed})"), gen_cactus(n, seed)));
        out.push(Case::unit(format!("subdivided(seed={seed})"), gen_subdivided(14, seed)));
    }
    for seed in 0..30u64 {
        let mut r = rng(seed);
        let universe = r.gen_range(2..=5);
        let members = r.gen_range(1..=5);
        let family = random_family(&mut r, universe, members);
        let g = if seed % 2 == 0 {
            gen_from_hitting_set(universe, &family).unwrap()
        } else {
            gen_from_set_cover(universe, &family).unwrap()
        };
        out.push(Case::unit(format!("gadget(seed={seed})"), g));
    }
    for seed in 0..15u64 {
        let n = 8 + seed as usize % 7;
        let g = gen_random_connected(n, 0.15, seed).unwrap();
        let weights = gen_weights(n, 20, seed + 1000);
        out.push(Case { name: format!("weighted connected(n={n},seed={seed})"), graph: g, weights });
    }
    out
}

/// Connected graphs with at most 18 vertices, half of them sparse with long
/// induced paths.
pub fn compression_corpus() -> Vec<Case> {
    let mut out = Vec::new();
    for seed in 0..320u64 {
        let (name, g) = if seed % 2 == 0 {
            (format!("subdivided(seed={seed})"), gen_subdivided(18, seed))
        } else {
            let n = 6 + seed as usize % 13;
            let p = 0.08 + 0.02 * (seed % 8) as f64;
            (format!("connected(n={n},p={p:.2},seed={seed})"), gen_random_connected(n, p, seed).unwrap())
        };
        out.push(Case::unit(name, g));
    }
    out.retain(|c| domset::graph::components(&c.graph).len() == 1);
    out
}
