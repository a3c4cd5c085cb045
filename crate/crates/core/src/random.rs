//! Seeded random instances for benchmarks and sweeps.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;
use crate::instance::{ColorSet, Instance};

/// `G(n, p)`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("ids below n")
}

/// A uniformly chosen subset of `[k]` whose size is uniform in `sizes`.
pub fn random_list<R: Rng>(rng: &mut R, k: u8, sizes: RangeInclusive<usize>) -> ColorSet {
    let size = rng.gen_range(sizes).min(k as usize);
    let mut colors: Vec<u8> = (1..=k).collect();
    colors.shuffle(rng);
    ColorSet::from_colors(colors.into_iter().take(size))
}

pub fn random_instance<R: Rng>(
    rng: &mut R,
    n: usize,
    p: f64,
    k: u8,
    sizes: RangeInclusive<usize>,
) -> Instance {
    let g = random_graph(rng, n, p);
    let lists = (0..n).map(|_| random_list(rng, k, sizes.clone())).collect();
    Instance::new(g, k, lists).expect("lists fit k")
}

/// Rejection-samples a `2P3`-free instance on `n` vertices with `k = 5`,
/// edge density drawn from `[0.3, 0.9)` and list sizes in `sizes`.
pub fn random_2p3_free<R: Rng>(rng: &mut R, n: usize, sizes: RangeInclusive<usize>) -> Instance {
    loop {
        let p = rng.gen_range(0.3..0.9);
        let inst = random_instance(rng, n, p, 5, sizes.clone());
        if inst.graph().is_rpt_free(2, 3) {
            return inst;
        }
    }
}
