#![allow(dead_code)]

use hyperrho::hypergraph::k_subsets;
use hyperrho::Hypergraph;
use rand::seq::SliceRandom;
use rand::Rng;

/// `e` distinct random `rank`-subsets of `0..n`.
pub fn random_hypergraph<R: Rng>(rng: &mut R, rank: usize, n: usize, e: usize) -> Hypergraph {
    let mut all = k_subsets(n, rank);
    all.shuffle(rng);
    all.truncate(e);
    Hypergraph::new(rank, n, all).expect("distinct subsets form a hypergraph")
}

/// Rejection-samples a hypergraph with a single non-trivial component.
pub fn random_connected<R: Rng>(rng: &mut R, rank: usize, n: usize, e: usize) -> Hypergraph {
    loop {
        let h = random_hypergraph(rng, rank, n, e);
        if h.is_connected() {
            return h;
        }
    }
}

/// Random connected hypergraph with `rank` in `ranks`, at most `max_n`
/// vertices and at most `max_e` edges.
pub fn random_connected_in<R: Rng>(
    rng: &mut R,
    ranks: std::ops::RangeInclusive<usize>,
    max_n: usize,
    max_e: usize,
) -> Hypergraph {
    let rank = rng.gen_range(ranks);
    let n = rng.gen_range(rank..=max_n);
    let slots = hyperrho::binomial(n as u64, rank as u64) as usize;
    let e = rng.gen_range(1..=slots.min(max_e));
    random_connected(rng, rank, n, e)
}
