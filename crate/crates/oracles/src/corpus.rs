//! Seeded random instance families for the cross-checks. Every generator is
//! a pure function of its seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{cycles::min_cycle_weight, paths::floyd_warshall, RefGraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_weight(rng: &mut ChaCha8Rng, w: i64, neg_prob: f64) -> i64 {
    if w > 0 && rng.gen_bool(neg_prob) {
        -rng.gen_range(1..=w)
    } else {
        rng.gen_range(0..=w)
    }
}

/// Random graph on `n` vertices with edge probability `density`; each
/// weight is negative with probability `neg_prob`.
pub fn random_graph(seed: u64, n: usize, directed: bool, density: f64, w: i64, neg_prob: f64) -> RefGraph {
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v || (!directed && v < u) {
                continue;
            }
            if rng.gen_bool(density) {
                edges.push((u, v, random_weight(&mut rng, w, neg_prob)));
            }
        }
    }
    RefGraph::new(n, directed, edges).expect("generated edges are valid")
}

/// Digraph with no negative cycle (some negative arcs when `neg_prob > 0`).
pub fn digraph_without_negative_cycle(seed: u64, n: usize, density: f64, w: i64, neg_prob: f64) -> RefGraph {
    for k in 0.. {
        let g = random_graph(seed.wrapping_mul(1000).wrapping_add(k), n, true, density, w, neg_prob);
        if floyd_warshall(&g).is_ok() {
            return g;
        }
    }
    unreachable!()
}

/// Digraph containing a cycle of negative total weight.
pub fn digraph_with_negative_cycle(seed: u64, n: usize, density: f64, w: i64) -> RefGraph {
    let mut rng = rng(seed ^ 0x5eed);
    let base = random_graph(seed, n, true, density, w, 0.0);
    let len = rng.gen_range(2..=n.max(2));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let cyc = &order[..len];
    let mut edges: Vec<(usize, usize, i64)> = base
        .edges
        .iter()
        .copied()
        .filter(|&(u, v, _)| !(0..len).any(|i| cyc[i] == u && cyc[(i + 1) % len] == v))
        .collect();
    // weights summing to -1 or less, each within [-w, w]
    let mut ws: Vec<i64> = (0..len).map(|_| rng.gen_range(-w..=w)).collect();
    let mut total: i64 = ws.iter().sum();
    let mut i = 0;
    while total >= 0 {
        if ws[i] > -w {
            ws[i] -= 1;
            total -= 1;
        }
        i = (i + 1) % len;
    }
    for i in 0..len {
        edges.push((cyc[i], cyc[(i + 1) % len], ws[i]));
    }
    RefGraph::new(n, true, edges).expect("generated edges are valid")
}

/// Undirected graph whose simple cycles all have nonnegative weight. With
/// `neg_prob > 0` some edges are negative.
pub fn undirected_without_negative_cycle(seed: u64, n: usize, density: f64, w: i64, neg_prob: f64) -> RefGraph {
    for k in 0.. {
        let g = random_graph(seed.wrapping_mul(1000).wrapping_add(k), n, false, density, w, neg_prob);
        if min_cycle_weight(&g).expect("small instance").map_or(true, |c| c >= 0) {
            return g;
        }
    }
    unreachable!()
}

/// Undirected graph on an even number of vertices with a planted perfect
/// matching.
pub fn matching_instance(seed: u64, n: usize, density: f64, w: i64, neg_prob: f64) -> RefGraph {
    assert!(n % 2 == 0);
    let mut rng = rng(seed ^ 0xa11);
    let base = random_graph(seed, n, false, density, w, neg_prob);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut edges = base.edges.clone();
    for pair in order.chunks(2) {
        edges.push((pair[0], pair[1], random_weight(&mut rng, w, neg_prob)));
    }
    RefGraph::new(n, false, edges).expect("generated edges are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::matching_dp;

    #[test]
    fn generators_meet_their_promises() {
        for s in 0..30 {
            assert!(floyd_warshall(&digraph_without_negative_cycle(s, 6, 0.4, 3, 0.2)).is_ok());
            assert!(floyd_warshall(&digraph_with_negative_cycle(s, 6, 0.3, 3)).is_err());
            let u = undirected_without_negative_cycle(s, 6, 0.5, 3, 0.2);
            assert!(min_cycle_weight(&u).unwrap().map_or(true, |c| c >= 0));
            assert!(matching_dp(&matching_instance(s, 8, 0.3, 5, 0.2)).unwrap().min_weight.is_some());
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        assert_eq!(random_graph(9, 7, true, 0.5, 4, 0.1), random_graph(9, 7, true, 0.5, 4, 0.1));
    }
}
