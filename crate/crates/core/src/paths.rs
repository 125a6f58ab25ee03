//! Combinatorial shortest paths used to close cycles once the algebra has
//! picked an edge.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Shortest `src -> dst` path by Bellman-Ford on `adj` (no negative cycles
/// assumed). Returns the weight and the vertex sequence from `src` to `dst`.
pub(crate) fn bellman_ford_path(adj: &[Vec<(usize, i64)>], src: usize, dst: usize) -> Option<(i64, Vec<usize>)> {
    let n = adj.len();
    let mut dist: Vec<Option<i64>> = vec![None; n];
    let mut pred = vec![usize::MAX; n];
    dist[src] = Some(0);
    for _ in 0..n {
        let mut changed = false;
        for u in 0..n {
            let Some(du) = dist[u] else { continue };
            for &(v, w) in &adj[u] {
                if dist[v].map_or(true, |dv| du + w < dv) {
                    dist[v] = Some(du + w);
                    pred[v] = u;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let total = dist[dst]?;
    Some((total, walk_back(&pred, src, dst)?))
}

/// Shortest `src -> dst` path with nonnegative weights, ignoring the
/// undirected edge `{skip.0, skip.1}`.
pub(crate) fn dijkstra_path(
    adj: &[Vec<(usize, i64)>],
    src: usize,
    dst: usize,
    skip: (usize, usize),
) -> Option<(i64, Vec<usize>)> {
    let n = adj.len();
    let mut dist: Vec<Option<i64>> = vec![None; n];
    let mut pred = vec![usize::MAX; n];
    let mut heap = BinaryHeap::new();
    dist[src] = Some(0);
    heap.push(Reverse((0i64, src)));
    let skipped = |a: usize, b: usize| (a, b) == skip || (b, a) == skip;
    while let Some(Reverse((d, u))) = heap.pop() {
        if dist[u].is_some_and(|best| d > best) {
            continue;
        }
        for &(v, w) in &adj[u] {
            if skipped(u, v) {
                continue;
            }
            let nd = d + w;
            if dist[v].map_or(true, |dv| nd < dv) {
                dist[v] = Some(nd);
                pred[v] = u;
                heap.push(Reverse((nd, v)));
            }
        }
    }
    let total = dist[dst]?;
    Some((total, walk_back(&pred, src, dst)?))
}

fn walk_back(pred: &[usize], src: usize, dst: usize) -> Option<Vec<usize>> {
    let mut path = vec![dst];
    let mut cur = dst;
    while cur != src {
        cur = pred[cur];
        if cur == usize::MAX || path.len() > pred.len() {
            return None;
        }
        path.push(cur);
    }
    path.reverse();
    Some(path)
}
