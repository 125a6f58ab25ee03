use crate::{OracleError, RefGraph, MAX_ENUM_VERTICES};

/// `table[i][j]` is the distance from `i` to `j`, `None` when unreachable.
pub type DistTable = Vec<Vec<Option<i64>>>;

fn arcs(g: &RefGraph) -> Vec<(usize, usize, i64)> {
    let mut out = Vec::with_capacity(g.edges.len() * 2);
    for &(u, v, w) in &g.edges {
        out.push((u, v, w));
        if !g.directed {
            out.push((v, u, w));
        }
    }
    out
}

/// Single-source distances. Undirected edges are relaxed in both
/// directions, so an undirected negative edge counts as a negative cycle.
pub fn bellman_ford(g: &RefGraph, source: usize) -> Result<Vec<Option<i64>>, OracleError> {
    let arcs = arcs(g);
    let mut dist: Vec<Option<i64>> = vec![None; g.n];
    dist[source] = Some(0);
    for _ in 0..g.n {
        let mut changed = false;
        for &(u, v, w) in &arcs {
            if let Some(du) = dist[u] {
                if dist[v].map_or(true, |dv| du + w < dv) {
                    dist[v] = Some(du + w);
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(dist);
        }
    }
    // still relaxing after n rounds
    Err(OracleError::NegativeCycle)
}

pub fn floyd_warshall(g: &RefGraph) -> Result<DistTable, OracleError> {
    let n = g.n;
    let mut d = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(0);
    }
    for (u, v, w) in arcs(g) {
        d[u][v] = Some(d[u][v].map_or(w, |old: i64| old.min(w)));
    }
    for k in 0..n {
        for i in 0..n {
            let Some(dik) = d[i][k] else { continue };
            for j in 0..n {
                if let Some(dkj) = d[k][j] {
                    let cand = dik + dkj;
                    if d[i][j].map_or(true, |cur| cand < cur) {
                        d[i][j] = Some(cand);
                    }
                }
            }
        }
    }
    if (0..n).any(|i| d[i][i].is_some_and(|x| x < 0)) {
        return Err(OracleError::NegativeCycle);
    }
    Ok(d)
}

/// Minimum weight over *simple* paths, by exhaustive DFS.
///
/// This is the right notion of distance for undirected graphs with negative
/// edges (a walk could bounce on a negative edge forever).
pub fn simple_path_distances(g: &RefGraph) -> Result<DistTable, OracleError> {
    g.check_size(MAX_ENUM_VERTICES)?;
    let w = g.weight_matrix();
    let n = g.n;
    let mut table = vec![vec![None; n]; n];
    for s in 0..n {
        let mut on_path = vec![false; n];
        on_path[s] = true;
        dfs_paths(&w, s, 0, &mut on_path, &mut table[s]);
    }
    Ok(table)
}

fn dfs_paths(
    w: &[Vec<Option<i64>>],
    at: usize,
    acc: i64,
    on_path: &mut [bool],
    best: &mut [Option<i64>],
) {
    if best[at].map_or(true, |b| acc < b) {
        best[at] = Some(acc);
    }
    for next in 0..w.len() {
        if on_path[next] {
            continue;
        }
        if let Some(wt) = w[at][next] {
            on_path[next] = true;
            dfs_paths(w, next, acc + wt, on_path, best);
            on_path[next] = false;
        }
    }
}
