use crate::{OracleError, RefGraph, MAX_ENUM_VERTICES};

/// Visits every simple cycle exactly once.
///
/// Directed cycles are reported starting at their smallest vertex.
/// Undirected cycles have at least three vertices, start at their smallest
/// vertex, and are oriented so that the second vertex is smaller than the
/// last one.
pub fn for_each_cycle(
    g: &RefGraph,
    mut visit: impl FnMut(i64, &[usize]),
) -> Result<(), OracleError> {
    g.check_size(MAX_ENUM_VERTICES)?;
    let w = g.weight_matrix();
    let mut path = Vec::with_capacity(g.n);
    let mut on_path = vec![false; g.n];
    for start in 0..g.n {
        path.clear();
        path.push(start);
        on_path[start] = true;
        extend(g.directed, &w, start, 0, &mut path, &mut on_path, &mut visit);
        on_path[start] = false;
    }
    Ok(())
}

fn extend(
    directed: bool,
    w: &[Vec<Option<i64>>],
    start: usize,
    acc: i64,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    visit: &mut impl FnMut(i64, &[usize]),
) {
    let last = *path.last().unwrap();
    if let Some(back) = w[last][start] {
        let closes = if directed {
            path.len() >= 2
        } else {
            path.len() >= 3 && path[1] < last
        };
        if closes {
            visit(acc + back, path);
        }
    }
    for next in (start + 1)..w.len() {
        if on_path[next] {
            continue;
        }
        if let Some(wt) = w[last][next] {
            on_path[next] = true;
            path.push(next);
            extend(directed, w, start, acc + wt, path, on_path, visit);
            path.pop();
            on_path[next] = false;
        }
    }
}

/// All simple cycles with weight `<= bound` (every cycle when `bound` is
/// `None`), sorted by weight then vertex sequence.
pub fn enumerate_cycles(
    g: &RefGraph,
    bound: Option<i64>,
) -> Result<Vec<(i64, Vec<usize>)>, OracleError> {
    let mut out = Vec::new();
    for_each_cycle(g, |wt, cyc| {
        if bound.map_or(true, |b| wt <= b) {
            out.push((wt, cyc.to_vec()));
        }
    })?;
    out.sort();
    Ok(out)
}

pub fn min_cycle_weight(g: &RefGraph) -> Result<Option<i64>, OracleError> {
    let mut best: Option<i64> = None;
    for_each_cycle(g, |wt, _| {
        if best.map_or(true, |b| wt < b) {
            best = Some(wt);
        }
    })?;
    Ok(best)
}

/// Sorted set of vertices lying on at least one simple cycle of weight `<= t`.
pub fn vertices_on_cycles_at_most(g: &RefGraph, t: i64) -> Result<Vec<usize>, OracleError> {
    let mut hit = vec![false; g.n];
    for_each_cycle(g, |wt, cyc| {
        if wt <= t {
            for &v in cyc {
                hit[v] = true;
            }
        }
    })?;
    Ok((0..g.n).filter(|&v| hit[v]).collect())
}
