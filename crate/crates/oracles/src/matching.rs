use serde::Serialize;

use crate::{OracleError, RefGraph, MAX_DP_VERTICES, MAX_ENUM_VERTICES};

/// Everything the matching pipeline can be checked against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingReport {
    /// Minimum perfect matching weight, `None` when no perfect matching exists.
    pub min_weight: Option<i64>,
    /// Minimum perfect matchings as sorted `(u, v)` lists, capped at
    /// [`MatchingReport::MATCHING_CAP`] entries.
    pub min_matchings: Vec<Vec<(usize, usize)>>,
    /// Union of all minimum perfect matchings, sorted, `u < v`.
    pub allowed_edges: Vec<(usize, usize)>,
    /// `near_perfect[v]`: minimum weight of a matching covering all vertices
    /// except `v` and exactly one other vertex.
    pub near_perfect: Vec<Option<i64>>,
    /// Second element of the sorted multiset of perfect matching weights.
    pub second_smallest: Option<i64>,
}

impl MatchingReport {
    pub const MATCHING_CAP: usize = 4096;
}

/// Two smallest weights (as a multiset) of perfect matchings on a vertex mask.
type Top2 = [Option<i64>; 2];

fn push_top2(slot: &mut Top2, w: i64) {
    match slot {
        [None, _] => slot[0] = Some(w),
        [Some(a), None] => {
            if w < *a {
                slot[1] = Some(*a);
                slot[0] = Some(w);
            } else {
                slot[1] = Some(w);
            }
        }
        [Some(a), Some(b)] => {
            if w < *a {
                slot[1] = Some(*a);
                slot[0] = Some(w);
            } else if w < *b {
                slot[1] = Some(w);
            }
        }
    }
}

/// Subset DP over vertex masks, `n <= 16`.
pub fn matching_dp(g: &RefGraph) -> Result<MatchingReport, OracleError> {
    g.check_size(MAX_DP_VERTICES)?;
    if g.directed {
        return Err(OracleError::DirectedInput);
    }
    let n = g.n;
    let w = g.weight_matrix();
    let full: usize = (1usize << n) - 1;
    let mut dp: Vec<Top2> = vec![[None, None]; 1 << n];
    dp[0] = [Some(0), None];
    for mask in 1..=full {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut slot: Top2 = [None, None];
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if let Some(wij) = w[i][j] {
                let sub = dp[rest & !(1 << j)];
                for x in sub.into_iter().flatten() {
                    push_top2(&mut slot, wij + x);
                }
            }
        }
        dp[mask] = slot;
    }

    let min_weight = if n % 2 == 0 { dp[full][0] } else { None };
    let second_smallest = if n % 2 == 0 { dp[full][1] } else { None };

    let mut allowed_edges = Vec::new();
    if let Some(best) = min_weight {
        for &(u, v, wt) in &g.edges {
            if let Some(x) = dp[full & !(1 << u) & !(1 << v)][0] {
                if wt + x == best {
                    allowed_edges.push((u, v));
                }
            }
        }
    }
    allowed_edges.sort();

    let mut near_perfect = vec![None; n];
    if n % 2 == 0 {
        for (v, slot) in near_perfect.iter_mut().enumerate() {
            for u in (0..n).filter(|&u| u != v) {
                if let Some(x) = dp[full & !(1 << u) & !(1 << v)][0] {
                    *slot = Some(slot.map_or(x, |b: i64| b.min(x)));
                }
            }
        }
    }

    let mut min_matchings = Vec::new();
    if let Some(best) = min_weight {
        let mut cur = Vec::new();
        collect_optimal(&w, &dp, full, best, &mut cur, &mut min_matchings);
        for m in &mut min_matchings {
            m.sort();
        }
        min_matchings.sort();
    }

    Ok(MatchingReport {
        min_weight,
        min_matchings,
        allowed_edges,
        near_perfect,
        second_smallest,
    })
}

fn collect_optimal(
    w: &[Vec<Option<i64>>],
    dp: &[Top2],
    mask: usize,
    target: i64,
    cur: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if out.len() >= MatchingReport::MATCHING_CAP {
        return;
    }
    if mask == 0 {
        out.push(cur.clone());
        return;
    }
    let i = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << i);
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if let Some(wij) = w[i][j] {
            let sub = rest & !(1 << j);
            if dp[sub][0].is_some_and(|x| x + wij == target) {
                cur.push((i, j));
                collect_optimal(w, dp, sub, target - wij, cur, out);
                cur.pop();
            }
        }
    }
}

/// Every perfect matching with its weight, by plain recursion (`n <= 12`).
/// Used to validate [`matching_dp`].
pub fn enumerate_perfect_matchings(
    g: &RefGraph,
) -> Result<Vec<(i64, Vec<(usize, usize)>)>, OracleError> {
    g.check_size(MAX_ENUM_VERTICES)?;
    let w = g.weight_matrix();
    let mut used = vec![false; g.n];
    let mut cur = Vec::new();
    let mut out = Vec::new();
    recurse(&w, &mut used, 0, &mut cur, &mut out);
    out.sort();
    Ok(out)
}

fn recurse(
    w: &[Vec<Option<i64>>],
    used: &mut [bool],
    acc: i64,
    cur: &mut Vec<(usize, usize)>,
    out: &mut Vec<(i64, Vec<(usize, usize)>)>,
) {
    let Some(i) = used.iter().position(|u| !u) else {
        out.push((acc, cur.clone()));
        return;
    };
    used[i] = true;
    for j in (i + 1)..used.len() {
        if used[j] {
            continue;
        }
        if let Some(wij) = w[i][j] {
            used[j] = true;
            cur.push((i, j));
            recurse(w, used, acc + wij, cur, out);
            cur.pop();
            used[j] = false;
        }
    }
    used[i] = false;
}
