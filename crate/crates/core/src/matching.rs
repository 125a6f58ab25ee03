//! Minimum-weight perfect matching from the symbolic Tutte matrix: allowed
//! edges, per-vertex defect values, the blossom family they determine, and a
//! weight-oblivious extraction guided by that family.

use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{det_poly, AdjugateSamples, EngineError};
use crate::error::AlgError;
use crate::graph::{edge_var, encode_tutte, Graph};
use crate::params::Params;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matching {
    /// Sorted, `u < v`.
    pub edges: Vec<(usize, usize)>,
    pub weight: i64,
}

impl Matching {
    fn from_mate(g: &Graph, mate: &[usize]) -> Self {
        let edges: Vec<(usize, usize)> = (0..mate.len()).filter(|&v| mate[v] != NONE && v < mate[v]).map(|v| (v, mate[v])).collect();
        let weight = edges.iter().map(|&(a, b)| g.weight(a, b).unwrap_or(0)).sum();
        Self { edges, weight }
    }

    pub fn is_perfect(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for &(a, b) in &self.edges {
            for x in [a, b] {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return false;
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

// ----- unweighted matching -----

struct Edmonds<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
}

impl<'a> Edmonds<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Self {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            blossom: vec![false; n],
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS for an augmenting path from `root`; returns its free endpoint.
    fn find_path(&mut self, root: usize) -> usize {
        let n = self.adj.len();
        self.used.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &to in &self.adj[v] {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    queue.push_back(m);
                }
            }
        }
        NONE
    }

    fn run(mut self) -> Vec<usize> {
        for root in 0..self.adj.len() {
            if self.mate[root] != NONE {
                continue;
            }
            let mut v = self.find_path(root);
            while v != NONE {
                let pv = self.parent[v];
                let next = self.mate[pv];
                self.mate[v] = pv;
                self.mate[pv] = v;
                v = next;
            }
        }
        self.mate
    }
}

fn max_matching_mate(adj: &[Vec<usize>]) -> Vec<usize> {
    Edmonds::new(adj).run()
}

fn simple_adjacency(g: &Graph) -> Vec<Vec<usize>> {
    g.adjacency().into_iter().map(|row| row.into_iter().map(|(v, _)| v).collect()).collect()
}

/// Maximum-cardinality matching (Edmonds, augmenting paths with blossom
/// contraction). Weights are ignored.
pub fn maximum_cardinality_matching(g: &Graph) -> Matching {
    Matching::from_mate(g, &max_matching_mate(&simple_adjacency(g)))
}

pub fn unweighted_perfect_matching(g: &Graph) -> Option<Matching> {
    let m = maximum_cardinality_matching(g);
    (2 * m.edges.len() == g.n()).then_some(m)
}

// ----- algebraic phase -----

fn singular_means_no_matching(e: EngineError) -> AlgError {
    match e {
        EngineError::SingularEverywhere => AlgError::NoPerfectMatching,
        e => e.into(),
    }
}

struct TutteSamples {
    matrix: crate::engine::PolyMatrix,
    samples: AdjugateSamples,
    wm: i64,
    shift: i64,
    deg_star: usize,
}

fn tutte_samples(g: &Graph, params: &Params, tag: &str) -> Result<TutteSamples, AlgError> {
    g.require_undirected()?;
    if g.n() % 2 == 1 {
        return Err(AlgError::NoPerfectMatching);
    }
    let t = encode_tutte(g, &params.sigma(tag))?;
    let samples = AdjugateSamples::new(&t.matrix).map_err(singular_means_no_matching)?;
    let deg_star = samples.det_poly().deg_star.ok_or(AlgError::NoPerfectMatching)?;
    let twice = deg_star as i64 - g.n() as i64 * t.shift;
    if twice % 2 != 0 {
        return Err(AlgError::Consistency(format!("odd determinant degree {deg_star}")));
    }
    Ok(TutteSamples { matrix: t.matrix, samples, wm: twice / 2, shift: t.shift, deg_star })
}

fn allowed_core(g: &Graph, params: &Params) -> Result<(Vec<(usize, usize)>, i64), AlgError> {
    if g.n() == 0 {
        g.require_undirected()?;
        return Ok((Vec::new(), 0));
    }
    let t = tutte_samples(g, params, "allowed")?;
    let vars: Vec<usize> = t.matrix.var_links().keys().copied().collect();
    let table = t.samples.gradients(&t.matrix, &vars, params.backend)?;
    let n = g.n();
    let allowed = g
        .edges()
        .iter()
        .filter(|e| !table.coeff(edge_var(n, e.u, e.v), t.deg_star).is_zero())
        .map(|e| (e.u, e.v))
        .collect();
    Ok((allowed, t.wm))
}

/// Edges lying on some minimum-weight perfect matching: those whose
/// variable has a nonzero derivative in the lowest-degree coefficient of the
/// Tutte determinant. May wrongly omit an edge with probability `<= n/p`.
pub fn allowed_edges(g: &Graph, params: &Params) -> Result<Vec<(usize, usize)>, AlgError> {
    Ok(allowed_core(g, params)?.0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefectValues {
    /// Minimum perfect matching weight.
    pub wm: i64,
    /// `wmv[v]`: minimum weight of a matching missing exactly `v` and one
    /// other vertex.
    pub wmv: Vec<i64>,
}

/// `w(M) + w(M(i)) = min_j deg*(adj_ij) - (n-1)s` on the Tutte matrix.
pub fn defect_values(g: &Graph, params: &Params) -> Result<DefectValues, AlgError> {
    let n = g.n();
    if n == 0 {
        g.require_undirected()?;
        return Ok(DefectValues { wm: 0, wmv: Vec::new() });
    }
    let t = tutte_samples(g, params, "defect")?;
    let degs = t.samples.adjugate_degrees();
    let offset = (n as i64 - 1) * t.shift + t.wm;
    let wmv = degs
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .flatten()
                .min()
                .map(|&d| d as i64 - offset)
                .ok_or_else(|| AlgError::Consistency(format!("adjugate row {i} vanished")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DefectValues { wm: t.wm, wmv })
}

// ----- blossoms -----

/// Laminar family of odd vertex sets, as a forest under containment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlossomForest {
    pub n: usize,
    /// Sorted vertex sets, ordered by size.
    pub sets: Vec<Vec<usize>>,
    /// Smallest other set strictly containing each set.
    pub parent: Vec<Option<usize>>,
    /// Distinct transformed weights seen, increasing.
    pub thresholds: Vec<i64>,
}

impl BlossomForest {
    fn from_sets(n: usize, mut sets: Vec<Vec<usize>>, thresholds: Vec<i64>) -> Self {
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let parent = (0..sets.len())
            .map(|i| (i + 1..sets.len()).find(|&j| sets[j].len() > sets[i].len() && is_subset(&sets[i], &sets[j])))
            .collect();
        Self { n, sets, parent, thresholds }
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.sets.len()).filter(|&i| self.parent[i].is_none()).collect()
    }

    pub fn children(&self, i: usize) -> Vec<usize> {
        (0..self.sets.len()).filter(|&j| self.parent[j] == Some(i)).collect()
    }

    pub fn is_laminar(&self) -> bool {
        self.sets.iter().enumerate().all(|(i, a)| {
            self.sets[i + 1..]
                .iter()
                .all(|b| is_subset(a, b) || is_subset(b, a) || a.iter().all(|x| b.binary_search(x).is_err()))
        })
    }

    /// Renames vertex `v` to `names[v]`.
    pub fn relabel(&self, names: &[usize], n: usize) -> Self {
        let sets = self
            .sets
            .iter()
            .map(|s| {
                let mut t: Vec<usize> = s.iter().map(|&v| names[v]).collect();
                t.sort_unstable();
                t
            })
            .collect();
        Self { n, sets, parent: self.parent.clone(), thresholds: self.thresholds.clone() }
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Nontrivial components of the threshold graphs `{uv : w'(uv) <= alpha}`
/// with `w'(uv) = w(uv) + w(M(u)) + w(M(v))`, over all thresholds `alpha`.
pub fn blossom_family(g_allowed: &Graph, defect: &DefectValues) -> BlossomForest {
    let n = g_allowed.n();
    let mut edges: Vec<(i64, usize, usize)> = g_allowed
        .edges()
        .iter()
        .map(|e| (e.w + defect.wmv[e.u] + defect.wmv[e.v], e.u, e.v))
        .collect();
    edges.sort_unstable();
    let mut thresholds: Vec<i64> = edges.iter().map(|e| e.0).collect();
    thresholds.dedup();

    let mut uf: Vec<usize> = (0..n).collect();
    let mut members: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < edges.len() {
        let alpha = edges[i].0;
        let mut touched = Vec::new();
        while i < edges.len() && edges[i].0 == alpha {
            let (_, u, v) = edges[i];
            let (a, b) = (find(&mut uf, u), find(&mut uf, v));
            if a != b {
                uf[a] = b;
                let moved = std::mem::take(&mut members[a]);
                members[b].extend(moved);
                touched.push(b);
            }
            i += 1;
        }
        for r in touched {
            let r = find(&mut uf, r);
            let mut set = members[r].clone();
            set.sort_unstable();
            if set.len() > 1 && set.len() < n && !sets.contains(&set) {
                sets.push(set);
            }
        }
    }
    BlossomForest::from_sets(n, sets, thresholds)
}

// ----- extraction -----

/// Matches every vertex of `set` except `skip`, contracting the maximal
/// blossoms `children` and recursing into each with its entry vertex.
fn complete(
    adj: &[Vec<usize>],
    forest: &BlossomForest,
    set: &[usize],
    skip: Option<usize>,
    children: &[usize],
    mate: &mut [usize],
) -> Result<(), AlgError> {
    let mut node_of = vec![NONE; adj.len()];
    for (ci, &c) in children.iter().enumerate() {
        for &v in &forest.sets[c] {
            node_of[v] = ci;
        }
    }
    let mut nodes = children.len();
    for &v in set {
        if node_of[v] == NONE {
            node_of[v] = nodes;
            nodes += 1;
        }
    }
    let skip_node = skip.map(|v| node_of[v]);

    let mut rep: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for &a in set {
        for &b in &adj[a] {
            let (x, y) = (node_of[a], node_of[b]);
            if y == NONE || x == y || Some(x) == skip_node || Some(y) == skip_node {
                continue;
            }
            rep.entry((x, y)).or_insert((a, b));
        }
    }
    let mut cadj = vec![Vec::new(); nodes];
    for &(x, y) in rep.keys() {
        cadj[x].push(y);
    }
    let cmate = max_matching_mate(&cadj);

    let mut entry: Vec<Option<usize>> = vec![None; children.len()];
    if let (Some(v), Some(x)) = (skip, skip_node) {
        if x < children.len() {
            entry[x] = Some(v);
        }
    }
    for x in 0..nodes {
        if Some(x) == skip_node {
            continue;
        }
        let y = cmate[x];
        if y == NONE {
            return Err(AlgError::InternalInfeasible(1));
        }
        let (a, b) = rep[&(x, y)];
        mate[a] = b;
        if x < children.len() {
            entry[x] = Some(a);
        }
    }
    for (ci, &c) in children.iter().enumerate() {
        let e = entry[ci].ok_or(AlgError::InternalInfeasible(1))?;
        complete(adj, forest, &forest.sets[c], Some(e), &forest.children(c), mate)?;
    }
    Ok(())
}

/// Perfect matching of `g_allowed` with exactly one edge leaving every
/// blossom. Only adjacency is consulted; the weight is summed afterwards.
pub fn extract_matching(g_allowed: &Graph, forest: &BlossomForest) -> Result<Matching, AlgError> {
    let adj = simple_adjacency(g_allowed);
    let n = g_allowed.n();
    let mut mate = vec![NONE; n];
    let all: Vec<usize> = (0..n).collect();
    complete(&adj, forest, &all, None, &forest.roots(), &mut mate)?;
    let m = Matching::from_mate(g_allowed, &mate);
    if !m.is_perfect(n) {
        return Err(AlgError::InternalInfeasible(1));
    }
    Ok(m)
}

// ----- pipeline -----

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchingResult {
    pub matching: Matching,
    pub allowed: Vec<(usize, usize)>,
    /// One forest per component of the allowed graph, in original labels.
    pub forests: Vec<BlossomForest>,
    /// Fresh seeds used after a failed attempt.
    pub reseeded: usize,
    pub error_bound: f64,
}

fn components(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut uf: Vec<usize> = (0..n).collect();
    for &(u, v) in edges {
        let (a, b) = (find(&mut uf, u), find(&mut uf, v));
        uf[a] = b;
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        let r = find(&mut uf, v);
        groups.entry(r).or_default().push(v);
    }
    groups.into_values().collect()
}

fn solve_component(g: &Graph, comp: &[usize], allowed: &[(usize, usize)], params: &Params) -> Result<(Matching, BlossomForest), AlgError> {
    if comp.len() % 2 == 1 {
        return Err(AlgError::InternalInfeasible(1));
    }
    let mut pos = vec![NONE; g.n()];
    for (i, &v) in comp.iter().enumerate() {
        pos[v] = i;
    }
    let local = allowed
        .iter()
        .filter(|&&(u, _)| pos[u] != NONE)
        .map(|&(u, v)| (pos[u], pos[v], g.weight(u, v).expect("allowed edge exists")));
    let h = Graph::new(comp.len(), false, local)?;
    let defect = defect_values(&h, params).map_err(|e| match e {
        AlgError::NoPerfectMatching => AlgError::InternalInfeasible(1),
        e => e,
    })?;
    let forest = blossom_family(&h, &defect);
    let m = extract_matching(&h, &forest)?;
    if m.weight != defect.wm {
        return Err(AlgError::InternalInfeasible(1));
    }
    let edges = m.edges.iter().map(|&(a, b)| (comp[a].min(comp[b]), comp[a].max(comp[b]))).collect();
    Ok((Matching { edges, weight: m.weight }, forest.relabel(comp, g.n())))
}

fn mwpm_once(g: &Graph, params: &Params) -> Result<MatchingResult, AlgError> {
    let n = g.n();
    let (allowed, wm) = allowed_core(g, params)?;
    let comps = components(n, &allowed);
    let parts = comps
        .par_iter()
        .map(|c| solve_component(g, c, &allowed, params))
        .collect::<Result<Vec<_>, _>>()?;
    let mut edges = Vec::new();
    let mut forests = Vec::new();
    for (m, f) in parts {
        edges.extend(m.edges);
        if !f.sets.is_empty() {
            forests.push(f);
        }
    }
    edges.sort_unstable();
    let weight = edges.iter().map(|&(a, b)| g.weight(a, b).unwrap_or(0)).sum();
    let matching = Matching { edges, weight };
    if !matching.is_perfect(n) || weight != wm {
        return Err(AlgError::InternalInfeasible(1));
    }
    let tests = g.edges().len() + n * n + 2;
    Ok(MatchingResult { matching, allowed, forests, reseeded: 0, error_bound: params.error_bound(tests, n) })
}

/// Minimum-weight perfect matching. Each attempt is verified (perfect, and
/// weight equal to the determinant's prediction); a failed attempt reseeds.
pub fn mwpm(g: &Graph, params: &Params) -> Result<MatchingResult, AlgError> {
    g.require_undirected()?;
    if unweighted_perfect_matching(g).is_none() {
        return Err(AlgError::NoPerfectMatching);
    }
    for attempt in 0..=params.retries {
        match mwpm_once(g, &params.attempt(attempt)) {
            Ok(mut r) => {
                r.reseeded = attempt;
                return Ok(r);
            }
            Err(AlgError::InternalInfeasible(_) | AlgError::NoPerfectMatching | AlgError::Consistency(_)) => continue,
            Err(AlgError::Engine(EngineError::SingularEverywhere)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(AlgError::InternalInfeasible(params.retries + 1))
}

/// Second element of the sorted multiset of perfect matching weights. Ties
/// with the minimum report the minimum; a unique perfect matching gives
/// `None`.
pub fn second_smallest_pm_weight(g: &Graph, params: &Params) -> Result<Option<i64>, AlgError> {
    g.require_undirected()?;
    let n = g.n();
    if n % 2 == 1 {
        return Err(AlgError::NoPerfectMatching);
    }
    let t = encode_tutte(g, &params.sigma("second"))?;
    let det = det_poly(&t.matrix)?;
    let mut support = det.coeffs.support();
    let d0 = support.next().ok_or(AlgError::NoPerfectMatching)?;
    let d1 = support.next();
    let wm = (d0 as i64 - n as i64 * t.shift) / 2;
    let (allowed, _) = allowed_core(g, params)?;
    if 2 * allowed.len() > n {
        return Ok(Some(wm));
    }
    Ok(d1.map(|d| d as i64 - n as i64 * t.shift - wm))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ug(n: usize, e: &[(usize, usize, i64)]) -> Graph {
        Graph::new(n, false, e.iter().copied()).unwrap()
    }

    fn c4(w: [i64; 4]) -> Graph {
        ug(4, &[(0, 1, w[0]), (1, 2, w[1]), (2, 3, w[2]), (0, 3, w[3])])
    }

    fn p() -> Params {
        Params::new(5)
    }

    #[test]
    fn edmonds_basics() {
        assert_eq!(unweighted_perfect_matching(&ug(2, &[(0, 1, 7)])).unwrap().edges, vec![(0, 1)]);
        let c5 = ug(5, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (0, 4, 1)]);
        assert!(unweighted_perfect_matching(&c5).is_none());
        assert_eq!(maximum_cardinality_matching(&c5).edges.len(), 2);
        // needs a blossom: triangle with a tail on both sides
        let g = ug(6, &[(0, 1, 0), (1, 2, 0), (2, 0, 0), (0, 3, 0), (1, 4, 0), (2, 5, 0)]);
        assert!(unweighted_perfect_matching(&g).is_some());
    }

    #[test]
    fn c4_allowed_and_defect() {
        assert_eq!(allowed_edges(&c4([1, 2, 1, 2]), &p()).unwrap(), vec![(0, 1), (2, 3)]);
        assert_eq!(allowed_edges(&c4([1, 1, 1, 1]), &p()).unwrap().len(), 4);
        let d = defect_values(&c4([1, 2, 1, 2]), &p()).unwrap();
        assert_eq!(d, DefectValues { wm: 2, wmv: vec![1; 4] });
        let k2 = defect_values(&ug(2, &[(0, 1, 9)]), &p()).unwrap();
        assert_eq!(k2, DefectValues { wm: 9, wmv: vec![0, 0] });
    }

    #[test]
    fn c4_has_no_blossom() {
        let g = c4([1, 1, 1, 1]);
        let f = blossom_family(&g, &defect_values(&g, &p()).unwrap());
        assert!(f.sets.is_empty());
        assert_eq!(mwpm(&g, &p()).unwrap().matching.weight, 2);
    }

    #[test]
    fn triangle_with_hub_is_a_blossom() {
        let g = ug(4, &[(0, 1, 1), (1, 2, 1), (0, 2, 1), (0, 3, 5), (1, 3, 5), (2, 3, 5)]);
        let d = defect_values(&g, &p()).unwrap();
        assert_eq!(d, DefectValues { wm: 6, wmv: vec![1; 4] });
        let f = blossom_family(&g, &d);
        assert_eq!(f.sets, vec![vec![0, 1, 2]]);
        let m = extract_matching(&g, &f).unwrap();
        assert_eq!(m.weight, 6);
        assert_eq!(m.edges.iter().filter(|&&(a, b)| (a < 3) != (b < 3)).count(), 1);
        // extraction never looks at weights
        let heavy = ug(4, &[(0, 1, 40), (1, 2, -3), (0, 2, 9), (0, 3, 0), (1, 3, 7), (2, 3, 2)]);
        assert_eq!(extract_matching(&heavy, &f).unwrap().edges, m.edges);
    }

    #[test]
    fn mwpm_small_cases() {
        let r = mwpm(&c4([1, 2, 1, 2]), &p()).unwrap();
        assert_eq!(r.matching, Matching { edges: vec![(0, 1), (2, 3)], weight: 2 });
        assert_eq!(r.reseeded, 0);
        assert_eq!(mwpm(&ug(2, &[(0, 1, -4)]), &p()).unwrap().matching.weight, -4);
        let odd = ug(3, &[(0, 1, 1), (1, 2, 1)]);
        assert_eq!(mwpm(&odd, &p()), Err(AlgError::NoPerfectMatching));
        let star = ug(4, &[(0, 1, 1), (0, 2, 1), (0, 3, 1)]);
        assert_eq!(mwpm(&star, &p()), Err(AlgError::NoPerfectMatching));
    }

    #[test]
    fn second_smallest_conventions() {
        assert_eq!(second_smallest_pm_weight(&c4([1, 2, 1, 2]), &p()).unwrap(), Some(4));
        assert_eq!(second_smallest_pm_weight(&c4([1, 1, 1, 1]), &p()).unwrap(), Some(2));
        let path = ug(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]);
        assert_eq!(second_smallest_pm_weight(&path, &p()).unwrap(), None);
    }

    #[test]
    fn laminarity_check() {
        let f = BlossomForest::from_sets(7, vec![vec![0, 1, 2], vec![0, 1, 2, 3, 4]], vec![]);
        assert!(f.is_laminar());
        assert_eq!(f.parent, vec![Some(1), None]);
        let g = BlossomForest::from_sets(7, vec![vec![0, 1, 2], vec![2, 3, 4]], vec![]);
        assert!(!g.is_laminar());
    }
}
