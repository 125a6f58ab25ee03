//! Shortest cycles in directed graphs, undirected graphs with nonnegative
//! weights, and undirected graphs with negative weights (through the split
//! graph), plus the set of vertices on cycles of bounded weight.

use serde::Serialize;

use crate::engine::{AdjugateSamples, GradientTable, PolyMatrix};
use crate::error::AlgError;
use crate::field::{Fe, PrimeField};
use crate::graph::{
    build_split_graph, edge_var, encode_directed, encode_tutte, encode_undirected_bidirected, Graph, GraphError,
    SplitGraph,
};
use crate::matching::mwpm;
use crate::params::Params;
use crate::paths::{bellman_ford_path, dijkstra_path};
use crate::poly::FieldPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleWeight {
    Finite(i64),
    NoCycle,
    NegativeCycle,
}

impl CycleWeight {
    pub fn finite(self) -> Option<i64> {
        match self {
            CycleWeight::Finite(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleResult {
    pub weight: CycleWeight,
    /// Vertex sequence of a simple cycle; the closing edge returns from the
    /// last vertex to the first.
    pub cycle: Option<Vec<usize>>,
    /// Edge picked from the gradient.
    pub certificate: Option<(usize, usize)>,
    /// Upper bound on the probability that a zero test misfired.
    pub error_bound: f64,
}

impl CycleResult {
    fn weight_only(weight: CycleWeight, error_bound: f64) -> Self {
        Self { weight, cycle: None, certificate: None, error_bound }
    }
}

/// Checks that `cycle` is simple and closed in `g` with total `weight`.
pub fn verify_cycle(g: &Graph, cycle: &[usize], weight: i64) -> Result<(), AlgError> {
    let min_len = if g.directed() { 2 } else { 3 };
    if cycle.len() < min_len {
        return Err(AlgError::Consistency(format!("cycle {cycle:?} too short")));
    }
    let mut seen = vec![false; g.n()];
    let mut total = 0;
    for (i, &a) in cycle.iter().enumerate() {
        if a >= g.n() || std::mem::replace(&mut seen[a], true) {
            return Err(AlgError::Consistency(format!("cycle {cycle:?} repeats a vertex")));
        }
        let b = cycle[(i + 1) % cycle.len()];
        total += g
            .weight(a, b)
            .ok_or_else(|| AlgError::Consistency(format!("cycle {cycle:?} uses missing edge ({a}, {b})")))?;
    }
    if total != weight {
        return Err(AlgError::Consistency(format!("cycle {cycle:?} weighs {total}, expected {weight}")));
    }
    Ok(())
}

/// A single variable, or an antisymmetric pair `x_a d/dx_a - x_b d/dx_b`,
/// whose prefix-summed gradient being nonzero at degree `c + offset`
/// certifies a cycle of weight `<= c` through `edge`.
#[derive(Debug, Clone)]
struct Witness {
    edge: (usize, usize),
    /// Base vertices covered when the witness fires.
    vertices: [usize; 2],
    /// Whether the edge is nonnegative (only those are used to extract
    /// cycles from the split graph).
    nonneg: bool,
    probe: Probe,
}

#[derive(Debug, Clone, Copy)]
enum Probe {
    Single(usize),
    Pair { a: usize, b: usize, va: Fe, vb: Fe },
}

struct Witnesses {
    field: PrimeField,
    table: GradientTable,
    offset: usize,
    list: Vec<Witness>,
    zero_tests: usize,
    degree: usize,
}

impl Witnesses {
    fn value(&self, w: &Witness, c: usize) -> Fe {
        let f = self.field;
        let d = c + self.offset;
        match w.probe {
            Probe::Single(x) => self.table.prefix(x, d),
            Probe::Pair { a, b, va, vb } => {
                f.sub(f.mul(va, self.table.prefix(a, d)), f.mul(vb, self.table.prefix(b, d)))
            }
        }
    }

    fn any(&self, c: usize) -> bool {
        self.list.iter().any(|w| !self.value(w, c).is_zero())
    }

    fn flagged(&self, c: usize) -> impl Iterator<Item = &Witness> {
        self.list.iter().filter(move |w| !self.value(w, c).is_zero())
    }

    /// Smallest `c` in `[0, hi]` with a firing witness.
    fn min_weight(&self, hi: usize) -> Option<usize> {
        if !self.any(hi) {
            return None;
        }
        let (mut lo, mut hi) = (0usize, hi);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.any(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Some(lo)
    }

    fn vertices(&self, c: usize, n: usize) -> Vec<usize> {
        let mut hit = vec![false; n];
        for w in self.flagged(c) {
            hit[w.vertices[0]] = true;
            hit[w.vertices[1]] = true;
        }
        (0..n).filter(|&v| hit[v]).collect()
    }

    fn error_bound(&self, params: &Params) -> f64 {
        params.error_bound(self.zero_tests, self.degree)
    }
}

fn gradient_for(m: &PolyMatrix, samples: &AdjugateSamples, vars: &[usize], params: &Params) -> Result<GradientTable, AlgError> {
    let mut sorted = vars.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(samples.gradients(m, &sorted, params.backend)?)
}

fn var_value(m: &PolyMatrix, var: usize) -> Fe {
    m.var_links()[&var].value
}

// ----- directed -----

fn directed_matrix(g: &Graph, params: &Params) -> Result<PolyMatrix, AlgError> {
    let mut m = encode_directed(g, &params.sigma("directed-cycle"))?;
    m.add_identity(g.w_bound() as usize);
    Ok(m)
}

/// `deg*(det - y^(nW)) - nW`, classified.
fn residual_weight(det: &FieldPoly, f: &PrimeField, offset: usize) -> CycleWeight {
    let residual = det.sub(f, &FieldPoly::monomial(Fe::ONE, offset));
    match residual.deg_star() {
        None => CycleWeight::NoCycle,
        Some(d) if d < offset => CycleWeight::NegativeCycle,
        Some(d) => CycleWeight::Finite((d - offset) as i64),
    }
}

struct DirectedSetup {
    m: PolyMatrix,
    samples: AdjugateSamples,
    weight: CycleWeight,
    offset: usize,
}

fn directed_setup(g: &Graph, params: &Params) -> Result<DirectedSetup, AlgError> {
    if !g.directed() {
        return Err(GraphError::NeedsDirected.into());
    }
    let m = directed_matrix(g, params)?;
    let samples = AdjugateSamples::new(&m)?;
    let offset = g.n() * g.w_bound() as usize;
    let weight = residual_weight(&samples.det_poly().coeffs, &params.field, offset);
    Ok(DirectedSetup { m, samples, weight, offset })
}

pub fn directed_cycle_weight(g: &Graph, params: &Params) -> Result<CycleResult, AlgError> {
    if !g.directed() {
        return Err(GraphError::NeedsDirected.into());
    }
    let m = directed_matrix(g, params)?;
    let det = crate::engine::det_poly(&m)?;
    let offset = g.n() * g.w_bound() as usize;
    let weight = residual_weight(&det.coeffs, &params.field, offset);
    let bound = params.error_bound(m.det_degree_bound() + 1, g.n());
    Ok(CycleResult::weight_only(weight, bound))
}

/// Shortest directed cycle with a certificate. The edge is the first
/// variable with nonzero gradient at the minimal degree; the cycle is closed
/// by a Bellman-Ford path.
pub fn directed_cycle(g: &Graph, params: &Params) -> Result<CycleResult, AlgError> {
    let n = g.n();
    for attempt in 0..=params.retries {
        let p = params.attempt(attempt);
        let s = directed_setup(g, &p)?;
        let bound = p.error_bound(s.m.det_degree_bound() + 1 + g.edges().len(), n);
        let CycleWeight::Finite(d) = s.weight else {
            return Ok(CycleResult::weight_only(s.weight, bound));
        };
        let vars: Vec<usize> = s.m.var_links().keys().copied().collect();
        let table = gradient_for(&s.m, &s.samples, &vars, &p)?;
        let target = d as usize + s.offset;
        let Some(&id) = vars.iter().find(|&&x| !table.coeff(x, target).is_zero()) else {
            continue;
        };
        let (u, v) = (id / n, id % n);
        let (_, path) = bellman_ford_path(&g.adjacency(), v, u)
            .ok_or_else(|| AlgError::Consistency(format!("no path closes edge ({u}, {v})")))?;
        let mut cycle = vec![u];
        cycle.extend_from_slice(&path[..path.len() - 1]);
        verify_cycle(g, &cycle, d)?;
        return Ok(CycleResult { weight: s.weight, cycle: Some(cycle), certificate: Some((u, v)), error_bound: bound });
    }
    Err(AlgError::NoAllowedEdge(params.retries + 1))
}

fn directed_witnesses(g: &Graph, params: &Params) -> Result<(Witnesses, CycleWeight), AlgError> {
    let s = directed_setup(g, params)?;
    let vars: Vec<usize> = s.m.var_links().keys().copied().collect();
    let table = gradient_for(&s.m, &s.samples, &vars, params)?;
    let list = g
        .edges()
        .iter()
        .map(|e| Witness {
            edge: (e.u, e.v),
            vertices: [e.u, e.v],
            nonneg: e.w >= 0,
            probe: Probe::Single(edge_var(g.n(), e.u, e.v)),
        })
        .collect();
    let w = Witnesses {
        field: params.field,
        table,
        offset: s.offset,
        list,
        zero_tests: s.m.det_degree_bound() + 1 + g.edges().len(),
        degree: g.n(),
    };
    Ok((w, s.weight))
}

// ----- undirected, nonnegative -----

fn bidirected_witnesses(g: &Graph, params: &Params) -> Result<Witnesses, AlgError> {
    let mut m = encode_undirected_bidirected(g, &params.sigma("undirected-cycle"))?;
    m.add_identity(0);
    let samples = AdjugateSamples::new(&m)?;
    let n = g.n();
    let list: Vec<Witness> = g
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (edge_var(n, e.u, e.v), edge_var(n, e.v, e.u));
            Witness {
                edge: (e.u, e.v),
                vertices: [e.u, e.v],
                nonneg: true,
                probe: Probe::Pair { a, b, va: var_value(&m, a), vb: var_value(&m, b) },
            }
        })
        .collect();
    let vars: Vec<usize> = m.var_links().keys().copied().collect();
    let table = gradient_for(&m, &samples, &vars, params)?;
    Ok(Witnesses {
        field: params.field,
        table,
        offset: 0,
        zero_tests: list.len() * (g.n() * g.w_bound() as usize + 1).ilog2() as usize + list.len(),
        degree: g.n(),
        list,
    })
}

fn max_cycle_weight(g: &Graph) -> usize {
    g.n() * g.w_bound() as usize
}

fn require_nonneg(g: &Graph) -> Result<(), AlgError> {
    g.require_undirected()?;
    match g.edges().iter().find(|e| e.w < 0) {
        Some(e) => Err(GraphError::NegativeWeight { u: e.u + 1, v: e.v + 1, w: e.w }.into()),
        None => Ok(()),
    }
}

/// Undirected, nonnegative weights: the smallest `c` for which some edge
/// has a nonzero antisymmetric derivative of the prefix-summed determinant.
pub fn undirected_cycle_weight(g: &Graph, params: &Params) -> Result<CycleResult, AlgError> {
    require_nonneg(g)?;
    let w = bidirected_witnesses(g, params)?;
    let weight = match w.min_weight(max_cycle_weight(g)) {
        Some(c) => CycleWeight::Finite(c as i64),
        None => CycleWeight::NoCycle,
    };
    Ok(CycleResult::weight_only(weight, w.error_bound(params)))
}

/// As [`undirected_cycle_weight`], closing the selected edge `uv` with a
/// Dijkstra path from `v` to `u` avoiding `uv`.
pub fn undirected_cycle(g: &Graph, params: &Params) -> Result<CycleResult, AlgError> {
    require_nonneg(g)?;
    for attempt in 0..=params.retries {
        let p = params.attempt(attempt);
        let w = bidirected_witnesses(g, &p)?;
        let Some(c) = w.min_weight(max_cycle_weight(g)) else {
            return Ok(CycleResult::weight_only(CycleWeight::NoCycle, w.error_bound(&p)));
        };
        let adj = g.adjacency();
        for wit in w.flagged(c) {
            let (u, v) = wit.edge;
            let Some((pw, path)) = dijkstra_path(&adj, v, u, (u, v)) else { continue };
            let wuv = g.weight(u, v).unwrap_or(0);
            if pw + wuv != c as i64 {
                continue;
            }
            let mut cycle = vec![u];
            cycle.extend_from_slice(&path[..path.len() - 1]);
            verify_cycle(g, &cycle, c as i64)?;
            return Ok(CycleResult {
                weight: CycleWeight::Finite(c as i64),
                cycle: Some(cycle),
                certificate: Some((u, v)),
                error_bound: w.error_bound(&p),
            });
        }
    }
    Err(AlgError::NoAllowedEdge(params.retries + 1))
}

// ----- undirected, negative weights allowed -----

struct SplitSetup {
    split: SplitGraph,
    witnesses: Witnesses,
    /// Minimum perfect matching weight of the split graph.
    matching_weight: i64,
}

fn split_setup(g: &Graph, params: &Params) -> Result<Option<SplitSetup>, AlgError> {
    g.require_undirected()?;
    let split = match build_split_graph(g) {
        Ok(s) => s,
        Err(GraphError::NegativeCycleInNegativeEdges) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let nn = split.graph.n();
    let tutte = encode_tutte(&split.graph, &params.sigma("split-cycle"))?;
    let m = tutte.matrix;
    let samples = AdjugateSamples::new(&m)?;
    let det = samples.det_poly();
    let ds = det.deg_star.ok_or(AlgError::Consistency("split graph lost its perfect matching".into()))?;
    let shifted = ds as i64 - nn as i64 * tutte.shift;
    if shifted % 2 != 0 {
        return Err(AlgError::Consistency(format!("odd determinant degree {ds}")));
    }
    let matching_weight = shifted / 2;

    let var = |a: usize, b: usize| edge_var(nn, a.min(b), a.max(b));
    let mut list = Vec::new();
    let mut k = 0;
    for e in g.edges() {
        let (u, v) = (e.u, e.v);
        let (a, b) = if e.w >= 0 {
            (var(SplitGraph::v1(u), SplitGraph::v2(v)), var(SplitGraph::v2(u), SplitGraph::v1(v)))
        } else {
            let e1 = split.e1(k);
            k += 1;
            (var(SplitGraph::v1(u), e1), var(SplitGraph::v2(u), e1))
        };
        list.push(Witness {
            edge: (u, v),
            vertices: [u, v],
            nonneg: e.w >= 0,
            probe: Probe::Pair { a, b, va: var_value(&m, a), vb: var_value(&m, b) },
        });
    }
    let vars: Vec<usize> = list
        .iter()
        .flat_map(|w| match w.probe {
            Probe::Pair { a, b, .. } => [a, b],
            Probe::Single(x) => [x, x],
        })
        .collect();
    let table = gradient_for(&m, &samples, &vars, params)?;
    let witnesses = Witnesses {
        field: params.field,
        table,
        offset: nn * tutte.shift as usize,
        zero_tests: m.det_degree_bound() + 1 + list.len() * (max_cycle_weight(g) + 1).ilog2() as usize + list.len(),
        degree: nn,
        list,
    };
    Ok(Some(SplitSetup { split, witnesses, matching_weight }))
}

/// Undirected graph, weights of any sign. Negative cycle iff the split
/// graph has a perfect matching of negative weight (or the negative edges
/// alone close a cycle).
pub fn undirected_negative_cycle_weight(g: &Graph, params: &Params) -> Result<CycleResult, AlgError> {
    let Some(s) = split_setup(g, params)? else {
        return Ok(CycleResult::weight_only(CycleWeight::NegativeCycle, 0.0));
    };
    let bound = s.witnesses.error_bound(params);
    if s.matching_weight < 0 {
        return Ok(CycleResult::weight_only(CycleWeight::NegativeCycle, bound));
    }
    let weight = match s.witnesses.min_weight(max_cycle_weight(g)) {
        Some(c) => CycleWeight::Finite(c as i64),
        None => CycleWeight::NoCycle,
    };
    Ok(CycleResult::weight_only(weight, bound))
}

/// As [`undirected_negative_cycle_weight`], with a cycle: for a selected
/// nonnegative edge `uv`, a minimum perfect matching of the split graph
/// without `u1`, `v2` and the edge `u2 v1` traces a shortest `u`-`v` path
/// avoiding `uv`.
pub fn undirected_negative_cycle(g: &Graph, params: &Params) -> Result<CycleResult, AlgError> {
    for attempt in 0..=params.retries {
        let p = params.attempt(attempt);
        let Some(s) = split_setup(g, &p)? else {
            return Ok(CycleResult::weight_only(CycleWeight::NegativeCycle, 0.0));
        };
        let bound = s.witnesses.error_bound(&p);
        if s.matching_weight < 0 {
            return Ok(CycleResult::weight_only(CycleWeight::NegativeCycle, bound));
        }
        let Some(c) = s.witnesses.min_weight(max_cycle_weight(g)) else {
            return Ok(CycleResult::weight_only(CycleWeight::NoCycle, bound));
        };
        let picks: Vec<(usize, usize)> = s.witnesses.flagged(c).filter(|w| w.nonneg).map(|w| w.edge).collect();
        for (u, v) in picks {
            match cycle_through_edge(&s.split, u, v, &p) {
                Ok(cycle) if verify_cycle(g, &cycle, c as i64).is_ok() => {
                    return Ok(CycleResult {
                        weight: CycleWeight::Finite(c as i64),
                        cycle: Some(cycle),
                        certificate: Some((u, v)),
                        error_bound: bound,
                    });
                }
                _ => continue,
            }
        }
    }
    Err(AlgError::NoAllowedEdge(params.retries + 1))
}

/// Shortest cycle through the nonnegative edge `uv`, read off a matching of
/// the split graph. Returned as `[u, ..., v]`.
fn cycle_through_edge(split: &SplitGraph, u: usize, v: usize, params: &Params) -> Result<Vec<usize>, AlgError> {
    let gg = &split.graph;
    let (drop_a, drop_b) = (SplitGraph::v1(u), SplitGraph::v2(v));
    let keep: Vec<usize> = (0..gg.n()).filter(|&x| x != drop_a && x != drop_b).collect();
    let mut pos = vec![usize::MAX; gg.n()];
    for (i, &x) in keep.iter().enumerate() {
        pos[x] = i;
    }
    let (ban_a, ban_b) = (pos[SplitGraph::v2(u)], pos[SplitGraph::v1(v)]);
    let sub = gg
        .induced(&keep)
        .filter_edges(|e| (e.u, e.v) != (ban_a.min(ban_b), ban_a.max(ban_b)));
    let m = mwpm(&sub, &params.attempt(0))?;
    let mut mate = vec![usize::MAX; gg.n()];
    for &(a, b) in &m.matching.edges {
        let (a, b) = (keep[a], keep[b]);
        mate[a] = b;
        mate[b] = a;
    }

    let mut path = vec![u];
    let mut cur = SplitGraph::v2(u);
    let target = SplitGraph::v1(v);
    for _ in 0..gg.n() {
        let mut next = mate[cur];
        if next == usize::MAX {
            break;
        }
        if split.base_vertex(next).is_none() {
            // through a negative-edge gadget: its twin is matched onward
            next = mate[next ^ 1];
            if next == usize::MAX || split.base_vertex(next).is_none() {
                break;
            }
        }
        let b = next / 2;
        path.push(b);
        if next == target {
            return Ok(path);
        }
        cur = next ^ 1;
    }
    Err(AlgError::Consistency(format!("matching does not trace a path from {u} to {v}")))
}

// ----- dispatch -----

/// Weight only, choosing the route by graph kind.
pub fn shortest_cycle_weight(g: &Graph, params: &Params) -> Result<CycleResult, AlgError> {
    if g.directed() {
        directed_cycle_weight(g, params)
    } else if g.has_negative() {
        undirected_negative_cycle_weight(g, params)
    } else {
        undirected_cycle_weight(g, params)
    }
}

/// Weight and certificate, choosing the route by graph kind.
pub fn shortest_cycle(g: &Graph, params: &Params) -> Result<CycleResult, AlgError> {
    if g.directed() {
        directed_cycle(g, params)
    } else if g.has_negative() {
        undirected_negative_cycle(g, params)
    } else {
        undirected_cycle(g, params)
    }
}

/// Answers "which vertices lie on a cycle of weight `<= t`" for every `t`
/// from one set of gradients.
pub struct ShortCycleIndex {
    n: usize,
    witnesses: Witnesses,
}

impl ShortCycleIndex {
    pub fn new(g: &Graph, params: &Params) -> Result<Self, AlgError> {
        let witnesses = if g.directed() {
            let (w, weight) = directed_witnesses(g, params)?;
            if weight == CycleWeight::NegativeCycle {
                return Err(AlgError::NegativeCycle);
            }
            w
        } else if g.has_negative() {
            let s = split_setup(g, params)?.ok_or(AlgError::NegativeCycle)?;
            if s.matching_weight < 0 {
                return Err(AlgError::NegativeCycle);
            }
            s.witnesses
        } else {
            bidirected_witnesses(g, params)?
        };
        Ok(Self { n: g.n(), witnesses })
    }

    /// Sorted vertices on some cycle of weight `<= t`.
    pub fn vertices(&self, t: i64) -> Vec<usize> {
        if t < 0 {
            return Vec::new();
        }
        self.witnesses.vertices(t as usize, self.n)
    }

    pub fn error_bound(&self, params: &Params) -> f64 {
        self.witnesses.error_bound(params)
    }
}

pub fn vertices_on_short_cycles(g: &Graph, t: i64, params: &Params) -> Result<Vec<usize>, AlgError> {
    Ok(ShortCycleIndex::new(g, params)?.vertices(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> Params {
        Params::new(17)
    }

    fn dg(n: usize, e: &[(usize, usize, i64)]) -> Graph {
        Graph::new(n, true, e.iter().copied()).unwrap()
    }

    fn ug(n: usize, e: &[(usize, usize, i64)]) -> Graph {
        Graph::new(n, false, e.iter().copied()).unwrap()
    }

    #[test]
    fn directed_two_cycle() {
        let g = dg(2, &[(0, 1, 3), (1, 0, 4)]);
        assert_eq!(directed_cycle_weight(&g, &params()).unwrap().weight, CycleWeight::Finite(7));
    }

    #[test]
    fn directed_triangle_with_certificate() {
        let g = dg(3, &[(0, 1, 1), (1, 2, 2), (2, 0, 3)]);
        let r = directed_cycle(&g, &params()).unwrap();
        assert_eq!(r.weight, CycleWeight::Finite(6));
        assert_eq!(r.cycle.as_deref().map(<[usize]>::len), Some(3));
        assert!(r.error_bound < 1e-12);
    }

    #[test]
    fn directed_negative_two_cycle() {
        let g = dg(2, &[(0, 1, -3), (1, 0, 1)]);
        assert_eq!(directed_cycle_weight(&g, &params()).unwrap().weight, CycleWeight::NegativeCycle);
    }

    #[test]
    fn directed_acyclic() {
        let g = dg(3, &[(0, 1, 1), (1, 2, -1), (0, 2, 4)]);
        assert_eq!(directed_cycle(&g, &params()).unwrap().weight, CycleWeight::NoCycle);
    }

    #[test]
    fn directed_picks_lighter_triangle() {
        let g = dg(6, &[(0, 1, 1), (1, 2, 1), (2, 0, 1), (3, 4, 2), (4, 5, 2), (5, 3, 2)]);
        let r = directed_cycle(&g, &params()).unwrap();
        assert_eq!(r.weight, CycleWeight::Finite(3));
        let mut c = r.cycle.unwrap();
        c.sort();
        assert_eq!(c, vec![0, 1, 2]);
    }

    #[test]
    fn undirected_triangle_and_single_edge() {
        let tri = ug(3, &[(0, 1, 1), (1, 2, 2), (0, 2, 3)]);
        let r = undirected_cycle(&tri, &params()).unwrap();
        assert_eq!(r.weight, CycleWeight::Finite(6));
        let edge = ug(2, &[(0, 1, 5)]);
        assert_eq!(undirected_cycle_weight(&edge, &params()).unwrap().weight, CycleWeight::NoCycle);
    }

    #[test]
    fn single_edge_antisymmetry_cancels() {
        // det(A + I) - 1 has a y^(2w) term from the 2-cycle, but the
        // antisymmetric derivative vanishes everywhere
        let edge = ug(2, &[(0, 1, 3)]);
        let mut m = encode_undirected_bidirected(&edge, &params().sigma("t")).unwrap();
        m.add_identity(0);
        let det = crate::engine::det_poly(&m).unwrap();
        assert!(!det.coeffs.coeff(6).is_zero());
        let w = bidirected_witnesses(&edge, &params()).unwrap();
        for c in 0..=6 {
            assert!(!w.any(c));
        }
    }

    #[test]
    fn c4_unit() {
        let g = ug(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)]);
        let r = undirected_cycle(&g, &params()).unwrap();
        assert_eq!(r.weight, CycleWeight::Finite(4));
        assert_eq!(r.cycle.unwrap().len(), 4);
    }

    #[test]
    fn negative_triangle_route() {
        // a-b (1), b-c (-1), c-a (1)
        let g = ug(3, &[(0, 1, 1), (1, 2, -1), (0, 2, 1)]);
        let r = undirected_negative_cycle(&g, &params()).unwrap();
        assert_eq!(r.weight, CycleWeight::Finite(1));
        verify_cycle(&g, &r.cycle.unwrap(), 1).unwrap();
    }

    #[test]
    fn single_negative_edge_is_not_a_cycle() {
        let g = ug(2, &[(0, 1, -1)]);
        assert_eq!(undirected_negative_cycle_weight(&g, &params()).unwrap().weight, CycleWeight::NoCycle);
        let path = ug(3, &[(0, 1, 1), (1, 2, -1)]);
        assert_eq!(undirected_negative_cycle_weight(&path, &params()).unwrap().weight, CycleWeight::NoCycle);
    }

    #[test]
    fn negative_cycle_detected_undirected() {
        let g = ug(3, &[(0, 1, 1), (1, 2, -3), (0, 2, 1)]);
        assert_eq!(undirected_negative_cycle_weight(&g, &params()).unwrap().weight, CycleWeight::NegativeCycle);
        let all_neg = ug(3, &[(0, 1, -1), (1, 2, -1), (0, 2, -1)]);
        assert_eq!(undirected_negative_cycle_weight(&all_neg, &params()).unwrap().weight, CycleWeight::NegativeCycle);
    }

    #[test]
    fn nonnegative_routes_agree() {
        let g = ug(5, &[(0, 1, 2), (1, 2, 1), (2, 0, 3), (2, 3, 1), (3, 4, 0), (4, 2, 2)]);
        let a = undirected_cycle_weight(&g, &params()).unwrap().weight;
        let b = undirected_negative_cycle_weight(&g, &params()).unwrap().weight;
        assert_eq!(a, CycleWeight::Finite(3));
        assert_eq!(a, b);
    }

    #[test]
    fn short_cycle_vertices() {
        let two = ug(6, &[(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 2), (4, 5, 2), (3, 5, 2)]);
        assert_eq!(vertices_on_short_cycles(&two, 3, &params()).unwrap(), vec![0, 1, 2]);
        assert_eq!(vertices_on_short_cycles(&two, 6, &params()).unwrap(), (0..6).collect::<Vec<_>>());
        let forest = ug(4, &[(0, 1, 1), (1, 2, 1)]);
        assert!(vertices_on_short_cycles(&forest, 8, &params()).unwrap().is_empty());
        let neg = dg(2, &[(0, 1, -3), (1, 0, 1)]);
        assert_eq!(vertices_on_short_cycles(&neg, 1, &params()), Err(AlgError::NegativeCycle));
    }

    #[test]
    fn verifier_rejects_bad_cycles() {
        let g = ug(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]);
        assert!(verify_cycle(&g, &[0, 1, 2], 3).is_ok());
        assert!(verify_cycle(&g, &[0, 1, 2], 4).is_err());
        assert!(verify_cycle(&g, &[0, 1], 2).is_err());
        assert!(verify_cycle(&g, &[0, 1, 0], 2).is_err());
    }
}
