//! All-pairs distances, eccentricities, diameter and radius, read off the
//! lowest y-degrees of adjugate entries.

use serde::Serialize;

use crate::engine::{AdjugateSamples, EngineError, GradientTable, PolyMatrix};
use crate::error::AlgError;
use crate::field::Fe;
use crate::graph::{build_split_graph, encode_directed, encode_tutte, Graph, GraphError, SplitGraph};
use crate::params::Params;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Extent {
    Finite(i64),
    Unbounded,
}

impl Extent {
    pub fn finite(self) -> Option<i64> {
        match self {
            Extent::Finite(x) => Some(x),
            Extent::Unbounded => None,
        }
    }
}

/// `dist[i][j]`: weight of a shortest path from `i` to `j`, `None` when
/// unreachable. The diagonal is 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceMatrix {
    pub dist: Vec<Vec<Option<i64>>>,
    /// Probability bound for a wrongly reported "unreachable".
    #[serde(skip)]
    pub error_bound: f64,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.dist.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<i64> {
        self.dist[i][j]
    }

    pub fn eccentricities(&self) -> Vec<Extent> {
        self.dist
            .iter()
            .map(|row| match row.iter().copied().collect::<Option<Vec<i64>>>() {
                Some(r) => Extent::Finite(r.into_iter().max().unwrap_or(0)),
                None => Extent::Unbounded,
            })
            .collect()
    }

    /// Unbounded as soon as one pair is unreachable.
    pub fn diameter(&self) -> Extent {
        self.eccentricities().into_iter().max().unwrap_or(Extent::Finite(0))
    }

    /// Unbounded only when every vertex misses some other vertex.
    pub fn radius(&self) -> Extent {
        self.eccentricities().into_iter().min().unwrap_or(Extent::Finite(0))
    }
}

fn directed_matrix(g: &Graph, params: &Params, tag: &str) -> Result<PolyMatrix, AlgError> {
    if !g.directed() {
        return Err(GraphError::NeedsDirected.into());
    }
    let mut m = encode_directed(g, &params.sigma(tag))?;
    m.add_identity(g.w_bound() as usize);
    Ok(m)
}

/// `det(A + I)` has lowest degree `nW` exactly when no cycle is negative.
fn reject_negative_cycle(samples: &AdjugateSamples, offset: usize) -> Result<(), AlgError> {
    match samples.det_poly().deg_star {
        Some(d) if d >= offset => Ok(()),
        _ => Err(AlgError::NegativeCycle),
    }
}

/// `dist(i, j) = deg*(adj(A + I)_{i,j}) - (n-1)W`.
pub fn directed_distances(g: &Graph, params: &Params) -> Result<DistanceMatrix, AlgError> {
    let n = g.n();
    let w = g.w_bound() as usize;
    let m = directed_matrix(g, params, "distances")?;
    let samples = AdjugateSamples::new(&m)?;
    reject_negative_cycle(&samples, n * w)?;
    let degs = samples.adjugate_degrees();
    let shift = (n.saturating_sub(1) * w) as i64;
    let dist = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Some(0) } else { degs[i][j].map(|d| d as i64 - shift) })
                .collect()
        })
        .collect();
    Ok(DistanceMatrix { dist, error_bound: params.error_bound(n * n + 1, n) })
}

struct SplitTutte {
    split: SplitGraph,
    matrix: PolyMatrix,
    samples: AdjugateSamples,
    shift: i64,
}

fn split_tutte(g: &Graph, params: &Params, tag: &str, with_probes: bool) -> Result<SplitTutte, AlgError> {
    g.require_undirected()?;
    let split = match build_split_graph(g) {
        Ok(s) => s,
        Err(GraphError::NegativeCycleInNegativeEdges) => return Err(AlgError::NegativeCycle),
        Err(e) => return Err(e.into()),
    };
    let nn = split.graph.n();
    let t = encode_tutte(&split.graph, &params.sigma(tag))?;
    let mut matrix = t.matrix;
    if with_probes {
        for (u, v) in off_diagonal(g.n()) {
            // at (v1, u2) so that the derivative is adj_{u2, v1}
            matrix.add_var_term(probe_var(nn, u, v, g.n()), Fe::ZERO, SplitGraph::v1(v), SplitGraph::v2(u), false, 0);
        }
    }
    let samples = AdjugateSamples::new(&matrix)?;
    let ds = samples.det_poly().deg_star.ok_or(AlgError::Consistency("split graph lost its perfect matching".into()))?;
    if (ds as i64) < nn as i64 * t.shift {
        return Err(AlgError::NegativeCycle);
    }
    Ok(SplitTutte { split, matrix, samples, shift: t.shift })
}

fn off_diagonal(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
}

/// Id of the probe variable for pair `(i, j)`, above every edge variable.
fn probe_var(matrix_n: usize, i: usize, j: usize, n: usize) -> usize {
    matrix_n * matrix_n + i * n + j
}

/// Undirected graph, weights of any sign, no negative cycle:
/// `dist(u, v) = deg*(adj_{u2, v1}) - (n'-1)s` on the split graph's Tutte
/// matrix, `n'` its order and `s` its weight shift.
pub fn undirected_negative_distances(g: &Graph, params: &Params) -> Result<DistanceMatrix, AlgError> {
    let n = g.n();
    let st = split_tutte(g, params, "split-distances", false)?;
    let nn = st.split.graph.n();
    let pairs: Vec<(usize, usize)> = off_diagonal(n).collect();
    let which: Vec<(usize, usize)> = pairs.iter().map(|&(u, v)| (SplitGraph::v2(u), SplitGraph::v1(v))).collect();
    let polys = st.samples.adjugate_entries(&which);
    let shift = (nn as i64 - 1) * st.shift;
    let mut dist = vec![vec![None; n]; n];
    for (i, row) in dist.iter_mut().enumerate() {
        row[i] = Some(0);
    }
    for (&(u, v), q) in pairs.iter().zip(&polys) {
        dist[u][v] = q.deg_star().map(|d| d as i64 - shift);
    }
    Ok(DistanceMatrix { dist, error_bound: params.error_bound(n * n + 1, nn) })
}

/// Directed graphs use the adjugate of `A + I`; undirected ones the split
/// graph.
pub fn distances(g: &Graph, params: &Params) -> Result<DistanceMatrix, AlgError> {
    if g.directed() {
        directed_distances(g, params)
    } else {
        undirected_negative_distances(g, params)
    }
}

pub fn diameter(g: &Graph, params: &Params) -> Result<Extent, AlgError> {
    Ok(distances(g, params)?.diameter())
}

pub fn radius(g: &Graph, params: &Params) -> Result<Extent, AlgError> {
    Ok(distances(g, params)?.radius())
}

pub fn eccentricities(g: &Graph, params: &Params) -> Result<Vec<Extent>, AlgError> {
    Ok(distances(g, params)?.eccentricities())
}

/// Decides `diameter <= c` from derivatives with respect to probe variables
/// `z` placed in the matrix with value 0: at `z = 0` each such derivative is
/// an adjugate entry, so a prefix-summed gradient is nonzero iff the pair
/// is joined by a path of weight `<= c`.
pub struct DiameterProbe {
    table: GradientTable,
    probes: Vec<usize>,
    offset: usize,
    max_weight: usize,
    degree: usize,
}

impl DiameterProbe {
    pub fn new(g: &Graph, params: &Params) -> Result<Self, AlgError> {
        let n = g.n();
        let w = g.w_bound() as usize;
        let (m, samples, offset, degree) = if g.directed() {
            let mut m = directed_matrix(g, params, "diameter-probe")?;
            for (i, j) in off_diagonal(n) {
                // at (j, i) so that the derivative is adj_{i,j}
                m.add_var_term(probe_var(n, i, j, n), Fe::ZERO, j, i, false, 0);
            }
            let samples = AdjugateSamples::new(&m)?;
            reject_negative_cycle(&samples, n * w)?;
            (m, samples, n.saturating_sub(1) * w, n)
        } else {
            let st = split_tutte(g, params, "split-diameter-probe", true)?;
            let nn = st.split.graph.n();
            (st.matrix, st.samples, (nn - 1) * st.shift as usize, nn)
        };
        let matrix_n = m.n();
        let probes: Vec<usize> = off_diagonal(n).map(|(i, j)| probe_var(matrix_n, i, j, n)).collect();
        let mut sorted = probes.clone();
        sorted.sort_unstable();
        let table = samples.gradients(&m, &sorted, params.backend).map_err(|e| match e {
            EngineError::UnknownVariable(v) => AlgError::Consistency(format!("probe {v} missing")),
            e => e.into(),
        })?;
        Ok(Self { table, probes, offset, max_weight: n * w, degree })
    }

    pub fn at_most(&self, c: i64) -> bool {
        if c < 0 {
            return false;
        }
        let d = c as usize + self.offset;
        self.probes.iter().all(|&z| !self.table.prefix(z, d).is_zero())
    }

    /// Smallest `c` with `diameter <= c`, by binary search over
    /// [`DiameterProbe::at_most`].
    pub fn threshold(&self) -> Extent {
        let hi = self.max_weight as i64;
        if !self.at_most(hi) {
            return Extent::Unbounded;
        }
        let (mut lo, mut hi) = (0i64, hi);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.at_most(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Extent::Finite(lo)
    }

    pub fn error_bound(&self, params: &Params) -> f64 {
        params.error_bound(self.probes.len() * (self.max_weight + 2).ilog2() as usize + 1, self.degree)
    }
}

pub fn check_diameter_at_most(g: &Graph, c: i64, params: &Params) -> Result<bool, AlgError> {
    Ok(DiameterProbe::new(g, params)?.at_most(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dg(n: usize, e: &[(usize, usize, i64)]) -> Graph {
        Graph::new(n, true, e.iter().copied()).unwrap()
    }

    fn ug(n: usize, e: &[(usize, usize, i64)]) -> Graph {
        Graph::new(n, false, e.iter().copied()).unwrap()
    }

    fn p() -> Params {
        Params::new(3)
    }

    #[test]
    fn directed_path_with_negative_arc() {
        let g = dg(3, &[(0, 1, 2), (1, 2, -1)]);
        let d = directed_distances(&g, &p()).unwrap();
        assert_eq!(d.get(0, 2), Some(1));
        assert_eq!(d.get(2, 0), None);
        assert_eq!(d.diameter(), Extent::Unbounded);
        assert_eq!(d.eccentricities()[0], Extent::Finite(2));
        assert_eq!(d.radius(), Extent::Finite(2));
    }

    #[test]
    fn complete_digraph_unit() {
        let e: Vec<(usize, usize, i64)> = (0..4).flat_map(|u| (0..4).filter(move |&v| v != u).map(move |v| (u, v, 1))).collect();
        let d = directed_distances(&dg(4, &e), &p()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(d.get(i, j), Some(if i == j { 0 } else { 1 }));
            }
        }
    }

    #[test]
    fn negative_cycle_is_rejected() {
        let g = dg(2, &[(0, 1, -3), (1, 0, 1)]);
        assert_eq!(directed_distances(&g, &p()), Err(AlgError::NegativeCycle));
        assert!(matches!(check_diameter_at_most(&g, 5, &p()), Err(AlgError::NegativeCycle)));
        let u = ug(3, &[(0, 1, 1), (1, 2, -3), (0, 2, 1)]);
        assert_eq!(undirected_negative_distances(&u, &p()), Err(AlgError::NegativeCycle));
    }

    #[test]
    fn split_graph_distances() {
        let g = ug(3, &[(0, 1, 1), (1, 2, -1)]);
        let d = undirected_negative_distances(&g, &p()).unwrap();
        assert_eq!(d.get(0, 2), Some(0));
        assert_eq!(d.get(2, 0), Some(0));
        assert_eq!(d.get(1, 2), Some(-1));
        let e = ug(2, &[(0, 1, 4)]);
        let d = undirected_negative_distances(&e, &p()).unwrap();
        assert_eq!((d.get(0, 1), d.get(1, 0)), (Some(4), Some(4)));
    }

    #[test]
    fn undirected_path_diameter_radius() {
        let g = ug(3, &[(0, 1, 1), (1, 2, 1)]);
        assert_eq!(diameter(&g, &p()).unwrap(), Extent::Finite(2));
        assert_eq!(radius(&g, &p()).unwrap(), Extent::Finite(1));
        let probe = DiameterProbe::new(&g, &p()).unwrap();
        assert_eq!(probe.threshold(), Extent::Finite(2));
        assert!(probe.at_most(2));
        assert!(!probe.at_most(1));
    }

    #[test]
    fn diameter_probe_on_directed_path() {
        let path = dg(3, &[(0, 1, 1), (1, 2, 1)]);
        // 3 cannot reach 1, so no finite bound holds
        assert!(!check_diameter_at_most(&path, 2, &p()).unwrap());
        assert!(!check_diameter_at_most(&path, 100, &p()).unwrap());
        let cyc = dg(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]);
        assert!(check_diameter_at_most(&cyc, 2, &p()).unwrap());
        assert!(!check_diameter_at_most(&cyc, 1, &p()).unwrap());
        assert!(check_diameter_at_most(&cyc, 3, &p()).unwrap());
        assert_eq!(DiameterProbe::new(&cyc, &p()).unwrap().threshold(), Extent::Finite(2));
    }

    #[test]
    fn tape_backend_agrees() {
        let g = dg(4, &[(0, 1, 2), (1, 2, -1), (2, 3, 3), (3, 0, 1), (1, 3, 0)]);
        let a = DiameterProbe::new(&g, &p()).unwrap().threshold();
        let b = DiameterProbe::new(&g, &p().with_backend(crate::engine::GradientBackend::Tape)).unwrap().threshold();
        assert_eq!(a, b);
        assert_eq!(Some(a), Some(directed_distances(&g, &p()).unwrap().diameter()));
    }
}
