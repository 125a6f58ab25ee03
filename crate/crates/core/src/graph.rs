//! Graph model, file formats, and the encoders that turn graphs into
//! polynomial matrices.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::PolyMatrix;
use crate::seed::Substitution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: i64, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("header announces {expected} edges, found {got}")]
    EdgeCount { expected: usize, got: usize },
    #[error("operation needs an undirected graph")]
    NeedsUndirected,
    #[error("operation needs a directed graph")]
    NeedsDirected,
    #[error("negative weight {w} on edge ({u}, {v}) where only nonnegative weights are allowed")]
    NegativeWeight { u: usize, v: usize, w: i64 },
    #[error("the negative edges contain a cycle")]
    NegativeCycleInNegativeEdges,
    #[error("cardinality {k} is impossible with {n} vertices")]
    InvalidK { k: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: i64,
}

/// Weighted graph on vertices `0..n`. Parallel edges are collapsed to the
/// lightest one; undirected edges are stored once with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    directed: bool,
    n: usize,
    edges: Vec<Edge>,
    index: BTreeMap<(usize, usize), i64>,
    w_bound: i64,
}

#[derive(Deserialize)]
struct JsonGraph {
    directed: bool,
    n: usize,
    edges: Vec<(i64, i64, i64)>,
}

#[derive(Serialize)]
struct JsonGraphOut<'a> {
    directed: bool,
    n: usize,
    edges: &'a [(usize, usize, i64)],
}

impl Graph {
    pub fn new(
        n: usize,
        directed: bool,
        edges: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self, GraphError> {
        let mut index: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (mut u, mut v, w) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { v: x as i64 + 1, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u + 1));
            }
            if !directed && u > v {
                std::mem::swap(&mut u, &mut v);
            }
            index
                .entry((u, v))
                .and_modify(|old| *old = (*old).min(w))
                .or_insert(w);
        }
        let edges: Vec<Edge> = index.iter().map(|(&(u, v), &w)| Edge { u, v, w }).collect();
        let w_bound = edges.iter().map(|e| e.w.abs()).max().unwrap_or(0);
        Ok(Self { directed, n, edges, index, w_bound })
    }

    /// Parses either file format; input starting with `{` is JSON.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        if text.trim_start().starts_with('{') {
            Self::from_json_str(text)
        } else {
            Self::from_text(text)
        }
    }

    /// `{"directed": bool, "n": int, "edges": [[u, v, w], ...]}`, 1-based.
    pub fn from_json_str(text: &str) -> Result<Self, GraphError> {
        let g: JsonGraph = serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
        Self::from_one_based(g.n, g.directed, g.edges)
    }

    /// Header `n m directed|undirected`, then `m` lines `u v w`, 1-based.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| GraphError::Parse("empty input".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let [n, m, kind] = parts[..] else {
            return Err(GraphError::Parse(format!("bad header {header:?}")));
        };
        let n: usize = n.parse().map_err(|_| GraphError::Parse(format!("bad vertex count {n:?}")))?;
        let m: usize = m.parse().map_err(|_| GraphError::Parse(format!("bad edge count {m:?}")))?;
        let directed = match kind {
            "directed" => true,
            "undirected" => false,
            other => return Err(GraphError::Parse(format!("expected directed|undirected, got {other:?}"))),
        };
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            let nums: Result<Vec<i64>, _> = line.split_whitespace().map(str::parse::<i64>).collect();
            match nums.as_deref() {
                Ok([u, v, w]) => edges.push((*u, *v, *w)),
                _ => return Err(GraphError::Parse(format!("bad edge line {line:?}"))),
            }
        }
        if edges.len() != m {
            return Err(GraphError::EdgeCount { expected: m, got: edges.len() });
        }
        Self::from_one_based(n, directed, edges)
    }

    fn from_one_based(n: usize, directed: bool, edges: Vec<(i64, i64, i64)>) -> Result<Self, GraphError> {
        let mut out = Vec::with_capacity(edges.len());
        for (u, v, w) in edges {
            for x in [u, v] {
                if x < 1 || x as u64 > n as u64 {
                    return Err(GraphError::VertexOutOfRange { v: x, n });
                }
            }
            out.push((u as usize - 1, v as usize - 1, w));
        }
        Self::new(n, directed, out)
    }

    /// JSON in the input format (1-based).
    pub fn to_json(&self) -> String {
        let edges: Vec<(usize, usize, i64)> = self.edges.iter().map(|e| (e.u + 1, e.v + 1, e.w)).collect();
        serde_json::to_string(&JsonGraphOut { directed: self.directed, n: self.n, edges: &edges })
            .expect("graph serializes")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// W = max |w(e)|.
    pub fn w_bound(&self) -> i64 {
        self.w_bound
    }

    pub fn has_negative(&self) -> bool {
        self.edges.iter().any(|e| e.w < 0)
    }

    /// Weight of edge `u -> v` (either orientation when undirected).
    pub fn weight(&self, u: usize, v: usize) -> Option<i64> {
        if self.directed || u < v {
            self.index.get(&(u, v)).copied()
        } else {
            self.index.get(&(v, u)).copied()
        }
    }

    /// Outgoing arcs; undirected edges appear in both directions.
    pub fn adjacency(&self) -> Vec<Vec<(usize, i64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push((e.v, e.w));
            if !self.directed {
                adj[e.v].push((e.u, e.w));
            }
        }
        adj
    }

    /// Directed graph with both orientations of every undirected edge.
    pub fn bidirection(&self) -> Graph {
        let arcs = self
            .edges
            .iter()
            .flat_map(|e| [(e.u, e.v, e.w), (e.v, e.u, e.w)]);
        Graph::new(self.n, true, arcs).expect("valid arcs")
    }

    /// Subgraph on the given vertices (renumbered in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self.edges.iter().filter_map(|e| {
            let (a, b) = (pos[e.u], pos[e.v]);
            (a != usize::MAX && b != usize::MAX).then_some((a, b, e.w))
        });
        Graph::new(vertices.len(), self.directed, edges).expect("valid subgraph")
    }

    /// Same vertex set, keeping only edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(&Edge) -> bool) -> Graph {
        let edges = self.edges.iter().filter(|e| keep(e)).map(|e| (e.u, e.v, e.w));
        Graph::new(self.n, self.directed, edges).expect("valid subgraph")
    }

    fn require_directed(&self) -> Result<(), GraphError> {
        if self.directed {
            Ok(())
        } else {
            Err(GraphError::NeedsDirected)
        }
    }

    pub(crate) fn require_undirected(&self) -> Result<(), GraphError> {
        if self.directed {
            Err(GraphError::NeedsUndirected)
        } else {
            Ok(())
        }
    }
}

/// Variable id of arc `u -> v` (and of undirected edge `{u, v}`, `u < v`).
pub fn edge_var(n: usize, u: usize, v: usize) -> usize {
    u * n + v
}

/// Entry `(u, v)` is `sigma(x_uv) * y^(w + W)`. The identity term is added
/// separately by the caller with [`PolyMatrix::add_identity`].
pub fn encode_directed(g: &Graph, sigma: &Substitution) -> Result<PolyMatrix, GraphError> {
    g.require_directed()?;
    let mut m = PolyMatrix::zeros(sigma.field(), g.n);
    let shift = g.w_bound;
    for e in &g.edges {
        let id = edge_var(g.n, e.u, e.v);
        m.add_var_term(id, sigma.value(id), e.u, e.v, false, (e.w + shift) as usize);
    }
    Ok(m)
}

/// Both orientations of each edge with independent variables, exponent
/// `w` (weights must be nonnegative, so no shift is applied).
pub fn encode_undirected_bidirected(g: &Graph, sigma: &Substitution) -> Result<PolyMatrix, GraphError> {
    g.require_undirected()?;
    let mut m = PolyMatrix::zeros(sigma.field(), g.n);
    for e in &g.edges {
        if e.w < 0 {
            return Err(GraphError::NegativeWeight { u: e.u + 1, v: e.v + 1, w: e.w });
        }
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            let id = edge_var(g.n, a, b);
            m.add_var_term(id, sigma.value(id), a, b, false, e.w as usize);
        }
    }
    Ok(m)
}

#[derive(Debug, Clone)]
pub struct TutteEncoding {
    pub matrix: PolyMatrix,
    /// Added to every edge weight; a perfect matching's exponent exceeds
    /// its weight by `n/2 * shift`.
    pub shift: i64,
}

/// Skew-symmetric matrix: `+x y^(w+s)` at `(u, v)` and `-x y^(w+s)` at
/// `(v, u)` for `u < v`. `s = W` when a weight is negative, else 0.
pub fn encode_tutte(g: &Graph, sigma: &Substitution) -> Result<TutteEncoding, GraphError> {
    g.require_undirected()?;
    let shift = if g.has_negative() { g.w_bound } else { 0 };
    let mut m = PolyMatrix::zeros(sigma.field(), g.n);
    for e in &g.edges {
        let id = edge_var(g.n, e.u, e.v);
        let x = sigma.value(id);
        let exp = (e.w + shift) as usize;
        m.add_var_term(id, x, e.u, e.v, false, exp);
        m.add_var_term(id, x, e.v, e.u, true, exp);
    }
    Ok(TutteEncoding { matrix: m, shift })
}

/// Gadget graph whose almost-perfect matchings model paths of an
/// undirected graph with negative edges.
///
/// Layout: base vertex `v` becomes `v1 = 2v` and `v2 = 2v + 1`; the k-th
/// negative edge `e` becomes `e1 = 2n + 2k` and `e2 = 2n + 2k + 1`.
#[derive(Debug, Clone)]
pub struct SplitGraph {
    pub base: Graph,
    pub graph: Graph,
    /// Negative base edges `(u, v)`, `u < v`, in the order of their gadgets.
    pub negative_edges: Vec<(usize, usize)>,
}

impl SplitGraph {
    pub fn v1(v: usize) -> usize {
        2 * v
    }

    pub fn v2(v: usize) -> usize {
        2 * v + 1
    }

    pub fn e1(&self, k: usize) -> usize {
        2 * self.base.n + 2 * k
    }

    pub fn e2(&self, k: usize) -> usize {
        2 * self.base.n + 2 * k + 1
    }

    /// Base vertex of `v1`/`v2`, or `None` for edge-gadget vertices.
    pub fn base_vertex(&self, x: usize) -> Option<usize> {
        (x < 2 * self.base.n).then_some(x / 2)
    }
}

pub fn build_split_graph(g: &Graph) -> Result<SplitGraph, GraphError> {
    g.require_undirected()?;
    let n = g.n;
    let negative: Vec<(usize, usize)> = g.edges.iter().filter(|e| e.w < 0).map(|e| (e.u, e.v)).collect();

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(u, v) in &negative {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return Err(GraphError::NegativeCycleInNegativeEdges);
        }
        parent[a] = b;
    }

    let total = 2 * n + 2 * negative.len();
    let mut edges = Vec::new();
    for v in 0..n {
        edges.push((SplitGraph::v1(v), SplitGraph::v2(v), 0));
    }
    let mut k = 0;
    for e in &g.edges {
        let (u, v) = (e.u, e.v);
        if e.w >= 0 {
            edges.push((SplitGraph::v1(u), SplitGraph::v2(v), e.w));
            edges.push((SplitGraph::v2(u), SplitGraph::v1(v), e.w));
            edges.push((SplitGraph::v1(u), SplitGraph::v1(v), e.w));
            edges.push((SplitGraph::v2(u), SplitGraph::v2(v), e.w));
        } else {
            let (e1, e2) = (2 * n + 2 * k, 2 * n + 2 * k + 1);
            edges.push((SplitGraph::v1(u), e1, e.w));
            edges.push((SplitGraph::v2(u), e1, e.w));
            edges.push((e1, e2, 0));
            edges.push((SplitGraph::v1(v), e2, 0));
            edges.push((SplitGraph::v2(v), e2, 0));
            k += 1;
        }
    }
    Ok(SplitGraph {
        base: g.clone(),
        graph: Graph::new(total, false, edges).expect("valid gadget"),
        negative_edges: negative,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatchingVariant {
    MaxWeightPerfect,
    MinWeightCardinality(usize),
    MaxWeight,
}

/// How to read the requested optimum off a minimum-weight perfect matching
/// of the transformed graph.
#[derive(Debug, Clone)]
pub struct MatchingRecipe {
    variant: MatchingVariant,
    original: Graph,
}

impl MatchingRecipe {
    /// Maps a perfect matching of the transformed graph back to a matching
    /// of the original one, with its weight in the original graph.
    pub fn apply(&self, matching: &[(usize, usize)]) -> (Vec<(usize, usize)>, i64) {
        let n = self.original.n;
        let mut kept: Vec<(usize, usize)> = matching
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .filter(|&(_, b)| b < n)
            .filter(|&(a, b)| match self.original.weight(a, b) {
                None => false,
                Some(w) => self.variant != MatchingVariant::MaxWeight || w >= 0,
            })
            .collect();
        kept.sort_unstable();
        let weight = kept.iter().map(|&(a, b)| self.original.weight(a, b).unwrap_or(0)).sum();
        (kept, weight)
    }
}

pub fn reduce_matching_variant(g: &Graph, variant: MatchingVariant) -> Result<(Graph, MatchingRecipe), GraphError> {
    g.require_undirected()?;
    let n = g.n;
    let recipe = MatchingRecipe { variant, original: g.clone() };
    let reduced = match variant {
        MatchingVariant::MaxWeightPerfect => {
            Graph::new(n, false, g.edges.iter().map(|e| (e.u, e.v, -e.w)))?
        }
        MatchingVariant::MinWeightCardinality(k) => {
            if 2 * k > n {
                return Err(GraphError::InvalidK { k, n });
            }
            let extra = n - 2 * k;
            let mut edges: Vec<(usize, usize, i64)> = g.edges.iter().map(|e| (e.u, e.v, e.w)).collect();
            for a in n..n + extra {
                for v in 0..n {
                    edges.push((v, a, 0));
                }
            }
            Graph::new(n + extra, false, edges)?
        }
        MatchingVariant::MaxWeight => {
            // complete the graph with zero-weight fillers (plus one vertex if
            // n is odd) and negate; negative edges never help, so clip them
            let total = n + n % 2;
            let mut edges = Vec::new();
            for u in 0..total {
                for v in (u + 1)..total {
                    let w = if v < n { g.weight(u, v).unwrap_or(0).max(0) } else { 0 };
                    edges.push((u, v, -w));
                }
            }
            Graph::new(total, false, edges)?
        }
    };
    Ok((reduced, recipe))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::det_poly;
    use crate::field::PrimeField;

    fn sigma() -> Substitution {
        Substitution::new(PrimeField::mersenne61(), 9)
    }

    #[test]
    fn parses_both_formats_identically() {
        let a = Graph::parse("3 3 directed\n1 2 1\n2 3 2\n3 1 3\n").unwrap();
        let b = Graph::parse(r#"{"directed": true, "n": 3, "edges": [[1,2,1],[2,3,2],[3,1,3]]}"#).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.edges()[0], Edge { u: 0, v: 1, w: 1 });
        assert_eq!(Graph::parse(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Graph::parse("3 1 sideways\n1 2 1"), Err(GraphError::Parse(_))));
        assert!(matches!(Graph::parse("3 2 directed\n1 2 1"), Err(GraphError::EdgeCount { .. })));
        assert!(matches!(Graph::parse("2 1 directed\n1 3 1"), Err(GraphError::VertexOutOfRange { .. })));
        assert!(matches!(Graph::parse("2 1 directed\n1 1 1"), Err(GraphError::SelfLoop(1))));
        assert!(matches!(Graph::parse("{\"n\": 2}"), Err(GraphError::Parse(_))));
    }

    #[test]
    fn parallel_edges_keep_minimum() {
        let g = Graph::new(2, false, [(0, 1, 5), (1, 0, 2), (0, 1, 7)]).unwrap();
        assert_eq!(g.edges(), &[Edge { u: 0, v: 1, w: 2 }]);
        assert_eq!(g.weight(1, 0), Some(2));
    }

    #[test]
    fn directed_single_edge() {
        let g = Graph::new(2, true, [(0, 1, 0)]).unwrap();
        let m = encode_directed(&g, &sigma()).unwrap();
        let x = sigma().value(edge_var(2, 0, 1));
        assert_eq!(*m.entry(0, 1), crate::FieldPoly::constant(x));
        assert!(m.entry(1, 0).is_zero() && m.entry(0, 0).is_zero());
    }

    #[test]
    fn directed_shift_applied() {
        let g = Graph::new(2, true, [(0, 1, -2), (1, 0, 3)]).unwrap();
        let m = encode_directed(&g, &sigma()).unwrap();
        assert_eq!(m.entry(0, 1).degree(), Some(1));
        assert_eq!(m.entry(1, 0).degree(), Some(6));
    }

    #[test]
    fn bidirected_counts() {
        let tri = Graph::new(3, false, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        let m = encode_undirected_bidirected(&tri, &sigma()).unwrap();
        assert_eq!(m.var_links().len(), 6);
        let nonzero = (0..3).flat_map(|r| (0..3).map(move |c| (r, c))).filter(|&(r, c)| !m.entry(r, c).is_zero());
        assert_eq!(nonzero.count(), 6);
        let neg = Graph::new(2, false, [(0, 1, -1)]).unwrap();
        assert!(encode_undirected_bidirected(&neg, &sigma()).is_err());
    }

    #[test]
    fn tutte_is_skew_and_single_edge_det() {
        let f = PrimeField::mersenne61();
        let g = Graph::new(2, false, [(0, 1, 1)]).unwrap();
        let t = encode_tutte(&g, &sigma()).unwrap();
        let x = sigma().value(1);
        assert_eq!(t.shift, 0);
        assert_eq!(det_poly(&t.matrix).unwrap().coeffs, crate::FieldPoly::monomial(f.mul(x, x), 2));
        let empty = Graph::new(2, false, []).unwrap();
        assert!(det_poly(&encode_tutte(&empty, &sigma()).unwrap().matrix).unwrap().coeffs.is_zero());
    }

    #[test]
    fn split_graph_sizes() {
        let g = Graph::new(3, false, [(0, 1, 1), (1, 2, -1)]).unwrap();
        let s = build_split_graph(&g).unwrap();
        assert_eq!(s.graph.n(), 8);
        assert!(s.graph.n() <= 4 * g.n());
        assert_eq!(s.graph.edges().len(), 3 + 4 + 5);

        let pos = Graph::new(3, false, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let s = build_split_graph(&pos).unwrap();
        assert_eq!(s.graph.n(), 6);
        assert_eq!(s.graph.edges().len(), 3 + 8);

        let bad = Graph::new(3, false, [(0, 1, -1), (1, 2, -1), (0, 2, -1)]).unwrap();
        assert_eq!(build_split_graph(&bad).unwrap_err(), GraphError::NegativeCycleInNegativeEdges);
    }

    #[test]
    fn variant_reductions() {
        let c4 = Graph::new(4, false, [(0, 1, 1), (1, 2, 2), (2, 3, 1), (0, 3, 2)]).unwrap();
        let (neg, recipe) = reduce_matching_variant(&c4, MatchingVariant::MaxWeightPerfect).unwrap();
        assert!(neg.edges().iter().all(|e| e.w < 0));
        assert_eq!(recipe.apply(&[(1, 2), (0, 3)]), (vec![(0, 3), (1, 2)], 4));

        let (same, _) = reduce_matching_variant(&c4, MatchingVariant::MinWeightCardinality(2)).unwrap();
        assert_eq!(same, c4);
        assert!(matches!(
            reduce_matching_variant(&c4, MatchingVariant::MinWeightCardinality(3)),
            Err(GraphError::InvalidK { .. })
        ));
    }
}
