use crate::OracleError;

/// Minimal weighted graph used by the oracles.
///
/// Parallel edges collapse to the lightest one; undirected edges are stored
/// with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefGraph {
    pub n: usize,
    pub directed: bool,
    pub edges: Vec<(usize, usize, i64)>,
}

impl RefGraph {
    pub fn new(
        n: usize,
        directed: bool,
        edges: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self, OracleError> {
        let mut best: Vec<Vec<Option<i64>>> = vec![vec![None; n]; n];
        for (mut u, mut v, w) in edges {
            if u >= n || v >= n || u == v {
                return Err(OracleError::InvalidEdge(u, v));
            }
            if !directed && u > v {
                std::mem::swap(&mut u, &mut v);
            }
            let slot = &mut best[u][v];
            *slot = Some(slot.map_or(w, |old| old.min(w)));
        }
        let mut out = Vec::new();
        for (u, row) in best.iter().enumerate() {
            for (v, w) in row.iter().enumerate() {
                if let Some(w) = w {
                    out.push((u, v, *w));
                }
            }
        }
        Ok(Self {
            n,
            directed,
            edges: out,
        })
    }

    /// Weight matrix; for undirected graphs both orientations are filled.
    pub fn weight_matrix(&self) -> Vec<Vec<Option<i64>>> {
        let mut m = vec![vec![None; self.n]; self.n];
        for &(u, v, w) in &self.edges {
            m[u][v] = Some(w);
            if !self.directed {
                m[v][u] = Some(w);
            }
        }
        m
    }

    pub(crate) fn check_size(&self, limit: usize) -> Result<(), OracleError> {
        if self.n > limit {
            Err(OracleError::TooLarge { n: self.n, limit })
        } else {
            Ok(())
        }
    }
}
