use std::collections::HashMap;

use crate::error::{invalid, Result};
use crate::graphcore::{Graph, VertexToken};

/// A small graph on indices `0..n` with bitmask adjacency, vertices indexed in
/// token order.
#[derive(Clone, Debug)]
pub(crate) struct DenseGraph {
    pub tokens: Vec<VertexToken>,
    pub adj: Vec<u64>,
}

impl DenseGraph {
    pub fn from_graph(g: &Graph) -> Result<Self> {
        let n = g.vertex_count();
        if n > 64 {
            return Err(invalid(format!("dense graphs hold at most 64 vertices, got {n}")));
        }
        let tokens: Vec<VertexToken> = g.vertices().iter().cloned().collect();
        let index: HashMap<&VertexToken, usize> = tokens.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut adj = vec![0u64; n];
        for (a, b) in g.edges() {
            let (i, j) = (index[a], index[b]);
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        Ok(DenseGraph { tokens, adj })
    }

    pub fn n(&self) -> usize {
        self.tokens.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i] >> j & 1 == 1
    }

    pub fn sorted_degrees(&self) -> Vec<u32> {
        sorted_degrees(&self.adj)
    }

    /// Bit `pair_index(i, j)` set for every edge.
    pub fn edge_pair_mask(&self) -> u64 {
        let n = self.n();
        let mut mask = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.has_edge(i, j) {
                    mask |= 1 << pair_index(n, i, j);
                }
            }
        }
        mask
    }
}

pub(crate) fn sorted_degrees(adj: &[u64]) -> Vec<u32> {
    let mut d: Vec<u32> = adj.iter().map(|m| m.count_ones()).collect();
    d.sort_unstable();
    d
}

/// Index of the unordered pair `i < j` among all pairs of `0..n`, in
/// lexicographic order.
pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

pub(crate) fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}
