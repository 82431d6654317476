//! Undirected weighted graphs over end devices.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::traffic::TrafficMatrix;

/// Symmetric nonnegative adjacency with an empty diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricGraph {
    n: usize,
    adj: Vec<f64>,
}

impl SymmetricGraph {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let mut adj = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::RaggedRow { row: i + 1, len: row.len(), expected: n });
            }
            for (j, &w) in row.iter().enumerate() {
                if !w.is_finite() || w < 0.0 {
                    return Err(Error::NegativeWeight { row: i + 1, col: j + 1, value: w });
                }
                if i == j && w != 0.0 {
                    return Err(Error::NonzeroDiagonal { index: i + 1, value: w });
                }
                if rows[j][i] != w {
                    return Err(Error::NotSymmetric { row: i + 1, col: j + 1 });
                }
                adj.push(w);
            }
        }
        Ok(Self { n, adj })
    }

    /// Builds from an undirected edge list; duplicate edges accumulate.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Self {
        let mut adj = alloc::vec![0.0; n * n];
        for &(u, v, w) in edges {
            if u != v {
                adj[u * n + v] += w;
                adj[v * n + u] += w;
            }
        }
        Self { n, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.adj[i * self.n + j]
    }

    pub fn degree(&self, i: usize) -> f64 {
        self.row(i).iter().sum()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.adj[i * self.n..(i + 1) * self.n]
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(|&w| w == 0.0)
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = alloc::vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = alloc::vec![start];
            seen[start] = true;
            let mut stack = alloc::vec![start];
            while let Some(v) = stack.pop() {
                for u in 0..self.n {
                    if !seen[u] && self.get(v, u) > 0.0 {
                        seen[u] = true;
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Subgraph induced by `vertices`; local index k maps to `vertices[k]`.
    pub fn induced(&self, vertices: &[usize]) -> SymmetricGraph {
        let k = vertices.len();
        let mut adj = Vec::with_capacity(k * k);
        for &i in vertices {
            for &j in vertices {
                adj.push(self.get(i, j));
            }
        }
        SymmetricGraph { n: k, adj }
    }
}

/// Undirected view of a directed matrix: adj[i][j] = w[i][j] + w[j][i].
pub fn symmetrize(directed: &TrafficMatrix) -> SymmetricGraph {
    let n = directed.n();
    let mut adj = alloc::vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            adj[i * n + j] = directed.get(i, j) + directed.get(j, i);
        }
    }
    SymmetricGraph { n, adj }
}
