//! Graph Laplacian and dense symmetric eigendecomposition.
//!
//! The eigensolver is a cyclic Jacobi iteration: plane rotations annihilate
//! one off-diagonal element at a time, sweeping all pairs until the
//! off-diagonal Frobenius norm falls below `1e-12 * ||L||_F` (or 100 sweeps,
//! which is an error). Jacobi is O(n^3) per sweep but deterministic, robust
//! and returns the full spectrum; the graphs here have tens of vertices.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::SymmetricGraph;

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOL: f64 = 1e-12;

/// L = D - A with the degree vector kept alongside.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplacianMatrix {
    n: usize,
    entries: Vec<f64>,
    degrees: Vec<f64>,
}

impl LaplacianMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.entries.iter().map(|x| x * x).sum())
    }

    /// Adjacency weight recovered from the off-diagonal (-L[i][j]).
    pub fn adjacency(&self, i: usize, j: usize) -> f64 {
        if i == j {
            0.0
        } else {
            -self.get(i, j)
        }
    }
}

/// Builds L(G) = D(G) - A(G), d_ii = sum_j w(e_ij).
pub fn laplacian(g: &SymmetricGraph) -> LaplacianMatrix {
    let n = g.n();
    let mut entries = alloc::vec![0.0; n * n];
    let mut degrees = alloc::vec![0.0; n];
    for i in 0..n {
        let d: f64 = g.degree(i);
        degrees[i] = d;
        for j in 0..n {
            entries[i * n + j] = if i == j { d } else { -g.get(i, j) };
        }
    }
    LaplacianMatrix { n, entries, degrees }
}

/// Full spectrum of a symmetric matrix: ascending eigenvalues with an
/// orthonormal eigenvector for each.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    vectors: Vec<Vec<f64>>,
}

impl EigenDecomposition {
    /// Eigenvector for `values[k]`, unit 2-norm.
    pub fn vector(&self, k: usize) -> &[f64] {
        &self.vectors[k]
    }
}

pub fn eig_symmetric(m: &LaplacianMatrix) -> Result<EigenDecomposition> {
    jacobi(m.n, &m.entries, MAX_SWEEPS)
}

fn off_diagonal_norm(n: usize, a: &[f64]) -> f64 {
    let mut sum = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            let x = a[p * n + q];
            sum += 2.0 * x * x;
        }
    }
    libm::sqrt(sum)
}

pub(crate) fn jacobi(n: usize, matrix: &[f64], max_sweeps: usize) -> Result<EigenDecomposition> {
    debug_assert_eq!(matrix.len(), n * n);
    if n == 0 {
        return Ok(EigenDecomposition { values: Vec::new(), vectors: Vec::new() });
    }
    let mut a = matrix.to_vec();
    // v kept row-major; column j is eigenvector j
    let mut v = alloc::vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let fro = libm::sqrt(a.iter().map(|x| x * x).sum());
    let tol = OFF_DIAGONAL_TOL * fro;

    let mut converged = fro == 0.0 || off_diagonal_norm(n, &a) <= tol;
    let mut sweeps = 0;
    while !converged && sweeps < max_sweeps {
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + libm::sqrt(1.0 + theta * theta))
                } else {
                    -1.0 / (-theta + libm::sqrt(1.0 + theta * theta))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;

                for i in 0..n {
                    if i == p || i == q {
                        continue;
                    }
                    let aip = a[i * n + p];
                    let aiq = a[i * n + q];
                    a[i * n + p] = c * aip - s * aiq;
                    a[p * n + i] = a[i * n + p];
                    a[i * n + q] = s * aip + c * aiq;
                    a[q * n + i] = a[i * n + q];
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;

                for i in 0..n {
                    let vip = v[i * n + p];
                    let viq = v[i * n + q];
                    v[i * n + p] = c * vip - s * viq;
                    v[i * n + q] = s * vip + c * viq;
                }
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(n, &a) <= tol;
    }
    if !converged {
        return Err(Error::NoConvergence { residual: off_diagonal_norm(n, &a) });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]).then(i.cmp(&j)));
    let values: Vec<f64> = order.iter().map(|&k| a[k * n + k]).collect();
    let vectors: Vec<Vec<f64>> =
        order.iter().map(|&k| (0..n).map(|i| v[i * n + k]).collect()).collect();
    Ok(EigenDecomposition { values, vectors })
}
