//! Fiedler value, vector and the induced vertex ordering.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::SymmetricGraph;
use crate::spectrum::{eig_symmetric, LaplacianMatrix};

/// Relative tolerance deciding whether lambda_2 is zero (graph disconnected).
pub const CONNECTIVITY_TOL: f64 = 1e-9;

/// Second-smallest eigenpair of the Laplacian plus the sorted vertex order.
#[derive(Debug, Clone)]
pub struct FiedlerResult {
    /// Algebraic connectivity lambda_2.
    pub lambda2: f64,
    /// Unit eigenvector, sign-normalized: the lowest-indexed vertex with a
    /// component above 1e-9 in magnitude is positive.
    pub vector: Vec<f64>,
    /// Vertices (0-based) sorted by ascending component, ties by index.
    pub ordering: Vec<usize>,
    /// Set when lambda_2 has multiplicity > 1 within tolerance; any vector
    /// of the eigenspace is returned and callers may want to know.
    pub degenerate: bool,
}

/// Fiedler analysis; a disconnected graph is not an error but a different
/// kind of answer, carrying the connected components instead of an ordering.
#[derive(Debug, Clone)]
pub enum FiedlerOutcome {
    Connected(FiedlerResult),
    Disconnected { components: Vec<Vec<usize>> },
}

impl FiedlerOutcome {
    pub fn connected(self) -> Option<FiedlerResult> {
        match self {
            FiedlerOutcome::Connected(r) => Some(r),
            FiedlerOutcome::Disconnected { .. } => None,
        }
    }
}

/// Flips `v` so the lowest-indexed entry with |v_i| > 1e-9 is positive.
pub(crate) fn normalize_sign(v: &mut [f64]) {
    for &x in v.iter() {
        if x.abs() > 1e-9 {
            if x < 0.0 {
                for y in v.iter_mut() {
                    *y = -*y;
                }
            }
            return;
        }
    }
}

/// Ascending component order with ties broken by vertex index.
fn sorted_by_component(v: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&i, &j| v[i].total_cmp(&v[j]).then(i.cmp(&j)));
    order
}

pub fn fiedler(l: &LaplacianMatrix) -> Result<FiedlerOutcome> {
    let n = l.n();
    if n < 2 {
        return Err(Error::TooFewVertices { n });
    }
    let eig = eig_symmetric(l)?;
    let scale = l.frobenius_norm();
    if eig.values[1] <= CONNECTIVITY_TOL * scale {
        let adj = graph_of(l);
        return Ok(FiedlerOutcome::Disconnected { components: adj.components() });
    }
    let mut vector = eig.vector(1).to_vec();
    normalize_sign(&mut vector);
    let ordering = sorted_by_component(&vector);
    let degenerate = n > 2 && (eig.values[2] - eig.values[1]).abs() <= CONNECTIVITY_TOL * scale;
    Ok(FiedlerOutcome::Connected(FiedlerResult {
        lambda2: eig.values[1],
        vector,
        ordering,
        degenerate,
    }))
}

/// Adjacency recovered from the Laplacian off-diagonal.
fn graph_of(l: &LaplacianMatrix) -> SymmetricGraph {
    let n = l.n();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let w = l.adjacency(i, j);
            if w > 0.0 {
                edges.push((i, j, w));
            }
        }
    }
    SymmetricGraph::from_edges(n, &edges)
}
