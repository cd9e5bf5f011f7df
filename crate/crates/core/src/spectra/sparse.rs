use std::sync::Arc;

use crate::error::SpectraError;
use crate::graph::Graph;

#[derive(Debug, PartialEq)]
struct OffDiagonal {
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    // None means every stored entry is 1 (graph adjacency)
    values: Option<Vec<f64>>,
}

/// Sparse symmetric matrix `A + Diag(d)`.
///
/// The off-diagonal pattern is stored as full symmetric rows (both
/// triangles) so that a product is a single pass over each row in ascending
/// column order. The pattern is shared between a matrix and every diagonal
/// shift of it, so [`SparseSymMatrix::with_diagonal`] is cheap.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseSymMatrix {
    dim: usize,
    off: Arc<OffDiagonal>,
    diag: Vec<f64>,
}

impl SparseSymMatrix {
    /// Adjacency matrix of `g`.
    pub fn adjacency(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut cols = Vec::with_capacity(2 * g.edge_count());
        row_ptr.push(0);
        for u in 0..n {
            cols.extend_from_slice(g.neighbors(u));
            row_ptr.push(cols.len());
        }
        Self { dim: n, off: Arc::new(OffDiagonal { row_ptr, cols, values: None }), diag: vec![0.0; n] }
    }

    /// Builds a matrix from upper-triangle entries `(i, j, a_ij)` with `i <= j`;
    /// repeated coordinates are summed.
    pub fn from_upper_triplets(dim: usize, entries: &[(usize, usize, f64)]) -> Result<Self, SpectraError> {
        let mut diag = vec![0.0; dim];
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); dim];
        for &(i, j, a) in entries {
            if i > j || j >= dim {
                return Err(SpectraError::InvalidParameter(format!("entry ({i}, {j}) is not in the upper triangle of order {dim}")));
            }
            if i == j {
                diag[i] += a;
            } else {
                rows[i].push((j, a));
                rows[j].push((i, a));
            }
        }
        let mut row_ptr = vec![0];
        let mut cols = Vec::new();
        let mut values = Vec::new();
        for row in &mut rows {
            row.sort_by_key(|&(j, _)| j);
            for (j, a) in row.drain(..) {
                if cols.len() > *row_ptr.last().unwrap() && *cols.last().unwrap() == j {
                    *values.last_mut().unwrap() += a;
                } else {
                    cols.push(j);
                    values.push(a);
                }
            }
            row_ptr.push(cols.len());
        }
        Ok(Self { dim, off: Arc::new(OffDiagonal { row_ptr, cols, values: Some(values) }), diag })
    }

    /// Same off-diagonal part with the diagonal replaced by `diag`.
    pub fn with_diagonal(&self, diag: Vec<f64>) -> Result<Self, SpectraError> {
        if diag.len() != self.dim {
            return Err(SpectraError::DimensionMismatch { expected: self.dim, got: diag.len() });
        }
        Ok(Self { dim: self.dim, off: Arc::clone(&self.off), diag })
    }

    /// The matrix shifted by `-sigma * I`.
    pub fn shifted(&self, sigma: f64) -> Self {
        Self { dim: self.dim, off: Arc::clone(&self.off), diag: self.diag.iter().map(|d| d - sigma).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diag
    }

    pub fn nnz_offdiag(&self) -> usize {
        self.off.cols.len()
    }

    /// Stored off-diagonal entries of row `i` as `(column, value)`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.off.row_ptr[i]..self.off.row_ptr[i + 1];
        let cols = &self.off.cols[range.clone()];
        let vals = self.off.values.as_ref().map(|v| &v[range]);
        cols.iter().enumerate().map(move |(k, &j)| (j, vals.map_or(1.0, |v| v[k])))
    }

    /// Maximum absolute row sum.
    pub fn norm1(&self) -> f64 {
        (0..self.dim)
            .map(|i| self.diag[i].abs() + self.row(i).map(|(_, a)| a.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `y = (A + Diag(d)) x`, summing each row in ascending column order.
    pub fn matvec_into(&self, x: &[f64], y: &mut [f64]) {
        let off = &*self.off;
        match &off.values {
            None => {
                for i in 0..self.dim {
                    let mut acc = self.diag[i] * x[i];
                    for &j in &off.cols[off.row_ptr[i]..off.row_ptr[i + 1]] {
                        acc += x[j];
                    }
                    y[i] = acc;
                }
            }
            Some(values) => {
                for i in 0..self.dim {
                    let mut acc = self.diag[i] * x[i];
                    for k in off.row_ptr[i]..off.row_ptr[i + 1] {
                        acc += values[k] * x[off.cols[k]];
                    }
                    y[i] = acc;
                }
            }
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>, SpectraError> {
        if x.len() != self.dim {
            return Err(SpectraError::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        let mut y = vec![0.0; self.dim];
        self.matvec_into(x, &mut y);
        Ok(y)
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.dim;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            out[i * n + i] = self.diag[i];
            for (j, a) in self.row(i) {
                out[i * n + j] = a;
            }
        }
        out
    }
}
