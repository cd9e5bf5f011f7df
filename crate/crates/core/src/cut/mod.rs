//! MAX-CUT machinery on the triangle graph: exact cut evaluation, upper
//! bounds from the spectrum, the low-rank relaxation, rounding and local
//! search.

mod bounds;
mod lowrank;
mod search;

pub use bounds::{
    dual_upper_bound, dual_upper_bound_from, eig_upper_bound, spectral_bound, spectral_bound_from, BoundCertificate, BoundMethod,
    BoundReport, DualOptions, SpectralBound, SpectralCertificate, SpectralOptions,
};
pub use lowrank::{
    default_rank, lowrank_ascent, lowrank_continue, multiplier_estimate, objective_gradient, relaxation_objective,
    LowRankOptions, VectorAssignment,
};
pub use search::{brute_force_maxcut, hyperplane_round, local_search_improve, BRUTE_FORCE_LIMIT};

use crate::error::CutError;
use crate::graph::Graph;

/// A ±1 assignment to the vertices of a graph with its cached cut size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub assignment: Vec<i8>,
    pub size: u64,
}

impl Cut {
    pub fn new(h: &Graph, assignment: Vec<i8>) -> Result<Self, CutError> {
        let size = cut_size(h, &assignment)?;
        Ok(Self { assignment, size })
    }

    /// Vertices on the +1 side.
    pub fn positive_side(&self) -> impl Iterator<Item = usize> + '_ {
        self.assignment.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i)
    }
}

/// Number of edges `{i, j}` of `h` with `x_i ≠ x_j`.
pub fn cut_size(h: &Graph, x: &[i8]) -> Result<u64, CutError> {
    if x.len() != h.vertex_count() {
        return Err(CutError::DimensionMismatch { expected: h.vertex_count(), got: x.len() });
    }
    if let Some((index, &value)) = x.iter().enumerate().find(|(_, &v)| v != 1 && v != -1) {
        return Err(CutError::InvalidEntry { index, value });
    }
    Ok(h.edges().filter(|&(i, j)| x[i] != x[j]).count() as u64)
}
