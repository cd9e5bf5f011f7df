//! Sparse symmetric eigenvalue estimation and certified spectral floors.

mod inertia;
mod lanczos;
mod sparse;

pub use inertia::{
    certify_spectral_floor, certify_spectral_floor_with, cholesky_margin, FloorCheck, FloorMethod, Tier, DENSE_DIM_LIMIT,
    EXACT_DIM_LIMIT,
};
pub use lanczos::{extreme_eigenpair, extreme_eigenpair_from, LanczosOptions, SpectralEstimate, Which};
pub use sparse::SparseSymMatrix;
