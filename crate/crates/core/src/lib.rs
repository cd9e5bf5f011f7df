//! Ramsey arrowing `G → (3,3)` for K4-free graphs, decided through MAX-CUT
//! bounds on the triangle graph H_G.

pub mod arrow;
pub mod cut;
pub mod error;
pub mod graph;
pub mod spectra;
pub mod triangles;
pub mod io;
