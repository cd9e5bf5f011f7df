//! Low-rank relaxation `max ½ Σ_{ij∈E} (1 − v_i·v_j)` over unit vectors.
//!
//! Block-coordinate ascent: each vertex in turn takes the unit vector that
//! maximizes the objective with its neighbours fixed, `v_i ← −g_i/‖g_i‖`
//! with `g_i = Σ_{j∈N(i)} v_j`. Every update is a maximization in one block,
//! so the objective never decreases.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::CutError;
use crate::graph::Graph;

/// Unit vectors in R^rank, one per vertex, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorAssignment {
    pub rank: usize,
    pub vectors: Vec<f64>,
    /// Relaxation value `½ Σ_{ij∈E} (1 − v_i·v_j)` of `vectors`.
    pub objective: f64,
    /// Sweeps performed so far.
    pub sweeps: usize,
}

impl VectorAssignment {
    pub fn len(&self) -> usize {
        self.vectors.len().checked_div(self.rank).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vector(&self, i: usize) -> &[f64] {
        &self.vectors[i * self.rank..(i + 1) * self.rank]
    }

    /// Embeds a ±1 assignment as rank-1 vectors.
    pub fn from_signs(h: &Graph, signs: &[i8]) -> Result<Self, CutError> {
        if signs.len() != h.vertex_count() {
            return Err(CutError::DimensionMismatch { expected: h.vertex_count(), got: signs.len() });
        }
        let vectors: Vec<f64> = signs.iter().map(|&s| f64::from(s)).collect();
        let objective = relaxation_objective(h, 1, &vectors);
        Ok(Self { rank: 1, vectors, objective, sweeps: 0 })
    }
}

#[derive(Clone, Debug)]
pub struct LowRankOptions {
    pub rank: usize,
    /// Maximum number of full coordinate sweeps.
    pub sweeps: usize,
    /// Stop once a sweep improves the objective by less than
    /// `tol * objective`.
    pub tol: f64,
}

impl LowRankOptions {
    pub fn for_graph(h: &Graph, sweeps: usize) -> Self {
        Self { rank: default_rank(h.vertex_count()), sweeps, tol: 1e-13 }
    }
}

/// ⌈√(2n)⌉ capped at 80. Lower caps leave a visibly weaker dual on the
/// largest instances.
pub fn default_rank(n: usize) -> usize {
    ((2.0 * n as f64).sqrt().ceil() as usize).clamp(1, 80)
}

pub fn relaxation_objective(h: &Graph, rank: usize, vectors: &[f64]) -> f64 {
    let mut total = 0.0;
    for (i, j) in h.edges() {
        let d: f64 = vectors[i * rank..(i + 1) * rank].iter().zip(&vectors[j * rank..(j + 1) * rank]).map(|(a, b)| a * b).sum();
        total += 1.0 - d;
    }
    0.5 * total
}

/// Gradient of the relaxation objective with respect to each `v_i`,
/// ignoring the sphere constraint: `−½ Σ_{j∈N(i)} v_j`.
pub fn objective_gradient(h: &Graph, va: &VectorAssignment) -> Vec<f64> {
    let r = va.rank;
    let mut grad = vec![0.0; va.vectors.len()];
    for i in 0..h.vertex_count() {
        let gi = &mut grad[i * r..(i + 1) * r];
        for &j in h.neighbors(i) {
            for (g, v) in gi.iter_mut().zip(va.vector(j)) {
                *g -= 0.5 * v;
            }
        }
    }
    grad
}

fn neighbour_sum(h: &Graph, rank: usize, vectors: &[f64], i: usize, out: &mut [f64]) {
    out.iter_mut().for_each(|x| *x = 0.0);
    for &j in h.neighbors(i) {
        for (o, v) in out.iter_mut().zip(&vectors[j * rank..(j + 1) * rank]) {
            *o += v;
        }
    }
}

/// Seeded random start on the unit sphere followed by coordinate ascent.
pub fn lowrank_ascent(h: &Graph, opts: &LowRankOptions, seed: u64) -> Result<VectorAssignment, CutError> {
    if opts.rank == 0 {
        return Err(CutError::InvalidParameter("rank must be at least 1".into()));
    }
    let r = opts.rank;
    let n = h.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vectors = vec![0.0; n * r];
    for i in 0..n {
        let v = &mut vectors[i * r..(i + 1) * r];
        loop {
            v.iter_mut().for_each(|x| *x = StandardNormal.sample(&mut rng));
            let nv = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if nv > 1e-12 {
                v.iter_mut().for_each(|x| *x /= nv);
                break;
            }
        }
    }
    let objective = relaxation_objective(h, r, &vectors);
    let va = VectorAssignment { rank: r, vectors, objective, sweeps: 0 };
    lowrank_continue(h, va, opts)
}

/// Continues coordinate ascent from an existing assignment.
pub fn lowrank_continue(h: &Graph, mut va: VectorAssignment, opts: &LowRankOptions) -> Result<VectorAssignment, CutError> {
    let n = h.vertex_count();
    if va.len() != n && n > 0 {
        return Err(CutError::DimensionMismatch { expected: n, got: va.len() });
    }
    let r = va.rank;
    let mut g = vec![0.0; r];
    for _ in 0..opts.sweeps {
        let mut gain = 0.0;
        for i in 0..n {
            neighbour_sum(h, r, &va.vectors, i, &mut g);
            let ng = g.iter().map(|x| x * x).sum::<f64>().sqrt();
            if ng <= 1e-14 {
                // isolated or perfectly cancelling neighbourhood
                continue;
            }
            let vi = &mut va.vectors[i * r..(i + 1) * r];
            // objective changes by −½ (v_new − v_old)·g = ½ (v_old·g + ‖g‖)
            let old_dot: f64 = vi.iter().zip(&g).map(|(a, b)| a * b).sum();
            gain += 0.5 * (old_dot + ng);
            for (v, gk) in vi.iter_mut().zip(&g) {
                *v = -gk / ng;
            }
        }
        va.sweeps += 1;
        va.objective += gain;
        if gain <= opts.tol * va.objective.abs().max(1.0) {
            break;
        }
    }
    va.objective = relaxation_objective(h, r, &va.vectors);
    Ok(va)
}

/// Lagrange multiplier estimate `y_i = −v_i·g_i` of the sphere constraints.
/// At a stationary point `(A + Diag(y)) V = 0`.
pub fn multiplier_estimate(h: &Graph, va: &VectorAssignment) -> Vec<f64> {
    let r = va.rank;
    let mut g = vec![0.0; r];
    (0..h.vertex_count())
        .map(|i| {
            neighbour_sum(h, r, &va.vectors, i, &mut g);
            -va.vector(i).iter().zip(&g).map(|(a, b)| a * b).sum::<f64>()
        })
        .collect()
}
