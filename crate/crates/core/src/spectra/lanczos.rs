//! Thick-restart Lanczos for one extreme eigenpair of a sparse symmetric
//! matrix, with full reorthogonalization.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SparseSymMatrix;
use crate::error::SpectraError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Min,
    Max,
}

#[derive(Clone, Debug)]
pub struct LanczosOptions {
    /// Convergence when the Ritz residual is at most `tol * ‖A‖₁`.
    pub tol: f64,
    /// Budget in matrix-vector products.
    pub max_iter: usize,
    pub seed: u64,
    /// Largest basis kept in memory.
    pub basis: usize,
    /// Ritz vectors retained across a restart.
    pub keep: usize,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self { tol: 1e-8, max_iter: 20_000, seed: 0x5eed, basis: 80, keep: 30 }
    }
}

#[derive(Clone, Debug)]
pub struct SpectralEstimate {
    pub value: f64,
    /// Unit-norm Ritz vector.
    pub vector: Vec<f64>,
    /// ‖A·vector − value·vector‖₂, recomputed explicitly.
    pub residual: f64,
    /// Matrix-vector products spent.
    pub iterations: usize,
    pub converged: bool,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    // four accumulators; fixed order keeps results reproducible
    let mut acc = [0.0f64; 4];
    let chunks = a.len() / 4;
    for k in 0..chunks {
        let i = 4 * k;
        acc[0] += a[i] * b[i];
        acc[1] += a[i + 1] * b[i + 1];
        acc[2] += a[i + 2] * b[i + 2];
        acc[3] += a[i + 3] * b[i + 3];
    }
    let mut s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for i in 4 * chunks..a.len() {
        s += a[i] * b[i];
    }
    s
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn norm(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

fn random_unit(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
        let nv = norm(&v);
        if nv > 0.0 {
            v.iter_mut().for_each(|x| *x /= nv);
            return v;
        }
    }
}

/// Orthogonalizes `w` against `basis` twice (classical Gram-Schmidt) and
/// returns the accumulated projection coefficients.
fn orthogonalize(basis: &[Vec<f64>], w: &mut [f64]) -> Vec<f64> {
    let mut coeffs = vec![0.0; basis.len()];
    for _ in 0..2 {
        for (c, v) in coeffs.iter_mut().zip(basis) {
            let h = dot(v, w);
            axpy(-h, v, w);
            *c += h;
        }
    }
    coeffs
}

/// Lowest (or highest) eigenpair of `m`.
///
/// Runs Lanczos from a seeded random start, keeping `opts.keep` Ritz vectors
/// at each restart. If the Krylov space becomes invariant, it continues from
/// a fresh seeded random vector orthogonal to the basis. The returned
/// estimate always carries an explicitly recomputed residual; `converged` is
/// false if the budget ran out first.
pub fn extreme_eigenpair(m: &SparseSymMatrix, which: Which, opts: &LanczosOptions) -> Result<SpectralEstimate, SpectraError> {
    run(m, which, opts, None)
}

/// As [`extreme_eigenpair`], starting from `start` instead of a random
/// vector. A good approximation of the wanted eigenvector shortens the run.
pub fn extreme_eigenpair_from(m: &SparseSymMatrix, which: Which, opts: &LanczosOptions, start: &[f64]) -> Result<SpectralEstimate, SpectraError> {
    if start.len() != m.dim() {
        return Err(SpectraError::DimensionMismatch { expected: m.dim(), got: start.len() });
    }
    run(m, which, opts, Some(start))
}

fn run(m: &SparseSymMatrix, which: Which, opts: &LanczosOptions, start: Option<&[f64]>) -> Result<SpectralEstimate, SpectraError> {
    let n = m.dim();
    if n == 0 {
        return Err(SpectraError::Empty);
    }
    if !(opts.tol > 0.0) {
        return Err(SpectraError::InvalidParameter("tolerance must be positive".into()));
    }
    let sign = match which {
        Which::Min => 1.0,
        Which::Max => -1.0,
    };
    let apply = |x: &[f64], y: &mut [f64]| {
        m.matvec_into(x, y);
        if sign < 0.0 {
            y.iter_mut().for_each(|v| *v = -*v);
        }
    };
    let scale = m.norm1().max(f64::MIN_POSITIVE);
    let target = opts.tol * scale;
    let basis_cap = opts.basis.max(2).min(n);
    let keep = opts.keep.max(1).min(basis_cap.saturating_sub(1)).max(1);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let first = match start.map(|v| (v, norm(v))) {
        Some((v, nv)) if nv.is_finite() && nv > 0.0 => v.iter().map(|x| x / nv).collect(),
        _ => random_unit(n, &mut rng),
    };
    let mut basis: Vec<Vec<f64>> = vec![first];
    // projected matrix; row/column j filled when basis[j] is expanded
    let mut t = DMatrix::<f64>::zeros(basis_cap, basis_cap);
    let mut expanded = 0;
    let mut matvecs = 0;
    let mut w = vec![0.0; n];

    loop {
        // expand until the basis holds basis_cap vectors and all are expanded
        let mut beta = 0.0;
        let mut next: Option<Vec<f64>> = None;
        while expanded < basis.len() {
            let j = expanded;
            apply(&basis[j], &mut w);
            matvecs += 1;
            let coeffs = orthogonalize(&basis, &mut w);
            for (i, &c) in coeffs.iter().enumerate() {
                t[(i, j)] = c;
                t[(j, i)] = c;
            }
            expanded += 1;
            beta = norm(&w);
            let breakdown = beta <= 1e-12 * scale;
            let mut v = if breakdown {
                beta = 0.0;
                if basis.len() == n {
                    None
                } else {
                    // invariant subspace: continue from a fresh direction
                    let mut r = random_unit(n, &mut rng);
                    orthogonalize(&basis, &mut r);
                    let nr = norm(&r);
                    r.iter_mut().for_each(|x| *x /= nr);
                    Some(r)
                }
            } else {
                Some(w.iter().map(|x| x / beta).collect())
            };
            if basis.len() < basis_cap {
                match v.take() {
                    Some(v) => basis.push(v),
                    None => break,
                }
            } else {
                next = v;
            }
        }

        let k = basis.len();
        let sub = t.view((0, 0), (k, k)).into_owned();
        let eig = SymmetricEigen::new(sub);
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let lead = order[0];
        let ritz_residual = beta * eig.eigenvectors[(k - 1, lead)].abs();

        let combine = |col: usize| -> Vec<f64> {
            let mut x = vec![0.0; n];
            for (i, v) in basis.iter().enumerate() {
                axpy(eig.eigenvectors[(i, col)], v, &mut x);
            }
            x
        };

        let done = ritz_residual <= target || next.is_none() || matvecs >= opts.max_iter;
        if done {
            let mut x = combine(lead);
            let nx = norm(&x);
            x.iter_mut().for_each(|v| *v /= nx);
            apply(&x, &mut w);
            matvecs += 1;
            let rq = dot(&x, &w);
            let res = w.iter().zip(&x).map(|(a, b)| (a - rq * b).powi(2)).sum::<f64>().sqrt();
            let converged = ritz_residual <= target || next.is_none();
            return Ok(SpectralEstimate {
                value: sign * rq,
                vector: x,
                residual: res,
                iterations: matvecs,
                converged: converged && res <= target.max(10.0 * ritz_residual),
            });
        }

        // thick restart: keep the lowest Ritz vectors, then the residual direction
        let mut kept: Vec<Vec<f64>> = order[..keep].iter().map(|&c| combine(c)).collect();
        t.fill(0.0);
        for (i, &c) in order[..keep].iter().enumerate() {
            t[(i, i)] = eig.eigenvalues[c];
        }
        kept.push(next.unwrap());
        basis = kept;
        expanded = keep;
    }
}
