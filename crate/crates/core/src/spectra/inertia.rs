//! Certified lower bounds on the smallest eigenvalue.
//!
//! `λ_min(M) ≥ σ` holds exactly when `M − σI` is positive semidefinite. Three
//! routes, chosen by dimension:
//!
//! * exact: fraction-free (Bareiss) elimination over the integers after
//!   scaling every entry by a common power of two. The pivots are the leading
//!   principal minors, so all pivots positive means `M − σI` is positive
//!   definite (Sylvester).
//! * dense floating Cholesky of `M − (σ + δ)I`. A successful factorization
//!   satisfies `R̂ᵀR̂ = B + E` with `|E| ≤ γ_{n+1}|R̂ᵀ||R̂|`, and
//!   `‖ |R̂ᵀ||R̂| ‖₂ ≤ n·(1 + γ_{n+1})·max bᵢᵢ`. The margin `δ` absorbs that
//!   backward error, so success implies `λ_min(M) ≥ σ`.
//! * Lanczos: for orders where any factorization fills in beyond memory, the
//!   floor is `min(θ − ‖r‖)` over independent seeded runs minus a safety
//!   margin. This is a numerical statement, not a proof.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::lanczos::{extreme_eigenpair, LanczosOptions, Which};
use super::SparseSymMatrix;
use crate::error::SpectraError;

/// Orders up to this size are certified in exact integer arithmetic.
pub const EXACT_DIM_LIMIT: usize = 64;
/// Orders up to this size use the dense floating Cholesky route.
pub const DENSE_DIM_LIMIT: usize = 3000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FloorMethod {
    ExactLdl,
    FloatCholesky,
    Lanczos,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Tier {
    Exact,
    /// Floating-point route; `margin` is the slack subtracted from the
    /// computed quantity before comparing against σ.
    Numerical { margin: f64 },
}

impl Tier {
    pub fn is_exact(&self) -> bool {
        matches!(self, Tier::Exact)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FloorCheck {
    /// `true` means λ_min ≥ σ was established.
    pub holds: bool,
    pub method: FloorMethod,
    pub tier: Tier,
}

/// Decides whether `λ_min(m) ≥ sigma`, by matrix inertia where the order allows.
///
/// A zero pivot in the exact route is reported as
/// [`SpectraError::IndefiniteAtSigma`]; the caller should lower σ.
pub fn certify_spectral_floor(m: &SparseSymMatrix, sigma: f64) -> Result<FloorCheck, SpectraError> {
    certify_spectral_floor_with(m, sigma, &LanczosOptions { tol: 1e-9, seed: 0xf1002, ..Default::default() })
}

/// As [`certify_spectral_floor`], with explicit eigensolver settings for the
/// large-order route.
pub fn certify_spectral_floor_with(m: &SparseSymMatrix, sigma: f64, lanczos: &LanczosOptions) -> Result<FloorCheck, SpectraError> {
    let n = m.dim();
    if n == 0 {
        return Err(SpectraError::Empty);
    }
    if !sigma.is_finite() {
        return Err(SpectraError::InvalidParameter(format!("sigma = {sigma}")));
    }
    if n <= EXACT_DIM_LIMIT {
        exact_positive_definite(m, sigma).map(|holds| FloorCheck { holds, method: FloorMethod::ExactLdl, tier: Tier::Exact })
    } else if n <= DENSE_DIM_LIMIT {
        Ok(float_cholesky_floor(m, sigma))
    } else {
        lanczos_floor(m, sigma, lanczos)
    }
}

/// `(mantissa, exponent)` with `x = mantissa · 2^exponent` exactly.
fn decompose(x: f64) -> (i64, i32) {
    if x == 0.0 {
        return (0, 0);
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 0 { 1 } else { -1 };
    let exp = ((bits >> 52) & 0x7ff) as i32;
    let frac = (bits & ((1u64 << 52) - 1)) as i64;
    let (mant, e) = if exp == 0 { (frac, -1074) } else { (frac | (1i64 << 52), exp - 1075) };
    (sign * mant, e)
}

fn exact_positive_definite(m: &SparseSymMatrix, sigma: f64) -> Result<bool, SpectraError> {
    let n = m.dim();
    let dense = m.to_dense();
    let (s_mant, s_exp) = decompose(sigma);
    let parts: Vec<(i64, i32)> = dense.iter().map(|&x| decompose(x)).collect();
    let min_exp = parts.iter().filter(|p| p.0 != 0).map(|p| p.1).chain(std::iter::once(s_exp)).min().unwrap_or(0);
    let to_int = |(mant, e): (i64, i32)| -> BigInt { BigInt::from(mant) << ((e - min_exp) as usize) };
    let sigma_int = to_int((s_mant, s_exp));
    let mut a: Vec<BigInt> = parts.iter().map(|&p| to_int(p)).collect();
    for i in 0..n {
        a[i * n + i] -= &sigma_int;
    }
    // Bareiss: after step k, a[k][k] is the (k+1)-th leading principal minor
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let pivot = a[k * n + k].clone();
        if pivot.is_zero() {
            return Err(SpectraError::IndefiniteAtSigma { sigma, row: k });
        }
        if pivot.is_negative() {
            return Ok(false);
        }
        for i in k + 1..n {
            for j in k + 1..=i {
                let v = (&a[i * n + j] * &pivot - &a[i * n + k] * &a[k * n + j]) / &prev;
                a[i * n + j] = v.clone();
                a[j * n + i] = v;
            }
        }
        prev = pivot;
    }
    Ok(true)
}

fn gamma(k: usize) -> f64 {
    let u = f64::EPSILON / 2.0;
    let ku = k as f64 * u;
    ku / (1.0 - ku)
}

/// Margin δ for the floating Cholesky route of order `n` whose shifted
/// diagonal is bounded by `max_diag`.
pub fn cholesky_margin(n: usize, max_diag: f64) -> f64 {
    let g = gamma(n + 1);
    let u = f64::EPSILON / 2.0;
    // factor 2 covers rounding in forming the shifted diagonal and δ itself
    2.0 * (g * n as f64 * (1.0 + g) + 2.0 * u) * max_diag.max(0.0)
}

fn float_cholesky_floor(m: &SparseSymMatrix, sigma: f64) -> FloorCheck {
    let n = m.dim();
    let max_diag = m.diagonal().iter().map(|d| d - sigma).fold(0.0, f64::max);
    let delta = cholesky_margin(n, max_diag);
    let shift = sigma + delta;
    let mut a = m.to_dense();
    for i in 0..n {
        a[i * n + i] -= shift;
    }
    let tier = Tier::Numerical { margin: delta };
    // row-oriented Cholesky; row i of L overwrites the lower part of row i
    for i in 0..n {
        for j in 0..=i {
            let (lj, li) = if j < i {
                let (head, tail) = a.split_at(i * n);
                (&head[j * n..j * n + j], &tail[..j])
            } else {
                (&a[i * n..i * n + j], &a[i * n..i * n + j])
            };
            let s = a[i * n + j] - li.iter().zip(lj).map(|(x, y)| x * y).sum::<f64>();
            if j == i {
                // negated so that NaN also fails
                if !(s > 0.0) {
                    return FloorCheck { holds: false, method: FloorMethod::FloatCholesky, tier };
                }
                a[i * n + i] = s.sqrt();
            } else {
                a[i * n + j] = s / a[j * n + j];
            }
        }
    }
    FloorCheck { holds: true, method: FloorMethod::FloatCholesky, tier }
}

fn lanczos_floor(m: &SparseSymMatrix, sigma: f64, opts: &LanczosOptions) -> Result<FloorCheck, SpectraError> {
    let safety = 1e-9 * m.norm1().max(1.0);
    let mut floor = f64::INFINITY;
    let mut worst_residual: f64 = 0.0;
    for round in 0..2u64 {
        let run = LanczosOptions { seed: opts.seed.wrapping_add(0x9e37_79b9 * (round + 1)), ..opts.clone() };
        let est = extreme_eigenpair(m, Which::Min, &run)?;
        if !est.converged {
            return Err(SpectraError::NotConverged { iterations: est.iterations, residual: est.residual });
        }
        floor = floor.min(est.value - est.residual);
        worst_residual = worst_residual.max(est.residual);
    }
    floor -= safety;
    Ok(FloorCheck {
        holds: floor >= sigma,
        method: FloorMethod::Lanczos,
        tier: Tier::Numerical { margin: worst_residual + safety },
    })
}
