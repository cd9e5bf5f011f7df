use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{Cut, VectorAssignment};
use crate::error::CutError;
use crate::graph::Graph;

/// Largest vertex count accepted by [`brute_force_maxcut`].
pub const BRUTE_FORCE_LIMIT: usize = 28;

/// Best of `trials` random-hyperplane roundings of `va`.
///
/// Each trial draws a Gaussian normal `z` and puts `i` on the +1 side when
/// `v_i · z ≥ 0`.
pub fn hyperplane_round(va: &VectorAssignment, h: &Graph, trials: usize, seed: u64) -> Result<Cut, CutError> {
    let n = h.vertex_count();
    if va.len() != n {
        return Err(CutError::DimensionMismatch { expected: n, got: va.len() });
    }
    if trials == 0 {
        return Err(CutError::InvalidParameter("at least one rounding trial is required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Cut> = None;
    for _ in 0..trials {
        let z: Vec<f64> = (0..va.rank).map(|_| StandardNormal.sample(&mut rng)).collect();
        let assignment: Vec<i8> = (0..n)
            .map(|i| {
                let d: f64 = va.vector(i).iter().zip(&z).map(|(a, b)| a * b).sum();
                if d >= 0.0 {
                    1
                } else {
                    -1
                }
            })
            .collect();
        let cut = Cut::new(h, assignment)?;
        if best.as_ref().is_none_or(|b| cut.size > b.size) {
            best = Some(cut);
        }
    }
    Ok(best.expect("trials >= 1"))
}

/// 1-opt local search: flips the lowest-indexed vertex whose flip strictly
/// increases the cut, until none is left.
pub fn local_search_improve(h: &Graph, cut: &Cut) -> Result<Cut, CutError> {
    let n = h.vertex_count();
    if cut.assignment.len() != n {
        return Err(CutError::DimensionMismatch { expected: n, got: cut.assignment.len() });
    }
    let mut x = cut.assignment.clone();
    // gain[i] = (#same-side neighbours) − (#opposite-side neighbours)
    let mut gain: Vec<i64> = (0..n)
        .map(|i| h.neighbors(i).iter().map(|&j| i64::from(x[i] * x[j])).sum())
        .collect();
    let mut improving: BTreeSet<usize> = (0..n).filter(|&i| gain[i] > 0).collect();
    let mut size = cut_size_unchecked(h, &x);
    while let Some(i) = improving.pop_first() {
        size = (size as i64 + gain[i]) as u64;
        x[i] = -x[i];
        gain[i] = -gain[i];
        for &j in h.neighbors(i) {
            // x_i x_j changed sign
            gain[j] += 2 * i64::from(x[i] * x[j]);
            if gain[j] > 0 {
                improving.insert(j);
            } else {
                improving.remove(&j);
            }
        }
    }
    Ok(Cut { assignment: x, size })
}

fn cut_size_unchecked(h: &Graph, x: &[i8]) -> u64 {
    h.edges().filter(|&(i, j)| x[i] != x[j]).count() as u64
}

/// Exact MAX-CUT by Gray-code enumeration of the 2^(n−1) assignments with
/// vertex 0 fixed to +1. Ties keep the first maximum met.
pub fn brute_force_maxcut(h: &Graph) -> Result<Cut, CutError> {
    let n = h.vertex_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(CutError::TooLarge { limit: BRUTE_FORCE_LIMIT, got: n });
    }
    if n == 0 {
        return Ok(Cut { assignment: Vec::new(), size: 0 });
    }
    let mut x = vec![1i8; n];
    let mut size: i64 = 0;
    let mut best = (0i64, 0u64);
    let free = n - 1;
    let mut gray: u64 = 0;
    for step in 1..(1u64 << free) {
        // flip vertex 1 + (index of lowest set bit of step)
        let v = 1 + step.trailing_zeros() as usize;
        let delta: i64 = h.neighbors(v).iter().map(|&j| i64::from(x[v] * x[j])).sum();
        size += delta;
        x[v] = -x[v];
        gray ^= 1 << (v - 1);
        if size > best.0 {
            best = (size, gray);
        }
    }
    let assignment: Vec<i8> =
        (0..n).map(|i| if i > 0 && (best.1 >> (i - 1)) & 1 == 1 { -1 } else { 1 }).collect();
    Ok(Cut { assignment, size: best.0 as u64 })
}
