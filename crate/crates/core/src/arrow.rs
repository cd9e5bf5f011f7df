//! Deciding `G → (3,3)` from MAX-CUT bounds on H_G.
//!
//! Every 2-coloring of E(G) is a cut of H_G, and the cut counts each
//! non-monochromatic triangle twice. So G arrows (3,3) exactly when
//! `MC(H_G) < 2·t△(G)`: a certified upper bound below `2t△` proves arrowing,
//! and a cut of size `2t△` is a 2-coloring without monochromatic triangles.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::FromPrimitive;
use thiserror::Error;

use crate::cut::{
    brute_force_maxcut, dual_upper_bound_from, eig_upper_bound, hyperplane_round, local_search_improve,
    lowrank_ascent, BoundReport, Cut, DualOptions, LowRankOptions, SpectralOptions, BRUTE_FORCE_LIMIT,
};
use crate::error::{CutError, GraphError, SpectraError};
use crate::graph::Graph;
use crate::spectra::{certify_spectral_floor_with, LanczosOptions, SparseSymMatrix, Tier};
use crate::triangles::{
    build_triangle_graph_unchecked, coloring_from_cut, count_monochromatic_triangles, find_k4, EdgeColoring,
    TriangleGraph,
};

#[derive(Debug, Error)]
pub enum ArrowError {
    #[error("not a Folkman candidate: K4 on vertices {0:?}")]
    NotFolkmanCandidate([usize; 4]),
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cut(#[from] CutError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Arrows,
    NotArrows,
    Undecided,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Arrows => "ARROWS",
            Verdict::NotArrows => "NOT_ARROWS",
            Verdict::Undecided => "UNDECIDED",
        })
    }
}

/// Evidence for a verdict that can be replayed without the code that found it.
#[derive(Clone, Debug, PartialEq)]
pub enum ArrowCertificate {
    /// `λ_min(A_H + Diag(u)) ≥ sigma` with `|E(H)|/2 − sigma·|V(H)|/4 < 2t△`.
    Spectral { u: Vec<f64>, sigma: f64, tier: Tier },
    /// A 2-coloring of E(G) with no monochromatic triangle.
    Coloring(EdgeColoring),
}

#[derive(Clone, Debug)]
pub struct ArrowDecision {
    pub verdict: Verdict,
    pub two_t: u64,
    pub best_upper: Option<f64>,
    pub best_lower: Option<u64>,
    pub certificate: Option<ArrowCertificate>,
    /// Bound reports in the order they were computed.
    pub reports: Vec<BoundReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Effort {
    Quick,
    Standard,
    Deep,
}

impl std::str::FromStr for Effort {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quick" => Ok(Effort::Quick),
            "standard" => Ok(Effort::Standard),
            "deep" => Ok(Effort::Deep),
            other => Err(format!("unknown effort '{other}' (quick, standard, deep)")),
        }
    }
}

/// Budgets behind an [`Effort`].
#[derive(Clone, Debug)]
pub struct EffortProfile {
    /// Coordinate sweeps of the low-rank relaxation.
    pub lowrank_sweeps: usize,
    /// Dual descent iterations after the warm start; 0 skips the dual stage.
    pub dual_iterations: usize,
    pub rounding_trials: usize,
    /// Independent low-rank starts for the cut search.
    pub restarts: usize,
    pub lanczos: LanczosOptions,
}

impl Effort {
    pub fn profile(self) -> EffortProfile {
        let lanczos = LanczosOptions { tol: 1e-9, basis: 120, keep: 60, ..LanczosOptions::default() };
        match self {
            Effort::Quick => EffortProfile { lowrank_sweeps: 200, dual_iterations: 3, rounding_trials: 16, restarts: 4, lanczos },
            Effort::Standard => EffortProfile { lowrank_sweeps: 1000, dual_iterations: 12, rounding_trials: 64, restarts: 16, lanczos },
            Effort::Deep => EffortProfile { lowrank_sweeps: 2000, dual_iterations: 30, rounding_trials: 256, restarts: 64, lanczos },
        }
    }
}

#[derive(Clone, Debug)]
pub struct DecideOptions {
    pub profile: EffortProfile,
    pub seed: u64,
    /// Reject graphs containing K4. Arrowing itself is defined for any graph;
    /// the check enforces Folkman candidacy.
    pub require_k4_free: bool,
}

impl DecideOptions {
    pub fn new(effort: Effort, seed: u64) -> Self {
        Self { profile: effort.profile(), seed, require_k4_free: true }
    }
}

/// Slack a floating-point bound must clear below `2t△`.
pub fn numerical_margin(h_edges: usize) -> f64 {
    f64::max(1.0, 1e-6 * h_edges as f64)
}

/// Whether a spectral upper bound is decisive for arrowing. Exact-tier bounds
/// only need `upper < 2t△` (cut sizes are integers); floating tiers must
/// clear [`numerical_margin`].
pub fn spectral_claim_holds(upper: f64, tier: Tier, two_t: u64, h_edges: usize) -> bool {
    match tier {
        Tier::Exact => upper < two_t as f64,
        Tier::Numerical { .. } => upper <= two_t as f64 - numerical_margin(h_edges),
    }
}

fn decisive(report: &BoundReport, two_t: u64, h_edges: usize) -> Option<ArrowCertificate> {
    let spec = report.spectral()?;
    let upper = report.upper?;
    if !report.certified || !spectral_claim_holds(upper, spec.tier, two_t, h_edges) {
        return None;
    }
    Some(ArrowCertificate::Spectral { u: spec.u.clone(), sigma: spec.sigma, tier: spec.tier })
}

fn full_u(u: Vec<f64>, n: usize) -> Vec<f64> {
    if u.is_empty() {
        vec![0.0; n]
    } else {
        u
    }
}

struct Pipeline<'a> {
    tg: &'a TriangleGraph,
    two_t: u64,
    best_upper: Option<f64>,
    best_cut: Option<Cut>,
    reports: Vec<BoundReport>,
}

impl Pipeline<'_> {
    fn record(&mut self, report: BoundReport) -> Option<ArrowCertificate> {
        if report.certified {
            if let Some(u) = report.upper {
                self.best_upper = Some(self.best_upper.map_or(u, |b| b.min(u)));
            }
        }
        let cert = decisive(&report, self.two_t, self.tg.h.edge_count());
        self.reports.push(report);
        cert.map(|c| match c {
            ArrowCertificate::Spectral { u, sigma, tier } => {
                ArrowCertificate::Spectral { u: full_u(u, self.tg.h.vertex_count()), sigma, tier }
            }
            other => other,
        })
    }

    fn offer(&mut self, cut: Cut) -> Result<Option<ArrowCertificate>, ArrowError> {
        if self.best_cut.as_ref().is_none_or(|b| cut.size > b.size) {
            self.best_cut = Some(cut);
        }
        let best = self.best_cut.as_ref().expect("just set");
        if best.size == self.two_t {
            return Ok(Some(ArrowCertificate::Coloring(coloring_from_cut(self.tg, best)?)));
        }
        Ok(None)
    }

    fn finish(self, verdict: Verdict, certificate: Option<ArrowCertificate>) -> ArrowDecision {
        ArrowDecision {
            verdict,
            two_t: self.two_t,
            best_upper: self.best_upper,
            best_lower: self.best_cut.map(|c| c.size),
            certificate,
            reports: self.reports,
        }
    }
}

/// Runs the eigenvalue bound, the dual bound warm-started from the low-rank
/// relaxation, rounding plus local search, and exhaustive search on tiny
/// instances, stopping at the first decisive result. Deterministic for fixed
/// options.
pub fn decide_arrowing(g: &Graph, opts: &DecideOptions) -> Result<ArrowDecision, ArrowError> {
    if opts.require_k4_free {
        if let Some(k4) = find_k4(g) {
            return Err(ArrowError::NotFolkmanCandidate(k4));
        }
    }
    let tg = build_triangle_graph_unchecked(g)?;
    decide_on(&tg, opts)
}

/// As [`decide_arrowing`] for an already built triangle graph.
pub fn decide_on(tg: &TriangleGraph, opts: &DecideOptions) -> Result<ArrowDecision, ArrowError> {
    let h = &tg.h;
    let p = &opts.profile;
    let mut pipe = Pipeline { tg, two_t: tg.two_t(), best_upper: None, best_cut: None, reports: Vec::new() };

    // no triangles: any coloring works
    if pipe.two_t == 0 {
        let cut = Cut::new(h, vec![1; h.vertex_count()])?;
        let cert = pipe.offer(cut)?;
        return Ok(pipe.finish(Verdict::NotArrows, cert));
    }

    let spectral = SpectralOptions { lanczos: LanczosOptions { seed: opts.seed, ..p.lanczos.clone() }, ..SpectralOptions::default() };
    if let Some(cert) = pipe.record(eig_upper_bound(h, &spectral)?) {
        return Ok(pipe.finish(Verdict::Arrows, Some(cert)));
    }

    let lr = LowRankOptions::for_graph(h, p.lowrank_sweeps);
    let va = lowrank_ascent(h, &lr, opts.seed)?;

    if p.dual_iterations > 0 {
        let dual = DualOptions { budget: p.dual_iterations, warm_start: None, spectral: spectral.clone() };
        if let Some(cert) = pipe.record(dual_upper_bound_from(h, Some(&va), &dual, opts.seed)?) {
            return Ok(pipe.finish(Verdict::Arrows, Some(cert)));
        }
    }

    for restart in 0..p.restarts.max(1) {
        let seed = opts.seed.wrapping_add(restart as u64);
        // later restarts only need diversity, not a converged relaxation
        let start = if restart == 0 {
            va.clone()
        } else {
            lowrank_ascent(h, &LowRankOptions { sweeps: (lr.sweeps / 10).max(1), ..lr.clone() }, seed)?
        };
        let rounded = hyperplane_round(&start, h, p.rounding_trials.max(1), seed)?;
        let improved = local_search_improve(h, &rounded)?;
        if let Some(cert) = pipe.offer(improved)? {
            return Ok(pipe.finish(Verdict::NotArrows, Some(cert)));
        }
    }

    if h.vertex_count() <= BRUTE_FORCE_LIMIT.min(24) {
        let exact = brute_force_maxcut(h)?;
        if let Some(cert) = pipe.offer(exact)? {
            return Ok(pipe.finish(Verdict::NotArrows, Some(cert)));
        }
    }

    Ok(pipe.finish(Verdict::Undecided, None))
}

fn exact_rational(x: f64) -> BigRational {
    BigRational::from_f64(x).expect("finite")
}

/// Replays a certificate against `g` without using the search code.
///
/// Coloring certificates are recounted by direct triangle enumeration.
/// Spectral certificates have their floor re-established on `A_H + Diag(u)`
/// and the bound recomputed; exact-tier floors are compared against `2t△`
/// in rational arithmetic, floating ones with [`numerical_margin`].
pub fn verify_certificate(g: &Graph, cert: &ArrowCertificate) -> Result<bool, ArrowError> {
    match cert {
        ArrowCertificate::Coloring(col) => {
            if col.colors.len() != g.edge_count() {
                return Err(ArrowError::Malformed(format!("coloring has {} entries, graph has {} edges", col.colors.len(), g.edge_count())));
            }
            if col.colors.iter().any(|&c| c > 1) {
                return Err(ArrowError::Malformed("coloring entries must be 0 or 1".into()));
            }
            Ok(count_monochromatic_triangles(g, col)? == 0)
        }
        ArrowCertificate::Spectral { u, sigma, .. } => {
            let tg = build_triangle_graph_unchecked(g)?;
            let n = tg.h.vertex_count();
            if u.len() != n {
                return Err(ArrowError::Malformed(format!("u has {} entries, H_G has {n} vertices", u.len())));
            }
            if !sigma.is_finite() || u.iter().any(|x| !x.is_finite()) {
                return Err(ArrowError::Malformed("non-finite value".into()));
            }
            if n == 0 {
                return Ok(false);
            }
            let l1: f64 = u.iter().map(|x| x.abs()).sum();
            let sum: f64 = u.iter().sum();
            if sum.abs() > 1e-9 * l1 {
                return Ok(false);
            }
            let m = SparseSymMatrix::adjacency(&tg.h).with_diagonal(u.clone())?;
            let verify_lanczos = LanczosOptions { tol: 1e-9, basis: 120, keep: 60, seed: 0x7e51_f1ed, ..LanczosOptions::default() };
            let floor = match certify_spectral_floor_with(&m, *sigma, &verify_lanczos) {
                Ok(f) => f,
                Err(SpectraError::IndefiniteAtSigma { .. }) | Err(SpectraError::NotConverged { .. }) => return Ok(false),
                Err(e) => return Err(e.into()),
            };
            if !floor.holds {
                return Ok(false);
            }
            let two_t = tg.two_t();
            match floor.tier {
                Tier::Exact => {
                    let e = BigRational::from_integer(BigInt::from(tg.h.edge_count()));
                    let nv = BigRational::from_integer(BigInt::from(n));
                    let four = BigRational::from_integer(BigInt::from(4));
                    let two = BigRational::from_integer(BigInt::from(2));
                    let usum = u.iter().fold(BigRational::from_integer(BigInt::from(0)), |acc, &x| acc + exact_rational(x));
                    let bound = e / two - exact_rational(*sigma) * nv / &four + usum / four;
                    Ok(bound < BigRational::from_integer(BigInt::from(two_t)))
                }
                tier => {
                    let bound = tg.h.edge_count() as f64 / 2.0 - sigma * n as f64 / 4.0 + sum / 4.0;
                    Ok(spectral_claim_holds(bound, tier, two_t, tg.h.edge_count()))
                }
            }
        }
    }
}
