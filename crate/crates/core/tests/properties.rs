use folkman::arrow::{decide_arrowing, DecideOptions, Effort, Verdict};
use folkman::cut::{
    brute_force_maxcut, cut_size, dual_upper_bound_from, eig_upper_bound, hyperplane_round, local_search_improve,
    lowrank_ascent, lowrank_continue, objective_gradient, relaxation_objective, spectral_bound, DualOptions,
    LowRankOptions, SpectralOptions,
};
use folkman::graph::Graph;
use folkman::spectra::{extreme_eigenpair, LanczosOptions, SparseSymMatrix, Which};
use folkman::triangles::{
    build_triangle_graph_unchecked, coloring_from_cut, count_monochromatic_triangles, is_k4_free, triangle_count,
    EdgeColoring,
};
use folkman::cut::Cut;
use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;

fn graph_from_mask(n: usize, mask: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (0.05f64..0.9).prop_flat_map(move |p| {
            proptest::collection::vec(proptest::bool::weighted(p), pairs).prop_map(move |mask| graph_from_mask(n, &mask))
        })
    })
}

fn brute_triangles(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut t = 0;
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) {
                continue;
            }
            for c in b + 1..n {
                if g.has_edge(a, c) && g.has_edge(b, c) {
                    t += 1;
                }
            }
        }
    }
    t
}

fn brute_mono(g: &Graph, colors: &[u8]) -> usize {
    let n = g.vertex_count();
    let col = |a: usize, b: usize| colors[g.edge_index(a, b).unwrap()];
    let mut mono = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c) && col(a, b) == col(a, c) && col(a, c) == col(b, c) {
                    mono += 1;
                }
            }
        }
    }
    mono
}

/// Exhaustive truth for `G → (3,3)`.
fn arrows_by_exhaustion(g: &Graph) -> bool {
    let m = g.edge_count();
    (0u64..1 << m).all(|bits| {
        let colors: Vec<u8> = (0..m).map(|i| ((bits >> i) & 1) as u8).collect();
        brute_mono(g, &colors) > 0
    })
}

fn dense(m: &SparseSymMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.dim(), m.dim(), &m.to_dense())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn triangle_enumeration_matches_brute_force(g in arb_graph(60)) {
        prop_assert_eq!(triangle_count(&g), brute_triangles(&g));
        let tg = build_triangle_graph_unchecked(&g).unwrap();
        prop_assert_eq!(tg.h.edge_count(), 3 * tg.triangle_count());
        prop_assert_eq!(tg.h.vertex_count(), g.edge_count());
    }

    #[test]
    fn cut_counts_non_monochromatic_triangles_twice(g in arb_graph(10), seed in any::<u64>()) {
        let tg = build_triangle_graph_unchecked(&g).unwrap();
        let x: Vec<i8> = (0..tg.h.vertex_count()).map(|i| if (seed.rotate_left(i as u32 % 64) ^ i as u64) & 1 == 0 { 1 } else { -1 }).collect();
        let cut = Cut::new(&tg.h, x).unwrap();
        let col = coloring_from_cut(&tg, &cut).unwrap();
        let mono = brute_mono(&g, &col.colors);
        prop_assert_eq!(count_monochromatic_triangles(&g, &col).unwrap(), mono);
        prop_assert_eq!(cut.size, 2 * (tg.triangle_count() - mono) as u64);
    }

    #[test]
    fn lanczos_matches_dense_eigensolver(
        dim in 2usize..40,
        entries in proptest::collection::vec((0usize..40, 0usize..40, -3.0f64..3.0), 1..120),
        diag in proptest::collection::vec(-2.0f64..2.0, 40),
    ) {
        let triplets: Vec<_> = entries.into_iter().filter(|&(i, j, _)| i < j && j < dim).collect();
        let mut seen = std::collections::BTreeSet::new();
        let triplets: Vec<_> = triplets.into_iter().filter(|&(i, j, _)| seen.insert((i, j))).collect();
        let m = SparseSymMatrix::from_upper_triplets(dim, &triplets).unwrap().with_diagonal(diag[..dim].to_vec()).unwrap();
        let eig = SymmetricEigen::new(dense(&m)).eigenvalues;
        let opts = LanczosOptions { tol: 1e-11, ..LanczosOptions::default() };
        let lo = extreme_eigenpair(&m, Which::Min, &opts).unwrap();
        let hi = extreme_eigenpair(&m, Which::Max, &opts).unwrap();
        prop_assert!(lo.converged && hi.converged);
        prop_assert!((lo.value - eig.min()).abs() < 1e-8, "min {} vs {}", lo.value, eig.min());
        prop_assert!((hi.value - eig.max()).abs() < 1e-8, "max {} vs {}", hi.value, eig.max());
    }

    #[test]
    fn spectral_bound_dominates_every_cut(g in arb_graph(7), useed in proptest::collection::vec(-2.0f64..2.0, 21), xbits in any::<u32>()) {
        let tg = build_triangle_graph_unchecked(&g).unwrap();
        let h = &tg.h;
        let n = h.vertex_count();
        prop_assume!(n > 0);
        let mean = useed[..n].iter().sum::<f64>() / n as f64;
        let u: Vec<f64> = useed[..n].iter().map(|x| x - mean).collect();
        let x: Vec<i8> = (0..n).map(|i| if (xbits >> (i % 32)) & 1 == 1 { 1 } else { -1 }).collect();
        // xᵀ(A + Diag(u))x = xᵀAx + Σu for x ∈ {±1}ⁿ
        let m = SparseSymMatrix::adjacency(h).with_diagonal(u.clone()).unwrap();
        let xf: Vec<f64> = x.iter().map(|&v| f64::from(v)).collect();
        let quad: f64 = m.matvec(&xf).unwrap().iter().zip(&xf).map(|(a, b)| a * b).sum();
        let usum: f64 = u.iter().sum();
        let c = cut_size(h, &x).unwrap() as f64;
        prop_assert!((c - (h.edge_count() as f64 / 2.0 - (quad - usum) / 4.0)).abs() < 1e-9);
        let lmin = SymmetricEigen::new(dense(&m)).eigenvalues.min();
        let b_dense = h.edge_count() as f64 / 2.0 - n as f64 * lmin / 4.0 + usum / 4.0;
        prop_assert!(c <= b_dense + 1e-9);
        let b = spectral_bound(h, &u, &SpectralOptions::default()).unwrap();
        prop_assert!(b.value >= b_dense - 1e-7);
    }

    #[test]
    fn coordinate_ascent_never_decreases(g in arb_graph(8), seed in any::<u64>(), rank in 1usize..6) {
        let tg = build_triangle_graph_unchecked(&g).unwrap();
        let mut va = lowrank_ascent(&tg.h, &LowRankOptions { rank, sweeps: 0, tol: 0.0 }, seed).unwrap();
        for _ in 0..5 {
            let before = va.objective;
            va = lowrank_continue(&tg.h, va, &LowRankOptions { rank, sweeps: 1, tol: 0.0 }).unwrap();
            prop_assert!(va.objective >= before - 1e-9);
            prop_assert!((va.objective - relaxation_objective(&tg.h, rank, &va.vectors)).abs() < 1e-9);
        }
    }

    #[test]
    fn gradient_matches_finite_differences(g in arb_graph(7), seed in any::<u64>(), rank in 1usize..5) {
        let tg = build_triangle_graph_unchecked(&g).unwrap();
        prop_assume!(tg.h.vertex_count() > 0);
        let va = lowrank_ascent(&tg.h, &LowRankOptions { rank, sweeps: 0, tol: 0.0 }, seed).unwrap();
        let grad = objective_gradient(&tg.h, &va);
        let step = 1e-6;
        for k in (0..va.vectors.len()).step_by(3) {
            let mut plus = va.vectors.clone();
            let mut minus = va.vectors.clone();
            plus[k] += step;
            minus[k] -= step;
            let fd = (relaxation_objective(&tg.h, rank, &plus) - relaxation_objective(&tg.h, rank, &minus)) / (2.0 * step);
            prop_assert!((fd - grad[k]).abs() < 1e-6, "entry {}: {} vs {}", k, fd, grad[k]);
        }
    }

    #[test]
    fn bound_and_cut_ordering(g in arb_graph(7), seed in any::<u64>()) {
        let tg = build_triangle_graph_unchecked(&g).unwrap();
        let h = &tg.h;
        prop_assume!(h.vertex_count() > 0 && h.vertex_count() <= 20);
        let eig = eig_upper_bound(h, &SpectralOptions::default()).unwrap();
        let va = lowrank_ascent(h, &LowRankOptions::for_graph(h, 50), seed).unwrap();
        let dual = dual_upper_bound_from(h, Some(&va), &DualOptions::with_budget(10), seed).unwrap();
        let brute = brute_force_maxcut(h).unwrap().size as f64;
        let rounded = local_search_improve(h, &hyperplane_round(&va, h, 4, seed).unwrap()).unwrap().size as f64;
        prop_assert!(eig.certified && dual.certified);
        let (e, d) = (eig.upper.unwrap(), dual.upper.unwrap());
        prop_assert!(e >= d - 1e-6, "eig {} < dual {}", e, d);
        prop_assert!(d >= brute - 1e-6, "dual {} < brute {}", d, brute);
        prop_assert!(brute >= rounded);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decisions_agree_with_exhaustive_colorings(g in arb_graph(8)) {
        prop_assume!(g.edge_count() <= 12 && is_k4_free(&g));
        let d = decide_arrowing(&g, &DecideOptions::new(Effort::Quick, 7)).unwrap();
        let truth = arrows_by_exhaustion(&g);
        match d.verdict {
            Verdict::Arrows => prop_assert!(truth),
            Verdict::NotArrows => prop_assert!(!truth),
            Verdict::Undecided => {}
        }
        if let Some(folkman::arrow::ArrowCertificate::Coloring(EdgeColoring { colors })) = &d.certificate {
            prop_assert_eq!(brute_mono(&g, colors), 0);
        }
    }
}

#[test]
fn k6_arrows_by_exhaustion_and_by_bound() {
    let k6 = Graph::complete(6);
    assert!(arrows_by_exhaustion(&k6));
    let mut opts = DecideOptions::new(Effort::Quick, 0);
    opts.require_k4_free = false;
    assert_eq!(decide_arrowing(&k6, &opts).unwrap().verdict, Verdict::Arrows);
}
