//! Randomized structural and numerical invariants: incidence algebra,
//! eigensolver contracts, determinant-vs-spectrum agreement, coronal closed
//! forms, root-finder round trips, and corona assembly.

use std::collections::BTreeSet;

use proptest::prelude::*;

use tcorona_core::corona::{block_adjacency, block_laplacian};
use tcorona_core::eigen::symmetric_eigen;
use tcorona_core::generators;
use tcorona_core::linalg::det_at;
use tcorona_core::roots::real_roots_monic;
use tcorona_core::spectrum::{coronal, CoronalError};
use tcorona_core::{corona, CoronaKind, Graph, IntMat, Mat, MatrixKind};

fn edge_pool(n: usize) -> Vec<(usize, usize)> {
    let mut pool = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            pool.push((i, j));
        }
    }
    pool
}

fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let pool = edge_pool(n);
        let len = pool.len();
        proptest::collection::vec(any::<bool>(), len..=len).prop_map(move |mask| {
            let edges: Vec<(usize, usize)> =
                pool.iter().copied().zip(mask).filter_map(|(e, b)| b.then_some(e)).collect();
            Graph::new(n, &edges).expect("edge pool is loop- and duplicate-free")
        })
    })
}

fn arb_graph_with_edges(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph(2, max_n).prop_filter("needs at least one edge", |g| g.edge_count() > 0)
}

fn arb_connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph(2, max_n).prop_filter("needs connectivity", |g| g.is_connected())
}

fn arb_symmetric(max_n: usize) -> impl Strategy<Value = Mat> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(-5.0..5.0f64, n * n..=n * n)
            .prop_map(move |v| Mat::from_fn(n, n, |i, j| (v[i * n + j] + v[j * n + i]) / 2.0))
    })
}

/// Root multisets with multiplicity at most 2 and distinct values separated
/// by at least 0.05; companion-QR forward error grows like eps^(1/k) at a
/// k-fold root, so higher multiplicities need looser bounds than this
/// round-trip asserts.
fn arb_root_multiset() -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec((-6.0..6.0f64, any::<bool>()), 1..=3)
        .prop_filter("distinct roots must be separated", |pairs| {
            for i in 0..pairs.len() {
                for j in (i + 1)..pairs.len() {
                    if (pairs[i].0 - pairs[j].0).abs() < 0.05 {
                        return false;
                    }
                }
            }
            true
        })
        .prop_map(|pairs| {
            let mut roots = Vec::new();
            for (r, double) in pairs {
                roots.push(r);
                if double {
                    roots.push(r);
                }
            }
            roots.sort_unstable_by(f64::total_cmp);
            roots
        })
}

fn expand_monic(roots: &[f64]) -> Vec<f64> {
    // Product of (x - r): coeffs[k] is the coefficient of x^k.
    let mut coeffs = vec![1.0];
    for &r in roots {
        coeffs.push(0.0);
        for k in (0..coeffs.len()).rev() {
            let lower = if k > 0 { coeffs[k - 1] } else { 0.0 };
            coeffs[k] = lower - r * coeffs[k];
        }
    }
    coeffs.pop();
    coeffs
}

fn edge_set(edges: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    edges.iter().map(|&(u, v)| if u < v { (u, v) } else { (v, u) }).collect()
}

fn max_abs_diff(a: &Mat, b: &Mat) -> f64 {
    a.sub(b).max_abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn incidence_gram_is_adjacency_plus_degrees(g in arb_graph(2, 8)) {
        let r = g.incidence_matrix();
        let gram = r.mul(&r.transpose());
        prop_assert_eq!(gram, g.adjacency_matrix().add(&g.degree_matrix()));
    }

    #[test]
    fn incidence_cogram_is_line_graph_plus_two(g in arb_graph_with_edges(8)) {
        let r = g.incidence_matrix();
        let cogram = r.transpose().mul(&r);
        let line_adj = g.line_graph().adjacency_matrix();
        let two = IntMat::scaled_identity(g.edge_count(), 2);
        prop_assert_eq!(cogram, line_adj.add(&two));
    }

    #[test]
    fn total_graph_degrees_split_by_role(g in arb_graph_with_edges(8)) {
        let t = g.total_graph();
        let base = g.degrees();
        let got = t.degrees();
        for (v, &d) in base.iter().enumerate() {
            prop_assert_eq!(got[v], 2 * d, "vertex role at {}", v);
        }
        for (k, &(u, v)) in g.edges().iter().enumerate() {
            prop_assert_eq!(
                got[g.vertex_count() + k],
                base[u] + base[v],
                "edge role at {}-{}", u, v
            );
        }
    }

    #[test]
    fn eigensolver_preserves_trace_and_reconstructs(m in arb_symmetric(8)) {
        let e = symmetric_eigen(&m).unwrap();
        let n = m.rows();
        let scale = if m.max_abs() > 1.0 { m.max_abs() } else { 1.0 };

        let value_sum: f64 = e.values.iter().sum();
        prop_assert!(
            (value_sum - m.trace()).abs() <= 1e-10 * scale * n as f64,
            "trace drift: {} vs {}", value_sum, m.trace()
        );

        let v = e.vectors.unwrap();
        let recon = Mat::from_fn(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * e.values[k] * v[(j, k)]).sum()
        });
        let err = max_abs_diff(&recon, &m);
        prop_assert!(err <= 1e-8 * scale, "reconstruction error {}", err);
    }

    #[test]
    fn determinant_route_matches_spectral_route(
        m in arb_symmetric(8),
        offset in 0.0..3.0f64,
    ) {
        // det(xI - M) from LU must equal the eigenvalue product; x sits above
        // the spectrum so every factor is at least 1.
        let e = symmetric_eigen(&m).unwrap();
        let top = e.values.last().copied().unwrap();
        let x = top + 1.0 + offset;
        let lu_route = det_at(&m, x);
        let spectral_route: f64 = e.values.iter().map(|ev| x - ev).product();
        let denom = spectral_route.abs().max(1.0);
        prop_assert!(
            ((lu_route - spectral_route) / denom).abs() <= 1e-6,
            "{} vs {}", lu_route, spectral_route
        );
    }

    #[test]
    fn coronal_of_constant_row_sums_is_closed_form(
        m in arb_symmetric(7),
        offset in 0.5..4.0f64,
    ) {
        // Adjust the diagonal so every row sums to the same t; the all-ones
        // vector becomes an eigenvector and the coronal collapses to
        // n / (x - t).
        let n = m.rows();
        let sums: Vec<f64> = (0..n).map(|i| m.row(i).iter().sum()).collect();
        let t = sums.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let fixed = Mat::from_fn(n, n, |i, j| {
            m[(i, j)] + if i == j { t - sums[i] } else { 0.0 }
        });
        // Everything in the spectrum is bounded by n * max|entry|.
        let x = fixed.max_abs() * n as f64 + offset;
        let got = coronal(&fixed, x, 1e-6).unwrap();
        let want = n as f64 / (x - t);
        prop_assert!(
            (got - want).abs() <= 1e-8 * want.abs().max(1.0),
            "{} vs {}", got, want
        );
    }

    #[test]
    fn coronal_refuses_points_near_the_spectrum(m in arb_symmetric(6)) {
        let e = symmetric_eigen(&m).unwrap();
        let delta = 0.1;
        let near = e.values[0] + 0.4 * delta;
        match coronal(&m, near, delta) {
            Err(CoronalError::NearEigenvalue { .. }) => {}
            other => return Err(TestCaseError::fail(format!("expected refusal, got {other:?}"))),
        }
        let far = e.values.last().unwrap() + 2.0 * delta;
        prop_assert!(coronal(&m, far, delta).is_ok());
    }

    #[test]
    fn roots_round_trip_through_monic_coefficients(roots in arb_root_multiset()) {
        let coeffs = expand_monic(&roots);
        let got = real_roots_monic(&coeffs).unwrap();
        prop_assert_eq!(got.len(), roots.len());
        let mut seen = std::collections::HashMap::new();
        for &r in &roots {
            *seen.entry(r.to_bits()).or_insert(0usize) += 1;
        }
        for (g, w) in got.iter().zip(roots.iter()) {
            let scale = w.abs().max(1.0);
            let tol = if seen[&w.to_bits()] > 1 { 1e-5 } else { 1e-7 };
            prop_assert!(
                (g - w).abs() <= tol * scale,
                "got {:?}, want {:?}", got, roots
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn corona_graph_matches_block_matrices(
        g1 in arb_graph_with_edges(6),
        g2 in arb_graph(1, 4),
        pick_edge_kind in any::<bool>(),
    ) {
        let kind = if pick_edge_kind { CoronaKind::TEdge } else { CoronaKind::TVertex };
        let c = corona(&g1, &g2, kind).unwrap();

        prop_assert_eq!(c.graph.vertex_count(), c.layout.vertex_count());
        let copies = c.layout.copy_count();
        let expected_copies = match kind {
            CoronaKind::TVertex => g1.vertex_count(),
            CoronaKind::TEdge => g1.edge_count(),
        };
        prop_assert_eq!(copies, expected_copies);

        let adj = c.matrix(MatrixKind::Adjacency);
        let block_adj = block_adjacency(&g1, &g2, kind).unwrap();
        prop_assert!(max_abs_diff(&adj, &block_adj) == 0.0, "adjacency blocks differ");

        let lap = c.matrix(MatrixKind::Laplacian);
        let block_lap = block_laplacian(&g1, &g2, kind).unwrap();
        prop_assert!(max_abs_diff(&lap, &block_lap) == 0.0, "laplacian blocks differ");
    }

    #[test]
    fn corona_restricts_to_total_graph_and_copies(
        g1 in arb_graph_with_edges(6),
        g2 in arb_graph(1, 4),
        pick_edge_kind in any::<bool>(),
    ) {
        let kind = if pick_edge_kind { CoronaKind::TEdge } else { CoronaKind::TVertex };
        let c = corona(&g1, &g2, kind).unwrap();
        let t_end = c.layout.total_graph_range().end;

        let induced_total: BTreeSet<(usize, usize)> = edge_set(c.graph.edges())
            .into_iter()
            .filter(|&(u, v)| u < t_end && v < t_end)
            .collect();
        prop_assert_eq!(induced_total, edge_set(g1.total_graph().edges()));

        let copy_edges = edge_set(g2.edges());
        for k in 0..c.layout.copy_count() {
            let range = c.layout.copy_range(k);
            let induced: BTreeSet<(usize, usize)> = edge_set(c.graph.edges())
                .into_iter()
                .filter(|&(u, v)| range.contains(&u) && range.contains(&v))
                .map(|(u, v)| (u - range.start, v - range.start))
                .collect();
            prop_assert_eq!(induced, copy_edges.clone(), "copy {}", k);
        }
    }

    #[test]
    fn corona_of_connected_base_is_connected(
        g1 in arb_connected_graph(6),
        g2 in arb_graph(1, 4),
        pick_edge_kind in any::<bool>(),
    ) {
        let kind = if pick_edge_kind { CoronaKind::TEdge } else { CoronaKind::TVertex };
        let c = corona(&g1, &g2, kind).unwrap();
        prop_assert!(c.graph.is_connected());
    }
}

#[test]
fn regular_grid_line_graph_spectra_shift() {
    // For an r-regular graph, line-graph adjacency eigenvalues are the base
    // eigenvalues shifted by r - 2, padded with -2 (multiplicity m - n).
    for (g, r) in [
        (generators::cycle(5).unwrap(), 2usize),
        (generators::complete(4).unwrap(), 3),
        (generators::petersen(), 3),
        (generators::hypercube(3).unwrap(), 3),
    ] {
        let base = tcorona_core::Spectrum::of(&g, MatrixKind::Adjacency).unwrap();
        let line = tcorona_core::Spectrum::of(&g.line_graph(), MatrixKind::Adjacency).unwrap();
        let mut want: Vec<f64> =
            base.values().iter().map(|l| l + r as f64 - 2.0).collect();
        want.extend(std::iter::repeat(-2.0).take(g.edge_count() - g.vertex_count()));
        let m = tcorona_core::multiset_equal(line.values(), &want, 1e-8);
        assert!(m.equal, "line graph spectrum deviates by {}", m.max_deviation);
    }
}
