mod common;

use std::f64::consts::PI;

use common::*;
use proptest::prelude::*;
use spectrachrome::graph::{generate, Family, Graph};
use spectrachrome::spectral::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for v in 1..n {
                for u in 0..v {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn arb_poly(k: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec(-3i32..=3, k + 1)
        .prop_map(|c| Poly::new(c.into_iter().map(f64::from).collect()))
}

/// Integer closed-walk counts `tr(A^l)` for `l = 0..=k`.
fn trace_powers(a: &Adj, k: usize) -> Vec<i128> {
    let n = a.len();
    let mut pow: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i128).collect())
        .collect();
    let mut out = vec![n as i128];
    for _ in 0..k {
        pow = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).filter(|&l| a[l][j]).map(|l| pow[i][l]).sum())
                    .collect()
            })
            .collect();
        out.push((0..n).map(|i| pow[i][i]).sum());
    }
    out
}

fn assert_spectrum(g: &Graph, expect: &[(f64, usize)]) {
    let s = eigendecompose(g).unwrap();
    assert_eq!(s.distinct.len(), expect.len(), "{:?}", s.distinct);
    for ((&x, &m), &(ex, em)) in s.distinct.iter().zip(&s.mult).zip(expect) {
        assert!((x - ex).abs() < 1e-9, "{x} vs {ex}");
        assert_eq!(m, em);
    }
}

#[test]
fn closed_form_spectra() {
    assert_spectrum(
        &generate(Family::Cycle, &[6]).unwrap(),
        &[(2.0, 1), (1.0, 2), (-1.0, 2), (-2.0, 1)],
    );
    assert_spectrum(
        &generate(Family::Complete, &[4]).unwrap(),
        &[(3.0, 1), (-1.0, 3)],
    );
    assert_spectrum(
        &generate(Family::Cycle, &[3]).unwrap(),
        &[(2.0, 1), (-1.0, 2)],
    );
    assert_spectrum(
        &generate(Family::Petersen, &[]).unwrap(),
        &[(3.0, 1), (1.0, 5), (-2.0, 4)],
    );
    assert_spectrum(
        &generate(Family::Hypercube, &[4]).unwrap(),
        &[(4.0, 1), (2.0, 4), (0.0, 6), (-2.0, 4), (-4.0, 1)],
    );
    assert_spectrum(
        &generate(Family::CompleteBipartite, &[2, 8]).unwrap(),
        &[(4.0, 1), (0.0, 8), (-4.0, 1)],
    );
    assert_spectrum(&generate(Family::Empty, &[3]).unwrap(), &[(0.0, 3)]);
}

#[test]
fn cycles_match_cosines() {
    for n in 3..=24 {
        let s = eigendecompose(&generate(Family::Cycle, &[n]).unwrap()).unwrap();
        let mut expect: Vec<f64> = (0..n)
            .map(|j| 2.0 * (2.0 * PI * j as f64 / n as f64).cos())
            .collect();
        expect.sort_by(|a, b| b.total_cmp(a));
        for (x, y) in s.full.iter().zip(&expect) {
            assert!((x - y).abs() < 1e-10, "C{n}: {x} vs {y}");
        }
        let distinct = n / 2 + 1;
        assert_eq!(s.distinct.len(), distinct, "C{n}");
    }
}

#[test]
fn json_form_is_rounded() {
    let s = eigendecompose(&generate(Family::Cycle, &[6]).unwrap()).unwrap();
    assert_eq!(
        s.to_json_value().to_string(),
        r#"{"distinct":[2.0,1.0,-1.0,-2.0],"mult":[1,2,2,1]}"#
    );
}

proptest! {
    #[test]
    fn moments_match_walk_counts(g in arb_graph(12)) {
        let s = eigendecompose(&g).unwrap();
        let tr = trace_powers(&adj_from_edges(g.n(), &g.edges()), 3);
        let moment = |l: i32| s.full.iter().map(|x| x.powi(l)).sum::<f64>();
        prop_assert!(moment(1).abs() < 1e-9);
        prop_assert!((moment(2) - 2.0 * g.edge_count() as f64).abs() < 1e-8);
        prop_assert!((moment(3) - tr[3] as f64).abs() < 1e-7);
        prop_assert_eq!(s.mult.iter().sum::<usize>(), g.n());
        let i = s.inertia();
        prop_assert_eq!(i.n_plus + i.n_zero + i.n_minus, g.n());
    }

    #[test]
    fn eigenvectors_satisfy_eigen_equation(g in arb_graph(12)) {
        let s = eigendecompose(&g).unwrap();
        let a = adj_from_edges(g.n(), &g.edges());
        for (lam, v) in s.full.iter().zip(&s.vectors) {
            let norm: f64 = v.iter().map(|x| x * x).sum();
            prop_assert!((norm - 1.0).abs() < 1e-9);
            for u in 0..g.n() {
                let av: f64 = (0..g.n()).filter(|&w| a[u][w]).map(|w| v[w]).sum();
                prop_assert!((av - lam * v[u]).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn weighted_sum_is_trace(g in arb_graph(10), p in arb_poly(4)) {
        let s = eigendecompose(&g).unwrap();
        let tr = trace_powers(&adj_from_edges(g.n(), &g.edges()), 4);
        let exact: f64 = p.coeffs().iter().zip(&tr).map(|(c, &t)| c * t as f64).sum();
        prop_assert!((s.weighted_sum(&p) - exact).abs() < 1e-7 * exact.abs().max(1.0));
        let (m, _) = eval_poly_matrix(&p, &g, &s);
        prop_assert!((m.trace() - exact).abs() < 1e-7 * exact.abs().max(1.0));
    }

    #[test]
    fn poly_diagonal_matches_matrix(g in arb_graph(10), p in arb_poly(3)) {
        let s = eigendecompose(&g).unwrap();
        let (m, _) = eval_poly_matrix(&p, &g, &s);
        let diag = poly_diagonal(&p, &power_diagonals(&g, 3));
        for (x, y) in m.diagonal().iter().zip(&diag) {
            prop_assert!((x - y).abs() < 1e-8);
        }
    }
}
