#![allow(clippy::needless_range_loop)]

mod common;

use common::*;
use proptest::prelude::*;
use serde::Deserialize;
use spectrachrome::graph::*;
use spectrachrome::Error;

#[derive(Deserialize)]
struct Fixture {
    g6: String,
    n: usize,
    edges: Vec<(usize, usize)>,
}

fn adj(g: &Graph) -> Adj {
    adj_from_edges(g.n(), &g.edges())
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
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

#[test]
fn graph6_matches_networkx_fixture() {
    let text = include_str!("data/networkx_graph6.json");
    let fixtures: Vec<Fixture> = serde_json::from_str(text).unwrap();
    assert_eq!(fixtures.len(), 100);
    for f in &fixtures {
        let g = parse_graph6(&f.g6).unwrap();
        assert_eq!(g.n(), f.n);
        let mut edges = f.edges.clone();
        edges.sort();
        assert_eq!(g.edges(), edges, "{}", f.g6);
        assert_eq!(decode_graph6_small(&f.g6), adj_from_edges(f.n, &f.edges));
        assert_eq!(encode_graph6(&g), f.g6);
    }
}

#[test]
fn graph6_errors_carry_offsets() {
    match parse_graph6("D?") {
        Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 2),
        other => panic!("{other:?}"),
    }
    match parse_graph6("C~ ") {
        Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 2),
        other => panic!("{other:?}"),
    }
    assert!(parse_graph6("").is_err());
    assert_eq!(parse_graph6(">>graph6<<Bw\n").unwrap().edge_count(), 3);
}

#[test]
fn family_invariants() {
    let cases: Vec<(Family, Vec<usize>, usize, usize)> = vec![
        (Family::Cycle, vec![7], 7, 7),
        (Family::Complete, vec![6], 6, 15),
        (Family::Path, vec![5], 5, 4),
        (Family::Hypercube, vec![4], 16, 32),
        (Family::Prism, vec![5], 10, 15),
        (Family::GeneralizedPetersen, vec![8, 3], 16, 24),
        (Family::Kneser, vec![7, 3], 35, 70),
        (Family::Petersen, vec![], 10, 15),
        (Family::Empty, vec![4], 4, 0),
        (Family::CompleteBipartite, vec![2, 5], 7, 10),
    ];
    for (f, p, n, m) in cases {
        let g = generate(f, &p).unwrap();
        assert_eq!((g.n(), g.edge_count()), (n, m), "{f:?}{p:?}");
    }
    assert!(generate(Family::Cycle, &[2]).is_err());
    assert!(generate(Family::Kneser, &[4, 3]).is_err());
    assert!("nonsense:3".parse::<FamilySpec>().is_err());
    assert_eq!(
        "gp:5,2".parse::<FamilySpec>().unwrap().to_string(),
        "generalized_petersen:5,2"
    );
}

#[test]
fn petersen_presentations_are_isomorphic() {
    let pet = adj(&generate(Family::Petersen, &[]).unwrap());
    let kn = adj(&generate(Family::Kneser, &[5, 2]).unwrap());
    let gp = adj(&generate(Family::GeneralizedPetersen, &[5, 2]).unwrap());
    assert!(isomorphic(&pet, &kn));
    assert!(isomorphic(&kn, &gp));
    let prism = adj(&generate(Family::Prism, &[5]).unwrap());
    assert!(!isomorphic(&pet, &prism));
    assert!(isomorphic(
        &prism,
        &adj(&generate(Family::GeneralizedPetersen, &[5, 1]).unwrap())
    ));
    assert!(isomorphic(
        &adj(&generate(Family::Hypercube, &[2]).unwrap()),
        &adj(&generate(Family::Cycle, &[4]).unwrap())
    ));
}

#[test]
fn walk_regularity_of_named_graphs() {
    let c6 = generate(Family::Cycle, &[6]).unwrap();
    assert!((1..=5).all(|k| is_k_partially_walk_regular(&c6, k)));
    let p3 = generate(Family::Path, &[3]).unwrap();
    assert!(is_k_partially_walk_regular(&p3, 1));
    assert!(!is_k_partially_walk_regular(&p3, 2));
    let prism3 = generate(Family::Prism, &[3]).unwrap();
    assert!(is_k_partially_walk_regular(&prism3, 3));
    let k13 = generate(Family::CompleteBipartite, &[1, 3]).unwrap();
    assert!(!is_k_partially_walk_regular(&k13, 2));
}

fn walk_regular_oracle(a: &Adj, k: usize) -> bool {
    let n = a.len();
    let mut pow: Vec<Vec<u128>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as u128).collect())
        .collect();
    for _ in 0..k {
        pow = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).filter(|&l| a[l][j]).map(|l| pow[i][l]).sum())
                    .collect()
            })
            .collect();
        if (1..n).any(|v| pow[v][v] != pow[0][0]) {
            return false;
        }
    }
    true
}

proptest! {
    #[test]
    fn graph6_round_trip(g in arb_graph(70)) {
        let s = encode_graph6(&g);
        let back = parse_graph6(&s).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.n(), g.n());
        if g.n() < 63 {
            prop_assert_eq!(decode_graph6_small(&s), adj(&g));
        }
    }

    #[test]
    fn distances_match_floyd_warshall(g in arb_graph(14)) {
        let d = distances(&g);
        let fw = floyd_warshall(&adj(&g));
        for u in 0..g.n() {
            for v in 0..g.n() {
                let expect = (fw[u][v] != u32::MAX).then_some(fw[u][v]);
                prop_assert_eq!(d.get(u, v), expect);
            }
        }
    }

    #[test]
    fn power_graphs_are_monotone(g in arb_graph(12), k in 1usize..5) {
        let a = adj(&g);
        let gk = power_graph(&g, k);
        let gk1 = power_graph(&g, k + 1);
        prop_assert_eq!(adj(&gk), power_adj(&a, k));
        for (u, v) in gk.edges() {
            prop_assert!(gk1.has_edge(u, v));
        }
        prop_assert_eq!(power_graph(&g, 1).edges(), g.edges());
    }

    #[test]
    fn walk_regularity_matches_oracle(g in arb_graph(9), k in 1usize..6) {
        prop_assert_eq!(is_k_partially_walk_regular(&g, k), walk_regular_oracle(&adj(&g), k));
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph(10)) {
        let mut text = format!("# n = {}\n", g.n());
        for (u, v) in g.edges() {
            text.push_str(&format!("{u} {v}\n"));
        }
        let back = parse_edge_list(&text).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(back.edges(), g.edges());
    }
}
