use num_bigint::BigUint;
use proptest::prelude::*;

use hyperham_core::binom::binomial;
use hyperham_core::hypergraph::subsets;
use hyperham_core::io::{parse_text, to_text};
use hyperham_core::{Hypergraph, VertexSet};

fn graph() -> impl Strategy<Value = Hypergraph> {
    (2usize..=9)
        .prop_flat_map(|n| (Just(n), 2..=n))
        .prop_flat_map(|(n, k)| {
            let total = subsets(n, k).count();
            (
                Just(n),
                Just(k),
                prop::collection::vec(any::<bool>(), total),
            )
        })
        .prop_map(|(n, k, keep)| {
            let mut it = keep.into_iter();
            Hypergraph::from_predicate(n, k, |_| it.next().unwrap()).unwrap()
        })
}

/// Degree of every d-set by scanning edge lists, no bit tricks.
fn naive_degrees(h: &Hypergraph, d: usize) -> Vec<u64> {
    let edges: Vec<Vec<usize>> = h.edges().iter().map(|e| e.to_vec()).collect();
    subsets(h.n(), d)
        .map(|s| {
            let s = s.to_vec();
            edges
                .iter()
                .filter(|e| s.iter().all(|v| e.contains(v)))
                .count() as u64
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn min_degree_matches_naive_scan(h in graph()) {
        for d in 1..h.k() {
            let naive = naive_degrees(&h, d);
            let profile = h.min_d_degree(d).unwrap();
            let min = *naive.iter().min().unwrap();
            prop_assert_eq!(profile.min_degree.clone(), BigUint::from(min));
            let witness = VertexSet::from_vertices(profile.witness.iter().copied()).unwrap();
            prop_assert_eq!(h.degree(witness).unwrap(), min);
        }
    }

    #[test]
    fn degree_bounds_and_completeness(h in graph()) {
        for d in 1..h.k() {
            let max = binomial((h.n() - d) as u64, (h.k() - d) as i64);
            let min = h.min_d_degree(d).unwrap().min_degree;
            prop_assert!(min <= max);
            prop_assert_eq!(min == max, h.is_complete());
        }
    }

    #[test]
    fn handshake(h in graph()) {
        for d in 0..=h.k() {
            let total: u64 = subsets(h.n(), d).map(|s| h.degree(s).unwrap()).sum();
            prop_assert_eq!(
                BigUint::from(total),
                BigUint::from(h.edge_count()) * binomial(h.k() as u64, d as i64)
            );
        }
    }

    #[test]
    fn adding_edges_never_lowers_min_degree(h in graph(), extra in prop::collection::vec(any::<prop::sample::Index>(), 0..6)) {
        let all: Vec<VertexSet> = subsets(h.n(), h.k()).collect();
        let g = h.with_edges(extra.iter().map(|i| *i.get(&all))).unwrap();
        prop_assert!(g.edge_count() >= h.edge_count());
        for d in 1..h.k() {
            prop_assert!(g.min_d_degree(d).unwrap().min_degree >= h.min_d_degree(d).unwrap().min_degree);
        }
    }

    #[test]
    fn relabelling_preserves_degrees(h in graph(), perm in Just((0..9usize).collect::<Vec<_>>()).prop_shuffle()) {
        let perm: Vec<usize> = perm.into_iter().filter(|&v| v < h.n()).collect();
        let g = h.relabel(&perm).unwrap();
        prop_assert_eq!(g.edge_count(), h.edge_count());
        for d in 1..h.k() {
            prop_assert_eq!(g.min_d_degree(d).unwrap().min_degree, h.min_d_degree(d).unwrap().min_degree);
        }
        for e in h.edges() {
            let image = VertexSet::from_vertices(e.iter().map(|v| perm[v])).unwrap();
            prop_assert!(g.contains_edge(image));
        }
    }

    #[test]
    fn text_round_trip(h in graph()) {
        let back = parse_text(&to_text(&h)).unwrap();
        prop_assert_eq!(back, h);
    }
}

#[test]
fn large_vertex_counts() {
    let h = Hypergraph::complete(64, 2).unwrap();
    assert_eq!(h.edge_count(), 2016);
    assert_eq!(h.min_d_degree(1).unwrap().min_degree, BigUint::from(63u32));
    assert!(Hypergraph::complete(65, 2).is_err());
}
