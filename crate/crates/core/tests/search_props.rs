mod common;

use proptest::prelude::*;

use hyperham_core::search::window_coverage;
use hyperham_core::{
    build_general, find_hamilton_ell_cycle, find_hamilton_ell_path, find_perfect_matching,
    CycleCertificate, Engine, ExtremalSpec, Hypergraph, SearchConfig, TraversalKind,
};

use common::{brute_force_exists, brute_force_matching, edge_lists, naive_verify};

fn config() -> SearchConfig {
    SearchConfig::default()
}

fn run(
    h: &Hypergraph,
    ell: usize,
    kind: TraversalKind,
    config: &SearchConfig,
) -> Option<Option<CycleCertificate>> {
    let out = match kind {
        TraversalKind::Cycle => find_hamilton_ell_cycle(h, ell, config),
        TraversalKind::Path => find_hamilton_ell_path(h, ell, config),
    }
    .ok()?;
    assert!(!out.is_budget());
    Some(out.certificate().cloned())
}

/// (n, k, ell, kind) with the divisibility conditions met, n <= 8.
fn small_instance() -> impl Strategy<Value = (usize, usize, usize, TraversalKind)> {
    (3usize..=8, 2usize..=4, any::<bool>())
        .prop_flat_map(|(n, k, cyc)| {
            let k = k.min(n - 1);
            (Just(n), Just(k), 1..k, Just(cyc))
        })
        .prop_filter_map("divisibility", |(n, k, ell, cyc)| {
            let s = k - ell;
            if cyc && n % s == 0 && n >= 2 * k - ell {
                Some((n, k, ell, TraversalKind::Cycle))
            } else if !cyc && (n - k) % s == 0 {
                Some((n, k, ell, TraversalKind::Path))
            } else {
                None
            }
        })
}

fn dense_graph(n: usize, k: usize, mask: u64, density: u8) -> Hypergraph {
    // deterministic pseudo-random edge selection from `mask`
    let mut state = mask | 1;
    Hypergraph::from_predicate(n, k, |_| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % 16) < density as u64
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn agrees_with_exhaustive_oracle(
        (n, k, ell, kind) in small_instance(),
        mask in any::<u64>(),
        density in 8u8..=16,
    ) {
        let h = dense_graph(n, k, mask, density);
        let got = run(&h, ell, kind, &config()).unwrap();
        let expected = brute_force_exists(&h, ell, kind);
        prop_assert_eq!(got.is_some(), expected);
        if let Some(cert) = got {
            prop_assert!(naive_verify(n, k, &edge_lists(&h), &cert.order, ell, kind));
        }
    }

    #[test]
    fn relabelling_preserves_outcome(
        (n, k, ell, kind) in small_instance(),
        mask in any::<u64>(),
        density in 10u8..=16,
        perm in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let perm: Vec<usize> = perm.into_iter().filter(|&v| v < n).collect();
        let h = dense_graph(n, k, mask, density);
        let g = h.relabel(&perm).unwrap();
        let a = run(&h, ell, kind, &config()).unwrap();
        let b = run(&g, ell, kind, &config()).unwrap();
        prop_assert_eq!(a.is_some(), b.is_some());
    }

    #[test]
    fn seed_and_engine_do_not_change_outcome(
        (n, k, ell, kind) in small_instance(),
        mask in any::<u64>(),
        density in 10u8..=16,
        seed in any::<u64>(),
    ) {
        let h = dense_graph(n, k, mask, density);
        let base = run(&h, ell, kind, &config()).unwrap().is_some();
        for c in [
            SearchConfig { seed: Some(seed), ..config() },
            SearchConfig { engine: Engine::Backtrack, ..config() },
            SearchConfig { threads: Some(1), ..config() },
        ] {
            let got = run(&h, ell, kind, &c).unwrap();
            prop_assert_eq!(got.is_some(), base);
            if let Some(cert) = got {
                prop_assert!(naive_verify(n, k, &edge_lists(&h), &cert.order, ell, kind));
            }
        }
    }

    #[test]
    fn matching_agrees_with_oracle(n in prop::sample::select(vec![6usize, 8, 9]), mask in any::<u64>(), density in 2u8..=10) {
        let k = if n == 9 { 3 } else { 2 + (n % 3) };
        let h = dense_graph(n, k, mask, density);
        let out = find_perfect_matching(&h, &config()).unwrap();
        prop_assert_eq!(out.is_found(), brute_force_matching(&h));
    }
}

#[test]
fn complete_graphs_are_hamiltonian() {
    for k in 2..=5usize {
        for ell in 1..k {
            let s = k - ell;
            for n in k..=12 {
                let complete = Hypergraph::complete(n, k).unwrap();
                if n % s == 0 && n >= 2 * k - ell {
                    let out = find_hamilton_ell_cycle(&complete, ell, &config()).unwrap();
                    assert!(out.is_found(), "cycle n={n} k={k} ell={ell}");
                }
                if (n - k) % s == 0 {
                    let out = find_hamilton_ell_path(&complete, ell, &config()).unwrap();
                    assert!(out.is_found(), "path n={n} k={k} ell={ell}");
                }
            }
        }
    }
}

#[test]
fn in_window_constructions_have_no_cycle() {
    let mut decided = 0;
    for k in 3..=4usize {
        for ell in 1..k {
            let s = k - ell;
            for j in (ell as i64 + 1 - k as i64)..=k as i64 {
                for n in (2 * k - ell)..=12 {
                    if n % s != 0 {
                        continue;
                    }
                    for x in 0..=n {
                        let spec = ExtremalSpec::new(n, k, ell, j, x).unwrap();
                        if !spec.in_window() {
                            continue;
                        }
                        let h = build_general(&spec).unwrap();
                        let out = find_hamilton_ell_cycle(&h, ell, &config()).unwrap();
                        assert!(out.is_not_found(), "{spec:?}: {}", out.status());
                        decided += 1;
                    }
                }
            }
        }
    }
    assert!(decided > 100);
}

#[test]
fn in_window_oracle_cross_check() {
    for (n, k, ell, j, x) in [
        (6, 3, 2, 1, 2),
        (8, 4, 3, 2, 3),
        (8, 4, 2, 1, 4),
        (6, 3, 1, 1, 2),
    ] {
        let spec = ExtremalSpec::new(n, k, ell, j, x).unwrap();
        let h = build_general(&spec).unwrap();
        assert_eq!(
            spec.in_window(),
            !brute_force_exists(&h, ell, TraversalKind::Cycle),
            "{spec:?}"
        );
    }
}

#[test]
fn found_cycles_have_uniform_overlaps_and_coverage() {
    for k in 2..=5usize {
        for ell in 1..k {
            let s = k - ell;
            let (a, a_prime) = (k.div_ceil(s), k / s);
            for n in (2 * k - ell)..=12 {
                if n % s != 0 {
                    continue;
                }
                let h = Hypergraph::complete(n, k).unwrap();
                let out = find_hamilton_ell_cycle(&h, ell, &config()).unwrap();
                let cert = out.certificate().unwrap();
                assert!(naive_verify(
                    n,
                    k,
                    &edge_lists(&h),
                    &cert.order,
                    ell,
                    TraversalKind::Cycle
                ));
                let cover = window_coverage(cert, k).unwrap();
                assert!(
                    cover.iter().all(|&c| c == a || c == a_prime),
                    "n={n} k={k} ell={ell}: {cover:?}"
                );
                assert_eq!(cover.iter().sum::<usize>(), k * n / s);
            }
        }
    }
}

// Paths have no published window; away from the cycle window's edges they
// behave the same way.
#[test]
fn paths_absent_inside_reduced_window() {
    let mut decided = 0;
    for k in 3..=4usize {
        for ell in 1..k {
            let s = k - ell;
            for j in (ell as i64 + 1 - k as i64)..=k as i64 {
                for n in (k + 1)..=10 {
                    if (n - k) % s != 0 {
                        continue;
                    }
                    for x in 1..n {
                        let inside = |x| ExtremalSpec::new(n, k, ell, j, x).unwrap().in_window();
                        if !(inside(x - 1) && inside(x) && inside(x + 1)) {
                            continue;
                        }
                        let spec = ExtremalSpec::new(n, k, ell, j, x).unwrap();
                        let h = build_general(&spec).unwrap();
                        let out = find_hamilton_ell_path(&h, ell, &config()).unwrap();
                        assert!(out.is_not_found(), "{spec:?}: {}", out.status());
                        decided += 1;
                    }
                }
            }
        }
    }
    assert!(decided > 50, "{decided}");
}
