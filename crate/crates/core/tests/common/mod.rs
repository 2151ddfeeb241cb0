//! Independent oracles shared by the integration tests. Nothing here uses the
//! bitset types or the search engine.

#![allow(dead_code)]

use hyperham_core::{Hypergraph, TraversalKind};

/// Edges as sorted vertex lists.
pub fn edge_lists(h: &Hypergraph) -> Vec<Vec<usize>> {
    h.edges().iter().map(|e| e.to_vec()).collect()
}

/// Straight transcription of the definition: every window of k consecutive
/// positions starting at a multiple of k - ell is an edge, windows are
/// distinct, and consecutive windows share exactly ell vertices.
pub fn naive_verify(
    n: usize,
    k: usize,
    edges: &[Vec<usize>],
    order: &[usize],
    ell: usize,
    kind: TraversalKind,
) -> bool {
    if order.len() != n || ell == 0 || ell >= k || k > n {
        return false;
    }
    let mut sorted = order.to_vec();
    sorted.sort();
    if sorted != (0..n).collect::<Vec<_>>() {
        return false;
    }
    let s = k - ell;
    let starts: Vec<usize> = match kind {
        TraversalKind::Cycle => {
            if !n.is_multiple_of(s) {
                return false;
            }
            (0..n / s).map(|q| q * s).collect()
        }
        TraversalKind::Path => {
            if !(n - k).is_multiple_of(s) {
                return false;
            }
            (0..=(n - k) / s).map(|q| q * s).collect()
        }
    };
    let windows: Vec<Vec<usize>> = starts
        .iter()
        .map(|&st| {
            let mut w: Vec<usize> = (0..k).map(|r| order[(st + r) % n]).collect();
            w.sort();
            w
        })
        .collect();
    for w in &windows {
        if !edges.contains(w) {
            return false;
        }
    }
    for a in 0..windows.len() {
        for b in a + 1..windows.len() {
            if windows[a] == windows[b] {
                return false;
            }
        }
    }
    let pairs = match kind {
        TraversalKind::Cycle => windows.len(),
        TraversalKind::Path => windows.len() - 1,
    };
    for q in 0..pairs {
        let a = &windows[q];
        let b = &windows[(q + 1) % windows.len()];
        let shared = a.iter().filter(|v| b.contains(v)).count();
        if shared != ell {
            return false;
        }
    }
    true
}

/// Tries all n! orders. Only for n <= 8.
pub fn brute_force_exists(h: &Hypergraph, ell: usize, kind: TraversalKind) -> bool {
    let n = h.n();
    assert!(n <= 8);
    let edges = edge_lists(h);
    let mut order: Vec<usize> = (0..n).collect();
    permute(&mut order, 0, &mut |o| {
        naive_verify(n, h.k(), &edges, o, ell, kind)
    })
}

fn permute(order: &mut Vec<usize>, at: usize, check: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if at == order.len() {
        return check(order);
    }
    for i in at..order.len() {
        order.swap(at, i);
        if permute(order, at + 1, check) {
            order.swap(at, i);
            return true;
        }
        order.swap(at, i);
    }
    false
}

/// Perfect matching by trying every edge subset order on tiny graphs.
pub fn brute_force_matching(h: &Hypergraph) -> bool {
    fn go(edges: &[Vec<usize>], covered: &mut Vec<bool>) -> bool {
        let Some(v) = covered.iter().position(|c| !c) else {
            return true;
        };
        for e in edges {
            if e.contains(&v) && e.iter().all(|&u| !covered[u]) {
                for &u in e {
                    covered[u] = true;
                }
                let ok = go(edges, covered);
                for &u in e {
                    covered[u] = false;
                }
                if ok {
                    return true;
                }
            }
        }
        false
    }
    go(&edge_lists(h), &mut vec![false; h.n()])
}
