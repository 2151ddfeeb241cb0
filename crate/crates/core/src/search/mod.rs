//! Exact decision procedures for Hamilton ℓ-cycles, Hamilton ℓ-paths and
//! perfect matchings.
//!
//! Every `Found` carries a certificate that is re-checked before it is
//! returned. `NotFound` is only reported after the complete search space has
//! been exhausted; running out of nodes or time is reported as `Budget`.

mod matching;
mod sequence;

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{is_permutation, Hypergraph, VertexSet};

pub use matching::find_perfect_matching;
pub use sequence::{find_hamilton_ell_cycle, find_hamilton_ell_path};

pub const DEFAULT_STATE_BUDGET: u64 = 1 << 27;
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("overlap ell = {ell} must satisfy 1 <= ell <= k - 1 = {}", k - 1)]
    BadOverlap { ell: usize, k: usize },
    #[error("{0}")]
    Divisibility(String),
    #[error("n = {n} is too small: an {ell}-cycle of {k}-sets needs n >= {min}")]
    TooSmall {
        n: usize,
        k: usize,
        ell: usize,
        min: usize,
    },
    #[error("the DP engine packs at most 10 suffix vertices; k = {k} needs {need}")]
    EngineUnavailable { k: usize, need: usize },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    /// Memoised search when the state key fits in a word, backtracking otherwise.
    #[default]
    Auto,
    Dp,
    Backtrack,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub engine: Engine,
    /// Cap on memoised dead states, shared out evenly across top-level branches.
    pub state_budget: u64,
    /// Cap on expanded search nodes; exceeding it yields `Budget`.
    pub node_budget: u64,
    pub timeout: Option<Duration>,
    /// Worker threads; `None` uses the ambient rayon pool.
    pub threads: Option<usize>,
    /// Explores vertices in a seeded random relabelling. Never changes the outcome.
    pub seed: Option<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            engine: Engine::Auto,
            state_budget: DEFAULT_STATE_BUDGET,
            node_budget: DEFAULT_NODE_BUDGET,
            timeout: None,
            threads: None,
            seed: None,
        }
    }
}

impl SearchConfig {
    pub(crate) fn deadline(&self, start: Instant) -> Option<Instant> {
        self.timeout.map(|t| start + t)
    }

    pub(crate) fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match self.threads {
            Some(t) => rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .expect("thread pool")
                .install(f),
            None => f(),
        }
    }

    /// A relabelling `perm` (old -> new) drawn from the seed, if any.
    pub(crate) fn permutation(&self, n: usize) -> Option<Vec<usize>> {
        let seed = self.seed?;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        Some(perm)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraversalKind {
    Cycle,
    Path,
}

/// A vertex ordering whose consecutive k-windows form the cycle or path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCertificate {
    pub order: Vec<usize>,
    pub ell: usize,
    pub kind: TraversalKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingCertificate {
    pub edges: Vec<VertexSet>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetReason {
    Nodes,
    Timeout,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum SearchResult<C> {
    Found(C),
    NotFound,
    Budget(BudgetReason),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub dp_states: u64,
    /// Top-level branches searched.
    pub branches: u64,
    pub memoised: bool,
    /// Wall time; kept out of JSON so reports stay byte-deterministic.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome<C> {
    #[serde(flatten)]
    pub result: SearchResult<C>,
    pub stats: SearchStats,
}

impl<C> SearchOutcome<C> {
    pub fn is_found(&self) -> bool {
        matches!(self.result, SearchResult::Found(_))
    }

    pub fn is_not_found(&self) -> bool {
        matches!(self.result, SearchResult::NotFound)
    }

    pub fn is_budget(&self) -> bool {
        matches!(self.result, SearchResult::Budget(_))
    }

    pub fn certificate(&self) -> Option<&C> {
        match &self.result {
            SearchResult::Found(c) => Some(c),
            _ => None,
        }
    }

    /// `found`, `not_found` or `budget`.
    pub fn status(&self) -> &'static str {
        match self.result {
            SearchResult::Found(_) => "found",
            SearchResult::NotFound => "not_found",
            SearchResult::Budget(_) => "budget",
        }
    }
}

/// The k-windows of an ordering: starts `0, s, 2s, ..` with `s = k - ℓ`,
/// wrapping around for cycles. `None` if `n` does not admit the layout.
pub fn certificate_windows(
    order: &[usize],
    k: usize,
    ell: usize,
    kind: TraversalKind,
) -> Option<Vec<VertexSet>> {
    let n = order.len();
    if ell == 0 || ell >= k || k > n || order.iter().any(|&v| v >= 64) {
        return None;
    }
    let s = k - ell;
    let count = match kind {
        TraversalKind::Cycle if n.is_multiple_of(s) => n / s,
        TraversalKind::Path if (n - k).is_multiple_of(s) => (n - k) / s + 1,
        _ => return None,
    };
    Some(
        (0..count)
            .map(|q| {
                let bits = (0..k).fold(0u64, |acc, r| acc | 1 << order[(q * s + r) % n]);
                VertexSet::from_bits(bits)
            })
            .collect(),
    )
}

/// Whether `cert` is a spanning ℓ-cycle (or ℓ-path) of `h`: the order is a
/// permutation, every window is an edge, windows are pairwise distinct and
/// consecutive windows share exactly ℓ vertices.
pub fn verify_certificate(h: &Hypergraph, cert: &CycleCertificate) -> bool {
    let n = h.n();
    if !is_permutation(&cert.order, n) {
        return false;
    }
    let Some(windows) = certificate_windows(&cert.order, h.k(), cert.ell, cert.kind) else {
        return false;
    };
    if !windows.iter().all(|w| h.contains_edge(*w)) {
        return false;
    }
    let mut sorted = windows.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        return false;
    }
    let consecutive =
        windows.len().saturating_sub(1) + usize::from(cert.kind == TraversalKind::Cycle);
    (0..consecutive).all(|q| {
        let (a, b) = (windows[q], windows[(q + 1) % windows.len()]);
        a.intersection(b).len() == cert.ell
    })
}

pub fn verify_matching(h: &Hypergraph, cert: &MatchingCertificate) -> bool {
    let mut covered = VertexSet::EMPTY;
    for e in &cert.edges {
        if !h.contains_edge(*e) || !covered.intersection(*e).is_empty() {
            return false;
        }
        covered = covered.union(*e);
    }
    covered == h.vertices()
}

/// Number of windows containing each vertex.
pub fn window_coverage(cert: &CycleCertificate, k: usize) -> Option<Vec<usize>> {
    let windows = certificate_windows(&cert.order, k, cert.ell, cert.kind)?;
    let mut counts = vec![0usize; cert.order.len()];
    for w in windows {
        for v in w.iter() {
            counts[v] += 1;
        }
    }
    Some(counts)
}

pub(crate) fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (old, &new) in perm.iter().enumerate() {
        inv[new] = old;
    }
    inv
}
