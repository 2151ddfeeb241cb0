//! Hamilton ℓ-cycle and ℓ-path search.
//!
//! Vertices are placed one position at a time. Position `p` closes the
//! window starting at `p + 1 - k` whenever that start is a multiple of
//! `s = k - ℓ`, so the candidates there are read off the link of the `k - 1`
//! already placed window members.
//!
//! Positions split into atoms at every `p ≡ 0` and `p ≡ ℓ (mod s)`. All
//! positions of an atom lie in exactly the same windows, so members of an
//! atom are placed in increasing order. For cycles vertex 0 is rotated into
//! the first block `[0, s)`, and for tight cycles the reflection is removed by
//! requiring `order[1] < order[n-1]`. Paths drop the reflection by comparing
//! the least members of the first and last atoms.
//!
//! The state after placing `p` vertices is the used set plus the ordered
//! members of the oldest still-open window, so failed states are memoised.
//! Closing windows of a cycle also read the first `ℓ` positions; the search is
//! therefore split into independent runs, one per admissible prefix, each with
//! its own table. Runs execute in fixed-size chunks in parallel and are
//! merged in prefix order, which keeps outcomes, certificates and statistics
//! independent of the worker count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};

use super::{
    invert, verify_certificate, BudgetReason, CycleCertificate, Engine, SearchConfig, SearchError,
    SearchOutcome, SearchResult, SearchStats, TraversalKind,
};
use crate::hypergraph::{low_mask, Hypergraph};

const CHUNK: usize = 64;
const PACK_BITS: usize = 6;
const MAX_PACKED: usize = 64 / PACK_BITS;

/// Searches for a Hamilton ℓ-cycle. Requires `(k - ℓ) | n` and `n >= 2k - ℓ`.
pub fn find_hamilton_ell_cycle(
    h: &Hypergraph,
    ell: usize,
    config: &SearchConfig,
) -> Result<SearchOutcome<CycleCertificate>, SearchError> {
    let (n, k) = (h.n(), h.k());
    check_overlap(ell, k)?;
    let s = k - ell;
    if n % s != 0 {
        return Err(SearchError::Divisibility(format!(
            "a Hamilton {ell}-cycle needs k - ell = {s} to divide n = {n}"
        )));
    }
    if n < k + s {
        return Err(SearchError::TooSmall {
            n,
            k,
            ell,
            min: k + s,
        });
    }
    search(h, Layout::new(n, k, ell, TraversalKind::Cycle), config)
}

/// Searches for a Hamilton ℓ-path. Requires `n ≡ k (mod k - ℓ)`.
pub fn find_hamilton_ell_path(
    h: &Hypergraph,
    ell: usize,
    config: &SearchConfig,
) -> Result<SearchOutcome<CycleCertificate>, SearchError> {
    let (n, k) = (h.n(), h.k());
    check_overlap(ell, k)?;
    let s = k - ell;
    if (n - k) % s != 0 {
        return Err(SearchError::Divisibility(format!(
            "a Hamilton {ell}-path needs n = {n} congruent to k = {k} modulo {s}"
        )));
    }
    search(h, Layout::new(n, k, ell, TraversalKind::Path), config)
}

fn check_overlap(ell: usize, k: usize) -> Result<(), SearchError> {
    if ell == 0 || ell >= k {
        return Err(SearchError::BadOverlap { ell, k });
    }
    Ok(())
}

#[derive(Clone, Debug)]
struct Layout {
    n: usize,
    k: usize,
    ell: usize,
    s: usize,
    kind: TraversalKind,
    /// tight-cycle reflection: order[1] < order[n - 1]
    reflect_cycle: bool,
    /// path reflection: order[0] < order[last_atom]
    path_last_atom: Option<usize>,
    prefix_len: usize,
}

impl Layout {
    fn new(n: usize, k: usize, ell: usize, kind: TraversalKind) -> Self {
        let s = k - ell;
        let mut layout = Layout {
            n,
            k,
            ell,
            s,
            kind,
            reflect_cycle: false,
            path_last_atom: None,
            prefix_len: 0,
        };
        match kind {
            TraversalKind::Cycle => {
                layout.reflect_cycle = s == 1;
                layout.prefix_len = if s == 1 { ell.max(2) } else { ell };
            }
            TraversalKind::Path => {
                let last = (1..n).rev().find(|&p| layout.atom_start(p));
                layout.path_last_atom = last;
                layout.prefix_len = 1;
            }
        }
        layout
    }

    fn atom_start(&self, p: usize) -> bool {
        let r = p % self.s;
        r == 0 || r == self.ell % self.s
    }

    fn closes_window(&self, p: usize) -> bool {
        p + 1 >= self.k && (p + 1 - self.k).is_multiple_of(self.s)
    }

    /// First position of the oldest window still open after `p` placements.
    fn open_start(&self, p: usize) -> usize {
        (p + 1).saturating_sub(self.k).div_ceil(self.s) * self.s
    }

    /// Windows that wrap past the end of a cycle, checked once all positions are placed.
    fn wrap_starts(&self) -> impl Iterator<Item = usize> + '_ {
        let first = (self.n + 1).saturating_sub(self.k).div_ceil(self.s) * self.s;
        (first..self.n).step_by(self.s)
    }
}

struct Index<'a> {
    graph: &'a Hypergraph,
    /// (k-1)-set -> vertices completing it to an edge
    link: FxHashMap<u64, u64>,
}

impl<'a> Index<'a> {
    fn new(graph: &'a Hypergraph) -> Self {
        let mut link: FxHashMap<u64, u64> = FxHashMap::default();
        for e in graph.edges() {
            for v in e.iter() {
                *link.entry(e.bits() & !(1 << v)).or_default() |= 1 << v;
            }
        }
        Index { graph, link }
    }
}

enum Stop {
    Budget(BudgetReason),
    Cancelled,
}

struct Run<'a> {
    layout: &'a Layout,
    index: &'a Index<'a>,
    order: Vec<usize>,
    used: u64,
    memo: Option<FxHashSet<u128>>,
    memo_cap: usize,
    nodes: u64,
    node_limit: u64,
    deadline: Option<Instant>,
    cancel: &'a AtomicUsize,
    run_index: usize,
}

impl Run<'_> {
    fn candidates(&self, p: usize) -> u64 {
        let l = self.layout;
        let mut cand = low_mask(l.n) & !self.used;
        if l.closes_window(p) {
            let partial = self.order[p + 1 - l.k..p]
                .iter()
                .fold(0u64, |acc, &v| acc | 1 << v);
            cand &= self.index.link.get(&partial).copied().unwrap_or(0);
        }
        if p > 0 && !l.atom_start(p) {
            cand &= !low_mask(self.order[p - 1] + 1);
        }
        if l.kind == TraversalKind::Cycle && p == l.s - 1 && self.used & 1 == 0 {
            cand &= 1;
        }
        if l.reflect_cycle && p == l.n - 1 {
            cand &= !low_mask(self.order[1] + 1);
        }
        if l.path_last_atom == Some(p) {
            cand &= !low_mask(self.order[0] + 1);
        }
        cand
    }

    fn closes_cycle(&self) -> bool {
        let l = self.layout;
        if l.kind == TraversalKind::Path {
            return true;
        }
        l.wrap_starts().all(|start| {
            let bits = (start..start + l.k).fold(0u64, |acc, p| acc | 1 << self.order[p % l.n]);
            self.index
                .graph
                .contains_edge(crate::hypergraph::VertexSet::from_bits(bits))
        })
    }

    fn key(&self, p: usize) -> u128 {
        let start = self.layout.open_start(p);
        let packed = self.order[start..p]
            .iter()
            .fold(0u64, |acc, &v| acc << PACK_BITS | v as u64);
        (packed as u128) << 64 | self.used as u128
    }

    fn tick(&mut self) -> Result<(), Stop> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Stop::Budget(BudgetReason::Nodes));
        }
        if self.nodes & 0x3ff == 0 {
            if self.cancel.load(Ordering::Relaxed) < self.run_index {
                return Err(Stop::Cancelled);
            }
            if self.deadline.is_some_and(|d| Instant::now() >= d) {
                return Err(Stop::Budget(BudgetReason::Timeout));
            }
        }
        Ok(())
    }

    fn dfs(&mut self) -> Result<bool, Stop> {
        self.tick()?;
        let p = self.order.len();
        if p == self.layout.n {
            return Ok(self.closes_cycle());
        }
        let key = match self.memo {
            Some(ref memo) => {
                let key = self.key(p);
                if memo.contains(&key) {
                    return Ok(false);
                }
                Some(key)
            }
            None => None,
        };
        let mut cand = self.candidates(p);
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.order.push(v);
            self.used |= 1 << v;
            let found = self.dfs()?;
            if found {
                return Ok(true);
            }
            self.order.pop();
            self.used &= !(1 << v);
        }
        if let (Some(key), Some(memo)) = (key, self.memo.as_mut()) {
            if memo.len() < self.memo_cap {
                memo.insert(key);
            }
        }
        Ok(false)
    }

    // Plain enumeration of the admissible prefixes of length `len`.
    fn prefixes(&mut self, len: usize, out: &mut Vec<Vec<usize>>) {
        let p = self.order.len();
        if p == len {
            out.push(self.order.clone());
            return;
        }
        let mut cand = self.candidates(p);
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.order.push(v);
            self.used |= 1 << v;
            self.prefixes(len, out);
            self.order.pop();
            self.used &= !(1 << v);
        }
    }
}

enum RunResult {
    Found(Vec<usize>),
    NotFound,
    Stopped(Stop),
}

fn search(
    h: &Hypergraph,
    layout: Layout,
    config: &SearchConfig,
) -> Result<SearchOutcome<CycleCertificate>, SearchError> {
    let start = Instant::now();
    let memoise = match config.engine {
        Engine::Backtrack => false,
        Engine::Auto => layout.k - 1 <= MAX_PACKED,
        Engine::Dp => {
            if layout.k - 1 > MAX_PACKED {
                return Err(SearchError::EngineUnavailable {
                    k: layout.k,
                    need: layout.k - 1,
                });
            }
            true
        }
    };

    let perm = config.permutation(h.n());
    let relabelled;
    let graph = match &perm {
        Some(perm) => {
            relabelled = h.relabel(perm).expect("seeded permutation");
            &relabelled
        }
        None => h,
    };

    let index = Index::new(graph);
    let no_cancel = AtomicUsize::new(usize::MAX);
    let mut seed_run = Run {
        layout: &layout,
        index: &index,
        order: Vec::with_capacity(layout.n),
        used: 0,
        memo: None,
        memo_cap: 0,
        nodes: 0,
        node_limit: u64::MAX,
        deadline: None,
        cancel: &no_cancel,
        run_index: 0,
    };
    let mut prefixes = Vec::new();
    seed_run.prefixes(layout.prefix_len.min(layout.n), &mut prefixes);

    let memo_cap = (config.state_budget / prefixes.len().clamp(1, CHUNK) as u64) as usize;
    let deadline = config.deadline(start);
    let mut stats = SearchStats {
        branches: 0,
        memoised: memoise,
        ..SearchStats::default()
    };

    let outcome = config.install(|| {
        for (chunk_no, chunk) in prefixes.chunks(CHUNK).enumerate() {
            let remaining = config.node_budget.saturating_sub(stats.nodes);
            let found_at = AtomicUsize::new(usize::MAX);
            let results: Vec<(RunResult, u64, u64)> = chunk
                .par_iter()
                .enumerate()
                .map(|(i, prefix)| {
                    let mut run = Run {
                        layout: &layout,
                        index: &index,
                        order: prefix.clone(),
                        used: prefix.iter().fold(0u64, |acc, &v| acc | 1 << v),
                        memo: memoise.then(FxHashSet::default),
                        memo_cap,
                        nodes: 0,
                        node_limit: remaining,
                        deadline,
                        cancel: &found_at,
                        run_index: i,
                    };
                    run.order.reserve(layout.n);
                    let result = match run.dfs() {
                        Ok(true) => {
                            found_at.fetch_min(i, Ordering::Relaxed);
                            RunResult::Found(run.order)
                        }
                        Ok(false) => RunResult::NotFound,
                        Err(stop) => RunResult::Stopped(stop),
                    };
                    let states = run.memo.as_ref().map_or(0, |m| m.len() as u64);
                    (result, run.nodes, states)
                })
                .collect();

            for (result, nodes, states) in results {
                stats.branches += 1;
                stats.nodes += nodes;
                stats.dp_states += states;
                match result {
                    RunResult::Found(order) => return SearchResult::Found(order),
                    RunResult::NotFound => {}
                    RunResult::Stopped(Stop::Budget(reason)) => {
                        return SearchResult::Budget(reason)
                    }
                    RunResult::Stopped(Stop::Cancelled) => {
                        unreachable!("only runs after a found one are cancelled (chunk {chunk_no})")
                    }
                }
            }
            if stats.nodes > config.node_budget {
                return SearchResult::Budget(BudgetReason::Nodes);
            }
        }
        SearchResult::NotFound
    });

    let result = match outcome {
        SearchResult::Found(order) => {
            let order = match &perm {
                Some(perm) => {
                    let inv = invert(perm);
                    order.iter().map(|&v| inv[v]).collect()
                }
                None => order,
            };
            let cert = CycleCertificate {
                order,
                ell: layout.ell,
                kind: layout.kind,
            };
            assert!(
                verify_certificate(h, &cert),
                "search produced an invalid certificate"
            );
            SearchResult::Found(cert)
        }
        SearchResult::NotFound => SearchResult::NotFound,
        SearchResult::Budget(r) => SearchResult::Budget(r),
    };
    stats.elapsed = start.elapsed();
    Ok(SearchOutcome { result, stats })
}
