//! Immutable k-uniform hypergraphs on at most 64 vertices.
//!
//! Edges and vertex sets are single `u64` bitsets. Edges are kept sorted by
//! their integer encoding, which makes equality canonical and iteration
//! deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::binom::{binomial_u64, pascal_table};
use crate::rational::json_biguint;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// Above this many d-sets `min_d_degree` stops building a dense count table.
const DENSE_COUNT_LIMIT: u64 = 1 << 26;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("{n} vertices exceeds the capacity of {MAX_VERTICES}")]
    CapacityExceeded { n: usize },
    #[error("uniformity k = {k} must satisfy 2 <= k <= n = {n}")]
    BadUniformity { n: usize, k: usize },
    #[error("edge {edge:?} has {distinct} distinct vertices, expected {k}")]
    NotKSubset {
        edge: Vec<usize>,
        distinct: usize,
        k: usize,
    },
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("query set has {size} vertices but edges only have k = {k}")]
    QueryTooLarge { size: usize, k: usize },
    #[error("d = {d} must satisfy 1 <= d < k = {k}")]
    DegreeOutOfRange { d: usize, k: usize },
    #[error("not a permutation of 0..{n}")]
    BadPermutation { n: usize },
}

/// A set of vertices in `[0, 64)`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// `{0, 1, .., len - 1}`.
    pub fn prefix(len: usize) -> Self {
        assert!(len <= MAX_VERTICES);
        VertexSet(low_mask(len))
    }

    /// `{start, .., end - 1}`.
    pub fn range(start: usize, end: usize) -> Self {
        VertexSet(low_mask(end) & !low_mask(start))
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(
        vertices: I,
    ) -> Result<Self, HypergraphError> {
        let mut bits = 0u64;
        for v in vertices {
            if v >= MAX_VERTICES {
                return Err(HypergraphError::VertexOutOfRange {
                    vertex: v,
                    n: MAX_VERTICES,
                });
            }
            bits |= 1 << v;
        }
        Ok(VertexSet(bits))
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub const fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub const fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    /// Whether every member is below `n`.
    pub const fn within(self, n: usize) -> bool {
        self.0 & !low_mask(n) == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

pub(crate) const fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// All `size`-subsets of `[0, n)` as bitmasks in colex (increasing integer) order.
pub fn subsets(n: usize, size: usize) -> impl Iterator<Item = VertexSet> {
    assert!(n <= MAX_VERTICES);
    let mut next: Option<u128> = if size > n {
        None
    } else {
        Some((1u128 << size) - 1)
    };
    let limit = 1u128 << n;
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let low = cur & cur.wrapping_neg();
            let ripple = cur + low;
            let succ = (((ripple ^ cur) >> 2) / low) | ripple;
            (succ < limit).then_some(succ)
        };
        Some(VertexSet(cur as u64))
    })
}

/// Minimum d-degree with a witness set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub d: usize,
    #[serde(with = "json_biguint")]
    pub min_degree: BigUint,
    /// A d-set attaining `min_degree`, ascending.
    pub witness: Vec<usize>,
    /// Degree per class label (e.g. `|S ∩ X|`), when the classes are known.
    #[serde(serialize_with = "serialize_classes")]
    pub by_class: Option<BTreeMap<usize, BigUint>>,
}

fn serialize_classes<S: serde::Serializer>(
    classes: &Option<BTreeMap<usize, BigUint>>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match classes {
        None => s.serialize_none(),
        Some(map) => s.collect_map(
            map.iter()
                .map(|(i, v)| (i.to_string(), crate::rational::JsonBigUint(v.clone()))),
        ),
    }
}

/// Smallest and largest brute-force degree among d-sets in one class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassDegrees {
    pub min: u64,
    pub max: u64,
    pub count: u64,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<VertexSet>,
}

impl Hypergraph {
    /// Builds a hypergraph from explicit vertex lists. Duplicate edges collapse.
    pub fn new<I, E>(n: usize, k: usize, edges: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        check_shape(n, k)?;
        let mut sets = Vec::new();
        for edge in edges {
            let edge = edge.as_ref();
            let mut bits = 0u64;
            for &v in edge {
                if v >= n {
                    return Err(HypergraphError::VertexOutOfRange { vertex: v, n });
                }
                bits |= 1 << v;
            }
            let distinct = bits.count_ones() as usize;
            if distinct != k || edge.len() != k {
                return Err(HypergraphError::NotKSubset {
                    edge: edge.to_vec(),
                    distinct,
                    k,
                });
            }
            sets.push(VertexSet(bits));
        }
        Ok(Self::from_sorted(n, k, sets))
    }

    pub fn from_edge_sets<I>(n: usize, k: usize, edges: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = VertexSet>,
    {
        check_shape(n, k)?;
        let mut sets = Vec::new();
        for e in edges {
            if !e.within(n) {
                let vertex = e.iter().last().unwrap_or(0);
                return Err(HypergraphError::VertexOutOfRange { vertex, n });
            }
            if e.len() != k {
                return Err(HypergraphError::NotKSubset {
                    edge: e.to_vec(),
                    distinct: e.len(),
                    k,
                });
            }
            sets.push(e);
        }
        Ok(Self::from_sorted(n, k, sets))
    }

    fn from_sorted(n: usize, k: usize, mut edges: Vec<VertexSet>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Hypergraph { n, k, edges }
    }

    /// The complete k-graph on `n` vertices.
    pub fn complete(n: usize, k: usize) -> Result<Self, HypergraphError> {
        check_shape(n, k)?;
        Ok(Hypergraph {
            n,
            k,
            edges: subsets(n, k).collect(),
        })
    }

    /// Keeps the k-subsets of `[0, n)` accepted by `keep`, in colex order.
    pub fn from_predicate<F>(n: usize, k: usize, mut keep: F) -> Result<Self, HypergraphError>
    where
        F: FnMut(VertexSet) -> bool,
    {
        check_shape(n, k)?;
        Ok(Hypergraph {
            n,
            k,
            edges: subsets(n, k).filter(|&e| keep(e)).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::prefix(self.n)
    }

    pub fn contains_edge(&self, e: VertexSet) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn is_complete(&self) -> bool {
        binomial_u64(self.n as u64, self.k as u64) == Some(self.edges.len() as u64)
    }

    /// Number of edges containing `s`.
    pub fn degree(&self, s: VertexSet) -> Result<u64, HypergraphError> {
        if s.len() > self.k {
            return Err(HypergraphError::QueryTooLarge {
                size: s.len(),
                k: self.k,
            });
        }
        if !s.within(self.n) {
            let vertex = s.iter().last().unwrap_or(0);
            return Err(HypergraphError::VertexOutOfRange { vertex, n: self.n });
        }
        Ok(self.edges.iter().filter(|e| s.is_subset(**e)).count() as u64)
    }

    /// Exhaustive minimum d-degree. The witness is the first minimiser in colex order.
    pub fn min_d_degree(&self, d: usize) -> Result<DegreeProfile, HypergraphError> {
        self.check_d(d)?;
        let mut best: Option<(u64, VertexSet)> = None;
        self.for_each_d_set_degree(d, |s, deg| {
            if best.is_none_or(|(b, _)| deg < b) {
                best = Some((deg, s));
            }
        });
        let (min, witness) = best.expect("1 <= d < k <= n gives at least one d-set");
        Ok(DegreeProfile {
            d,
            min_degree: BigUint::from(min),
            witness: witness.to_vec(),
            by_class: None,
        })
    }

    /// Brute-force degrees of all d-sets grouped by `|S ∩ split|`.
    pub fn degree_classes(
        &self,
        d: usize,
        split: VertexSet,
    ) -> Result<BTreeMap<usize, ClassDegrees>, HypergraphError> {
        self.check_d(d)?;
        let mut classes: BTreeMap<usize, ClassDegrees> = BTreeMap::new();
        self.for_each_d_set_degree(d, |s, deg| {
            let class = s.intersection(split).len();
            classes
                .entry(class)
                .and_modify(|c| {
                    c.min = c.min.min(deg);
                    c.max = c.max.max(deg);
                    c.count += 1;
                })
                .or_insert(ClassDegrees {
                    min: deg,
                    max: deg,
                    count: 1,
                });
        });
        Ok(classes)
    }

    fn check_d(&self, d: usize) -> Result<(), HypergraphError> {
        if d == 0 || d >= self.k {
            return Err(HypergraphError::DegreeOutOfRange { d, k: self.k });
        }
        Ok(())
    }

    // Visits every d-set in colex order together with its degree.
    fn for_each_d_set_degree<F: FnMut(VertexSet, u64)>(&self, d: usize, mut visit: F) {
        let total = binomial_u64(self.n as u64, d as u64).unwrap_or(u64::MAX);
        if total > DENSE_COUNT_LIMIT {
            for s in subsets(self.n, d) {
                let deg = self.edges.iter().filter(|e| s.is_subset(**e)).count() as u64;
                visit(s, deg);
            }
            return;
        }

        // Accumulate into a table indexed by colex rank: rank(S) = sum_i C(s_i, i + 1).
        let pascal = pascal_table();
        let mut counts = vec![0u64; total as usize];
        let mut members = [0usize; MAX_VERTICES];
        for e in &self.edges {
            for (slot, v) in members.iter_mut().zip(e.iter()) {
                *slot = v;
            }
            for pick in subsets(self.k, d) {
                let rank: u64 = pick
                    .iter()
                    .enumerate()
                    .map(|(i, pos)| pascal[members[pos]][i + 1])
                    .sum();
                counts[rank as usize] += 1;
            }
        }
        for (s, deg) in subsets(self.n, d).zip(counts) {
            visit(s, deg);
        }
    }

    /// The image of this hypergraph under `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Hypergraph, HypergraphError> {
        if !is_permutation(perm, self.n) {
            return Err(HypergraphError::BadPermutation { n: self.n });
        }
        let edges = self
            .edges
            .iter()
            .map(|e| VertexSet(e.iter().fold(0u64, |acc, v| acc | 1 << perm[v])))
            .collect();
        Ok(Self::from_sorted(self.n, self.k, edges))
    }

    /// The same hypergraph with `extra` edges added.
    pub fn with_edges<I>(&self, extra: I) -> Result<Hypergraph, HypergraphError>
    where
        I: IntoIterator<Item = VertexSet>,
    {
        Self::from_edge_sets(self.n, self.k, self.edges.iter().copied().chain(extra))
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("edges", &self.edges.len())
            .finish()
    }
}

fn check_shape(n: usize, k: usize) -> Result<(), HypergraphError> {
    if n > MAX_VERTICES {
        return Err(HypergraphError::CapacityExceeded { n });
    }
    if k < 2 || k > n {
        return Err(HypergraphError::BadUniformity { n, k });
    }
    Ok(())
}

pub(crate) fn is_permutation(perm: &[usize], n: usize) -> bool {
    if perm.len() != n || n > MAX_VERTICES {
        return false;
    }
    let mut seen = 0u64;
    for &v in perm {
        if v >= n || seen >> v & 1 == 1 {
            return false;
        }
        seen |= 1 << v;
    }
    true
}
