//! Two-part extremal hypergraphs and their exact degree profiles.
//!
//! Vertices split as `X = {0, .., x_size - 1}` and `Y = V \ X`. The general
//! construction keeps every k-set whose intersection with `X` avoids the
//! forbidden window `F = {j, .., j + k - ℓ - 1}`. When
//! `(j-1)/(a'(k-ℓ)) · n < |X| < (j+k-ℓ)/(a(k-ℓ)) · n` it has no Hamilton
//! ℓ-cycle.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::binom::{binomial, binomial_signed};
use crate::bounds::{a_lower, a_upper};
use crate::hypergraph::{DegreeProfile, Hypergraph, HypergraphError, VertexSet, MAX_VERTICES};
use crate::rational::{self, from_int, ratio, Rational};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("d = {d} must satisfy 1 <= d < k = {k}")]
    DegreeOutOfRange { d: usize, k: usize },
    #[error("t must be at least 1")]
    ZeroT,
    #[error("x = {0} must lie strictly between 0 and 1")]
    XOutOfRange(String),
    #[error("no j in [1, {k}-1] has (j-1)/{k} < {x} < (j+1)/{k}")]
    NoValidJ { k: usize, x: String },
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// Parameters of the two-part construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Deserialize)]
pub struct ExtremalSpec {
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub j: i64,
    pub x_size: usize,
}

impl ExtremalSpec {
    pub fn new(
        n: usize,
        k: usize,
        ell: usize,
        j: i64,
        x_size: usize,
    ) -> Result<Self, ConstructionError> {
        let spec = ExtremalSpec {
            n,
            k,
            ell,
            j,
            x_size,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), ConstructionError> {
        let &ExtremalSpec {
            n,
            k,
            ell,
            j,
            x_size,
        } = self;
        let bad = |msg: String| Err(ConstructionError::InvalidSpec(msg));
        if k < 2 || k > n {
            return bad(format!("need 2 <= k <= n (n = {n}, k = {k})"));
        }
        if ell == 0 || ell >= k {
            return bad(format!("need 1 <= ell <= k - 1 (k = {k}, ell = {ell})"));
        }
        let j_min = ell as i64 + 1 - k as i64;
        if j < j_min || j > k as i64 {
            return bad(format!("need {j_min} <= j <= {k}, got j = {j}"));
        }
        if x_size > n {
            return bad(format!("x_size = {x_size} exceeds n = {n}"));
        }
        Ok(())
    }

    /// `k - ℓ`
    pub fn step(&self) -> usize {
        self.k - self.ell
    }

    /// `⌈k/(k-ℓ)⌉`
    pub fn a(&self) -> usize {
        a_upper(self.k, self.ell)
    }

    /// `⌊k/(k-ℓ)⌋`
    pub fn a_prime(&self) -> usize {
        a_lower(self.k, self.ell)
    }

    /// Forbidden intersection sizes, clipped to the reachable range `[0, k]`.
    pub fn forbidden(&self) -> Vec<usize> {
        let hi = self.j + self.step() as i64 - 1;
        (self.j.max(0)..=hi.min(self.k as i64))
            .map(|m| m as usize)
            .collect()
    }

    fn forbidden_mask(&self) -> u64 {
        self.forbidden().iter().fold(0, |acc, &m| acc | 1 << m)
    }

    pub fn window_bounds(&self) -> (Rational, Rational) {
        window_bounds(self.k, self.ell, self.j)
    }

    /// `lo · n < x_size < hi · n`, compared exactly.
    pub fn in_window(&self) -> bool {
        let (lo, hi) = self.window_bounds();
        let x = ratio(self.x_size as i64, self.n as i64);
        lo < x && x < hi
    }

    pub fn y_size(&self) -> usize {
        self.n - self.x_size
    }

    /// `X` as a vertex set; requires `n <= 64`.
    pub fn split(&self) -> VertexSet {
        VertexSet::prefix(self.x_size)
    }

    /// Whether a k-set with `m` vertices in `X` is an edge.
    pub fn keeps(&self, m: usize) -> bool {
        self.forbidden_mask() >> m & 1 == 0
    }

    /// Edge count by intersection class, valid for any `n`.
    pub fn edge_count(&self) -> BigUint {
        let (x, y) = (self.x_size as u64, self.y_size() as u64);
        (0..=self.k)
            .filter(|&m| self.keeps(m))
            .map(|m| binomial(x, m as i64) * binomial(y, (self.k - m) as i64))
            .sum()
    }

    pub fn summary(&self) -> SpecSummary {
        let (lo, hi) = self.window_bounds();
        SpecSummary {
            n: self.n,
            k: self.k,
            ell: self.ell,
            j: self.j,
            x_size: self.x_size,
            a: self.a(),
            a_prime: self.a_prime(),
            window_lo: lo,
            window_hi: hi,
            in_window: self.in_window(),
            forbidden: self.forbidden(),
        }
    }
}

impl Serialize for ExtremalSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.summary().serialize(s)
    }
}

/// JSON view of a spec with its derived, read-only fields.
#[derive(Clone, Debug, Serialize)]
pub struct SpecSummary {
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub j: i64,
    pub x_size: usize,
    pub a: usize,
    pub a_prime: usize,
    #[serde(with = "rational::json")]
    pub window_lo: Rational,
    #[serde(with = "rational::json")]
    pub window_hi: Rational,
    pub in_window: bool,
    pub forbidden: Vec<usize>,
}

/// `((j-1)/(a'(k-ℓ)), (j+k-ℓ)/(a(k-ℓ)))` as fractions of `n`.
pub fn window_bounds(k: usize, ell: usize, j: i64) -> (Rational, Rational) {
    let s = (k - ell) as i64;
    let a = a_upper(k, ell) as i64;
    let a_prime = a_lower(k, ell) as i64;
    (ratio(j - 1, a_prime * s), ratio(j + s, a * s))
}

pub fn build_general(spec: &ExtremalSpec) -> Result<Hypergraph, ConstructionError> {
    spec.validate()?;
    if spec.n > MAX_VERTICES {
        return Err(HypergraphError::CapacityExceeded { n: spec.n }.into());
    }
    let split = spec.split();
    let keep = !spec.forbidden_mask();
    Ok(Hypergraph::from_predicate(spec.n, spec.k, |e| {
        keep >> e.intersection(split).len() & 1 == 1
    })?)
}

/// Every k-set meeting `X = {0, .., x_size - 1}`.
pub fn build_space_barrier(
    n: usize,
    k: usize,
    x_size: usize,
) -> Result<Hypergraph, ConstructionError> {
    if x_size > n {
        return Err(ConstructionError::InvalidSpec(format!(
            "x_size = {x_size} exceeds n = {n}"
        )));
    }
    if n > MAX_VERTICES {
        return Err(HypergraphError::CapacityExceeded { n }.into());
    }
    let split = VertexSet::prefix(x_size);
    Ok(Hypergraph::from_predicate(n, k, |e| {
        !e.intersection(split).is_empty()
    })?)
}

/// `⌈t/2⌉/(t+1)`, the part size maximising the tight-cycle bound.
pub fn optimal_x_tight(t: usize) -> Result<Rational, ConstructionError> {
    if t == 0 {
        return Err(ConstructionError::ZeroT);
    }
    Ok(ratio(t.div_ceil(2) as i64, (t + 1) as i64))
}

/// `⌊x · n⌋`
pub fn x_size_for(x: &Rational, n: usize) -> usize {
    let v = (x * from_int(n as i64)).floor().to_integer();
    usize::try_from(v).unwrap_or(0)
}

/// Smallest `j ∈ [1, k-1]` with `(j-1)/k < x < (j+1)/k`.
pub fn choose_j(k: usize, x: &Rational) -> Result<i64, ConstructionError> {
    if *x <= Rational::zero() || *x >= Rational::one() {
        return Err(ConstructionError::XOutOfRange(rational::display(x)));
    }
    (1..k as i64)
        .find(|&j| ratio(j - 1, k as i64) < *x && *x < ratio(j + 1, k as i64))
        .ok_or_else(|| ConstructionError::NoValidJ {
            k,
            x: rational::display(x),
        })
}

/// Exact minimum d-degree of [`build_general`] from the class formula
///
/// `deg(S_i) = C(n-d, t) - Σ_{m ∈ F} C(|X|-i, m-i) · C(|Y|-(d-i), t-(m-i))`
///
/// where `S_i` is any d-set with `i` vertices in `X` and `t = k - d`.
/// Works for any `n`, not only buildable ones.
pub fn exact_min_degree_formula(
    spec: &ExtremalSpec,
    d: usize,
) -> Result<DegreeProfile, ConstructionError> {
    spec.validate()?;
    if d == 0 || d >= spec.k {
        return Err(ConstructionError::DegreeOutOfRange { d, k: spec.k });
    }
    let t = (spec.k - d) as i64;
    let (x, y) = (spec.x_size as i64, spec.y_size() as i64);
    let total = binomial((spec.n - d) as u64, t);
    let forbidden = spec.forbidden();

    let mut by_class = BTreeMap::new();
    for i in 0..=d.min(spec.x_size) {
        if d - i > spec.y_size() {
            continue;
        }
        let i = i as i64;
        let missing: BigUint = forbidden
            .iter()
            .map(|&m| {
                let m = m as i64;
                binomial_signed(x - i, m - i) * binomial_signed(y - (d as i64 - i), t - (m - i))
            })
            .sum();
        by_class.insert(i as usize, &total - missing);
    }

    let (&best_i, min) = by_class
        .iter()
        .min_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(b.0)))
        .expect("some class is nonempty since d <= n");
    let witness = (0..best_i)
        .chain(spec.x_size..spec.x_size + (d - best_i))
        .collect();
    Ok(DegreeProfile {
        d,
        min_degree: min.clone(),
        witness,
        by_class: Some(by_class),
    })
}

/// `δ_d / C(n-d, k-d)` for a profile of an n-vertex k-graph.
pub fn degree_ratio(profile: &DegreeProfile, n: usize, k: usize) -> Rational {
    let den = binomial((n - profile.d) as u64, (k - profile.d) as i64);
    if den.is_zero() {
        return Rational::one();
    }
    Rational::new(BigInt::from(profile.min_degree.clone()), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize, k: usize, ell: usize, j: i64, x: usize) -> ExtremalSpec {
        ExtremalSpec::new(n, k, ell, j, x).unwrap()
    }

    #[test]
    fn validation() {
        assert!(ExtremalSpec::new(9, 3, 0, 1, 3).is_err());
        assert!(ExtremalSpec::new(9, 3, 3, 1, 3).is_err());
        assert!(ExtremalSpec::new(9, 3, 2, -1, 3).is_err());
        assert!(ExtremalSpec::new(9, 3, 2, 4, 3).is_err());
        assert!(ExtremalSpec::new(9, 3, 2, 1, 10).is_err());
        assert!(ExtremalSpec::new(2, 3, 2, 1, 0).is_err());
        assert!(ExtremalSpec::new(9, 3, 2, 0, 3).is_ok());
        assert!(ExtremalSpec::new(9, 3, 1, -1, 3).is_ok());
    }

    #[test]
    fn derived_fields() {
        let s = spec(9, 3, 2, 1, 3);
        assert_eq!((s.a(), s.a_prime()), (3, 3));
        assert_eq!(s.forbidden(), vec![1]);
        let s = spec(12, 4, 2, 1, 6);
        assert_eq!((s.a(), s.a_prime()), (2, 2));
        assert_eq!(s.forbidden(), vec![1, 2]);
        let s = spec(10, 5, 2, 4, 3);
        assert_eq!((s.a(), s.a_prime()), (2, 1));
        assert_eq!(s.forbidden(), vec![4, 5]);
        let s = spec(10, 5, 1, -3, 3);
        assert_eq!(s.forbidden(), vec![0]);
        for k in 2..12 {
            for ell in 1..k {
                let (a, ap, st) = (a_upper(k, ell), a_lower(k, ell), k - ell);
                assert!(ap <= a && a * st >= k && k >= ap * st);
            }
        }
    }

    #[test]
    fn build_examples() {
        let h = build_general(&spec(9, 3, 2, 1, 3)).unwrap();
        assert_eq!(h.edge_count(), 39);
        assert_eq!(spec(9, 3, 2, 1, 3).edge_count(), BigUint::from(39u32));
        let complete = Hypergraph::complete(6, 3).unwrap();
        assert_eq!(build_general(&spec(6, 3, 2, 1, 0)).unwrap(), complete);
        // F = {3} is unreachable with only two vertices in X
        assert_eq!(build_general(&spec(6, 3, 2, 3, 2)).unwrap(), complete);
        // j below ell + 1 - k is rejected rather than treated as inert
        assert!(ExtremalSpec::new(6, 3, 2, -1, 2).is_err());
        assert!(build_general(&ExtremalSpec {
            n: 70,
            k: 3,
            ell: 2,
            j: 1,
            x_size: 3
        })
        .is_err());
    }

    #[test]
    fn space_barrier_examples() {
        assert_eq!(build_space_barrier(6, 3, 1).unwrap().edge_count(), 10);
        assert_eq!(
            build_space_barrier(6, 3, 6).unwrap(),
            Hypergraph::complete(6, 3).unwrap()
        );
        assert_eq!(
            build_space_barrier(9, 3, 2).unwrap(),
            build_general(&spec(9, 3, 2, 0, 2)).unwrap()
        );
        assert!(build_space_barrier(6, 3, 7).is_err());
    }

    #[test]
    fn window_examples() {
        assert_eq!(window_bounds(3, 2, 1), (ratio(0, 1), ratio(2, 3)));
        assert_eq!(window_bounds(3, 2, 0), (ratio(-1, 3), ratio(1, 3)));
        assert_eq!(window_bounds(4, 3, 2), (ratio(1, 4), ratio(3, 4)));
        assert!(spec(9, 3, 2, 1, 3).in_window());
        assert!(!spec(9, 3, 2, 1, 0).in_window());
        assert!(!spec(9, 3, 2, 1, 6).in_window());
        assert!(!spec(9, 3, 2, 1, 7).in_window());
    }

    #[test]
    fn optimal_x_examples() {
        assert_eq!(optimal_x_tight(2).unwrap(), ratio(1, 3));
        assert_eq!(optimal_x_tight(1).unwrap(), ratio(1, 2));
        assert_eq!(optimal_x_tight(5).unwrap(), ratio(1, 2));
        assert_eq!(optimal_x_tight(0), Err(ConstructionError::ZeroT));
        assert_eq!(x_size_for(&ratio(1, 3), 10), 3);
    }

    #[test]
    fn choose_j_examples() {
        assert_eq!(choose_j(3, &ratio(1, 3)), Ok(1));
        assert_eq!(choose_j(4, &ratio(1, 3)), Ok(1));
        assert_eq!(choose_j(5, &ratio(1, 2)), Ok(2));
        assert!(choose_j(3, &Rational::one()).is_err());
        // k = 2: only j = 1 with 0 < x < 1, always valid
        assert_eq!(choose_j(2, &ratio(1, 2)), Ok(1));
    }

    #[test]
    fn formula_examples() {
        let p = exact_min_degree_formula(&spec(9, 3, 2, 1, 3), 1).unwrap();
        let classes = p.by_class.clone().unwrap();
        assert_eq!(classes[&0], BigUint::from(13u32));
        assert_eq!(classes[&1], BigUint::from(13u32));
        assert_eq!(p.min_degree, BigUint::from(13u32));

        let p = exact_min_degree_formula(&spec(9, 3, 2, 1, 0), 1).unwrap();
        assert_eq!(p.min_degree, BigUint::from(28u32));
        assert!(exact_min_degree_formula(&spec(9, 3, 2, 1, 3), 3).is_err());
    }

    #[test]
    fn formula_degree_of_y_vertex() {
        let s = spec(9, 3, 2, 1, 3);
        let h = build_general(&s).unwrap();
        let y_vertex = VertexSet::from_vertices([5]).unwrap();
        assert_eq!(h.degree(y_vertex).unwrap(), 13);
    }

    #[test]
    fn formula_witness_attains_minimum() {
        let s = spec(12, 4, 3, 2, 4);
        let h = build_general(&s).unwrap();
        for d in 1..4 {
            let p = exact_min_degree_formula(&s, d).unwrap();
            let w = VertexSet::from_vertices(p.witness.iter().copied()).unwrap();
            assert_eq!(w.len(), d);
            assert_eq!(BigUint::from(h.degree(w).unwrap()), p.min_degree);
        }
    }

    #[test]
    fn ratio_of_complete_is_one() {
        let p = exact_min_degree_formula(&spec(9, 3, 2, 1, 0), 1).unwrap();
        assert_eq!(degree_ratio(&p, 9, 3), Rational::one());
    }
}
