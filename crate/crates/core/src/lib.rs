//! Extremal k-uniform hypergraphs without Hamilton ℓ-cycles.
//!
//! The crate builds two-part hypergraphs whose edges avoid a window of
//! intersection sizes with a distinguished vertex set, decides Hamilton
//! ℓ-cycle, ℓ-path and perfect-matching existence exactly for small `n`, and
//! evaluates the associated minimum-degree threshold bounds as exact rationals.

pub mod binom;
pub mod bounds;
pub mod constructions;
pub mod experiment;
pub mod hypergraph;
pub mod io;
pub mod rational;
pub mod search;

pub use bounds::{BoundReport, BoundsError};
pub use constructions::{
    build_general, build_space_barrier, choose_j, exact_min_degree_formula, optimal_x_tight,
    window_bounds, ConstructionError, ExtremalSpec,
};
pub use hypergraph::{DegreeProfile, Hypergraph, HypergraphError, VertexSet, MAX_VERTICES};
pub use rational::Rational;
pub use search::{
    find_hamilton_ell_cycle, find_hamilton_ell_path, find_perfect_matching, verify_certificate,
    CycleCertificate, Engine, MatchingCertificate, SearchConfig, SearchError, SearchOutcome,
    SearchResult, SearchStats, TraversalKind,
};
