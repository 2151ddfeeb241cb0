//! End-to-end experiments: build a construction, measure it both ways,
//! search it, and compare against the closed-form bounds.

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{BoundReport, BoundsError};
use crate::constructions::{
    build_general, degree_ratio, exact_min_degree_formula, ConstructionError, ExtremalSpec,
};
use crate::hypergraph::{DegreeProfile, HypergraphError};
use crate::rational::{self, Rational};
use crate::search::{
    find_hamilton_ell_cycle, find_hamilton_ell_path, find_perfect_matching, CycleCertificate,
    MatchingCertificate, SearchConfig, SearchError, SearchOutcome,
};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub d: usize,
    pub path: bool,
    pub matching: bool,
    pub search: SearchConfig,
}

/// A search that was run, or the reason it was not.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum SearchEntry<C> {
    Ran(SearchOutcome<C>),
    Skipped {
        status: &'static str,
        reason: String,
    },
}

impl<C> SearchEntry<C> {
    fn skipped(reason: impl ToString) -> Self {
        SearchEntry::Skipped {
            status: "skipped",
            reason: reason.to_string(),
        }
    }

    pub fn outcome(&self) -> Option<&SearchOutcome<C>> {
        match self {
            SearchEntry::Ran(o) => Some(o),
            SearchEntry::Skipped { .. } => None,
        }
    }

    /// `Some(found)` when the search finished either way.
    pub fn decided(&self) -> Option<bool> {
        let o = self.outcome()?;
        if o.is_budget() {
            None
        } else {
            Some(o.is_found())
        }
    }

    pub fn hit_budget(&self) -> bool {
        self.outcome().is_some_and(|o| o.is_budget())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MinDegrees {
    pub bruteforce: DegreeProfile,
    pub formula: DegreeProfile,
}

#[derive(Clone, Debug, Serialize)]
pub struct Searches {
    pub cycle: SearchEntry<CycleCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<SearchEntry<CycleCertificate>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matching: Option<SearchEntry<MatchingCertificate>>,
}

/// Flags derived from the measurements; never set by hand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub formula_matches_bruteforce: bool,
    /// `None` when the search ran out of budget.
    pub no_hamilton_cycle: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub no_hamilton_path: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub has_perfect_matching: Option<bool>,
    /// In-window specs must have no Hamilton cycle.
    pub expect_no_hamilton_cycle: bool,
    pub budget_exceeded: bool,
    pub expectations_met: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub spec: ExtremalSpec,
    pub d: usize,
    pub edge_count: usize,
    pub min_degree: MinDegrees,
    /// `δ_d(H) / C(n-d, k-d)`
    #[serde(with = "rational::json")]
    pub finite_ratio: Rational,
    pub searches: Searches,
    pub bounds: BoundReport,
    pub verdicts: Verdicts,
}

impl ExperimentReport {
    /// 0 verified, 3 budget exceeded, 4 an expectation failed.
    pub fn exit_code(&self) -> i32 {
        if self.verdicts.budget_exceeded {
            3
        } else if !self.verdicts.expectations_met {
            4
        } else {
            0
        }
    }
}

pub fn run_verify(
    spec: &ExtremalSpec,
    opts: &VerifyOptions,
) -> Result<ExperimentReport, ExperimentError> {
    let h = build_general(spec)?;
    let d = opts.d;
    let brute = h.min_d_degree(d)?;
    let formula = exact_min_degree_formula(spec, d)?;
    let classes = h.degree_classes(d, spec.split())?;
    let formula_matches_bruteforce = brute.min_degree == formula.min_degree
        && formula.by_class.as_ref().is_some_and(|by_class| {
            by_class.len() == classes.len()
                && classes
                    .iter()
                    .all(|(i, c)| c.min == c.max && by_class.get(i) == Some(&BigUint::from(c.min)))
        });

    let cycle = SearchEntry::Ran(find_hamilton_ell_cycle(&h, spec.ell, &opts.search)?);
    let path = opts.path.then(
        || match find_hamilton_ell_path(&h, spec.ell, &opts.search) {
            Ok(o) => SearchEntry::Ran(o),
            Err(e) => SearchEntry::skipped(e),
        },
    );
    let matching = opts
        .matching
        .then(|| match find_perfect_matching(&h, &opts.search) {
            Ok(o) => SearchEntry::Ran(o),
            Err(e) => SearchEntry::skipped(e),
        });

    let no_hamilton_cycle = cycle.decided().map(|found| !found);
    let no_hamilton_path = path.as_ref().and_then(|p| p.decided()).map(|found| !found);
    let has_perfect_matching = matching.as_ref().and_then(|m| m.decided());
    let budget_exceeded = cycle.hit_budget()
        || path.as_ref().is_some_and(|p| p.hit_budget())
        || matching.as_ref().is_some_and(|m| m.hit_budget());
    let expect_no_hamilton_cycle = spec.in_window();
    let expectations_met = formula_matches_bruteforce
        && (!expect_no_hamilton_cycle || no_hamilton_cycle == Some(true));

    let finite_ratio = degree_ratio(&brute, spec.n, spec.k);
    Ok(ExperimentReport {
        spec: *spec,
        d,
        edge_count: h.edge_count(),
        min_degree: MinDegrees {
            bruteforce: brute,
            formula,
        },
        finite_ratio,
        searches: Searches {
            cycle,
            path,
            matching,
        },
        bounds: BoundReport::new(spec.k, spec.ell, d)?,
        verdicts: Verdicts {
            formula_matches_bruteforce,
            no_hamilton_cycle,
            no_hamilton_path,
            has_perfect_matching,
            expect_no_hamilton_cycle,
            budget_exceeded,
            expectations_met,
        },
    })
}

/// One row of an `(n, k, ℓ, j, x_size, d)` sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub spec: ExtremalSpec,
    pub d: usize,
    pub in_window: bool,
    pub edge_count: BigUint,
    pub min_degree: BigUint,
    pub ratio: Rational,
    /// `found`, `not_found`, `budget` or `skipped`.
    pub search_outcome: &'static str,
}

pub const SWEEP_HEADER: &str =
    "n,k,ell,d,j,x_size,in_window,edge_count,min_degree_num,min_degree_den_ratio,search_outcome";

impl SweepRow {
    pub fn csv_line(&self) -> String {
        let s = &self.spec;
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            s.n,
            s.k,
            s.ell,
            self.d,
            s.j,
            s.x_size,
            self.in_window,
            self.edge_count,
            self.min_degree,
            rational::display(&self.ratio),
            self.search_outcome
        )
    }
}

/// Formula-only row; the ℓ-cycle search runs only when `n <= search_cap`.
pub fn sweep_row(
    spec: &ExtremalSpec,
    d: usize,
    search_cap: usize,
    config: &SearchConfig,
) -> Result<SweepRow, ExperimentError> {
    let profile = exact_min_degree_formula(spec, d)?;
    let search_outcome = if spec.n <= search_cap {
        let h = build_general(spec)?;
        match find_hamilton_ell_cycle(&h, spec.ell, config) {
            Ok(o) => o.status(),
            Err(_) => "skipped",
        }
    } else {
        "skipped"
    };
    Ok(SweepRow {
        spec: *spec,
        d,
        in_window: spec.in_window(),
        edge_count: spec.edge_count(),
        ratio: degree_ratio(&profile, spec.n, spec.k),
        min_degree: profile.min_degree,
        search_outcome,
    })
}
