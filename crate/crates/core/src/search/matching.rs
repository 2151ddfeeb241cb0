use std::time::Instant;

use rustc_hash::FxHashSet;

use super::{
    verify_matching, BudgetReason, Engine, MatchingCertificate, SearchConfig, SearchError,
    SearchOutcome, SearchResult, SearchStats,
};
use crate::hypergraph::{Hypergraph, VertexSet};

/// Perfect matching by backtracking on the least uncovered vertex.
/// Requires `k | n`.
pub fn find_perfect_matching(
    h: &Hypergraph,
    config: &SearchConfig,
) -> Result<SearchOutcome<MatchingCertificate>, SearchError> {
    let start = Instant::now();
    let (n, k) = (h.n(), h.k());
    if n % k != 0 {
        return Err(SearchError::Divisibility(format!(
            "a perfect matching needs k = {k} to divide n = {n}"
        )));
    }
    // an edge avoiding every covered vertex that contains the least uncovered
    // vertex has that vertex as its minimum
    let mut by_min: Vec<Vec<u64>> = vec![Vec::new(); n];
    for e in h.edges() {
        by_min[e.bits().trailing_zeros() as usize].push(e.bits());
    }
    let mut m = Matcher {
        by_min,
        full: h.vertices().bits(),
        picked: Vec::new(),
        dead: (config.engine != Engine::Backtrack).then(FxHashSet::default),
        dead_cap: config.state_budget as usize,
        nodes: 0,
        node_limit: config.node_budget,
        deadline: config.deadline(start),
    };
    let result = match m.dfs(0) {
        Ok(true) => {
            let mut edges: Vec<VertexSet> =
                m.picked.iter().map(|&b| VertexSet::from_bits(b)).collect();
            edges.sort_unstable();
            let cert = MatchingCertificate { edges };
            assert!(
                verify_matching(h, &cert),
                "search produced an invalid matching"
            );
            SearchResult::Found(cert)
        }
        Ok(false) => SearchResult::NotFound,
        Err(reason) => SearchResult::Budget(reason),
    };
    let stats = SearchStats {
        nodes: m.nodes,
        dp_states: m.dead.as_ref().map_or(0, |d| d.len() as u64),
        branches: 1,
        memoised: m.dead.is_some(),
        elapsed: start.elapsed(),
    };
    Ok(SearchOutcome { result, stats })
}

struct Matcher {
    by_min: Vec<Vec<u64>>,
    full: u64,
    picked: Vec<u64>,
    dead: Option<FxHashSet<u64>>,
    dead_cap: usize,
    nodes: u64,
    node_limit: u64,
    deadline: Option<Instant>,
}

impl Matcher {
    fn dfs(&mut self, covered: u64) -> Result<bool, BudgetReason> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(BudgetReason::Nodes);
        }
        if self.nodes & 0x3ff == 0 && self.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(BudgetReason::Timeout);
        }
        if covered == self.full {
            return Ok(true);
        }
        if self.dead.as_ref().is_some_and(|d| d.contains(&covered)) {
            return Ok(false);
        }
        let v = (!covered).trailing_zeros() as usize;
        for i in 0..self.by_min[v].len() {
            let e = self.by_min[v][i];
            if e & covered != 0 {
                continue;
            }
            self.picked.push(e);
            if self.dfs(covered | e)? {
                return Ok(true);
            }
            self.picked.pop();
        }
        if let Some(dead) = self.dead.as_mut() {
            if dead.len() < self.dead_cap {
                dead.insert(covered);
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_general, ExtremalSpec};

    #[test]
    fn examples() {
        let config = SearchConfig::default();
        let k6 = Hypergraph::complete(6, 3).unwrap();
        let out = find_perfect_matching(&k6, &config).unwrap();
        let cert = out.certificate().unwrap();
        assert_eq!(
            cert.edges.iter().map(|e| e.to_vec()).collect::<Vec<_>>(),
            vec![vec![0, 1, 2], vec![3, 4, 5]]
        );

        let spec = ExtremalSpec::new(9, 3, 2, 1, 3).unwrap();
        let h = build_general(&spec).unwrap();
        assert!(find_perfect_matching(&h, &config).unwrap().is_found());

        let star = Hypergraph::from_predicate(6, 3, |e| e.contains(0)).unwrap();
        assert!(find_perfect_matching(&star, &config)
            .unwrap()
            .is_not_found());
    }

    #[test]
    fn divisibility() {
        let h = Hypergraph::complete(7, 3).unwrap();
        assert!(matches!(
            find_perfect_matching(&h, &SearchConfig::default()),
            Err(SearchError::Divisibility(_))
        ));
    }

    #[test]
    fn engines_agree() {
        let h = Hypergraph::from_predicate(9, 3, |e| e.contains(0) || e.contains(1)).unwrap();
        for engine in [Engine::Auto, Engine::Backtrack] {
            let config = SearchConfig {
                engine,
                ..SearchConfig::default()
            };
            assert!(find_perfect_matching(&h, &config).unwrap().is_not_found());
        }
    }
}
