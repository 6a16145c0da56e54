//! Clique-seeded exhaustive search for Neumaier graphs with given parameters.
//!
//! The seed clique occupies vertices `0..s`; the search completes the
//! adjacency matrix row by row. Within each row, columns that look identical
//! to all earlier rows are interchangeable, so ones are always packed to the
//! front of each such group; any completion is isomorphic to one in this
//! normal form, which keeps the tree small without losing classes. Survivors
//! are deduplicated by canonical form at the end.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::cliques::verify;
use crate::graph::Graph;
use crate::iso::{canonical_form, is_isomorphic};
use crate::params::NeumaierParams;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("search supports at most 64 vertices, got {0}")]
    TooManyVertices(usize),
    #[error("infeasible parameters: {0}")]
    Infeasible(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_millis: u64,
}

impl Default for Budget {
    fn default() -> Self {
        // The 16-vertex run needs a tiny fraction of this.
        Budget {
            max_nodes: 1_000_000_000,
            max_millis: 3_600_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchMode {
    /// Explore the whole space (within budget).
    Exhaustive,
    /// Stop as soon as one representative is found.
    FirstFound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    pub params: NeumaierParams,
    pub budget: Budget,
    pub mode: SearchMode,
    /// Keep only representatives that are strictly Neumaier (not strongly
    /// regular). With `false`, every member of the class is reported.
    pub strict_only: bool,
}

impl SearchSpec {
    pub fn exhaustive(params: NeumaierParams) -> Self {
        SearchSpec {
            params,
            budget: Budget::default(),
            mode: SearchMode::Exhaustive,
            strict_only: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SearchStats {
    /// Row assignments attempted.
    pub nodes: u64,
    /// Complete adjacency matrices reached.
    pub completed: u64,
    pub prune_lambda_exact: u64,
    pub prune_lambda_bound: u64,
    pub prune_nexus: u64,
    pub prune_degree: u64,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    /// Canonical representatives, pairwise non-isomorphic, certificate order.
    pub representatives: Vec<Graph>,
    /// True when the whole space was explored within budget.
    pub exhaustive: bool,
    pub stats: SearchStats,
}

struct Searcher {
    v: usize,
    k: usize,
    lambda: usize,
    m: usize,
    s: usize,
    params: NeumaierParams,
    strict_only: bool,
    adj: Vec<u64>,
    pdeg: Vec<usize>,
    stats: SearchStats,
    found: Vec<Graph>,
    mode: SearchMode,
    budget: Budget,
    started: Instant,
    out_of_budget: bool,
    stop: bool,
}

impl Searcher {
    fn budget_exceeded(&mut self) -> bool {
        if self.out_of_budget {
            return true;
        }
        if self.stats.nodes > self.budget.max_nodes
            || (self.stats.nodes.is_multiple_of(4096)
                && self.started.elapsed() > Duration::from_millis(self.budget.max_millis))
        {
            self.out_of_budget = true;
        }
        self.out_of_budget
    }

    fn run(&mut self) {
        self.extend_row(0);
    }

    /// Chooses the bits of row `i` towards columns `i+1..v`, then recurses.
    fn extend_row(&mut self, i: usize) {
        if self.stop || self.budget_exceeded() {
            return;
        }
        if i == self.v {
            self.stats.completed += 1;
            let g = Graph::from_edges(
                self.v,
                (0..self.v).flat_map(|u| {
                    let row = self.adj[u];
                    ((u + 1)..self.v).filter(move |&w| row >> w & 1 == 1).map(move |w| (u, w))
                }),
            )
            .expect("search matrices are simple and symmetric");
            // Membership is enforced by the pruning, but re-verify through
            // the independent path before accepting anything.
            let report = verify(&g);
            if report.classification.params() == Some(self.params)
                && (!self.strict_only || report.classification.is_strictly_neumaier())
            {
                self.found.push(g);
                if matches!(self.mode, SearchMode::FirstFound) {
                    self.stop = true;
                }
            }
            return;
        }
        let needed = self.k - self.pdeg[i];
        let free_lo = (i + 1).max(self.s);
        // Group the free columns by their look to rows 0..i; within a group
        // ones go to the lowest indices.
        let prefix_mask = (1u64 << i) - 1;
        let mut groups: Vec<(u64, Vec<usize>)> = Vec::new();
        for j in free_lo..self.v {
            let sig = self.adj[j] & prefix_mask;
            match groups.iter_mut().find(|(s, _)| *s == sig) {
                Some((_, cols)) => cols.push(j),
                None => groups.push((sig, vec![j])),
            }
        }
        let remaining_after = self.v.saturating_sub(i + 2);
        let mut bounds = Vec::with_capacity(groups.len());
        for (_, cols) in &groups {
            let deg = self.pdeg[cols[0]];
            let max_t = if deg >= self.k { 0 } else { cols.len() };
            // Columns left at this degree can still gain edges from later
            // rows only; force a one when skipping would starve them.
            let min_t = if deg + remaining_after < self.k {
                cols.len()
            } else {
                0
            };
            bounds.push((min_t, max_t));
        }
        let mut counts = vec![0usize; groups.len()];
        self.choose_groups(i, needed, 0, &groups, &bounds, &mut counts);
    }

    #[allow(clippy::too_many_arguments)]
    fn choose_groups(
        &mut self,
        i: usize,
        still_needed: usize,
        gi: usize,
        groups: &[(u64, Vec<usize>)],
        bounds: &[(usize, usize)],
        counts: &mut Vec<usize>,
    ) {
        if self.stop || self.out_of_budget {
            return;
        }
        if gi == groups.len() {
            if still_needed == 0 {
                self.apply_row(i, groups, counts);
            }
            return;
        }
        let (min_t, max_t) = bounds[gi];
        let hi = max_t.min(still_needed);
        if min_t > hi {
            self.stats.prune_degree += 1;
            return;
        }
        // Remaining capacity must be able to absorb what is still needed.
        let cap_rest: usize = (gi + 1..groups.len()).map(|g| bounds[g].1).sum();
        for t in (min_t..=hi).rev() {
            if still_needed - t > cap_rest {
                self.stats.prune_degree += 1;
                continue;
            }
            counts[gi] = t;
            self.choose_groups(i, still_needed - t, gi + 1, groups, bounds, counts);
            if self.stop || self.out_of_budget {
                return;
            }
        }
        counts[gi] = 0;
    }

    fn apply_row(&mut self, i: usize, groups: &[(u64, Vec<usize>)], counts: &[usize]) {
        self.stats.nodes += 1;
        let mut chosen: Vec<usize> = Vec::new();
        for (g, (_, cols)) in groups.iter().enumerate() {
            chosen.extend(&cols[..counts[g]]);
        }
        for &j in &chosen {
            self.adj[i] |= 1 << j;
            self.adj[j] |= 1 << i;
            self.pdeg[i] += 1;
            self.pdeg[j] += 1;
        }
        if self.row_consistent(i) {
            self.extend_row(i + 1);
        }
        for &j in &chosen {
            self.adj[i] &= !(1 << j);
            self.adj[j] &= !(1 << i);
            self.pdeg[i] -= 1;
            self.pdeg[j] -= 1;
        }
    }

    /// Prunes against everything decidable once row `i` is fixed.
    fn row_consistent(&mut self, i: usize) -> bool {
        // Edges between finished rows now have their final common-neighbour
        // count; it must be exactly lambda.
        for w in 0..i {
            if self.adj[i] >> w & 1 == 1
                && (self.adj[w] & self.adj[i]).count_ones() as usize != self.lambda
            {
                self.stats.prune_lambda_exact += 1;
                return false;
            }
        }
        // Edges from a finished row to a pending column: bound the count.
        let above = !((1u64 << (i + 1)) - 1) & ((1u64 << self.v) - 1);
        for j in (i + 1)..self.v {
            for w in 0..=i {
                if self.adj[j] >> w & 1 == 0 {
                    continue;
                }
                let decided = (self.adj[w] & self.adj[j]).count_ones() as usize;
                if decided > self.lambda {
                    self.stats.prune_lambda_bound += 1;
                    return false;
                }
                let potential = (self.adj[w] & above & !(1u64 << j)).count_ones() as usize;
                if decided + potential < self.lambda {
                    self.stats.prune_lambda_bound += 1;
                    return false;
                }
            }
        }
        // Nexus of the seed clique: exact once all clique rows are fixed,
        // bounded before that.
        let clique_mask = (1u64 << self.s) - 1;
        let fixed_clique_rows = (i + 1).min(self.s);
        for j in self.s.max(i + 1)..self.v {
            let partial = (self.adj[j] & clique_mask).count_ones() as usize;
            if partial > self.m || partial + (self.s - fixed_clique_rows) < self.m {
                self.stats.prune_nexus += 1;
                return false;
            }
        }
        if i + 1 == self.s {
            for j in self.s..self.v {
                if (self.adj[j] & clique_mask).count_ones() as usize != self.m {
                    self.stats.prune_nexus += 1;
                    return false;
                }
            }
        }
        true
    }
}

/// Runs the clique-seeded search. Representatives satisfy the spec's
/// membership test (verified Neumaier parameters, strictly Neumaier when
/// requested) and are pairwise non-isomorphic canonical forms.
pub fn search_ng(spec: &SearchSpec) -> Result<SearchResult, SearchError> {
    let p = spec.params;
    if p.v > 64 {
        return Err(SearchError::TooManyVertices(p.v));
    }
    if !p.erg().is_feasible() {
        return Err(SearchError::Infeasible("edge-regular parameter conditions fail"));
    }
    let mut searcher = Searcher {
        v: p.v,
        k: p.k,
        lambda: p.lambda,
        m: p.m,
        s: p.s,
        params: p,
        strict_only: spec.strict_only,
        adj: vec![0u64; p.v],
        pdeg: vec![0usize; p.v],
        stats: SearchStats::default(),
        found: Vec::new(),
        mode: spec.mode,
        budget: spec.budget,
        started: Instant::now(),
        out_of_budget: false,
        stop: false,
    };
    // Seed clique on 0..s.
    for a in 0..p.s {
        for b in (a + 1)..p.s {
            searcher.adj[a] |= 1 << b;
            searcher.adj[b] |= 1 << a;
        }
        searcher.pdeg[a] = p.s - 1;
    }
    searcher.run();

    let mut representatives: Vec<Graph> = Vec::new();
    let mut keys: Vec<Vec<u64>> = Vec::new();
    for g in &searcher.found {
        let canon = canonical_form(g);
        let key = canon.bits().to_vec();
        if !keys.contains(&key) {
            keys.push(key);
            representatives.push(canon.graph(g));
        }
    }
    let mut order: Vec<usize> = (0..representatives.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let representatives = order.into_iter().map(|i| representatives[i].clone()).collect();
    Ok(SearchResult {
        representatives,
        exhaustive: !searcher.out_of_budget && !searcher.stop,
        stats: searcher.stats,
    })
}

/// Re-verifies a search result through the independent verification path:
/// every representative must verify with the spec's parameters (strictly
/// Neumaier when requested) and the representatives must be pairwise
/// non-isomorphic.
pub fn verify_search_output(spec: &SearchSpec, result: &SearchResult) -> bool {
    for g in &result.representatives {
        let report = verify(g);
        if report.classification.params() != Some(spec.params) {
            return false;
        }
        if spec.strict_only && !report.classification.is_strictly_neumaier() {
            return false;
        }
    }
    for (i, a) in result.representatives.iter().enumerate() {
        for b in &result.representatives[i + 1..] {
            if is_isomorphic(a, b).is_some() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec_for(v: usize, k: usize, l: usize, m: usize, s: usize, strict: bool) -> SearchSpec {
        SearchSpec {
            params: NeumaierParams::new(v, k, l, m, s).unwrap(),
            budget: Budget::default(),
            mode: SearchMode::Exhaustive,
            strict_only: strict,
        }
    }

    #[test]
    fn four_vertex_class_is_the_four_cycle() {
        let spec = spec_for(4, 2, 0, 1, 2, false);
        let res = search_ng(&spec).unwrap();
        assert!(res.exhaustive);
        assert_eq!(res.representatives.len(), 1);
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(is_isomorphic(&res.representatives[0], &c4).is_some());
    }

    #[test]
    fn strictly_filter_empties_small_clique_class() {
        // (9,4,1;1,3) is settled by the clique size bound: only strongly
        // regular members exist.
        let mut spec = spec_for(9, 4, 1, 1, 3, true);
        spec.mode = SearchMode::FirstFound;
        let res = search_ng(&spec).unwrap();
        assert!(res.representatives.is_empty());
    }

    #[test]
    fn non_strict_small_search_finds_lattice() {
        let spec = spec_for(9, 4, 1, 1, 3, false);
        let res = search_ng(&spec).unwrap();
        assert!(res.exhaustive);
        assert_eq!(res.representatives.len(), 1);
        let l3 = crate::cliques::generate_named(crate::cliques::NamedFamily::SquareLattice(3))
            .unwrap();
        assert!(is_isomorphic(&res.representatives[0], &l3).is_some());
        assert!(verify_search_output(&spec, &res));
    }

    #[test]
    fn determinism_same_spec_same_stats() {
        let spec = spec_for(10, 6, 3, 2, 4, false);
        let a = search_ng(&spec).unwrap();
        let b = search_ng(&spec).unwrap();
        assert_eq!(a.stats, b.stats);
        assert_eq!(a.representatives.len(), b.representatives.len());
        for (x, y) in a.representatives.iter().zip(&b.representatives) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn verify_catches_injected_duplicates() {
        let spec = spec_for(10, 6, 3, 2, 4, false);
        let res = search_ng(&spec).unwrap();
        assert!(verify_search_output(&spec, &res));
        let mut broken = res.clone();
        broken.representatives.push(broken.representatives[0].clone());
        assert!(!verify_search_output(&spec, &broken));
    }

    #[test]
    fn budget_exhaustion_reported() {
        let mut spec = spec_for(16, 9, 4, 2, 4, true);
        spec.budget = Budget {
            max_nodes: 10,
            max_millis: 3_600_000,
        };
        let res = search_ng(&spec).unwrap();
        assert!(!res.exhaustive);
    }
}
