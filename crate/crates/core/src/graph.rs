//! Immutable simple undirected graphs over dense vertex indices `0..v`,
//! with the regularity analysis everything else is built on.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;

/// Default upper bound on vertex counts accepted by graph constructors.
/// Covers the binary affine polar constructions up to half-dimension 6.
pub const DEFAULT_VERTEX_CAP: usize = 4096;

static VERTEX_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_VERTEX_CAP);

/// Current process-wide vertex cap.
pub fn vertex_cap() -> usize {
    VERTEX_CAP.load(Ordering::Relaxed)
}

/// Override the vertex cap (e.g. from the `NEUMAIER_MAX_V` environment variable).
pub fn set_vertex_cap(cap: usize) {
    VERTEX_CAP.store(cap, Ordering::Relaxed);
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count {0} exceeds the configured cap of {1}")]
    CapExceeded(usize, usize),
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("vertex {0} out of range for a graph on {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("complete graph has no non-adjacent pairs")]
    NoNonAdjacentPairs,
}

/// Immutable simple undirected graph; one bitset row per vertex.
///
/// Symmetry and loop-freeness are established at construction time, so all
/// analysis code may take them for granted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    v: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Edgeless graph on `v` vertices.
    pub fn empty(v: usize) -> Result<Self, GraphError> {
        if v == 0 {
            return Err(GraphError::NoVertices);
        }
        let cap = vertex_cap();
        if v > cap {
            return Err(GraphError::CapExceeded(v, cap));
        }
        Ok(Graph {
            v,
            adj: vec![VertexSet::empty(v); v],
        })
    }

    pub fn complete(v: usize) -> Result<Self, GraphError> {
        let mut g = Self::empty(v)?;
        for u in 0..v {
            for w in (u + 1)..v {
                g.set_edge(u, w);
            }
        }
        Ok(g)
    }

    pub fn from_edges<I>(v: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(v)?;
        for (u, w) in edges {
            if u >= v {
                return Err(GraphError::VertexOutOfRange(u, v));
            }
            if w >= v {
                return Err(GraphError::VertexOutOfRange(w, v));
            }
            if u == w {
                return Err(GraphError::SelfLoop(u));
            }
            g.set_edge(u, w);
        }
        Ok(g)
    }

    /// Builds the graph `{u,w} ∈ E ⟺ pred(u,w)` for `u < w`.
    pub fn from_predicate<F>(v: usize, mut pred: F) -> Result<Self, GraphError>
    where
        F: FnMut(usize, usize) -> bool,
    {
        let mut g = Self::empty(v)?;
        for u in 0..v {
            for w in (u + 1)..v {
                if pred(u, w) {
                    g.set_edge(u, w);
                }
            }
        }
        Ok(g)
    }

    pub(crate) fn set_edge(&mut self, u: usize, w: usize) {
        debug_assert!(u != w);
        self.adj[u].insert(w);
        self.adj[w].insert(u);
    }

    /// XORs a mask into one adjacency row. The caller must apply the
    /// mirror-image updates to keep the matrix symmetric and loop-free.
    pub(crate) fn xor_row(&mut self, u: usize, mask: &VertexSet) {
        debug_assert!(!mask.contains(u));
        self.adj[u].xor_in_place(mask);
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.v
    }

    #[inline]
    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        self.adj[u].contains(w)
    }

    /// Neighbourhood of `u` as a bitset row.
    #[inline]
    pub fn row(&self, u: usize) -> &VertexSet {
        &self.adj[u]
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count()).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.v {
            for w in self.adj[u].iter() {
                if w > u {
                    out.push((u, w));
                }
            }
        }
        out
    }

    /// Number of common neighbours of `u` and `w`.
    #[inline]
    pub fn common_neighbours(&self, u: usize, w: usize) -> usize {
        self.adj[u].intersection_count(&self.adj[w])
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.v).map(|u| self.degree(u)).collect()
    }

    pub fn is_regular(&self) -> Option<usize> {
        let k = self.degree(0);
        (1..self.v).all(|u| self.degree(u) == k).then_some(k)
    }

    pub fn is_complete(&self) -> bool {
        (0..self.v).all(|u| self.degree(u) == self.v - 1)
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(|r| r.is_empty())
    }

    /// Edge complement. An involution: `g.complement().complement() == g`.
    pub fn complement(&self) -> Graph {
        let mut g = Graph {
            v: self.v,
            adj: vec![VertexSet::empty(self.v); self.v],
        };
        for u in 0..self.v {
            for w in (u + 1)..self.v {
                if !self.has_edge(u, w) {
                    g.set_edge(u, w);
                }
            }
        }
        g
    }

    /// Relabels vertices: vertex `u` of `self` becomes `perm[u]` in the result.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.v);
        let mut g = Graph {
            v: self.v,
            adj: vec![VertexSet::empty(self.v); self.v],
        };
        for u in 0..self.v {
            for w in self.adj[u].iter() {
                if w > u {
                    g.set_edge(perm[u], perm[w]);
                }
            }
        }
        g
    }

    /// Multiset of common-neighbour counts over non-adjacent pairs, as
    /// `count value -> number of pairs`.
    pub fn mu_spectrum(&self) -> Result<BTreeMap<usize, usize>, GraphError> {
        if self.is_complete() {
            return Err(GraphError::NoNonAdjacentPairs);
        }
        let mut out = BTreeMap::new();
        for u in 0..self.v {
            for w in (u + 1)..self.v {
                if !self.has_edge(u, w) {
                    *out.entry(self.common_neighbours(u, w)).or_insert(0) += 1;
                }
            }
        }
        Ok(out)
    }

    /// Distinct values in the mu spectrum; empty for complete graphs.
    pub fn mu_support(&self) -> Vec<usize> {
        self.mu_spectrum()
            .map(|m| m.keys().copied().collect())
            .unwrap_or_default()
    }

    /// Finest regularity class of the graph.
    pub fn classify(&self) -> RegularityClass {
        use RegularityClass::*;
        if self.is_complete() {
            return Complete;
        }
        if self.is_edgeless() {
            return Empty;
        }
        let Some(k) = self.is_regular() else {
            return NotRegular;
        };
        let lambda = self.uniform_count(true);
        let mu = self.uniform_count(false);
        match (lambda, mu) {
            (Some(l), Some(m)) => StronglyRegular(SrgParams {
                v: self.v,
                k,
                lambda: l,
                mu: m,
            }),
            (Some(l), None) => EdgeRegular(ErgParams {
                v: self.v,
                k,
                lambda: l,
            }),
            (None, Some(m)) => CoEdgeRegular {
                v: self.v,
                k,
                mu: m,
            },
            (None, None) => Regular(k),
        }
    }

    /// Common-neighbour count if it is constant over all adjacent
    /// (`adjacent = true`) or non-adjacent pairs; `None` otherwise.
    fn uniform_count(&self, adjacent: bool) -> Option<usize> {
        let mut value = None;
        for u in 0..self.v {
            for w in (u + 1)..self.v {
                if self.has_edge(u, w) != adjacent {
                    continue;
                }
                let c = self.common_neighbours(u, w);
                match value {
                    None => value = Some(c),
                    Some(x) if x != c => return None,
                    _ => {}
                }
            }
        }
        value
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(v={}, e={})", self.v, self.edge_count())
    }
}

/// Edge-regular parameter triple: `k`-regular, every edge in `lambda` triangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ErgParams {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
}

impl ErgParams {
    pub fn new(v: usize, k: usize, lambda: usize) -> Self {
        ErgParams { v, k, lambda }
    }

    /// The arithmetic sanity conditions every edge-regular graph satisfies:
    /// `v > k > lambda`, `v >= 2k - lambda`, `2 | vk`, `2 | k*lambda`, `6 | v*k*lambda`.
    pub fn is_feasible(&self) -> bool {
        let (v, k, l) = (self.v as u64, self.k as u64, self.lambda as u64);
        self.v > self.k
            && self.k > self.lambda
            && (v + l) >= 2 * k
            && (v * k) % 2 == 0
            && (k * l) % 2 == 0
            && (v * k * l) % 6 == 0
    }
}

impl std::fmt::Display for ErgParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.v, self.k, self.lambda)
    }
}

/// Strongly regular parameter tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SrgParams {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl SrgParams {
    pub fn new(v: usize, k: usize, lambda: usize, mu: usize) -> Self {
        SrgParams { v, k, lambda, mu }
    }

    /// The standard counting identity `k(k - λ - 1) = μ(v - k - 1)`,
    /// required whenever `v > k + 1`.
    pub fn counting_identity_holds(&self) -> bool {
        if self.v <= self.k + 1 {
            return true;
        }
        (self.k * (self.k - self.lambda - 1)) as u64
            == (self.mu * (self.v - self.k - 1)) as u64
    }

    pub fn erg(&self) -> ErgParams {
        ErgParams::new(self.v, self.k, self.lambda)
    }
}

impl std::fmt::Display for SrgParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

/// Finest regularity class, ordered roughly from least to most structured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegularityClass {
    /// No edges (and at least two vertices).
    Empty,
    /// All pairs adjacent; includes the one-vertex graph.
    Complete,
    NotRegular,
    Regular(usize),
    EdgeRegular(ErgParams),
    CoEdgeRegular { v: usize, k: usize, mu: usize },
    StronglyRegular(SrgParams),
}

impl RegularityClass {
    /// Edge-regular parameters if the class implies them.
    pub fn erg_params(&self) -> Option<ErgParams> {
        match self {
            RegularityClass::EdgeRegular(p) => Some(*p),
            RegularityClass::StronglyRegular(p) => Some(p.erg()),
            _ => None,
        }
    }

    pub fn is_strongly_regular(&self) -> bool {
        matches!(self, RegularityClass::StronglyRegular(_))
    }

    pub fn is_edge_regular(&self) -> bool {
        self.erg_params().is_some()
    }
}

impl std::fmt::Display for RegularityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RegularityClass::Empty => write!(f, "empty"),
            RegularityClass::Complete => write!(f, "complete"),
            RegularityClass::NotRegular => write!(f, "not regular"),
            RegularityClass::Regular(k) => write!(f, "{k}-regular"),
            RegularityClass::EdgeRegular(p) => write!(f, "edge-regular {p}"),
            RegularityClass::CoEdgeRegular { v, k, mu } => {
                write!(f, "co-edge-regular ({v},{k},{mu})")
            }
            RegularityClass::StronglyRegular(p) => write!(f, "strongly regular {p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn degree_sequences() {
        assert_eq!(Graph::complete(4).unwrap().degree_sequence(), vec![3; 4]);
        assert_eq!(Graph::empty(3).unwrap().degree_sequence(), vec![0; 3]);
        assert_eq!(cycle(5).degree_sequence(), vec![2; 5]);
    }

    #[test]
    fn pentagon_is_srg_5_2_0_1() {
        assert_eq!(
            cycle(5).classify(),
            RegularityClass::StronglyRegular(SrgParams::new(5, 2, 0, 1))
        );
    }

    #[test]
    fn classify_edge_cases() {
        assert_eq!(Graph::complete(4).unwrap().classify(), RegularityClass::Complete);
        assert_eq!(Graph::complete(1).unwrap().classify(), RegularityClass::Complete);
        assert_eq!(Graph::empty(3).unwrap().classify(), RegularityClass::Empty);
        // A path on 3 vertices is not regular.
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.classify(), RegularityClass::NotRegular);
        // Triangle-free regular graphs are edge-regular with lambda = 0.
        assert_eq!(
            cycle(6).classify(),
            RegularityClass::EdgeRegular(ErgParams::new(6, 2, 0))
        );
        // A triangle next to a 4-cycle is 2-regular but has edges in
        // different numbers of triangles and uneven non-adjacent counts.
        let mixed =
            Graph::from_edges(7, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)])
                .unwrap();
        assert_eq!(mixed.classify(), RegularityClass::Regular(2));
    }

    #[test]
    fn complement_composes_to_identity() {
        let g = Graph::from_edges(8, [(0, 1), (1, 2), (2, 5), (3, 7), (6, 7), (0, 4)]).unwrap();
        assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn complement_of_srg_has_complement_parameters() {
        // srg(v,k,λ,μ) complements to srg(v, v-k-1, v-2-2k+μ, v-2k+λ).
        let pentagon = cycle(5);
        assert_eq!(
            pentagon.complement().classify(),
            RegularityClass::StronglyRegular(SrgParams::new(5, 2, 0, 1))
        );
    }

    #[test]
    fn mu_spectrum_of_pentagon() {
        let spec = cycle(5).mu_spectrum().unwrap();
        assert_eq!(spec, BTreeMap::from([(1, 5)]));
    }

    #[test]
    fn mu_spectrum_rejects_complete() {
        assert_eq!(
            Graph::complete(4).unwrap().mu_spectrum().unwrap_err(),
            GraphError::NoNonAdjacentPairs
        );
    }

    #[test]
    fn erg_feasibility_conditions() {
        assert!(ErgParams::new(16, 9, 4).is_feasible());
        assert!(!ErgParams::new(16, 9, 3).is_feasible()); // 9*3 odd
        assert!(!ErgParams::new(5, 4, 4).is_feasible()); // k = lambda
        assert!(!ErgParams::new(7, 5, 1).is_feasible()); // v < 2k - lambda
    }

    #[test]
    fn vertex_cap_enforced() {
        let cap = vertex_cap();
        assert!(matches!(
            Graph::empty(cap + 1),
            Err(GraphError::CapExceeded(..))
        ));
    }
}
