//! Independent oracle for the clique-seeded search: a plain backtracking
//! enumerator with no symmetry breaking, compared class-for-class against
//! the production search on small parameter sets.

use neumaier_core::cliques::verify;
use neumaier_core::graph::Graph;
use neumaier_core::iso::canonical_form;
use neumaier_core::params::NeumaierParams;
use neumaier_core::search::{search_ng, SearchSpec};

/// Enumerates every adjacency matrix extending the seed clique `0..s` that is
/// k-regular, has constant λ on edges, and gives the seed clique nexus m.
/// Row-by-row with subset choices; no normal form, no group pruning.
struct Naive {
    v: usize,
    k: usize,
    lambda: usize,
    m: usize,
    s: usize,
    adj: Vec<u64>,
    out: Vec<Graph>,
}

impl Naive {
    fn run(params: NeumaierParams) -> Vec<Graph> {
        let mut n = Naive {
            v: params.v,
            k: params.k,
            lambda: params.lambda,
            m: params.m,
            s: params.s,
            adj: vec![0; params.v],
            out: Vec::new(),
        };
        for a in 0..n.s {
            for b in 0..n.s {
                if a != b {
                    n.adj[a] |= 1 << b;
                }
            }
        }
        n.row(0);
        n.out
    }

    fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    fn row(&mut self, i: usize) {
        if i == self.v {
            self.finish();
            return;
        }
        let free: Vec<usize> = ((i + 1).max(self.s)..self.v).collect();
        let need = self.k.saturating_sub(self.degree(i));
        if self.degree(i) > self.k || need > free.len() {
            return;
        }
        self.subsets(i, &free, 0, need);
    }

    fn subsets(&mut self, i: usize, free: &[usize], from: usize, need: usize) {
        if need == 0 {
            if self.consistent(i) {
                self.row(i + 1);
            }
            return;
        }
        if free.len() - from < need {
            return;
        }
        for pos in from..free.len() {
            let j = free[pos];
            if self.degree(j) >= self.k {
                continue;
            }
            self.adj[i] |= 1 << j;
            self.adj[j] |= 1 << i;
            self.subsets(i, free, pos + 1, need - 1);
            self.adj[i] &= !(1 << j);
            self.adj[j] &= !(1 << i);
        }
    }

    fn consistent(&self, i: usize) -> bool {
        for w in 0..i {
            if self.adj[i] >> w & 1 == 1
                && (self.adj[w] & self.adj[i]).count_ones() as usize != self.lambda
            {
                return false;
            }
        }
        if i + 1 >= self.s {
            let clique = (1u64 << self.s) - 1;
            let fixed = (i + 1).min(self.s);
            for j in self.s..self.v {
                let partial = (self.adj[j] & clique).count_ones() as usize;
                if fixed == self.s && partial != self.m {
                    return false;
                }
                if partial > self.m {
                    return false;
                }
            }
        }
        true
    }

    fn finish(&mut self) {
        if (0..self.v).any(|u| self.degree(u) != self.k) {
            return;
        }
        let g = Graph::from_edges(
            self.v,
            (0..self.v).flat_map(|u| {
                let row = self.adj[u];
                ((u + 1)..self.v)
                    .filter(move |&w| row >> w & 1 == 1)
                    .map(move |w| (u, w))
            }),
        )
        .unwrap();
        self.out.push(g);
    }
}

fn iso_classes(graphs: &[Graph]) -> Vec<Vec<u64>> {
    let mut keys: Vec<Vec<u64>> = graphs
        .iter()
        .map(|g| canonical_form(g).bits().to_vec())
        .collect();
    keys.sort();
    keys.dedup();
    keys
}

#[test]
fn search_matches_naive_enumeration_on_triangular_class() {
    // (10,6,3;2,4) is extremal: its only member is the triangular graph on
    // five points. The naive enumerator and the pruned search must agree on
    // the set of isomorphism classes.
    let params = NeumaierParams::new(10, 6, 3, 2, 4).unwrap();
    let naive = Naive::run(params);
    assert!(!naive.is_empty());
    for g in &naive {
        let report = verify(g);
        assert_eq!(report.classification.params(), Some(params));
    }
    let naive_classes = iso_classes(&naive);

    let mut spec = SearchSpec::exhaustive(params);
    spec.strict_only = false;
    let result = search_ng(&spec).unwrap();
    assert!(result.exhaustive);
    let search_classes = iso_classes(&result.representatives);
    assert_eq!(naive_classes, search_classes);
    assert_eq!(search_classes.len(), 1);
}

#[test]
fn search_matches_naive_enumeration_on_lattice_class() {
    // (9,4,1;1,3): only the 3x3 lattice graph.
    let params = NeumaierParams::new(9, 4, 1, 1, 3).unwrap();
    let naive = Naive::run(params);
    let naive_classes = iso_classes(&naive);
    let mut spec = SearchSpec::exhaustive(params);
    spec.strict_only = false;
    let result = search_ng(&spec).unwrap();
    assert!(result.exhaustive);
    assert_eq!(iso_classes(&result.representatives), naive_classes);
    assert_eq!(naive_classes.len(), 1);
}

#[test]
fn search_matches_naive_enumeration_with_nexus_three() {
    // (8,6,4;3,4): the complete multipartite graph with four parts of two.
    let params = NeumaierParams::new(8, 6, 4, 3, 4).unwrap();
    let naive = Naive::run(params);
    let naive_classes = iso_classes(&naive);
    let mut spec = SearchSpec::exhaustive(params);
    spec.strict_only = false;
    let result = search_ng(&spec).unwrap();
    assert!(result.exhaustive);
    assert_eq!(iso_classes(&result.representatives), naive_classes);
    assert_eq!(naive_classes.len(), 1);
    let k42 = neumaier_core::cliques::generate_named(
        neumaier_core::cliques::NamedFamily::CompleteMultipartite { r: 4, t: 2 },
    )
    .unwrap();
    assert!(neumaier_core::iso::is_isomorphic(&result.representatives[0], &k42).is_some());
}

#[test]
fn equality_case_classes_are_the_classified_graphs() {
    // Parameter tuples attaining equality in the clique-neighbourhood bound
    // admit exactly one graph each: a square lattice, a triangular graph,
    // or a complete multipartite graph with parts of two.
    use neumaier_core::cliques::{generate_named, NamedFamily};
    use neumaier_core::iso::is_isomorphic;
    let cases: [(NeumaierParams, neumaier_core::Graph); 2] = [
        (
            NeumaierParams::new(16, 6, 2, 1, 4).unwrap(),
            generate_named(NamedFamily::SquareLattice(4)).unwrap(),
        ),
        (
            NeumaierParams::new(15, 8, 4, 2, 5).unwrap(),
            generate_named(NamedFamily::Triangular(6)).unwrap(),
        ),
    ];
    for (params, expected) in cases {
        let mut spec = SearchSpec::exhaustive(params);
        spec.strict_only = false;
        let result = search_ng(&spec).unwrap();
        assert!(result.exhaustive);
        assert_eq!(result.representatives.len(), 1, "{params}");
        assert!(is_isomorphic(&result.representatives[0], &expected).is_some());
    }
    // In particular the (16,6,2;1,4) class contains only the lattice graph,
    // never the Shrikhande graph, which has no regular clique.
    let shrikhande = generate_named(NamedFamily::Shrikhande).unwrap();
    let mut spec = SearchSpec::exhaustive(NeumaierParams::new(16, 6, 2, 1, 4).unwrap());
    spec.strict_only = false;
    let result = search_ng(&spec).unwrap();
    assert!(is_isomorphic(&result.representatives[0], &shrikhande).is_none());
}

#[test]
fn search_agrees_with_naive_on_an_empty_class() {
    // (12,5,2;1,4) violates the clique-neighbourhood bound, so no graph
    // exists; both routes must come up empty.
    let params = NeumaierParams::new(12, 5, 2, 1, 4).unwrap();
    assert!(Naive::run(params).is_empty());
    let mut spec = SearchSpec::exhaustive(params);
    spec.strict_only = false;
    let result = search_ng(&spec).unwrap();
    assert!(result.exhaustive);
    assert!(result.representatives.is_empty());
}
