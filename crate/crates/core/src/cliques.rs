//! Clique enumeration, regular-clique (nexus) checks, and Neumaier
//! classification of concrete graphs.

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::graph::{Graph, RegularityClass};
use crate::params::NeumaierParams;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CliqueError {
    #[error("vertex set is not a clique: {0} and {1} are non-adjacent")]
    NotAClique(usize, usize),
    #[error("clique must be a proper nonempty subset of the vertices")]
    NotProperSubset,
}

/// A clique together with its nexus, when it has one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueInfo {
    /// Members in increasing order.
    pub members: Vec<usize>,
    /// Number of neighbours every outside vertex has inside the clique,
    /// when that number is constant and positive.
    pub nexus: Option<usize>,
}

impl CliqueInfo {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// All inclusion-maximal cliques, each reported once, in a deterministic
/// order (sorted member lists, compared lexicographically).
///
/// Pivoting Bron–Kerbosch over bitset rows; fine for the dense graphs of a
/// few thousand vertices this crate works with.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    let v = g.vertex_count();
    let mut out = Vec::new();
    let mut r = Vec::new();
    bron_kerbosch(
        g,
        &mut r,
        VertexSet::full(v),
        VertexSet::empty(v),
        &mut out,
    );
    for clique in &mut out {
        clique.sort_unstable();
    }
    out.sort();
    out
}

fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<usize>,
    p: VertexSet,
    x: VertexSet,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r.clone());
        return;
    }
    // Pivot: vertex of P ∪ X covering the most of P; ties to the lowest index.
    let pivot = p
        .iter()
        .chain(x.iter())
        .map(|u| (p.intersection_count(g.row(u)), std::cmp::Reverse(u)))
        .max()
        .map(|(_, std::cmp::Reverse(u))| u)
        .expect("P or X nonempty");
    let candidates = p.difference(g.row(pivot));
    let mut p = p;
    let mut x = x;
    for u in candidates.iter() {
        r.push(u);
        bron_kerbosch(
            g,
            r,
            p.intersection(g.row(u)),
            x.intersection(g.row(u)),
            out,
        );
        r.pop();
        p.remove(u);
        x.insert(u);
    }
}

/// Nexus of a clique: `Some(m)` when every vertex outside `members` has
/// exactly `m ≥ 1` neighbours inside, `None` otherwise.
pub fn nexus(g: &Graph, members: &[usize]) -> Result<Option<usize>, CliqueError> {
    let v = g.vertex_count();
    if members.is_empty() || members.len() >= v {
        return Err(CliqueError::NotProperSubset);
    }
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if !g.has_edge(a, b) {
                return Err(CliqueError::NotAClique(a, b));
            }
        }
    }
    let set = VertexSet::from_iter(v, members.iter().copied());
    let mut m = None;
    for u in 0..v {
        if set.contains(u) {
            continue;
        }
        let c = set.intersection_count(g.row(u));
        match m {
            None => m = Some(c),
            Some(x) if x != c => return Ok(None),
            _ => {}
        }
    }
    Ok(m.filter(|&x| x >= 1))
}

/// All regular cliques of a regular graph.
///
/// In a regular non-complete graph a regular clique is necessarily maximal
/// (a non-maximal one would force nexus `s`, hence degree `v−1` everywhere),
/// so scanning maximal cliques is exhaustive. When the graph is edge-regular
/// only the maximum-size cliques can be regular; otherwise every maximal
/// clique is checked.
pub fn regular_cliques(g: &Graph) -> Vec<CliqueInfo> {
    let maximal = maximal_cliques(g);
    let class = g.classify();
    let candidates: Vec<&Vec<usize>> = if class.is_edge_regular() {
        let smax = maximal.iter().map(|c| c.len()).max().unwrap_or(0);
        maximal.iter().filter(|c| c.len() == smax).collect()
    } else {
        maximal.iter().collect()
    };
    let mut out = Vec::new();
    for members in candidates {
        if members.len() >= g.vertex_count() {
            continue;
        }
        if let Ok(Some(m)) = nexus(g, members) {
            out.push(CliqueInfo {
                members: members.clone(),
                nexus: Some(m),
            });
        }
    }
    out
}

/// Outcome of verifying a graph against the Neumaier definitions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NeumaierClass {
    NotNeumaier,
    /// Non-complete edge-regular with a regular clique, and strongly regular.
    Neumaier(NeumaierParams),
    /// Non-complete edge-regular with a regular clique, not strongly regular.
    StrictlyNeumaier(NeumaierParams),
}

impl NeumaierClass {
    pub fn is_strictly_neumaier(&self) -> bool {
        matches!(self, NeumaierClass::StrictlyNeumaier(_))
    }

    pub fn params(&self) -> Option<NeumaierParams> {
        match self {
            NeumaierClass::Neumaier(p) | NeumaierClass::StrictlyNeumaier(p) => Some(*p),
            NeumaierClass::NotNeumaier => None,
        }
    }
}

/// Full verification report for a concrete graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub regularity: RegularityClass,
    pub regular_cliques: Vec<CliqueInfo>,
    pub classification: NeumaierClass,
    /// Distinct common-neighbour counts over non-adjacent pairs.
    pub mu_support: Vec<usize>,
}

/// Classifies a graph: regularity class, regular cliques, Neumaier class and
/// mu support. A strictly Neumaier verdict means: edge-regular, non-complete,
/// has a regular clique, and is not strongly regular.
pub fn verify(g: &Graph) -> VerificationReport {
    let regularity = g.classify();
    let mu_support = g.mu_support();
    let regular_cliques = if g.is_regular().is_some() && !g.is_complete() {
        self::regular_cliques(g)
    } else {
        Vec::new()
    };
    let classification = match regularity.erg_params() {
        Some(erg) if !regular_cliques.is_empty() => {
            let first = &regular_cliques[0];
            let params = NeumaierParams::new(
                erg.v,
                erg.k,
                erg.lambda,
                first.nexus.expect("regular cliques carry a nexus"),
                first.size(),
            )
            .expect("parameters of a verified Neumaier graph satisfy the counting identities");
            if regularity.is_strongly_regular() {
                NeumaierClass::Neumaier(params)
            } else {
                NeumaierClass::StrictlyNeumaier(params)
            }
        }
        _ => NeumaierClass::NotNeumaier,
    };
    VerificationReport {
        regularity,
        regular_cliques,
        classification,
        mu_support,
    }
}

/// Named graph families used as references and test material.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedFamily {
    /// `K_{r×t}`: complete multipartite, `r` parts of size `t`.
    CompleteMultipartite { r: usize, t: usize },
    /// `L₂(n)`: vertices are cells of an n×n grid, adjacent when they share
    /// a row or column; srg(n², 2(n−1), n−2, 2).
    SquareLattice(usize),
    /// `T(n)`: vertices are 2-subsets of an n-set, adjacent when they meet;
    /// srg(C(n,2), 2(n−2), n−2, 4).
    Triangular(usize),
    /// The 16-vertex srg(16,6,2,2) that is not the square lattice graph.
    Shrikhande,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("parameter out of range: {0}")]
    OutOfRange(&'static str),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

pub fn generate_named(family: NamedFamily) -> Result<Graph, FamilyError> {
    match family {
        NamedFamily::CompleteMultipartite { r, t } => {
            if r < 2 || t < 1 {
                return Err(FamilyError::OutOfRange("need r >= 2 and t >= 1"));
            }
            Ok(Graph::from_predicate(r * t, |u, w| u / t != w / t)?)
        }
        NamedFamily::SquareLattice(n) => {
            if n < 2 {
                return Err(FamilyError::OutOfRange("need n >= 2"));
            }
            Ok(Graph::from_predicate(n * n, |u, w| {
                u / n == w / n || u % n == w % n
            })?)
        }
        NamedFamily::Triangular(n) => {
            if n < 3 {
                return Err(FamilyError::OutOfRange("need n >= 3"));
            }
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
                .collect();
            Ok(Graph::from_predicate(pairs.len(), |u, w| {
                let (a, b) = pairs[u];
                let (c, d) = pairs[w];
                a == c || a == d || b == c || b == d
            })?)
        }
        NamedFamily::Shrikhande => {
            // Cayley graph on Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)}.
            Ok(Graph::from_predicate(16, |u, w| {
                let dx = (u % 4 + 4 - w % 4) % 4;
                let dy = (u / 4 + 4 - w / 4) % 4;
                matches!((dx, dy), (1, 0) | (3, 0) | (0, 1) | (0, 3) | (1, 1) | (3, 3))
            })?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SrgParams;

    fn petersen() -> Graph {
        // Kneser graph K(5,2): 2-subsets adjacent when disjoint.
        let pairs: Vec<(usize, usize)> = (0..5)
            .flat_map(|a| ((a + 1)..5).map(move |b| (a, b)))
            .collect();
        Graph::from_predicate(10, |u, w| {
            let (a, b) = pairs[u];
            let (c, d) = pairs[w];
            a != c && a != d && b != c && b != d
        })
        .unwrap()
    }

    #[test]
    fn diamond_has_two_triangles() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(maximal_cliques(&g), vec![vec![0, 1, 2], vec![1, 2, 3]]);
    }

    #[test]
    fn pentagon_cliques_are_edges() {
        let g = crate::graph::Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let cliques = maximal_cliques(&g);
        assert_eq!(cliques.len(), 5);
        assert!(cliques.iter().all(|c| c.len() == 2));
        assert!(regular_cliques(&g).is_empty());
    }

    #[test]
    fn lattice_column_has_nexus_one() {
        let g = generate_named(NamedFamily::SquareLattice(4)).unwrap();
        let column: Vec<usize> = (0..4).map(|i| i * 4).collect();
        assert_eq!(nexus(&g, &column).unwrap(), Some(1));
    }

    #[test]
    fn triangular_star_has_nexus_two() {
        let g = generate_named(NamedFamily::Triangular(5)).unwrap();
        // Pairs containing element 0 come first in the pair ordering.
        let star: Vec<usize> = (0..4).collect();
        assert_eq!(nexus(&g, &star).unwrap(), Some(2));
    }

    #[test]
    fn multipartite_transversal_nexus() {
        let g = generate_named(NamedFamily::CompleteMultipartite { r: 3, t: 2 }).unwrap();
        assert_eq!(nexus(&g, &[0, 2, 4]).unwrap(), Some(2));
    }

    #[test]
    fn nexus_rejects_non_cliques_and_improper_sets() {
        let g = Graph::complete(4).unwrap();
        assert_eq!(
            nexus(&g, &[0, 1, 2, 3]),
            Err(CliqueError::NotProperSubset)
        );
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(nexus(&path, &[0, 2]), Err(CliqueError::NotAClique(0, 2)));
    }

    #[test]
    fn named_family_parameters() {
        assert_eq!(
            generate_named(NamedFamily::SquareLattice(4)).unwrap().classify(),
            RegularityClass::StronglyRegular(SrgParams::new(16, 6, 2, 2))
        );
        assert_eq!(
            generate_named(NamedFamily::Triangular(5)).unwrap().classify(),
            RegularityClass::StronglyRegular(SrgParams::new(10, 6, 3, 4))
        );
        assert_eq!(
            generate_named(NamedFamily::Shrikhande).unwrap().classify(),
            RegularityClass::StronglyRegular(SrgParams::new(16, 6, 2, 2))
        );
    }

    #[test]
    fn affine_polar_cliques_match_generator_cosets() {
        // Every maximal clique of VO+(4,2) is a 2-regular 4-clique, and the
        // clique count equals the number of generator cosets (6 generators
        // with 4 cosets each), which is an independent tally.
        let g = crate::affine::build_vo_plus(2).unwrap();
        let cliques = maximal_cliques(&g);
        assert!(cliques.iter().all(|c| c.len() == 4));
        let regular = regular_cliques(&g);
        assert_eq!(regular.len(), cliques.len());
        assert!(regular.iter().all(|c| c.nexus == Some(2)));
        let coset_count: usize = crate::affine::all_generators(2)
            .iter()
            .map(|gen| 16 / gen.elements().len())
            .sum();
        assert_eq!(cliques.len(), coset_count);
    }

    #[test]
    fn shrikhande_has_no_regular_clique() {
        let g = generate_named(NamedFamily::Shrikhande).unwrap();
        assert!(regular_cliques(&g).is_empty());
        assert_eq!(verify(&g).classification, NeumaierClass::NotNeumaier);
    }

    #[test]
    fn petersen_is_not_neumaier() {
        let g = petersen();
        // Independent oracle: check the nexus of every edge directly.
        for (u, w) in g.edges() {
            assert_eq!(nexus(&g, &[u, w]).unwrap(), None);
        }
        let report = verify(&g);
        assert_eq!(report.classification, NeumaierClass::NotNeumaier);
    }

    #[test]
    fn triangular_graph_is_neumaier() {
        let g = generate_named(NamedFamily::Triangular(5)).unwrap();
        let report = verify(&g);
        assert_eq!(
            report.classification,
            NeumaierClass::Neumaier(NeumaierParams::new(10, 6, 3, 2, 4).unwrap())
        );
    }
}
