//! Edge switching between vertex sets, the two switching constructions of
//! strictly Neumaier graphs over `VO⁺(2e,2)`, and exhaustive exploration of
//! short switching sequences.

use std::collections::HashMap;

use crate::affine::{build_vo_plus, vo_plus_params, GeometryError};
use crate::bitset::VertexSet;
use crate::cliques::{nexus, regular_cliques, CliqueInfo};
use crate::graph::Graph;
use crate::iso::canonical_form;
use crate::params::NeumaierParams;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SwitchError {
    #[error("switching sides overlap")]
    OverlappingSides,
    #[error("switching sides must be nonempty")]
    EmptySide,
    #[error("half-dimension e must be at least 2, got {0}")]
    HalfDimensionTooSmall(usize),
    #[error("exploration depth must be at least 1")]
    ZeroDepth,
    #[error("exploration requires an edge-regular start graph")]
    NotEdgeRegular,
    #[error("construction property violated: {0}")]
    Property(&'static str),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// One switching step: complement all adjacencies between two disjoint
/// nonempty vertex sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchingStep {
    side_a: VertexSet,
    side_b: VertexSet,
}

impl SwitchingStep {
    pub fn new(side_a: VertexSet, side_b: VertexSet) -> Result<Self, SwitchError> {
        if side_a.is_empty() || side_b.is_empty() {
            return Err(SwitchError::EmptySide);
        }
        if side_a.intersects(&side_b) {
            return Err(SwitchError::OverlappingSides);
        }
        Ok(SwitchingStep { side_a, side_b })
    }

    pub fn from_slices(v: usize, a: &[usize], b: &[usize]) -> Result<Self, SwitchError> {
        Self::new(
            VertexSet::from_iter(v, a.iter().copied()),
            VertexSet::from_iter(v, b.iter().copied()),
        )
    }

    pub fn side_a(&self) -> &VertexSet {
        &self.side_a
    }

    pub fn side_b(&self) -> &VertexSet {
        &self.side_b
    }

    /// Degrees survive the switch exactly when every side-a vertex is
    /// adjacent to half of side b and vice versa.
    pub fn preserves_degrees(&self, g: &Graph) -> bool {
        let half_b = self.side_b.count() / 2;
        let half_a = self.side_a.count() / 2;
        self.side_b.count().is_multiple_of(2)
            && self.side_a.count().is_multiple_of(2)
            && self
                .side_a
                .iter()
                .all(|a| g.row(a).intersection_count(&self.side_b) == half_b)
            && self
                .side_b
                .iter()
                .all(|b| g.row(b).intersection_count(&self.side_a) == half_a)
    }
}

/// Complements the adjacency between the two sides; everything else is
/// untouched. An involution: switching twice restores the input.
pub fn switch(g: &Graph, step: &SwitchingStep) -> Graph {
    let mut h = g.clone();
    for a in step.side_a.iter() {
        h.xor_row(a, &step.side_b);
    }
    for b in step.side_b.iter() {
        h.xor_row(b, &step.side_a);
    }
    h
}

/// Which of the two mixed half-cliques produced by the first switch of the
/// second construction is switched against the third clique.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Gamma2Variant {
    /// The mixed clique avoiding the zero vector.
    #[default]
    A,
    /// The mixed clique containing the zero vector.
    B,
}

/// A switching construction: the base graph, the steps applied, and the result.
#[derive(Debug, Clone)]
pub struct Construction {
    pub base: Graph,
    pub steps: Vec<SwitchingStep>,
    pub graph: Graph,
}

/// Vertices of the subgraph all switched edges stay inside: coordinates
/// `x₂, x₄, …, x_{2e−4}` all zero (`16·2^{e−2}` vertices).
pub fn switching_region(e: usize) -> VertexSet {
    let v = 1usize << (2 * e);
    let mut zero_mask = 0usize;
    for j in 1..=e.saturating_sub(2) {
        zero_mask |= 1 << (2 * j - 1);
    }
    VertexSet::from_iter(v, (0..v).filter(|idx| idx & zero_mask == 0))
}

/// Vertex set of a coordinate pattern: bits in `zero_mask` forced to 0,
/// bits in `one_mask` forced to 1, everything else free.
fn pattern(v: usize, zero_mask: usize, one_mask: usize) -> Vec<usize> {
    (0..v)
        .filter(|idx| idx & zero_mask == 0 && idx & one_mask == one_mask)
        .collect()
}

fn bottom_row_mask(e: usize) -> usize {
    (0..e).map(|j| 1usize << (2 * j + 1)).sum()
}

struct StarSets {
    v: usize,
    /// Generator with zero bottom row.
    w1: Vec<usize>,
    /// Generator with bottom row zero except the last column.
    w2: Vec<usize>,
    /// Shift hitting the next-to-last bottom coordinate.
    shift1: usize,
    /// Shift hitting the last bottom coordinate.
    shift2: usize,
    /// Third clique for the second construction.
    c: Vec<usize>,
}

fn star_sets(e: usize) -> Result<StarSets, SwitchError> {
    if e < 2 {
        return Err(SwitchError::HalfDimensionTooSmall(e));
    }
    let v = 1usize << (2 * e);
    let bottom = bottom_row_mask(e);
    let x_last_top = 1usize << (2 * e - 2); // coordinate x_{2e-1}
    let x_last_bottom = 1usize << (2 * e - 1); // coordinate x_{2e}
    let x_next_bottom = 1usize << (2 * e - 3); // coordinate x_{2e-2}
    // C forces the bottom row to 0…010 up to a free last entry, and a zero
    // in the last top coordinate.
    let c_zero = (bottom & !x_last_bottom & !x_next_bottom) | x_last_top;
    Ok(StarSets {
        v,
        w1: pattern(v, bottom, 0),
        w2: pattern(v, (bottom & !x_last_bottom) | x_last_top, 0),
        shift1: x_next_bottom,
        shift2: x_last_bottom,
        c: pattern(v, c_zero, x_next_bottom),
    })
}

fn shifted(set: &[usize], shift: usize) -> Vec<usize> {
    let mut out: Vec<usize> = set.iter().map(|&x| x ^ shift).collect();
    out.sort();
    out
}

fn step_between(v: usize, a: &[usize], b: &[usize]) -> Result<SwitchingStep, SwitchError> {
    SwitchingStep::from_slices(v, a, b)
}

/// First switching construction: switch the generator-clique pair
/// `(W₁, shift+W₁)`, then `(W₂, shift+W₂)`, for the two generators through a
/// common totally singular hyperplane.
pub fn construct_gamma1_detailed(e: usize) -> Result<Construction, SwitchError> {
    let sets = star_sets(e)?;
    let base = build_vo_plus(e)?;
    let steps = vec![
        step_between(sets.v, &sets.w1, &shifted(&sets.w1, sets.shift1))?,
        step_between(sets.v, &sets.w2, &shifted(&sets.w2, sets.shift1))?,
    ];
    apply_construction(base, steps)
}

pub fn construct_gamma1(e: usize) -> Result<Graph, SwitchError> {
    construct_gamma1_detailed(e).map(|c| c.graph)
}

/// Second switching construction: switch `(W₁, shift+W₁)`, split both cliques
/// in half along the last top coordinate, and switch one of the two mixed
/// half-cliques against the disjoint clique `C`.
pub fn construct_gamma2_detailed(
    e: usize,
    variant: Gamma2Variant,
) -> Result<Construction, SwitchError> {
    let sets = star_sets(e)?;
    let base = build_vo_plus(e)?;
    let x_last_top = 1usize << (2 * e - 2);
    let b_side = shifted(&sets.w1, sets.shift2);
    let half = |set: &[usize], bit: usize| -> Vec<usize> {
        set.iter()
            .copied()
            .filter(|&x| (x & x_last_top != 0) == (bit == 1))
            .collect()
    };
    // After the first switch the two mixed halves induce cliques; the paper
    // construction switches one of them against C.
    let (a_half, b_half) = match variant {
        Gamma2Variant::A => (half(&sets.w1, 1), half(&b_side, 0)),
        Gamma2Variant::B => (half(&sets.w1, 0), half(&b_side, 1)),
    };
    let mut mixed: Vec<usize> = a_half.into_iter().chain(b_half).collect();
    mixed.sort();
    let steps = vec![
        step_between(sets.v, &sets.w1, &b_side)?,
        step_between(sets.v, &mixed, &sets.c)?,
    ];
    apply_construction(base, steps)
}

pub fn construct_gamma2(e: usize, variant: Gamma2Variant) -> Result<Graph, SwitchError> {
    construct_gamma2_detailed(e, variant).map(|c| c.graph)
}

fn apply_construction(base: Graph, steps: Vec<SwitchingStep>) -> Result<Construction, SwitchError> {
    let mut g = base.clone();
    for step in &steps {
        if !step.preserves_degrees(&g) {
            return Err(SwitchError::Property(
                "switching side not adjacent to half of the opposite side",
            ));
        }
        g = switch(&g, step);
    }
    Ok(Construction {
        base,
        steps,
        graph: g,
    })
}

/// What `check_construction_theorem` verified.
#[derive(Debug, Clone)]
pub struct ConstructionReport {
    pub params: NeumaierParams,
    pub regular_clique: CliqueInfo,
    pub mu_support: Vec<usize>,
}

/// Expected Neumaier parameters of both constructions at half-dimension `e`:
/// `(2^{2e}, (2^{e−1}+1)(2^e−1), 2(2^{e−2}+1)(2^{e−1}−1); 2^{e−1}, 2^e)`.
pub fn expected_params(e: usize) -> NeumaierParams {
    let srg = vo_plus_params(e);
    NeumaierParams::new(srg.v, srg.k, srg.lambda, 1 << (e - 1), 1 << e)
        .expect("construction parameters satisfy the counting identities")
}

/// Verifies the construction theorem for a switched graph: edge-regular with
/// the expected parameters, contains a `2^{e−1}`-regular `2^e`-clique, is not
/// strongly regular, and its non-adjacent common-neighbour counts are exactly
/// `{μ−2^{e−1}, μ, μ+2^{e−1}}`. Errors name the violated property.
pub fn check_construction_theorem(g: &Graph, e: usize) -> Result<ConstructionReport, SwitchError> {
    let expected = expected_params(e);
    let class = g.classify();
    if class.erg_params() != Some(expected.erg()) {
        return Err(SwitchError::Property("not edge-regular with the expected parameters"));
    }
    let regular_clique = witness_clique(g, e).ok_or(SwitchError::Property(
        "no regular clique with the expected size and nexus",
    ))?;
    if class.is_strongly_regular() {
        return Err(SwitchError::Property("strongly regular"));
    }
    let mu = vo_plus_params(e).mu;
    let half = 1usize << (e - 1);
    let mu_support = g.mu_support();
    if mu_support != vec![mu - half, mu, mu + half] {
        return Err(SwitchError::Property("unexpected mu support"));
    }
    Ok(ConstructionReport {
        params: expected,
        regular_clique,
        mu_support,
    })
}

/// The known witness cliques of the two constructions: the zero-bottom-row
/// generator, and the half-shifted pattern left intact by the second
/// construction. Falls back to a full regular-clique scan.
fn witness_clique(g: &Graph, e: usize) -> Option<CliqueInfo> {
    let Ok(sets) = star_sets(e) else {
        return None;
    };
    let m = 1usize << (e - 1);
    let s = 1usize << e;
    let bottom = bottom_row_mask(e);
    let x_last_top = 1usize << (2 * e - 2);
    let alt = pattern(
        sets.v,
        bottom & !(1 << (2 * e - 1)) & !sets.shift1,
        sets.shift1 | x_last_top,
    );
    for members in [sets.w1.clone(), alt] {
        if members.len() != s {
            continue;
        }
        if let Ok(Some(n)) = nexus(g, &members) {
            if n == m {
                return Some(CliqueInfo {
                    members,
                    nexus: Some(n),
                });
            }
        }
    }
    regular_cliques(g)
        .into_iter()
        .find(|c| c.size() == s && c.nexus == Some(m))
}

/// XOR translations `x ↦ x ^ a` that are automorphisms of `g`, one generator
/// per bit position. Nonempty only for graphs whose vertex set carries the
/// relevant linear structure, e.g. the affine polar graphs.
fn xor_translation_generators(g: &Graph) -> Vec<usize> {
    let v = g.vertex_count();
    if !v.is_power_of_two() {
        return Vec::new();
    }
    let mut gens = Vec::new();
    'bits: for shift in (0..v.trailing_zeros()).map(|b| 1usize << b) {
        for u in 0..v {
            for w in (u + 1)..v {
                if g.has_edge(u, w) != g.has_edge(u ^ shift, w ^ shift) {
                    continue 'bits;
                }
            }
        }
        gens.push(shift);
    }
    gens
}

type SidePair = (Vec<usize>, Vec<usize>);

fn normalize_pair(a: &[usize], b: &[usize]) -> SidePair {
    if a <= b {
        (a.to_vec(), b.to_vec())
    } else {
        (b.to_vec(), a.to_vec())
    }
}

/// Candidate switching sides of a graph: its regular maximal cliques plus any
/// extra sides carried over from a previous switch.
fn candidate_pairs(g: &Graph, extra_sides: &[Vec<usize>]) -> Vec<SidePair> {
    let v = g.vertex_count();
    let mut sides: Vec<Vec<usize>> = regular_cliques(g).into_iter().map(|c| c.members).collect();
    for s in extra_sides {
        if !sides.contains(s) {
            sides.push(s.clone());
        }
    }
    sides.sort();
    sides.dedup();
    let mut pairs = Vec::new();
    for i in 0..sides.len() {
        let set_i = VertexSet::from_iter(v, sides[i].iter().copied());
        for j in (i + 1)..sides.len() {
            if !sides[j].iter().any(|&x| set_i.contains(x)) {
                pairs.push(normalize_pair(&sides[i], &sides[j]));
            }
        }
    }
    pairs.sort();
    pairs.dedup();
    pairs
}

/// Orbit representatives of side pairs under the XOR translations.
fn quotient_by_translations(pairs: Vec<SidePair>, shifts: &[usize]) -> Vec<SidePair> {
    if shifts.is_empty() {
        return pairs;
    }
    let mut seen: std::collections::HashSet<SidePair> = Default::default();
    let mut reps = Vec::new();
    for pair in pairs {
        if seen.contains(&pair) {
            continue;
        }
        reps.push(pair.clone());
        // Close the orbit under the generated translation group.
        let mut stack = vec![pair];
        while let Some(p) = stack.pop() {
            if !seen.insert(p.clone()) {
                continue;
            }
            for &t in shifts {
                let qa = shifted(&p.0, t);
                let qb = shifted(&p.1, t);
                stack.push(normalize_pair(&qa, &qb));
            }
        }
    }
    reps
}

/// Checks "strictly Neumaier with exactly these edge-regular parameters"
/// with early exits; used to filter explored switches.
fn strictly_neumaier_with(g: &Graph, params: &crate::graph::ErgParams) -> bool {
    let v = g.vertex_count();
    let mut mu_values: Option<usize> = None;
    let mut mu_varies = false;
    for u in 0..v {
        for w in (u + 1)..v {
            let c = g.common_neighbours(u, w);
            if g.has_edge(u, w) {
                if c != params.lambda {
                    return false;
                }
            } else {
                match mu_values {
                    None => mu_values = Some(c),
                    Some(x) if x != c => mu_varies = true,
                    _ => {}
                }
            }
        }
    }
    if !mu_varies {
        return false; // strongly regular (or complete)
    }
    !regular_cliques(g).is_empty()
}

/// Splits of a just-switched clique pair into mixed halves that induce
/// regular cliques of the switched graph; these become candidate sides for
/// the next switch.
fn half_union_sides(h: &Graph, a: &[usize], b: &[usize]) -> Vec<Vec<usize>> {
    let n = a.len();
    if n != b.len() || !n.is_multiple_of(2) || n > 16 {
        return Vec::new();
    }
    let half = n / 2;
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize != half {
            continue;
        }
        let a_half: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| a[i]).collect();
        // Partner half: vertices of b adjacent (in h) to all of a_half.
        let partner: Vec<usize> = b
            .iter()
            .copied()
            .filter(|&x| a_half.iter().all(|&y| h.has_edge(x, y)))
            .collect();
        if partner.len() != half {
            continue;
        }
        let mut union: Vec<usize> = a_half.iter().copied().chain(partner.iter().copied()).collect();
        union.sort();
        let is_clique = union
            .iter()
            .enumerate()
            .all(|(i, &x)| union[i + 1..].iter().all(|&y| h.has_edge(x, y)));
        if is_clique && matches!(nexus(h, &union), Ok(Some(_))) && !out.contains(&union) {
            out.push(union);
        }
    }
    out
}

/// Applies every sequence of at most `depth` switchings between disjoint
/// regular cliques (plus the mixed half-cliques a switch creates), keeps the
/// results that are strictly Neumaier with the start graph's edge-regular
/// parameters, and returns one canonical representative per isomorphism
/// class, in certificate order.
pub fn explore_switchings(g: &Graph, depth: usize) -> Result<Vec<Graph>, SwitchError> {
    if depth == 0 {
        return Err(SwitchError::ZeroDepth);
    }
    let Some(params) = g.classify().erg_params() else {
        return Err(SwitchError::NotEdgeRegular);
    };
    let translations = xor_translation_generators(g);

    struct Node {
        graph: Graph,
        extra_sides: Vec<Vec<usize>>,
    }

    let mut results: HashMap<Vec<u64>, Graph> = HashMap::new();
    let mut frontier: Vec<Node> = vec![Node {
        graph: g.clone(),
        extra_sides: Vec::new(),
    }];
    for level in 1..=depth {
        let mut next: HashMap<Vec<u64>, Node> = HashMap::new();
        for node in &frontier {
            let mut pairs = candidate_pairs(&node.graph, &node.extra_sides);
            if level == 1 {
                pairs = quotient_by_translations(pairs, &translations);
            }
            for (a, b) in pairs {
                let step = SwitchingStep::from_slices(node.graph.vertex_count(), &a, &b)
                    .expect("candidate sides are disjoint and nonempty");
                if !step.preserves_degrees(&node.graph) {
                    continue;
                }
                let h = switch(&node.graph, &step);
                if strictly_neumaier_with(&h, &params) {
                    let canon = canonical_form(&h);
                    results
                        .entry(canon.bits().to_vec())
                        .or_insert_with(|| canon.graph(&h));
                }
                if level < depth {
                    let canon = canonical_form(&h);
                    let key = canon.bits().to_vec();
                    let entry = next.entry(key).or_insert_with(|| Node {
                        graph: canon.graph(&h),
                        extra_sides: Vec::new(),
                    });
                    // Translate the half-union sides into the representative's
                    // labeling before recording them.
                    let sides = half_union_sides(&h, &a, &b);
                    for side in sides {
                        let mapped: Vec<usize> = {
                            let mut m: Vec<usize> =
                                side.iter().map(|&x| canon.relabeling[x]).collect();
                            m.sort();
                            m
                        };
                        if !entry.extra_sides.contains(&mapped) {
                            entry.extra_sides.push(mapped);
                        }
                    }
                }
            }
        }
        let mut sorted: Vec<(Vec<u64>, Node)> = next.into_iter().collect();
        sorted.sort_by(|x, y| x.0.cmp(&y.0));
        frontier = sorted.into_iter().map(|(_, n)| n).collect();
    }
    let mut out: Vec<(Vec<u64>, Graph)> = results.into_iter().collect();
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out.into_iter().map(|(_, g)| g).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliques::verify;
    use crate::graph::RegularityClass;

    #[test]
    fn switch_is_an_involution() {
        let g = Graph::from_edges(8, [(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (0, 7), (3, 6)])
            .unwrap();
        let step = SwitchingStep::from_slices(8, &[0, 1, 2], &[4, 5, 7]).unwrap();
        let once = switch(&g, &step);
        assert_ne!(once, g);
        assert_eq!(switch(&once, &step), g);
    }

    #[test]
    fn single_vertex_side_complements_its_neighbourhood() {
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (3, 4)]).unwrap();
        let step = SwitchingStep::from_slices(5, &[0], &[1, 2, 3, 4]).unwrap();
        let h = switch(&g, &step);
        assert_eq!(h.row(0).to_vec(), vec![3, 4]);
        assert!(h.has_edge(3, 4));
    }

    #[test]
    fn overlapping_sides_rejected() {
        assert_eq!(
            SwitchingStep::from_slices(4, &[0, 1], &[1, 2]).unwrap_err(),
            SwitchError::OverlappingSides
        );
        assert_eq!(
            SwitchingStep::from_slices(4, &[], &[1]).unwrap_err(),
            SwitchError::EmptySide
        );
    }

    #[test]
    fn gamma1_smallest_case() {
        let g = construct_gamma1(2).unwrap();
        let report = verify(&g);
        assert!(report.classification.is_strictly_neumaier());
        assert_eq!(
            report.classification.params().unwrap(),
            NeumaierParams::new(16, 9, 4, 2, 4).unwrap()
        );
        assert_eq!(report.mu_support, vec![4, 6, 8]);
    }

    #[test]
    fn gamma1_theorem_check_small() {
        for e in [2usize, 3] {
            let g = construct_gamma1(e).unwrap();
            let report = check_construction_theorem(&g, e).unwrap();
            assert_eq!(report.params, expected_params(e));
        }
    }

    #[test]
    fn gamma2_variants_small() {
        for variant in [Gamma2Variant::A, Gamma2Variant::B] {
            let g = construct_gamma2(2, variant).unwrap();
            check_construction_theorem(&g, 2).unwrap();
        }
    }

    #[test]
    fn unswitched_graph_fails_check_as_strongly_regular() {
        let g = build_vo_plus(2).unwrap();
        assert_eq!(
            check_construction_theorem(&g, 2).unwrap_err(),
            SwitchError::Property("strongly regular")
        );
    }

    #[test]
    fn first_switch_gives_srg_not_isomorphic_to_base() {
        // Switching only (W1, shift+W1) at e=2 yields srg(16,9,4,6) again,
        // but a different graph: the complement of the Shrikhande graph.
        let sets = star_sets(2).unwrap();
        let base = build_vo_plus(2).unwrap();
        let step = step_between(16, &sets.w1, &shifted(&sets.w1, sets.shift1)).unwrap();
        let h = switch(&base, &step);
        assert_eq!(
            h.classify(),
            RegularityClass::StronglyRegular(crate::graph::SrgParams::new(16, 9, 4, 6))
        );
        assert!(crate::iso::is_isomorphic(&h, &base).is_none());
        let shrikhande =
            crate::cliques::generate_named(crate::cliques::NamedFamily::Shrikhande).unwrap();
        assert!(crate::iso::is_isomorphic(&h, &shrikhande.complement()).is_some());
    }

    #[test]
    fn switched_edges_confined_to_region() {
        for e in [2usize, 3] {
            let c = construct_gamma1_detailed(e).unwrap();
            let region = switching_region(e);
            for u in 0..c.base.vertex_count() {
                let mut diff = c.base.row(u).clone();
                diff.xor_in_place(c.graph.row(u));
                if !diff.is_empty() {
                    assert!(region.contains(u));
                    assert!(diff.iter().all(|w| region.contains(w)));
                }
            }
        }
    }

    #[test]
    fn zero_depth_exploration_rejected() {
        let g = build_vo_plus(2).unwrap();
        assert_eq!(
            explore_switchings(&g, 0).unwrap_err(),
            SwitchError::ZeroDepth
        );
    }
}
