//! Canonical forms, isomorphism testing and automorphism-group facts.
//!
//! The canonical form is computed by individualization-refinement: equitable
//! partition refinement (degree counts into current cells), individualization
//! of a target cell (first smallest non-singleton, lowest vertex first), a
//! node invariant built from the refinement trace, and automorphism pruning
//! from leaf collisions. The certificate is the lexicographically smallest
//! (trace path, adjacency bit string) over the search tree, so it is
//! deterministic and invariant under relabeling of the input.

use std::collections::{HashMap, VecDeque};

use crate::bitset::VertexSet;
use crate::graph::Graph;

/// Canonical form of a graph: the packed upper-triangle adjacency bits of the
/// canonically relabeled graph, plus one permutation achieving it.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    v: usize,
    bits: Vec<u64>,
    /// `relabeling[u]` is the canonical position of source vertex `u`.
    pub relabeling: Vec<usize>,
}

impl CanonicalForm {
    pub fn vertex_count(&self) -> usize {
        self.v
    }

    pub fn bits(&self) -> &[u64] {
        &self.bits
    }

    /// The canonically relabeled graph itself.
    pub fn graph(&self, source: &Graph) -> Graph {
        source.permuted(&self.relabeling)
    }
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && self.bits == other.bits
    }
}

impl Eq for CanonicalForm {}

impl std::hash::Hash for CanonicalForm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.v.hash(state);
        self.bits.hash(state);
    }
}

/// Ordered partition of the vertices into cells.
type Cells = Vec<Vec<usize>>;

fn unit_partition(v: usize) -> Cells {
    vec![(0..v).collect()]
}

/// Refines `cells` to an equitable partition: every vertex of a cell has the
/// same number of neighbours in every (other) cell. Appends label-invariant
/// split events to `trace`.
fn refine(g: &Graph, cells: &mut Cells, trace: &mut Vec<u32>) {
    let v = g.vertex_count();
    let mut queue: VecDeque<VertexSet> = cells
        .iter()
        .map(|c| VertexSet::from_iter(v, c.iter().copied()))
        .collect();
    while let Some(splitter) = queue.pop_front() {
        let mut i = 0;
        while i < cells.len() {
            if cells[i].len() <= 1 {
                i += 1;
                continue;
            }
            let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
            for &u in &cells[i] {
                let c = splitter.intersection_count(g.row(u));
                groups.entry(c).or_default().push(u);
            }
            if groups.len() == 1 {
                i += 1;
                continue;
            }
            trace.push(i as u32);
            trace.push(groups.len() as u32);
            let replacement: Vec<Vec<usize>> = groups.into_values().collect();
            for (offset, group) in replacement.iter().enumerate() {
                trace.push(group.len() as u32);
                queue.push_back(VertexSet::from_iter(v, group.iter().copied()));
                let _ = offset;
            }
            cells.splice(i..=i, replacement.clone());
            i += replacement.len();
        }
    }
}

/// Position of the target cell: first cell of minimum size > 1.
fn target_cell(cells: &Cells) -> Option<usize> {
    let min = cells.iter().map(|c| c.len()).filter(|&l| l > 1).min()?;
    cells.iter().position(|c| c.len() == min)
}

fn is_discrete(cells: &Cells) -> bool {
    cells.iter().all(|c| c.len() == 1)
}

/// Packed upper-triangle bits of the graph relabeled so that the vertex in
/// `cells[p]` sits at position `p`.
fn certificate_bits(g: &Graph, cells: &Cells) -> Vec<u64> {
    let v = g.vertex_count();
    let pos2vert: Vec<usize> = cells.iter().map(|c| c[0]).collect();
    let nbits = v * (v - 1) / 2;
    let mut bits = vec![0u64; nbits.div_ceil(64)];
    let mut idx = 0;
    for p in 0..v {
        for q in (p + 1)..v {
            if g.has_edge(pos2vert[p], pos2vert[q]) {
                bits[idx >> 6] |= 1u64 << (idx & 63);
            }
            idx += 1;
        }
    }
    bits
}

fn labeling_from(cells: &Cells) -> Vec<usize> {
    let mut lab = vec![0usize; cells.len()];
    for (p, c) in cells.iter().enumerate() {
        lab[c[0]] = p;
    }
    lab
}

struct Best {
    inv_path: Vec<Vec<u32>>,
    bits: Vec<u64>,
    labeling: Vec<usize>,
}

struct CanonSearch<'a> {
    g: &'a Graph,
    best: Option<Best>,
    /// Leaf certificates seen, for automorphism detection.
    leaves: HashMap<Vec<u64>, Vec<usize>>,
    generators: Vec<Vec<usize>>,
    max_leaves: usize,
}

impl<'a> CanonSearch<'a> {
    fn new(g: &'a Graph) -> Self {
        CanonSearch {
            g,
            best: None,
            leaves: HashMap::new(),
            generators: Vec::new(),
            max_leaves: 512,
        }
    }

    fn run(mut self) -> CanonicalForm {
        let v = self.g.vertex_count();
        let mut cells = unit_partition(v);
        let mut path = Vec::new();
        self.node(&mut cells, &mut path, &[]);
        let best = self.best.expect("search visits at least one leaf");
        CanonicalForm {
            v,
            bits: best.bits,
            relabeling: best.labeling,
        }
    }

    fn node(&mut self, cells: &mut Cells, path: &mut Vec<Vec<u32>>, prefix: &[usize]) {
        let mut trace = Vec::new();
        refine(self.g, cells, &mut trace);
        let depth = path.len();
        if let Some(best) = &self.best {
            match trace.cmp(&best.inv_path[depth.min(best.inv_path.len() - 1)]) {
                std::cmp::Ordering::Greater => return,
                std::cmp::Ordering::Less => self.best = None,
                std::cmp::Ordering::Equal => {
                    if depth >= best.inv_path.len() {
                        // Deeper than the best leaf with an equal prefix:
                        // the longer path loses.
                        return;
                    }
                }
            }
        }
        path.push(trace);
        if is_discrete(cells) {
            self.leaf(cells, path);
        } else {
            let t = target_cell(cells).expect("non-discrete partition has a splittable cell");
            let candidates = cells[t].clone();
            let mut done: Vec<usize> = Vec::new();
            for u in candidates {
                if self.in_processed_orbit(u, &done, prefix) {
                    continue;
                }
                done.push(u);
                let mut child = Vec::with_capacity(cells.len() + 1);
                for (i, c) in cells.iter().enumerate() {
                    if i == t {
                        child.push(vec![u]);
                        child.push(c.iter().copied().filter(|&x| x != u).collect());
                    } else {
                        child.push(c.clone());
                    }
                }
                let mut next_prefix = prefix.to_vec();
                next_prefix.push(u);
                self.node(&mut child, path, &next_prefix);
            }
        }
        path.pop();
    }

    fn leaf(&mut self, cells: &Cells, path: &[Vec<u32>]) {
        let bits = certificate_bits(self.g, cells);
        let labeling = labeling_from(cells);
        if let Some(previous) = self.leaves.get(&bits) {
            // Same certificate from two labelings: their difference is an
            // automorphism of the graph.
            let mut inv_prev = vec![0usize; labeling.len()];
            for (u, &p) in previous.iter().enumerate() {
                inv_prev[p] = u;
            }
            let auto: Vec<usize> = labeling.iter().map(|&p| inv_prev[p]).collect();
            if auto.iter().enumerate().any(|(a, &b)| a != b) {
                debug_assert!(is_automorphism(self.g, &auto));
                self.generators.push(auto);
            }
        } else if self.leaves.len() < self.max_leaves {
            self.leaves.insert(bits.clone(), labeling.clone());
        }
        let replace = match &self.best {
            None => true,
            Some(best) => {
                debug_assert_eq!(path.len(), best.inv_path.len());
                bits < best.bits
            }
        };
        if replace {
            self.best = Some(Best {
                inv_path: path.to_vec(),
                bits,
                labeling,
            });
        }
    }

    /// True when a discovered automorphism fixing `prefix` pointwise maps `u`
    /// into the orbit of an already-processed sibling candidate.
    fn in_processed_orbit(&self, u: usize, done: &[usize], prefix: &[usize]) -> bool {
        if done.is_empty() || self.generators.is_empty() {
            return false;
        }
        let v = self.g.vertex_count();
        let fixing: Vec<&Vec<usize>> = self
            .generators
            .iter()
            .filter(|gen| prefix.iter().all(|&b| gen[b] == b))
            .collect();
        if fixing.is_empty() {
            return false;
        }
        // Orbit of u under the fixing generators, by closure.
        let mut orbit = VertexSet::empty(v);
        orbit.insert(u);
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            for gen in &fixing {
                let y = gen[x];
                if !orbit.contains(y) {
                    orbit.insert(y);
                    stack.push(y);
                }
            }
        }
        done.iter().any(|&d| orbit.contains(d))
    }
}

fn is_automorphism(g: &Graph, perm: &[usize]) -> bool {
    let v = g.vertex_count();
    (0..v).all(|u| ((u + 1)..v).all(|w| g.has_edge(u, w) == g.has_edge(perm[u], perm[w])))
}

/// Canonical form; deterministic and invariant under input relabeling.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    CanonSearch::new(g).run()
}

/// Isomorphism test. `Some(witness)` maps vertices of `g1` to vertices of
/// `g2` edge-exactly; `None` when the graphs are not isomorphic.
pub fn is_isomorphic(g1: &Graph, g2: &Graph) -> Option<Vec<usize>> {
    if g1.vertex_count() != g2.vertex_count() {
        return None;
    }
    let mut d1 = g1.degree_sequence();
    let mut d2 = g2.degree_sequence();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return None;
    }
    let c1 = canonical_form(g1);
    let c2 = canonical_form(g2);
    if c1 != c2 {
        return None;
    }
    // witness = relabel into canonical position, then back out of g2's.
    let mut inv2 = vec![0usize; g2.vertex_count()];
    for (u, &p) in c2.relabeling.iter().enumerate() {
        inv2[p] = u;
    }
    let witness: Vec<usize> = c1.relabeling.iter().map(|&p| inv2[p]).collect();
    debug_assert!((0..g1.vertex_count()).all(|u| {
        ((u + 1)..g1.vertex_count()).all(|w| g1.has_edge(u, w) == g2.has_edge(witness[u], witness[w]))
    }));
    Some(witness)
}

/// Finds one automorphism of `g` satisfying `constraints` (source, image)
/// pairs, or `None`. Backtracking over vertex images with adjacency
/// consistency and refinement-cell compatibility.
fn find_constrained_automorphism(
    g: &Graph,
    constraints: &[(usize, usize)],
) -> Option<Vec<usize>> {
    let v = g.vertex_count();
    // Colour classes from the equitable refinement of the trivial partition;
    // any automorphism preserves them.
    let mut cells = unit_partition(v);
    refine(g, &mut cells, &mut Vec::new());
    let mut colour = vec![0usize; v];
    for (i, c) in cells.iter().enumerate() {
        for &u in c {
            colour[u] = i;
        }
    }
    let mut map: Vec<Option<usize>> = vec![None; v];
    let mut used = VertexSet::empty(v);
    for &(a, b) in constraints {
        if colour[a] != colour[b] {
            return None;
        }
        match map[a] {
            Some(x) if x != b => return None,
            _ => {}
        }
        if map[a].is_none() {
            if used.contains(b) {
                return None;
            }
            map[a] = Some(b);
            used.insert(b);
        }
    }
    // Consistency among the seeded pairs.
    for &(a, _) in constraints {
        for &(c, _) in constraints {
            if g.has_edge(a, c) != g.has_edge(map[a].unwrap(), map[c].unwrap()) {
                return None;
            }
        }
    }
    fn extend(
        g: &Graph,
        colour: &[usize],
        map: &mut Vec<Option<usize>>,
        used: &mut VertexSet,
    ) -> bool {
        let v = g.vertex_count();
        // Most-constrained source vertex next: maximal number of mapped
        // neighbours, lowest index on ties.
        let next = (0..v)
            .filter(|&u| map[u].is_none())
            .max_by_key(|&u| {
                let mapped = g.row(u).iter().filter(|&w| map[w].is_some()).count();
                (mapped, std::cmp::Reverse(u))
            });
        let Some(u) = next else {
            return true;
        };
        for w in 0..v {
            if used.contains(w) || colour[w] != colour[u] {
                continue;
            }
            let ok = (0..v).all(|a| match map[a] {
                Some(b) => g.has_edge(u, a) == g.has_edge(w, b),
                None => true,
            });
            if !ok {
                continue;
            }
            map[u] = Some(w);
            used.insert(w);
            if extend(g, colour, map, used) {
                return true;
            }
            map[u] = None;
            used.remove(w);
        }
        false
    }
    if extend(g, &colour, &mut map, &mut used) {
        Some(map.into_iter().map(|m| m.unwrap()).collect())
    } else {
        None
    }
}

/// Cells of the equitable refinement after individualizing `prefix` in order.
fn refined_cells_with_prefix(g: &Graph, prefix: &[usize]) -> Cells {
    let v = g.vertex_count();
    let mut cells: Cells = Vec::new();
    for &b in prefix {
        cells.push(vec![b]);
    }
    let rest: Vec<usize> = (0..v).filter(|u| !prefix.contains(u)).collect();
    if !rest.is_empty() {
        cells.push(rest);
    }
    refine(g, &mut cells, &mut Vec::new());
    cells
}

/// Order of the automorphism group, by orbit counting along a stabilizer
/// chain: fix base points one at a time, each level contributing the size of
/// the base point's orbit under the pointwise stabilizer of the earlier ones.
pub fn automorphism_count(g: &Graph) -> u64 {
    stabilizer_chain(g).0
}

/// Generators for the automorphism group (the union of the transversal
/// elements found along the stabilizer chain).
pub fn automorphism_generators(g: &Graph) -> Vec<Vec<usize>> {
    stabilizer_chain(g).1
}

fn stabilizer_chain(g: &Graph) -> (u64, Vec<Vec<usize>>) {
    let mut prefix: Vec<usize> = Vec::new();
    let mut order: u64 = 1;
    let mut gens: Vec<Vec<usize>> = Vec::new();
    loop {
        let cells = refined_cells_with_prefix(g, &prefix);
        let Some(target) = cells.iter().find(|c| c.len() > 1) else {
            return (order, gens);
        };
        let base = target[0];
        let mut orbit = 1u64; // base itself, via the identity
        for &u in &target[1..] {
            let mut constraints: Vec<(usize, usize)> =
                prefix.iter().map(|&b| (b, b)).collect();
            constraints.push((base, u));
            if let Some(auto) = find_constrained_automorphism(g, &constraints) {
                orbit += 1;
                gens.push(auto);
            }
        }
        order *= orbit;
        prefix.push(base);
    }
}

/// True when the automorphism group is transitive on the vertices.
pub fn is_vertex_transitive(g: &Graph) -> bool {
    let v = g.vertex_count();
    if v <= 1 {
        return true;
    }
    let cells = refined_cells_with_prefix(g, &[]);
    if cells.len() > 1 {
        // Refinement classes are automorphism-invariant, so more than one
        // cell rules transitivity out immediately.
        return false;
    }
    (1..v).all(|u| find_constrained_automorphism(g, &[(0, u)]).is_some())
}
