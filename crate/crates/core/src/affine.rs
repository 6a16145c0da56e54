//! The binary affine polar graphs `VO⁺(2e,2)`: the hyperbolic quadratic form
//! over GF(2)^{2e}, its generators (maximal totally singular subspaces),
//! cosets, spreads, and the graph construction itself.

use crate::bitset::VertexSet;
use crate::cliques::{nexus, CliqueInfo};
use crate::graph::{Graph, GraphError};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("half-dimension e must be at least 2, got {0}")]
    HalfDimensionTooSmall(usize),
    #[error("point has wrong dimension: expected 2e = {expected} bits")]
    DimensionMismatch { expected: usize },
    #[error("basis is linearly dependent")]
    DependentBasis,
    #[error("subspace is not totally singular")]
    NotTotallySingular,
    #[error("expected a subspace of dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("subspace is not a generator (maximal totally singular)")]
    NotAGenerator,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A point of GF(2)^{2e}, packed little-endian: coordinate `x_i` (1-based)
/// is bit `i-1`. Seen as a 2×e matrix, column `j` holds `x_{2j-1}` over
/// `x_{2j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GF2Point {
    bits: u32,
    e: usize,
}

impl GF2Point {
    pub fn new(bits: u32, e: usize) -> Result<Self, GeometryError> {
        if e < 2 {
            return Err(GeometryError::HalfDimensionTooSmall(e));
        }
        if bits >> (2 * e) != 0 {
            return Err(GeometryError::DimensionMismatch { expected: 2 * e });
        }
        Ok(GF2Point { bits, e })
    }

    pub fn zero(e: usize) -> Self {
        GF2Point { bits: 0, e }
    }

    /// Builds a point from its coordinates `(x₁, …, x_{2e})`.
    pub fn from_coords(coords: &[u8]) -> Result<Self, GeometryError> {
        let e = coords.len() / 2;
        if !coords.len().is_multiple_of(2) || e < 2 {
            return Err(GeometryError::HalfDimensionTooSmall(e));
        }
        let mut bits = 0u32;
        for (i, &c) in coords.iter().enumerate() {
            if c & 1 == 1 {
                bits |= 1 << i;
            }
        }
        GF2Point::new(bits, e)
    }

    #[inline]
    pub fn bits(&self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn e(&self) -> usize {
        self.e
    }

    /// Coordinate `x_i`, 1-based.
    #[inline]
    pub fn coord(&self, i: usize) -> u8 {
        debug_assert!((1..=2 * self.e).contains(&i));
        ((self.bits >> (i - 1)) & 1) as u8
    }

    /// Vertex index of this point in `build_vo_plus(e)`.
    #[inline]
    pub fn index(&self) -> usize {
        self.bits as usize
    }

    #[inline]
    pub fn add(&self, other: &GF2Point) -> GF2Point {
        debug_assert_eq!(self.e, other.e);
        GF2Point {
            bits: self.bits ^ other.bits,
            e: self.e,
        }
    }

    /// The 2×e matrix view, row-major: `[[x₁, x₃, …], [x₂, x₄, …]]`.
    pub fn matrix_view(&self) -> [Vec<u8>; 2] {
        let top = (1..=self.e).map(|j| self.coord(2 * j - 1)).collect();
        let bottom = (1..=self.e).map(|j| self.coord(2 * j)).collect();
        [top, bottom]
    }
}

/// Hyperbolic quadratic form `Q(x) = x₁x₂ + x₃x₄ + … + x_{2e−1}x_{2e}` mod 2.
#[inline]
pub fn quadratic_form(p: &GF2Point) -> u8 {
    // Pair bit 2j with bit 2j+1: AND the word with itself shifted right once,
    // keep even positions, and count parity.
    const EVEN_POSITIONS: u32 = 0x5555_5555;
    ((p.bits & (p.bits >> 1) & EVEN_POSITIONS).count_ones() & 1) as u8
}

/// Bilinear form associated with Q: `B(x,y) = Q(x+y) + Q(x) + Q(y)`.
#[inline]
pub fn bilinear_form(x: &GF2Point, y: &GF2Point) -> u8 {
    (quadratic_form(&x.add(y)) + quadratic_form(x) + quadratic_form(y)) & 1
}

/// A linear subspace of GF(2)^{2e} given by an independent basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: Vec<GF2Point>,
    e: usize,
}

impl Subspace {
    pub fn new(basis: Vec<GF2Point>, e: usize) -> Result<Self, GeometryError> {
        for p in &basis {
            if p.e() != e {
                return Err(GeometryError::DimensionMismatch { expected: 2 * e });
            }
        }
        // Gaussian elimination over GF(2) to confirm independence.
        let mut rows: Vec<u32> = basis.iter().map(|p| p.bits()).collect();
        let mut rank = 0;
        for bit in (0..2 * e).rev() {
            let Some(pos) = (rank..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) else {
                continue;
            };
            rows.swap(rank, pos);
            for r in 0..rows.len() {
                if r != rank && rows[r] >> bit & 1 == 1 {
                    rows[r] ^= rows[rank];
                }
            }
            rank += 1;
        }
        if rank != basis.len() {
            return Err(GeometryError::DependentBasis);
        }
        Ok(Subspace { basis, e })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[GF2Point] {
        &self.basis
    }

    /// All `2^dim` elements of the span, in increasing index order.
    pub fn elements(&self) -> Vec<GF2Point> {
        let mut out: Vec<GF2Point> = (0u32..1 << self.dim())
            .map(|mask| {
                let mut acc = GF2Point::zero(self.e);
                for (i, b) in self.basis.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        acc = acc.add(b);
                    }
                }
                acc
            })
            .collect();
        out.sort();
        out
    }

    pub fn contains(&self, p: &GF2Point) -> bool {
        self.elements().iter().any(|q| q == p)
    }

    /// Q vanishes on every element of the span.
    pub fn is_totally_singular(&self) -> bool {
        self.elements().iter().all(|p| quadratic_form(p) == 0)
    }

    /// A generator is a maximal (dimension e) totally singular subspace.
    pub fn is_generator(&self) -> bool {
        self.dim() == self.e && self.is_totally_singular()
    }
}

/// The affine polar graph `VO⁺(2e,2)`: vertices are the `2^{2e}` points,
/// `x ~ y` iff `Q(x+y) = 0` for distinct `x,y`. Vertex index is the
/// little-endian integer value of the coordinate vector.
pub fn build_vo_plus(e: usize) -> Result<Graph, GeometryError> {
    if e < 2 {
        return Err(GeometryError::HalfDimensionTooSmall(e));
    }
    let v = 1usize << (2 * e);
    let mut g = Graph::empty(v)?;
    // Adjacency is translation invariant: x ~ y iff x+y lands in the zero
    // set of Q, so precompute that set once.
    let singular: Vec<bool> = (0..v)
        .map(|d| {
            let p = GF2Point {
                bits: d as u32,
                e,
            };
            quadratic_form(&p) == 0
        })
        .collect();
    for u in 0..v {
        for w in (u + 1)..v {
            if singular[u ^ w] {
                g.set_edge(u, w);
            }
        }
    }
    Ok(g)
}

/// Strongly regular parameters of `VO⁺(2e,2)`:
/// `(2^{2e}, (2^{e−1}+1)(2^e−1), 2(2^{e−2}+1)(2^{e−1}−1), 2^{e−1}(2^{e−1}+1))`.
pub fn vo_plus_params(e: usize) -> crate::graph::SrgParams {
    let p = |x: usize| 1usize << x;
    crate::graph::SrgParams::new(
        p(2 * e),
        (p(e - 1) + 1) * (p(e) - 1),
        2 * (p(e - 2) + 1) * (p(e - 1) - 1),
        p(e - 1) * (p(e - 1) + 1),
    )
}

/// The two generators containing a totally singular subspace of dimension e−1.
pub fn generators_containing(w: &Subspace, e: usize) -> Result<(Subspace, Subspace), GeometryError> {
    if w.dim() != e - 1 {
        return Err(GeometryError::WrongDimension {
            expected: e - 1,
            got: w.dim(),
        });
    }
    if !w.is_totally_singular() {
        return Err(GeometryError::NotTotallySingular);
    }
    let elements = w.elements();
    let mut found: Vec<Subspace> = Vec::new();
    for bits in 1u32..1 << (2 * e) {
        let p = GF2Point { bits, e };
        if quadratic_form(&p) != 0 {
            continue;
        }
        if elements.iter().any(|q| q.bits() == bits) {
            continue;
        }
        if w.basis().iter().any(|b| bilinear_form(&p, b) != 0) {
            continue;
        }
        let mut basis = w.basis().to_vec();
        basis.push(p);
        let candidate = Subspace::new(basis, e)?;
        debug_assert!(candidate.is_totally_singular());
        if !found.iter().any(|g| g.elements() == candidate.elements()) {
            found.push(candidate);
        }
    }
    // Sort the pair by element list for a deterministic orientation.
    found.sort_by_key(|s| s.elements());
    let mut it = found.into_iter();
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok((a, b)),
        _ => Err(GeometryError::NotAGenerator),
    }
}

/// The coset `shift + U` of a generator `U` as a clique of `g`, with its
/// nexus computed directly. Always a `2^{e−1}`-regular `2^e`-clique.
pub fn coset_clique(g: &Graph, u: &Subspace, shift: &GF2Point) -> Result<CliqueInfo, GeometryError> {
    if !u.is_generator() {
        return Err(GeometryError::NotAGenerator);
    }
    let members: Vec<usize> = {
        let mut m: Vec<usize> = u.elements().iter().map(|p| shift.add(p).index()).collect();
        m.sort();
        m
    };
    let nexus = nexus(g, &members).expect("a generator coset is a proper clique");
    Ok(CliqueInfo {
        members,
        nexus,
    })
}

/// The spread of cosets of a generator: `2^e` pairwise disjoint maximal
/// cliques partitioning the vertex set.
pub fn spread(g: &Graph, u: &Subspace) -> Result<Vec<CliqueInfo>, GeometryError> {
    if !u.is_generator() {
        return Err(GeometryError::NotAGenerator);
    }
    let e = u.e;
    let v = 1usize << (2 * e);
    let mut seen = VertexSet::empty(v);
    let mut out = Vec::new();
    for bits in 0..v {
        if seen.contains(bits) {
            continue;
        }
        let shift = GF2Point {
            bits: bits as u32,
            e,
        };
        let clique = coset_clique(g, u, &shift)?;
        for &m in &clique.members {
            seen.insert(m);
        }
        out.push(clique);
    }
    Ok(out)
}

/// All generators of the hyperbolic quadric in GF(2)^{2e}, by exhaustive
/// closure from singular points. Intended for small e (≤ 4).
pub fn all_generators(e: usize) -> Vec<Subspace> {
    let mut gens: Vec<Vec<GF2Point>> = Vec::new();
    let mut stack: Vec<Vec<GF2Point>> = vec![Vec::new()];
    // Depth-first extension of totally singular independent sets, keeping
    // bases in increasing order of their top element to avoid duplicates.
    while let Some(basis) = stack.pop() {
        if basis.len() == e {
            let sub = Subspace::new(basis.clone(), e).unwrap();
            let elems = sub.elements();
            if !gens.iter().any(|g| {
                Subspace::new(g.clone(), e).unwrap().elements() == elems
            }) {
                gens.push(basis);
            }
            continue;
        }
        let lo = basis.last().map(|p| p.bits() + 1).unwrap_or(1);
        for bits in lo..1 << (2 * e) {
            let p = GF2Point { bits, e };
            if quadratic_form(&p) != 0 {
                continue;
            }
            if basis.iter().any(|b| bilinear_form(&p, b) != 0) {
                continue;
            }
            let mut next = basis.clone();
            next.push(p);
            if Subspace::new(next.clone(), e).is_ok() {
                stack.push(next);
            }
        }
    }
    let mut out: Vec<Subspace> = gens
        .into_iter()
        .map(|b| Subspace::new(b, e).unwrap())
        .collect();
    out.sort_by_key(|s| s.elements());
    out.dedup_by_key(|s| s.elements());
    out
}
