//! Integer-exact feasibility arithmetic for Neumaier graph parameter tuples
//! `(v,k,λ;m,s)`: the clique adjacency polynomial, closed forms for `s` and
//! `m`, tuple enumeration, and extremality classification.
//!
//! All arithmetic is in 64-bit signed integers; discriminants are tested for
//! perfect squares with an integer square root. No floating point anywhere.

use serde::{Deserialize, Serialize};

use crate::graph::{ErgParams, SrgParams};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParamError {
    #[error("tuple ({v},{k},{lambda};{m},{s}) violates {condition}")]
    InvalidTuple {
        v: i64,
        k: i64,
        lambda: i64,
        m: i64,
        s: i64,
        condition: &'static str,
    },
    #[error("m = s = {0}: only complete graphs admit a clique with full nexus")]
    FullNexus(i64),
    #[error("{0} does not divide {1}")]
    Divisibility(i64, i64),
    #[error("argument out of range: {0}")]
    OutOfRange(&'static str),
}

/// Known strongly regular graphs with λ = 0, as `(v, k, 0, μ)`.
/// Enough to witness every complement-based extremality decision for v ≤ 100.
pub const TRIANGLE_FREE_SRG_CATALOG: [SrgParams; 7] = [
    SrgParams { v: 5, k: 2, lambda: 0, mu: 1 },
    SrgParams { v: 10, k: 3, lambda: 0, mu: 1 },
    SrgParams { v: 16, k: 5, lambda: 0, mu: 2 },
    SrgParams { v: 50, k: 7, lambda: 0, mu: 1 },
    SrgParams { v: 56, k: 10, lambda: 0, mu: 2 },
    SrgParams { v: 77, k: 16, lambda: 0, mu: 4 },
    SrgParams { v: 100, k: 22, lambda: 0, mu: 6 },
];

/// Clique adjacency polynomial
/// `C_τ(x,y) = x(x+1)(v−y) − 2xy(k−y+1) + y(y−1)(λ−y+2)` for `τ = (v,k,λ)`.
///
/// An s-clique in an edge-regular graph with parameters τ is m-regular
/// exactly when `C_τ(m−1,s) = C_τ(m,s) = 0`.
pub fn cap_poly(tau: ErgParams, x: i64, y: i64) -> i64 {
    let v = tau.v as i64;
    let k = tau.k as i64;
    let l = tau.lambda as i64;
    x * (x + 1) * (v - y) - 2 * x * y * (k - y + 1) + y * (y - 1) * (l - y + 2)
}

/// Integer square root test: `Some(r)` with `r*r == n` when n is a perfect square.
fn perfect_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = (n as u64).isqrt() as i64;
    (r * r == n).then_some(r)
}

/// Largest integer root `s ≥ 2` of
/// `(v−2k+λ)y² + (k²+3k−λ−v(λ+2))y + v(λ+1−k)`,
/// the polynomial a regular-clique size must satisfy. `None` when no such
/// integer root exists, or when the polynomial degenerates to a constant.
pub fn solve_s(tau: ErgParams) -> Option<i64> {
    let v = tau.v as i64;
    let k = tau.k as i64;
    let l = tau.lambda as i64;
    let a = v - 2 * k + l;
    let b = k * k + 3 * k - l - v * (l + 2);
    let c = v * (l + 1 - k);
    let root = if a != 0 {
        let disc = b * b - 4 * a * c;
        let sq = perfect_sqrt(disc)?;
        // a > 0 and c <= 0 for feasible τ, so the larger root is (−b+√d)/2a.
        let num = -b + sq;
        (num % (2 * a) == 0).then(|| num / (2 * a))?
    } else if b != 0 {
        if c % b != 0 {
            return None;
        }
        -c / b
    } else {
        // Fully degenerate; no information from the closed form.
        return None;
    };
    (root >= 2).then_some(root)
}

/// Largest positive integer root `m` of
/// `(v−s)x² − (v−s)x − s(s−1)(λ−s+2)`, or `None`.
pub fn solve_m(v: i64, s: i64, lambda: i64) -> Option<i64> {
    if !(2..v).contains(&s) || lambda - s + 2 < 0 {
        return None;
    }
    let a = v - s;
    let c = -s * (s - 1) * (lambda - s + 2);
    // a x^2 - a x + c = 0 with a > 0, c <= 0.
    let disc = a * a - 4 * a * c;
    let sq = perfect_sqrt(disc)?;
    let num = a + sq;
    if num % (2 * a) != 0 {
        return None;
    }
    let root = num / (2 * a);
    (root >= 1).then_some(root)
}

/// Parameter tuple of a Neumaier graph candidate: edge-regular parameters
/// `(v,k,λ)` plus an `m`-regular `s`-clique.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NeumaierParams {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub m: usize,
    pub s: usize,
}

impl NeumaierParams {
    /// Validates the enumeration bounds, the divisibility conditions and the
    /// counting identities `(v−s)m = (k−s+1)s`, `(k−s+1)(m−1) = (λ−s+2)(s−1)`.
    pub fn new(v: usize, k: usize, lambda: usize, m: usize, s: usize) -> Result<Self, ParamError> {
        let p = NeumaierParams { v, k, lambda, m, s };
        let (iv, ik, il, im, is) = p.as_i64();
        let fail = |condition| ParamError::InvalidTuple {
            v: iv,
            k: ik,
            lambda: il,
            m: im,
            s: is,
            condition,
        };
        if !(0 < ik && ik < iv - 1) {
            return Err(fail("0 < k < v-1"));
        }
        if il >= ik {
            return Err(fail("lambda < k"));
        }
        if !(2 <= is && is <= il + 2) {
            return Err(fail("2 <= s <= lambda+2"));
        }
        if im < 1 {
            return Err(fail("m >= 1"));
        }
        // 2 | vk is deliberately not required here: the reference tuple
        // tables admit (21,15,10;4,6), whose graph class is empty by the
        // handshake parity but whose arithmetic is otherwise consistent.
        if (ik * il) % 2 != 0 {
            return Err(fail("2 | k*lambda"));
        }
        if (iv * ik * il) % 6 != 0 {
            return Err(fail("6 | v*k*lambda"));
        }
        if (iv - is) * im != (ik - is + 1) * is {
            return Err(fail("(v-s)m = (k-s+1)s"));
        }
        if (ik - is + 1) * (im - 1) != (il - is + 2) * (is - 1) {
            return Err(fail("(k-s+1)(m-1) = (lambda-s+2)(s-1)"));
        }
        Ok(p)
    }

    fn as_i64(&self) -> (i64, i64, i64, i64, i64) {
        (
            self.v as i64,
            self.k as i64,
            self.lambda as i64,
            self.m as i64,
            self.s as i64,
        )
    }

    pub fn erg(&self) -> ErgParams {
        ErgParams::new(self.v, self.k, self.lambda)
    }

    /// `k − λ − s + m − 1`; nonnegative for every realisable tuple.
    pub fn clique_bound_excess(&self) -> i64 {
        let (_, k, l, m, s) = self.as_i64();
        k - l - s + m - 1
    }
}

impl std::fmt::Display for NeumaierParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({},{},{};{},{})",
            self.v, self.k, self.lambda, self.m, self.s
        )
    }
}

/// The rule that settles a tuple (shows its graph class is empty or contains
/// only strongly regular graphs).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtremalityRule {
    /// `v = 2k − λ`: the edge-regular graphs are exactly the complete
    /// multipartite graphs `K_{s×t}`.
    CompleteMultipartite,
    /// `v = 2k − λ + 1`: the complement is co-edge-regular with μ = 1,
    /// forcing strong regularity.
    ComplementMuOne,
    /// A known triangle-free strongly regular graph witnesses the complement
    /// parameters `(v, v−k−1, 0, v−2k+λ)`.
    TriangleFreeComplement(SrgParams),
    /// The bound `k − λ − s + m − 1 ≥ 0`: violation empties the class;
    /// equality forces one of the classified strongly regular graphs.
    CliqueNeighbourhoodBound,
    /// A strictly Neumaier graph needs a regular clique of size at least 4.
    CliqueSizeBound,
}

impl ExtremalityRule {
    /// True when the rule settles the edge-regular triple `(v,k,λ)` itself,
    /// as opposed to the quintuple.
    pub fn settles_triple(&self) -> bool {
        matches!(
            self,
            ExtremalityRule::CompleteMultipartite
                | ExtremalityRule::ComplementMuOne
                | ExtremalityRule::TriangleFreeComplement(_)
        )
    }
}

impl std::fmt::Display for ExtremalityRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtremalityRule::CompleteMultipartite => write!(f, "complete-multipartite"),
            ExtremalityRule::ComplementMuOne => write!(f, "complement-mu-1"),
            ExtremalityRule::TriangleFreeComplement(w) => {
                write!(f, "triangle-free-complement{w}")
            }
            ExtremalityRule::CliqueNeighbourhoodBound => write!(f, "clique-neighbourhood-bound"),
            ExtremalityRule::CliqueSizeBound => write!(f, "clique-size-bound"),
        }
    }
}

/// Verdict for one enumerated tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// The triple `(v,k,λ)` is settled: `ERG(v,k,λ)` is empty or extremal.
    ErgSettled(ExtremalityRule),
    /// The quintuple is settled: `NG(v,k,λ;m,s)` is empty or extremal.
    NgSettled(ExtremalityRule),
    /// No implemented rule fires; strictly Neumaier graphs are not ruled out.
    Open,
}

impl Verdict {
    pub fn is_open(&self) -> bool {
        matches!(self, Verdict::Open)
    }

    pub fn rule(&self) -> Option<ExtremalityRule> {
        match self {
            Verdict::ErgSettled(r) | Verdict::NgSettled(r) => Some(*r),
            Verdict::Open => None,
        }
    }
}

/// One row of the feasibility table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityRecord {
    pub params: NeumaierParams,
    pub verdict: Verdict,
}

/// First extremality rule that fires, in a fixed priority order chosen so
/// the enumerated table annotations are reproducible:
/// bound violation (class empty), then `v = 2k−λ`, then a catalogued
/// triangle-free complement witness, then `v = 2k−λ+1`, then the clique
/// size bound, then bound equality.
pub fn classify_extremal(p: &NeumaierParams) -> Option<ExtremalityRule> {
    let (v, k, l, _, s) = p.as_i64();
    let excess = p.clique_bound_excess();
    if excess < 0 {
        return Some(ExtremalityRule::CliqueNeighbourhoodBound);
    }
    if v == 2 * k - l {
        return Some(ExtremalityRule::CompleteMultipartite);
    }
    let comp = SrgParams::new(
        p.v,
        p.v - p.k - 1,
        0,
        (v - 2 * k + l).max(0) as usize,
    );
    if TRIANGLE_FREE_SRG_CATALOG.contains(&comp) {
        return Some(ExtremalityRule::TriangleFreeComplement(comp));
    }
    if v == 2 * k - l + 1 {
        return Some(ExtremalityRule::ComplementMuOne);
    }
    if s < 4 {
        return Some(ExtremalityRule::CliqueSizeBound);
    }
    if excess == 0 {
        return Some(ExtremalityRule::CliqueNeighbourhoodBound);
    }
    None
}

fn verdict_for(p: &NeumaierParams) -> Verdict {
    match classify_extremal(p) {
        Some(rule) if rule.settles_triple() => Verdict::ErgSettled(rule),
        Some(rule) => Verdict::NgSettled(rule),
        None => Verdict::Open,
    }
}

/// All `(m,s)` pairs for which the clique adjacency polynomial has the double
/// zero `C_τ(m−1,s) = C_τ(m,s) = 0`, found by direct scan. This is the
/// reference route; `feasible_clique_params` is the closed-form route.
pub fn clique_params_by_scan(tau: ErgParams) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let l = tau.lambda as i64;
    let hi = (l + 2).min(tau.v as i64 - 1);
    for s in 2..=hi {
        for m in 1..=s {
            if cap_poly(tau, m - 1, s) == 0 && cap_poly(tau, m, s) == 0 {
                out.push((m as usize, s as usize));
            }
        }
    }
    out
}

/// `(m,s)` pairs derived from the closed forms: `s` from its quadratic, `m`
/// from its quadratic given `s`, then both counting identities checked.
/// Falls back to the direct scan when the `s` polynomial degenerates to a
/// constant and carries no information.
pub fn feasible_clique_params(tau: ErgParams) -> Vec<(usize, usize)> {
    let v = tau.v as i64;
    let k = tau.k as i64;
    let l = tau.lambda as i64;
    if v - 2 * k + l == 0 && (k - l) * (k - l - 1) == 0 {
        return clique_params_by_scan(tau);
    }
    let Some(s) = solve_s(tau) else {
        return Vec::new();
    };
    if s > l + 2 || s >= v {
        return Vec::new();
    }
    let Some(m) = solve_m(v, s, l) else {
        return Vec::new();
    };
    let ok = (v - s) * m == (k - s + 1) * s && (k - s + 1) * (m - 1) == (l - s + 2) * (s - 1);
    if ok {
        vec![(m as usize, s as usize)]
    } else {
        Vec::new()
    }
}

/// Enumerates every tuple `(v,k,λ;m,s)` with `v ≤ max_v` satisfying the
/// bounds, the divisibility conditions, and the clique adjacency polynomial
/// double zero, each with its extremality verdict. Output is ordered
/// lexicographically by `(v,k,λ,m,s)`.
pub fn enumerate_feasible(max_v: usize) -> Vec<FeasibilityRecord> {
    let mut out = Vec::new();
    for v in 4..=max_v {
        for k in 1..v.saturating_sub(1) {
            for lambda in 0..k {
                let tau = ErgParams::new(v, k, lambda);
                if (k * lambda) % 2 != 0 || (v * k * lambda) % 6 != 0 {
                    continue;
                }
                for (m, s) in clique_params_by_scan(tau) {
                    if let Ok(params) = NeumaierParams::new(v, k, lambda, m, s) {
                        out.push(FeasibilityRecord {
                            params,
                            verdict: verdict_for(&params),
                        });
                    }
                }
            }
        }
    }
    out.sort_by_key(|r| r.params);
    out
}

/// The strongly regular parameters forced on a Neumaier graph attaining
/// equality in `k − λ − s + m − 1 ≥ 0`:
/// `(s + s(s−1)/m, 2(s−1), s+m−3, 2m)`.
pub fn ksm_equality_params(m: usize, s: usize) -> Result<SrgParams, ParamError> {
    let (mi, si) = (m as i64, s as i64);
    if mi < 1 || si < 2 {
        return Err(ParamError::OutOfRange("need m >= 1 and s >= 2"));
    }
    if mi == si {
        return Err(ParamError::FullNexus(mi));
    }
    if mi > si {
        return Err(ParamError::OutOfRange("need m < s"));
    }
    if (si * (si - 1)) % mi != 0 {
        return Err(ParamError::Divisibility(mi, si * (si - 1)));
    }
    Ok(SrgParams::new(
        (si + si * (si - 1) / mi) as usize,
        (2 * (si - 1)) as usize,
        (si + mi - 3).max(0) as usize,
        (2 * mi) as usize,
    ))
}

/// The strongly regular parameters forced on a Neumaier graph in which every
/// vertex neighbourhood splits into `l` disjoint `(s−1)`-cliques:
/// `(s + (l−1)(s−1)s/m, l(s−1), (m−1)(l−1)+s−2, lm)`.
pub fn neighbourhood_split_params(l: usize, m: usize, s: usize) -> Result<SrgParams, ParamError> {
    let (li, mi, si) = (l as i64, m as i64, s as i64);
    if li < 1 || mi < 1 || si < 2 {
        return Err(ParamError::OutOfRange("need l >= 1, m >= 1, s >= 2"));
    }
    if ((li - 1) * (si - 1) * si) % mi != 0 {
        return Err(ParamError::Divisibility(mi, (li - 1) * (si - 1) * si));
    }
    Ok(SrgParams::new(
        (si + (li - 1) * (si - 1) * si / mi) as usize,
        (li * (si - 1)) as usize,
        ((mi - 1) * (li - 1) + si - 2) as usize,
        (li * mi) as usize,
    ))
}
