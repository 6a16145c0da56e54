//! Cross-module property suites: counting identities, switching invariants,
//! clique uniformity and canonical-form stability.

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use neumaier_core::affine::{build_vo_plus, vo_plus_params};
use neumaier_core::cliques::{generate_named, verify, NamedFamily};
use neumaier_core::g6;
use neumaier_core::graph::{ErgParams, Graph, RegularityClass};
use neumaier_core::iso::canonical_form;
use neumaier_core::params::{
    cap_poly, clique_params_by_scan, enumerate_feasible, feasible_clique_params, ExtremalityRule,
    Verdict,
};
use neumaier_core::switching::{
    construct_gamma1, construct_gamma1_detailed, construct_gamma2, construct_gamma2_detailed,
    switch, switching_region, Gamma2Variant, SwitchingStep,
};
use neumaier_core::VertexSet;

fn sample_neumaier_graphs() -> Vec<Graph> {
    vec![
        build_vo_plus(2).unwrap(),
        construct_gamma1(2).unwrap(),
        construct_gamma2(2, Gamma2Variant::A).unwrap(),
        construct_gamma2(2, Gamma2Variant::B).unwrap(),
        construct_gamma1(3).unwrap(),
        generate_named(NamedFamily::Triangular(5)).unwrap(),
        generate_named(NamedFamily::SquareLattice(4)).unwrap(),
        generate_named(NamedFamily::CompleteMultipartite { r: 3, t: 2 }).unwrap(),
    ]
}

#[test]
fn edge_regular_graphs_satisfy_arithmetic_conditions() {
    for g in sample_neumaier_graphs() {
        let Some(p) = g.classify().erg_params() else {
            panic!("sample graph not edge-regular");
        };
        assert!(p.is_feasible(), "{p} fails the arithmetic conditions");
    }
}

#[test]
fn complement_classification_is_consistent() {
    // k-regular complements to (v-k-1)-regular; edge-regular (v,k,λ)
    // complements to co-edge-regular (v, v-k-1, v-2k+λ).
    for g in sample_neumaier_graphs() {
        let v = g.vertex_count();
        let k = g.is_regular().unwrap();
        let c = g.complement();
        assert_eq!(c.is_regular(), Some(v - k - 1));
        if let RegularityClass::EdgeRegular(p) = g.classify() {
            let expect_mu = p.v + p.lambda - 2 * p.k;
            match c.classify() {
                RegularityClass::CoEdgeRegular { v: cv, k: ck, mu } => {
                    assert_eq!((cv, ck, mu), (p.v, p.v - p.k - 1, expect_mu));
                }
                RegularityClass::StronglyRegular(s) => {
                    assert_eq!(s.mu, expect_mu);
                }
                other => panic!("complement of edge-regular classified {other:?}"),
            }
        }
    }
}

#[test]
fn mu_support_singleton_iff_co_edge_regular() {
    for g in sample_neumaier_graphs() {
        let support = g.mu_support();
        let co = matches!(
            g.classify(),
            RegularityClass::CoEdgeRegular { .. } | RegularityClass::StronglyRegular(_)
        );
        assert_eq!(support.len() == 1, co, "{:?}", g.classify());
    }
}

#[test]
fn counting_identities_on_every_emitted_tuple() {
    for rec in enumerate_feasible(24) {
        let p = rec.params;
        let (v, k, l, m, s) = (
            p.v as i64,
            p.k as i64,
            p.lambda as i64,
            p.m as i64,
            p.s as i64,
        );
        assert_eq!((v - s) * m, (k - s + 1) * s, "{p}");
        assert_eq!((k - s + 1) * (m - 1), (l - s + 2) * (s - 1), "{p}");
        // The defining double zero of the clique adjacency polynomial.
        let tau = p.erg();
        assert_eq!(cap_poly(tau, m - 1, s), 0, "{p}");
        assert_eq!(cap_poly(tau, m, s), 0, "{p}");
    }
}

#[test]
fn clique_bound_violations_are_always_classified() {
    // k−λ−s+m−1 < 0 empties the class; such tuples must carry the bound rule
    // and never stay open. Open tuples satisfy the bound.
    for rec in enumerate_feasible(24) {
        let excess = rec.params.clique_bound_excess();
        if excess < 0 {
            assert_eq!(
                rec.verdict.rule(),
                Some(ExtremalityRule::CliqueNeighbourhoodBound),
                "{}",
                rec.params
            );
        }
        if rec.verdict == Verdict::Open {
            assert!(excess >= 0, "{}", rec.params);
        }
    }
}

#[test]
fn closed_forms_match_cap_polynomial_scan_to_40() {
    for v in 4..=40usize {
        for k in 1..v {
            for lambda in 0..k {
                let tau = ErgParams::new(v, k, lambda);
                if !tau.is_feasible() {
                    continue;
                }
                assert_eq!(
                    clique_params_by_scan(tau),
                    feasible_clique_params(tau),
                    "disagreement at {tau}"
                );
            }
        }
    }
}

#[test]
fn construction_steps_preserve_degrees() {
    for e in [2usize, 3, 4] {
        let c1 = construct_gamma1_detailed(e).unwrap();
        let mut g = c1.base.clone();
        for step in &c1.steps {
            assert!(step.preserves_degrees(&g));
            g = switch(&g, step);
        }
        for variant in [Gamma2Variant::A, Gamma2Variant::B] {
            let c2 = construct_gamma2_detailed(e, variant).unwrap();
            let mut g = c2.base.clone();
            for step in &c2.steps {
                assert!(step.preserves_degrees(&g));
                g = switch(&g, step);
            }
        }
    }
}

#[test]
fn switched_edges_confined_to_the_small_subgraph() {
    for e in [2usize, 3, 4] {
        let region = switching_region(e);
        assert_eq!(region.count(), 16 << (e - 2));
        for c in [
            construct_gamma1_detailed(e).unwrap(),
            construct_gamma2_detailed(e, Gamma2Variant::A).unwrap(),
        ] {
            for u in 0..c.base.vertex_count() {
                let mut diff = c.base.row(u).clone();
                diff.xor_in_place(c.graph.row(u));
                if !diff.is_empty() {
                    assert!(region.contains(u), "vertex {u} outside the region changed");
                    for w in diff.iter() {
                        assert!(region.contains(w));
                    }
                }
            }
        }
    }
}

#[test]
fn regular_cliques_share_one_size_and_nexus() {
    for g in sample_neumaier_graphs() {
        let report = verify(&g);
        let Some(p) = report.classification.params() else {
            continue;
        };
        for clique in &report.regular_cliques {
            assert_eq!(clique.size(), p.s);
            assert_eq!(clique.nexus, Some(p.m));
        }
        // Clique adjacency polynomial criterion for the found (m,s).
        let tau = p.erg();
        assert_eq!(cap_poly(tau, p.m as i64 - 1, p.s as i64), 0);
        assert_eq!(cap_poly(tau, p.m as i64, p.s as i64), 0);
    }
}

#[test]
fn clique_boundary_edges_have_m_minus_one_inside_neighbours() {
    for g in sample_neumaier_graphs() {
        let report = verify(&g);
        let Some(p) = report.classification.params() else {
            continue;
        };
        for clique in &report.regular_cliques {
            let inside = VertexSet::from_iter(g.vertex_count(), clique.members.iter().copied());
            for &u in &clique.members {
                for w in 0..g.vertex_count() {
                    if !inside.contains(w) && g.has_edge(u, w) {
                        let common = g.row(u).intersection(g.row(w)).intersection_count(&inside);
                        assert_eq!(common, p.m - 1);
                    }
                }
            }
        }
    }
}

#[test]
fn vo_plus_translation_invariance_spot_checks() {
    for e in [2usize, 3] {
        let g = build_vo_plus(e).unwrap();
        let v = g.vertex_count();
        for a in [1usize, 3, v / 2, v - 1] {
            for u in (0..v).step_by(3) {
                for w in ((u + 1)..v).step_by(5) {
                    assert_eq!(g.has_edge(u, w), g.has_edge(u ^ a, w ^ a));
                }
            }
        }
        let p = vo_plus_params(e);
        assert_eq!(g.classify(), RegularityClass::StronglyRegular(p));
    }
}

#[test]
fn canonical_form_stable_under_100_relabelings() {
    let g = construct_gamma1(2).unwrap();
    let base = canonical_form(&g);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let v = g.vertex_count();
    for _ in 0..100 {
        let mut perm: Vec<usize> = (0..v).collect();
        perm.shuffle(&mut rng);
        let h = g.permuted(&perm);
        let c = canonical_form(&h);
        assert_eq!(c, base);
        assert_eq!(c.graph(&h), base.graph(&g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn switch_twice_is_identity(edges in proptest::collection::vec((0usize..10, 0usize..10), 0..30),
                                cut in 1usize..9) {
        let filtered: Vec<(usize, usize)> = edges.into_iter().filter(|(a, b)| a != b).collect();
        let g = Graph::from_edges(10, filtered).unwrap();
        let a: Vec<usize> = (0..cut).collect();
        let b: Vec<usize> = (cut..10).collect();
        let step = SwitchingStep::from_slices(10, &a, &b).unwrap();
        let h = switch(&switch(&g, &step), &step);
        prop_assert_eq!(h, g);
    }

    #[test]
    fn graph6_round_trip(edges in proptest::collection::vec((0usize..12, 0usize..12), 0..40)) {
        let filtered: Vec<(usize, usize)> = edges.into_iter().filter(|(a, b)| a != b).collect();
        let g = Graph::from_edges(12, filtered).unwrap();
        let enc = g6::encode(&g);
        prop_assert_eq!(g6::decode(&enc).unwrap(), g);
    }

    #[test]
    fn complement_involution(edges in proptest::collection::vec((0usize..9, 0usize..9), 0..25)) {
        let filtered: Vec<(usize, usize)> = edges.into_iter().filter(|(a, b)| a != b).collect();
        let g = Graph::from_edges(9, filtered).unwrap();
        prop_assert_eq!(g.complement().complement(), g);
    }
}
