mod common;

use codegree_core::shadow::{complement_family, shadow, SetFamily};
use codegree_core::sunflower::{find_bounded_core_sunflower, find_sunflower};
use codegree_core::{ExtNat, Hypergraph, VertexSet};
use proptest::prelude::*;

/// Small hypergraphs: `(n, r, edge masks)`.
fn hypergraph() -> impl Strategy<Value = Hypergraph> {
    (1u32..=8)
        .prop_flat_map(|n| (Just(n), 1u32..=n.min(4)))
        .prop_flat_map(|(n, r)| {
            let universe = common::masks(n, r);
            let len = universe.len();
            (Just(n), Just(r), proptest::sample::subsequence(universe, 0..=len.min(14)))
        })
        .prop_map(|(n, r, edges)| common::from_masks(n, r, &edges))
}

fn permutation(n: u32) -> impl Strategy<Value = Vec<u32>> {
    Just((0..n).collect::<Vec<u32>>()).prop_shuffle()
}

fn graph_and_perm() -> impl Strategy<Value = (Hypergraph, Vec<u32>)> {
    hypergraph().prop_flat_map(|h| {
        let n = h.n();
        (Just(h), permutation(n))
    })
}

fn family() -> impl Strategy<Value = SetFamily> {
    (2u32..=7)
        .prop_flat_map(|m| (Just(m), 1u32..=m))
        .prop_flat_map(|(m, s)| {
            let pool = common::masks(m, s);
            let len = pool.len();
            (Just(m), Just(s), proptest::sample::subsequence(pool, 0..=len.min(10)))
        })
        .prop_map(|(m, s, members)| SetFamily::new(m, s, members.into_iter().map(VertexSet::from_bits)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn relabel_preserves_invariants((h, perm) in graph_and_perm()) {
        let g = h.relabel(&perm).unwrap();
        prop_assert_eq!(g.len(), h.len());
        prop_assert_eq!(g.r(), h.r());
        for t in 0..=h.r() {
            prop_assert_eq!(g.is_t_intersecting(t), h.is_t_intersecting(t));
        }
        for i in 0..=h.r() {
            prop_assert_eq!(g.min_positive_degree(i).unwrap(), h.min_positive_degree(i).unwrap());
        }
    }

    #[test]
    fn degree_matches_oracle(h in hypergraph()) {
        let edges = common::to_masks(&h);
        for t in 0..=h.r() {
            prop_assert_eq!(h.is_t_intersecting(t), common::t_intersecting(&edges, t));
        }
        for i in 0..=h.r() {
            let expected = match common::min_positive_degree(h.n(), &edges, i) {
                Some(d) => ExtNat::Finite(d),
                None => ExtNat::Infinity,
            };
            prop_assert_eq!(h.min_positive_degree(i).unwrap(), expected);
            let (d, witness) = h.min_positive_degree_witness(i).unwrap();
            prop_assert_eq!(d, expected);
            if let (ExtNat::Finite(d), Some(w)) = (d, witness) {
                prop_assert_eq!(h.degree(w), d);
            }
            for covered in h.covered_isets(i).unwrap() {
                prop_assert!(ExtNat::Finite(h.degree(covered)) >= d);
            }
        }
    }

    #[test]
    fn every_edge_is_its_own_unique_superset(h in hypergraph()) {
        let expected = if h.is_empty() { ExtNat::Infinity } else { ExtNat::Finite(1) };
        prop_assert_eq!(h.min_positive_degree(h.r()).unwrap(), expected);
    }

    #[test]
    fn intersection_is_downward_monotone(h in hypergraph()) {
        for t in 1..=h.r() {
            if h.is_t_intersecting(t) {
                prop_assert!(h.is_t_intersecting(t - 1));
            }
        }
    }

    #[test]
    fn shadows_compose_and_shrink(f in family()) {
        let s = f.member_size();
        for i in 0..=s {
            let d = shadow(&f, i).unwrap();
            for j in 0..=i {
                prop_assert_eq!(shadow(&d, j).unwrap(), shadow(&f, j).unwrap());
            }
            if i < s && !f.is_empty() {
                let upper = shadow(&f, i + 1).unwrap();
                // every (i+1)-set has i+1 distinct i-subsets, each in at most m-i of them
                prop_assert!(d.len() as u64 * u64::from(f.ground() - i) >= upper.len() as u64 * u64::from(i + 1));
            }
        }
    }

    #[test]
    fn complement_is_an_involution(f in family()) {
        let ambient = VertexSet::prefix(f.ground());
        let c = complement_family(&f, ambient).unwrap();
        prop_assert_eq!(c.len(), f.len());
        prop_assert_eq!(c.member_size(), f.ground() - f.member_size());
        prop_assert_eq!(complement_family(&c, ambient).unwrap(), f);
    }

    #[test]
    fn sunflower_witnesses_are_sunflowers(h in hypergraph(), p in 1u32..=4) {
        let found = find_sunflower(&h, p);
        if let Some(sf) = &found {
            let edges: Vec<u64> = sf.edges().map(|e| e.bits()).collect();
            prop_assert!(edges.len() >= p as usize);
            prop_assert!(common::is_sunflower(&edges));
            prop_assert!(edges.iter().all(|&e| h.contains(VertexSet::from_bits(e))));
            prop_assert!(sf.validate(&h).is_ok());
        }
        // scanning every core is complete, so it never misses what the recursion finds
        let scan = find_bounded_core_sunflower(&h, p, h.r());
        prop_assert!(found.is_none() || scan.is_some());
        if let Some(sf) = &scan {
            let edges: Vec<u64> = sf.edges().map(|e| e.bits()).collect();
            prop_assert!(edges.len() >= p as usize);
            prop_assert!(common::is_sunflower(&edges));
            prop_assert!(sf.validate(&h).is_ok());
        }
    }

    #[test]
    fn bounded_core_scan_is_complete(h in hypergraph(), p in 2u32..=3, cap in 0u32..=3) {
        // brute force over all p-subsets of edges
        let edges = common::to_masks(&h);
        let exists = (0u64..1 << edges.len().min(14))
            .filter(|m| m.count_ones() == p)
            .any(|m| {
                let pick: Vec<u64> = (0..edges.len()).filter(|&j| m >> j & 1 == 1).map(|j| edges[j]).collect();
                common::is_sunflower(&pick) && pick.iter().fold(!0u64, |a, e| a & e).count_ones() <= cap
            });
        let found = find_bounded_core_sunflower(&h, p, cap);
        prop_assert_eq!(found.is_some(), exists);
        if let Some(sf) = found {
            prop_assert!(sf.core.len() <= cap);
        }
    }
}
