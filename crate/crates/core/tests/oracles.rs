mod common;

use codegree_core::badtriple::{check_less_s_and_t_int, search_bad_triple};
use codegree_core::extremal::{enumerate_feasible, feasible, max_feasible, EnumerateOptions};
use codegree_core::kernels::{build_kernel, kernel_codegree_check, kernel_edge_count, main_extremal, KernelSpec};
use codegree_core::shadow::{verify_kk_special_case, KkOutcome};
use codegree_core::{ExtNat, Hypergraph, Params, SearchLimits, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All submasks of `mask`, the empty one included.
fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

/// Sunflowers with core exactly `core`, as lists of petals, counting the
/// single edge `core` itself when it is one.
fn sunflowers_on(edges: &[u64], core: u64, r: u32) -> Vec<Vec<u64>> {
    if core.count_ones() == r {
        return if edges.contains(&core) { vec![vec![0]] } else { vec![] };
    }
    let petals: Vec<u64> = edges.iter().filter(|&&e| e & core == core).map(|&e| e & !core).collect();
    let mut out = Vec::new();
    for pick in 1u64..1 << petals.len() {
        if pick.count_ones() < 2 {
            continue;
        }
        let chosen: Vec<u64> = (0..petals.len()).filter(|&j| pick >> j & 1 == 1).map(|j| petals[j]).collect();
        let disjoint = chosen.iter().enumerate().all(|(i, p)| chosen[i + 1..].iter().all(|q| p & q == 0));
        if disjoint {
            out.push(chosen);
        }
    }
    out
}

/// Exhaustive search for the five conditions with no cap on petal counts.
fn bad_triple_exists(n: u32, edges: &[u64], p: &Params) -> bool {
    let b = p.k - p.s + p.t;
    let cores = common::masks(n, b);
    for &y in &cores {
        let fys = sunflowers_on(edges, y, p.r);
        if fys.is_empty() {
            continue;
        }
        for &z in &cores {
            if (y & z).count_ones() != p.t {
                continue;
            }
            let yz = y | z;
            if !edges.iter().any(|&h| (h & yz).count_ones() < b) {
                continue;
            }
            let fzs = sunflowers_on(edges, z, p.r);
            for fy in &fys {
                let profile = |petal: u64| -> Vec<u64> {
                    submasks(yz).filter(|&w| edges.contains(&(petal | w))).collect()
                };
                let first = profile(fy[0]);
                if !fy.iter().all(|&q| profile(q) == first) {
                    continue;
                }
                for fz in fys_compatible(fy, y, fzs.as_slice(), z) {
                    let four = edges
                        .iter()
                        .all(|&e| fy.iter().any(|&q| q & e == 0) && fz.iter().any(|&q| q & e == 0));
                    if four {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn fys_compatible<'a>(fy: &'a [u64], y: u64, fzs: &'a [Vec<u64>], z: u64) -> impl Iterator<Item = &'a Vec<u64>> {
    fzs.iter().filter(move |fz| {
        fy.iter().all(|&q| fz.iter().all(|&w| q & (w | z) == 0)) && fz.iter().all(|&q| fy.iter().all(|&w| q & (w | y) == 0))
    })
}

#[test]
fn kernel_counts_match_filtering() {
    for n in 1..=10u32 {
        for r in 1..=n.min(5) {
            let universe = common::masks(n, r);
            for a in 0..=n.min(6) {
                for b in 0..=a.min(r) + 1 {
                    let expected = universe.iter().filter(|&&e| (e & ((1 << a) - 1)).count_ones() >= b).count();
                    assert_eq!(kernel_edge_count(n, r, a, b), expected as u64, "n={n} r={r} a={a} b={b}");
                    let built = build_kernel(&KernelSpec::initial(n, r, a, b).unwrap()).unwrap();
                    assert_eq!(built.len(), expected);
                }
            }
        }
    }
}

#[test]
fn kernel_systems_meet_the_codegree_claim() {
    for p in common::params_grid(4, 3, 5) {
        if p.r < p.core_size() {
            continue;
        }
        let n = p.kernel_size() + p.r;
        if common::choose(u64::from(n), u64::from(p.r)) > 20_000 {
            continue;
        }
        let h = main_extremal(&p, n).unwrap();
        let edges = common::to_masks(&h);
        assert!(common::t_intersecting(&edges, p.t), "{p}");
        let expected = common::choose(u64::from(p.k), u64::from(p.s));
        if n <= 14 {
            assert_eq!(common::min_positive_degree(n, &edges, p.r - p.s), Some(expected), "{p}");
        }
        let report = kernel_codegree_check(&p, n).unwrap();
        assert_eq!(report.delta, ExtNat::Finite(expected), "{p}");
        assert!(report.holds());
    }
}

#[test]
fn branch_and_bound_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checked = 0;
    while checked < 40 {
        let n = rng.gen_range(2..=7u32);
        let r = rng.gen_range(1..=n.min(4));
        if common::choose(u64::from(n), u64::from(r)) > 15 {
            continue;
        }
        let k = rng.gen_range(1..=4u32);
        let s = rng.gen_range(1..=k);
        let t = rng.gen_range(s..=r.max(s));
        let Ok(p) = Params::new(k, r, s, t) else { continue };
        let expected = common::max_feasible(n, &p);
        for symmetry in [true, false] {
            let res = max_feasible(n, &p, &SearchLimits::default(), symmetry).unwrap();
            assert!(res.optimal);
            assert_eq!(res.max_edges, expected, "n={n} {p} symmetry={symmetry}");
            assert!(common::feasible(n, &common::to_masks(&res.witness), &p));
            assert!(feasible(&res.witness, &p).is_feasible());
        }
        checked += 1;
    }
}

#[test]
fn lower_bound_anchor() {
    for p in common::params_grid(3, 3, 4) {
        for n in p.kernel_size().max(p.r)..=7 {
            if p.r < p.core_size() || common::choose(u64::from(n), u64::from(p.r)) > 40 {
                continue;
            }
            let res = max_feasible(n, &p, &SearchLimits::default(), true).unwrap();
            // small kernels can miss the codegree threshold; from a + r on they never do
            let kernel_ok = feasible(&main_extremal(&p, n).unwrap(), &p).is_feasible();
            assert!(kernel_ok || n < p.kernel_size() + p.r, "n={n} {p}");
            if kernel_ok {
                assert!(res.max_edges >= res.kernel_count, "n={n} {p}");
            }
            assert_eq!(res.kernel_count, kernel_edge_count(n, p.r, p.kernel_size(), p.core_size()));
        }
    }
}

#[test]
fn rank_below_core_size_forces_empty() {
    for p in common::params_grid(4, 4, 7) {
        if p.r >= p.core_size() {
            continue;
        }
        for n in p.r..=8 {
            if common::choose(u64::from(n), u64::from(p.r)) > 70 {
                continue;
            }
            let res = max_feasible(n, &p, &SearchLimits::default(), true).unwrap();
            assert_eq!(res.max_edges, 0, "n={n} {p}");
            assert!(res.optimal);
        }
    }
}

#[test]
fn enumeration_matches_filtering() {
    let cases = [(4, Params::new(2, 2, 1, 1)), (5, Params::new(2, 2, 1, 1)), (5, Params::new(1, 2, 1, 1)), (5, Params::new(2, 3, 1, 2))];
    for (n, p) in cases {
        let p = p.unwrap();
        let universe = common::masks(n, p.r);
        let mut expected: Vec<Vec<u64>> = (0u64..1 << universe.len())
            .map(|m| (0..universe.len()).filter(|&j| m >> j & 1 == 1).map(|j| universe[j]).collect::<Vec<u64>>())
            .filter(|edges| common::feasible(n, edges, &p))
            .collect();
        expected.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        let got: Vec<Vec<u64>> = enumerate_feasible(n, &p, &EnumerateOptions::default(), &SearchLimits::default())
            .unwrap()
            .iter()
            .map(common::to_masks)
            .collect();
        assert_eq!(got, expected, "n={n} {p}");
    }
}

#[test]
fn no_bad_triples_among_qualifying_graphs() {
    let p = Params::new(2, 2, 1, 1).unwrap();
    let all = enumerate_feasible(5, &p, &EnumerateOptions::default(), &SearchLimits::default()).unwrap();
    assert_eq!(all.len(), 1 + 10);
    for h in &all {
        let out = search_bad_triple(h, &p, &SearchLimits::default()).unwrap();
        assert!(out.witness.is_none());
        assert!(!bad_triple_exists(5, &common::to_masks(h), &p));
        assert!(check_less_s_and_t_int(h, &p, &SearchLimits::default()).unwrap().is_clean());
    }
    for p in common::params_grid(3, 3, 4) {
        if p.r < p.core_size() {
            continue;
        }
        let n = p.kernel_size() + p.r;
        if n > 8 {
            continue;
        }
        let h = main_extremal(&p, n).unwrap();
        let out = search_bad_triple(&h, &p, &SearchLimits::default()).unwrap();
        assert!(out.witness.is_none(), "{p}");
        if h.len() <= 16 {
            assert!(!bad_triple_exists(n, &common::to_masks(&h), &p), "{p}");
        }
    }
}

#[test]
fn search_agrees_with_oracle_on_random_qualifying_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut seen = 0;
    for _ in 0..4000 {
        let n = 6;
        let r = rng.gen_range(2..=3u32);
        let count = rng.gen_range(1..=8usize);
        let h: Hypergraph = common::random_graph(&mut rng, n, r, count);
        for p in common::params_grid(2, 2, 3) {
            if p.r != r || !feasible(&h, &p).is_feasible() {
                continue;
            }
            seen += 1;
            let out = search_bad_triple(&h, &p, &SearchLimits::default()).unwrap();
            assert_eq!(out.witness.is_some(), bad_triple_exists(n, &common::to_masks(&h), &p), "{p} {:?}", h.edges());
        }
    }
    assert!(seen > 50, "only {seen} qualifying samples");
}

#[test]
fn kruskal_katona_cells_match_direct_shadows() {
    // brute: minimum shadow over all families, with no pruning at all
    for (k, s, i, m) in [(3u32, 2u32, 1u32, 4u32), (4, 2, 1, 5), (3, 1, 0, 3), (4, 3, 2, 5), (4, 2, 2, 4)] {
        let pool = common::masks(m, s);
        let size = common::choose(u64::from(k - 1), u64::from(s)) as u32;
        let mut min = u64::MAX;
        for pick in 0u64..1 << pool.len() {
            if pick.count_ones() != size {
                continue;
            }
            let mut shadow = std::collections::BTreeSet::new();
            for j in (0..pool.len()).filter(|&j| pick >> j & 1 == 1) {
                for sub in submasks(pool[j]).filter(|w| w.count_ones() == i) {
                    shadow.insert(sub);
                }
            }
            min = min.min(shadow.len() as u64);
        }
        match verify_kk_special_case(k, s, i, m, 10_000_000).unwrap() {
            KkOutcome::Verified { min_shadow, bound, .. } => {
                assert_eq!(min_shadow, min, "({k},{s},{i},{m})");
                assert_eq!(bound, common::choose(u64::from(k - 1), u64::from(i)));
            }
            other => panic!("({k},{s},{i},{m}) gave {other:?}"),
        }
    }
}

#[test]
fn relabeled_kernels_keep_their_codegree() {
    let p = Params::new(2, 3, 1, 2).unwrap();
    let kernel = VertexSet::from_vertices(8, [1, 3, 5, 7]).unwrap();
    let h = build_kernel(&KernelSpec::new(8, 3, 4, 3, kernel).unwrap()).unwrap();
    let base = main_extremal(&p, 8).unwrap();
    assert_eq!(h.len(), base.len());
    assert_eq!(h.min_positive_degree(p.codegree_rank()).unwrap(), base.min_positive_degree(p.codegree_rank()).unwrap());
}
