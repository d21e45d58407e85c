//! Brute-force references. Sets are raw `u64` masks and every routine here
//! avoids the library's own enumeration and counting code.

#![allow(dead_code)]

use codegree_core::{Hypergraph, Params, VertexSet};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn choose(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * u128::from(n - j) / u128::from(j + 1);
    }
    acc as u64
}

/// Every `size`-subset of `[n]`, increasing as integers.
pub fn masks(n: u32, size: u32) -> Vec<u64> {
    assert!(n <= 24, "oracle enumerates 2^n masks");
    (0u64..1 << n).filter(|m| m.count_ones() == size).collect()
}

pub fn t_intersecting(edges: &[u64], t: u32) -> bool {
    edges.iter().enumerate().all(|(i, e)| edges[i + 1..].iter().all(|f| (e & f).count_ones() >= t))
}

/// Least positive number of edges over `i`-sets of `[n]`, `None` if no
/// `i`-set is covered.
pub fn min_positive_degree(n: u32, edges: &[u64], i: u32) -> Option<u64> {
    masks(n, i)
        .into_iter()
        .map(|s| edges.iter().filter(|&&e| e & s == s).count() as u64)
        .filter(|&c| c > 0)
        .min()
}

pub fn feasible(n: u32, edges: &[u64], p: &Params) -> bool {
    let threshold = choose(u64::from(p.k - 1), u64::from(p.s));
    edges.iter().all(|e| e.count_ones() == p.r)
        && t_intersecting(edges, p.t)
        && min_positive_degree(n, edges, p.r - p.s).is_none_or(|d| d > threshold)
}

/// Largest feasible edge count over all `2^C(n,r)` families.
pub fn max_feasible(n: u32, p: &Params) -> u64 {
    let universe = masks(n, p.r);
    assert!(universe.len() <= 22);
    let threshold = choose(u64::from(p.k - 1), u64::from(p.s));
    let low = masks(n, p.r - p.s);
    let mut best = 0u64;
    let mut chosen = Vec::with_capacity(universe.len());
    'families: for family in 0u64..1 << universe.len() {
        if u64::from(family.count_ones()) <= best {
            continue;
        }
        chosen.clear();
        chosen.extend((0..universe.len()).filter(|&j| family >> j & 1 == 1).map(|j| universe[j]));
        if !t_intersecting(&chosen, p.t) {
            continue;
        }
        for &s in &low {
            let c = chosen.iter().filter(|&&e| e & s == s).count() as u64;
            if c > 0 && c <= threshold {
                continue 'families;
            }
        }
        best = u64::from(family.count_ones());
    }
    best
}

/// Pairwise intersections all equal (a single edge counts).
pub fn is_sunflower(edges: &[u64]) -> bool {
    let mut distinct = edges.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != edges.len() || edges.is_empty() {
        return false;
    }
    let common = edges.iter().fold(!0u64, |acc, e| acc & e);
    edges.iter().enumerate().all(|(i, e)| edges[i + 1..].iter().all(|f| e & f == common))
}

pub fn to_masks(h: &Hypergraph) -> Vec<u64> {
    h.edges().iter().map(|e| e.bits()).collect()
}

pub fn from_masks(n: u32, r: u32, edges: &[u64]) -> Hypergraph {
    Hypergraph::new(n, r, edges.iter().map(|&m| VertexSet::from_bits(m))).unwrap()
}

/// `count` distinct uniformly random `r`-subsets of `[n]`.
pub fn random_graph<R: Rng>(rng: &mut R, n: u32, r: u32, count: usize) -> Hypergraph {
    let mut edges = std::collections::BTreeSet::new();
    let mut labels: Vec<u32> = (0..n).collect();
    while edges.len() < count {
        labels.shuffle(rng);
        edges.insert(labels[..r as usize].iter().fold(0u64, |m, &v| m | 1 << v));
    }
    let edges: Vec<u64> = edges.into_iter().collect();
    from_masks(n, r, &edges)
}

/// Every valid parameter tuple with entries at most the given bounds.
pub fn params_grid(max_k: u32, max_t: u32, max_r: u32) -> Vec<Params> {
    let mut out = Vec::new();
    for k in 1..=max_k {
        for s in 1..=k {
            for t in s..=max_t {
                for r in t..=max_r {
                    if let Ok(p) = Params::new(k, r, s, t) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}
