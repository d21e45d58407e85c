//! Reference computations that share nothing with the core searches.

use codegree_core::{binomial, Hypergraph, Params, Sunflower, VertexSet};

/// Largest universe [`plain_max_feasible`] will enumerate.
pub const MAX_PLAIN_UNIVERSE: usize = 24;

/// Maximum feasible edge count by visiting all `2^C(n,r)` edge subsets.
pub fn plain_max_feasible(n: u32, params: &Params) -> Option<u64> {
    let universe: Vec<u64> = (0u64..1 << n).filter(|m| m.count_ones() == params.r).collect();
    if universe.len() > MAX_PLAIN_UNIVERSE {
        return None;
    }
    let low: Vec<u64> = (0u64..1 << n).filter(|m| m.count_ones() == params.r - params.s).collect();
    let threshold = binomial(u64::from(params.k - 1), u64::from(params.s));
    // compat[i]: bitmask over universe indices meeting edge i in >= t
    let compat: Vec<u64> = universe
        .iter()
        .map(|e| {
            universe
                .iter()
                .enumerate()
                .filter(|(_, f)| (*e & **f).count_ones() >= params.t)
                .fold(0u64, |acc, (j, _)| acc | 1 << j)
        })
        .collect();
    let mut best = 0u64;
    for family in 0u64..1 << universe.len() {
        let size = u64::from(family.count_ones());
        if size <= best {
            continue;
        }
        let mut rest = family;
        let mut ok = true;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if family & !compat[i] != 0 {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let codegree_ok = low.iter().all(|&s| {
            let mut c = 0u64;
            let mut rest = family;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if universe[i] & s == s {
                    c += 1;
                }
            }
            c == 0 || c > threshold
        });
        if codegree_ok {
            best = size;
        }
    }
    Some(best)
}

/// Checks a sunflower from its edges alone: at least `p` distinct edges of
/// `h`, all pairwise intersections equal to the stated core.
pub fn independent_sunflower_check(h: &Hypergraph, sf: &Sunflower, p: usize) -> Result<(), String> {
    let edges: Vec<VertexSet> = sf.petals.iter().map(|q| VertexSet::from_bits(q.bits() | sf.core.bits())).collect();
    if edges.len() < p {
        return Err(format!("{} edges, need {p}", edges.len()));
    }
    for (i, e) in edges.iter().enumerate() {
        if !h.edges().contains(e) {
            return Err(format!("{e} is not an edge"));
        }
        for f in &edges[i + 1..] {
            if e == f {
                return Err(format!("{e} repeated"));
            }
            if e.bits() & f.bits() != sf.core.bits() {
                return Err(format!("{e} and {f} do not meet in the core {}", sf.core));
            }
        }
    }
    if edges.len() == 1 && edges[0] != sf.core {
        return Err("single-edge sunflower must have the edge as core".into());
    }
    Ok(())
}
