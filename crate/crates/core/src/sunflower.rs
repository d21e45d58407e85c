//! Sunflowers: families whose pairwise intersections all equal one core.
//!
//! Two finders live here. [`find_sunflower`] runs the Erdős–Rado recursion
//! (a maximal disjoint subfamily, else recurse into the link of the
//! highest-degree vertex) and is guaranteed to succeed above
//! `r! (p-1)^r` edges. [`find_bounded_core_sunflower`] scans every candidate
//! core up to a size cap and is complete at any size.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::Error;
use crate::hypergraph::{require_hypothesis, Hypergraph, Params};
use crate::set::VertexSet;

/// A core plus pairwise-disjoint petals.
///
/// A one-edge sunflower stores the edge as its core and a single empty petal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sunflower {
    pub core: VertexSet,
    pub petals: Vec<VertexSet>,
}

impl Sunflower {
    pub fn single(edge: VertexSet) -> Self {
        Sunflower { core: edge, petals: alloc::vec![VertexSet::EMPTY] }
    }

    pub fn petal_count(&self) -> usize {
        self.petals.len()
    }

    /// The edges `core ∪ petal`, in petal order.
    pub fn edges(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.petals.iter().map(move |p| self.core.union(*p))
    }

    /// Checks the structural invariants and that every edge lies in `h`.
    pub fn validate(&self, h: &Hypergraph) -> Result<(), Error> {
        self.validate_shape()?;
        match self.edges().find(|e| !h.contains(*e)) {
            Some(e) => Err(Error::NotAnEdge(e)),
            None => Ok(()),
        }
    }

    fn validate_shape(&self) -> Result<(), Error> {
        match self.petals.as_slice() {
            [] => return Err(Error::InvalidSunflower("no petals")),
            [only] if !only.is_empty() => {
                return Err(Error::InvalidSunflower("a one-edge sunflower has the edge as its core"))
            }
            _ => {}
        }
        let mut used = self.core;
        for p in &self.petals {
            if !p.is_disjoint(self.core) {
                return Err(Error::InvalidSunflower("petal meets the core"));
            }
            if !p.is_disjoint(used) {
                return Err(Error::InvalidSunflower("petals are not pairwise disjoint"));
            }
            if p.is_empty() && self.petals.len() > 1 {
                return Err(Error::InvalidSunflower("empty petal repeats the core as an edge"));
            }
            used = used.union(*p);
        }
        Ok(())
    }

    /// One-petal results are rewritten to the one-edge convention.
    fn normalized(core: VertexSet, petals: Vec<VertexSet>) -> Self {
        match petals.as_slice() {
            [only] => Sunflower::single(core.union(*only)),
            _ => Sunflower { core, petals },
        }
    }
}

/// The Erdős–Rado bound `r! (p-1)^r`, saturating.
pub fn erdos_rado_bound(r: u32, p: u32) -> u64 {
    let mut acc: u64 = 1;
    for j in 2..=u64::from(r) {
        acc = acc.saturating_mul(j);
    }
    let base = u64::from(p.saturating_sub(1));
    for _ in 0..r {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Sunflower with at least `p` petals via the Erdős–Rado recursion.
///
/// Always succeeds when `|H| > r! (p-1)^r`; below that bound `None` means
/// only that the recursion found nothing. `p = 0` is treated as `p = 1`.
pub fn find_sunflower(h: &Hypergraph, p: u32) -> Option<Sunflower> {
    let p = p.max(1) as usize;
    let (core, petals) = erdos_rado(h.edges().to_vec(), p)?;
    Some(Sunflower::normalized(core, petals))
}

fn erdos_rado(family: Vec<VertexSet>, p: usize) -> Option<(VertexSet, Vec<VertexSet>)> {
    if family.is_empty() {
        return None;
    }
    let mut used = VertexSet::EMPTY;
    let mut disjoint = Vec::new();
    for &e in &family {
        if e.is_disjoint(used) {
            disjoint.push(e);
            used = used.union(e);
        }
    }
    if disjoint.len() >= p {
        return Some((VertexSet::EMPTY, disjoint));
    }
    let support = family.iter().fold(VertexSet::EMPTY, |acc, e| acc.union(*e));
    // max degree, smallest label on ties
    let pivot = support
        .iter()
        .map(|v| (family.iter().filter(|e| e.contains(v)).count(), v))
        .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))?
        .1;
    let pivot_set = VertexSet::singleton(pivot);
    let mut link: Vec<VertexSet> = family
        .iter()
        .filter(|e| e.contains(pivot))
        .map(|e| e.difference(pivot_set))
        .collect();
    link.sort_unstable();
    let (core, petals) = erdos_rado(link, p)?;
    Some((core.insert(pivot), petals))
}

/// First sunflower with at least `p` petals and core of size at most
/// `max_core`, scanning cores by size and then colex order.
///
/// A core smaller than `r` needs at least two petals to be a core at all;
/// a core of size `r` is an edge and only answers `p <= 1`.
pub fn find_bounded_core_sunflower(h: &Hypergraph, p: u32, max_core: u32) -> Option<Sunflower> {
    let p = p.max(1) as usize;
    let r = h.r();
    for size in 0..=max_core.min(r) {
        let cores: BTreeSet<VertexSet> = h.edges().iter().flat_map(|e| e.subsets(size)).collect();
        for core in cores {
            if size == r {
                if p <= 1 {
                    return Some(Sunflower::single(core));
                }
                continue;
            }
            let remainders: Vec<VertexSet> =
                h.edges_containing(core).map(|e| e.difference(core)).collect();
            if let Some(petals) = disjoint_subfamily(&remainders, p.max(2), r - size) {
                return Some(Sunflower { core, petals });
            }
        }
    }
    None
}

/// At least `need` pairwise-disjoint members of `family` (all of size
/// `width`), greedy first and exact search when greedy falls short but the
/// packing bound `width * greedy` leaves room.
pub(crate) fn disjoint_subfamily(family: &[VertexSet], need: usize, width: u32) -> Option<Vec<VertexSet>> {
    if family.len() < need {
        return None;
    }
    let mut used = VertexSet::EMPTY;
    let mut greedy = Vec::new();
    for &e in family {
        if e.is_disjoint(used) {
            greedy.push(e);
            used = used.union(e);
        }
    }
    if greedy.len() >= need {
        return Some(greedy);
    }
    // Every member of a disjoint family meets the greedy union.
    if greedy.len() * (width as usize) < need {
        return None;
    }
    let mut chosen = Vec::with_capacity(need);
    if pack(family, 0, VertexSet::EMPTY, need, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

fn pack(family: &[VertexSet], start: usize, used: VertexSet, need: usize, chosen: &mut Vec<VertexSet>) -> bool {
    if chosen.len() == need {
        return true;
    }
    for idx in start..family.len() {
        if family.len() - idx < need - chosen.len() {
            return false;
        }
        let e = family[idx];
        if e.is_disjoint(used) {
            chosen.push(e);
            if pack(family, idx + 1, used.union(e), need, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Looks for a sunflower with at least `r + 1` petals whose core is smaller
/// than `k - s + t`. Under the standing hypothesis none exists, so a
/// returned value refutes the core-size lower bound.
pub fn check_core_lower_bound(h: &Hypergraph, params: &Params) -> Result<Option<Sunflower>, Error> {
    require_hypothesis(h, params)?;
    let Some(cap) = params.core_size().checked_sub(1) else {
        return Ok(None);
    };
    Ok(find_bounded_core_sunflower(h, params.r + 1, cap.min(h.r())))
}
