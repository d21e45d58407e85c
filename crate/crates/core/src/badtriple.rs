//! Bad triples `(h, Y, Z)` with sunflowers `F_Y`, `F_Z`.
//!
//! The five conditions, with `b = k - s + t`:
//!
//! 1. `h` is an edge with `|h ∩ (Y ∪ Z)| < b`;
//! 2. `|Y| = |Z| = b` and `|Y ∩ Z| = t`;
//! 3. `Y`, `Z` are the cores of `F_Y`, `F_Z`, every petal of `F_Y` misses
//!    every edge of `F_Z`, and vice versa;
//! 4. every edge `h'` misses some petal of `F_Y` and some petal of `F_Z`;
//! 5. `I(P) = {Y' ⊆ Y ∪ Z : P ∪ Y' ∈ H}` is the same for every petal `P`
//!    of `F_Y`.
//!
//! Conditions 2–5 do not mention `h`. The search therefore works per core
//! pair `(Y, Z)`: it looks for petal families satisfying 2–5 (a *near miss*)
//! and then scans edges for condition 1.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::{Error, Limit};
use crate::hypergraph::{require_hypothesis, Hypergraph, Params};
use crate::limits::{Meter, SearchLimits};
use crate::set::VertexSet;
use crate::sunflower::Sunflower;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadTripleWitness {
    pub h: VertexSet,
    pub y: VertexSet,
    pub z: VertexSet,
    pub fy: Sunflower,
    pub fz: Sunflower,
    /// Verdicts for conditions 1–5, in order.
    pub conditions: [bool; 5],
}

impl BadTripleWitness {
    pub fn is_bad(&self) -> bool {
        self.conditions.iter().all(|c| *c)
    }
}

/// `I(P)`: the sets `Y' ⊆ yz` with `P ∪ Y'` an edge, colex ordered.
/// `petal` and `yz` must be disjoint.
pub fn compute_i(h: &Hypergraph, petal: VertexSet, yz: VertexSet) -> Result<Vec<VertexSet>, Error> {
    if !petal.is_disjoint(yz) {
        return Err(Error::InvalidArgument("petal meets Y ∪ Z"));
    }
    Ok(h.edges_containing(petal).map(|e| e.difference(petal)).filter(|rest| rest.is_subset(yz)).collect())
}

/// `I(P)` read literally even when `P` meets `yz`.
fn petal_profile(h: &Hypergraph, petal: VertexSet, yz: VertexSet) -> Vec<VertexSet> {
    let free = petal.intersection(yz);
    let mut out = BTreeSet::new();
    for e in h.edges_containing(petal) {
        let base = e.difference(petal);
        if base.is_subset(yz) {
            for extra in 0..=free.len() {
                for w in free.subsets(extra) {
                    out.insert(base.union(w));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Recomputes the five condition flags of `w` against `h`.
///
/// Rejects witnesses whose `h` or sunflower edges are not edges of `h`, or
/// whose sunflower cores differ from `Y`, `Z`.
pub fn check_conditions(h: &Hypergraph, w: &BadTripleWitness, params: &Params) -> Result<BadTripleWitness, Error> {
    if !h.contains(w.h) {
        return Err(Error::NotAnEdge(w.h));
    }
    if w.fy.core != w.y || w.fz.core != w.z {
        return Err(Error::InvalidWitness("sunflower cores must equal Y and Z"));
    }
    w.fy.validate(h)?;
    w.fz.validate(h)?;

    let b = params.core_size();
    let yz = w.y.union(w.z);
    let c1 = w.h.meet(yz) < b;
    let c2 = w.y.len() == b && w.z.len() == b && w.y.meet(w.z) == params.t;
    let c3 = w.fy.petals.iter().all(|p| w.fz.edges().all(|e| p.is_disjoint(e)))
        && w.fz.petals.iter().all(|q| w.fy.edges().all(|e| q.is_disjoint(e)));
    let c4 = h.edges().iter().all(|e| {
        w.fy.petals.iter().any(|p| p.is_disjoint(*e)) && w.fz.petals.iter().any(|q| q.is_disjoint(*e))
    });
    let mut profiles = w.fy.petals.iter().map(|p| petal_profile(h, *p, yz));
    let c5 = match profiles.next() {
        Some(first) => profiles.all(|other| other == first),
        None => true,
    };
    Ok(BadTripleWitness { conditions: [c1, c2, c3, c4, c5], ..w.clone() })
}

/// Sunflower families for a core pair satisfying conditions 2–5.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearMiss {
    pub y: VertexSet,
    pub z: VertexSet,
    pub fy: Sunflower,
    pub fz: Sunflower,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleSearchOutcome {
    pub witness: Option<BadTripleWitness>,
    pub pairs_examined: u64,
    pub nodes: u64,
}

/// Bounded exhaustive search for a bad triple.
///
/// Requires the standing hypothesis, under which no bad triple exists; a
/// returned witness is a refutation and re-validates with all five flags.
/// Hitting a limit is an error, never an empty answer.
pub fn search_bad_triple(h: &Hypergraph, params: &Params, limits: &SearchLimits<'_>) -> Result<TripleSearchOutcome, Error> {
    require_hypothesis(h, params)?;
    let mut search = TripleSearch::new(h, params, *limits);
    let b = params.core_size();
    let mut found = None;
    search.for_each_pair(|search, y, z| {
        let yz = y.union(z);
        let Some(&culprit) = h.edges().iter().find(|e| e.meet(yz) < b) else {
            return Ok(true);
        };
        if let Some(miss) = search.near_miss(y, z)? {
            let candidate = BadTripleWitness {
                h: culprit,
                y,
                z,
                fy: miss.fy,
                fz: miss.fz,
                conditions: [false; 5],
            };
            let checked = check_conditions(h, &candidate, params)?;
            debug_assert!(checked.is_bad());
            found = Some(checked);
            return Ok(false);
        }
        Ok(true)
    })?;
    Ok(TripleSearchOutcome { witness: found, pairs_examined: search.pairs, nodes: search.meter.nodes })
}

/// Counters from probing the two structural lemmas on every near miss.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaReport {
    /// Ordered core pairs `(Y, Z)` with `|Y ∩ Z| = t`.
    pub core_pairs: u64,
    /// Pairs admitting families that satisfy conditions 2–5.
    pub near_miss_pairs: u64,
    /// Triples `(h, Y, Z)` over near misses with `|h ∩ Z| = t`.
    pub less_s_candidates: u64,
    /// Of those, triples with `|h ∩ Y ∩ Z| >= s`, where condition 1 must fail.
    pub less_s_exercised: u64,
    /// Triples with `|h ∩ Z| = t`, condition 1, and `|h ∩ Y ∩ Z| >= s`.
    pub less_s_violations: u64,
    /// `(h, near miss)` combinations checked for `|h ∩ Y|, |h ∩ Z| >= t`.
    pub t_int_checked: u64,
    pub t_int_violations: u64,
    /// Genuine bad triples met along the way.
    pub bad_triples: u64,
    /// Whether some bad triple has `|h ∩ Z| = t` and `|h ∩ Y ∩ Z| >= t-s+1`;
    /// vacuously true when there are none.
    pub t_int_form_found: bool,
}

impl LemmaReport {
    pub fn is_clean(&self) -> bool {
        self.less_s_violations == 0 && self.t_int_violations == 0 && (self.bad_triples == 0 || self.t_int_form_found)
    }
}

/// Probes the lemma bounds on every near miss, i.e. every core pair whose
/// families satisfy conditions 2–5 with condition 1 relaxed.
///
/// For `|h ∩ Z| = t` the lemma forces `|h ∩ Y ∩ Z| < s` whenever condition 1
/// holds; equivalently, near misses with `|h ∩ Y ∩ Z| >= s` must fail
/// condition 1. Independently every edge must meet both `Y` and `Z` in at
/// least `t` vertices.
pub fn check_less_s_and_t_int(h: &Hypergraph, params: &Params, limits: &SearchLimits<'_>) -> Result<LemmaReport, Error> {
    require_hypothesis(h, params)?;
    let mut search = TripleSearch::new(h, params, *limits);
    let (b, s, t) = (params.core_size(), params.s, params.t);
    let mut report = LemmaReport { t_int_form_found: true, ..Default::default() };
    let mut saw_form = false;
    search.for_each_pair(|search, y, z| {
        report.core_pairs += 1;
        if search.near_miss(y, z)?.is_none() {
            return Ok(true);
        }
        report.near_miss_pairs += 1;
        let yz = y.union(z);
        let middle = y.intersection(z);
        for &e in h.edges() {
            let cond1 = e.meet(yz) < b;
            report.t_int_checked += 1;
            if e.meet(y) < t || e.meet(z) < t {
                report.t_int_violations += 1;
            }
            if cond1 {
                report.bad_triples += 1;
                if e.meet(z) == t && e.meet(middle) + s > t {
                    saw_form = true;
                }
            }
            if e.meet(z) == t {
                report.less_s_candidates += 1;
                if e.meet(middle) >= s {
                    report.less_s_exercised += 1;
                    if cond1 {
                        report.less_s_violations += 1;
                    }
                }
            }
        }
        Ok(true)
    })?;
    if report.bad_triples > 0 {
        report.t_int_form_found = saw_form;
    }
    Ok(report)
}

struct TripleSearch<'h, 'l> {
    h: &'h Hypergraph,
    params: Params,
    limits: SearchLimits<'l>,
    meter: Meter<'l>,
    pairs: u64,
    /// Candidate cores and the remainders `e \ core` of edges containing them.
    cores: BTreeMap<VertexSet, Vec<VertexSet>>,
}

impl<'h, 'l> TripleSearch<'h, 'l> {
    fn new(h: &'h Hypergraph, params: &Params, limits: SearchLimits<'l>) -> Self {
        let b = params.core_size();
        let r = h.r();
        let mut cores = BTreeMap::new();
        if b <= r {
            let shadow: BTreeSet<VertexSet> = h.edges().iter().flat_map(|e| e.subsets(b)).collect();
            for core in shadow {
                let rem: Vec<VertexSet> = h.edges_containing(core).map(|e| e.difference(core)).collect();
                // below the rank a core needs two petals
                if b == r || rem.len() >= 2 {
                    cores.insert(core, rem);
                }
            }
        }
        TripleSearch { h, params: *params, limits, meter: Meter::new(limits), pairs: 0, cores }
    }

    /// Calls `visit` on ordered pairs `(Y, Z)` with `|Y ∩ Z| = t` in colex
    /// order until it returns `false`.
    fn for_each_pair<F>(&mut self, mut visit: F) -> Result<(), Error>
    where
        F: FnMut(&mut Self, VertexSet, VertexSet) -> Result<bool, Error>,
    {
        let keys: Vec<VertexSet> = self.cores.keys().copied().collect();
        let t = self.params.t;
        for &y in &keys {
            for &z in &keys {
                if y.meet(z) != t {
                    continue;
                }
                self.pairs += 1;
                if self.pairs > self.limits.max_pairs {
                    return Err(Error::BudgetExceeded(Limit::Pairs(self.limits.max_pairs)));
                }
                if !visit(self, y, z)? {
                    return Ok(());
                }
            }
        }
        Ok(())
    }

    /// Families with cores `y`, `z` satisfying conditions 2–5, if any.
    fn near_miss(&mut self, y: VertexSet, z: VertexSet) -> Result<Option<NearMiss>, Error> {
        let r = self.h.r();
        let single = self.params.core_size() == r;
        let min = if single { 1 } else { 2 };
        let yz = y.union(z);
        let ys: Vec<VertexSet> = self.cores[&y].iter().copied().filter(|p| p.is_disjoint(z)).collect();
        let zs: Vec<VertexSet> = self.cores[&z].iter().copied().filter(|q| q.is_disjoint(y)).collect();
        if ys.len() < min || zs.len() < min {
            return Ok(None);
        }

        // Condition 5 splits F_Y's candidates into classes of equal I(P).
        let mut classes: BTreeMap<Vec<VertexSet>, Vec<VertexSet>> = BTreeMap::new();
        for &p in &ys {
            classes.entry(compute_i(self.h, p, yz)?).or_default().push(p);
        }
        let mut ordered: Vec<(Vec<VertexSet>, Vec<VertexSet>)> = classes.into_iter().collect();
        // largest class first, colex-least fingerprint on ties (stable sort)
        ordered.sort_by_key(|c| core::cmp::Reverse(c.1.len()));

        let cap = self.limits.petal_cap(r);
        for (_, class) in ordered {
            if class.len() < min {
                continue;
            }
            let mut petals = PetalSearch {
                edges: self.h.edges(),
                sides: [&class, &zs],
                chosen: [Vec::new(), Vec::new()],
                min,
                cap,
                capped: false,
                meter: &mut self.meter,
            };
            if petals.dfs(VertexSet::EMPTY)? {
                let [cy, cz] = petals.chosen;
                let fy = family(y, cy.iter().map(|&i| class[i]), single);
                let fz = family(z, cz.iter().map(|&i| zs[i]), single);
                return Ok(Some(NearMiss { y, z, fy, fz }));
            }
            if petals.capped {
                return Err(Error::BudgetExceeded(Limit::Petals(cap)));
            }
        }
        Ok(None)
    }
}

fn family<I: Iterator<Item = VertexSet>>(core: VertexSet, petals: I, single: bool) -> Sunflower {
    if single {
        return Sunflower::single(core);
    }
    let mut petals: Vec<VertexSet> = petals.collect();
    petals.sort_unstable();
    Sunflower { core, petals }
}

/// Picks pairwise-disjoint petals for both sides so that every edge misses
/// some chosen petal on each side (condition 4) and each side has `min`.
struct PetalSearch<'a, 'm, 'l> {
    edges: &'a [VertexSet],
    sides: [&'a [VertexSet]; 2],
    chosen: [Vec<usize>; 2],
    min: usize,
    cap: usize,
    capped: bool,
    meter: &'m mut Meter<'l>,
}

impl PetalSearch<'_, '_, '_> {
    fn usable(&self, side: usize, idx: usize, used: VertexSet) -> bool {
        !self.chosen[side].contains(&idx) && self.sides[side][idx].is_disjoint(used)
    }

    fn avoided(&self, side: usize, edge: VertexSet) -> bool {
        self.chosen[side].iter().any(|&i| self.sides[side][i].is_disjoint(edge))
    }

    fn dfs(&mut self, used: VertexSet) -> Result<bool, Error> {
        self.meter.tick()?;

        // Most constrained unmet (side, edge) demand; fail fast on a dead one.
        let mut branch: Option<(usize, Vec<usize>)> = None;
        for &e in self.edges {
            for side in 0..2 {
                if self.avoided(side, e) {
                    continue;
                }
                let cands: Vec<usize> = (0..self.sides[side].len())
                    .filter(|&i| self.usable(side, i, used) && self.sides[side][i].is_disjoint(e))
                    .collect();
                if cands.is_empty() {
                    return Ok(false);
                }
                if branch.as_ref().is_none_or(|(_, best)| cands.len() < best.len()) {
                    branch = Some((side, cands));
                }
            }
        }
        if branch.is_none() {
            for side in 0..2 {
                if self.chosen[side].len() < self.min {
                    let cands: Vec<usize> =
                        (0..self.sides[side].len()).filter(|&i| self.usable(side, i, used)).collect();
                    if cands.is_empty() {
                        return Ok(false);
                    }
                    branch = Some((side, cands));
                    break;
                }
            }
        }
        let Some((side, cands)) = branch else {
            return Ok(true);
        };
        if self.chosen[side].len() >= self.cap {
            self.capped = true;
            return Ok(false);
        }
        for idx in cands {
            self.chosen[side].push(idx);
            let found = self.dfs(used.union(self.sides[side][idx]))?;
            if found {
                return Ok(true);
            }
            self.chosen[side].pop();
        }
        Ok(false)
    }
}
