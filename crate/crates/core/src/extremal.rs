//! Exhaustive maximization of `|H|` over `t`-intersecting `r`-graphs on
//! `[n]` whose positive `(r-s)`-codegree exceeds `C(k-1, s)`.
//!
//! Branch and bound over the `C(n, r)` candidate edges, include/exclude on
//! the lowest-index remaining candidate. Feasibility is neither up- nor
//! down-closed, so codegree is enforced by a sound look-ahead: an
//! `(r-s)`-set that is (or would become) covered must have more than
//! `C(k-1, s)` supersets among the edges still in play.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::hypergraph::{check_shape, Hypergraph, Params};
use crate::kernels::{kernel_edge_count, main_extremal};
use crate::limits::{Meter, SearchLimits};
use crate::set::{binomial, VertexSet};

/// Largest candidate universe `C(n, r)` the searches accept.
pub const MAX_UNIVERSE: u64 = 4096;

/// Largest ground set for minimal-image canonical forms.
pub const MAX_CANONICAL_N: u32 = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Feasibility {
    pub uniform: bool,
    pub t_intersecting: bool,
    pub codegree_ok: bool,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        self.uniform && self.t_intersecting && self.codegree_ok
    }
}

pub fn feasible(h: &Hypergraph, params: &Params) -> Feasibility {
    let uniform = h.r() == params.r;
    Feasibility {
        uniform,
        t_intersecting: h.is_t_intersecting(params.t),
        codegree_ok: uniform
            && h.min_positive_degree(params.codegree_rank()).is_ok_and(|d| d.exceeds(params.codegree_threshold())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub max_edges: u64,
    pub witness: Hypergraph,
    /// The tree was exhausted, so no feasible graph is larger.
    pub optimal: bool,
    pub nodes_explored: u64,
    /// `|(2k-2s+t, k-s+t)`-kernel system on `[n]|`, zero when it does not fit.
    pub kernel_count: u64,
    pub matches_kernel: bool,
    /// The witness is a `(2k-2s+t, k-s+t)`-kernel system for some kernel set.
    pub witness_is_kernel: bool,
}

/// Maximum feasible `r`-graph on `[n]`.
///
/// With `symmetry` the first edge is fixed to `{0, .., r-1}` and the second
/// to one representative per intersection size; both reductions are exact.
/// The incumbent starts at the kernel system when it is feasible. A budget
/// stop returns the incumbent with `optimal = false`.
pub fn max_feasible(
    n: u32,
    params: &Params,
    limits: &SearchLimits<'_>,
    symmetry: bool,
) -> Result<SearchResult, Error> {
    let mut space = Space::new(n, params)?;
    let (a, b) = (params.kernel_size(), params.core_size());
    let kernel_count = if a <= n { kernel_edge_count(n, params.r, a, b) } else { 0 };

    if a <= n && params.r >= b {
        let kernel = main_extremal(params, n)?;
        if feasible(&kernel, params).is_feasible() {
            space.best = kernel.edges().to_vec();
        }
    }

    let mut meter = Meter::new(*limits);
    let outcome = {
        let mut walk = Walk { space: &mut space, meter: &mut meter, collect: None };
        if symmetry {
            walk.symmetric_root()
        } else {
            let all = walk.space.full();
            walk.node(&mut Vec::new(), walk.space.empty_bits(), all, true)
        }
    };
    let optimal = match outcome {
        Ok(()) => true,
        Err(Error::BudgetExceeded(_)) => false,
        Err(e) => return Err(e),
    };

    let mut edges = space.best.clone();
    edges.sort_unstable();
    let witness = Hypergraph::from_sorted(n, params.r, edges);
    let max_edges = witness.len() as u64;
    let witness_is_kernel = is_kernel_system(&witness, a, b).is_some();
    Ok(SearchResult {
        max_edges,
        witness,
        optimal,
        nodes_explored: meter.nodes,
        kernel_count,
        matches_kernel: max_edges == kernel_count,
        witness_is_kernel,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Only graphs with at most this many edges.
    pub max_edges: Option<usize>,
    /// Keep one minimal-image representative per isomorphism class.
    pub up_to_isomorphism: bool,
    pub max_results: u64,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { max_edges: None, up_to_isomorphism: false, max_results: 1_000_000 }
    }
}

/// Every feasible `r`-graph on `[n]` (the empty one included), sorted.
pub fn enumerate_feasible(
    n: u32,
    params: &Params,
    options: &EnumerateOptions,
    limits: &SearchLimits<'_>,
) -> Result<Vec<Hypergraph>, Error> {
    if options.up_to_isomorphism && n > MAX_CANONICAL_N {
        return Err(Error::TooLarge {
            what: "ground set for canonical forms",
            size: u64::from(n),
            cap: u64::from(MAX_CANONICAL_N),
        });
    }
    let mut space = Space::new(n, params)?;
    let mut meter = Meter::new(*limits);
    let mut found = Vec::new();
    {
        let collect = Collect { out: &mut found, cap: options.max_edges, max_results: options.max_results };
        let mut walk = Walk { space: &mut space, meter: &mut meter, collect: Some(collect) };
        let all = walk.space.full();
        walk.node(&mut Vec::new(), walk.space.empty_bits(), all, true)?;
    }
    let graphs = found.into_iter().map(|mut edges| {
        edges.sort_unstable();
        Hypergraph::from_sorted(n, params.r, edges)
    });
    let mut out: Vec<Hypergraph> = if options.up_to_isomorphism {
        let reps: Result<BTreeSet<Hypergraph>, Error> = graphs.map(|h| canonical_form(&h)).collect();
        reps?.into_iter().collect()
    } else {
        graphs.collect()
    };
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.edges().cmp(y.edges())));
    Ok(out)
}

/// The colex-least `(2k-2s+t)`-set `W` with `|h ∩ W| >= k-s+t` for every
/// edge, i.e. a kernel set of a kernel system containing `h`.
pub fn subset_of_kernel_check(h: &Hypergraph, params: &Params) -> Option<VertexSet> {
    let (a, b) = (params.kernel_size(), params.core_size());
    if a > h.n() {
        return None;
    }
    h.ground().subsets(a).find(|w| h.edges().iter().all(|e| e.meet(*w) >= b))
}

/// A kernel set `W` with `H` equal to the `(a, b)`-kernel system on `W`.
pub fn is_kernel_system(h: &Hypergraph, a: u32, b: u32) -> Option<VertexSet> {
    if a > h.n() || h.len() as u64 != kernel_edge_count(h.n(), h.r(), a, b) {
        return None;
    }
    // Containment plus equal size forces equality.
    h.ground().subsets(a).find(|w| h.edges().iter().all(|e| e.meet(*w) >= b))
}

/// Minimal image of `h` under all vertex permutations: the relabeling whose
/// colex-sorted edge list is lexicographically least.
pub fn canonical_form(h: &Hypergraph) -> Result<Hypergraph, Error> {
    let n = h.n();
    if n > MAX_CANONICAL_N {
        return Err(Error::TooLarge { what: "ground set for canonical forms", size: u64::from(n), cap: u64::from(MAX_CANONICAL_N) });
    }
    let mut perm: Vec<u32> = (0..n).collect();
    let mut best = h.edges().to_vec();
    let mut scratch = Vec::with_capacity(h.len());
    // Heap's algorithm
    let mut counters = vec![0usize; n as usize];
    let mut idx = 1;
    while idx < n as usize {
        if counters[idx] < idx {
            let swap = if idx % 2 == 0 { 0 } else { counters[idx] };
            perm.swap(swap, idx);
            scratch.clear();
            scratch.extend(h.edges().iter().map(|e| e.map(&perm)));
            scratch.sort_unstable();
            if scratch < best {
                core::mem::swap(&mut scratch, &mut best);
            }
            counters[idx] += 1;
            idx = 1;
        } else {
            counters[idx] = 0;
            idx += 1;
        }
    }
    Ok(Hypergraph::from_sorted(n, h.r(), best))
}

type Bits = Vec<u64>;

#[inline]
fn count_and(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

#[inline]
fn has(bits: &[u64], i: usize) -> bool {
    bits[i / 64] & (1u64 << (i % 64)) != 0
}

#[inline]
fn set_bit(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1u64 << (i % 64);
}

#[inline]
fn clear_bit(bits: &mut [u64], i: usize) {
    bits[i / 64] &= !(1u64 << (i % 64));
}

fn ones(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(w, &word)| {
        let mut word = word;
        core::iter::from_fn(move || {
            if word == 0 {
                return None;
            }
            let b = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(w * 64 + b)
        })
    })
}

/// Precomputed candidate universe.
struct Space {
    r: u32,
    t: u32,
    n: u32,
    universe: Vec<VertexSet>,
    words: usize,
    /// `compat[i]`: candidates meeting edge `i` in at least `t` vertices.
    compat: Vec<Bits>,
    /// Ids of each candidate's `(r-s)`-subsets.
    subsets: Vec<Vec<usize>>,
    /// For each `(r-s)`-set id, the candidates containing it.
    containing: Vec<Bits>,
    threshold: u64,
    best: Vec<VertexSet>,
}

impl Space {
    fn new(n: u32, params: &Params) -> Result<Self, Error> {
        check_shape(n, params.r)?;
        let size = binomial(u64::from(n), u64::from(params.r));
        if size > MAX_UNIVERSE {
            return Err(Error::TooLarge { what: "candidate universe C(n, r)", size, cap: MAX_UNIVERSE });
        }
        let universe: Vec<VertexSet> = VertexSet::prefix(n).subsets(params.r).collect();
        let words = universe.len().div_ceil(64).max(1);
        let compat = universe
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let mut bits = vec![0u64; words];
                for (j, f) in universe.iter().enumerate() {
                    if i != j && e.meet(*f) >= params.t {
                        set_bit(&mut bits, j);
                    }
                }
                bits
            })
            .collect();
        let rank = params.codegree_rank();
        let mut ids: BTreeMap<VertexSet, usize> = BTreeMap::new();
        let mut containing: Vec<Bits> = Vec::new();
        let mut subsets = Vec::with_capacity(universe.len());
        for (i, e) in universe.iter().enumerate() {
            let mine: Vec<usize> = e
                .subsets(rank)
                .map(|sub| {
                    let next = ids.len();
                    let id = *ids.entry(sub).or_insert(next);
                    if id == containing.len() {
                        containing.push(vec![0u64; words]);
                    }
                    set_bit(&mut containing[id], i);
                    id
                })
                .collect();
            subsets.push(mine);
        }
        Ok(Space {
            r: params.r,
            t: params.t,
            n,
            universe,
            words,
            compat,
            subsets,
            containing,
            threshold: params.codegree_threshold(),
            best: Vec::new(),
        })
    }

    fn empty_bits(&self) -> Bits {
        vec![0u64; self.words]
    }

    fn full(&self) -> Bits {
        let mut bits = self.empty_bits();
        for i in 0..self.universe.len() {
            set_bit(&mut bits, i);
        }
        bits
    }

    fn index_of(&self, e: VertexSet) -> Option<usize> {
        self.universe.binary_search(&e).ok()
    }

    /// Exact codegree test for the chosen edges.
    fn codegree_ok(&self, included: &[usize], inc: &[u64]) -> bool {
        included
            .iter()
            .all(|&e| self.subsets[e].iter().all(|&s| u64::from(count_and(inc, &self.containing[s])) > self.threshold))
    }

    /// Drops candidates that would cover a hopeless `(r-s)`-set and reports
    /// whether every already covered set can still clear the threshold.
    fn tighten(&self, included: &[usize], inc: &[u64], cand: &mut Bits) -> bool {
        let mut alive: Bits = inc.iter().zip(cand.iter()).map(|(a, b)| a | b).collect();
        loop {
            let mut changed = false;
            let doomed: Vec<usize> = ones(cand)
                .filter(|&e| {
                    self.subsets[e]
                        .iter()
                        .any(|&s| u64::from(count_and(&alive, &self.containing[s])) <= self.threshold)
                })
                .collect();
            for e in doomed {
                clear_bit(cand, e);
                clear_bit(&mut alive, e);
                changed = true;
            }
            if !changed {
                break;
            }
        }
        included
            .iter()
            .all(|&e| self.subsets[e].iter().all(|&s| u64::from(count_and(&alive, &self.containing[s])) > self.threshold))
    }
}

struct Collect<'o> {
    out: &'o mut Vec<Vec<VertexSet>>,
    cap: Option<usize>,
    max_results: u64,
}

struct Walk<'s, 'm, 'l, 'o> {
    space: &'s mut Space,
    meter: &'m mut Meter<'l>,
    collect: Option<Collect<'o>>,
}

impl Walk<'_, '_, '_, '_> {
    /// `fresh` marks nodes reached by an include step (or the root), so each
    /// edge set is evaluated once.
    fn node(&mut self, included: &mut Vec<usize>, inc: Bits, mut cand: Bits, fresh: bool) -> Result<(), Error> {
        self.meter.tick()?;
        if fresh && self.space.codegree_ok(included, &inc) {
            self.record(included)?;
        }
        if let Some(c) = &self.collect {
            if c.cap.is_some_and(|cap| included.len() >= cap) {
                return Ok(());
            }
        }
        if !self.space.tighten(included, &inc, &mut cand) {
            return Ok(());
        }
        let remaining = cand.iter().map(|w| w.count_ones() as usize).sum::<usize>();
        if self.collect.is_none() && included.len() + remaining <= self.space.best.len() {
            return Ok(());
        }
        let Some(v) = ones(&cand).next() else {
            return Ok(());
        };

        let mut with: Bits = cand.iter().zip(&self.space.compat[v]).map(|(a, b)| a & b).collect();
        clear_bit(&mut with, v);
        let mut inc_v = inc.clone();
        set_bit(&mut inc_v, v);
        included.push(v);
        let res = self.node(included, inc_v, with, true);
        included.pop();
        res?;

        clear_bit(&mut cand, v);
        self.node(included, inc, cand, false)
    }

    fn record(&mut self, included: &[usize]) -> Result<(), Error> {
        match &mut self.collect {
            Some(c) => {
                if c.out.len() as u64 >= c.max_results {
                    return Err(Error::BudgetExceeded(crate::error::Limit::Results(c.max_results)));
                }
                c.out.push(included.iter().map(|&i| self.space.universe[i]).collect());
            }
            None => {
                if included.len() > self.space.best.len() {
                    self.space.best = included.iter().map(|&i| self.space.universe[i]).collect();
                }
            }
        }
        Ok(())
    }

    /// Root under vertex symmetry: the empty graph, or a graph containing
    /// `{0, .., r-1}` and, when larger, one representative second edge per
    /// intersection size.
    fn symmetric_root(&mut self) -> Result<(), Error> {
        self.meter.tick()?;
        if self.space.universe.is_empty() {
            return Ok(());
        }
        let (n, r, t) = (self.space.n, self.space.r, self.space.t);
        let first = self.space.index_of(VertexSet::prefix(r)).expect("prefix is a candidate");
        let mut inc = self.space.empty_bits();
        set_bit(&mut inc, first);
        let mut included = vec![first];
        if self.space.codegree_ok(&included, &inc) {
            self.record(&included)?;
        }
        let mut cand = self.space.compat[first].clone();
        if !self.space.tighten(&included, &inc, &mut cand) {
            return Ok(());
        }
        for shared in (t..r).rev() {
            // {0, .., shared-1} ∪ {r, .., 2r-shared-1}
            if 2 * r - shared > n {
                continue;
            }
            let rep = VertexSet::prefix(shared).union(VertexSet::prefix(2 * r - shared).difference(VertexSet::prefix(r)));
            let Some(second) = self.space.index_of(rep) else { continue };
            if !has(&cand, second) {
                continue;
            }
            let mut with: Bits = cand.iter().zip(&self.space.compat[second]).map(|(a, b)| a & b).collect();
            clear_bit(&mut with, second);
            let mut inc2 = inc.clone();
            set_bit(&mut inc2, second);
            included.push(second);
            let res = self.node(&mut included, inc2, with, true);
            included.pop();
            res?;
        }
        Ok(())
    }
}
