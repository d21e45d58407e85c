//! Uniform hypergraphs over `[n]` and the basic predicates on them:
//! t-intersection and minimum positive i-degree.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Hypothesis};
use crate::set::{binomial, VertexSet, MAX_VERTICES};

/// A natural number or infinity. `Infinity` sorts above every `Finite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Finite(u64),
    Infinity,
}

impl ExtNat {
    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Finite(v) => Some(v),
            ExtNat::Infinity => None,
        }
    }

    /// Strict comparison against a natural threshold.
    pub fn exceeds(self, threshold: u64) -> bool {
        self > ExtNat::Finite(threshold)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(v) => write!(f, "{v}"),
            ExtNat::Infinity => f.write_str("infinity"),
        }
    }
}

/// The parameters `k, r, s, t` of the codegree problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Params {
    pub k: u32,
    pub r: u32,
    pub s: u32,
    pub t: u32,
}

impl Params {
    pub fn new(k: u32, r: u32, s: u32, t: u32) -> Result<Self, Error> {
        let reason = if s == 0 {
            Some("s must be positive")
        } else if s > k {
            Some("s exceeds k")
        } else if s > t {
            Some("s exceeds t")
        } else if t > r {
            Some("t exceeds r")
        } else if r > MAX_VERTICES {
            Some("r exceeds 64")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(Error::InvalidParams { k, s, t, r, reason }),
            None => Ok(Params { k, r, s, t }),
        }
    }

    /// `k - s + t`: size of the kernel threshold and of bad-triple cores.
    pub fn core_size(&self) -> u32 {
        self.k - self.s + self.t
    }

    /// `2k - 2s + t`: size of the kernel set of the extremal family.
    pub fn kernel_size(&self) -> u32 {
        2 * (self.k - self.s) + self.t
    }

    /// `C(k-1, s)`; the codegree must exceed this.
    pub fn codegree_threshold(&self) -> u64 {
        binomial(u64::from(self.k - 1), u64::from(self.s))
    }

    /// `C(k, s)`: the codegree attained by the extremal kernel system.
    pub fn kernel_codegree(&self) -> u64 {
        binomial(u64::from(self.k), u64::from(self.s))
    }

    /// `r - s`: the rank whose positive codegree is constrained.
    pub fn codegree_rank(&self) -> u32 {
        self.r - self.s
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} r={} s={} t={}", self.k, self.r, self.s, self.t)
    }
}

/// An `r`-uniform hypergraph on `[n]` with distinct edges kept in colex order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hypergraph {
    n: u32,
    r: u32,
    edges: Vec<VertexSet>,
}

impl Hypergraph {
    pub fn empty(n: u32, r: u32) -> Result<Self, Error> {
        check_shape(n, r)?;
        Ok(Hypergraph { n, r, edges: Vec::new() })
    }

    /// Validates and canonicalizes; duplicate edges are rejected.
    pub fn new<I>(n: u32, r: u32, edges: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = VertexSet>,
    {
        check_shape(n, r)?;
        let mut edges: Vec<VertexSet> = edges.into_iter().collect();
        for &e in &edges {
            check_edge(n, r, e)?;
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0]));
        }
        Ok(Hypergraph { n, r, edges })
    }

    /// Like [`Hypergraph::new`] but silently merges duplicates.
    pub fn from_edges_dedup<I>(n: u32, r: u32, edges: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = VertexSet>,
    {
        check_shape(n, r)?;
        let mut edges: Vec<VertexSet> = edges.into_iter().collect();
        for &e in &edges {
            check_edge(n, r, e)?;
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Hypergraph { n, r, edges })
    }

    /// Caller guarantees sorted, distinct, in-range, `r`-sized edges.
    pub(crate) fn from_sorted(n: u32, r: u32, edges: Vec<VertexSet>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|e| e.len() == r && e.fits(n)));
        Hypergraph { n, r, edges }
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn r(&self) -> u32 {
        self.r
    }

    #[inline]
    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, edge: VertexSet) -> bool {
        self.edges.binary_search(&edge).is_ok()
    }

    pub fn ground(&self) -> VertexSet {
        VertexSet::prefix(self.n)
    }

    /// Number of edges containing `set`.
    pub fn degree(&self, set: VertexSet) -> u64 {
        self.edges.iter().filter(|e| set.is_subset(**e)).count() as u64
    }

    /// Edges containing `set`, in colex order.
    pub fn edges_containing(&self, set: VertexSet) -> impl Iterator<Item = VertexSet> + '_ {
        self.edges.iter().copied().filter(move |e| set.is_subset(*e))
    }

    /// Every two distinct edges share at least `t` vertices.
    pub fn is_t_intersecting(&self, t: u32) -> bool {
        self.edges
            .iter()
            .enumerate()
            .all(|(idx, e)| self.edges[idx + 1..].iter().all(|f| e.meet(*f) >= t))
    }

    /// Counts of every covered `i`-set, keyed in colex order.
    fn iset_counts(&self, i: u32) -> Result<BTreeMap<VertexSet, u64>, Error> {
        if i > self.r {
            return Err(Error::DegreeOutOfRange { i, r: self.r });
        }
        let mut counts = BTreeMap::new();
        for e in &self.edges {
            for sub in e.subsets(i) {
                *counts.entry(sub).or_insert(0) += 1;
            }
        }
        Ok(counts)
    }

    /// `i`-sets contained in at least one edge, deduplicated, colex order.
    pub fn covered_isets(&self, i: u32) -> Result<Vec<VertexSet>, Error> {
        Ok(self.iset_counts(i)?.into_keys().collect())
    }

    /// Minimum over covered `i`-sets of the number of edges containing them;
    /// infinity for the empty hypergraph.
    pub fn min_positive_degree(&self, i: u32) -> Result<ExtNat, Error> {
        Ok(self.min_positive_degree_witness(i)?.0)
    }

    /// As [`Hypergraph::min_positive_degree`], plus the colex-least `i`-set
    /// attaining the minimum.
    pub fn min_positive_degree_witness(&self, i: u32) -> Result<(ExtNat, Option<VertexSet>), Error> {
        let counts = self.iset_counts(i)?;
        let best = counts
            .iter()
            .fold(None::<(u64, VertexSet)>, |best, (&set, &c)| match best {
                Some((b, _)) if b <= c => best,
                _ => Some((c, set)),
            });
        Ok(match best {
            Some((c, set)) => (ExtNat::Finite(c), Some(set)),
            None => (ExtNat::Infinity, None),
        })
    }

    /// Image under the vertex bijection `perm`, re-canonicalized.
    pub fn relabel(&self, perm: &[u32]) -> Result<Hypergraph, Error> {
        check_permutation(self.n, perm)?;
        let mut edges: Vec<VertexSet> = self.edges.iter().map(|e| e.map(perm)).collect();
        edges.sort_unstable();
        Ok(Hypergraph::from_sorted(self.n, self.r, edges))
    }

    /// Union of all edges.
    pub fn support(&self) -> VertexSet {
        self.edges.iter().fold(VertexSet::EMPTY, |acc, e| acc.union(*e))
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(n={}, r={}, ", self.n, self.r)?;
        f.debug_list().entries(self.edges.iter()).finish()?;
        f.write_str(")")
    }
}

/// Checks the standing hypothesis: `H` is an `r`-graph for `params.r`, is
/// `t`-intersecting, and has positive `(r-s)`-codegree above `C(k-1, s)`.
pub fn require_hypothesis(h: &Hypergraph, params: &Params) -> Result<(), Error> {
    if h.r() != params.r {
        return Err(Error::HypothesisViolation(Hypothesis::WrongUniformity {
            expected: params.r,
            found: h.r(),
        }));
    }
    if !h.is_t_intersecting(params.t) {
        return Err(Error::HypothesisViolation(Hypothesis::NotIntersecting { t: params.t }));
    }
    let degree = h.min_positive_degree(params.codegree_rank())?;
    let threshold = params.codegree_threshold();
    if !degree.exceeds(threshold) {
        return Err(Error::HypothesisViolation(Hypothesis::CodegreeTooSmall { degree, threshold }));
    }
    Ok(())
}

pub(crate) fn check_shape(n: u32, r: u32) -> Result<(), Error> {
    if n > MAX_VERTICES {
        return Err(Error::GroundTooLarge { n });
    }
    if r > n {
        return Err(Error::UniformityExceedsGround { r, n });
    }
    Ok(())
}

fn check_edge(n: u32, r: u32, e: VertexSet) -> Result<(), Error> {
    if !e.fits(n) {
        let vertex = e.max().unwrap_or(0);
        return Err(Error::VertexOutOfRange { vertex, n });
    }
    if e.len() != r {
        return Err(Error::WrongEdgeSize { edge: e, expected: r, found: e.len() });
    }
    Ok(())
}

pub(crate) fn check_permutation(n: u32, perm: &[u32]) -> Result<(), Error> {
    if perm.len() != n as usize {
        return Err(Error::NotAPermutation { n });
    }
    let mut seen = 0u64;
    for &v in perm {
        if v >= n || seen & (1u64 << v) != 0 {
            return Err(Error::NotAPermutation { n });
        }
        seen |= 1u64 << v;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn set(vs: &[u32]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn triangle(n: u32) -> Hypergraph {
        Hypergraph::new(n, 2, [set(&[0, 1]), set(&[0, 2]), set(&[1, 2])]).unwrap()
    }

    #[test]
    fn ext_nat_order() {
        assert!(ExtNat::Infinity > ExtNat::Finite(u64::MAX));
        assert!(ExtNat::Infinity.exceeds(1_000_000));
        assert!(!ExtNat::Finite(3).exceeds(3));
        assert!(ExtNat::Finite(4).exceeds(3));
    }

    #[test]
    fn params_regime() {
        assert!(Params::new(2, 2, 1, 1).is_ok());
        assert!(matches!(Params::new(1, 3, 2, 2), Err(Error::InvalidParams { .. })));
        assert!(matches!(Params::new(3, 3, 2, 1), Err(Error::InvalidParams { .. })));
        assert!(matches!(Params::new(3, 1, 1, 2), Err(Error::InvalidParams { .. })));
        assert!(matches!(Params::new(3, 3, 0, 1), Err(Error::InvalidParams { .. })));
        let p = Params::new(4, 4, 2, 2).unwrap();
        assert_eq!((p.core_size(), p.kernel_size(), p.codegree_threshold()), (4, 6, 3));
        assert_eq!(p.kernel_codegree(), 6);
    }

    #[test]
    fn construction_canonicalizes() {
        let h = Hypergraph::new(4, 2, [set(&[2, 3]), set(&[0, 1])]).unwrap();
        assert_eq!(h.edges(), &[set(&[0, 1]), set(&[2, 3])]);
        assert_eq!(
            Hypergraph::new(4, 2, [set(&[0, 1]), set(&[0, 1])]),
            Err(Error::DuplicateEdge(set(&[0, 1])))
        );
        assert!(matches!(
            Hypergraph::new(4, 2, [set(&[0, 1, 2])]),
            Err(Error::WrongEdgeSize { .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, 2, [set(&[0, 3])]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(matches!(Hypergraph::empty(2, 3), Err(Error::UniformityExceedsGround { .. })));
        assert!(matches!(Hypergraph::empty(65, 3), Err(Error::GroundTooLarge { .. })));
        let merged = Hypergraph::from_edges_dedup(4, 2, [set(&[0, 1]), set(&[0, 1])]).unwrap();
        assert_eq!(merged.len(), 1);
    }

    #[test]
    fn intersection_examples() {
        assert!(triangle(3).is_t_intersecting(1));
        assert!(!triangle(3).is_t_intersecting(2));
        let disjoint = Hypergraph::new(6, 3, [set(&[0, 1, 2]), set(&[3, 4, 5])]).unwrap();
        assert!(!disjoint.is_t_intersecting(1));
        let single = Hypergraph::new(6, 3, [set(&[0, 1, 2])]).unwrap();
        assert!(single.is_t_intersecting(3));
        assert!(Hypergraph::empty(6, 3).unwrap().is_t_intersecting(3));
    }

    #[test]
    fn min_positive_degree_examples() {
        let empty = Hypergraph::empty(5, 3).unwrap();
        assert_eq!(empty.min_positive_degree(2), Ok(ExtNat::Infinity));
        assert_eq!(triangle(3).min_positive_degree(1), Ok(ExtNat::Finite(2)));
        assert_eq!(triangle(3).min_positive_degree(0), Ok(ExtNat::Finite(3)));
        assert_eq!(triangle(3).min_positive_degree(2), Ok(ExtNat::Finite(1)));
        assert_eq!(
            triangle(3).min_positive_degree(3),
            Err(Error::DegreeOutOfRange { i: 3, r: 2 })
        );
        let all_triples =
            Hypergraph::new(5, 3, VertexSet::prefix(5).subsets(3)).unwrap();
        assert_eq!(all_triples.min_positive_degree(2), Ok(ExtNat::Finite(3)));

        let star = Hypergraph::new(4, 2, [set(&[0, 1]), set(&[0, 2]), set(&[0, 3])]).unwrap();
        assert_eq!(star.min_positive_degree_witness(1), Ok((ExtNat::Finite(1), Some(set(&[1])))));
    }

    #[test]
    fn covered_examples() {
        let h = Hypergraph::new(3, 3, [set(&[0, 1, 2])]).unwrap();
        assert_eq!(h.covered_isets(2).unwrap(), vec![set(&[0, 1]), set(&[0, 2]), set(&[1, 2])]);
        assert!(Hypergraph::empty(3, 2).unwrap().covered_isets(1).unwrap().is_empty());
        assert_eq!(triangle(3).covered_isets(0).unwrap(), vec![VertexSet::EMPTY]);
        assert!(triangle(3).covered_isets(3).is_err());
    }

    #[test]
    fn relabel_examples() {
        let t = triangle(4);
        assert_eq!(t.relabel(&[0, 1, 2, 3]).unwrap(), t);
        let swapped = t.relabel(&[3, 1, 2, 0]).unwrap();
        assert_eq!(swapped.edges(), &[set(&[1, 2]), set(&[1, 3]), set(&[2, 3])]);
        assert_eq!(t.relabel(&[0, 0, 1, 2]), Err(Error::NotAPermutation { n: 4 }));
        assert_eq!(t.relabel(&[0, 1, 2]), Err(Error::NotAPermutation { n: 4 }));
        assert_eq!(t.relabel(&[0, 1, 2, 4]), Err(Error::NotAPermutation { n: 4 }));
    }
}
