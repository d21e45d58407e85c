//! Word-sized vertex sets and colex-ordered subset enumeration.
//!
//! A [`VertexSet`] is a bitmask over a ground set `{0, .., n-1}` with
//! `n <= 64`. Because bit `v` carries weight `2^v`, numeric comparison of
//! the masks is exactly colexicographic comparison of the sets, so the
//! derived `Ord` is the canonical order used everywhere in the crate.

use core::fmt;

use crate::error::Error;

/// Largest supported ground-set size.
pub const MAX_VERTICES: u32 = 64;

/// A subset of `{0, .., 63}` stored as one machine word.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The initial segment `{0, .., len-1}`.
    #[inline]
    pub const fn prefix(len: u32) -> Self {
        if len >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << len) - 1)
        }
    }

    #[inline]
    pub const fn singleton(v: u32) -> Self {
        VertexSet(1u64 << v)
    }

    /// Builds a set from labels, checking each against the ground-set size.
    pub fn from_vertices<I>(n: u32, vertices: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = u32>,
    {
        if n > MAX_VERTICES {
            return Err(Error::GroundTooLarge { n });
        }
        let mut bits = 0u64;
        for v in vertices {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            bits |= 1u64 << v;
        }
        Ok(VertexSet(bits))
    }

    #[inline]
    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, v: u32) -> bool {
        v < 64 && self.0 & (1u64 << v) != 0
    }

    #[inline]
    pub const fn insert(self, v: u32) -> Self {
        VertexSet(self.0 | (1u64 << v))
    }

    #[inline]
    pub const fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub const fn meet(self, other: Self) -> u32 {
        (self.0 & other.0).count_ones()
    }

    #[inline]
    pub const fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// True when every element is below `n`.
    #[inline]
    pub const fn fits(self, n: u32) -> bool {
        n >= 64 || self.0 >> n == 0
    }

    /// Largest element, if any.
    #[inline]
    pub const fn max(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros())
        }
    }

    pub fn iter(self) -> Vertices {
        Vertices(self.0)
    }

    /// All `size`-subsets of `self` in colex order.
    pub fn subsets(self, size: u32) -> Subsets {
        Subsets::new(self, size)
    }

    /// Image under a vertex map; `perm[v]` is the image of `v`.
    pub fn map(self, perm: &[u32]) -> Self {
        self.iter().fold(VertexSet::EMPTY, |acc, v| acc.insert(perm[v as usize]))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, v) in self.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<u32> for VertexSet {
    /// Panics on labels `>= 64`; use [`VertexSet::from_vertices`] for
    /// untrusted input.
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        let mut bits = 0u64;
        for v in iter {
            assert!(v < MAX_VERTICES, "vertex {v} does not fit in a VertexSet");
            bits |= 1u64 << v;
        }
        VertexSet(bits)
    }
}

/// Ascending iterator over the elements of a set.
#[derive(Clone, Debug)]
pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}

/// Colex-ordered `k`-subsets of a fixed set.
///
/// Walks index combinations `c_0 < .. < c_{k-1}` of the set's elements; the
/// successor bumps the lowest index that has room and resets everything
/// below it.
#[derive(Clone, Debug)]
pub struct Subsets {
    elems: [u8; 64],
    m: usize,
    k: usize,
    idx: [u8; 64],
    done: bool,
}

impl Subsets {
    fn new(of: VertexSet, size: u32) -> Self {
        let mut elems = [0u8; 64];
        let mut m = 0;
        for v in of.iter() {
            elems[m] = v as u8;
            m += 1;
        }
        let k = size as usize;
        let mut idx = [0u8; 64];
        for (j, slot) in idx.iter_mut().enumerate().take(k.min(64)) {
            *slot = j as u8;
        }
        Subsets { elems, m, k, idx, done: k > m }
    }

    fn current(&self) -> VertexSet {
        let mut bits = 0u64;
        for &j in &self.idx[..self.k] {
            bits |= 1u64 << self.elems[j as usize];
        }
        VertexSet(bits)
    }

    fn advance(&mut self) {
        let k = self.k;
        for j in 0..k {
            let limit = if j + 1 < k { self.idx[j + 1] as usize } else { self.m };
            if (self.idx[j] as usize) + 1 < limit {
                self.idx[j] += 1;
                for (l, slot) in self.idx.iter_mut().enumerate().take(j) {
                    *slot = l as u8;
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for Subsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.done {
            return None;
        }
        let out = self.current();
        self.advance();
        Some(out)
    }
}

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * u128::from(n - j) / u128::from(j + 1);
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}

/// `C(n, k)` for signed arguments; zero outside `0 <= k <= n`.
pub fn binomial_signed(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        binomial(n as u64, k as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn numeric_order_is_colex() {
        // {0,1,2} < {0,1,3} < {0,2,3} < {1,2,3} < {0,1,4}
        let sets: Vec<VertexSet> = VertexSet::prefix(5).subsets(3).collect();
        let expected: Vec<VertexSet> = [
            &[0u32, 1, 2][..],
            &[0, 1, 3],
            &[0, 2, 3],
            &[1, 2, 3],
            &[0, 1, 4],
            &[0, 2, 4],
            &[1, 2, 4],
            &[0, 3, 4],
            &[1, 3, 4],
            &[2, 3, 4],
        ]
        .iter()
        .map(|s| s.iter().copied().collect())
        .collect();
        assert_eq!(sets, expected);
        assert!(sets.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn subsets_of_sparse_set() {
        let s: VertexSet = [3u32, 7, 40].into_iter().collect();
        let subs: Vec<VertexSet> = s.subsets(2).collect();
        assert_eq!(subs.len(), 3);
        assert!(subs.iter().all(|x| x.is_subset(s) && x.len() == 2));
        assert_eq!(s.subsets(0).collect::<Vec<_>>(), [VertexSet::EMPTY]);
        assert_eq!(s.subsets(3).collect::<Vec<_>>(), [s]);
        assert_eq!(s.subsets(4).count(), 0);
    }

    #[test]
    fn full_word() {
        let all = VertexSet::prefix(64);
        assert_eq!(all.len(), 64);
        assert_eq!(all.subsets(63).count(), 64);
        assert_eq!(all.subsets(2).count() as u64, binomial(64, 2));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
        assert_eq!(binomial(200, 100), u64::MAX);
        assert_eq!(binomial_signed(-1, 0), 0);
        assert_eq!(binomial_signed(4, -1), 0);
    }

    #[test]
    fn range_checks() {
        assert!(VertexSet::from_vertices(4, [0, 3]).is_ok());
        assert_eq!(
            VertexSet::from_vertices(4, [4]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 4 })
        );
        assert!(VertexSet::from_bits(0b1000).fits(4));
        assert!(!VertexSet::from_bits(0b10000).fits(4));
    }
}
