//! `(a, b)`-kernel systems: all `r`-sets meeting a fixed `a`-set `X` in at
//! least `b` vertices.

use alloc::vec::Vec;

use crate::error::Error;
use crate::hypergraph::{check_shape, ExtNat, Hypergraph, Params};
use crate::set::{binomial, VertexSet};

/// Refuse to materialize kernel systems with more edges than this.
pub const MAX_KERNEL_EDGES: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KernelSpec {
    pub n: u32,
    pub r: u32,
    pub b: u32,
    pub kernel: VertexSet,
}

impl KernelSpec {
    pub fn new(n: u32, r: u32, a: u32, b: u32, kernel: VertexSet) -> Result<Self, Error> {
        check_shape(n, r)?;
        if !kernel.fits(n) {
            return Err(Error::VertexOutOfRange { vertex: kernel.max().unwrap_or(0), n });
        }
        if kernel.len() != a {
            return Err(Error::InvalidArgument("kernel set size differs from a"));
        }
        Ok(KernelSpec { n, r, b, kernel })
    }

    /// Kernel set fixed to `{0, .., a-1}`.
    pub fn initial(n: u32, r: u32, a: u32, b: u32) -> Result<Self, Error> {
        if a > n {
            return Err(Error::InvalidArgument("kernel size exceeds ground set"));
        }
        KernelSpec::new(n, r, a, b, VertexSet::prefix(a))
    }

    pub fn a(&self) -> u32 {
        self.kernel.len()
    }
}

/// Closed-form size of an `(a, b)`-kernel system on `[n]`:
/// `sum_j C(a, j) C(n - a, r - j)` over `max(b, r - (n - a)) <= j <= min(a, r)`.
pub fn kernel_edge_count(n: u32, r: u32, a: u32, b: u32) -> u64 {
    if a > n || r > n {
        return 0;
    }
    let outside = n - a;
    let lo = b.max(r.saturating_sub(outside));
    let hi = a.min(r);
    (lo..=hi)
        .map(|j| {
            binomial(u64::from(a), u64::from(j))
                .saturating_mul(binomial(u64::from(outside), u64::from(r - j)))
        })
        .fold(0u64, u64::saturating_add)
}

/// Every `r`-set `h` with `|h ∩ X| >= b`. Empty whenever `b > r`.
pub fn build_kernel(spec: &KernelSpec) -> Result<Hypergraph, Error> {
    let a = spec.a();
    let count = kernel_edge_count(spec.n, spec.r, a, spec.b);
    if count > MAX_KERNEL_EDGES {
        return Err(Error::TooLarge { what: "kernel system", size: count, cap: MAX_KERNEL_EDGES });
    }
    let outside = VertexSet::prefix(spec.n).difference(spec.kernel);
    let mut edges = Vec::with_capacity(count as usize);
    if spec.b <= spec.r {
        for j in spec.b..=a.min(spec.r) {
            for inner in spec.kernel.subsets(j) {
                for outer in outside.subsets(spec.r - j) {
                    edges.push(inner.union(outer));
                }
            }
        }
    }
    edges.sort_unstable();
    Ok(Hypergraph::from_sorted(spec.n, spec.r, edges))
}

/// The `(2k-2s+t, k-s+t)`-kernel system on `[n]` with `X = {0, .., 2k-2s+t-1}`.
pub fn main_extremal(params: &Params, n: u32) -> Result<Hypergraph, Error> {
    let a = params.kernel_size();
    if n < a {
        return Err(Error::InvalidArgument("ground set smaller than kernel size 2k-2s+t"));
    }
    build_kernel(&KernelSpec::initial(n, params.r, a, params.core_size())?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodegreeReport {
    /// Minimum positive `(r-s)`-degree of the extremal kernel system.
    pub delta: ExtNat,
    /// `C(k, s)`.
    pub expected: u64,
    pub t_intersecting: bool,
    pub edges: u64,
}

impl CodegreeReport {
    pub fn holds(&self) -> bool {
        self.delta == ExtNat::Finite(self.expected) && self.t_intersecting
    }
}

/// Measures the codegree and intersection of [`main_extremal`].
///
/// Requires `r >= k - s + t` and `n >= (2k - 2s + t) + r`; below that size
/// the extremal system need not realize every codegree pattern.
pub fn kernel_codegree_check(params: &Params, n: u32) -> Result<CodegreeReport, Error> {
    if params.r < params.core_size() {
        return Err(Error::InvalidArgument("r is below k-s+t"));
    }
    if n < params.kernel_size() + params.r {
        return Err(Error::InvalidArgument("n is below (2k-2s+t)+r"));
    }
    let h = main_extremal(params, n)?;
    Ok(CodegreeReport {
        delta: h.min_positive_degree(params.codegree_rank())?,
        expected: params.kernel_codegree(),
        t_intersecting: h.is_t_intersecting(params.t),
        edges: h.len() as u64,
    })
}

/// The 6-set `{0, .., 5}` at the heart of [`punctured_kernel`].
pub const PUNCTURED_SIX: VertexSet = VertexSet::prefix(6);
/// The 4-set whose supersets are removed in [`punctured_kernel`].
pub const PUNCTURE: VertexSet = VertexSet::prefix(4);

/// The `(6, 4)`-kernel system on `{0, .., 5}` with every edge containing
/// `{0, 1, 2, 3}` removed.
///
/// With `k = 4, s = t = 2` it is 2-intersecting with positive
/// `(r-2)`-codegree 5 > C(3, 2), yet `{0, 1, 2, 3}` is the core of no
/// sunflower at all.
pub fn punctured_kernel(r: u32, n: u32) -> Result<Hypergraph, Error> {
    if r < 4 {
        return Err(Error::InvalidArgument("punctured kernel needs r >= 4"));
    }
    if n < r + 2 {
        return Err(Error::InvalidArgument("punctured kernel needs n >= r + 2"));
    }
    check_shape(n, r)?;
    let outside = VertexSet::prefix(n).difference(PUNCTURED_SIX);
    let mut edges = Vec::new();
    for j in 4..=r.min(6) {
        for inner in PUNCTURED_SIX.subsets(j).filter(|s| !PUNCTURE.is_subset(*s)) {
            for outer in outside.subsets(r - j) {
                edges.push(inner.union(outer));
            }
        }
    }
    edges.sort_unstable();
    Ok(Hypergraph::from_sorted(n, r, edges))
}
