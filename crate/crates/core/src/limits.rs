//! Budgets for the exponential searches.

use crate::error::{Error, Limit};

/// Caps shared by the bad-triple search and the extremal branch and bound.
///
/// `interrupt` is polled every few thousand nodes; the std companion uses it
/// for wall-clock limits.
#[derive(Clone, Copy)]
pub struct SearchLimits<'a> {
    pub max_nodes: u64,
    pub max_pairs: u64,
    /// Per-side cap on petal-family size; `None` means `r + 2`.
    pub max_petals: Option<usize>,
    pub interrupt: Option<&'a (dyn Fn() -> bool + Sync)>,
}

impl Default for SearchLimits<'_> {
    fn default() -> Self {
        SearchLimits { max_nodes: 100_000_000, max_pairs: 10_000_000, max_petals: None, interrupt: None }
    }
}

impl core::fmt::Debug for SearchLimits<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("SearchLimits")
            .field("max_nodes", &self.max_nodes)
            .field("max_pairs", &self.max_pairs)
            .field("max_petals", &self.max_petals)
            .field("interrupt", &self.interrupt.is_some())
            .finish()
    }
}

impl<'a> SearchLimits<'a> {
    pub fn with_nodes(max_nodes: u64) -> Self {
        SearchLimits { max_nodes, ..Default::default() }
    }

    pub fn petal_cap(&self, r: u32) -> usize {
        self.max_petals.unwrap_or(r as usize + 2)
    }
}

const POLL_MASK: u64 = 0xfff;

/// Running node counter against a [`SearchLimits`].
pub(crate) struct Meter<'a> {
    limits: SearchLimits<'a>,
    pub(crate) nodes: u64,
}

impl<'a> Meter<'a> {
    pub(crate) fn new(limits: SearchLimits<'a>) -> Self {
        Meter { limits, nodes: 0 }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<(), Error> {
        self.nodes += 1;
        if self.nodes > self.limits.max_nodes {
            return Err(Error::BudgetExceeded(Limit::Nodes(self.limits.max_nodes)));
        }
        if self.nodes & POLL_MASK == 0 {
            if let Some(stop) = self.limits.interrupt {
                if stop() {
                    return Err(Error::BudgetExceeded(Limit::Interrupted));
                }
            }
        }
        Ok(())
    }
}
