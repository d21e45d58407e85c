//! Shadows of uniform set families and an exhaustive check of the
//! Kruskal–Katona instance `|S| = C(k-1, s)  =>  |∂^i S| >= C(k-1, i)`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::set::{binomial, VertexSet, MAX_VERTICES};

/// Default cap on the number of families [`verify_kk_special_case`] visits.
pub const DEFAULT_KK_BUDGET: u64 = 10_000_000;

/// A family of distinct `member_size`-subsets of `[ground]`, colex ordered.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetFamily {
    ground: u32,
    member_size: u32,
    members: Vec<VertexSet>,
}

impl SetFamily {
    pub fn new<I>(ground: u32, member_size: u32, members: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = VertexSet>,
    {
        if ground > MAX_VERTICES {
            return Err(Error::GroundTooLarge { n: ground });
        }
        if member_size > ground {
            return Err(Error::UniformityExceedsGround { r: member_size, n: ground });
        }
        let mut members: Vec<VertexSet> = members.into_iter().collect();
        for &m in &members {
            if !m.fits(ground) {
                return Err(Error::VertexOutOfRange { vertex: m.max().unwrap_or(0), n: ground });
            }
            if m.len() != member_size {
                return Err(Error::WrongEdgeSize { edge: m, expected: member_size, found: m.len() });
            }
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0]));
        }
        Ok(SetFamily { ground, member_size, members })
    }

    pub fn ground(&self) -> u32 {
        self.ground
    }

    pub fn member_size(&self) -> u32 {
        self.member_size
    }

    pub fn members(&self) -> &[VertexSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `∂^i S`: every `i`-subset of some member.
pub fn shadow(family: &SetFamily, i: u32) -> Result<SetFamily, Error> {
    if i > family.member_size {
        return Err(Error::DegreeOutOfRange { i, r: family.member_size });
    }
    let members: BTreeSet<VertexSet> = family.members.iter().flat_map(|m| m.subsets(i)).collect();
    Ok(SetFamily { ground: family.ground, member_size: i, members: members.into_iter().collect() })
}

/// `{ambient \ A : A in S}`; every member must lie inside `ambient`.
pub fn complement_family(family: &SetFamily, ambient: VertexSet) -> Result<SetFamily, Error> {
    if let Some(m) = family.members.iter().find(|m| !m.is_subset(ambient)) {
        return Err(Error::OutsideAmbient(*m));
    }
    if !ambient.fits(family.ground) {
        return Err(Error::VertexOutOfRange { vertex: ambient.max().unwrap_or(0), n: family.ground });
    }
    let mut members: Vec<VertexSet> = family.members.iter().map(|m| ambient.difference(*m)).collect();
    members.sort_unstable();
    Ok(SetFamily { ground: family.ground, member_size: ambient.len() - family.member_size, members })
}

/// Outcome of the exhaustive Kruskal–Katona check for one `(k, s, i, m)` cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KkOutcome {
    /// Every family was checked; `min_shadow` is the smallest shadow seen.
    Verified { families: u64, min_shadow: u64, bound: u64 },
    /// A family whose shadow is below `C(k-1, i)`.
    Violated { family: SetFamily, shadow_size: u64, bound: u64 },
    /// `C(C(m,s), C(k-1,s))` families exceed the budget; nothing was checked.
    OverBudget { required: u64, budget: u64 },
}

/// Enumerates every family of `C(k-1, s)` distinct `s`-subsets of `[m]` and
/// looks for one with `|∂^i S| < C(k-1, i)`.
///
/// Requires `1 <= s < k`, `i <= s <= m` and `m >= k - 1`.
pub fn verify_kk_special_case(k: u32, s: u32, i: u32, m: u32, budget: u64) -> Result<KkOutcome, Error> {
    if s == 0 || s >= k {
        return Err(Error::InvalidArgument("need 1 <= s < k"));
    }
    if i > s || s > m {
        return Err(Error::InvalidArgument("need i <= s <= m"));
    }
    if m + 1 < k {
        return Err(Error::InvalidArgument("need m >= k - 1 so families of the required size exist"));
    }
    if m > MAX_VERTICES {
        return Err(Error::GroundTooLarge { n: m });
    }
    let family_size = binomial(u64::from(k - 1), u64::from(s));
    let bound = binomial(u64::from(k - 1), u64::from(i));
    let pool: Vec<VertexSet> = VertexSet::prefix(m).subsets(s).collect();
    let required = binomial(pool.len() as u64, family_size);
    if required > budget {
        return Ok(KkOutcome::OverBudget { required, budget });
    }

    let isets = binomial(u64::from(m), u64::from(i)) as usize;
    let words = isets.div_ceil(64).max(1);
    let masks: Vec<Vec<u64>> = pool
        .iter()
        .map(|member| {
            let mut mask = vec![0u64; words];
            for sub in member.subsets(i) {
                let idx = colex_rank(sub) as usize;
                mask[idx / 64] |= 1u64 << (idx % 64);
            }
            mask
        })
        .collect();

    let mut search = KkSearch {
        masks: &masks,
        words,
        family_size: family_size as usize,
        bound,
        families: 0,
        min_shadow: u64::MAX,
        chosen: Vec::with_capacity(family_size as usize),
        violation: None,
    };
    let mut acc = vec![0u64; words * (family_size as usize + 1)];
    search.walk(0, &mut acc);

    Ok(match search.violation {
        Some((chosen, shadow_size)) => KkOutcome::Violated {
            family: SetFamily::new(m, s, chosen.into_iter().map(|idx| pool[idx]))?,
            shadow_size,
            bound,
        },
        None => KkOutcome::Verified {
            families: search.families,
            min_shadow: if search.families == 0 { 0 } else { search.min_shadow },
            bound,
        },
    })
}

struct KkSearch<'a> {
    masks: &'a [Vec<u64>],
    words: usize,
    family_size: usize,
    bound: u64,
    families: u64,
    min_shadow: u64,
    chosen: Vec<usize>,
    violation: Option<(Vec<usize>, u64)>,
}

impl KkSearch<'_> {
    /// `acc` holds one running shadow per depth, `words` apart.
    fn walk(&mut self, start: usize, acc: &mut [u64]) {
        let depth = self.chosen.len();
        if depth == self.family_size {
            let size: u64 =
                acc[depth * self.words..(depth + 1) * self.words].iter().map(|w| u64::from(w.count_ones())).sum();
            self.families += 1;
            self.min_shadow = self.min_shadow.min(size);
            if size < self.bound && self.violation.is_none() {
                self.violation = Some((self.chosen.clone(), size));
            }
            return;
        }
        let remaining = self.family_size - depth;
        for idx in start..=self.masks.len() - remaining {
            let (lo, hi) = acc.split_at_mut((depth + 1) * self.words);
            let prev = &lo[depth * self.words..];
            for w in 0..self.words {
                hi[w] = prev[w] | self.masks[idx][w];
            }
            self.chosen.push(idx);
            self.walk(idx + 1, acc);
            self.chosen.pop();
            if self.violation.is_some() {
                return;
            }
        }
    }
}

/// Position of `set` among all `|set|`-sets in colex order.
pub fn colex_rank(set: VertexSet) -> u64 {
    set.iter().enumerate().map(|(j, v)| binomial(u64::from(v), j as u64 + 1)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[u32]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn family(m: u32, s: u32, members: &[&[u32]]) -> SetFamily {
        SetFamily::new(m, s, members.iter().map(|x| set(x))).unwrap()
    }

    #[test]
    fn rank_matches_enumeration_order() {
        for (idx, sub) in VertexSet::prefix(8).subsets(3).enumerate() {
            assert_eq!(colex_rank(sub), idx as u64);
        }
        assert_eq!(colex_rank(VertexSet::EMPTY), 0);
    }

    #[test]
    fn family_validation() {
        assert!(SetFamily::new(4, 2, [set(&[0, 1]), set(&[0, 1])]).is_err());
        assert!(SetFamily::new(4, 2, [set(&[0, 1, 2])]).is_err());
        assert!(SetFamily::new(4, 2, [set(&[0, 4])]).is_err());
        assert!(SetFamily::new(4, 5, []).is_err());
    }

    #[test]
    fn shadow_examples() {
        let s = family(4, 2, &[&[0, 1], &[2, 3]]);
        assert_eq!(shadow(&s, 2).unwrap(), s);
        let one = shadow(&s, 1).unwrap();
        assert_eq!(one.members(), &[set(&[0]), set(&[1]), set(&[2]), set(&[3])]);
        assert_eq!(one.member_size(), 1);
        let triangle = SetFamily::new(3, 2, VertexSet::prefix(3).subsets(2)).unwrap();
        assert_eq!(shadow(&triangle, 1).unwrap().len(), 3);
        assert_eq!(shadow(&triangle, 0).unwrap().members(), &[VertexSet::EMPTY]);
        assert!(shadow(&triangle, 3).is_err());
    }

    #[test]
    fn complement_examples() {
        let s = family(4, 2, &[&[0, 1]]);
        let c = complement_family(&s, VertexSet::prefix(4)).unwrap();
        assert_eq!(c.members(), &[set(&[2, 3])]);
        assert_eq!(complement_family(&c, VertexSet::prefix(4)).unwrap(), s);
        assert_eq!(
            complement_family(&family(5, 2, &[&[0, 4]]), VertexSet::prefix(4)),
            Err(Error::OutsideAmbient(set(&[0, 4])))
        );
    }

    #[test]
    fn kk_small_cells() {
        assert_eq!(
            verify_kk_special_case(3, 2, 1, 4, DEFAULT_KK_BUDGET),
            Ok(KkOutcome::Verified { families: 6, min_shadow: 2, bound: 2 })
        );
        assert_eq!(
            verify_kk_special_case(4, 2, 1, 5, DEFAULT_KK_BUDGET),
            Ok(KkOutcome::Verified { families: 120, min_shadow: 3, bound: 3 })
        );
        assert_eq!(
            verify_kk_special_case(5, 2, 1, 6, DEFAULT_KK_BUDGET),
            Ok(KkOutcome::Verified { families: 5005, min_shadow: 4, bound: 4 })
        );
    }

    #[test]
    fn kk_guards() {
        assert!(verify_kk_special_case(3, 3, 1, 5, 10).is_err());
        assert!(verify_kk_special_case(4, 2, 3, 5, 10).is_err());
        assert!(verify_kk_special_case(6, 2, 1, 4, 10).is_err());
        assert_eq!(
            verify_kk_special_case(5, 2, 1, 6, 100),
            Ok(KkOutcome::OverBudget { required: 5005, budget: 100 })
        );
    }
}
