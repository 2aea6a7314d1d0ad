//! Backtracking over chain partitions of a poset, shared by the counter in
//! `chain_count` and the existence search in `nice`.
//!
//! Elements are reindexed along a linear extension, so every chain is an
//! increasing index sequence and the lowest unused element is always the
//! minimum of its block. Subsets are `u128` masks.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::poset::Poset;

pub(crate) const MAX_ELEMENTS: usize = 128;

/// Work counters reported by the chain-partition searches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// States expanded.
    pub nodes: u64,
    /// States rejected by the width or longest-chain bound.
    pub prunes: u64,
    /// States answered from the memo.
    pub memo_hits: u64,
}

impl SearchStats {
    pub fn merge(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.prunes += other.prunes;
        self.memo_hits += other.memo_hits;
    }
}

fn ones(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// The chain-partition problem for one poset and one type.
pub(crate) struct ChainSearch {
    /// New index to original element.
    order: Vec<usize>,
    /// Strict up-sets in new indices.
    above: Vec<u128>,
    /// Distinct block sizes, descending.
    sizes: Vec<usize>,
    /// Blocks still to place per entry of `sizes`.
    counts: Vec<usize>,
    node_budget: Option<u64>,
    pub(crate) stats: SearchStats,
}

/// Remaining-set information computed once per search state.
struct NodeInfo {
    /// `reach[i]`: longest chain inside the remaining set starting at `i`.
    reach: Vec<usize>,
}

impl ChainSearch {
    pub(crate) fn new(poset: &Poset, ty: &Partition) -> Result<Self> {
        let n = poset.len();
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge {
                size: n,
                limit: MAX_ELEMENTS,
            });
        }
        if ty.size() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: ty.size(),
            });
        }
        let order = poset.linear_extension();
        let mut position = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let above = order
            .iter()
            .map(|&old| {
                poset
                    .up_set(old)
                    .ones()
                    .filter(|&j| j != old)
                    .fold(0u128, |m, j| m | 1u128 << position[j])
            })
            .collect();
        let profile = ty.multiplicity_profile();
        let mut sizes = Vec::new();
        let mut counts = Vec::new();
        for &(k, a) in profile.pairs().iter().rev() {
            sizes.push(k);
            counts.push(a);
        }
        Ok(ChainSearch {
            order,
            above,
            sizes,
            counts,
            node_budget: None,
            stats: SearchStats::default(),
        })
    }

    pub(crate) fn with_node_budget(mut self, budget: Option<u64>) -> Self {
        self.node_budget = budget;
        self
    }

    fn full_mask(&self) -> u128 {
        let n = self.order.len();
        if n == MAX_ELEMENTS {
            u128::MAX
        } else {
            (1u128 << n) - 1
        }
    }

    fn key(&self, rem: u128) -> (u128, u128) {
        let packed = self
            .counts
            .iter()
            .fold(0u128, |acc, &c| acc << 8 | c as u128);
        (rem, packed)
    }

    fn tick(&mut self) -> Result<()> {
        self.stats.nodes += 1;
        match self.node_budget {
            Some(b) if self.stats.nodes > b => Err(Error::BudgetExceeded(format!(
                "chain-partition search exceeded {b} nodes"
            ))),
            _ => Ok(()),
        }
    }

    /// Longest chains inside `rem`, or `None` when the state is infeasible.
    fn analyse(&mut self, rem: u128) -> Option<NodeInfo> {
        let n = self.order.len();
        let mut reach = vec![0usize; n];
        let mut longest = 0;
        for i in ones(rem).collect::<Vec<_>>().into_iter().rev() {
            reach[i] = 1 + ones(self.above[i] & rem).map(|j| reach[j]).max().unwrap_or(0);
            longest = longest.max(reach[i]);
        }
        let largest = self
            .sizes
            .iter()
            .zip(&self.counts)
            .find(|(_, &c)| c > 0)
            .map_or(0, |(&k, _)| k);
        let blocks: usize = self.counts.iter().sum();
        if longest < largest || self.width(rem) > blocks {
            self.stats.prunes += 1;
            return None;
        }
        Some(NodeInfo { reach })
    }

    /// Width of the subposet on `rem`, by Dilworth: `|rem|` minus a maximum
    /// matching in the strict comparability bipartite graph.
    fn width(&self, rem: u128) -> usize {
        fn augment(u: usize, above: &[u128], rem: u128, seen: &mut u128, mate: &mut [usize]) -> bool {
            for v in ones(above[u] & rem & !*seen) {
                *seen |= 1u128 << v;
                if mate[v] == usize::MAX || augment(mate[v], above, rem, seen, mate) {
                    mate[v] = u;
                    return true;
                }
            }
            false
        }
        let mut mate = vec![usize::MAX; self.order.len()];
        let mut matched = 0;
        for u in ones(rem) {
            let mut seen = 0u128;
            if augment(u, &self.above, rem, &mut seen, &mut mate) {
                matched += 1;
            }
        }
        rem.count_ones() as usize - matched
    }

    /// Calls `visit` with each chain of `len` elements inside `rem` whose
    /// minimum is `start`, in lexicographic index order. Stops early when
    /// `visit` returns `Ok(true)`.
    fn chains_from<F>(&mut self, start: usize, len: usize, rem: u128, info: &NodeInfo, visit: &mut F) -> Result<bool>
    where
        F: FnMut(&mut Self, u128) -> Result<bool>,
    {
        fn go<F>(
            s: &mut ChainSearch,
            last: usize,
            need: usize,
            chain: u128,
            rem: u128,
            info: &NodeInfo,
            visit: &mut F,
        ) -> Result<bool>
        where
            F: FnMut(&mut ChainSearch, u128) -> Result<bool>,
        {
            if need == 0 {
                return visit(s, chain);
            }
            for next in ones(s.above[last] & rem) {
                if info.reach[next] >= need && go(s, next, need - 1, chain | 1u128 << next, rem, info, visit)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        if info.reach[start] < len {
            return Ok(false);
        }
        go(self, start, len - 1, 1u128 << start, rem, info, visit)
    }

    /// Number of semi-ordered chain partitions of the full type.
    pub(crate) fn count(&mut self) -> Result<BigInt> {
        let mut memo = HashMap::new();
        let unordered = self.count_rec(self.full_mask(), &mut memo)?;
        let mut weight = BigInt::one();
        for &a in &self.counts {
            weight *= crate::partition::factorial(a);
        }
        Ok(unordered * weight)
    }

    fn count_rec(&mut self, rem: u128, memo: &mut HashMap<(u128, u128), BigInt>) -> Result<BigInt> {
        if rem == 0 {
            return Ok(BigInt::one());
        }
        let key = self.key(rem);
        if let Some(v) = memo.get(&key) {
            self.stats.memo_hits += 1;
            return Ok(v.clone());
        }
        self.tick()?;
        let mut total = BigInt::zero();
        if let Some(info) = self.analyse(rem) {
            let anchor = rem.trailing_zeros() as usize;
            for s in 0..self.sizes.len() {
                if self.counts[s] == 0 {
                    continue;
                }
                self.counts[s] -= 1;
                let len = self.sizes[s];
                let mut sum = BigInt::zero();
                self.chains_from(anchor, len, rem, &info, &mut |me, chain| {
                    sum += me.count_rec(rem & !chain, memo)?;
                    Ok(false)
                })?;
                total += sum;
                self.counts[s] += 1;
            }
        }
        memo.insert(key, total.clone());
        Ok(total)
    }

    /// A chain partition of the full type, blocks in descending size order
    /// and as original element indices, or `None` when none exists.
    pub(crate) fn find(&mut self) -> Result<Option<Vec<Vec<usize>>>> {
        let mut failed = HashSet::new();
        let mut chosen = Vec::new();
        if !self.find_rec(self.full_mask(), &mut failed, &mut chosen)? {
            return Ok(None);
        }
        let mut blocks: Vec<Vec<usize>> = chosen
            .into_iter()
            .map(|mask| ones(mask).map(|i| self.order[i]).collect())
            .collect();
        blocks.sort_by(|a: &Vec<usize>, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        Ok(Some(blocks))
    }

    fn find_rec(&mut self, rem: u128, failed: &mut HashSet<(u128, u128)>, chosen: &mut Vec<u128>) -> Result<bool> {
        if rem == 0 {
            return Ok(true);
        }
        let key = self.key(rem);
        if failed.contains(&key) {
            self.stats.memo_hits += 1;
            return Ok(false);
        }
        self.tick()?;
        if let Some(info) = self.analyse(rem) {
            let anchor = rem.trailing_zeros() as usize;
            for s in 0..self.sizes.len() {
                if self.counts[s] == 0 {
                    continue;
                }
                self.counts[s] -= 1;
                let len = self.sizes[s];
                let found = self.chains_from(anchor, len, rem, &info, &mut |me, chain| {
                    chosen.push(chain);
                    if me.find_rec(rem & !chain, failed, chosen)? {
                        return Ok(true);
                    }
                    chosen.pop();
                    Ok(false)
                })?;
                self.counts[s] += 1;
                if found {
                    return Ok(true);
                }
            }
        }
        failed.insert(key);
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::PosetSpec;

    fn build(s: &str) -> Poset {
        s.parse::<PosetSpec>().unwrap().build().unwrap()
    }

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn counts_small_cases() {
        let mut s = ChainSearch::new(&build("chain:4"), &part("2,1,1")).unwrap();
        assert_eq!(s.count().unwrap(), BigInt::from(12));
        let mut s = ChainSearch::new(&build("prod:2x2"), &part("2,2")).unwrap();
        assert_eq!(s.count().unwrap(), BigInt::from(4));
        let mut s = ChainSearch::new(&Poset::antichain(3), &part("2,1")).unwrap();
        assert_eq!(s.count().unwrap(), BigInt::zero());
    }

    #[test]
    fn width_matches_poset_width() {
        for spec in ["prod:4x4", "bool:4", "b3:5", "sum:1+prod:3x3+2"] {
            let p = build(spec);
            let s = ChainSearch::new(&p, &Partition::from_unsorted(vec![1; p.len()])).unwrap();
            assert_eq!(s.width(s.full_mask()), p.width(), "{spec}");
        }
    }

    #[test]
    fn finds_and_refutes() {
        let p = build("b3:6");
        let mut s = ChainSearch::new(&p, &part("9,7,2")).unwrap();
        let blocks = s.find().unwrap().unwrap();
        assert_eq!(blocks.iter().map(Vec::len).collect::<Vec<_>>(), [9, 7, 2]);
        let mut s = ChainSearch::new(&p, &part("6,6,6")).unwrap();
        assert_eq!(s.find().unwrap(), None);
        assert!(s.stats.prunes > 0);
    }

    #[test]
    fn node_budget_is_enforced() {
        let p = build("prod:4x4");
        let mut s = ChainSearch::new(&p, &Partition::from_unsorted(vec![2; 8]))
            .unwrap()
            .with_node_budget(Some(3));
        assert!(matches!(s.count(), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn rejects_oversized_and_mismatched() {
        assert!(matches!(
            ChainSearch::new(&Poset::antichain(129), &Partition::from_unsorted(vec![1; 129])),
            Err(Error::TooLarge { .. })
        ));
        assert!(matches!(
            ChainSearch::new(&Poset::antichain(3), &part("2")),
            Err(Error::SizeMismatch { .. })
        ));
    }
}
