//! Counting semi-ordered chain partitions of posets and semi-ordered stable
//! partitions of graphs, and the closed form for products of two chains.
//!
//! "Semi-ordered" means blocks are listed with weakly decreasing sizes and
//! blocks of equal size are told apart by position, so every count is
//! `∏ α_k!` times the number of unordered partitions.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{exact_div, factorial, weak_compositions, FactorialTable, MultiplicityProfile, Partition};
use crate::poset::{Graph, Poset};
use crate::search::{ChainSearch, SearchStats, MAX_ELEMENTS};

fn check_size(expected: usize, ty: &Partition) -> Result<()> {
    if ty.size() != expected {
        return Err(Error::SizeMismatch {
            expected,
            found: ty.size(),
        });
    }
    Ok(())
}

/// Number of ordered tuples of disjoint independent sets of `g` covering
/// every vertex, with sizes given by `ty`.
pub fn count_semiordered_stable_partitions(g: &Graph, ty: &Partition) -> Result<BigInt> {
    let n = g.vertex_count();
    check_size(n, ty)?;
    if n > MAX_ELEMENTS {
        return Err(Error::TooLarge {
            size: n,
            limit: MAX_ELEMENTS,
        });
    }
    let adj: Vec<u128> = (0..n)
        .map(|v| g.neighbors(v).ones().fold(0u128, |m, u| m | 1u128 << u))
        .collect();
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in ty.parts() {
        *sizes.entry(p).or_insert(0) += 1;
    }
    let mut counter = StableCounter {
        adj,
        sizes: sizes.keys().copied().collect(),
        memo: HashMap::new(),
    };
    let mut left: Vec<usize> = sizes.values().copied().collect();
    let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let unordered = counter.count(all, &mut left);
    let weight: BigInt = sizes.values().map(|&a| factorial(a)).product();
    Ok(unordered * weight)
}

struct StableCounter {
    adj: Vec<u128>,
    sizes: Vec<usize>,
    memo: HashMap<(u128, Vec<usize>), BigInt>,
}

impl StableCounter {
    /// Unordered count: the lowest remaining vertex picks its block.
    fn count(&mut self, rem: u128, left: &mut Vec<usize>) -> BigInt {
        if rem == 0 {
            return BigInt::one();
        }
        let key = (rem, left.clone());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let v = rem.trailing_zeros() as usize;
        let candidates = rem & !self.adj[v] & !(1u128 << v);
        let mut total = BigInt::zero();
        for s in 0..self.sizes.len() {
            if left[s] == 0 {
                continue;
            }
            left[s] -= 1;
            let mut blocks = Vec::new();
            self.stable_sets(candidates, self.sizes[s] - 1, 1u128 << v, &mut blocks);
            for b in blocks {
                total += self.count(rem & !b, left);
            }
            left[s] += 1;
        }
        self.memo.insert(key, total.clone());
        total
    }

    fn stable_sets(&self, candidates: u128, need: usize, chosen: u128, out: &mut Vec<u128>) {
        if need == 0 {
            out.push(chosen);
            return;
        }
        let mut rest = candidates;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (rest & !self.adj[u]).count_ones() as usize >= need - 1 {
                self.stable_sets(rest & !self.adj[u], need - 1, chosen | 1u128 << u, out);
            }
        }
    }
}

/// `|SCP_{P,ty}|`: semi-ordered chain partitions of `p` of type `ty`.
pub fn count_scp(p: &Poset, ty: &Partition) -> Result<BigInt> {
    count_scp_with_stats(p, ty, None).map(|(c, _)| c)
}

/// [`count_scp`] with a node budget, also reporting search statistics.
pub fn count_scp_with_stats(p: &Poset, ty: &Partition, node_budget: Option<u64>) -> Result<(BigInt, SearchStats)> {
    check_size(p.len(), ty)?;
    if ty.first() > p.max_chain_size() {
        return Ok((BigInt::zero(), SearchStats::default()));
    }
    let mut search = ChainSearch::new(p, ty)?.with_node_budget(node_budget);
    let count = search.count()?;
    Ok((count, search.stats))
}

/// The product of an `m`-chain and an `n`-chain with `m ≥ n ≥ 1`, viewed
/// through its staircase type `(m+n−1, m+n−3, …)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StaircaseContext {
    pub m: usize,
    pub n: usize,
}

impl StaircaseContext {
    /// Orders the two chain lengths so that `m ≥ n`.
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidParams("chain lengths must be ≥ 1".into()));
        }
        Ok(StaircaseContext {
            m: a.max(b),
            n: a.min(b),
        })
    }

    /// The forced first `n − 1` parts `m+n−2i+1`.
    pub fn prefix(&self) -> Vec<usize> {
        (1..self.n).map(|i| self.m + self.n + 1 - 2 * i).collect()
    }

    /// Checks the closed-form hypothesis on `ty` and returns the profile of
    /// its tail `(ty_n, ty_{n+1}, …)`.
    pub fn tail_profile(&self, ty: &Partition) -> Result<MultiplicityProfile> {
        check_size(self.m * self.n, ty)?;
        if !ty.starts_with(&self.prefix()) {
            return Err(Error::PreconditionViolated(format!(
                "type {ty} does not start with the staircase prefix {:?} of {}x{}",
                self.prefix(),
                self.m,
                self.n
            )));
        }
        Ok(ty.suffix(self.n).multiplicity_profile())
    }
}

/// Evaluates the closed form for `|SCP_{m×n,ty}|` when `ty` starts with the
/// staircase prefix:
///
/// `(n−1)! Σ ∏_j (Σ_k k·a_kj)! ∏_k multinomial(α_k; a_k1..a_kn) / (k!)^{α_k}`
///
/// over weak compositions `(a_k1, …, a_kn)` of each multiplicity `α_k` of the
/// tail. Each `j` factor `s_j! / ∏_k (k!)^{a_kj}` is itself a multinomial
/// coefficient, so the sum stays integral throughout.
pub fn scp_closed_form(ctx: &StaircaseContext, ty: &Partition) -> Result<BigInt> {
    let profile = ctx.tail_profile(ty)?;
    let n = ctx.n;
    let pairs = profile.pairs();
    let mut facts = FactorialTable::new();
    let comps: Vec<Vec<Vec<usize>>> = pairs
        .iter()
        .map(|&(_, a)| weak_compositions(a, n).map(|c| c.entries().to_vec()).collect())
        .collect();
    let mut total = BigInt::zero();
    let mut idx = vec![0usize; pairs.len()];
    loop {
        let mut term = BigInt::one();
        for (kk, &(_, alpha)) in pairs.iter().enumerate() {
            let a = &comps[kk][idx[kk]];
            let mut denom = BigInt::one();
            for &x in a {
                denom *= facts.get(x);
            }
            term *= exact_div(facts.get(alpha), &denom, "multinomial of a multiplicity")?;
        }
        for j in 0..n {
            let s: usize = pairs
                .iter()
                .enumerate()
                .map(|(kk, &(k, _))| k * comps[kk][idx[kk]][j])
                .sum();
            let mut denom = BigInt::one();
            for (kk, &(k, _)) in pairs.iter().enumerate() {
                let fk = facts.get(k).clone();
                for _ in 0..comps[kk][idx[kk]][j] {
                    denom *= &fk;
                }
            }
            term *= exact_div(facts.get(s), &denom, "chain-block multinomial")?;
        }
        total += term;
        // odometer over the cartesian product
        let mut d = 0;
        loop {
            if d == idx.len() {
                return Ok(total * facts.get(n - 1));
            }
            idx[d] += 1;
            if idx[d] < comps[d].len() {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

/// The forced prefix `(m+n−1, m+n−3, …, m−n+3)` when `shape` starts with it,
/// otherwise `None`. Only then is the closed-form path applicable.
pub fn forced_content_prefix(shape: &Partition, m: usize, n: usize) -> Result<Option<Partition>> {
    check_size(m * n, shape)?;
    let ctx = StaircaseContext::new(m, n)?;
    let prefix = ctx.prefix();
    if shape.starts_with(&prefix) {
        Ok(Some(Partition::new(prefix)?))
    } else {
        Ok(None)
    }
}

/// The six tabloids of the negativity argument for `ρ(n,k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ProofCase {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
}

impl ProofCase {
    pub const ALL: [ProofCase; 6] = [
        ProofCase::T1,
        ProofCase::T2,
        ProofCase::T3,
        ProofCase::T4,
        ProofCase::T5,
        ProofCase::T6,
    ];

    pub fn height(self) -> usize {
        match self {
            ProofCase::T1 => 3,
            ProofCase::T2 | ProofCase::T3 => 2,
            ProofCase::T4 | ProofCase::T5 => 1,
            ProofCase::T6 => 0,
        }
    }

    /// `(δ_{n,k}, tail)` sorted, where `δ_{n,k} = (2n+k−1, …, k+3)`.
    pub fn content(self, n: usize, k: usize) -> Result<Partition> {
        let tail = match self {
            ProofCase::T1 => vec![k - 1, 2],
            ProofCase::T2 => vec![k - 1, 1, 1],
            ProofCase::T3 => vec![k - 2, 3],
            ProofCase::T4 => vec![k - 2, 2, 1],
            ProofCase::T5 => vec![k - 3, 3, 1],
            ProofCase::T6 => vec![k - 3, 2, 2],
        };
        let mut parts: Vec<usize> = (1..n).map(|i| 2 * n + k + 1 - 2 * i).collect();
        parts.extend(tail);
        Ok(Partition::from_unsorted(parts))
    }
}

/// The closed-form values of `|SCP_{(n+k)×n, cont(T_i)}|` for the six proof
/// cases, `k ≥ 5`, `n ≥ 2`.
pub fn proof_case_closed_forms(n: usize, k: usize) -> Result<BTreeMap<ProofCase, BigInt>> {
    if k < 5 || n < 2 {
        return Err(Error::PreconditionViolated(format!(
            "proof cases need k ≥ 5 and n ≥ 2, got n={n}, k={k}"
        )));
    }
    let nf = factorial(n);
    let bn = BigInt::from(n);
    let bk = BigInt::from(k);
    let n2 = &bn * &bn;
    let k2 = &bk * &bk;
    let k3 = &k2 * &bk;
    let k4 = &k3 * &bk;
    let div = |num: BigInt, d: u32| exact_div(&num, &BigInt::from(d), "proof-case polynomial");

    let t1 = &bn + div(&k2 + &bk - 2, 2)?;
    let t2 = &n2 + (2 * &bk - 1) * &bn + &k2 - &bk;
    let t3 = if k == 5 {
        &bn + 19
    } else {
        &bn + div(&k3 - &bk - 6, 6)?
    };
    let t4 = &n2 + div(&k2 + &bk - 2, 2)? * &bn + div(&k3 - &k2 - 2 * &bk, 2)?;
    let t5 = if k == 6 {
        &n2 + 25 * &bn + 114
    } else {
        &n2 + div(&k3 - 3 * &k2 + 8 * &bk - 6, 6)? * &bn + div(&k4 - 3 * &k3 + 2 * &k2 - 6 * &bk, 6)?
    };
    let t6 = if k == 5 {
        &n2 + 15 * &bn + 74
    } else {
        &n2 + (&k2 - 3 * &bk + 5) * &bn + div(&k4 - 2 * &k3 - 5 * &k2 + 14 * &bk - 24, 4)?
    };
    Ok(ProofCase::ALL
        .into_iter()
        .zip([t1, t2, t3, t4, t5, t6])
        .map(|(c, v)| (c, &nf * v))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{multinomial, partitions_of};
    use crate::poset::PosetSpec;
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn build(s: &str) -> Poset {
        s.parse::<PosetSpec>().unwrap().build().unwrap()
    }

    #[test]
    fn stable_partition_examples() {
        assert_eq!(
            count_semiordered_stable_partitions(&Graph::edgeless(3), &p("2,1")).unwrap(),
            BigInt::from(3)
        );
        for n in 1..7 {
            let ones = Partition::from_unsorted(vec![1; n]);
            assert_eq!(count_semiordered_stable_partitions(&Graph::complete(n), &ones).unwrap(), factorial(n));
            if n >= 2 {
                let mut parts = vec![2];
                parts.extend(vec![1; n - 2]);
                let ty = Partition::new(parts).unwrap();
                assert!(count_semiordered_stable_partitions(&Graph::complete(n), &ty).unwrap().is_zero());
            }
        }
        assert!(matches!(
            count_semiordered_stable_partitions(&Graph::edgeless(3), &p("2")),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn scp_examples() {
        assert_eq!(count_scp(&build("chain:4"), &p("2,1,1")).unwrap(), BigInt::from(12));
        assert_eq!(count_scp(&build("prod:2x2"), &p("2,2")).unwrap(), BigInt::from(4));
        for n in 1..=10 {
            let ones = Partition::from_unsorted(vec![1; n]);
            assert_eq!(count_scp(&build(&format!("chain:{n}")), &ones).unwrap(), factorial(n));
        }
    }

    #[test]
    fn chain_counts_are_multinomials() {
        for n in 1..=10 {
            let chain = build(&format!("chain:{n}"));
            for ty in partitions_of(n) {
                assert_eq!(count_scp(&chain, &ty).unwrap(), multinomial(n, ty.parts()).unwrap());
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        let ctx = StaircaseContext::new(4, 2).unwrap();
        assert_eq!(scp_closed_form(&ctx, &p("5,2,1")).unwrap(), BigInt::from(8));
        let ctx = StaircaseContext::new(3, 1).unwrap();
        assert_eq!(scp_closed_form(&ctx, &p("1,1,1")).unwrap(), BigInt::from(6));
        let ctx = StaircaseContext::new(8, 3).unwrap();
        assert_eq!(scp_closed_form(&ctx, &p("10,8,4,2")).unwrap(), BigInt::from(102));
        assert!(matches!(
            scp_closed_form(&ctx, &p("10,7,5,2")),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(scp_closed_form(&ctx, &p("10,8,4")), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn forced_prefix_examples() {
        assert_eq!(forced_content_prefix(&p("10,8,2,2,2"), 8, 3).unwrap(), Some(p("10,8")));
        assert_eq!(forced_content_prefix(&p("7"), 7, 1).unwrap(), Some(Partition::empty()));
        assert_eq!(forced_content_prefix(&p("4,4"), 4, 2).unwrap(), None);
        assert_eq!(forced_content_prefix(&p("10,8,2,2,2"), 3, 8).unwrap(), Some(p("10,8")));
    }

    #[test]
    fn proof_case_examples() {
        let v = proof_case_closed_forms(3, 5).unwrap();
        assert_eq!(v[&ProofCase::T1], BigInt::from(102));
        assert_eq!(v[&ProofCase::T3], BigInt::from(132));
        let v = proof_case_closed_forms(4, 6).unwrap();
        assert_eq!(v[&ProofCase::T5], BigInt::from(5520));
        assert!(matches!(proof_case_closed_forms(3, 4), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn compositional_sum_at_three_five() {
        let v = proof_case_closed_forms(3, 5).unwrap();
        let total: BigInt = ProofCase::ALL
            .iter()
            .map(|c| if c.height() % 2 == 0 { v[c].clone() } else { -v[c].clone() })
            .sum();
        assert_eq!(total, BigInt::from(-18));
    }

    #[test]
    fn zero_when_type_exceeds_longest_chain() {
        let q = build("prod:3x3");
        assert!(count_scp(&q, &p("6,3")).unwrap().is_zero());
    }

    proptest! {
        #[test]
        fn counts_divisible_by_multiplicity_factorials(idx in 0usize..30, which in 0usize..4) {
            let spec = ["prod:3x3", "b3:1", "sum:1+prod:2x2+1", "bool:3"][which];
            let q = build(spec);
            let types = partitions_of(q.len());
            let ty = &types[idx % types.len()];
            let c = count_scp(&q, ty).unwrap();
            let w = ty.multiplicity_factorial();
            prop_assert!((c % w).is_zero());
        }
    }
}
