//! Chain-partition certificates and the nice property.
//!
//! A poset is nice when, for every achievable chain-partition type `λ`,
//! every `μ ⊴ λ` is achievable too.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{dominance_leq, partitions_with_max_part, Partition};
use crate::poset::{coordinate_label, Poset, PosetSpec};
use crate::search::{ChainSearch, SearchStats};

/// A chain partition, blocks in descending size order and each block in
/// element order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainPartitionCertificate {
    #[serde(rename = "type")]
    pub ty: Partition,
    pub blocks: Vec<Vec<usize>>,
}

impl ChainPartitionCertificate {
    fn from_blocks(mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let ty = Partition::from_unsorted(blocks.iter().map(Vec::len).collect());
        ChainPartitionCertificate { ty, blocks }
    }

    /// Rebuilds a certificate from labelled blocks, e.g. parsed JSON.
    pub fn from_labels<S: AsRef<str>>(p: &Poset, ty: Partition, blocks: &[Vec<S>]) -> Result<Self> {
        let blocks = blocks.iter().map(|b| p.indices_of(b)).collect::<Result<Vec<_>>>()?;
        Ok(ChainPartitionCertificate { ty, blocks })
    }

    pub fn labelled(&self, p: &Poset) -> Vec<Vec<String>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&i| p.label(i).to_string()).collect())
            .collect()
    }

    /// Checks directly against the order relation that the blocks are
    /// disjoint chains covering `p` with sizes matching the type.
    pub fn validate(&self, p: &Poset) -> Result<()> {
        let bad = |msg: String| Err(Error::InternalInvariantBroken(msg));
        let mut seen = vec![false; p.len()];
        for block in &self.blocks {
            if block.is_empty() {
                return bad("empty block".into());
            }
            for (a, &x) in block.iter().enumerate() {
                if x >= p.len() {
                    return bad(format!("element index {x} out of range"));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return bad(format!("`{}` appears twice", p.label(x)));
                }
                for &y in &block[a + 1..] {
                    if y < p.len() && !(p.leq(x, y) || p.leq(y, x)) {
                        return bad(format!("`{}` and `{}` are incomparable", p.label(x), p.label(y)));
                    }
                }
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return bad(format!("`{}` is not covered", p.label(x)));
        }
        let mut sizes: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        if sizes != self.ty.parts() {
            return bad(format!("block sizes {sizes:?} do not match type {}", self.ty));
        }
        Ok(())
    }
}

/// Searches for a chain partition of `p` of type `ty`.
pub fn chain_partition_exists(p: &Poset, ty: &Partition) -> Result<Option<ChainPartitionCertificate>> {
    chain_partition_search(p, ty, None).map(|(c, _)| c)
}

/// [`chain_partition_exists`] with a node budget, also returning search
/// statistics.
pub fn chain_partition_search(
    p: &Poset,
    ty: &Partition,
    node_budget: Option<u64>,
) -> Result<(Option<ChainPartitionCertificate>, SearchStats)> {
    let mut search = ChainSearch::new(p, ty)?.with_node_budget(node_budget);
    let found = search.find()?;
    let cert = found.map(ChainPartitionCertificate::from_blocks);
    if let Some(c) = &cert {
        c.validate(p)?;
    }
    Ok((cert, search.stats))
}

/// Limits for [`is_nice`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NiceOptions {
    pub max_elements: usize,
    /// Per-type node budget for the existence searches.
    pub node_budget: Option<u64>,
}

impl Default for NiceOptions {
    fn default() -> Self {
        NiceOptions {
            max_elements: 20,
            node_budget: None,
        }
    }
}

/// A failing pair: `achieved` has a chain partition, `missing ⊴ achieved`
/// has none.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NiceWitness {
    pub achieved: Partition,
    pub certificate: ChainPartitionCertificate,
    pub missing: Partition,
    /// Work done by the exhaustive search that refuted `missing`.
    pub refutation: SearchStats,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NiceVerdict {
    pub nice: bool,
    pub witness: Option<NiceWitness>,
    /// Achievable types, lexicographically descending.
    pub achievable: Vec<Partition>,
    pub stats: SearchStats,
}

/// Decides whether `p` is nice.
///
/// Only types with `λ_1` at most the longest chain and at least `width`
/// parts can be achievable, and any type dominated by an achievable one
/// also satisfies both bounds, so only those candidates are searched. The
/// witness pairs the lexicographically largest achievable type that
/// dominates a failure with the lexicographically largest failure below it.
pub fn is_nice(p: &Poset, opts: &NiceOptions) -> Result<NiceVerdict> {
    let n = p.len();
    if n > opts.max_elements {
        return Err(Error::TooLarge {
            size: n,
            limit: opts.max_elements,
        });
    }
    let width = p.width();
    let candidates: Vec<Partition> = partitions_with_max_part(n, p.max_chain_size())
        .into_iter()
        .filter(|t| t.len() >= width)
        .collect();
    let results: Vec<(Option<ChainPartitionCertificate>, SearchStats)> = candidates
        .par_iter()
        .map(|t| chain_partition_search(p, t, opts.node_budget))
        .collect::<Result<_>>()?;
    let mut stats = SearchStats::default();
    for (_, s) in &results {
        stats.merge(s);
    }
    let achievable: Vec<Partition> = candidates
        .iter()
        .zip(&results)
        .filter(|(_, (c, _))| c.is_some())
        .map(|(t, _)| t.clone())
        .collect();
    let mut witness = None;
    'outer: for (i, (lambda, (cert, _))) in candidates.iter().zip(&results).enumerate() {
        let Some(cert) = cert else { continue };
        for (mu, (other, refutation)) in candidates.iter().zip(&results).skip(i + 1) {
            if other.is_none() && dominance_leq(mu, lambda)? {
                witness = Some(NiceWitness {
                    achieved: lambda.clone(),
                    certificate: cert.clone(),
                    missing: mu.clone(),
                    refutation: *refutation,
                });
                break 'outer;
            }
        }
    }
    Ok(NiceVerdict {
        nice: witness.is_none(),
        witness,
        achievable,
        stats,
    })
}

/// `(m+n−1, m+n−3, …, m−n+1)`, the dominance-maximal type of `m×n`.
pub fn staircase_type(m: usize, n: usize) -> Result<Partition> {
    if n == 0 || m < n {
        return Err(Error::PreconditionViolated(format!("staircase needs m ≥ n ≥ 1, got {m}x{n}")));
    }
    Partition::new((1..=n).map(|i| m + n + 1 - 2 * i).collect())
}

/// A permutation `σ` of `1..n−1` and an `(n−1)`-subset `Υ` of `1..m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ChainFamilyParams {
    pub m: usize,
    pub n: usize,
    /// One-line notation, values `1..=n−1`.
    pub sigma: Vec<usize>,
    pub upsilon: Vec<usize>,
}

/// Chains `C_1 … C_{n−1}` of sizes `m+n−1, m+n−3, …` in `m×n`, and the
/// leftover chains `R_1 … R_n`, as `(x, y)` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ChainFamily {
    pub chains: Vec<Vec<(usize, usize)>>,
    pub leftovers: Vec<Vec<(usize, usize)>>,
}

impl ChainFamily {
    /// Element indices in the poset built from `prod:MxN`.
    pub fn indices(block: &[(usize, usize)], n: usize) -> Vec<usize> {
        block.iter().map(|&(x, y)| (x - 1) * n + (y - 1)).collect()
    }

    /// The chains and the nonempty leftovers as a certificate on `prod:MxN`.
    pub fn certificate(&self, n: usize) -> ChainPartitionCertificate {
        let blocks = self
            .chains
            .iter()
            .chain(self.leftovers.iter().filter(|r| !r.is_empty()))
            .map(|b| Self::indices(b, n))
            .collect();
        ChainPartitionCertificate::from_blocks(blocks)
    }
}

/// Builds the chain family determined by `(σ, Υ)`.
///
/// Middle chain `i` runs `(i, n−i) … (r_i, n−i), (r_i, n−i+1) … (m−n+1+i,
/// n−i+1)` and belongs to `C_{σ_i}`. Below and above it, for `i ≤ n−2` the
/// `k`-th element of rank `i−1` and of rank `m+n−i−1` (counted by
/// increasing first coordinate) go to `C_{σ^{(i)}_k}`, where `σ^{(i)}` keeps
/// only the values `≤ i`.
pub fn parameterized_chain_family(params: &ChainFamilyParams) -> Result<ChainFamily> {
    let ChainFamilyParams { m, n, sigma, upsilon } = params;
    let (m, n) = (*m, *n);
    if n == 0 || m < n {
        return Err(Error::InvalidParams(format!("need m ≥ n ≥ 1, got {m}x{n}")));
    }
    let mut sorted_sigma = sigma.clone();
    sorted_sigma.sort_unstable();
    if sorted_sigma != (1..n).collect::<Vec<_>>() {
        return Err(Error::InvalidParams(format!("{sigma:?} is not a permutation of 1..{}", n - 1)));
    }
    let mut r = upsilon.clone();
    r.sort_unstable();
    r.dedup();
    if r.len() != n - 1 || upsilon.len() != n - 1 || r.iter().any(|&x| x == 0 || x > m) {
        return Err(Error::InvalidParams(format!(
            "{upsilon:?} is not an {}-subset of 1..{m}",
            n - 1
        )));
    }

    let mut chains: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n - 1];
    for i in 1..n {
        let ri = r[i - 1];
        let c = &mut chains[sigma[i - 1] - 1];
        c.extend((i..=ri).map(|x| (x, n - i)));
        c.extend((ri..=m - n + 1 + i).map(|x| (x, n - i + 1)));
    }
    for i in 1..n.saturating_sub(1) {
        let restricted: Vec<usize> = sigma.iter().copied().filter(|&v| v <= i).collect();
        for (k0, &target) in restricted.iter().enumerate() {
            let k = k0 + 1;
            chains[target - 1].push((k, i + 1 - k));
            chains[target - 1].push((m - i + k, n + 1 - k));
        }
    }
    for c in &mut chains {
        c.sort_by_key(|&(x, y)| (x + y, x));
    }

    let mut bounds = vec![0];
    bounds.extend(&r);
    bounds.push(m + 1);
    let leftovers = (1..=n)
        .map(|i| (bounds[i - 1] + 1..bounds[i]).map(|x| (x, n + 1 - i)).collect())
        .collect();
    let family = ChainFamily { chains, leftovers };

    let product = PosetSpec::Product(vec![m, n]).build()?;
    family.certificate(n).validate(&product).map_err(|e| {
        Error::InternalInvariantBroken(format!("chain family is not a chain partition: {e}"))
    })?;
    for (j, c) in family.chains.iter().enumerate() {
        if c.len() != m + n + 1 - 2 * (j + 1) {
            return Err(Error::InternalInvariantBroken(format!("chain C_{} has size {}", j + 1, c.len())));
        }
    }
    for (a, ra) in family.leftovers.iter().enumerate() {
        for rb in &family.leftovers[a + 1..] {
            for x in ChainFamily::indices(ra, n) {
                for y in ChainFamily::indices(rb, n) {
                    if product.comparable(x, y) {
                        return Err(Error::InternalInvariantBroken(format!(
                            "leftover blocks share comparable elements {} and {}",
                            product.label(x),
                            product.label(y)
                        )));
                    }
                }
            }
        }
    }
    Ok(family)
}

/// The constructive chain partition of `p ⊕ (m×n) ⊕ q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrdinalSumPartition {
    /// Pieces of the outer chain attached to each block.
    pub t: Vec<usize>,
    /// `μ − t`, possibly with trailing zeros.
    pub nu: Vec<usize>,
    pub certificate: ChainPartitionCertificate,
}

/// Builds a chain partition of `p ⊕ (m×n) ⊕ q` of type `mu` for any `mu`
/// dominated by `λ̃ = (λ_1+p+q, λ_2, …, λ_n)`, `λ` the staircase of `m×n`.
///
/// `t_j = max(0, Σ_{i≤j} μ_i − Σ_{i≤j} λ_i − Σ_{i<j} t_i)` pieces of the outer
/// chain, taken in order from `lo1` up through the top chain, are attached to
/// a chain partition of `m×n` of type `μ − t`.
pub fn ordinal_sum_chain_partition(p: usize, q: usize, m: usize, n: usize, mu: &Partition) -> Result<OrdinalSumPartition> {
    let ctx = crate::chain_count::StaircaseContext::new(m, n)?;
    let lambda = staircase_type(ctx.m, ctx.n)?;
    let mut tilde = lambda.parts().to_vec();
    tilde[0] += p + q;
    let tilde = Partition::new(tilde)?;
    if mu.size() != tilde.size() {
        return Err(Error::SizeMismatch {
            expected: tilde.size(),
            found: mu.size(),
        });
    }
    if !dominance_leq(mu, &tilde)? {
        return Err(Error::PreconditionViolated(format!("{mu} is not dominated by {tilde}")));
    }

    let broken = |msg: String| Error::InternalInvariantBroken(msg);
    let l = mu.len();
    let lam = |i: usize| lambda.parts().get(i).copied().unwrap_or(0);
    let mut t = Vec::with_capacity(l);
    let (mut sum_mu, mut sum_lambda, mut sum_t) = (0usize, 0usize, 0usize);
    for j in 0..l {
        sum_mu += mu.parts()[j];
        sum_lambda += lam(j);
        let tj = (sum_mu).saturating_sub(sum_lambda + sum_t);
        t.push(tj);
        sum_t += tj;
    }
    if sum_t != p + q {
        return Err(broken(format!("pieces {t:?} do not use the outer chain exactly")));
    }
    let nu: Vec<usize> = mu
        .parts()
        .iter()
        .zip(&t)
        .map(|(&a, &b)| a.checked_sub(b).ok_or_else(|| broken(format!("t {t:?} exceeds {mu}"))))
        .collect::<Result<_>>()?;
    if nu.windows(2).any(|w| w[0] < w[1]) {
        return Err(broken(format!("ν = {nu:?} is not weakly decreasing")));
    }
    let nu_part = Partition::from_unsorted(nu.clone());
    if !dominance_leq(&nu_part, &lambda)? {
        return Err(broken(format!("ν = {nu_part} is not dominated by {lambda}")));
    }

    let inner = PosetSpec::Product(vec![m, n]).build()?;
    let inner_cert = chain_partition_exists(&inner, &nu_part)?
        .ok_or_else(|| broken(format!("no chain partition of {m}x{n} of type {nu_part}")))?;

    let spec = PosetSpec::OrdinalSum(p, Box::new(PosetSpec::Product(vec![m, n])), q);
    let sum = spec.build()?;
    let outer: Vec<usize> = (0..p).chain(p + m * n..p + m * n + q).collect();
    let mut blocks = Vec::with_capacity(l);
    let mut next = 0;
    for j in 0..l {
        let mut block: Vec<usize> = outer[next..next + t[j]].to_vec();
        next += t[j];
        if nu[j] > 0 {
            let chain = &inner_cert.blocks[j];
            debug_assert_eq!(chain.len(), nu[j]);
            block.extend(chain.iter().map(|&x| {
                let (a, b) = (x / n + 1, x % n + 1);
                sum.index_of(&coordinate_label(&[a, b])).expect("inner label present")
            }));
        }
        blocks.push(block);
    }
    let mut certificate = ChainPartitionCertificate::from_blocks(blocks);
    certificate.ty = mu.clone();
    certificate.validate(&sum).map_err(|e| broken(format!("ordinal-sum certificate: {e}")))?;
    Ok(OrdinalSumPartition { t, nu, certificate })
}
