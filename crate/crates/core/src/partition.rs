//! Integer partitions, weak compositions, dominance order and exact
//! factorial arithmetic.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// The derived `Ord` is lexicographic on the parts, which refines dominance
/// order: `mu ⊴ lambda` with `mu != lambda` implies `mu < lambda`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Validates that `parts` is weakly decreasing and strictly positive.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if let Some(i) = parts.iter().position(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!("part {} is zero", i + 1)));
        }
        if let Some(w) = parts.windows(2).find(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts must be weakly decreasing, found {} before {}",
                w[0], w[1]
            )));
        }
        Ok(Partition(parts))
    }

    /// Sorts into weakly decreasing order and drops zero entries.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.0
    }

    /// The integer being partitioned.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The largest part, or 0 for the empty partition.
    pub fn first(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// `(λ_k, λ_{k+1}, …)`: drops the first `k - 1` parts. `k = 0` is treated
    /// like `k = 1`.
    pub fn suffix(&self, k: usize) -> Partition {
        let skip = k.saturating_sub(1).min(self.0.len());
        Partition(self.0[skip..].to_vec())
    }

    /// Whether the first parts equal `prefix` exactly.
    pub fn starts_with(&self, prefix: &[usize]) -> bool {
        self.0.starts_with(prefix)
    }

    pub fn multiplicity_profile(&self) -> MultiplicityProfile {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for &p in self.0.iter().rev() {
            match pairs.last_mut() {
                Some((k, count)) if *k == p => *count += 1,
                _ => pairs.push((p, 1)),
            }
        }
        MultiplicityProfile(pairs)
    }

    /// `∏_k α_k!`, the number of reorderings of equal-size blocks.
    pub fn multiplicity_factorial(&self) -> BigInt {
        self.multiplicity_profile()
            .pairs()
            .iter()
            .map(|&(_, a)| factorial(a))
            .product()
    }

    /// Returns the partition with one more part equal to `part`.
    pub fn with_part(&self, part: usize) -> Partition {
        if part == 0 {
            return self.clone();
        }
        let pos = self.0.partition_point(|&p| p >= part);
        let mut parts = self.0.clone();
        parts.insert(pos, part);
        Partition(parts)
    }

    /// Prefix sums `λ_1, λ_1+λ_2, …`.
    pub fn prefix_sums(&self) -> Vec<usize> {
        self.0
            .iter()
            .scan(0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect()
    }

    /// `self ⊴ other` in dominance order. Errors if the sizes differ.
    pub fn dominated_by(&self, other: &Partition) -> Result<bool> {
        dominance_leq(self, other)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Parses the comma-separated form `"10,8,2,2,2"`; the empty string is the
/// empty partition. Parts must already be weakly decreasing.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        let mut offset = 0;
        for field in s.split(',') {
            let value: usize = field.parse().map_err(|_| Error::Parse {
                offset,
                message: format!("expected a positive integer, found `{field}`"),
            })?;
            if value == 0 {
                return Err(Error::Parse {
                    offset,
                    message: "parts must be positive".into(),
                });
            }
            if let Some(&prev) = parts.last() {
                if prev < value {
                    return Err(Error::Parse {
                        offset,
                        message: format!("parts must be weakly decreasing ({prev} < {value})"),
                    });
                }
            }
            parts.push(value);
            offset += field.len() + 1;
        }
        Ok(Partition(parts))
    }
}

/// `mu ⊴ lambda`: every prefix sum of `mu` is at most the corresponding
/// prefix sum of `lambda`, the shorter one padded with zeros.
pub fn dominance_leq(mu: &Partition, lambda: &Partition) -> Result<bool> {
    if mu.size() != lambda.size() {
        return Err(Error::SizeMismatch {
            expected: lambda.size(),
            found: mu.size(),
        });
    }
    let len = mu.len().max(lambda.len());
    let (mut a, mut b) = (0usize, 0usize);
    for i in 0..len {
        a += mu.0.get(i).copied().unwrap_or(0);
        b += lambda.0.get(i).copied().unwrap_or(0);
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All partitions of `n` in decreasing lexicographic order, starting at `(n)`.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    partitions_with_max_part(n, n)
}

/// Partitions of `n` whose largest part is at most `max_part`, in decreasing
/// lexicographic order.
pub fn partitions_with_max_part(n: usize, max_part: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max_part, &mut Vec::new(), &mut out);
    out
}

/// A fixed-length sequence of nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeakComposition(Vec<usize>);

impl WeakComposition {
    pub fn new(entries: Vec<usize>) -> Self {
        WeakComposition(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Streams every weak composition of `total` with `length` entries in
/// decreasing lexicographic order: `(total, 0, …, 0)` first and
/// `(0, …, 0, total)` last.
pub fn weak_compositions(total: usize, length: usize) -> WeakCompositions {
    let first = if length == 0 {
        (total == 0).then(Vec::new)
    } else {
        let mut v = vec![0; length];
        v[0] = total;
        Some(v)
    };
    WeakCompositions { next: first }
}

/// Iterator returned by [`weak_compositions`].
#[derive(Clone, Debug)]
pub struct WeakCompositions {
    next: Option<Vec<usize>>,
}

impl Iterator for WeakCompositions {
    type Item = WeakComposition;

    fn next(&mut self) -> Option<WeakComposition> {
        let current = self.next.take()?;
        let len = current.len();
        if len >= 2 {
            // rightmost nonzero entry strictly before the last slot
            if let Some(i) = (0..len - 1).rev().find(|&i| current[i] > 0) {
                let mut succ = current.clone();
                let tail: usize = succ[i + 1..].iter().sum();
                succ[i] -= 1;
                succ[i + 1] = tail + 1;
                for x in &mut succ[i + 2..] {
                    *x = 0;
                }
                self.next = Some(succ);
            }
        }
        Some(WeakComposition(current))
    }
}

/// Part sizes with their multiplicities, `⟨1^{α_1}, 2^{α_2}, …⟩`, ascending
/// by part size. Only sizes with `α_k ≥ 1` are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiplicityProfile(Vec<(usize, usize)>);

impl MultiplicityProfile {
    /// `(k, α_k)` pairs, `k` ascending.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn multiplicity(&self, k: usize) -> usize {
        self.0
            .iter()
            .find(|&&(size, _)| size == k)
            .map_or(0, |&(_, a)| a)
    }

    /// `Σ k·α_k`.
    pub fn size(&self) -> usize {
        self.0.iter().map(|&(k, a)| k * a).sum()
    }

    pub fn to_partition(&self) -> Partition {
        let mut parts = Vec::with_capacity(self.0.iter().map(|&(_, a)| a).sum());
        for &(k, a) in self.0.iter().rev() {
            parts.extend(std::iter::repeat(k).take(a));
        }
        Partition(parts)
    }
}

pub fn multiplicity_profile(lambda: &Partition) -> MultiplicityProfile {
    lambda.multiplicity_profile()
}

pub fn suffix(lambda: &Partition, k: usize) -> Partition {
    lambda.suffix(k)
}

pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n! / ∏ parts_i!`. Errors unless the parts sum to `n`.
pub fn multinomial(n: usize, parts: &[usize]) -> Result<BigInt> {
    let total: usize = parts.iter().sum();
    if total != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: total,
        });
    }
    // product of binomials keeps intermediates small
    let mut acc = BigInt::one();
    let mut so_far = 0usize;
    for &p in parts {
        so_far += p;
        acc *= binomial(so_far, p);
    }
    Ok(acc)
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Lazily grown table of factorials, shared by the closed-form evaluators.
#[derive(Clone, Debug)]
pub(crate) struct FactorialTable {
    values: Vec<BigInt>,
}

impl FactorialTable {
    pub(crate) fn new() -> Self {
        FactorialTable {
            values: vec![BigInt::one()],
        }
    }

    pub(crate) fn get(&mut self, n: usize) -> &BigInt {
        while self.values.len() <= n {
            let k = self.values.len();
            let next = &self.values[k - 1] * k;
            self.values.push(next);
        }
        &self.values[n]
    }
}

/// Exact division; a nonzero remainder means an identity that should hold
/// exactly has been violated.
pub(crate) fn exact_div(num: &BigInt, den: &BigInt, what: &str) -> Result<BigInt> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::InternalInvariantBroken(format!(
            "{what}: {num} is not divisible by {den}"
        )));
    }
    Ok(q)
}
