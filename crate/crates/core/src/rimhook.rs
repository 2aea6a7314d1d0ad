//! Special rim hook tabloids, signed inverse Kostka coefficients and Kostka
//! numbers.
//!
//! Rows are numbered from 1, row `i` holding `λ_i` cells, so row 1 is the
//! longest. A special rim hook always contains the first cell of the
//! highest-numbered remaining row; peeling it leaves a smaller shape. The
//! hook that starts in row `r` of a shape `μ` with `ℓ` rows has
//! `μ_r + ℓ − r` cells, spans rows `r..=ℓ`, and leaves
//! `(μ_1, …, μ_{r−1}, μ_{r+1} − 1, …, μ_ℓ − 1)` (zeros dropped).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};

/// One rim hook, stored row by row: `(row, first_col, last_col)` with rows
/// ascending. Columns are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RimHook {
    rows: Vec<(usize, usize, usize)>,
}

impl RimHook {
    pub fn size(&self) -> usize {
        self.rows.iter().map(|&(_, a, b)| b + 1 - a).sum()
    }

    /// Rows spanned minus one.
    pub fn height(&self) -> usize {
        self.rows.len() - 1
    }

    /// `(lowest row, highest row)`.
    pub fn row_span(&self) -> (usize, usize) {
        (self.rows[0].0, self.rows[self.rows.len() - 1].0)
    }

    /// Per-row column ranges `(row, first_col, last_col)`.
    pub fn row_ranges(&self) -> &[(usize, usize, usize)] {
        &self.rows
    }

    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .flat_map(|&(r, a, b)| (a..=b).map(move |c| (r, c)))
            .collect()
    }
}

/// The hook starting in row `r` of `shape`, and the shape left after
/// removing it.
fn peel(shape: &[usize], r: usize) -> (RimHook, Vec<usize>) {
    let l = shape.len();
    let rows = (r..=l)
        .map(|i| {
            let next = if i < l { shape[i] } else { 0 };
            (i, next.max(1), shape[i - 1])
        })
        .collect();
    let mut rest = shape[..r - 1].to_vec();
    rest.extend(shape[r..].iter().map(|&x| x - 1).filter(|&x| x > 0));
    (RimHook { rows }, rest)
}

/// A tiling of a Ferrers shape by special rim hooks, listed by the highest
/// row each one reaches, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SpecialRimHookTabloid {
    shape: Partition,
    hooks: Vec<RimHook>,
}

impl SpecialRimHookTabloid {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn hooks(&self) -> &[RimHook] {
        &self.hooks
    }

    /// Hook sizes in listing order.
    pub fn hook_sizes(&self) -> Vec<usize> {
        self.hooks.iter().map(RimHook::size).collect()
    }

    pub fn height(&self) -> usize {
        self.hooks.iter().map(RimHook::height).sum()
    }

    /// `(-1)^height`.
    pub fn sign(&self) -> i32 {
        if self.height() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// The hook sizes as a partition.
    pub fn content(&self) -> Partition {
        Partition::from_unsorted(self.hook_sizes())
    }

    /// Row-by-row grid of hook indices (1-based), row 1 first.
    pub fn grid(&self) -> Vec<Vec<usize>> {
        let mut grid: Vec<Vec<usize>> = self.shape.parts().iter().map(|&p| vec![0; p]).collect();
        for (h, hook) in self.hooks.iter().enumerate() {
            for (r, c) in hook.cells() {
                grid[r - 1][c - 1] = h + 1;
            }
        }
        grid
    }
}

impl fmt::Display for SpecialRimHookTabloid {
    /// Rows drawn top to bottom from the shortest, so row 1 sits at the
    /// bottom.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let grid = self.grid();
        let width = self.hooks.len().to_string().len();
        for row in grid.iter().rev() {
            let cells: Vec<String> = row.iter().map(|h| format!("{h:>width$}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// All special rim hook tabloids of one shape, optionally restricted to one
/// content.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TabloidFamily {
    pub shape: Partition,
    pub tabloids: Vec<SpecialRimHookTabloid>,
}

impl TabloidFamily {
    pub fn len(&self) -> usize {
        self.tabloids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tabloids.is_empty()
    }

    /// `Σ (-1)^ht` over the family.
    pub fn signed_count(&self) -> BigInt {
        self.tabloids.iter().map(|t| BigInt::from(t.sign())).sum()
    }
}

/// Enumerates the special rim hook tabloids of `shape`, keeping only those
/// of content `content` when given. Output is sorted by hook sizes read
/// from row 1 upward.
pub fn enumerate_srht(shape: &Partition, content: Option<&Partition>) -> Result<TabloidFamily> {
    if let Some(c) = content {
        if c.size() != shape.size() {
            return Err(Error::SizeMismatch {
                expected: shape.size(),
                found: c.size(),
            });
        }
    }
    // residual multiset of wanted hook sizes, pruned as hooks are placed
    let mut wanted: Option<BTreeMap<usize, usize>> = content.map(|c| {
        let mut m = BTreeMap::new();
        for &p in c.parts() {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    });
    let mut out = Vec::new();
    let mut stack = Vec::new();
    enumerate_rec(shape.parts(), &mut wanted, &mut stack, &mut out);
    let mut tabloids: Vec<SpecialRimHookTabloid> = out
        .into_iter()
        .map(|mut hooks| {
            hooks.reverse();
            SpecialRimHookTabloid {
                shape: shape.clone(),
                hooks,
            }
        })
        .collect();
    tabloids.sort_by_cached_key(|t| t.hook_sizes());
    Ok(TabloidFamily {
        shape: shape.clone(),
        tabloids,
    })
}

fn enumerate_rec(
    shape: &[usize],
    wanted: &mut Option<BTreeMap<usize, usize>>,
    stack: &mut Vec<RimHook>,
    out: &mut Vec<Vec<RimHook>>,
) {
    if shape.is_empty() {
        out.push(stack.clone());
        return;
    }
    let l = shape.len();
    for r in 1..=l {
        let size = shape[r - 1] + l - r;
        if let Some(w) = wanted.as_mut() {
            match w.get_mut(&size) {
                Some(c) if *c > 0 => *c -= 1,
                _ => continue,
            }
        }
        let (hook, rest) = peel(shape, r);
        stack.push(hook);
        enumerate_rec(&rest, wanted, stack, out);
        stack.pop();
        if let Some(w) = wanted.as_mut() {
            *w.get_mut(&size).expect("restored entry") += 1;
        }
    }
}

/// Memoised signed tabloid counts: for each shape, the map from content to
/// `Σ (-1)^ht` over tabloids of that content.
#[derive(Clone, Debug, Default)]
pub struct InverseKostkaTable {
    rows: HashMap<Vec<usize>, BTreeMap<Partition, BigInt>>,
}

impl InverseKostkaTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Nonzero entries `content → [s_shape] m_content`.
    pub fn row(&mut self, shape: &Partition) -> &BTreeMap<Partition, BigInt> {
        self.fill(shape.parts());
        &self.rows[shape.parts()]
    }

    fn fill(&mut self, shape: &[usize]) {
        if self.rows.contains_key(shape) {
            return;
        }
        let mut row: BTreeMap<Partition, BigInt> = BTreeMap::new();
        if shape.is_empty() {
            row.insert(Partition::empty(), BigInt::one());
        } else {
            let l = shape.len();
            for r in 1..=l {
                let size = shape[r - 1] + l - r;
                let negative = (l - r) % 2 == 1;
                let (_, rest) = peel(shape, r);
                self.fill(&rest);
                for (content, value) in &self.rows[&rest] {
                    let entry = row.entry(content.with_part(size)).or_insert_with(BigInt::zero);
                    if negative {
                        *entry -= value;
                    } else {
                        *entry += value;
                    }
                }
            }
            row.retain(|_, v| !v.is_zero());
        }
        self.rows.insert(shape.to_vec(), row);
    }
}

/// Nonzero entries of the inverse Kostka row of `shape`: content `μ` maps to
/// `[s_shape] m_μ`.
pub fn inverse_kostka_row(shape: &Partition) -> BTreeMap<Partition, BigInt> {
    InverseKostkaTable::new().row(shape).clone()
}

/// `[s_λ] m_μ`, the signed count of special rim hook tabloids of shape `λ`
/// and content `μ`.
pub fn inverse_kostka(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch {
            expected: lambda.size(),
            found: mu.size(),
        });
    }
    if !lambda.dominated_by(mu)? {
        return Ok(BigInt::zero());
    }
    Ok(enumerate_srht(lambda, Some(mu))?.signed_count())
}

/// Number of semistandard tableaux of shape `λ` and content `μ`.
pub fn kostka_number(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch {
            expected: lambda.size(),
            found: mu.size(),
        });
    }
    let mut memo = HashMap::new();
    Ok(kostka_rec(lambda.parts().to_vec(), mu.parts(), &mut memo))
}

/// Strips the cells holding the largest letter, a horizontal strip of size
/// `μ_last`, in every possible way.
fn kostka_rec(lambda: Vec<usize>, mu: &[usize], memo: &mut HashMap<(Vec<usize>, usize), BigInt>) -> BigInt {
    let Some((&last, rest)) = mu.split_last() else {
        return if lambda.is_empty() { BigInt::one() } else { BigInt::zero() };
    };
    let key = (lambda.clone(), mu.len());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut total = BigInt::zero();
    let mut nu = vec![0; lambda.len()];
    strips(&lambda, 0, last, &mut nu, &mut |nu| {
        let trimmed: Vec<usize> = nu.iter().copied().filter(|&x| x > 0).collect();
        total += kostka_rec(trimmed, rest, memo);
    });
    memo.insert(key, total.clone());
    total
}

/// Calls `f` with every `ν ⊆ λ` such that `λ/ν` is a horizontal strip of
/// `remove` cells, i.e. `λ_{i+1} ≤ ν_i ≤ λ_i`.
fn strips<F: FnMut(&[usize])>(lambda: &[usize], i: usize, remove: usize, nu: &mut Vec<usize>, f: &mut F) {
    if i == lambda.len() {
        if remove == 0 {
            f(nu);
        }
        return;
    }
    let floor = lambda.get(i + 1).copied().unwrap_or(0);
    for take in 0..=remove.min(lambda[i] - floor) {
        nu[i] = lambda[i] - take;
        strips(lambda, i + 1, remove - take, nu, f);
    }
}

/// Full inverse Kostka matrix over the partitions of `n`, indexed as
/// `[shape][content]` in the order of [`partitions_of`].
pub fn inverse_kostka_matrix(n: usize) -> Vec<Vec<BigInt>> {
    let parts = partitions_of(n);
    let mut table = InverseKostkaTable::new();
    parts
        .iter()
        .map(|lambda| {
            let row = table.row(lambda);
            parts
                .iter()
                .map(|mu| row.get(mu).cloned().unwrap_or_else(BigInt::zero))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::dominance_leq;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn shape_21_has_two_tabloids() {
        let fam = enumerate_srht(&p("2,1"), None).unwrap();
        assert_eq!(fam.len(), 2);
        let heights: Vec<usize> = fam.tabloids.iter().map(|t| t.height()).collect();
        assert_eq!(heights, [0, 1]);
        assert_eq!(fam.tabloids[0].content(), p("2,1"));
        assert_eq!(fam.tabloids[1].content(), p("3"));
    }

    #[test]
    fn single_row_and_column() {
        for n in 1..8 {
            let row = Partition::new(vec![n]).unwrap();
            let fam = enumerate_srht(&row, None).unwrap();
            assert_eq!(fam.len(), 1);
            assert_eq!(fam.tabloids[0].height(), 0);
        }
        let fam = enumerate_srht(&p("1,1"), Some(&p("2"))).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(fam.tabloids[0].height(), 1);
    }

    #[test]
    fn figure_two_tabloid() {
        // hooks of sizes 2 (row 1), 3 (rows 2-3), 6 (rows 1..4 residue)
        let fam = enumerate_srht(&p("5,3,2,1"), Some(&p("6,3,2"))).unwrap();
        assert!(fam.tabloids.iter().any(|t| t.height() == 2));
        for t in &fam.tabloids {
            assert_eq!(t.content(), p("6,3,2"));
        }
    }

    #[test]
    fn rho_with_staircase_prefix_has_six_tabloids() {
        let fam = enumerate_srht(&p("13,11,9,3,2,2"), None).unwrap();
        let hits: Vec<_> = fam
            .tabloids
            .iter()
            .filter(|t| t.content().starts_with(&[13, 11, 9]))
            .collect();
        assert_eq!(hits.len(), 6);
        let mut heights: Vec<usize> = hits.iter().map(|t| t.height()).collect();
        heights.sort();
        assert_eq!(heights, [0, 1, 1, 2, 2, 3]);
    }

    #[test]
    fn inverse_kostka_examples() {
        assert_eq!(inverse_kostka(&p("2,1"), &p("3")).unwrap(), BigInt::from(-1));
        assert_eq!(inverse_kostka(&p("1,1"), &p("2")).unwrap(), BigInt::from(-1));
        assert_eq!(inverse_kostka(&p("3,1"), &p("2,2")).unwrap(), BigInt::zero());
        assert!(matches!(
            inverse_kostka(&p("2"), &p("1")),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn kostka_examples() {
        assert_eq!(kostka_number(&p("2,1"), &p("1,1,1")).unwrap(), BigInt::from(2));
        for n in 1..8 {
            for lambda in partitions_of(n) {
                assert_eq!(kostka_number(&lambda, &lambda).unwrap(), BigInt::one());
                let row = Partition::new(vec![n]).unwrap();
                assert_eq!(kostka_number(&row, &lambda).unwrap(), BigInt::one());
            }
        }
        // number of standard tableaux of shape (3,2) is 5
        assert_eq!(kostka_number(&p("3,2"), &p("1,1,1,1,1")).unwrap(), BigInt::from(5));
    }

    /// Kostka numbers by brute-force filling, independent of the strip
    /// recursion.
    fn kostka_brute(lambda: &Partition, mu: &Partition) -> usize {
        let cells: Vec<(usize, usize)> = lambda
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
            .collect();
        let letters = mu.len();
        let mut fill = vec![0usize; cells.len()];
        let mut count = 0;
        fn go(
            i: usize,
            cells: &[(usize, usize)],
            lambda: &Partition,
            mu: &Partition,
            fill: &mut Vec<usize>,
            letters: usize,
            count: &mut usize,
        ) {
            if i == cells.len() {
                let mut used = vec![0; letters];
                for &x in fill.iter() {
                    used[x] += 1;
                }
                if used == mu.parts() {
                    *count += 1;
                }
                return;
            }
            let (r, c) = cells[i];
            for x in 0..letters {
                if c > 0 && fill[i - 1] > x {
                    continue;
                }
                if r > 0 {
                    let above = lambda.parts()[..r - 1].iter().sum::<usize>() + c;
                    if fill[above] >= x {
                        continue;
                    }
                }
                fill[i] = x;
                go(i + 1, cells, lambda, mu, fill, letters, count);
            }
        }
        go(0, &cells, lambda, mu, &mut fill, letters, &mut count);
        count
    }

    #[test]
    fn kostka_matches_brute_force() {
        for n in 1..=6 {
            for lambda in partitions_of(n) {
                for mu in partitions_of(n) {
                    assert_eq!(
                        kostka_number(&lambda, &mu).unwrap(),
                        BigInt::from(kostka_brute(&lambda, &mu)),
                        "{lambda} {mu}"
                    );
                }
            }
        }
    }

    #[test]
    fn tabloid_invariants() {
        for n in 1..=8 {
            for shape in partitions_of(n) {
                let fam = enumerate_srht(&shape, None).unwrap();
                let mut seen = std::collections::HashSet::new();
                for t in &fam.tabloids {
                    assert!(seen.insert(t.hook_sizes()), "duplicate tabloid");
                    // cells tile the shape exactly
                    let grid = t.grid();
                    assert!(grid.iter().flatten().all(|&h| h > 0));
                    let total: usize = t.hooks().iter().map(RimHook::size).sum();
                    assert_eq!(total, n);
                    for hook in t.hooks() {
                        let cells = hook.cells();
                        assert!(cells.iter().any(|&(_, c)| c == 1), "hook misses column 1");
                        // connected, and no 2x2 block
                        for w in hook.row_ranges().windows(2) {
                            assert_eq!(w[0].1, w[1].2, "rows not joined by one column");
                        }
                    }
                    assert!(dominance_leq(&shape, &t.content()).unwrap());
                }
            }
        }
    }

    #[test]
    fn filter_equals_post_filter() {
        for n in 1..=8 {
            for shape in partitions_of(n) {
                let all = enumerate_srht(&shape, None).unwrap();
                for content in partitions_of(n) {
                    let filtered = enumerate_srht(&shape, Some(&content)).unwrap();
                    let expected: Vec<_> = all
                        .tabloids
                        .iter()
                        .filter(|t| t.content() == content)
                        .cloned()
                        .collect();
                    assert_eq!(filtered.tabloids, expected);
                }
            }
        }
    }

    #[test]
    fn table_row_matches_enumeration() {
        let mut table = InverseKostkaTable::new();
        for n in 1..=8 {
            for shape in partitions_of(n) {
                let fam = enumerate_srht(&shape, None).unwrap();
                let mut expected: BTreeMap<Partition, BigInt> = BTreeMap::new();
                for t in &fam.tabloids {
                    *expected.entry(t.content()).or_insert_with(BigInt::zero) += t.sign();
                }
                expected.retain(|_, v| !v.is_zero());
                assert_eq!(table.row(&shape), &expected, "{shape}");
            }
        }
    }

    #[test]
    fn inverse_times_kostka_is_identity() {
        for n in 1..=8 {
            let parts = partitions_of(n);
            let inv = inverse_kostka_matrix(n);
            let kostka: Vec<Vec<BigInt>> = parts
                .iter()
                .map(|l| parts.iter().map(|m| kostka_number(l, m).unwrap()).collect())
                .collect();
            for mu in 0..parts.len() {
                for nu in 0..parts.len() {
                    let s: BigInt = (0..parts.len()).map(|l| &inv[l][mu] * &kostka[l][nu]).sum();
                    let expected = if mu == nu { BigInt::one() } else { BigInt::zero() };
                    assert_eq!(s, expected, "n={n} mu={} nu={}", parts[mu], parts[nu]);
                }
                assert_eq!(inv[mu][mu], BigInt::one());
            }
        }
    }

    #[test]
    fn two_by_two_inverse_by_linear_algebra() {
        // Kostka matrix for n = 2 is [[1,1],[0,1]] (rows (2),(1,1)); its
        // inverse is [[1,-1],[0,1]].
        let inv = inverse_kostka_matrix(2);
        assert_eq!(inv[1][0], BigInt::from(-1));
        assert_eq!(inv[0][1], BigInt::zero());
    }
}
