//! Monomial and Schur expansions of `X_{inc(P)}`.
//!
//! `[m_μ] X_G` is the number of semi-ordered stable partitions of `G` of
//! type `μ`, and `[s_λ] X_{inc(P)} = Σ_T (−1)^{ht T} |SCP_{P,cont T}|` over the
//! special rim hook tabloids `T` of shape `λ`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::chain_count::{count_scp, count_semiordered_stable_partitions, forced_content_prefix, scp_closed_form, StaircaseContext};
use crate::error::{Error, Result};
use crate::partition::{exact_div, factorial, partitions_of, partitions_with_max_part, Partition};
use crate::poset::{Graph, Poset, PosetSpec};
use crate::rimhook::{inverse_kostka_row, InverseKostkaTable};

/// Default element limit for [`schur_expansion`].
pub const DEFAULT_EXPANSION_LIMIT: usize = 12;

/// `Σ c_λ m_λ`, zero coefficients omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonomialExpansion {
    pub degree: usize,
    pub coeffs: BTreeMap<Partition, BigInt>,
}

impl MonomialExpansion {
    pub fn coefficient(&self, lambda: &Partition) -> BigInt {
        self.coeffs.get(lambda).cloned().unwrap_or_else(BigInt::zero)
    }

    /// The specialisation `x_1 = … = x_N = 1`, `x_{N+1} = … = 0`.
    pub fn evaluate_at_ones(&self, colors: usize) -> BigInt {
        self.coeffs
            .iter()
            .map(|(lambda, c)| c * monomial_at_ones(lambda, colors))
            .sum()
    }
}

/// `m_λ(1^N)`: the number of distinct rearrangements of `λ` padded with
/// zeros to length `N`.
fn monomial_at_ones(lambda: &Partition, colors: usize) -> BigInt {
    let l = lambda.len();
    if l > colors {
        return BigInt::zero();
    }
    let den = factorial(colors - l) * lambda.multiplicity_factorial();
    exact_div(&factorial(colors), &den, "monomial specialisation").expect("rearrangement count is integral")
}

/// `Σ c_λ s_λ`, zero coefficients omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchurExpansion {
    pub degree: usize,
    pub coeffs: BTreeMap<Partition, BigInt>,
}

impl SchurExpansion {
    pub fn coefficient(&self, lambda: &Partition) -> BigInt {
        self.coeffs.get(lambda).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_schur_positive(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Shapes with a negative coefficient.
    pub fn negative_shapes(&self) -> Vec<&Partition> {
        self.coeffs.iter().filter(|(_, c)| c.is_negative()).map(|(l, _)| l).collect()
    }
}

/// How a single Schur coefficient is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SchurMethod {
    /// Tabloid sum with each `|SCP|` counted by search.
    TabloidBrute,
    /// Tabloid sum restricted to the forced prefix, each term by the closed
    /// form. Products of two chains only.
    TabloidClosed,
    /// `TabloidClosed` when applicable, `TabloidBrute` otherwise.
    Auto,
}

impl std::str::FromStr for SchurMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" | "tabloid_brute" => Ok(SchurMethod::TabloidBrute),
            "closed" | "tabloid_closed" => Ok(SchurMethod::TabloidClosed),
            "auto" => Ok(SchurMethod::Auto),
            _ => Err(Error::InvalidSpec(format!("unknown method `{s}`"))),
        }
    }
}

/// Two-chain parameters and forced prefix when the closed path applies.
fn closed_path(p: &Poset, shape: &Partition) -> Result<Option<(StaircaseContext, Partition)>> {
    let Some((m, n)) = p.spec().and_then(PosetSpec::as_two_chain_product) else {
        return Ok(None);
    };
    let ctx = StaircaseContext::new(m, n)?;
    Ok(forced_content_prefix(shape, m, n)?.map(|prefix| (ctx, prefix)))
}

/// The method `Auto` resolves to for this poset and shape.
pub fn resolve_method(p: &Poset, shape: &Partition) -> Result<SchurMethod> {
    check_size(p.len(), shape)?;
    Ok(if closed_path(p, shape)?.is_some() {
        SchurMethod::TabloidClosed
    } else {
        SchurMethod::TabloidBrute
    })
}

fn check_size(expected: usize, shape: &Partition) -> Result<()> {
    if shape.size() != expected {
        return Err(Error::SizeMismatch {
            expected,
            found: shape.size(),
        });
    }
    Ok(())
}

/// `[s_shape] X_{inc(p)}`.
pub fn schur_coefficient(p: &Poset, shape: &Partition, method: SchurMethod) -> Result<BigInt> {
    check_size(p.len(), shape)?;
    let method = match method {
        SchurMethod::Auto => resolve_method(p, shape)?,
        other => other,
    };
    let row = inverse_kostka_row(shape);
    match method {
        SchurMethod::TabloidClosed => {
            let (ctx, prefix) = closed_path(p, shape)?.ok_or_else(|| {
                Error::FastPathInapplicable(format!(
                    "shape {shape} on {} lacks a two-chain product with a forced prefix",
                    p.spec().map_or_else(|| "this poset".to_string(), |s| s.to_string())
                ))
            })?;
            let mut total = BigInt::zero();
            for (content, sign) in row.iter().filter(|(c, _)| c.starts_with(prefix.parts())) {
                total += sign * scp_closed_form(&ctx, content)?;
            }
            Ok(total)
        }
        _ => {
            let longest = p.max_chain_size();
            let terms: Vec<(&Partition, &BigInt)> = row.iter().filter(|(c, _)| c.first() <= longest).collect();
            let values: Result<Vec<BigInt>> = terms
                .par_iter()
                .map(|(content, sign)| Ok(*sign * count_scp(p, content)?))
                .collect();
            Ok(values?.into_iter().sum())
        }
    }
}

/// Full Schur expansion with the default element limit.
pub fn schur_expansion(p: &Poset) -> Result<SchurExpansion> {
    schur_expansion_with_limit(p, DEFAULT_EXPANSION_LIMIT)
}

/// Full Schur expansion: every `|SCP_{P,μ}|` with `μ_1` at most the longest
/// chain is counted once, then combined row by row with the inverse Kostka
/// table.
pub fn schur_expansion_with_limit(p: &Poset, limit: usize) -> Result<SchurExpansion> {
    let n = p.len();
    if n > limit {
        return Err(Error::TooLarge { size: n, limit });
    }
    let longest = p.max_chain_size();
    let contents = partitions_with_max_part(n, longest.max(usize::from(n == 0)));
    let counts: Result<Vec<BigInt>> = contents.par_iter().map(|mu| count_scp(p, mu)).collect();
    let scp: BTreeMap<Partition, BigInt> = contents.into_iter().zip(counts?).collect();
    let mut table = InverseKostkaTable::new();
    let mut coeffs = BTreeMap::new();
    for lambda in partitions_with_max_part(n, longest.max(usize::from(n == 0))) {
        let c: BigInt = table
            .row(&lambda)
            .iter()
            .filter_map(|(mu, sign)| scp.get(mu).map(|v| sign * v))
            .sum();
        if !c.is_zero() {
            coeffs.insert(lambda, c);
        }
    }
    Ok(SchurExpansion { degree: n, coeffs })
}

/// `[m_λ] X_G` for every `λ ⊢ |V(G)|`.
pub fn monomial_expansion(g: &Graph) -> Result<MonomialExpansion> {
    let n = g.vertex_count();
    let mut coeffs = BTreeMap::new();
    for lambda in partitions_of(n) {
        let c = count_semiordered_stable_partitions(g, &lambda)?;
        if !c.is_zero() {
            coeffs.insert(lambda, c);
        }
    }
    Ok(MonomialExpansion { degree: n, coeffs })
}

/// `ρ(n,k) = (2n+k−1, 2n+k−3, …, k+3, k−3, 2, 2)`, a partition of `n(n+k)`.
pub fn rho_shape(n: usize, k: usize) -> Result<Partition> {
    if k < 5 || n < 2 {
        return Err(Error::PreconditionViolated(format!(
            "rho needs k ≥ 5 and n ≥ 2, got n={n}, k={k}"
        )));
    }
    let mut parts: Vec<usize> = (1..n).map(|i| 2 * n + k + 1 - 2 * i).collect();
    parts.extend([k - 3, 2, 2]);
    Partition::new(parts)
}

/// Closed value of `[s_{ρ(n,k)}] X_{inc((n+k)×n)}`.
pub fn theorem41_coefficient(n: usize, k: usize) -> Result<BigInt> {
    if k < 5 || n < 2 {
        return Err(Error::PreconditionViolated(format!(
            "needs k ≥ 5 and n ≥ 2, got n={n}, k={k}"
        )));
    }
    let nf = factorial(n);
    let bn = BigInt::from(n);
    let bk = BigInt::from(k);
    Ok(match k {
        5 => nf * (-4 * &bn + 9),
        6 => nf * (-11 * &bn + 32),
        _ => {
            let poly = (-2 * &bk * &bk + 4 * &bk - 18) * &bn + (&bk * &bk * &bk - 7 * &bk + 18);
            let num = nf * (&bk - 4) * poly;
            exact_div(&num, &BigInt::from(12), "general-k coefficient")?
        }
    })
}

/// `[s_ρ̃] X_{inc(p ⊕ (m×n) ⊕ q)}` via `[s_ρ] X_{inc(m×n)}` where `ρ` replaces
/// the first part of `ρ̃` by `m+n−1`.
pub fn pieri_shift_coefficient(p: usize, q: usize, m: usize, n: usize, shape_tilde: &Partition) -> Result<BigInt> {
    let ctx = StaircaseContext::new(m, n)?;
    let top = ctx.m + ctx.n - 1;
    check_size(m * n + p + q, shape_tilde)?;
    if shape_tilde.first() != top + p + q {
        return Err(Error::PreconditionViolated(format!(
            "first part of {shape_tilde} must be {}",
            top + p + q
        )));
    }
    let rest = shape_tilde.suffix(2);
    if rest.first() > top {
        return Err(Error::PreconditionViolated(format!(
            "second part of {shape_tilde} exceeds {top}"
        )));
    }
    let mut parts = vec![top];
    parts.extend_from_slice(rest.parts());
    let rho = Partition::new(parts)?;
    let product = PosetSpec::Product(vec![m, n]).build()?;
    schur_coefficient(&product, &rho, SchurMethod::Auto)
}
