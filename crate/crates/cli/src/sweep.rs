//! Family sweeps: Schur signs along two-chain shape families and niceness
//! of B_{3,n} and of chain products.

use chromlat_core::{
    is_nice, schur_coefficient, BigInt, Error, NiceOptions, Partition, PosetSpec, Result, SchurMethod,
};
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{Family, SweepArgs};

/// `(m+1, m−d, 2^a, 1^b)` with `2a + b = d − 1`, `b ≤ 1`: a partition of
/// `2m`. A zero part `m − d` is dropped and the rest sorted.
pub fn two_chain_shape(m: usize, d: usize) -> Result<Partition> {
    if d == 0 || m < d {
        return Err(Error::InvalidParams(format!("shape family needs 1 ≤ d ≤ m, got d={d}, m={m}")));
    }
    let mut parts = vec![m + 1, m - d];
    parts.extend(std::iter::repeat(2).take((d - 1) / 2));
    if (d - 1) % 2 == 1 {
        parts.push(1);
    }
    parts.retain(|&x| x > 0);
    Ok(Partition::from_unsorted(parts))
}

#[derive(Clone, Debug, Serialize)]
pub struct SignRow {
    pub m: usize,
    pub poset: String,
    pub shape: String,
    pub coefficient: String,
    pub negative: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NiceRow {
    pub poset: String,
    pub elements: usize,
    pub nice: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(String, String)>,
    pub nodes: u64,
}

pub enum SweepResult {
    Signs(Vec<SignRow>),
    Nice(Vec<NiceRow>),
}

fn range(a: &SweepArgs, default: (usize, usize)) -> Result<(usize, usize)> {
    let lo = a.from.unwrap_or(default.0);
    let hi = a.to.unwrap_or(default.1);
    if lo > hi {
        return Err(Error::InvalidParams(format!("empty range {lo}..{hi}")));
    }
    if hi - lo + 1 > a.max_instances {
        return Err(Error::BudgetExceeded(format!(
            "{} instances exceed --max-instances {}",
            hi - lo + 1,
            a.max_instances
        )));
    }
    Ok((lo, hi))
}

/// Factor lists `n1 ≥ n2 ≥ … ≥ 2`, between two and `max_factors` of them,
/// with product at most `bound`.
pub fn product_family(bound: usize, max_factors: usize) -> Vec<Vec<usize>> {
    fn go(bound: usize, max_factors: usize, largest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() >= 2 {
            out.push(cur.clone());
        }
        if cur.len() == max_factors {
            return;
        }
        let used: usize = cur.iter().product();
        for f in (2..=largest.min(bound / used)).rev() {
            cur.push(f);
            go(bound, max_factors, f, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(bound, max_factors, bound, &mut Vec::new(), &mut out);
    out.sort_by_key(|f| (f.iter().product::<usize>(), f.len(), f.clone()));
    out
}

pub fn run(a: &SweepArgs) -> Result<SweepResult> {
    match a.family {
        Family::TwoChainNegativity => {
            let (lo, hi) = range(a, (a.d.max(1), a.d.max(1) + 4))?;
            let shapes = (lo..=hi).map(|m| two_chain_shape(m, a.d).map(|s| (m, s))).collect::<Result<Vec<_>>>()?;
            let rows = shapes
                .into_par_iter()
                .map(|(m, shape)| {
                    let spec = PosetSpec::Product(vec![m, 2]);
                    let v: BigInt = schur_coefficient(&spec.build()?, &shape, SchurMethod::TabloidClosed)?;
                    Ok(SignRow {
                        m,
                        poset: spec.to_string(),
                        shape: shape.to_string(),
                        negative: v.is_negative(),
                        coefficient: v.to_string(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SweepResult::Signs(rows))
        }
        Family::B3Niceness => {
            let (lo, hi) = range(a, (1, 4))?;
            let specs: Vec<PosetSpec> = (lo.max(1)..=hi).map(PosetSpec::B3).collect();
            nice_rows(a, specs).map(SweepResult::Nice)
        }
        Family::ProductNiceness => {
            let family = product_family(a.bound, a.max_factors);
            if family.len() > a.max_instances {
                return Err(Error::BudgetExceeded(format!(
                    "{} instances exceed --max-instances {}",
                    family.len(),
                    a.max_instances
                )));
            }
            nice_rows(a, family.into_iter().map(PosetSpec::Product).collect()).map(SweepResult::Nice)
        }
    }
}

fn nice_rows(a: &SweepArgs, specs: Vec<PosetSpec>) -> Result<Vec<NiceRow>> {
    if let Some(big) = specs.iter().find(|s| s.element_count() > a.max_elements) {
        return Err(Error::TooLarge {
            size: big.element_count(),
            limit: a.max_elements,
        });
    }
    let opts = NiceOptions {
        max_elements: a.max_elements,
        node_budget: a.node_budget,
    };
    specs
        .iter()
        .map(|spec| {
            let v = is_nice(&spec.build()?, &opts)?;
            Ok(NiceRow {
                poset: spec.to_string(),
                elements: spec.element_count(),
                nice: v.nice,
                witness: v.witness.map(|w| (w.achieved.to_string(), w.missing.to_string())),
                nodes: v.stats.nodes,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_family() {
        assert_eq!(two_chain_shape(12, 8).unwrap().parts(), [13, 4, 2, 2, 2, 1]);
        assert_eq!(two_chain_shape(8, 8).unwrap().parts(), [9, 2, 2, 2, 1]);
        assert_eq!(two_chain_shape(9, 8).unwrap().parts(), [10, 2, 2, 2, 1, 1]);
        assert_eq!(two_chain_shape(10, 7).unwrap().parts(), [11, 3, 2, 2, 2]);
        for m in 8..20 {
            assert_eq!(two_chain_shape(m, 8).unwrap().size(), 2 * m);
        }
        assert!(two_chain_shape(7, 8).is_err());
    }

    #[test]
    fn products_up_to_twelve() {
        let f = product_family(12, 3);
        assert!(f.contains(&vec![6, 2]));
        assert!(f.contains(&vec![3, 2, 2]));
        assert!(f.contains(&vec![2, 2, 2]));
        assert!(!f.contains(&vec![2, 2, 2, 2]));
        assert!(f.iter().all(|x| x.iter().product::<usize>() <= 12 && x.windows(2).all(|w| w[0] >= w[1])));
        // 2x2 2x3 2x4 2x5 2x6 3x3 3x4 2x2x2 2x2x3
        assert_eq!(f.len(), 9);
    }
}
