//! The acceptance suite behind `chromlat verify`.
//!
//! Every criterion checks exact values and has a wall-clock budget; a
//! criterion passes only when both hold.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use chromlat_core::rimhook::inverse_kostka_matrix;
use chromlat_core::schur::resolve_method;
use chromlat_core::{
    chain_partition_exists, count_scp, dominance_leq, is_nice, monomial_expansion, ordinal_sum_chain_partition,
    partitions_of, proof_case_closed_forms, rho_shape, schur_coefficient, schur_expansion, scp_closed_form,
    staircase_type, theorem41_coefficient, BigInt, NiceOptions, Partition, Poset, PosetSpec, ProofCase, SchurMethod,
    StaircaseContext,
};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::oracle;
use crate::sweep::two_chain_shape;

type Check = fn() -> Result<String, String>;

pub struct Criterion {
    pub id: &'static str,
    pub name: &'static str,
    pub budget: Duration,
    check: Check,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub budget_ms: u128,
}

impl Criterion {
    pub fn run(&self) -> CriterionResult {
        let start = Instant::now();
        let outcome = (self.check)();
        let elapsed = start.elapsed();
        let (passed, detail) = match outcome {
            Ok(d) if elapsed <= self.budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(e) => (false, e),
        };
        CriterionResult {
            id: self.id.to_string(),
            name: self.name.to_string(),
            passed,
            detail,
            elapsed_ms: elapsed.as_millis(),
            budget_ms: self.budget.as_millis(),
        }
    }
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

/// The gating criteria, in order.
pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: "1", name: "[s_(10,8,2,2,2)] X_inc(8x3) = -18", budget: secs(1), check: c1 },
        Criterion { id: "2", name: "[s_(13,11,9,3,2,2)] X_inc(10x4) = -288", budget: secs(5), check: c2 },
        Criterion { id: "3", name: "general-k coefficient at n=5, k=7 is -3840 three ways", budget: secs(10), check: c3 },
        Criterion { id: "4", name: "|SCP(chain:4, (2,1,1))| = 12", budget: Duration::from_millis(100), check: c4 },
        Criterion { id: "5", name: "X_inc(chain:3) = s_3 + 2 s_21 + s_111", budget: Duration::from_millis(100), check: c5 },
        Criterion { id: "6", name: "b3:6 is not nice, witness (9,7,2) / (6,6,6)", budget: secs(60), check: c6 },
        Criterion { id: "7", name: "b3:1..4 nice and b3:1 Schur positive", budget: secs(600), check: c7 },
        Criterion { id: "8", name: "closed SCP form equals search on small two-chain products", budget: secs(300), check: c8 },
        Criterion { id: "9", name: "inverse Kostka times Kostka is the identity, n <= 8", budget: secs(60), check: c9 },
        Criterion { id: "10", name: "three-path Schur oracle on small posets", budget: secs(300), check: c10 },
        Criterion { id: "11", name: "(m+1,m-8,2,2,2,1) coefficient of X_inc(mx2) negative, m=8..12", budget: secs(60), check: c11 },
        Criterion { id: "12", name: "ordinal sums nice by construction", budget: secs(300), check: c12 },
        Criterion { id: "13", name: "Lonc-Elzobi criterion for m*n <= 16", budget: secs(300), check: c13 },
        Criterion { id: "14", name: "chromatic polynomial specialization, N = 1..3", budget: secs(60), check: c14 },
    ]
}

/// Non-gating checks that may exceed desk-scale budgets.
pub fn extended() -> Vec<Criterion> {
    vec![Criterion { id: "E1", name: "b3:5 is nice", budget: secs(3600), check: e1 }]
}

pub fn run_all(list: &[Criterion]) -> Vec<CriterionResult> {
    list.iter().map(Criterion::run).collect()
}

pub fn render_table(results: &[CriterionResult]) -> String {
    results
        .iter()
        .map(|r| {
            format!(
                "[{}] {:>3}  {}  ({} ms / {} ms)  {}\n",
                if r.passed { "PASS" } else { "FAIL" },
                r.id,
                r.name,
                r.elapsed_ms,
                r.budget_ms,
                r.detail
            )
        })
        .collect()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn poset(s: &str) -> Result<Poset, String> {
    s.parse::<PosetSpec>().and_then(|spec| spec.build()).map_err(err)
}

fn part(s: &str) -> Result<Partition, String> {
    s.parse().map_err(err)
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn closed_coefficient(spec: &str, shape: &Partition) -> Result<BigInt, String> {
    let p = poset(spec)?;
    expect_eq("method", resolve_method(&p, shape).map_err(err)?, SchurMethod::TabloidClosed)?;
    schur_coefficient(&p, shape, SchurMethod::TabloidClosed).map_err(err)
}

fn c1() -> Result<String, String> {
    let v = closed_coefficient("prod:8x3", &part("10,8,2,2,2")?)?;
    expect_eq("coefficient", v.clone(), BigInt::from(-18))?;
    expect_eq("n!(-4n+9) at n=3", theorem41_coefficient(3, 5).map_err(err)?, v)?;
    Ok("-18".into())
}

fn c2() -> Result<String, String> {
    let v = closed_coefficient("prod:10x4", &part("13,11,9,3,2,2")?)?;
    expect_eq("coefficient", v.clone(), BigInt::from(-288))?;
    expect_eq("n!(-11n+32) at n=4", theorem41_coefficient(4, 6).map_err(err)?, v)?;
    Ok("-288".into())
}

fn c3() -> Result<String, String> {
    let formula = theorem41_coefficient(5, 7).map_err(err)?;
    expect_eq("formula", formula.clone(), BigInt::from(-3840))?;
    let cases = proof_case_closed_forms(5, 7).map_err(err)?;
    let compositional: BigInt = ProofCase::ALL
        .iter()
        .map(|c| if c.height() % 2 == 0 { cases[c].clone() } else { -cases[c].clone() })
        .sum();
    expect_eq("compositional", compositional, formula.clone())?;
    let closed = closed_coefficient("prod:12x5", &rho_shape(5, 7).map_err(err)?)?;
    expect_eq("closed path", closed, formula)?;
    Ok("-3840 (formula, six tabloids, closed path)".into())
}

fn c4() -> Result<String, String> {
    let v = count_scp(&poset("chain:4")?, &part("2,1,1")?).map_err(err)?;
    expect_eq("count", v, BigInt::from(12))?;
    Ok("12".into())
}

fn c5() -> Result<String, String> {
    let e = schur_expansion(&poset("chain:3")?).map_err(err)?;
    let want: BTreeMap<Partition, BigInt> =
        [("3", 1), ("2,1", 2), ("1,1,1", 1)].into_iter().map(|(s, c)| (s.parse().unwrap(), BigInt::from(c))).collect();
    expect_eq("expansion", e.coeffs, want)?;
    Ok("s_3 + 2 s_21 + s_111".into())
}

fn c6() -> Result<String, String> {
    let p = poset("b3:6")?;
    let cert = chain_partition_exists(&p, &part("9,7,2")?)
        .map_err(err)?
        .ok_or("no chain partition of type (9,7,2)")?;
    cert.validate(&p).map_err(err)?;
    if chain_partition_exists(&p, &part("6,6,6")?).map_err(err)?.is_some() {
        return Err("found a chain partition of type (6,6,6)".into());
    }
    let v = is_nice(&p, &NiceOptions::default()).map_err(err)?;
    let w = v.witness.ok_or("is_nice reported nice")?;
    expect_eq("achieved", w.achieved.clone(), part("9,7,2")?)?;
    expect_eq("missing", w.missing.clone(), part("6,6,6")?)?;
    w.certificate.validate(&p).map_err(err)?;
    Ok(format!("witness ({}) / ({}), {} nodes to refute", w.achieved, w.missing, w.refutation.nodes))
}

fn c7() -> Result<String, String> {
    for n in 1..=4 {
        let v = is_nice(&poset(&format!("b3:{n}"))?, &NiceOptions::default()).map_err(err)?;
        if !v.nice {
            return Err(format!("b3:{n} reported not nice"));
        }
    }
    let e = schur_expansion(&poset("b3:1")?).map_err(err)?;
    if let Some(bad) = e.negative_shapes().first() {
        return Err(format!("b3:1 has negative coefficient at ({bad})"));
    }
    Ok(format!("b3:1 has {} nonzero Schur terms, all positive", e.coeffs.len()))
}

fn c8() -> Result<String, String> {
    let mut checked = 0;
    for (m, n) in [(3, 2), (4, 2), (5, 2), (4, 3), (5, 3)] {
        let p = poset(&format!("prod:{m}x{n}"))?;
        let ctx = StaircaseContext::new(m, n).map_err(err)?;
        let prefix = ctx.prefix();
        for ty in partitions_of(m * n).into_iter().filter(|t| t.starts_with(&prefix)) {
            let closed = scp_closed_form(&ctx, &ty).map_err(err)?;
            let brute = count_scp(&p, &ty).map_err(err)?;
            expect_eq(&format!("{m}x{n} type ({ty})"), closed, brute)?;
            checked += 1;
        }
    }
    Ok(format!("{checked} types agree"))
}

fn c9() -> Result<String, String> {
    for n in 1..=8 {
        let inv = inverse_kostka_matrix(n);
        let k = oracle::kostka_matrix(n);
        let len = k.len();
        for mu in 0..len {
            for nu in 0..len {
                let s: BigInt = (0..len).map(|l| &inv[l][mu] * &k[l][nu]).sum();
                let want = if mu == nu { BigInt::one() } else { BigInt::zero() };
                if s != want {
                    return Err(format!("n={n}: entry ({mu},{nu}) is {s}"));
                }
            }
        }
    }
    Ok("n = 1..8".into())
}

const SMALL_POSETS: [&str; 10] = [
    "chain:1", "chain:2", "chain:3", "chain:4", "chain:5", "chain:6", "prod:2x2", "prod:3x2", "prod:2x2x2", "b3:1",
];

fn c10() -> Result<String, String> {
    for spec in SMALL_POSETS {
        let p = poset(spec)?;
        let g = p.incomparability_graph();
        let tabloid = schur_expansion(&p).map_err(err)?;
        let monomials = monomial_expansion(&g).map_err(err)?;
        let via_kostka = oracle::schur_from_monomials(p.len(), &monomials.coeffs).ok_or("Kostka matrix not unitriangular")?;
        expect_eq(&format!("{spec} tabloid sum vs Kostka inversion"), &tabloid.coeffs, &via_kostka)?;
        expect_eq(&format!("{spec} monomials vs colorings"), monomials.coeffs, oracle::coloring_monomials(&g))?;
    }
    Ok(format!("{} posets", SMALL_POSETS.len()))
}

fn c11() -> Result<String, String> {
    let mut values = Vec::new();
    for m in 8..=12 {
        let shape = two_chain_shape(m, 8).map_err(err)?;
        let v = closed_coefficient(&format!("prod:{m}x2"), &shape)?;
        if !v.is_negative() {
            return Err(format!("m={m}: ({shape}) has coefficient {v}"));
        }
        values.push(format!("m={m}: {v}"));
    }
    Ok(values.join(", "))
}

fn c12() -> Result<String, String> {
    let mut built = 0;
    for (p, q, m, n) in [(1, 1, 2, 2), (2, 0, 3, 2), (1, 2, 3, 3)] {
        let sum = PosetSpec::OrdinalSum(p, Box::new(PosetSpec::Product(vec![m, n])), q).build().map_err(err)?;
        let mut tilde = staircase_type(m, n).map_err(err)?.into_parts();
        tilde[0] += p + q;
        let tilde = Partition::new(tilde).map_err(err)?;
        for mu in partitions_of(m * n + p + q) {
            if dominance_leq(&mu, &tilde).map_err(err)? {
                let r = ordinal_sum_chain_partition(p, q, m, n, &mu).map_err(err)?;
                r.certificate.validate(&sum).map_err(err)?;
                expect_eq("certificate type", &r.certificate.ty, &mu)?;
                built += 1;
            } else if chain_partition_exists(&sum, &mu).map_err(err)?.is_some() {
                return Err(format!("{p}+{m}x{n}+{q}: ({mu}) is achievable but not below ({tilde})"));
            }
        }
    }
    Ok(format!("{built} certificates built and validated"))
}

fn c13() -> Result<String, String> {
    let mut checked = 0;
    for n in 1..=4 {
        for m in n..=16 / n {
            let p = poset(&format!("prod:{m}x{n}"))?;
            let stair = staircase_type(m, n).map_err(err)?;
            for ty in partitions_of(m * n) {
                let exists = chain_partition_exists(&p, &ty).map_err(err)?;
                if let Some(c) = &exists {
                    c.validate(&p).map_err(err)?;
                }
                let below = dominance_leq(&ty, &stair).map_err(err)?;
                if exists.is_some() != below {
                    return Err(format!("{m}x{n} type ({ty}): exists={}, dominated={below}", exists.is_some()));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (product, type) pairs"))
}

fn c14() -> Result<String, String> {
    for spec in SMALL_POSETS {
        let g = poset(spec)?.incomparability_graph();
        let m = monomial_expansion(&g).map_err(err)?;
        for colors in 1..=3 {
            expect_eq(&format!("{spec} N={colors}"), m.evaluate_at_ones(colors), oracle::proper_colorings(&g, colors))?;
        }
    }
    Ok(format!("{} posets", SMALL_POSETS.len()))
}

fn e1() -> Result<String, String> {
    let v = is_nice(&poset("b3:5")?, &NiceOptions::default()).map_err(err)?;
    if v.nice {
        Ok(format!("{} nodes", v.stats.nodes))
    } else {
        let w = v.witness.expect("not nice implies a witness");
        Err(format!("witness ({}) / ({})", w.achieved, w.missing))
    }
}
