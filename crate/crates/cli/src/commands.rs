use std::collections::BTreeMap;
use std::fmt::Write as _;

use chromlat_core::chain_count::count_scp_with_stats;
use chromlat_core::nice::chain_partition_search;
use chromlat_core::schur::{resolve_method, schur_expansion_with_limit};
use chromlat_core::{
    enumerate_srht, is_nice, proof_case_closed_forms, rho_shape, schur_coefficient, scp_closed_form,
    theorem41_coefficient, BigInt, ChainPartitionCertificate, Error, NiceOptions, Partition, Poset, PosetSpec,
    ProofCase, SchurMethod, SearchStats, StaircaseContext,
};
use num_traits::Signed;
use serde_json::{json, Value};

use crate::args::*;
use crate::sweep::{self, SweepResult};
use crate::verify;
use crate::{Failure, Report, EXIT_DOMAIN, EXIT_NEGATIVE, EXIT_NOT_NICE};

type Outcome = Result<Report, Failure>;

pub(crate) fn dispatch(cmd: &Command) -> Outcome {
    match cmd {
        Command::Poset(a) => poset(a),
        Command::Tabloid(a) => tabloid(a),
        Command::Scp(a) => scp(a),
        Command::Schur(a) => schur(a),
        Command::SchurCoeff(a) => schur_coeff(a),
        Command::Nice(a) => nice(a),
        Command::ChainPartition(a) => chain_partition(a),
        Command::Theorem41(a) => theorem41(a),
        Command::Sweep(a) => sweep_cmd(a),
        Command::Verify(a) => verify_cmd(a),
    }
}

fn load(spec: &str) -> Result<(PosetSpec, Poset), Failure> {
    let spec: PosetSpec = spec.parse()?;
    let p = spec.build()?;
    Ok((spec, p))
}

fn partition(s: &str) -> Result<Partition, Failure> {
    Ok(s.parse()?)
}

fn ok(method: Option<&str>, result: Value, text: String) -> Outcome {
    Ok(Report {
        method: method.map(str::to_string),
        result,
        text,
        code: 0,
    })
}

fn stats_json(s: &SearchStats) -> Value {
    json!({ "nodes": s.nodes, "prunes": s.prunes, "memo_hits": s.memo_hits })
}

fn certificate_json(c: &ChainPartitionCertificate, p: &Poset) -> Value {
    json!({ "type": c.ty.to_string(), "blocks": c.labelled(p) })
}

fn certificate_text(c: &ChainPartitionCertificate, p: &Poset) -> String {
    c.labelled(p)
        .iter()
        .map(|b| format!("  {}\n", b.join(" < ")))
        .collect()
}

fn method_name(m: SchurMethod) -> &'static str {
    match m {
        SchurMethod::TabloidBrute => "tabloid_brute",
        SchurMethod::TabloidClosed => "tabloid_closed",
        SchurMethod::Auto => "auto",
    }
}

fn poset(a: &PosetArgs) -> Outcome {
    let (spec, p) = load(&a.poset)?;
    // the lattice check is cubic in the element count
    let distributive = (p.len() <= 256).then(|| p.verify_distributive_lattice());
    let covers: Vec<[&str; 2]> = p.cover_pairs().iter().map(|&(x, y)| [p.label(x), p.label(y)]).collect();
    let mut text = format!(
        "poset {spec}\nelements {}\ncover relations {}\nlongest chain {}\nwidth {}\n",
        p.len(),
        covers.len(),
        p.max_chain_size(),
        p.width()
    );
    if let Some(d) = distributive {
        writeln!(text, "distributive lattice {d}").unwrap();
    }
    ok(
        None,
        json!({
            "poset": spec.to_string(),
            "elements": p.len(),
            "labels": p.labels(),
            "covers": covers,
            "longest_chain": p.max_chain_size(),
            "width": p.width(),
            "distributive_lattice": distributive,
        }),
        text,
    )
}

fn tabloid(a: &TabloidArgs) -> Outcome {
    let shape = partition(&a.shape)?;
    let content = a.content.as_deref().map(partition).transpose()?;
    if content.is_none() && shape.size() > a.max_size {
        return Err(Error::TooLarge {
            size: shape.size(),
            limit: a.max_size,
        }
        .into());
    }
    let fam = enumerate_srht(&shape, content.as_ref())?;
    let mut text = format!("shape ({shape}): {} tabloids, signed sum {}\n", fam.len(), fam.signed_count());
    let mut items = Vec::new();
    for t in &fam.tabloids {
        write!(text, "\ncontent ({}) height {} sign {:+}\n{t}", t.content(), t.height(), t.sign()).unwrap();
        let hooks: Vec<Vec<[usize; 2]>> = t.hooks().iter().map(|h| h.cells().into_iter().map(|(r, c)| [r, c]).collect()).collect();
        items.push(json!({
            "shape": shape.to_string(),
            "hooks": hooks,
            "height": t.height(),
            "sign": t.sign(),
            "content": t.content().to_string(),
        }));
    }
    ok(
        None,
        json!({
            "shape": shape.to_string(),
            "content": content.map(|c| c.to_string()),
            "count": fam.len(),
            "signed_count": fam.signed_count().to_string(),
            "tabloids": items,
        }),
        text,
    )
}

fn scp(a: &ScpArgs) -> Outcome {
    let (spec, p) = load(&a.poset)?;
    let ty = partition(&a.ty)?;
    if ty.size() != p.len() {
        return Err(Error::SizeMismatch {
            expected: p.len(),
            found: ty.size(),
        }
        .into());
    }
    let closed_ctx = match spec.as_two_chain_product() {
        Some((m, n)) => {
            let ctx = StaircaseContext::new(m, n)?;
            ty.starts_with(&ctx.prefix()).then_some(ctx)
        }
        None => None,
    };
    let (count, method, stats) = match (a.method, closed_ctx) {
        (MethodArg::Closed, None) => {
            return Err(Error::FastPathInapplicable(format!(
                "closed form needs a two-chain product and a type starting with its staircase prefix; got {spec}, ({ty})"
            ))
            .into())
        }
        (MethodArg::Closed | MethodArg::Auto, Some(ctx)) => (scp_closed_form(&ctx, &ty)?, "closed", None),
        _ => {
            let (c, s) = count_scp_with_stats(&p, &ty, a.node_budget)?;
            (c, "brute", Some(s))
        }
    };
    ok(
        Some(method),
        json!({
            "poset": spec.to_string(),
            "type": ty.to_string(),
            "count": count.to_string(),
            "search": stats.as_ref().map(stats_json),
        }),
        format!("{count}\nmethod {method}\n"),
    )
}

fn coeffs_json(coeffs: &BTreeMap<Partition, BigInt>) -> Value {
    // dominance-friendly order: lexicographically descending shapes
    let map: serde_json::Map<String, Value> = coeffs
        .iter()
        .rev()
        .map(|(l, c)| (l.to_string(), Value::String(c.to_string())))
        .collect();
    Value::Object(map)
}

fn schur(a: &SchurArgs) -> Outcome {
    let (spec, p) = load(&a.poset)?;
    let e = schur_expansion_with_limit(&p, a.limit)?;
    let mut text = format!("X_inc({spec}), degree {}\n", e.degree);
    for (l, c) in e.coeffs.iter().rev() {
        writeln!(text, "{c:>12}  s_({l})").unwrap();
    }
    Ok(Report {
        method: Some(method_name(SchurMethod::TabloidBrute).into()),
        result: json!({
            "poset": spec.to_string(),
            "degree": e.degree,
            "coeffs": coeffs_json(&e.coeffs),
            "schur_positive": e.is_schur_positive(),
        }),
        text,
        code: if e.is_schur_positive() { 0 } else { EXIT_NEGATIVE },
    })
}

fn schur_coeff(a: &SchurCoeffArgs) -> Outcome {
    let (spec, p) = load(&a.poset)?;
    let shape = partition(&a.shape)?;
    let method = match a.method {
        MethodArg::Auto => resolve_method(&p, &shape)?,
        MethodArg::Brute => SchurMethod::TabloidBrute,
        MethodArg::Closed => SchurMethod::TabloidClosed,
    };
    let c = schur_coefficient(&p, &shape, method)?;
    let mut coeffs = BTreeMap::new();
    coeffs.insert(shape.clone(), c.clone());
    Ok(Report {
        method: Some(method_name(method).into()),
        result: json!({
            "poset": spec.to_string(),
            "degree": p.len(),
            "shape": shape.to_string(),
            "coefficient": c.to_string(),
            "coeffs": coeffs_json(&coeffs),
        }),
        text: format!("{c}\n"),
        code: if c.is_negative() { EXIT_NEGATIVE } else { 0 },
    })
}

fn nice(a: &NiceArgs) -> Outcome {
    let (spec, p) = load(&a.poset)?;
    let opts = NiceOptions {
        max_elements: a.max_elements,
        node_budget: a.node_budget,
    };
    let v = is_nice(&p, &opts)?;
    let mut text = format!("{spec} is {}\n", if v.nice { "nice" } else { "not nice" });
    let mut result = json!({
        "poset": spec.to_string(),
        "nice": v.nice,
        "search": stats_json(&v.stats),
    });
    if a.witness {
        result["witness"] = match &v.witness {
            Some(w) => {
                write!(
                    text,
                    "type ({}) is achieved by\n{}type ({}) is dominated by it and not achievable ({} nodes searched)\n",
                    w.achieved,
                    certificate_text(&w.certificate, &p),
                    w.missing,
                    w.refutation.nodes
                )
                .unwrap();
                json!({
                    "achieved": w.achieved.to_string(),
                    "certificate": certificate_json(&w.certificate, &p),
                    "missing": w.missing.to_string(),
                    "refutation": stats_json(&w.refutation),
                })
            }
            None => Value::Null,
        };
    }
    if a.all_types {
        let types: Vec<String> = v.achievable.iter().map(Partition::to_string).collect();
        writeln!(text, "achievable types:").unwrap();
        for t in &types {
            writeln!(text, "  ({t})").unwrap();
        }
        result["achievable"] = json!(types);
    }
    Ok(Report {
        method: Some("exhaustive_search".into()),
        result,
        text,
        code: if v.nice { 0 } else { EXIT_NOT_NICE },
    })
}

fn chain_partition(a: &ChainPartitionArgs) -> Outcome {
    let (spec, p) = load(&a.poset)?;
    let ty = partition(&a.ty)?;
    let (cert, stats) = chain_partition_search(&p, &ty, a.node_budget)?;
    let text = match &cert {
        Some(c) => format!("chain partition of type ({ty}):\n{}", certificate_text(c, &p)),
        None => format!("no chain partition of type ({ty})\n"),
    };
    ok(
        Some("exhaustive_search"),
        json!({
            "poset": spec.to_string(),
            "type": ty.to_string(),
            "exists": cert.is_some(),
            "certificate": cert.as_ref().map(|c| certificate_json(c, &p)),
            "search": stats_json(&stats),
        }),
        text,
    )
}

fn theorem41(a: &Theorem41Args) -> Outcome {
    let (n, k) = (a.n, a.k);
    let shape = rho_shape(n, k)?;
    let value = theorem41_coefficient(n, k)?;
    let cases = proof_case_closed_forms(n, k)?;
    let compositional: BigInt = ProofCase::ALL
        .iter()
        .map(|c| if c.height() % 2 == 0 { cases[c].clone() } else { -cases[c].clone() })
        .sum();
    let spec = PosetSpec::Product(vec![n + k, n]);
    let closed = if a.check {
        Some(schur_coefficient(&spec.build()?, &shape, SchurMethod::TabloidClosed)?)
    } else {
        None
    };
    if compositional != value || closed.as_ref().is_some_and(|c| *c != value) {
        return Err(Failure {
            code: EXIT_DOMAIN,
            kind: "inconsistent",
            message: format!(
                "formula {value}, six-tabloid sum {compositional}, closed path {}",
                closed.as_ref().map_or_else(|| "-".to_string(), BigInt::to_string)
            ),
        });
    }
    let terms: serde_json::Map<String, Value> = cases
        .iter()
        .map(|(c, v)| (format!("{c:?}"), json!({ "height": c.height(), "content": c.content(n, k).map(|p| p.to_string()).ok(), "scp": v.to_string() })))
        .collect();
    let mut text = format!("[s_({shape})] X_inc({spec}) = {value}\n");
    if let Some(c) = &closed {
        writeln!(text, "closed path agrees: {c}").unwrap();
    }
    ok(
        Some("closed_form"),
        json!({
            "n": n,
            "k": k,
            "poset": spec.to_string(),
            "shape": shape.to_string(),
            "coefficient": value.to_string(),
            "compositional": compositional.to_string(),
            "closed_path": closed.map(|c| c.to_string()),
            "terms": terms,
        }),
        text,
    )
}

fn sweep_cmd(a: &SweepArgs) -> Outcome {
    match sweep::run(a)? {
        SweepResult::Signs(rows) => {
            let mut text = String::new();
            for r in &rows {
                writeln!(text, "m={:<5} ({})  {}", r.m, r.shape, r.coefficient).unwrap();
            }
            let all_negative = rows.iter().all(|r| r.negative);
            ok(
                Some("tabloid_closed"),
                json!({ "family": a.family, "d": a.d, "rows": rows, "all_negative": all_negative }),
                text,
            )
        }
        SweepResult::Nice(rows) => {
            let mut text = String::new();
            for r in &rows {
                write!(text, "{:<12} {:>3} elements  {}", r.poset, r.elements, if r.nice { "nice" } else { "not nice" }).unwrap();
                if let Some((l, m)) = &r.witness {
                    write!(text, "  witness ({l}) / ({m})").unwrap();
                }
                text.push('\n');
            }
            let all_nice = rows.iter().all(|r| r.nice);
            Ok(Report {
                method: Some("exhaustive_search".into()),
                result: json!({ "family": a.family, "rows": rows, "all_nice": all_nice }),
                text,
                code: if all_nice { 0 } else { EXIT_NOT_NICE },
            })
        }
    }
}

fn verify_cmd(a: &VerifyArgs) -> Outcome {
    let mut results = verify::run_all(&verify::criteria());
    let gating_passed = results.iter().all(|r| r.passed);
    let gating = results.len();
    if a.extended {
        results.extend(verify::run_all(&verify::extended()));
    }
    let passed = results.iter().filter(|r| r.passed).count();
    let mut text = verify::render_table(&results);
    writeln!(text, "{passed}/{} passed", results.len()).unwrap();
    Ok(Report {
        method: None,
        result: json!({ "criteria": results, "gating": gating, "all_gating_passed": gating_passed }),
        text,
        code: if gating_passed { 0 } else { EXIT_DOMAIN },
    })
}
