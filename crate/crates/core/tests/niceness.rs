mod common;

use chromlat_core::partition::partitions_of;
use chromlat_core::*;
use common::build;

#[test]
fn lonc_elzobi_criterion() {
    for n in 1..=4 {
        for m in n..=20 / n {
            let p = PosetSpec::Product(vec![m, n]).build().unwrap();
            let stair = staircase_type(m, n).unwrap();
            for ty in partitions_of(m * n) {
                let found = chain_partition_exists(&p, &ty).unwrap();
                assert_eq!(found.is_some(), dominance_leq(&ty, &stair).unwrap(), "{m}x{n} {ty}");
                if let Some(c) = found {
                    c.validate(&p).unwrap();
                }
            }
        }
    }
}

#[test]
fn ordinal_sums_are_nice_constructively() {
    for p in 0..=2 {
        for q in 0..=2 {
            for n in 1..=3 {
                for m in n..=12 / n {
                    let sum = PosetSpec::OrdinalSum(p, Box::new(PosetSpec::Product(vec![m, n])), q).build().unwrap();
                    let mut tilde = staircase_type(m, n).unwrap().into_parts();
                    tilde[0] += p + q;
                    let tilde = Partition::new(tilde).unwrap();
                    for mu in partitions_of(m * n + p + q) {
                        if dominance_leq(&mu, &tilde).unwrap() {
                            let r = ordinal_sum_chain_partition(p, q, m, n, &mu).unwrap();
                            r.certificate.validate(&sum).unwrap();
                            assert_eq!(r.certificate.ty, mu);
                        } else {
                            assert!(chain_partition_exists(&sum, &mu).unwrap().is_none(), "{p}+{m}x{n}+{q} {mu}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn small_b3_lattices_are_nice() {
    for n in 1..=4 {
        let v = is_nice(&build(&format!("b3:{n}")), &NiceOptions::default()).unwrap();
        assert!(v.nice, "b3:{n}");
    }
}

#[test]
fn b3_fails_from_six_on() {
    for n in 6..=7 {
        let v = is_nice(&build(&format!("b3:{n}")), &NiceOptions::default()).unwrap();
        assert!(!v.nice);
        let w = v.witness.unwrap();
        assert_eq!(w.achieved.parts(), [n + 3, n + 1, 2]);
        assert_eq!(w.missing.parts(), [n, n, 6]);
        w.certificate.validate(&build(&format!("b3:{n}"))).unwrap();
    }
}

#[test]
fn products_up_to_twelve_are_nice() {
    for spec in ["prod:2x2", "prod:3x2", "prod:4x3", "prod:6x2", "prod:3x2x2", "bool:3", "prod:2x2x2"] {
        assert!(is_nice(&build(spec), &NiceOptions::default()).unwrap().nice, "{spec}");
    }
}
