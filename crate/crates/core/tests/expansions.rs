mod common;

use chromlat_core::partition::partitions_of;
use chromlat_core::rimhook::inverse_kostka_matrix;
use chromlat_core::*;
use common::{arb_poset, build, count_colorings, monomial_by_colorings};
use proptest::prelude::*;

fn check_three_paths(p: &Poset) {
    let n = p.len();
    let g = p.incomparability_graph();
    let mono = monomial_expansion(&g).unwrap();
    let parts = partitions_of(n);
    for mu in &parts {
        assert_eq!(mono.coefficient(mu), BigInt::from(monomial_by_colorings(&g, mu.parts())), "{mu}");
    }
    let inv = inverse_kostka_matrix(n);
    let expansion = schur_expansion(p).unwrap();
    for (l, lambda) in parts.iter().enumerate() {
        let via_matrix: BigInt = parts.iter().enumerate().map(|(m, mu)| &inv[l][m] * mono.coefficient(mu)).sum();
        assert_eq!(expansion.coefficient(lambda), via_matrix, "{lambda}");
    }
    for colors in 1..=3 {
        assert_eq!(mono.evaluate_at_ones(colors), BigInt::from(count_colorings(&g, colors)));
    }
}

#[test]
fn three_path_oracle_on_named_posets() {
    for spec in ["chain:1", "chain:3", "chain:6", "prod:2x2", "prod:3x2", "prod:2x2x2", "b3:1", "sum:1+prod:2x2+1"] {
        check_three_paths(&build(spec));
    }
    check_three_paths(&Poset::antichain(5));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn three_path_oracle_on_random_posets(p in arb_poset(8)) {
        check_three_paths(&p);
    }

    #[test]
    fn schur_positive_implies_nice(p in arb_poset(8)) {
        let e = schur_expansion(&p).unwrap();
        if e.is_schur_positive() {
            prop_assert!(is_nice(&p, &NiceOptions::default()).unwrap().nice);
        }
    }
}

#[test]
fn boolean_cube_is_schur_positive() {
    assert!(schur_expansion(&build("b3:1")).unwrap().is_schur_positive());
    assert!(schur_expansion(&build("bool:3")).unwrap().is_schur_positive());
}
