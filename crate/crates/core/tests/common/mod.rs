#![allow(dead_code)]

use chromlat_core::{Graph, Poset, PosetSpec};
use proptest::prelude::*;

pub fn build(s: &str) -> Poset {
    s.parse::<PosetSpec>().unwrap().build().unwrap()
}

/// Random posets on `2..=max` elements: relations `i < j` drawn only for
/// `i < j` by index, then closed transitively.
pub fn arb_poset(max: usize) -> impl Strategy<Value = Poset> {
    (2..=max).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.35), n * (n - 1) / 2).prop_map(move |bits| {
            let mut rel = Vec::new();
            let mut b = bits.iter();
            for i in 0..n {
                for j in i + 1..n {
                    if *b.next().unwrap() {
                        rel.push((i, j));
                    }
                }
            }
            let labels = (0..n).map(|i| format!("v{i}")).collect();
            Poset::from_relations(labels, &rel).unwrap()
        })
    })
}

/// Proper colorings of `g` with `colors` colors, by plain backtracking.
pub fn count_colorings(g: &Graph, colors: usize) -> u64 {
    fn go(v: usize, g: &Graph, colors: usize, assign: &mut Vec<usize>) -> u64 {
        if v == g.vertex_count() {
            return 1;
        }
        let mut total = 0;
        for c in 0..colors {
            if (0..v).all(|u| !g.has_edge(u, v) || assign[u] != c) {
                assign.push(c);
                total += go(v + 1, g, colors, assign);
                assign.pop();
            }
        }
        total
    }
    go(0, g, colors, &mut Vec::new())
}

/// Coefficient of `x_1^{λ_1} x_2^{λ_2} …` in `X_G`: proper colorings that use
/// color `i` exactly `λ_i` times.
pub fn monomial_by_colorings(g: &Graph, lambda: &[usize]) -> u64 {
    fn go(v: usize, g: &Graph, left: &mut Vec<usize>, assign: &mut Vec<usize>) -> u64 {
        if v == g.vertex_count() {
            return 1;
        }
        let mut total = 0;
        for c in 0..left.len() {
            if left[c] > 0 && (0..v).all(|u| !g.has_edge(u, v) || assign[u] != c) {
                left[c] -= 1;
                assign.push(c);
                total += go(v + 1, g, left, assign);
                assign.pop();
                left[c] += 1;
            }
        }
        total
    }
    go(0, g, &mut lambda.to_vec(), &mut Vec::new())
}
