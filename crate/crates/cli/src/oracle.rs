//! Slow reference computations used by `verify`. Nothing here calls the
//! tabloid, Kostka or chain-search code of the core crate.

use std::collections::BTreeMap;

use chromlat_core::{partitions_of, BigInt, Graph, Partition};
use num_traits::{One, Zero};

/// Proper colorings of `g` with `colors` colors.
pub fn proper_colorings(g: &Graph, colors: usize) -> BigInt {
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
    BigInt::from(go(0, g, colors, &mut Vec::new()))
}

/// `[x_1^{λ_1} x_2^{λ_2} …] X_G` for every `λ ⊢ |V(G)|`, by enumerating
/// colorings with prescribed color multiplicities. Zero entries omitted.
pub fn coloring_monomials(g: &Graph) -> BTreeMap<Partition, BigInt> {
    fn go(v: usize, g: &Graph, left: &mut [usize], assign: &mut Vec<usize>) -> u64 {
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
    partitions_of(g.vertex_count())
        .into_iter()
        .filter_map(|lambda| {
            let c = go(0, g, &mut lambda.parts().to_vec(), &mut Vec::new());
            (c > 0).then(|| (lambda, BigInt::from(c)))
        })
        .collect()
}

/// Semistandard tableaux of shape `lambda` and content `mu`, by filling
/// cells in reading order.
pub fn kostka_by_filling(lambda: &Partition, mu: &Partition) -> BigInt {
    let shape = lambda.parts();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let starts: Vec<usize> = shape
        .iter()
        .scan(0, |acc, &len| {
            let s = *acc;
            *acc += len;
            Some(s)
        })
        .collect();
    fn go(i: usize, cells: &[(usize, usize)], starts: &[usize], left: &mut [usize], fill: &mut [usize]) -> u64 {
        if i == cells.len() {
            return 1;
        }
        let (r, c) = cells[i];
        let lo_row = if c > 0 { fill[i - 1] } else { 0 };
        let lo_col = if r > 0 { fill[starts[r - 1] + c] + 1 } else { 0 };
        let mut total = 0;
        for x in lo_row.max(lo_col)..left.len() {
            if left[x] == 0 {
                continue;
            }
            left[x] -= 1;
            fill[i] = x;
            total += go(i + 1, cells, starts, left, fill);
            left[x] += 1;
        }
        total
    }
    let mut fill = vec![0; cells.len()];
    BigInt::from(go(0, &cells, &starts, &mut mu.parts().to_vec(), &mut fill))
}

/// Kostka matrix over `partitions_of(n)`, `[shape][content]`.
pub fn kostka_matrix(n: usize) -> Vec<Vec<BigInt>> {
    let parts = partitions_of(n);
    parts
        .iter()
        .map(|l| parts.iter().map(|m| kostka_by_filling(l, m)).collect())
        .collect()
}

/// Inverse of a unitriangular integer matrix (upper or lower), by solving
/// column by column.
pub fn invert_unitriangular(a: &[Vec<BigInt>]) -> Option<Vec<Vec<BigInt>>> {
    let n = a.len();
    let upper = (0..n).all(|i| (0..i).all(|j| a[i][j].is_zero()));
    let lower = (0..n).all(|i| (i + 1..n).all(|j| a[i][j].is_zero()));
    if !(upper || lower) || (0..n).any(|i| !a[i][i].is_one()) {
        return None;
    }
    let mut inv = vec![vec![BigInt::zero(); n]; n];
    for col in 0..n {
        let order: Vec<usize> = if upper { (0..n).rev().collect() } else { (0..n).collect() };
        for &i in &order {
            let mut v = if i == col { BigInt::one() } else { BigInt::zero() };
            for j in 0..n {
                if j != i && !a[i][j].is_zero() {
                    v -= &a[i][j] * &inv[j][col];
                }
            }
            inv[i][col] = v;
        }
    }
    Some(inv)
}

/// Schur coefficients of `Σ c_μ m_μ` by inverting the Kostka matrix:
/// `m = K^{-1} s`, so `[s_λ] = Σ_μ c_μ (K^{-1})_{μλ}`.
pub fn schur_from_monomials(n: usize, monomials: &BTreeMap<Partition, BigInt>) -> Option<BTreeMap<Partition, BigInt>> {
    let parts = partitions_of(n);
    let kinv = invert_unitriangular(&kostka_matrix(n))?;
    let mut out = BTreeMap::new();
    for (l, lambda) in parts.iter().enumerate() {
        let c: BigInt = parts
            .iter()
            .enumerate()
            .filter_map(|(m, mu)| monomials.get(mu).map(|v| v * &kinv[m][l]))
            .sum();
        if !c.is_zero() {
            out.insert(lambda.clone(), c);
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn small_kostka_numbers() {
        assert_eq!(kostka_by_filling(&p("2,1"), &p("1,1,1")), BigInt::from(2));
        assert_eq!(kostka_by_filling(&p("3,2"), &p("1,1,1,1,1")), BigInt::from(5));
        assert_eq!(kostka_by_filling(&p("2,2"), &p("3,1")), BigInt::zero());
        assert_eq!(kostka_by_filling(&p("3,1"), &p("2,2")), BigInt::one());
    }

    #[test]
    fn unitriangular_inverse() {
        let a: Vec<Vec<BigInt>> = [[1, 2, 3], [0, 1, 4], [0, 0, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let inv = invert_unitriangular(&a).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: BigInt = (0..3).map(|k| &a[i][k] * &inv[k][j]).sum();
                assert_eq!(s, BigInt::from(i64::from(i == j)));
            }
        }
        let not_tri = vec![vec![BigInt::one(), BigInt::one()], vec![BigInt::one(), BigInt::one()]];
        assert!(invert_unitriangular(&not_tri).is_none());
    }

    #[test]
    fn complete_graph_is_n_factorial_e_n() {
        let g = Graph::complete(3);
        let m = coloring_monomials(&g);
        assert_eq!(m.len(), 1);
        assert_eq!(m[&p("1,1,1")], BigInt::from(6));
        assert_eq!(proper_colorings(&g, 3), BigInt::from(6));
        assert_eq!(proper_colorings(&g, 2), BigInt::zero());
        // 6 e_3 = 6 s_{1,1,1}
        let s = schur_from_monomials(3, &m).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[&p("1,1,1")], BigInt::from(6));
    }
}
