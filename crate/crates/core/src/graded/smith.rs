//! Invariant factors of a finite abelian group given by its Cayley table.

use crate::finite::{CayleyLoop, ElementSet};

/// Smith normal form of an integer matrix with `cols` columns. Returns the
/// diagonal `d₁ | d₂ | …` (non-negative) and `Q⁻¹`, where `Q` collects the
/// column operations: for relations `R` on generators `g`, the rows of `Q⁻¹`
/// express the new basis `f_t = Σ_j Q⁻¹[t][j] g_j`, subject to `d_t f_t = 0`.
pub(crate) fn smith_diagonal(mut a: Vec<Vec<i64>>, cols: usize) -> (Vec<i64>, Vec<Vec<i64>>) {
    let rows = a.len();
    let mut qinv: Vec<Vec<i64>> = (0..cols)
        .map(|i| (0..cols).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut diag = Vec::new();

    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else {
                return (diag, qinv);
            };
            a.swap(t, pi);
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                qinv.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let q = a[i][t] / a[t][t];
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                    clean &= a[i][t] == 0;
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let q = a[t][j] / a[t][t];
                    for row in a.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    for k in 0..cols {
                        qinv[t][k] += q * qinv[j][k];
                    }
                    clean &= a[t][j] == 0;
                }
            }
            if !clean {
                continue;
            }
            let p = a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    (diag, qinv)
}

/// `c·x` in an abelian group written additively through `q`'s product.
pub(crate) fn multiple(q: &CayleyLoop, x: usize, c: i64) -> usize {
    let e = q.identity_index();
    let n = q.order() as i64;
    let c = c.rem_euclid(n);
    (0..c).fold(e, |acc, _| q.product(acc, x))
}

/// Invariant factors `d₁ | d₂ | …` (all > 1) of an abelian group, with one
/// generator of order `d_t` for each factor.
pub fn abelian_invariants(q: &CayleyLoop) -> (Vec<u64>, Vec<usize>) {
    let n = q.order();
    let e = q.identity_index();

    let mut gens = Vec::new();
    let mut span = ElementSet::from_elements(n, [e]);
    for x in q.elements() {
        if !span.contains(x) {
            gens.push(x);
            span.insert(x);
            span = q.subloop_closure(&span);
        }
    }
    let k = gens.len();
    if k == 0 {
        return (Vec::new(), Vec::new());
    }

    let mut coords: Vec<Option<Vec<i64>>> = vec![None; n];
    coords[e] = Some(vec![0; k]);
    let mut queue = std::collections::VecDeque::from([e]);
    while let Some(a) = queue.pop_front() {
        for (j, &g) in gens.iter().enumerate() {
            let b = q.product(a, g);
            if coords[b].is_none() {
                let mut v = coords[a].clone().unwrap();
                v[j] += 1;
                coords[b] = Some(v);
                queue.push_back(b);
            }
        }
    }
    let coords: Vec<Vec<i64>> = coords.into_iter().map(Option::unwrap).collect();
    let mut relations = Vec::with_capacity(n * k);
    for a in 0..n {
        for (j, &g) in gens.iter().enumerate() {
            let b = q.product(a, g);
            let row: Vec<i64> = (0..k)
                .map(|c| coords[a][c] + i64::from(c == j) - coords[b][c])
                .collect();
            if row.iter().any(|&v| v != 0) {
                relations.push(row);
            }
        }
    }
    let (diag, qinv) = smith_diagonal(relations, k);
    let mut factors = Vec::new();
    let mut generators = Vec::new();
    for (t, &d) in diag.iter().enumerate() {
        if d > 1 {
            factors.push(d as u64);
            let f = qinv[t]
                .iter()
                .zip(&gens)
                .fold(e, |acc, (&c, &g)| q.product(acc, multiple(q, g, c)));
            generators.push(f);
        }
    }
    (factors, generators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn element_order(q: &CayleyLoop, x: usize) -> u64 {
        let e = q.identity_index();
        let mut acc = x;
        let mut k = 1;
        while acc != e {
            acc = q.product(acc, x);
            k += 1;
        }
        k
    }

    fn product_group(a: usize, b: usize) -> CayleyLoop {
        let names = (0..a * b).map(|i| format!("g{i}")).collect();
        CayleyLoop::from_fn("prod", names, |x, y| {
            ((x / b + y / b) % a) * b + (x % b + y % b) % b
        })
        .unwrap()
    }

    #[test]
    fn cyclic_groups() {
        for n in [1, 2, 4, 12, 16] {
            let (f, _) = abelian_invariants(&catalog(&format!("Z_{n}")).unwrap());
            if n == 1 {
                assert!(f.is_empty());
            } else {
                assert_eq!(f, [n as u64]);
            }
        }
    }

    #[test]
    fn products_are_normalised() {
        assert_eq!(abelian_invariants(&product_group(2, 2)).0, [2, 2]);
        // Z_2 × Z_3 ≅ Z_6, Z_4 × Z_6 ≅ Z_2 × Z_12
        assert_eq!(abelian_invariants(&product_group(2, 3)).0, [6]);
        assert_eq!(abelian_invariants(&product_group(4, 6)).0, [2, 12]);
        assert_eq!(abelian_invariants(&product_group(6, 4)).0, [2, 12]);
    }

    #[test]
    fn generators_have_the_factor_orders_and_generate() {
        for (a, b) in [(4, 6), (2, 8), (3, 9), (6, 6)] {
            let q = product_group(a, b);
            let (factors, gens) = abelian_invariants(&q);
            assert_eq!(factors.iter().product::<u64>(), (a * b) as u64);
            for (&d, &g) in factors.iter().zip(&gens) {
                assert_eq!(element_order(&q, g), d);
            }
            let span = q.subloop_closure(&ElementSet::from_elements(q.order(), gens));
            assert_eq!(span.len(), q.order());
        }
    }

    #[test]
    fn diagonal_divides() {
        let (d, _) = smith_diagonal(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        assert_eq!(d, [2, 6, 12]);
    }
}
