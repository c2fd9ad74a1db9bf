use crate::algebra::field::Field;
use crate::algebra::finite::{Fe, FiniteField};
use crate::algebra::matrix::Matrix;
use crate::algebra::projective::for_each_tuple;
use crate::pencil::{Pencil, NVARS};

use super::{line_contained, Line};

/// Number of `k`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Visits every `k x n` reduced row echelon matrix with free entries from
/// `values`: pivot sets in lexicographic order, then free entries in
/// lexicographic order. Stops when `f` returns false.
pub fn for_each_echelon<F: Field>(
    field: &F,
    values: &[F::Elem],
    k: usize,
    n: usize,
    mut f: impl FnMut(&Matrix<F::Elem>, &[usize]) -> bool,
) {
    for piv in combinations(n, k) {
        if !for_each_in_stratum(field, values, &piv, n, &mut f) {
            return;
        }
    }
}

/// Pivot sets of `k x n` echelon matrices, in lexicographic order.
pub(crate) fn pivot_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
    combinations(n, k)
}

/// The echelon matrices with pivot columns `piv`. Returns false if `f`
/// stopped the sweep.
pub(crate) fn for_each_in_stratum<F: Field>(
    field: &F,
    values: &[F::Elem],
    piv: &[usize],
    n: usize,
    f: &mut impl FnMut(&Matrix<F::Elem>, &[usize]) -> bool,
) -> bool {
    let mut free: Vec<(usize, usize)> = Vec::new();
    for (r, &p) in piv.iter().enumerate() {
        for c in p + 1..n {
            if !piv.contains(&c) {
                free.push((r, c));
            }
        }
    }
    let mut m = vec![vec![field.zero(); n]; piv.len()];
    for (r, &p) in piv.iter().enumerate() {
        m[r][p] = field.one();
    }
    let mut go = true;
    for_each_tuple(values, free.len(), |vals| {
        for (&(r, c), v) in free.iter().zip(vals) {
            m[r][c] = v.clone();
        }
        go = f(&m, piv);
        go
    });
    go
}

/// Reference enumeration: tests every point of `Gr(2,6)(F_q)`. Returns the
/// number of candidates visited and the contained lines in sweep order.
pub fn naive_lines(p: &Pencil<FiniteField>) -> (u128, Vec<Line<FiniteField>>) {
    let f = p.field();
    let vals: Vec<Fe> = f.elements().collect();
    let mut visited = 0u128;
    let mut out = Vec::new();
    for_each_echelon(f, &vals, 2, NVARS, |m, piv| {
        visited += 1;
        let l = Line::from_echelon([m[0].clone(), m[1].clone()], (piv[0], piv[1]));
        if line_contained(p, &l) {
            out.push(l);
        }
        true
    });
    (visited, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_size_matches_gaussian_binomial() {
        assert_eq!(gaussian_binomial(6, 2, 3), 11011);
        assert_eq!(gaussian_binomial(4, 2, 7), 2850);
        let f = FiniteField::prime(3).unwrap();
        let vals: Vec<Fe> = f.elements().collect();
        let mut n = 0u128;
        for_each_echelon(&f, &vals, 2, 6, |_, _| {
            n += 1;
            true
        });
        assert_eq!(n, 11011);
    }
}
