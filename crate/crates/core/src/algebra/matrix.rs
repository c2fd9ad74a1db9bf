//! Dense linear algebra on `Vec<Vec<_>>` matrices over any [`Field`].

use super::field::Field;
use crate::error::{Error, Result};

pub type Matrix<E> = Vec<Vec<E>>;

pub fn zeros<F: Field>(field: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    vec![vec![field.zero(); cols]; rows]
}

pub fn identity<F: Field>(field: &F, n: usize) -> Matrix<F::Elem> {
    let mut m = zeros(field, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = field.one();
    }
    m
}

pub fn transpose<E: Clone>(m: &[Vec<E>]) -> Matrix<E> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn mul<F: Field>(field: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> Matrix<F::Elem> {
    let bt = transpose(b);
    a.iter()
        .map(|r| bt.iter().map(|c| field.dot(r, c)).collect())
        .collect()
}

pub fn mul_vec<F: Field>(field: &F, a: &[Vec<F::Elem>], v: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|r| field.dot(r, v)).collect()
}

/// Best pivot in column `col` among rows `from..`, by `pivot_rank` then row.
fn choose_pivot<F: Field>(field: &F, m: &[Vec<F::Elem>], col: usize, from: usize) -> Option<usize> {
    let mut best: Option<(i64, usize)> = None;
    for (r, row) in m.iter().enumerate().skip(from) {
        if let Some(rank) = field.pivot_rank(&row[col]) {
            if best.map_or(true, |(b, _)| rank < b) {
                best = Some((rank, r));
            }
        }
    }
    best.map(|(_, r)| r)
}

/// Reduced row echelon form. Returns the reduced matrix (zero rows last)
/// and the pivot columns.
pub fn rref<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> Result<(Matrix<F::Elem>, Vec<usize>)> {
    let mut a: Matrix<F::Elem> = m.to_vec();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = choose_pivot(field, &a, c, r) else {
            continue;
        };
        a.swap(r, p);
        let inv = field.inv(&a[r][c])?;
        for x in a[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(x, &field.mul(&f, y));
            }
            row[c] = field.zero();
        }
        pivots.push(c);
        r += 1;
    }
    Ok((a, pivots))
}

pub fn rank<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> Result<usize> {
    Ok(rref(field, m)?.1.len())
}

pub fn det<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> Result<F::Elem> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("determinant of a non-square matrix".into()));
    }
    let mut a: Matrix<F::Elem> = m.to_vec();
    let mut acc = field.one();
    for c in 0..n {
        let Some(p) = choose_pivot(field, &a, c, c) else {
            return Ok(field.zero());
        };
        if p != c {
            a.swap(p, c);
            acc = field.neg(&acc);
        }
        acc = field.mul(&acc, &a[c][c]);
        let inv = field.inv(&a[c][c])?;
        for i in c + 1..n {
            if field.is_zero(&a[i][c]) {
                continue;
            }
            let f = field.mul(&a[i][c], &inv);
            for j in c..n {
                let t = field.mul(&f, &a[c][j]);
                a[i][j] = field.sub(&a[i][j], &t);
            }
        }
    }
    Ok(acc)
}

pub fn inverse<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> Result<Matrix<F::Elem>> {
    let n = m.len();
    let aug: Matrix<F::Elem> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            row
        })
        .collect();
    let (red, piv) = rref(field, &aug)?;
    if piv.len() < n || piv[n - 1] != n - 1 {
        return Err(Error::SingularMatrix);
    }
    Ok(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of `{x : M x = 0}`, one vector per free column, with a 1 in that
/// column and zeros in the other free columns.
pub fn kernel<F: Field>(field: &F, m: &[Vec<F::Elem>], cols: usize) -> Result<Matrix<F::Elem>> {
    if m.is_empty() {
        return Ok(identity(field, cols));
    }
    let (red, piv) = rref(field, m)?;
    let mut basis = Vec::new();
    for f in (0..cols).filter(|c| !piv.contains(c)) {
        let mut v = vec![field.zero(); cols];
        v[f] = field.one();
        for (r, &p) in piv.iter().enumerate() {
            v[p] = field.neg(&red[r][f]);
        }
        basis.push(v);
    }
    Ok(basis)
}

/// One solution of `M x = b`, or `None` when inconsistent.
pub fn solve<F: Field>(
    field: &F,
    m: &[Vec<F::Elem>],
    b: &[F::Elem],
) -> Result<Option<Vec<F::Elem>>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let aug: Matrix<F::Elem> = m
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut row = r.clone();
            row.push(x.clone());
            row
        })
        .collect();
    let (red, piv) = rref(field, &aug)?;
    if piv.last() == Some(&cols) {
        return Ok(None);
    }
    let mut x = vec![field.zero(); cols];
    for (r, &p) in piv.iter().enumerate() {
        x[p] = red[r][cols].clone();
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::finite::{Fe, FiniteField};
    use crate::algebra::rational::Rationals;

    fn q(v: &[&[i64]]) -> Matrix<num_rational::BigRational> {
        v.iter()
            .map(|r| r.iter().map(|&x| Rationals.from_int(x)).collect())
            .collect()
    }

    #[test]
    fn det_and_inverse_over_q() {
        let m = q(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(det(&Rationals, &m).unwrap(), Rationals.from_int(18));
        let inv = inverse(&Rationals, &m).unwrap();
        assert_eq!(mul(&Rationals, &m, &inv), identity(&Rationals, 3));
        let s = q(&[&[1, 2], &[2, 4]]);
        assert_eq!(inverse(&Rationals, &s), Err(Error::SingularMatrix));
    }

    #[test]
    fn kernel_is_annihilated() {
        let f = FiniteField::prime(5).unwrap();
        let m = vec![
            vec![Fe(1), Fe(2), Fe(3), Fe(4)],
            vec![Fe(2), Fe(4), Fe(1), Fe(3)],
        ];
        let k = kernel(&f, &m, 4).unwrap();
        assert_eq!(k.len(), 4 - rank(&f, &m).unwrap());
        for v in &k {
            assert!(mul_vec(&f, &m, v).iter().all(|x| *x == Fe(0)));
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = q(&[&[1, 1], &[1, -1]]);
        let x = solve(&Rationals, &m, &[Rationals.from_int(3), Rationals.from_int(1)])
            .unwrap()
            .unwrap();
        assert_eq!(x, vec![Rationals.from_int(2), Rationals.from_int(1)]);
        let m = q(&[&[1, 1], &[2, 2]]);
        let b = [Rationals.from_int(1), Rationals.from_int(3)];
        assert_eq!(solve(&Rationals, &m, &b).unwrap(), None);
    }
}
