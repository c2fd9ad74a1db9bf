//! Projective points: normalized representatives and zeros of forms on
//! linear subspaces.

use super::field::{Field, QuadRoots, RootField};
use super::form::{HomogeneousForm, Monomial};
use crate::error::{Error, Result};

/// Scales `v` so that its first nonzero coordinate is 1.
pub fn normalize<F: Field>(field: &F, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
    let lead = v
        .iter()
        .find(|x| !field.is_zero(x))
        .ok_or_else(|| Error::InvalidInput("the zero vector is not a projective point".into()))?;
    let inv = field.inv(lead)?;
    Ok(v.iter().map(|x| field.mul(x, &inv)).collect())
}

/// Number of points of `P^{n-1}` over a field with `q` elements, or `None`
/// on overflow.
pub fn projective_size(q: u64, n: u32) -> Option<u128> {
    let mut s: u128 = 0;
    let mut pw: u128 = 1;
    for _ in 0..n {
        s = s.checked_add(pw)?;
        pw = pw.checked_mul(q as u128)?;
    }
    Some(s)
}

/// Calls `f` on every vector of length `len` with entries from `values`,
/// in lexicographic order of indices. Stops early when `f` returns false.
pub fn for_each_tuple<E: Clone>(values: &[E], len: usize, mut f: impl FnMut(&[E]) -> bool) {
    if values.is_empty() && len > 0 {
        return;
    }
    let mut idx = vec![0usize; len];
    let mut cur: Vec<E> = (0..len).map(|_| values[0].clone()).collect();
    loop {
        if !f(&cur) {
            return;
        }
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < values.len() {
                cur[i] = values[idx[i]].clone();
                break;
            }
            idx[i] = 0;
            cur[i] = values[0].clone();
        }
    }
}

/// Normalized representatives of `P^{n-1}` with coordinates from `values`,
/// leading position first, then lexicographic.
pub fn for_each_projective_point<F: Field>(
    field: &F,
    values: &[F::Elem],
    n: usize,
    mut f: impl FnMut(&[F::Elem]) -> bool,
) {
    for lead in 0..n {
        let mut v = vec![field.zero(); n];
        v[lead] = field.one();
        let mut go = true;
        for_each_tuple(values, n - lead - 1, |tail| {
            v[lead + 1..].clone_from_slice(tail);
            go = f(&v);
            go
        });
        if !go {
            return;
        }
    }
}

/// Restriction of a form to the span of `basis` (one row per basis vector),
/// as a form in `basis.len()` variables.
pub fn restrict<F: Field>(
    field: &F,
    form: &HomogeneousForm<F>,
    basis: &[Vec<F::Elem>],
) -> HomogeneousForm<F> {
    let d = basis.len();
    if form.degree() == 2 {
        // polar form: c_ii = g(b_i), c_ij = g(b_i + b_j) - g(b_i) - g(b_j)
        let diag: Vec<F::Elem> = basis.iter().map(|b| form.eval(field, b)).collect();
        let mut terms = Vec::with_capacity(d * (d + 1) / 2);
        for i in 0..d {
            terms.push((Monomial::quadratic(i, i), diag[i].clone()));
            for j in i + 1..d {
                let sum: Vec<F::Elem> = basis[i].iter().zip(&basis[j]).map(|(x, y)| field.add(x, y)).collect();
                let c = field.sub(&field.sub(&form.eval(field, &sum), &diag[i]), &diag[j]);
                terms.push((Monomial::quadratic(i, j), c));
            }
        }
        return HomogeneousForm::from_terms(field, d, 2, terms).expect("quadratic monomials in d variables");
    }
    let images: Vec<HomogeneousForm<F>> = (0..form.nvars())
        .map(|i| {
            let coeffs: Vec<F::Elem> = basis.iter().map(|b| b[i].clone()).collect();
            HomogeneousForm::linear(field, &coeffs)
        })
        .collect();
    debug_assert!(images.iter().all(|g| g.nvars() == d));
    form.substitute(field, &images)
}

/// Common zeros in `P(span(basis))` of forms of degree at most 2, with the
/// free coordinates drawn from `values`. The last coordinate of each stratum
/// is solved from the first form rather than enumerated. Points are returned
/// normalized, in ambient coordinates, deduplicated and in enumeration order.
pub fn zeros_on_subspace<F: RootField>(
    field: &F,
    forms: &[HomogeneousForm<F>],
    basis: &[Vec<F::Elem>],
    values: &[F::Elem],
    budget: u128,
) -> Result<Vec<Vec<F::Elem>>> {
    let d = basis.len();
    if d == 0 {
        return Ok(Vec::new());
    }
    if forms.iter().any(|f| f.degree() > 2) {
        return Err(Error::InvalidInput("only forms of degree at most 2".into()));
    }
    let cost = (values.len() as u128).saturating_pow(d.saturating_sub(2) as u32) * d as u128;
    if cost > budget {
        return Err(Error::BudgetExceeded {
            needed: cost,
            budget,
        });
    }
    let restricted: Vec<HomogeneousForm<F>> = forms.iter().map(|f| restrict(field, f, basis)).collect();
    let ambient = |y: &[F::Elem]| -> Vec<F::Elem> {
        let n = basis[0].len();
        (0..n)
            .map(|i| {
                y.iter()
                    .zip(basis)
                    .fold(field.zero(), |acc, (c, b)| field.add(&acc, &field.mul(c, &b[i])))
            })
            .collect()
    };
    let mut out: Vec<Vec<F::Elem>> = Vec::new();
    let push = |y: &[F::Elem], out: &mut Vec<Vec<F::Elem>>| -> Result<()> {
        if restricted.iter().all(|g| field.is_zero(&g.eval(field, y))) {
            let p = normalize(field, &ambient(y))?;
            if !out.contains(&p) {
                out.push(p);
            }
        }
        Ok(())
    };
    let mut err = None;
    for lead in 0..d {
        let free = d - lead - 1;
        let mut y = vec![field.zero(); d];
        y[lead] = field.one();
        if free == 0 || restricted.is_empty() {
            for_each_tuple(values, free, |tail| {
                y[lead + 1..].clone_from_slice(tail);
                if let Err(e) = push(&y, &mut out) {
                    err = Some(e);
                    return false;
                }
                true
            });
        } else {
            let g = &restricted[0];
            for_each_tuple(values, free - 1, |mid| {
                y[lead + 1..d - 1].clone_from_slice(mid);
                y[d - 1] = field.zero();
                // g(y + s e_last) = c + b s + a s^2
                let c = g.eval(field, &y);
                let mut e = vec![field.zero(); d];
                e[d - 1] = field.one();
                let a = g.eval(field, &e);
                let mut y1 = y.clone();
                y1[d - 1] = field.one();
                let b = field.sub(&field.sub(&g.eval(field, &y1), &c), &a);
                let roots = match field.solve_quadratic(&a, &b, &c) {
                    QuadRoots::All => values.to_vec(),
                    QuadRoots::Roots(r) => r,
                };
                for s in roots {
                    y[d - 1] = s;
                    if let Err(e) = push(&y, &mut out) {
                        err = Some(e);
                        return false;
                    }
                }
                true
            });
        }
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(out)
}
