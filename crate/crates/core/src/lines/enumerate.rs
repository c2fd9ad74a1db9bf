use rayon::prelude::*;

use crate::algebra::field::{Field, FieldSpec, QuadRoots, RootField};
use crate::algebra::finite::{Fe, FiniteField};
use crate::algebra::matrix;
use crate::algebra::projective::for_each_tuple;
use crate::algebra::rational::{height, rationals_up_to_height, Rationals};
use crate::error::{Error, Result};
use crate::io::{line_to_json, pencil_digest, LineSetJson};
use crate::pencil::{Pencil, NVARS};

use super::{line_contained, Line};

/// Largest `q` accepted by [`enumerate_lines`].
pub const DEFAULT_MAX_Q: u64 = 13;

/// The lines of `X` found by a sweep, sorted and without repeats.
pub struct LineSet<F: Field> {
    pub field: F,
    pub digest: String,
    pub lines: Vec<Line<F>>,
}

impl<F: Field> LineSet<F> {
    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn spec(&self) -> FieldSpec {
        self.field.spec()
    }

    pub fn to_json(&self) -> LineSetJson {
        LineSetJson {
            field: self.field.spec(),
            digest: self.digest.clone(),
            count: self.lines.len(),
            lines: self
                .lines
                .iter()
                .map(|l| line_to_json(&self.field, l))
                .collect(),
        }
    }
}

/// `x + s v`: the coefficients `(a, b, c)` of `q_e(x + s v) = a s^2 + b s + c`.
fn quad_in_direction<F: Field>(
    p: &Pencil<F>,
    e: usize,
    x: &[F::Elem],
    v: &[F::Elem],
) -> (F::Elem, F::Elem, F::Elem) {
    let f = p.field();
    let fx = p.forms()[e].eval(f, x);
    let fv = p.forms()[e].eval(f, v);
    (fv, p.bilinear(e, x, v), fx)
}

/// Affine family `base + sum_k t_k dirs[k]`: visits every member with the
/// first `dirs.len() - 1` parameters from `values` and the last one solved
/// from `q_1 = 0`, keeping members with `q_2 = 0` and accepted roots.
fn sweep_family<F: RootField>(
    p: &Pencil<F>,
    base: &[F::Elem],
    dirs: &[Vec<F::Elem>],
    values: &[F::Elem],
    accept: &(impl Fn(&F::Elem) -> bool + Sync),
    out: &mut Vec<Vec<F::Elem>>,
) {
    let f = p.field();
    if dirs.is_empty() {
        if p.vanishes_at(base) {
            out.push(base.to_vec());
        }
        return;
    }
    let (last, head) = dirs.split_last().unwrap();
    for_each_tuple(values, head.len(), |ts| {
        let mut x = base.to_vec();
        for (t, d) in ts.iter().zip(head) {
            for (xi, di) in x.iter_mut().zip(d) {
                *xi = f.add(xi, &f.mul(t, di));
            }
        }
        let (a, b, c) = quad_in_direction(p, 0, &x, last);
        let roots = match f.solve_quadratic(&a, &b, &c) {
            QuadRoots::All => values.to_vec(),
            QuadRoots::Roots(r) => r.into_iter().filter(|s| accept(s)).collect(),
        };
        for s in roots {
            let y: Vec<F::Elem> = x
                .iter()
                .zip(last)
                .map(|(xi, li)| f.add(xi, &f.mul(&s, li)))
                .collect();
            if f.is_zero(&p.q2().eval(f, &y)) {
                out.push(y);
            }
        }
        true
    });
}

fn unit<F: Field>(f: &F, c: usize) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); NVARS];
    v[c] = f.one();
    v
}

/// Lines whose second echelon row starts with `r2_prefix` (if given) in the
/// stratum with pivots `(i, j)`.
fn sweep_unit<F: RootField>(
    p: &Pencil<F>,
    (i, j): (usize, usize),
    r2_first: Option<&F::Elem>,
    values: &[F::Elem],
    accept: &(impl Fn(&F::Elem) -> bool + Sync),
) -> Result<Vec<Line<F>>> {
    let f = p.field();
    let free2: Vec<usize> = (j + 1..NVARS).collect();
    let free1: Vec<usize> = (i + 1..NVARS).filter(|&c| c != j).collect();

    let mut base2 = unit(f, j);
    let mut dirs2: Vec<Vec<F::Elem>> = free2.iter().map(|&c| unit(f, c)).collect();
    if let Some(v) = r2_first {
        base2[free2[0]] = v.clone();
        dirs2.remove(0);
    }
    let mut r2s = Vec::new();
    sweep_family(p, &base2, &dirs2, values, accept, &mut r2s);

    let mut out = Vec::new();
    for r2 in r2s {
        // b_e(e_i + sum x_c e_c, r2) = 0 for e = 1, 2
        let ei = unit(f, i);
        let sys: Vec<Vec<F::Elem>> = (0..2)
            .map(|e| free1.iter().map(|&c| p.bilinear(e, &unit(f, c), &r2)).collect())
            .collect();
        let rhs: Vec<F::Elem> = (0..2).map(|e| f.neg(&p.bilinear(e, &ei, &r2))).collect();
        let Some(x0) = matrix::solve(f, &sys, &rhs)? else {
            continue;
        };
        let ker = matrix::kernel(f, &sys, free1.len())?;
        let mut base1 = ei;
        for (k, &c) in free1.iter().enumerate() {
            base1[c] = x0[k].clone();
        }
        let dirs1: Vec<Vec<F::Elem>> = ker
            .iter()
            .map(|kv| {
                let mut d = vec![f.zero(); NVARS];
                for (k, &c) in free1.iter().enumerate() {
                    d[c] = kv[k].clone();
                }
                d
            })
            .collect();
        let mut r1s = Vec::new();
        sweep_family(p, &base1, &dirs1, values, accept, &mut r1s);
        for r1 in r1s {
            if r1.iter().chain(&r2).all(|c| accept(c)) {
                let l = Line::from_echelon([r1, r2.clone()], (i, j));
                debug_assert!(line_contained(p, &l));
                out.push(l);
            }
        }
    }
    Ok(out)
}

/// All lines on `X` whose echelon entries lie in `values` and pass
/// `accept`. Over a finite field with `values` the whole field this is the
/// full set `F(F_q)`. Work is split by pivot pair and first free entry of
/// the second row; the result is sorted, so it does not depend on the
/// thread count.
pub fn enumerate_lines_with<F: RootField>(
    p: &Pencil<F>,
    values: &[F::Elem],
    accept: impl Fn(&F::Elem) -> bool + Sync,
) -> Result<Vec<Line<F>>> {
    let f = p.field();
    let mut units: Vec<((usize, usize), Option<F::Elem>)> = Vec::new();
    for i in 0..NVARS {
        for j in i + 1..NVARS {
            if NVARS - j - 1 >= 2 {
                units.extend(values.iter().map(|v| ((i, j), Some(v.clone()))));
            } else {
                units.push(((i, j), None));
            }
        }
    }
    let parts: Result<Vec<Vec<Line<F>>>> = units
        .par_iter()
        .map(|(pair, first)| sweep_unit(p, *pair, first.as_ref(), values, &accept))
        .collect();
    let mut lines: Vec<Line<F>> = parts?.into_iter().flatten().collect();
    lines.sort_by(|a, b| a.compare(f, b));
    lines.dedup();
    Ok(lines)
}

/// `F(F_q)` for `q <= max_q`.
pub fn enumerate_lines_bounded(p: &Pencil<FiniteField>, max_q: u64) -> Result<LineSet<FiniteField>> {
    let f = p.field();
    if f.q() > max_q {
        return Err(Error::FieldTooLarge {
            q: f.q(),
            bound: max_q,
        });
    }
    let vals: Vec<Fe> = f.elements().collect();
    Ok(LineSet {
        field: f.clone(),
        digest: pencil_digest(p),
        lines: enumerate_lines_with(p, &vals, |_| true)?,
    })
}

/// `F(F_q)`, refusing `q` above [`DEFAULT_MAX_Q`].
pub fn enumerate_lines(p: &Pencil<FiniteField>) -> Result<LineSet<FiniteField>> {
    enumerate_lines_bounded(p, DEFAULT_MAX_Q)
}

/// Rational lines whose echelon entries all have height at most `bound`.
pub fn enumerate_lines_height(p: &Pencil<Rationals>, bound: u64) -> Result<LineSet<Rationals>> {
    let vals = rationals_up_to_height(bound);
    let b = num_bigint::BigInt::from(bound);
    Ok(LineSet {
        field: Rationals,
        digest: pencil_digest(p),
        lines: enumerate_lines_with(p, &vals, |x| height(x) <= b)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lines::naive_lines;
    use crate::pencil::diagonal_pencil;

    #[test]
    fn fast_sweep_matches_naive_sweep() {
        for (q, a) in [(3u64, [0u32, 1, 2, 0, 1, 2]), (5, [0, 1, 2, 3, 4, 1])] {
            let f = FiniteField::prime(q).unwrap();
            let Ok(p) = diagonal_pencil(&f, &a.map(Fe)) else { continue };
            let fast = enumerate_lines(&p).unwrap();
            let (_, mut slow) = naive_lines(&p);
            slow.sort_by(|x, y| x.compare(&f, y));
            assert_eq!(fast.lines, slow);
        }
    }

    #[test]
    fn refuses_large_fields() {
        let f = FiniteField::prime(17).unwrap();
        let p = diagonal_pencil(&f, &[0, 1, 2, 3, 4, 5].map(Fe)).unwrap();
        assert!(matches!(
            enumerate_lines(&p),
            Err(Error::FieldTooLarge { q: 17, bound: 13 })
        ));
    }
}
