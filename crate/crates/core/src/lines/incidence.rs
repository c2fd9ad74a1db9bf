use crate::algebra::field::Field;
use crate::algebra::finite::FiniteField;
use crate::algebra::matrix;
use crate::algebra::projective::normalize;
use crate::error::{Error, Result};
use crate::pencil::{Pencil, NVARS};

use super::{enumerate_lines, line_contained, Line};

/// The point `L ∩ M` when the two lines meet in exactly one point.
pub fn intersection_point<F: Field>(field: &F, l: &Line<F>, m: &Line<F>) -> Result<Option<Vec<F::Elem>>> {
    // columns r1, r2, m1, m2; a kernel vector (a, b, c, d) gives a r1 + b r2 = -(c m1 + d m2)
    let cols = [&l.rows()[0], &l.rows()[1], &m.rows()[0], &m.rows()[1]];
    let a: Vec<Vec<F::Elem>> = (0..NVARS)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let ker = matrix::kernel(field, &a, 4)?;
    if ker.len() != 1 {
        return Ok(None);
    }
    let k = &ker[0];
    let x = l.point(field, &k[0], &k[1]);
    Ok(Some(normalize(field, &x)?))
}

/// Lines of `lines` other than `lambda` that meet it, with the meeting
/// point normalized (first nonzero coordinate 1).
pub fn incident_lines_in<F: Field>(
    field: &F,
    lines: &[Line<F>],
    lambda: &Line<F>,
) -> Result<Vec<(Line<F>, Vec<F::Elem>)>> {
    let mut out = Vec::new();
    for l in lines {
        if l == lambda {
            continue;
        }
        if let Some(x) = intersection_point(field, l, lambda)? {
            out.push((l.clone(), x));
        }
    }
    Ok(out)
}

/// `W(Λ)(F_q)`: lines of `X` distinct from `Λ` that meet it.
pub fn incident_lines(
    p: &Pencil<FiniteField>,
    lambda: &Line<FiniteField>,
) -> Result<Vec<(Line<FiniteField>, Vec<crate::algebra::finite::Fe>)>> {
    if !line_contained(p, lambda) {
        return Err(Error::NotOnX);
    }
    let set = enumerate_lines(p)?;
    incident_lines_in(p.field(), &set.lines, lambda)
}
