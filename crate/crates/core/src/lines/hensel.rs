use crate::algebra::field::Field;
use crate::algebra::laurent::{Laurent, Series};
use crate::algebra::matrix;
use crate::error::{Error, Result};
use crate::pencil::{Pencil, NVARS};

use super::{normal_splitting, Line};

/// A line over `k[[u]]/(u^N)`: each entry is a list of `N` digits. Pivot
/// columns hold 1 and 0 exactly; the other columns carry the lift.
pub struct LiftedLine<B: Field> {
    pub rows: [Vec<Vec<B::Elem>>; 2],
    pub pivots: (usize, usize),
    pub precision: usize,
}

impl<B: Field> Clone for LiftedLine<B> {
    fn clone(&self) -> Self {
        LiftedLine {
            rows: self.rows.clone(),
            pivots: self.pivots,
            precision: self.precision,
        }
    }
}

impl<B: Field> std::fmt::Debug for LiftedLine<B> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LiftedLine")
            .field("rows", &self.rows)
            .field("pivots", &self.pivots)
            .finish()
    }
}

impl<B: Field> LiftedLine<B> {
    /// Reduction mod `u`.
    pub fn reduction(&self) -> Line<B> {
        let r = |k: usize| self.rows[k].iter().map(|d| d[0].clone()).collect();
        Line::from_echelon([r(0), r(1)], self.pivots)
    }

    /// Entries as exact series in `lf` (whose precision must be at least
    /// the lift precision).
    pub fn to_series(&self, lf: &Laurent<B>) -> Result<[Vec<Series<B::Elem>>; 2]> {
        let conv = |k: usize| -> Result<Vec<Series<B::Elem>>> {
            self.rows[k].iter().map(|d| lf.from_digits(0, d)).collect()
        };
        Ok([conv(0)?, conv(1)?])
    }
}

/// Digits `0..n` of a series of nonnegative valuation.
fn truncated_digits<B: Field>(lf: &Laurent<B>, c: &Series<B::Elem>, n: usize) -> Result<Vec<B::Elem>> {
    let base = lf.base();
    let mut out = vec![base.zero(); n];
    if c.is_exact_zero() {
        return Ok(out);
    }
    let abs = c.abs_precision().unwrap_or(i64::MAX);
    if abs < n as i64 {
        return Err(Error::PrecisionLoss(format!(
            "coefficient known only modulo {}^{abs}",
            lf.var()
        )));
    }
    let Some(v) = c.valuation() else {
        return Ok(out);
    };
    if v < 0 {
        return Err(Error::InvalidInput(
            "lifting needs coefficients without poles".into(),
        ));
    }
    for (i, d) in c.digits().iter().enumerate() {
        let k = v as usize + i;
        if k < n {
            out[k] = d.clone();
        }
    }
    Ok(out)
}

struct TruncatedForm<B: Field> {
    terms: Vec<(usize, usize, Vec<B::Elem>)>,
}

fn series_mul<B: Field>(f: &B, a: &[B::Elem], b: &[B::Elem]) -> Vec<B::Elem> {
    let n = a.len();
    let mut out = vec![f.zero(); n];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    out
}

fn series_add<B: Field>(f: &B, a: &mut [B::Elem], b: &[B::Elem]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x = f.add(x, y);
    }
}

impl<B: Field> TruncatedForm<B> {
    fn bilinear(&self, f: &B, x: &[Vec<B::Elem>], y: &[Vec<B::Elem>], n: usize) -> Vec<B::Elem> {
        let mut acc = vec![f.zero(); n];
        for (i, j, c) in &self.terms {
            let t = if i == j {
                let two_c: Vec<B::Elem> = c.iter().map(|v| f.add(v, v)).collect();
                series_mul(f, &two_c, &series_mul(f, &x[*i], &y[*i]))
            } else {
                let mut s = series_mul(f, &x[*i], &y[*j]);
                series_add(f, &mut s, &series_mul(f, &x[*j], &y[*i]));
                series_mul(f, c, &s)
            };
            series_add(f, &mut acc, &t);
        }
        acc
    }

    fn eval(&self, f: &B, x: &[Vec<B::Elem>], n: usize) -> Vec<B::Elem> {
        let mut acc = vec![f.zero(); n];
        for (i, j, c) in &self.terms {
            let t = series_mul(f, c, &series_mul(f, &x[*i], &x[*j]));
            series_add(f, &mut acc, &t);
        }
        acc
    }
}

/// Lifts a line of the special fiber (`u = 0`) to a line over
/// `k[[u]]/(u^N)`, `N` the precision of the series field. At each step the
/// 6x8 linearized system is solved with free unknowns set to zero, so the
/// lift is a function of its input.
pub fn hensel_lift_line<B: Field>(p: &Pencil<Laurent<B>>, l0: &Line<B>) -> Result<LiftedLine<B>> {
    let lf = p.field();
    let f = lf.base();
    let n = lf.precision();
    let forms: Vec<TruncatedForm<B>> = p
        .forms()
        .iter()
        .map(|q| -> Result<TruncatedForm<B>> {
            let terms = q
                .terms()
                .map(|(m, c)| {
                    let v = m.factors();
                    Ok((v[0], v[1], truncated_digits(lf, c, n)?))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(TruncatedForm { terms })
        })
        .collect::<Result<_>>()?;

    let special = p.map_field(f, |c| {
        if c.valuation().is_some_and(|v| v == 0) {
            c.digits()[0].clone()
        } else {
            f.zero()
        }
    })?;
    normal_splitting(&special, l0)?;

    let (pi, pj) = l0.pivots();
    let free: Vec<usize> = (0..NVARS).filter(|&c| c != pi && c != pj).collect();
    let unit = |c: usize| {
        let mut v = vec![f.zero(); NVARS];
        v[c] = f.one();
        v
    };
    let [r1, r2] = l0.rows();
    let mut jac = Vec::new();
    for e in 0..2 {
        let mut q_r1 = vec![f.zero(); 8];
        let mut b_12 = vec![f.zero(); 8];
        let mut q_r2 = vec![f.zero(); 8];
        for (k, &c) in free.iter().enumerate() {
            q_r1[k] = special.bilinear(e, r1, &unit(c));
            b_12[k] = special.bilinear(e, &unit(c), r2);
            b_12[4 + k] = special.bilinear(e, r1, &unit(c));
            q_r2[4 + k] = special.bilinear(e, r2, &unit(c));
        }
        jac.extend([q_r1, b_12, q_r2]);
    }

    let lift_entry = |v: &B::Elem| {
        let mut d = vec![f.zero(); n];
        d[0] = v.clone();
        d
    };
    let mut rows: [Vec<Vec<B::Elem>>; 2] = [
        r1.iter().map(lift_entry).collect(),
        r2.iter().map(lift_entry).collect(),
    ];
    for step in 1..n {
        let res = residuals(f, &forms, &rows, n);
        let rhs: Vec<B::Elem> = res.iter().map(|r| f.neg(&r[step])).collect();
        let Some(delta) = matrix::solve(f, &jac, &rhs)? else {
            return Err(Error::Obstructed { step });
        };
        for (k, &c) in free.iter().enumerate() {
            rows[0][c][step] = delta[k].clone();
            rows[1][c][step] = delta[4 + k].clone();
        }
    }
    debug_assert!(residuals(f, &forms, &rows, n)
        .iter()
        .all(|r| r.iter().all(|d| f.is_zero(d))));
    Ok(LiftedLine {
        rows,
        pivots: (pi, pj),
        precision: n,
    })
}

fn residuals<B: Field>(
    f: &B,
    forms: &[TruncatedForm<B>],
    rows: &[Vec<Vec<B::Elem>>; 2],
    n: usize,
) -> Vec<Vec<B::Elem>> {
    let mut out = Vec::new();
    for q in forms {
        out.push(q.eval(f, &rows[0], n));
        out.push(q.bilinear(f, &rows[0], &rows[1], n));
        out.push(q.eval(f, &rows[1], n));
    }
    out
}
