//! Lines on `X`: canonical representation, enumeration, incidence, normal
//! bundles and lifting.

mod enumerate;
mod grassmannian;
mod hensel;
mod incidence;
mod normal;
mod planes;

use std::cmp::Ordering;

pub use enumerate::{
    enumerate_lines, enumerate_lines_bounded, enumerate_lines_height, enumerate_lines_with,
    LineSet, DEFAULT_MAX_Q,
};
pub use grassmannian::{for_each_echelon, gaussian_binomial, naive_lines};
pub use hensel::{hensel_lift_line, LiftedLine};
pub use incidence::{incident_lines, incident_lines_in, intersection_point};
pub use normal::{normal_splitting, NormalType, Splitting};
pub use planes::{contained_planes, PlaneSweep};

use crate::algebra::field::Field;
use crate::algebra::matrix::{self, Matrix};
use crate::error::{Error, Result};
use crate::pencil::{Pencil, NVARS};

/// A line in `P^5`, stored as the reduced row echelon basis of its 2-plane.
pub struct Line<F: Field> {
    rows: [Vec<F::Elem>; 2],
    pivots: (usize, usize),
}

impl<F: Field> Clone for Line<F> {
    fn clone(&self) -> Self {
        Line {
            rows: self.rows.clone(),
            pivots: self.pivots,
        }
    }
}

impl<F: Field> std::fmt::Debug for Line<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Line")
            .field("rows", &self.rows)
            .field("pivots", &self.pivots)
            .finish()
    }
}

impl<F: Field> PartialEq for Line<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
    }
}

impl<F: Field> Line<F> {
    /// The line spanned by two vectors; fails unless they are independent.
    pub fn from_rows(field: &F, rows: &[Vec<F::Elem>]) -> Result<Self> {
        if rows.len() != 2 || rows.iter().any(|r| r.len() != NVARS) {
            return Err(Error::InvalidInput("a line needs two rows of length 6".into()));
        }
        let (red, piv) = matrix::rref(field, rows)?;
        if piv.len() != 2 {
            return Err(Error::InvalidInput("line rows are linearly dependent".into()));
        }
        Ok(Line {
            rows: [red[0].clone(), red[1].clone()],
            pivots: (piv[0], piv[1]),
        })
    }

    /// Trusts that `rows` is already reduced with the given pivots.
    pub(crate) fn from_echelon(rows: [Vec<F::Elem>; 2], pivots: (usize, usize)) -> Self {
        Line { rows, pivots }
    }

    /// `{X_i = 0 for i not in {a, b}}`.
    pub fn coordinate(field: &F, a: usize, b: usize) -> Self {
        let mut r1 = vec![field.zero(); NVARS];
        let mut r2 = vec![field.zero(); NVARS];
        r1[a.min(b)] = field.one();
        r2[a.max(b)] = field.one();
        Line {
            rows: [r1, r2],
            pivots: (a.min(b), a.max(b)),
        }
    }

    pub fn rows(&self) -> &[Vec<F::Elem>; 2] {
        &self.rows
    }

    pub fn pivots(&self) -> (usize, usize) {
        self.pivots
    }

    pub fn point(&self, field: &F, s: &F::Elem, t: &F::Elem) -> Vec<F::Elem> {
        self.rows[0]
            .iter()
            .zip(&self.rows[1])
            .map(|(a, b)| field.add(&field.mul(s, a), &field.mul(t, b)))
            .collect()
    }

    pub fn contains_point(&self, field: &F, x: &[F::Elem]) -> Result<bool> {
        let m = vec![self.rows[0].clone(), self.rows[1].clone(), x.to_vec()];
        Ok(matrix::rank(field, &m)? == 2)
    }

    /// Lexicographic order on the concatenated echelon entries.
    pub fn compare(&self, field: &F, other: &Self) -> Ordering {
        self.rows
            .iter()
            .flatten()
            .zip(other.rows.iter().flatten())
            .map(|(a, b)| field.compare(a, b))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    pub fn display(&self, field: &F) -> String {
        let row = |r: &Vec<F::Elem>| {
            r.iter().map(|c| field.format(c)).collect::<Vec<_>>().join(", ")
        };
        format!("[{}; {}]", row(&self.rows[0]), row(&self.rows[1]))
    }
}

/// The six containment conditions: `q_e(r1)`, `b_e(r1, r2)`, `q_e(r2)` for
/// `e = 1, 2` (coefficients of `s^2`, `st`, `t^2` of the restrictions).
pub fn containment_residuals<F: Field>(p: &Pencil<F>, rows: &[Vec<F::Elem>; 2]) -> [F::Elem; 6] {
    let [a, b] = p.eval(&rows[0]);
    let [c, d] = p.eval(&rows[1]);
    [
        a,
        p.bilinear(0, &rows[0], &rows[1]),
        c,
        b,
        p.bilinear(1, &rows[0], &rows[1]),
        d,
    ]
}

/// Both forms vanish identically on the line.
pub fn line_contained<F: Field>(p: &Pencil<F>, l: &Line<F>) -> bool {
    containment_residuals(p, l.rows())
        .iter()
        .all(|x| p.field().is_zero(x))
}

/// Change of coordinates `M` with `M e_4 = r1`, `M e_5 = r2` and
/// `M e_0..e_3` the standard vectors of the non-pivot columns in order.
pub fn standardizing_matrix<F: Field>(field: &F, l: &Line<F>) -> Matrix<F::Elem> {
    let (i, j) = l.pivots;
    let others: Vec<usize> = (0..NVARS).filter(|&c| c != i && c != j).collect();
    let mut m = matrix::zeros(field, NVARS, NVARS);
    for (k, &c) in others.iter().enumerate() {
        m[c][k] = field.one();
    }
    for r in 0..NVARS {
        m[r][4] = l.rows[0][r].clone();
        m[r][5] = l.rows[1][r].clone();
    }
    m
}
