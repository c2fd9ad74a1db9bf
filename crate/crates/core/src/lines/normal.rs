use serde::Serialize;

use crate::algebra::field::Field;
use crate::algebra::form::Monomial;
use crate::algebra::matrix;
use crate::error::{Error, Result};
use crate::pencil::Pencil;

use super::{line_contained, standardizing_matrix, Line};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Splitting {
    /// `O ⊕ O`.
    Balanced,
    /// `O(1) ⊕ O(-1)`.
    Unbalanced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NormalType {
    /// `h^0(N)`.
    pub h0: usize,
    /// `h^0(N(-1))`.
    pub h0_twisted: usize,
    pub splitting: Splitting,
}

/// Splitting type of the normal bundle of `L` in `X`, from the kernel of the
/// 2x4 matrix of linear forms `∂q_e/∂X_i` (`i = 0..3`) along `L` in standard
/// position.
pub fn normal_splitting<F: Field>(p: &Pencil<F>, l: &Line<F>) -> Result<NormalType> {
    let f = p.field();
    if !line_contained(p, l) {
        return Err(Error::NotOnX);
    }
    let m = standardizing_matrix(f, l);
    let std = p.substitute(&m)?;
    // entry (e, i) is a s + b t with a = coeff of Z_i Z_4, b = coeff of Z_i Z_5
    let mut a = vec![vec![f.zero(); 4]; 2];
    let mut b = vec![vec![f.zero(); 4]; 2];
    for e in 0..2 {
        for i in 0..4 {
            a[e][i] = std.forms()[e].coeff(f, &Monomial::quadratic(i, 4));
            b[e][i] = std.forms()[e].coeff(f, &Monomial::quadratic(i, 5));
        }
    }
    // sections of N: v_i = v_i0 s + v_i1 t with M v = 0 in degree 2
    let mut sys = Vec::new();
    for e in 0..2 {
        let mut s2 = vec![f.zero(); 8];
        let mut st = vec![f.zero(); 8];
        let mut t2 = vec![f.zero(); 8];
        for i in 0..4 {
            s2[2 * i] = a[e][i].clone();
            st[2 * i] = b[e][i].clone();
            st[2 * i + 1] = a[e][i].clone();
            t2[2 * i + 1] = b[e][i].clone();
        }
        sys.extend([s2, st, t2]);
    }
    let h0 = 8 - matrix::rank(f, &sys)?;
    // sections of N(-1): constant v with M v = 0 in degree 1
    let mut tw = Vec::new();
    for e in 0..2 {
        tw.push(a[e].clone());
        tw.push(b[e].clone());
    }
    let h0_twisted = 4 - matrix::rank(f, &tw)?;
    let splitting = match (h0, h0_twisted) {
        (2, 0) => Splitting::Balanced,
        (2, 1) => Splitting::Unbalanced,
        _ => {
            return Err(Error::DegenerateMatrix(format!(
                "h0(N) = {h0}, h0(N(-1)) = {h0_twisted}"
            )))
        }
    };
    Ok(NormalType {
        h0,
        h0_twisted,
        splitting,
    })
}
