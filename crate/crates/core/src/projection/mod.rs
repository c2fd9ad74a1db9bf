//! Projection from a line: standard position, the determinantal curve
//! `Delta` and the birational maps `X --> P^3 --> X`.

mod delta;

pub use delta::{
    chi, delta_invariants, delta_points, hilbert_function, DeltaInvariants, DELTA_DEGREE,
    DELTA_GENUS,
};

use crate::algebra::field::Field;
use crate::algebra::form::{HomogeneousForm, Monomial};
use crate::algebra::matrix::{self, Matrix};
use crate::error::{Error, Result};
use crate::lines::{line_contained, standardizing_matrix, Line};
use crate::pencil::{Pencil, NVARS};

/// The pencil in coordinates `Z = M^{-1} X` where the line is
/// `{Z_0 = .. = Z_3 = 0}`: `q_1 = L1 Z_4 + L2 Z_5 + Q`,
/// `q_2 = L1p Z_4 + L2p Z_5 + Qp`, all in `Z_0..Z_3`.
#[derive(Clone, Debug)]
pub struct StandardizedPencil<F: Field> {
    pub field: F,
    pub change_of_coords: Matrix<F::Elem>,
    pub l1: HomogeneousForm<F>,
    pub l2: HomogeneousForm<F>,
    pub q: HomogeneousForm<F>,
    pub l1p: HomogeneousForm<F>,
    pub l2p: HomogeneousForm<F>,
    pub qp: HomogeneousForm<F>,
}

impl<F: Field> StandardizedPencil<F> {
    /// Rows `(L1, L2, Q)` and `(L1p, L2p, Qp)`.
    pub fn rows(&self) -> [[&HomogeneousForm<F>; 3]; 2] {
        [[&self.l1, &self.l2, &self.q], [&self.l1p, &self.l2p, &self.qp]]
    }

    /// Reassembles the two quadrics in the `Z` coordinates.
    pub fn forms(&self) -> [HomogeneousForm<F>; 2] {
        let f = &self.field;
        let z = |i| HomogeneousForm::var(f, NVARS, i);
        let build = |l1: &HomogeneousForm<F>, l2: &HomogeneousForm<F>, q: &HomogeneousForm<F>| {
            l1.extend_vars(NVARS)
                .mul(f, &z(4))
                .add(f, &l2.extend_vars(NVARS).mul(f, &z(5)))
                .add(f, &q.extend_vars(NVARS))
        };
        [build(&self.l1, &self.l2, &self.q), build(&self.l1p, &self.l2p, &self.qp)]
    }
}

/// The three maximal minors of the 2x3 matrix, as forms in `Z_0..Z_3`.
#[derive(Clone, Debug)]
pub struct DeltaCurve<F: Field> {
    pub field: F,
    /// `L1 L2p - L2 L1p`
    pub m0: HomogeneousForm<F>,
    /// `L1 Qp - L1p Q`
    pub m1: HomogeneousForm<F>,
    /// `L2 Qp - L2p Q`
    pub m2: HomogeneousForm<F>,
}

impl<F: Field> DeltaCurve<F> {
    pub fn minors(&self) -> [&HomogeneousForm<F>; 3] {
        [&self.m0, &self.m1, &self.m2]
    }

    /// `L1 m2 - L2 m1 + Q m0` and the same for the second row; both vanish
    /// identically.
    pub fn syzygies(&self, s: &StandardizedPencil<F>) -> [HomogeneousForm<F>; 2] {
        let f = &self.field;
        s.rows().map(|[l1, l2, q]| {
            l1.mul(f, &self.m2)
                .sub(f, &l2.mul(f, &self.m1))
                .add(f, &q.mul(f, &self.m0))
        })
    }

    pub fn map_field<G: Field>(&self, target: &G, emb: impl Fn(&F::Elem) -> G::Elem) -> DeltaCurve<G> {
        DeltaCurve {
            field: target.clone(),
            m0: self.m0.map_coeffs(target, &emb),
            m1: self.m1.map_coeffs(target, &emb),
            m2: self.m2.map_coeffs(target, &emb),
        }
    }
}

/// Moves `line` to `{X_0 = .. = X_3 = 0}` with the matrix of
/// [`standardizing_matrix`] and reads off the six forms.
pub fn standardize_line<F: Field>(p: &Pencil<F>, line: &Line<F>) -> Result<StandardizedPencil<F>> {
    let f = p.field();
    let m = standardizing_matrix(f, line);
    let moved = p.substitute(&m)?;
    let mut parts = Vec::new();
    for q in moved.forms() {
        for (a, b) in [(4, 4), (4, 5), (5, 5)] {
            if !f.is_zero(&q.coeff(f, &Monomial::quadratic(a, b))) {
                return Err(Error::NotOnX);
            }
        }
        let lin = |k: usize| {
            let c: Vec<F::Elem> = (0..4).map(|i| q.coeff(f, &Monomial::quadratic(i, k))).collect();
            HomogeneousForm::linear(f, &c)
        };
        parts.push((lin(4), lin(5), q.truncate_vars(4)));
    }
    let [(l1, l2, q), (l1p, l2p, qp)]: [_; 2] = parts.try_into().map_err(|_| Error::NotOnX)?;
    Ok(StandardizedPencil {
        field: f.clone(),
        change_of_coords: m,
        l1,
        l2,
        q,
        l1p,
        l2p,
        qp,
    })
}

pub fn delta_curve<F: Field>(s: &StandardizedPencil<F>) -> DeltaCurve<F> {
    let f = &s.field;
    let minor = |a: &HomogeneousForm<F>, b: &HomogeneousForm<F>, c: &HomogeneousForm<F>, d: &HomogeneousForm<F>| {
        a.mul(f, d).sub(f, &b.mul(f, c))
    };
    DeltaCurve {
        field: f.clone(),
        m0: minor(&s.l1, &s.l2, &s.l1p, &s.l2p),
        m1: minor(&s.l1, &s.q, &s.l1p, &s.qp),
        m2: minor(&s.l2, &s.q, &s.l2p, &s.qp),
    }
}

/// Projection from a line and its inverse, in the original coordinates.
#[derive(Clone, Debug)]
pub struct RationalMapPair<F: Field> {
    pub field: F,
    /// `X --> P^3`: four linear forms in `X_0..X_5`.
    pub forward: Vec<HomogeneousForm<F>>,
    /// `P^3 --> X`: six cubics in `Y_0..Y_3`.
    pub inverse: Vec<HomogeneousForm<F>>,
}

impl<F: Field> RationalMapPair<F> {
    /// `None` on the indeterminacy locus.
    pub fn apply_forward(&self, x: &[F::Elem]) -> Option<Vec<F::Elem>> {
        apply(&self.field, &self.forward, x)
    }

    /// `None` on the indeterminacy locus `Delta`.
    pub fn apply_inverse(&self, y: &[F::Elem]) -> Option<Vec<F::Elem>> {
        apply(&self.field, &self.inverse, y)
    }

    /// `q_e(inverse)` for `e = 1, 2`; both are the zero form.
    pub fn inverse_residuals(&self, p: &Pencil<F>) -> [HomogeneousForm<F>; 2] {
        p.forms().clone().map(|q| q.substitute(&self.field, &self.inverse))
    }

    pub fn display(&self) -> (Vec<String>, Vec<String>) {
        let f = &self.field;
        (
            self.forward.iter().map(|g| g.display_with(f, "X")).collect(),
            self.inverse.iter().map(|g| g.display_with(f, "Y")).collect(),
        )
    }
}

fn apply<F: Field>(field: &F, forms: &[HomogeneousForm<F>], v: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let out: Vec<F::Elem> = forms.iter().map(|g| g.eval(field, v)).collect();
    if out.iter().all(|c| field.is_zero(c)) {
        None
    } else {
        crate::algebra::projective::normalize(field, &out).ok()
    }
}

/// Forward map: the first four rows of `M^{-1}`. Inverse map: Cramer's
/// rule for `(Z_4, Z_5)` with the denominator `m0` cleared,
/// `Z = (m0 Y_0, .., m0 Y_3, m2, -m1)`, then `X = M Z`.
pub fn rationalize<F: Field>(p: &Pencil<F>, line: &Line<F>) -> Result<(StandardizedPencil<F>, DeltaCurve<F>, RationalMapPair<F>)> {
    if !line_contained(p, line) {
        return Err(Error::NotOnX);
    }
    let f = p.field();
    let s = standardize_line(p, line)?;
    let d = delta_curve(&s);
    let minv = matrix::inverse(f, &s.change_of_coords)?;
    let forward = minv[..4].iter().map(|r| HomogeneousForm::linear(f, r)).collect();
    let mut z: Vec<HomogeneousForm<F>> = (0..4)
        .map(|i| d.m0.mul(f, &HomogeneousForm::var(f, 4, i)))
        .collect();
    z.push(d.m2.clone());
    z.push(d.m1.neg(f));
    let inverse = s
        .change_of_coords
        .iter()
        .map(|row| {
            row.iter()
                .zip(&z)
                .fold(HomogeneousForm::zero(4, 3), |acc, (c, g)| acc.add(f, &g.scale(f, c)))
        })
        .collect();
    Ok((
        s,
        d,
        RationalMapPair {
            field: f.clone(),
            forward,
            inverse,
        },
    ))
}

/// Checks the pair as polynomial identities: the inverse lands on `X`, and
/// `forward(inverse(Y)) = m0 Y`.
pub fn verify_map_pair<F: Field>(
    p: &Pencil<F>,
    d: &DeltaCurve<F>,
    maps: &RationalMapPair<F>,
) -> Result<()> {
    let f = p.field();
    if maps.inverse_residuals(p).iter().any(|g| !g.is_zero(f)) {
        return Err(Error::CertificateFailed("inverse map does not land on X".into()));
    }
    for (i, g) in maps.forward.iter().enumerate() {
        let back = g.substitute(f, &maps.inverse);
        let expect = d.m0.mul(f, &HomogeneousForm::var(f, 4, i));
        if !back.sub(f, &expect).is_zero(f) {
            return Err(Error::CertificateFailed(format!(
                "forward after inverse differs from m0 Y{i}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::finite::{Fe, FiniteField};

    fn lin(f: &FiniteField, c: [u32; 4]) -> HomogeneousForm<FiniteField> {
        HomogeneousForm::linear(f, &c.map(Fe))
    }

    #[test]
    fn minors_of_a_sample_matrix() {
        let f = FiniteField::prime(7).unwrap();
        let x = |i| HomogeneousForm::var(&f, 4, i);
        let s = StandardizedPencil {
            field: f.clone(),
            change_of_coords: matrix::identity(&f, 6),
            l1: lin(&f, [1, 0, 0, 0]),
            l2: lin(&f, [0, 1, 0, 0]),
            q: x(2).mul(&f, &x(2)).add(&f, &x(3).mul(&f, &x(3))),
            l1p: lin(&f, [0, 1, 0, 0]),
            l2p: lin(&f, [0, 0, 1, 0]),
            qp: x(0).mul(&f, &x(3)),
        };
        let d = delta_curve(&s);
        let m0 = x(0).mul(&f, &x(2)).sub(&f, &x(1).mul(&f, &x(1)));
        let m1 = x(0).mul(&f, &x(0)).mul(&f, &x(3)).sub(&f, &x(1).mul(&f, &s.q));
        let m2 = x(0).mul(&f, &x(1)).mul(&f, &x(3)).sub(&f, &x(2).mul(&f, &s.q));
        assert_eq!(d.m0, m0);
        assert_eq!(d.m1, m1);
        assert_eq!(d.m2, m2);
        assert!(d.syzygies(&s).iter().all(|g| g.is_zero(&f)));
    }

    #[test]
    fn zero_quadrics_give_zero_cubic_minors() {
        let f = FiniteField::prime(7).unwrap();
        let s = StandardizedPencil {
            field: f.clone(),
            change_of_coords: matrix::identity(&f, 6),
            l1: lin(&f, [1, 2, 0, 0]),
            l2: lin(&f, [0, 1, 0, 3]),
            q: HomogeneousForm::zero(4, 2),
            l1p: lin(&f, [0, 0, 1, 0]),
            l2p: lin(&f, [1, 0, 0, 1]),
            qp: HomogeneousForm::zero(4, 2),
        };
        let d = delta_curve(&s);
        assert!(d.m1.is_zero(&f) && d.m2.is_zero(&f));
        assert_eq!(d.m0, s.l1.mul(&f, &s.l2p).sub(&f, &s.l2.mul(&f, &s.l1p)));
    }

    #[test]
    fn standard_line_needs_no_coordinate_change() {
        let f = FiniteField::prime(7).unwrap();
        let s0 = StandardizedPencil {
            field: f.clone(),
            change_of_coords: matrix::identity(&f, 6),
            l1: lin(&f, [1, 0, 2, 0]),
            l2: lin(&f, [0, 1, 0, 0]),
            q: HomogeneousForm::var(&f, 4, 2).mul(&f, &HomogeneousForm::var(&f, 4, 3)),
            l1p: lin(&f, [0, 0, 1, 0]),
            l2p: lin(&f, [0, 0, 0, 1]),
            qp: HomogeneousForm::var(&f, 4, 0).mul(&f, &HomogeneousForm::var(&f, 4, 0)),
        };
        let [a, b] = s0.forms();
        let p = Pencil::new(f.clone(), a, b).unwrap();
        let s = standardize_line(&p, &Line::coordinate(&f, 4, 5)).unwrap();
        assert_eq!(s.change_of_coords, matrix::identity(&f, 6));
        assert_eq!((s.l1, s.l2, s.q), (s0.l1, s0.l2, s0.q));
        assert_eq!((s.l1p, s.l2p, s.qp), (s0.l1p, s0.l2p, s0.qp));
    }
}
