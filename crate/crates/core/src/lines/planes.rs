use rayon::prelude::*;

use crate::algebra::field::Field;
use crate::algebra::matrix::Matrix;
use crate::pencil::{Pencil, NVARS};

use super::grassmannian::{for_each_in_stratum, pivot_sets};

/// Result of an exhaustive sweep of `Gr(3,6)(F_q)`.
#[derive(Clone, Debug)]
pub struct PlaneSweep<E> {
    pub candidates: u128,
    /// Contained planes as echelon matrices, in sweep order.
    pub planes: Vec<Matrix<E>>,
}

fn plane_contained<F: Field>(p: &Pencil<F>, m: &Matrix<F::Elem>) -> bool {
    let f = p.field();
    (0..2).all(|e| {
        (0..3).all(|a| {
            f.is_zero(&p.forms()[e].eval(f, &m[a]))
                && (a + 1..3).all(|b| f.is_zero(&p.bilinear(e, &m[a], &m[b])))
        })
    })
}

/// Tests every 2-plane of `P^5` with coordinates in `values` for
/// containment in `X`. Strata are swept in parallel and concatenated in
/// pivot order.
pub fn contained_planes<F: Field>(p: &Pencil<F>, values: &[F::Elem]) -> PlaneSweep<F::Elem> {
    let f = p.field();
    let parts: Vec<(u128, Vec<Matrix<F::Elem>>)> = pivot_sets(NVARS, 3)
        .par_iter()
        .map(|piv| {
            let mut n = 0u128;
            let mut found = Vec::new();
            for_each_in_stratum(f, values, piv, NVARS, &mut |m, _| {
                n += 1;
                if plane_contained(p, m) {
                    found.push(m.clone());
                }
                true
            });
            (n, found)
        })
        .collect();
    let mut out = PlaneSweep {
        candidates: 0,
        planes: Vec::new(),
    };
    for (n, found) in parts {
        out.candidates += n;
        out.planes.extend(found);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::finite::{Fe, FiniteField};
    use crate::algebra::form::{HomogeneousForm, Monomial};
    use crate::lines::gaussian_binomial;

    #[test]
    fn finds_the_plane_of_a_split_pencil() {
        // X0 X3 + X1 X4 + X2 X5 and X0 X4 - X1 X3 both vanish on X3 = X4 = X5 = 0
        let f = FiniteField::prime(3).unwrap();
        let q = |t: &[(usize, usize, u32)]| {
            HomogeneousForm::from_terms(
                &f,
                6,
                2,
                t.iter().map(|&(i, j, c)| (Monomial::quadratic(i, j), Fe(c))),
            )
            .unwrap()
        };
        let p = Pencil::new(
            f.clone(),
            q(&[(0, 3, 1), (1, 4, 1), (2, 5, 1)]),
            q(&[(0, 4, 1), (1, 3, 2)]),
        )
        .unwrap();
        let vals: Vec<Fe> = f.elements().collect();
        let sweep = contained_planes(&p, &vals);
        assert_eq!(sweep.candidates, gaussian_binomial(6, 3, 3));
        assert!(sweep.planes.iter().any(|m| m[0][0] == Fe(1)
            && m[1][1] == Fe(1)
            && m[2][2] == Fe(1)
            && m.iter().all(|r| r[3..].iter().all(|x| *x == Fe(0)))));
    }
}
