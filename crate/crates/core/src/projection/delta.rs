use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::algebra::field::Field;
use crate::algebra::finite::{Fe, FiniteField};
use crate::algebra::form::{monomials, HomogeneousForm, Monomial};
use crate::algebra::matrix;
use crate::algebra::projective::zeros_on_subspace;
use crate::error::{Error, Result};
use crate::pencil::{SmoothnessCertificate, MAX_SEARCH_DEPTH};

use super::{delta_curve, StandardizedPencil};

pub const DELTA_DEGREE: i64 = 5;
pub const DELTA_GENUS: i64 = 2;
const CHI_RANGE: i64 = 10;

/// `binom(x, 3)` as a polynomial in `x`.
fn binom3(x: i64) -> i64 {
    x * (x - 1) * (x - 2) / 6
}

/// `chi(O_Delta(n))` from the resolution
/// `0 -> O(-4)^2 -> O(-2) + O(-3)^2 -> O -> O_Delta -> 0`.
pub fn chi(n: i64) -> i64 {
    binom3(n + 3) - binom3(n + 1) - 2 * binom3(n) + 2 * binom3(n - 1)
}

/// Dimension of `(S/I)_n` where `I` is generated by `forms`.
pub fn hilbert_function<F: Field>(field: &F, forms: &[&HomogeneousForm<F>], n: u32) -> Result<usize> {
    let nvars = forms
        .first()
        .map(|g| g.nvars())
        .ok_or_else(|| Error::InvalidInput("no generators".into()))?;
    let basis = monomials(nvars, n);
    let index: BTreeMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut rows = Vec::new();
    for g in forms {
        if g.is_zero(field) || g.degree() > n {
            continue;
        }
        for m in monomials(nvars, n - g.degree()) {
            let mut row = vec![field.zero(); basis.len()];
            for (gm, c) in g.terms() {
                row[index[&gm.mul(&m)]] = c.clone();
            }
            rows.push(row);
        }
    }
    let r = if rows.is_empty() { 0 } else { matrix::rank(field, &rows)? };
    Ok(basis.len() - r)
}

impl<F: Field> StandardizedPencil<F> {
    pub fn map_field<G: Field>(&self, target: &G, emb: impl Fn(&F::Elem) -> G::Elem) -> StandardizedPencil<G> {
        StandardizedPencil {
            field: target.clone(),
            change_of_coords: self
                .change_of_coords
                .iter()
                .map(|r| r.iter().map(&emb).collect())
                .collect(),
            l1: self.l1.map_coeffs(target, &emb),
            l2: self.l2.map_coeffs(target, &emb),
            q: self.q.map_coeffs(target, &emb),
            l1p: self.l1p.map_coeffs(target, &emb),
            l2p: self.l2p.map_coeffs(target, &emb),
            qp: self.qp.map_coeffs(target, &emb),
        }
    }
}

fn linear_coeffs(f: &FiniteField, l: &HomogeneousForm<FiniteField>) -> Vec<Fe> {
    (0..4).map(|i| l.coeff(f, &Monomial::var(i))).collect()
}

/// `Delta(F)`, sorted: the points where the two rows are dependent. For
/// each ratio `(a:b)` the points with `a row_1 + b row_2 = 0` are the zeros
/// of `a Q + b Qp` on the kernel of the two linear entries.
pub fn delta_points(s: &StandardizedPencil<FiniteField>, budget: u128) -> Result<Vec<Vec<Fe>>> {
    let f = &s.field;
    let values: Vec<Fe> = f.elements().collect();
    let [l1, l2, l1p, l2p] = [&s.l1, &s.l2, &s.l1p, &s.l2p].map(|l| linear_coeffs(f, l));
    let combine = |a: &Fe, b: &Fe, u: &[Fe], v: &[Fe]| -> Vec<Fe> {
        u.iter()
            .zip(v)
            .map(|(x, y)| f.add(&f.mul(a, x), &f.mul(b, y)))
            .collect()
    };
    let mut ratios = vec![(Fe::ONE, Fe::ZERO)];
    ratios.extend(values.iter().map(|&a| (a, Fe::ONE)));
    let mut pts = BTreeSet::new();
    for (a, b) in ratios {
        let sys = vec![combine(&a, &b, &l1, &l1p), combine(&a, &b, &l2, &l2p)];
        let ker = matrix::kernel(f, &sys, 4)?;
        let g = s.q.scale(f, &a).add(f, &s.qp.scale(f, &b));
        for y in zeros_on_subspace(f, std::slice::from_ref(&g), &ker, &values, budget)? {
            pts.insert(y);
        }
    }
    Ok(pts.into_iter().collect())
}

/// Some 2x2 minor is nonzero.
fn rank_at_least_two(f: &FiniteField, rows: &[Vec<Fe>]) -> bool {
    let n = rows[0].len();
    for (i, a) in rows.iter().enumerate() {
        for b in &rows[i + 1..] {
            for j in 0..n {
                for k in j + 1..n {
                    let m = f.sub(&f.mul(&a[j], &b[k]), &f.mul(&a[k], &b[j]));
                    if !f.is_zero(&m) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaInvariants {
    /// `chi(O_Delta(n))` for `n = 0..=10`.
    pub chi_table: Vec<i64>,
    /// Hilbert function of the minors for `n = 1..=10`, by linear algebra.
    pub hilbert_table: Vec<usize>,
    pub degree: i64,
    pub genus: i64,
    pub h0: i64,
    pub h1: i64,
    /// `#Delta(F_{q^k})` for `k = 1..=K`.
    pub point_counts: Vec<u64>,
    pub smooth_certificate: SmoothnessCertificate,
}

/// Degree and genus of `Delta` from the resolution, checked against the
/// Hilbert function of the minors, plus point counts and a Jacobian rank
/// check at every point over `F_{q^k}`, `k <= depth`.
pub fn delta_invariants(
    s: &StandardizedPencil<FiniteField>,
    depth: u32,
    budget: u128,
) -> Result<DeltaInvariants> {
    if depth == 0 {
        return Err(Error::InvalidInput("search depth must be at least 1".into()));
    }
    if depth > MAX_SEARCH_DEPTH {
        return Err(Error::UnsupportedField(format!(
            "search depth {depth} exceeds {MAX_SEARCH_DEPTH}"
        )));
    }
    let f = &s.field;
    let chi_table: Vec<i64> = (0..=CHI_RANGE).map(chi).collect();
    let degree = chi_table[1] - chi_table[0];
    let genus = 1 - chi_table[0];
    if (0..=CHI_RANGE).any(|n| chi_table[n as usize] != degree * n + 1 - genus) {
        return Err(Error::CertificateFailed("chi is not affine".into()));
    }
    let d = delta_curve(s);
    let mut hilbert_table = Vec::new();
    for n in 1..=CHI_RANGE {
        let h = hilbert_function(f, &d.minors(), n as u32)?;
        if h as i64 != chi(n) {
            return Err(Error::NotACurve(format!(
                "Hilbert function {h} in degree {n}, expected {}",
                chi(n)
            )));
        }
        hilbert_table.push(h);
    }

    let mut point_counts = Vec::new();
    for k in 1..=depth {
        let big = f.extension(k)?;
        let emb = f.embedding_into(&big)?;
        let sk = s.map_field(&big, |c: &Fe| emb[c.0 as usize]);
        let pts = delta_points(&sk, budget)?;
        let qk = big.q();
        if pts.len() as u64 > DELTA_DEGREE as u64 * (qk + 1) {
            return Err(Error::NotACurve(format!(
                "{} points over F_{qk}, more than a quintic curve has",
                pts.len()
            )));
        }
        let dk = delta_curve(&sk);
        let jac: Vec<Vec<HomogeneousForm<FiniteField>>> =
            dk.minors().iter().map(|m| m.jacobian_row(&big)).collect();
        for y in &pts {
            let rows: Vec<Vec<Fe>> = jac
                .iter()
                .map(|r| r.iter().map(|g| g.eval(&big, y)).collect())
                .collect();
            if !rank_at_least_two(&big, &rows) {
                let w: Vec<String> = y.iter().map(|c| big.format(c)).collect();
                return Err(Error::SingularDelta(format!(
                    "[{}] over {}",
                    w.join(", "),
                    big.spec()
                )));
            }
        }
        point_counts.push(pts.len() as u64);
    }
    let h0 = 1;
    Ok(DeltaInvariants {
        h1: h0 - chi_table[0],
        chi_table,
        hilbert_table,
        degree,
        genus,
        h0,
        point_counts,
        smooth_certificate: SmoothnessCertificate::BruteForceDepth { depth },
    })
}
