//! Pencils of quadrics in `P^5` and smoothness of their base locus.

use serde::Serialize;

use crate::algebra::binary::{poly_det, BinaryForm, Poly};
use crate::algebra::field::{Field, FieldSpec};
use crate::algebra::finite::{Fe, FiniteField};
use crate::algebra::form::{monomials, HomogeneousForm, Monomial};
use crate::algebra::laurent::Laurent;
use crate::algebra::matrix::{self, Matrix};
use crate::algebra::projective::{for_each_projective_point, zeros_on_subspace};
use crate::algebra::rational::Rationals;
use crate::error::{Error, Result};

pub const NVARS: usize = 6;

/// Deepest extension degree accepted by the smoothness search.
pub const MAX_SEARCH_DEPTH: u32 = 4;

/// Evaluation budget for brute-force searches.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Two linearly independent quadratic forms in `X0..X5`; their common zero
/// locus is `X`.
pub struct Pencil<F: Field> {
    field: F,
    q: [HomogeneousForm<F>; 2],
}

impl<F: Field> Clone for Pencil<F> {
    fn clone(&self) -> Self {
        Pencil {
            field: self.field.clone(),
            q: self.q.clone(),
        }
    }
}

impl<F: Field> std::fmt::Debug for Pencil<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Pencil")
            .field("field", &self.field.spec())
            .field("q1", &self.q[0].display(&self.field))
            .field("q2", &self.q[1].display(&self.field))
            .finish()
    }
}

impl<F: Field> PartialEq for Pencil<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field.spec() == other.field.spec() && self.q == other.q
    }
}

impl<F: Field> Pencil<F> {
    pub fn new(field: F, q1: HomogeneousForm<F>, q2: HomogeneousForm<F>) -> Result<Self> {
        for q in [&q1, &q2] {
            if q.nvars() != NVARS || q.degree() != 2 {
                return Err(Error::InvalidInput(
                    "pencil forms must be quadrics in 6 variables".into(),
                ));
            }
        }
        let mons = monomials(NVARS, 2);
        let rows: Matrix<F::Elem> = [&q1, &q2]
            .iter()
            .map(|q| mons.iter().map(|m| q.coeff(&field, m)).collect())
            .collect();
        if matrix::rank(&field, &rows)? < 2 {
            return Err(Error::DependentForms);
        }
        Ok(Pencil { field, q: [q1, q2] })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn q1(&self) -> &HomogeneousForm<F> {
        &self.q[0]
    }

    pub fn q2(&self) -> &HomogeneousForm<F> {
        &self.q[1]
    }

    pub fn forms(&self) -> &[HomogeneousForm<F>; 2] {
        &self.q
    }

    pub fn eval(&self, x: &[F::Elem]) -> [F::Elem; 2] {
        [
            self.q[0].eval(&self.field, x),
            self.q[1].eval(&self.field, x),
        ]
    }

    pub fn vanishes_at(&self, x: &[F::Elem]) -> bool {
        self.eval(x).iter().all(|v| self.field.is_zero(v))
    }

    /// Matrix of the polar form `b(x, y) = q(x + y) - q(x) - q(y)`:
    /// `B_ii = 2 c_ii`, `B_ij = c_ij`. The gradient of `q` at `x` is `B x`.
    pub fn polar_matrix(&self, e: usize) -> Matrix<F::Elem> {
        let f = &self.field;
        let mut b = matrix::zeros(f, NVARS, NVARS);
        for (m, c) in self.q[e].terms() {
            let v = m.factors();
            let (i, j) = (v[0], v[1]);
            if i == j {
                b[i][i] = f.add(c, c);
            } else {
                b[i][j] = c.clone();
                b[j][i] = c.clone();
            }
        }
        b
    }

    /// Symmetric Gram matrix: `A_ii = c_ii`, `A_ij = c_ij / 2`.
    pub fn gram(&self, e: usize) -> Result<Matrix<F::Elem>> {
        let f = &self.field;
        if f.characteristic() == 2 {
            return Err(Error::CharTwo);
        }
        let half = f.inv(&f.from_int(2))?;
        let mut a = matrix::zeros(f, NVARS, NVARS);
        for (m, c) in self.q[e].terms() {
            let v = m.factors();
            let (i, j) = (v[0], v[1]);
            if i == j {
                a[i][i] = c.clone();
            } else {
                let h = f.mul(c, &half);
                a[i][j] = h.clone();
                a[j][i] = h;
            }
        }
        Ok(a)
    }

    /// Polar form `b_e(x, y)`.
    pub fn bilinear(&self, e: usize, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in self.q[e].terms() {
            let v = m.factors();
            let (i, j) = (v[0], v[1]);
            let t = if i == j {
                f.mul(&f.add(c, c), &f.mul(&x[i], &y[i]))
            } else {
                f.mul(c, &f.add(&f.mul(&x[i], &y[j]), &f.mul(&x[j], &y[i])))
            };
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// The 2x6 Jacobian matrix at `x`.
    pub fn jacobian_at(&self, x: &[F::Elem]) -> Matrix<F::Elem> {
        (0..2)
            .map(|e| matrix::mul_vec(&self.field, &self.polar_matrix(e), x))
            .collect()
    }

    /// Singular point of `X`: both forms vanish and the Jacobian has rank at
    /// most 1.
    pub fn is_singular_point(&self, x: &[F::Elem]) -> Result<bool> {
        Ok(self.vanishes_at(x) && matrix::rank(&self.field, &self.jacobian_at(x))? <= 1)
    }

    /// The pencil `q_e(M X)`.
    pub fn substitute(&self, m: &[Vec<F::Elem>]) -> Result<Self> {
        Ok(Pencil {
            field: self.field.clone(),
            q: [
                self.q[0].substitute_linear(&self.field, m)?,
                self.q[1].substitute_linear(&self.field, m)?,
            ],
        })
    }

    /// Base change along a field map.
    pub fn map_field<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> Result<Pencil<G>> {
        Pencil::new(
            target.clone(),
            self.q[0].map_coeffs(target, &f),
            self.q[1].map_coeffs(target, &f),
        )
    }
}

impl Pencil<FiniteField> {
    /// The same pencil over `F_{q^k}`.
    pub fn extend(&self, k: u32) -> Result<Pencil<FiniteField>> {
        if k == 1 {
            return Ok(self.clone());
        }
        let big = self.field.extension(k)?;
        let emb = self.field.embedding_into(&big)?;
        self.map_field(&big, |c: &Fe| emb[c.0 as usize])
    }
}

/// `det(λA + μB)` for the Gram matrices of `q1`, `q2`.
pub fn pencil_discriminant_sextic<F: Field>(p: &Pencil<F>) -> Result<BinaryForm<F>> {
    let f = p.field();
    let a = p.gram(0)?;
    let b = p.gram(1)?;
    let m: Vec<Vec<Poly<F>>> = (0..NVARS)
        .map(|i| {
            (0..NVARS)
                .map(|j| Poly::linear(f, b[i][j].clone(), a[i][j].clone()))
                .collect()
        })
        .collect();
    Ok(BinaryForm::from_poly(f, &poly_det(f, &m)?, NVARS))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SmoothnessVerdict {
    Smooth,
    /// `witness` lies in `P^5(F_{q^k})`, coordinates formatted in `field`.
    Singular {
        witness: Vec<String>,
        field: FieldSpec,
        extension_degree: u32,
    },
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SmoothnessCertificate {
    SeparableSextic,
    BruteForceDepth { depth: u32 },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothnessReport {
    pub verdict: SmoothnessVerdict,
    pub certificate: SmoothnessCertificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sextic: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl SmoothnessReport {
    pub fn is_smooth(&self) -> bool {
        self.verdict == SmoothnessVerdict::Smooth
    }

    pub fn is_singular(&self) -> bool {
        matches!(self.verdict, SmoothnessVerdict::Singular { .. })
    }

    /// Error for callers that need smoothness.
    pub fn require_not_singular(&self) -> Result<()> {
        match &self.verdict {
            SmoothnessVerdict::Singular {
                witness,
                extension_degree,
                ..
            } => Err(Error::Singular(format!(
                "singular point ({}) over an extension of degree {extension_degree}",
                witness.join(", ")
            ))),
            _ => Ok(()),
        }
    }
}

pub trait SmoothnessCheck {
    /// Smoothness of `X`; `max_extension` bounds any brute-force search.
    fn smoothness_check(&self, max_extension: u32) -> Result<SmoothnessReport>;
}

fn check_depth(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidInput("max extension must be at least 1".into()));
    }
    if k > MAX_SEARCH_DEPTH {
        return Err(Error::UnsupportedField(format!(
            "extension depth {k} exceeds {MAX_SEARCH_DEPTH}"
        )));
    }
    Ok(())
}

/// First singular point of `X(F_q)` in canonical order: for each `(λ:μ)`
/// the candidates are the zeros of both forms on `ker(λB_1 + μB_2)`.
pub fn singular_witness(p: &Pencil<FiniteField>) -> Result<Option<Vec<Fe>>> {
    let f = p.field();
    let vals: Vec<Fe> = f.elements().collect();
    let b1 = p.polar_matrix(0);
    let b2 = p.polar_matrix(1);
    let mut found = None;
    let mut err = None;
    for_each_projective_point(f, &vals, 2, |lm| {
        let m: Matrix<Fe> = (0..NVARS)
            .map(|i| {
                (0..NVARS)
                    .map(|j| f.add(&f.mul(&lm[0], &b1[i][j]), &f.mul(&lm[1], &b2[i][j])))
                    .collect()
            })
            .collect();
        let ker = match matrix::kernel(f, &m, NVARS) {
            Ok(k) => k,
            Err(e) => {
                err = Some(e);
                return false;
            }
        };
        if ker.is_empty() {
            return true;
        }
        match zeros_on_subspace(f, p.forms(), &ker, &vals, DEFAULT_BUDGET) {
            Ok(pts) => {
                if let Some(x) = pts.into_iter().next() {
                    found = Some(x);
                    return false;
                }
                true
            }
            Err(e) => {
                err = Some(e);
                false
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    if let Some(x) = &found {
        debug_assert!(p.is_singular_point(x).unwrap_or(false));
    }
    Ok(found)
}

fn search_witness(p: &Pencil<FiniteField>, max_extension: u32) -> Result<Option<SmoothnessVerdict>> {
    for k in 1..=max_extension {
        let pk = p.extend(k)?;
        if let Some(x) = singular_witness(&pk)? {
            let f = pk.field();
            return Ok(Some(SmoothnessVerdict::Singular {
                witness: x.iter().map(|c| f.format(c)).collect(),
                field: f.spec(),
                extension_degree: k,
            }));
        }
    }
    Ok(None)
}

impl SmoothnessCheck for Pencil<FiniteField> {
    fn smoothness_check(&self, max_extension: u32) -> Result<SmoothnessReport> {
        check_depth(max_extension)?;
        let f = self.field();
        if f.characteristic() == 2 {
            let verdict = search_witness(self, max_extension)?;
            return Ok(match verdict {
                Some(v) => SmoothnessReport {
                    verdict: v,
                    certificate: SmoothnessCertificate::BruteForceDepth {
                        depth: max_extension,
                    },
                    sextic: None,
                    note: None,
                },
                None => SmoothnessReport {
                    verdict: SmoothnessVerdict::Unknown,
                    certificate: SmoothnessCertificate::BruteForceDepth {
                        depth: max_extension,
                    },
                    sextic: None,
                    note: Some(format!("smoothness: assumed beyond depth {max_extension}")),
                },
            });
        }
        let sextic = pencil_discriminant_sextic(self)?;
        let shown = Some(sextic.display(f));
        if !sextic.is_zero(f) && sextic.is_separable(f)? {
            return Ok(SmoothnessReport {
                verdict: SmoothnessVerdict::Smooth,
                certificate: SmoothnessCertificate::SeparableSextic,
                sextic: shown,
                note: None,
            });
        }
        let verdict = search_witness(self, max_extension)?;
        Ok(SmoothnessReport {
            verdict: verdict.unwrap_or(SmoothnessVerdict::Unknown),
            certificate: SmoothnessCertificate::BruteForceDepth {
                depth: max_extension,
            },
            sextic: shown,
            note: Some("discriminant sextic is not separable".into()),
        })
    }
}

impl SmoothnessCheck for Pencil<Rationals> {
    fn smoothness_check(&self, max_extension: u32) -> Result<SmoothnessReport> {
        check_depth(max_extension)?;
        let f = self.field();
        let sextic = pencil_discriminant_sextic(self)?;
        let shown = Some(sextic.display(f));
        if !sextic.is_zero(f) && sextic.is_separable(f)? {
            Ok(SmoothnessReport {
                verdict: SmoothnessVerdict::Smooth,
                certificate: SmoothnessCertificate::SeparableSextic,
                sextic: shown,
                note: None,
            })
        } else {
            Ok(SmoothnessReport {
                verdict: SmoothnessVerdict::Unknown,
                certificate: SmoothnessCertificate::None,
                sextic: shown,
                note: Some("discriminant sextic is not separable; no witness search over Q".into()),
            })
        }
    }
}

/// The pencil with coefficients read as Laurent polynomials and evaluated
/// at `t = t0` (`t0` nonzero).
pub fn specialize<B: Field, G: Field>(
    p: &Pencil<Laurent<B>>,
    target: &G,
    map: impl Fn(&B::Elem) -> G::Elem,
    t0: &G::Elem,
) -> Result<Pencil<G>> {
    let lf = p.field();
    let t0inv = target.inv(t0)?;
    let eval = |c: &crate::algebra::laurent::Series<B::Elem>| -> G::Elem {
        let Some(v) = c.valuation() else {
            return target.zero();
        };
        let mut acc = target.zero();
        for (i, d) in c.digits().iter().enumerate() {
            if lf.base().is_zero(d) {
                continue;
            }
            let e = v + i as i64;
            let pw = if e >= 0 {
                target.pow(t0, e as u64)
            } else {
                target.pow(&t0inv, (-e) as u64)
            };
            acc = target.add(&acc, &target.mul(&map(d), &pw));
        }
        acc
    };
    p.map_field(target, eval)
}

fn laurent_report<G: Field>(
    specializations: impl Iterator<Item = Result<Option<(Pencil<G>, String)>>>,
) -> Result<SmoothnessReport> {
    for s in specializations {
        let Some((sp, at)) = s? else { continue };
        let f = sp.field();
        let sextic = pencil_discriminant_sextic(&sp)?;
        if !sextic.is_zero(f) && sextic.is_separable(f)? {
            return Ok(SmoothnessReport {
                verdict: SmoothnessVerdict::Smooth,
                certificate: SmoothnessCertificate::SeparableSextic,
                sextic: Some(sextic.display(f)),
                note: Some(format!("generic fiber certified by the specialization {at}")),
            });
        }
    }
    Ok(SmoothnessReport {
        verdict: SmoothnessVerdict::Unknown,
        certificate: SmoothnessCertificate::None,
        sextic: None,
        note: Some("no specialization with a separable discriminant sextic".into()),
    })
}

impl SmoothnessCheck for Pencil<Laurent<FiniteField>> {
    fn smoothness_check(&self, max_extension: u32) -> Result<SmoothnessReport> {
        check_depth(max_extension)?;
        let base = self.field().base().clone();
        let var = self.field().var().to_string();
        if base.characteristic() == 2 {
            return Ok(SmoothnessReport {
                verdict: SmoothnessVerdict::Unknown,
                certificate: SmoothnessCertificate::None,
                sextic: None,
                note: Some("characteristic 2: smoothness of the generic fiber assumed".into()),
            });
        }
        let mut out = None;
        for k in 1..=max_extension {
            let big = base.extension(k)?;
            let emb = base.embedding_into(&big)?;
            let specs = big.elements().skip(1).map(|t0| {
                let at = format!("{var} = {} in {}", big.format(&t0), big.spec());
                match specialize(self, &big, |c: &Fe| emb[c.0 as usize], &t0) {
                    Ok(sp) => Ok(Some((sp, at))),
                    Err(Error::DependentForms) => Ok(None),
                    Err(e) => Err(e),
                }
            });
            let r = laurent_report(specs)?;
            if r.is_smooth() {
                return Ok(r);
            }
            out = Some(r);
        }
        Ok(out.unwrap())
    }
}

impl SmoothnessCheck for Pencil<Laurent<Rationals>> {
    fn smoothness_check(&self, max_extension: u32) -> Result<SmoothnessReport> {
        check_depth(max_extension)?;
        let var = self.field().var().to_string();
        let q = Rationals;
        let specs = (1..=8 * max_extension as i64).map(|t| {
            let t0 = q.from_int(t);
            match specialize(self, &q, |c| c.clone(), &t0) {
                Ok(sp) => Ok(Some((sp, format!("{var} = {t}")))),
                Err(Error::DependentForms) => Ok(None),
                Err(e) => Err(e),
            }
        });
        laurent_report(specs)
    }
}

/// `sum_i a_i X_i^2` as a form over `field`.
pub fn diagonal_form<F: Field>(field: &F, a: &[F::Elem]) -> HomogeneousForm<F> {
    let mut q = HomogeneousForm::zero(a.len(), 2);
    for (i, c) in a.iter().enumerate() {
        q.add_term(field, Monomial::quadratic(i, i), c.clone());
    }
    q
}

/// The pencil `{sum X_i^2 = 0, sum a_i X_i^2 = 0}`.
pub fn diagonal_pencil<F: Field>(field: &F, a: &[F::Elem]) -> Result<Pencil<F>> {
    assert_eq!(a.len(), NVARS);
    let ones = vec![field.one(); NVARS];
    Pencil::new(
        field.clone(),
        diagonal_form(field, &ones),
        diagonal_form(field, a),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> FiniteField {
        FiniteField::prime(7).unwrap()
    }

    fn diag7(a: [u32; 6]) -> Pencil<FiniteField> {
        let f = f7();
        diagonal_pencil(&f, &a.map(Fe)).unwrap()
    }

    #[test]
    fn dependent_forms_rejected() {
        let f = f7();
        let q = diagonal_form(&f, &[Fe(1); 6]);
        let q3 = q.scale(&f, &Fe(3));
        assert_eq!(Pencil::new(f, q, q3).unwrap_err(), Error::DependentForms);
    }

    #[test]
    fn sextic_of_diagonal_pencil() {
        let p = diag7([0, 1, 2, 3, 4, 5]);
        let f = p.field().clone();
        let s = pencil_discriminant_sextic(&p).unwrap();
        // independent expansion of prod (λ + a_i μ) at μ = 1
        let mut prod = Poly::constant(&f, Fe(1));
        for a in 0..6 {
            prod = prod.mul(&f, &Poly::linear(&f, Fe(a), Fe(1)));
        }
        assert_eq!(s.dehomogenize(&f), prod);
        assert!(s.is_separable(&f).unwrap());
    }

    #[test]
    fn sextic_with_repeated_factor() {
        let f = f7();
        let p = Pencil::new(
            f.clone(),
            diagonal_form(&f, &[Fe(1); 6]),
            diagonal_form(&f, &[Fe(1), Fe(1), Fe(1), Fe(1), Fe(1), Fe(2)]),
        )
        .unwrap();
        let s = pencil_discriminant_sextic(&p).unwrap();
        let mut expect = Poly::constant(&f, Fe(1));
        for _ in 0..5 {
            expect = expect.mul(&f, &Poly::linear(&f, Fe(1), Fe(1)));
        }
        expect = expect.mul(&f, &Poly::linear(&f, Fe(2), Fe(1)));
        assert_eq!(s.dehomogenize(&f), expect);
        assert!(!s.is_separable(&f).unwrap());
    }

    #[test]
    fn smooth_and_singular_diagonal() {
        let r = diag7([0, 1, 2, 3, 4, 5]).smoothness_check(2).unwrap();
        assert!(r.is_smooth());
        let p = diag7([0, 0, 2, 3, 4, 5]);
        let r = p.smoothness_check(2).unwrap();
        let SmoothnessVerdict::Singular {
            witness,
            extension_degree,
            ..
        } = r.verdict
        else {
            panic!("expected a witness, got {r:?}");
        };
        // X0^2 + X1^2 = 0 needs sqrt(-1), absent from F_7
        assert_eq!(extension_degree, 2);
        let pk = p.extend(2).unwrap();
        let x: Vec<Fe> = witness.iter().map(|s| pk.field().parse(s).unwrap()).collect();
        assert!(pk.is_singular_point(&x).unwrap());
    }

    #[test]
    fn char_two_needs_depth_guard() {
        let f = FiniteField::new(2, 2).unwrap();
        let q1 = HomogeneousForm::from_terms(
            &f,
            6,
            2,
            [
                (Monomial::quadratic(0, 1), Fe(1)),
                (Monomial::quadratic(2, 3), Fe(1)),
                (Monomial::quadratic(4, 5), Fe(1)),
            ],
        )
        .unwrap();
        let q2 = diagonal_form(&f, &[Fe(1); 6]);
        let p = Pencil::new(f, q1, q2).unwrap();
        assert!(matches!(
            p.smoothness_check(5),
            Err(Error::UnsupportedField(_))
        ));
        assert_eq!(pencil_discriminant_sextic(&p).unwrap_err(), Error::CharTwo);
    }

    #[test]
    fn laurent_generic_fiber() {
        let f = f7();
        let l = Laurent::new(f, 4).unwrap();
        let t = l.uniformizer();
        let mut c1 = vec![t.clone(), t.clone()];
        c1.extend((0..4).map(|_| l.one()));
        let mut c2 = vec![l.zero(), t.clone()];
        c2.extend((2..6).map(|i| l.from_int(i)));
        let p = Pencil::new(l.clone(), diagonal_form(&l, &c1), diagonal_form(&l, &c2)).unwrap();
        assert!(p.smoothness_check(1).unwrap().is_smooth());
    }
}
