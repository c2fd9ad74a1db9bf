//! Homogeneous polynomials in a fixed number of variables.

use std::collections::BTreeMap;
use std::fmt;

use super::field::Field;
use super::matrix;
use crate::error::{Error, Result};

pub const MAX_VARS: usize = 8;

/// Exponent vector. Ordered so that `X0^2` sorts after `X5^2`; iteration in
/// reverse gives the familiar `X0^2 + X0*X1 + ...` order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(pub [u8; MAX_VARS]);

impl Monomial {
    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut m = [0u8; MAX_VARS];
        for (i, &e) in exps.iter().enumerate() {
            m[i] = e as u8;
        }
        Monomial(m)
    }

    pub fn var(i: usize) -> Self {
        let mut m = [0u8; MAX_VARS];
        m[i] = 1;
        Monomial(m)
    }

    /// `X_i * X_j` (a square when `i == j`).
    pub fn quadratic(i: usize, j: usize) -> Self {
        let mut m = [0u8; MAX_VARS];
        m[i] += 1;
        m[j] += 1;
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i] as u32
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = [0u8; MAX_VARS];
        for (i, v) in m.iter_mut().enumerate() {
            *v = self.0[i] + other.0[i];
        }
        Monomial(m)
    }

    /// Variables with multiplicity, e.g. `X0^2 X3` gives `[0, 0, 3]`.
    pub fn factors(&self) -> Vec<usize> {
        let mut v = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            for _ in 0..e {
                v.push(i);
            }
        }
        v
    }
}

/// All monomials of degree `d` in `n` variables.
pub fn monomials(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut [u8; MAX_VARS], out: &mut Vec<Monomial>) {
        if i == n - 1 {
            cur[i] = left as u8;
            out.push(Monomial(*cur));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u8;
            rec(n, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = [0u8; MAX_VARS];
    rec(n, 0, d, &mut cur, &mut out);
    out
}

pub struct HomogeneousForm<F: Field> {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> Clone for HomogeneousForm<F> {
    fn clone(&self) -> Self {
        HomogeneousForm {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.clone(),
        }
    }
}

impl<F: Field> fmt::Debug for HomogeneousForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HomogeneousForm")
            .field("nvars", &self.nvars)
            .field("degree", &self.degree)
            .field("terms", &self.terms)
            .finish()
    }
}

impl<F: Field> PartialEq for HomogeneousForm<F> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.degree == other.degree && self.terms == other.terms
    }
}

impl<F: Field> HomogeneousForm<F> {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        assert!(nvars >= 1 && nvars <= MAX_VARS);
        HomogeneousForm {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a form, summing repeated monomials and dropping zero
    /// coefficients. Every monomial must have degree `degree`.
    pub fn from_terms(
        field: &F,
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, F::Elem)>,
    ) -> Result<Self> {
        let mut f = Self::zero(nvars, degree);
        for (m, c) in terms {
            if m.degree() != degree || m.0[nvars..].iter().any(|&e| e != 0) {
                return Err(Error::InvalidInput(format!(
                    "monomial {m:?} does not have degree {degree} in {nvars} variables"
                )));
            }
            f.add_term(field, m, c);
        }
        Ok(f)
    }

    /// The linear form `sum c_i X_i`.
    pub fn linear(field: &F, coeffs: &[F::Elem]) -> Self {
        let mut f = Self::zero(coeffs.len(), 1);
        for (i, c) in coeffs.iter().enumerate() {
            f.add_term(field, Monomial::var(i), c.clone());
        }
        f
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        let mut f = Self::zero(nvars, 0);
        f.add_term(field, Monomial::default(), c);
        f
    }

    pub fn var(field: &F, nvars: usize, i: usize) -> Self {
        let mut f = Self::zero(nvars, 1);
        f.add_term(field, Monomial::var(i), field.one());
        f
    }

    pub fn add_term(&mut self, field: &F, m: Monomial, c: F::Elem) {
        debug_assert_eq!(m.degree(), self.degree);
        let new = match self.terms.get(&m) {
            Some(old) => field.add(old, &c),
            None => c,
        };
        if field.is_zero(&new) {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, new);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, field: &F, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| field.zero())
    }

    /// Zero up to the field's notion of zero (inexact series zeros count).
    pub fn is_zero(&self, field: &F) -> bool {
        self.terms.values().all(|c| field.is_zero(c))
    }

    pub fn add(&self, field: &F, other: &Self) -> Self {
        assert_eq!((self.nvars, self.degree), (other.nvars, other.degree));
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, *m, c.clone());
        }
        out
    }

    pub fn neg(&self, field: &F) -> Self {
        HomogeneousForm {
            nvars: self.nvars,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, field: &F, other: &Self) -> Self {
        self.add(field, &other.neg(field))
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> Self {
        let mut out = Self::zero(self.nvars, self.degree);
        for (m, x) in &self.terms {
            out.add_term(field, *m, field.mul(x, c));
        }
        out
    }

    pub fn mul(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars, self.degree + other.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(field, m1.mul(m2), field.mul(c1, c2));
            }
        }
        out
    }

    pub fn eval(&self, field: &F, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.nvars);
        let d = self.degree as usize;
        // powers[i * d + e - 1] = x_i^e
        let mut powers = Vec::with_capacity(self.nvars * d);
        for x in point {
            let mut p = x.clone();
            for _ in 0..d {
                let next = field.mul(&p, x);
                powers.push(std::mem::replace(&mut p, next));
            }
        }
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..self.nvars {
                let e = m.exp(i) as usize;
                if e > 0 {
                    t = field.mul(&t, &powers[i * d + e - 1]);
                }
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    /// Formal partial derivative with respect to `X_i`.
    pub fn partial(&self, field: &F, i: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[i] -= 1;
            out.add_term(field, dm, field.mul(c, &field.from_int(e as i64)));
        }
        out
    }

    /// The row of partial derivatives.
    pub fn jacobian_row(&self, field: &F) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial(field, i)).collect()
    }

    /// `f(g_0, .., g_{n-1})`, where all `g_i` are forms of one degree in a
    /// common set of variables.
    pub fn substitute(&self, field: &F, images: &[Self]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let m = images[0].nvars;
        let e = images[0].degree;
        let mut powers: Vec<Vec<Self>> = images
            .iter()
            .map(|g| vec![Self::constant(field, m, field.one()), g.clone()])
            .collect();
        let mut out = Self::zero(m, self.degree * e);
        for (mono, c) in &self.terms {
            let mut t = Self::constant(field, m, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let k = mono.exp(i) as usize;
                if k == 0 {
                    continue;
                }
                while pw.len() <= k {
                    let next = pw.last().unwrap().mul(field, &images[i]);
                    pw.push(next);
                }
                t = t.mul(field, &pw[k]);
            }
            for (mm, cc) in t.terms {
                out.add_term(field, mm, cc);
            }
        }
        out
    }

    /// `f(M X)`. This is a right action: substituting `M` then `N` equals
    /// substituting `M N`.
    pub fn substitute_linear(&self, field: &F, m: &[Vec<F::Elem>]) -> Result<Self> {
        if m.len() != self.nvars || m.iter().any(|r| r.len() != self.nvars) {
            return Err(Error::InvalidInput("matrix size does not match form".into()));
        }
        if field.is_zero(&matrix::det(field, m)?) {
            return Err(Error::SingularMatrix);
        }
        let images: Vec<Self> = m.iter().map(|row| Self::linear(field, row)).collect();
        Ok(self.substitute(field, &images))
    }

    /// Changes the coefficient field.
    pub fn map_coeffs<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> HomogeneousForm<G> {
        let mut out = HomogeneousForm::<G>::zero(self.nvars, self.degree);
        for (m, c) in &self.terms {
            out.add_term(target, *m, f(c));
        }
        out
    }

    /// Keeps only the first `n` variables, dropping every term that involves
    /// a later one (i.e. restricts to `X_n = .. = 0`).
    pub fn truncate_vars(&self, n: usize) -> Self {
        let mut out = Self::zero(n, self.degree);
        for (m, c) in &self.terms {
            if m.0[n..].iter().all(|&e| e == 0) {
                out.terms.insert(*m, c.clone());
            }
        }
        out
    }

    /// Reinterprets a form in `n <= m` variables as a form in `m` variables.
    pub fn extend_vars(&self, m: usize) -> Self {
        assert!(m >= self.nvars && m <= MAX_VARS);
        HomogeneousForm {
            nvars: m,
            degree: self.degree,
            terms: self.terms.clone(),
        }
    }

    pub fn display(&self, field: &F) -> String {
        self.display_with(field, "X")
    }

    pub fn display_with(&self, field: &F, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut vars = Vec::new();
            for i in 0..self.nvars {
                match m.exp(i) {
                    0 => {}
                    1 => vars.push(format!("{var}{i}")),
                    e => vars.push(format!("{var}{i}^{e}")),
                }
            }
            let cs = field.format(c);
            let cs = crate::algebra::field::as_factor(cs);
            let mono = vars.join("*");
            parts.push(if mono.is_empty() {
                cs
            } else if cs == "1" {
                mono
            } else {
                format!("{cs}*{mono}")
            });
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::finite::{Fe, FiniteField};

    fn f7() -> FiniteField {
        FiniteField::prime(7).unwrap()
    }

    #[test]
    fn monomial_count() {
        assert_eq!(monomials(6, 2).len(), 21);
        assert_eq!(monomials(4, 3).len(), 20);
        assert_eq!(monomials(2, 6).len(), 7);
    }

    #[test]
    fn jacobian_examples() {
        let f = f7();
        let x0sq = HomogeneousForm::from_terms(&f, 6, 2, [(Monomial::quadratic(0, 0), Fe(1))])
            .unwrap();
        let row = x0sq.jacobian_row(&f);
        assert_eq!(row[0], HomogeneousForm::linear(&f, &[Fe(2), Fe(0), Fe(0), Fe(0), Fe(0), Fe(0)]));
        assert!(row[1..].iter().all(|g| g.is_zero(&f)));

        let f2 = FiniteField::prime(2).unwrap();
        let x0x1 = HomogeneousForm::from_terms(&f2, 6, 2, [(Monomial::quadratic(0, 1), Fe(1))])
            .unwrap();
        let row = x0x1.jacobian_row(&f2);
        assert_eq!(row[0], HomogeneousForm::var(&f2, 6, 1));
        assert_eq!(row[1], HomogeneousForm::var(&f2, 6, 0));
    }

    #[test]
    fn substitute_identity_and_swap() {
        let f = f7();
        let x0x1 = HomogeneousForm::from_terms(&f, 2, 2, [(Monomial::quadratic(0, 1), Fe(1))])
            .unwrap();
        let swap = vec![vec![Fe(0), Fe(1)], vec![Fe(1), Fe(0)]];
        assert_eq!(x0x1.substitute_linear(&f, &swap).unwrap(), x0x1);
        let singular = vec![vec![Fe(1), Fe(1)], vec![Fe(1), Fe(1)]];
        assert_eq!(
            x0x1.substitute_linear(&f, &singular),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn display_order() {
        let f = f7();
        let q = HomogeneousForm::from_terms(
            &f,
            3,
            2,
            [
                (Monomial::quadratic(2, 2), Fe(3)),
                (Monomial::quadratic(0, 0), Fe(1)),
                (Monomial::quadratic(0, 1), Fe(2)),
            ],
        )
        .unwrap();
        assert_eq!(q.display(&f), "X0^2 + 2*X0*X1 + 3*X2^2");
    }
}
