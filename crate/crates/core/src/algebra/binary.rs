//! Univariate polynomials and binary forms.

use std::fmt;

use super::field::Field;
use super::matrix;
use crate::error::{Error, Result};

/// Polynomial in one variable, coefficients from the constant term up, with
/// no trailing zeros.
pub struct Poly<F: Field> {
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Clone for Poly<F> {
    fn clone(&self) -> Self {
        Poly {
            coeffs: self.coeffs.clone(),
        }
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Poly").field(&self.coeffs).finish()
    }
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> Poly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `a + b x`.
    pub fn linear(field: &F, a: F::Elem, b: F::Elem) -> Self {
        Self::new(field, vec![a, b])
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, field: &F, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, field: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            field,
            (0..n)
                .map(|i| field.add(&self.coeff(field, i), &other.coeff(field, i)))
                .collect(),
        )
    }

    pub fn neg(&self, field: &F) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| field.neg(c)).collect(),
        }
    }

    pub fn sub(&self, field: &F, other: &Self) -> Self {
        self.add(field, &other.neg(field))
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> Self {
        Self::new(field, self.coeffs.iter().map(|x| field.mul(x, c)).collect())
    }

    pub fn mul(&self, field: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        Self::new(field, out)
    }

    pub fn eval(&self, field: &F, x: &F::Elem) -> F::Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
    }

    pub fn derivative(&self, field: &F) -> Self {
        Self::new(
            field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| field.mul(c, &field.from_int(i as i64)))
                .collect(),
        )
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn divrem(&self, field: &F, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = field.inv(d.leading().unwrap())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![field.zero(); r.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = field.mul(&r[k + dd], &lead_inv);
            if field.is_zero(&c) {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = field.sub(&r[k + j], &field.mul(&c, dc));
            }
            quot[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(field, quot), Self::new(field, r)))
    }

    pub fn monic(&self, field: &F) -> Result<Self> {
        match self.leading() {
            None => Ok(Self::zero()),
            Some(l) => Ok(self.scale(field, &field.inv(l)?)),
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, field: &F, other: &Self) -> Result<Self> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(field, &b)?;
            a = b;
            b = r;
        }
        a.monic(field)
    }

    /// No repeated factor over the algebraic closure. Constants count as
    /// squarefree, the zero polynomial does not.
    pub fn is_squarefree(&self, field: &F) -> Result<bool> {
        match self.degree() {
            None => Ok(false),
            Some(0) => Ok(true),
            Some(_) => Ok(self.gcd(field, &self.derivative(field))?.degree() == Some(0)),
        }
    }

    /// Resultant as the determinant of the Sylvester matrix.
    pub fn resultant(&self, field: &F, other: &Self) -> Result<F::Elem> {
        let (Some(m), Some(n)) = (self.degree(), other.degree()) else {
            return Ok(field.zero());
        };
        if m + n == 0 {
            return Ok(field.one());
        }
        let size = m + n;
        let mut syl = matrix::zeros(field, size, size);
        for i in 0..n {
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                syl[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in other.coeffs.iter().rev().enumerate() {
                syl[n + i][i + j] = c.clone();
            }
        }
        matrix::det(field, &syl)
    }

    pub fn display(&self, field: &F, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if field.is_zero(c) {
                continue;
            }
            let cs = field.format(c);
            let cs = crate::algebra::field::as_factor(cs);
            parts.push(match i {
                0 => cs,
                _ => {
                    let v = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                    if cs == "1" {
                        v
                    } else {
                        format!("{cs}*{v}")
                    }
                }
            });
        }
        parts.join(" + ")
    }
}

/// Determinant of a square matrix of polynomials (Laplace expansion along
/// the first row, memoized on column subsets).
pub fn poly_det<F: Field>(field: &F, m: &[Vec<Poly<F>>]) -> Result<Poly<F>> {
    let n = m.len();
    assert!(n <= 16 && m.iter().all(|r| r.len() == n));
    let mut memo: std::collections::HashMap<u32, Poly<F>> = std::collections::HashMap::new();
    fn rec<F: Field>(
        field: &F,
        m: &[Vec<Poly<F>>],
        row: usize,
        cols: u32,
        memo: &mut std::collections::HashMap<u32, Poly<F>>,
    ) -> Poly<F> {
        if row == m.len() {
            return Poly::constant(field, field.one());
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let mut acc = Poly::zero();
        let mut sign_neg = false;
        for c in 0..m.len() {
            if cols & (1 << c) != 0 {
                continue;
            }
            if !m[row][c].is_zero() {
                let minor = rec(field, m, row + 1, cols | (1 << c), memo);
                let t = m[row][c].mul(field, &minor);
                acc = if sign_neg { acc.sub(field, &t) } else { acc.add(field, &t) };
            }
            sign_neg = !sign_neg;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    Ok(rec(field, m, 0, 0, &mut memo))
}

/// Binary form of degree `d` in `(λ, μ)`; `coeffs[i]` multiplies
/// `λ^i μ^(d-i)`.
pub struct BinaryForm<F: Field> {
    degree: usize,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Clone for BinaryForm<F> {
    fn clone(&self) -> Self {
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.clone(),
        }
    }
}

impl<F: Field> fmt::Debug for BinaryForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BinaryForm")
            .field("degree", &self.degree)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

impl<F: Field> PartialEq for BinaryForm<F> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.coeffs == other.coeffs
    }
}

impl<F: Field> BinaryForm<F> {
    /// Homogenizes `p(λ)` to degree `d`.
    pub fn from_poly(field: &F, p: &Poly<F>, degree: usize) -> Self {
        assert!(p.degree().map_or(true, |e| e <= degree));
        BinaryForm {
            degree,
            coeffs: (0..=degree).map(|i| p.coeff(field, i)).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self, field: &F) -> bool {
        self.coeffs.iter().all(|c| field.is_zero(c))
    }

    /// Value at `μ = 1`.
    pub fn dehomogenize(&self, field: &F) -> Poly<F> {
        Poly::new(field, self.coeffs.clone())
    }

    pub fn eval(&self, field: &F, lambda: &F::Elem, mu: &F::Elem) -> F::Elem {
        let mut acc = field.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let t = field.mul(
                &field.mul(c, &field.pow(lambda, i as u64)),
                &field.pow(mu, (self.degree - i) as u64),
            );
            acc = field.add(&acc, &t);
        }
        acc
    }

    /// Multiplicity of the root `(1:0)`.
    pub fn infinity_multiplicity(&self, field: &F) -> usize {
        self.coeffs
            .iter()
            .rev()
            .take_while(|c| field.is_zero(c))
            .count()
    }

    /// Nonzero with `degree` distinct roots in `P^1` over the algebraic
    /// closure.
    pub fn is_separable(&self, field: &F) -> Result<bool> {
        if self.is_zero(field) {
            return Err(Error::ZeroForm);
        }
        if self.infinity_multiplicity(field) > 1 {
            return Ok(false);
        }
        self.dehomogenize(field).is_squarefree(field)
    }

    /// Resultant of two binary forms (Sylvester determinant on the full
    /// coefficient vectors); zero iff they share a root in `P^1`.
    pub fn resultant(&self, field: &F, other: &Self) -> Result<F::Elem> {
        let (m, n) = (self.degree, other.degree);
        if m + n == 0 {
            return Ok(field.one());
        }
        let size = m + n;
        let mut syl = matrix::zeros(field, size, size);
        for i in 0..n {
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                syl[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in other.coeffs.iter().rev().enumerate() {
                syl[n + i][i + j] = c.clone();
            }
        }
        matrix::det(field, &syl)
    }

    pub fn display(&self, field: &F) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if field.is_zero(c) {
                continue;
            }
            let j = self.degree - i;
            let mut v = Vec::new();
            match i {
                0 => {}
                1 => v.push("l".to_string()),
                _ => v.push(format!("l^{i}")),
            }
            match j {
                0 => {}
                1 => v.push("m".to_string()),
                _ => v.push(format!("m^{j}")),
            }
            let cs = field.format(c);
            let cs = crate::algebra::field::as_factor(cs);
            let mono = v.join("*");
            parts.push(if mono.is_empty() {
                cs
            } else if cs == "1" {
                mono
            } else {
                format!("{cs}*{mono}")
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::finite::{Fe, FiniteField};
    use crate::algebra::rational::Rationals;

    fn p(c: &[i64]) -> Poly<Rationals> {
        Poly::new(&Rationals, c.iter().map(|&x| Rationals.from_int(x)).collect())
    }

    #[test]
    fn gcd_and_divrem() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.divrem(&Rationals, &b).unwrap();
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&Rationals, &p(&[-1, 1])).unwrap(), p(&[-1, 1]));
    }

    #[test]
    fn squarefree() {
        assert!(p(&[-1, 0, 1]).is_squarefree(&Rationals).unwrap());
        assert!(!p(&[1, 2, 1]).is_squarefree(&Rationals).unwrap());
        let f3 = FiniteField::prime(3).unwrap();
        // x^3 - 1 = (x - 1)^3 in characteristic 3
        let c = Poly::new(&f3, vec![Fe(2), Fe(0), Fe(0), Fe(1)]);
        assert!(!c.is_squarefree(&f3).unwrap());
    }

    #[test]
    fn resultant_detects_common_root() {
        assert_eq!(
            p(&[-1, 0, 1]).resultant(&Rationals, &p(&[-1, 1])).unwrap(),
            Rationals.zero()
        );
        // res(x^2 + 1, x - 2) = 5
        assert_eq!(
            p(&[1, 0, 1]).resultant(&Rationals, &p(&[-2, 1])).unwrap(),
            Rationals.from_int(5)
        );
    }

    #[test]
    fn binary_separability() {
        // λ μ (λ - μ): three distinct points including both ends
        let f = BinaryForm::from_poly(&Rationals, &p(&[0, -1, 1]), 3);
        assert_eq!(f.infinity_multiplicity(&Rationals), 1);
        assert!(f.is_separable(&Rationals).unwrap());
        let g = BinaryForm::from_poly(&Rationals, &p(&[0, -1, 1]), 4);
        assert!(!g.is_separable(&Rationals).unwrap());
        let z = BinaryForm::from_poly(&Rationals, &Poly::zero(), 2);
        assert_eq!(z.is_separable(&Rationals), Err(Error::ZeroForm));
    }

    #[test]
    fn poly_det_matches_pointwise() {
        let x = |a: i64, b: i64| p(&[a, b]);
        let m = vec![vec![x(1, 2), x(0, 1)], vec![x(3, 0), x(1, -1)]];
        let d = poly_det(&Rationals, &m).unwrap();
        for t in -3..4 {
            let tv = Rationals.from_int(t);
            let ev: Vec<Vec<_>> = m
                .iter()
                .map(|r| r.iter().map(|e| e.eval(&Rationals, &tv)).collect())
                .collect();
            assert_eq!(d.eval(&Rationals, &tv), matrix::det(&Rationals, &ev).unwrap());
        }
    }
}
