//! Truncated Laurent series `k((t))` with capped relative precision.
//!
//! An element is `sum_i d_i t^(v+i) + O(t^(v+len))` with `d_0 != 0` and
//! `len <= N`. Products keep the smaller relative precision, sums keep the
//! smaller absolute precision, and a result whose known digits all cancel
//! becomes an *inexact zero* `O(t^a)`. Inverting an inexact zero is the one
//! place precision runs out, and it fails with `PrecisionLoss`.

use std::sync::Arc;

use super::field::{Field, FieldSpec};
use crate::error::{Error, Result};

const EXACT_ZERO: i64 = i64::MAX;

#[derive(Clone, Debug, PartialEq)]
pub struct Series<E> {
    val: i64,
    digits: Vec<E>,
}

impl<E> Series<E> {
    pub fn is_exact_zero(&self) -> bool {
        self.digits.is_empty() && self.val == EXACT_ZERO
    }

    /// Valuation of a nonzero element.
    pub fn valuation(&self) -> Option<i64> {
        (!self.digits.is_empty()).then_some(self.val)
    }

    /// Exponent of the first unknown digit; `None` for the exact zero.
    pub fn abs_precision(&self) -> Option<i64> {
        if self.is_exact_zero() {
            None
        } else {
            Some(self.val + self.digits.len() as i64)
        }
    }

    pub fn digits(&self) -> &[E] {
        &self.digits
    }
}

#[derive(Clone, Debug)]
pub struct Laurent<F: Field> {
    base: F,
    prec: usize,
    var: Arc<str>,
}

impl<F: Field> Laurent<F> {
    pub fn new(base: F, precision: usize) -> Result<Self> {
        Self::with_var(base, precision, "t")
    }

    pub fn with_var(base: F, precision: usize, var: &str) -> Result<Self> {
        if precision == 0 {
            return Err(Error::InvalidField("series precision must be positive".into()));
        }
        if var.is_empty() || !var.chars().all(|c| c.is_ascii_alphabetic()) || var == "g" {
            return Err(Error::InvalidField(format!("bad series variable '{var}'")));
        }
        Ok(Laurent {
            base,
            prec: precision,
            var: var.into(),
        })
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    fn normalize(&self, val: i64, mut digits: Vec<F::Elem>, abs: i64) -> Series<F::Elem> {
        let lead = digits.iter().position(|d| !self.base.is_zero(d));
        match lead {
            None => Series {
                val: abs,
                digits: Vec::new(),
            },
            Some(i) => {
                digits.drain(..i);
                digits.truncate(self.prec);
                Series {
                    val: val + i as i64,
                    digits,
                }
            }
        }
    }

    /// The exact Laurent polynomial `sum_i digits[i] t^(val+i)`, padded to
    /// full relative precision. Fails if it needs more than `N` digits.
    pub fn from_digits(&self, val: i64, digits: &[F::Elem]) -> Result<Series<F::Elem>> {
        let first = digits.iter().position(|d| !self.base.is_zero(d));
        let last = digits.iter().rposition(|d| !self.base.is_zero(d));
        match (first, last) {
            (Some(a), Some(b)) => {
                if b - a + 1 > self.prec {
                    return Err(Error::PrecisionLoss(format!(
                        "Laurent polynomial spans {} digits, precision is {}",
                        b - a + 1,
                        self.prec
                    )));
                }
                let mut d: Vec<F::Elem> = digits[a..=b].to_vec();
                d.resize(self.prec, self.base.zero());
                Ok(Series {
                    val: val + a as i64,
                    digits: d,
                })
            }
            _ => Ok(self.exact_zero()),
        }
    }

    pub fn exact_zero(&self) -> Series<F::Elem> {
        Series {
            val: EXACT_ZERO,
            digits: Vec::new(),
        }
    }

    /// `O(t^abs)`.
    pub fn inexact_zero(&self, abs: i64) -> Series<F::Elem> {
        Series {
            val: abs,
            digits: Vec::new(),
        }
    }

    pub fn constant(&self, c: &F::Elem) -> Series<F::Elem> {
        self.monomial(c, 0)
    }

    pub fn monomial(&self, c: &F::Elem, exp: i64) -> Series<F::Elem> {
        self.from_digits(exp, std::slice::from_ref(c))
            .expect("a monomial fits in any precision")
    }

    pub fn uniformizer(&self) -> Series<F::Elem> {
        self.monomial(&self.base.one(), 1)
    }

    /// Coefficient of `t^k`, if known.
    pub fn coefficient(&self, a: &Series<F::Elem>, k: i64) -> Option<F::Elem> {
        match a.abs_precision() {
            None => Some(self.base.zero()),
            Some(abs) if k >= abs => None,
            Some(_) if k < a.val => Some(self.base.zero()),
            Some(_) => Some(a.digits[(k - a.val) as usize].clone()),
        }
    }

    /// Reduction modulo `t` of an element of valuation `>= 0`.
    pub fn residue(&self, a: &Series<F::Elem>) -> Result<F::Elem> {
        if let Some(v) = a.valuation() {
            if v < 0 {
                return Err(Error::InvalidInput(format!(
                    "element of valuation {v} has no residue"
                )));
            }
        }
        self.coefficient(a, 0)
            .ok_or_else(|| Error::PrecisionLoss("residue digit unknown".into()))
    }

    /// Whether `a` is a Laurent polynomial with constant coefficients only,
    /// i.e. lies in the base field.
    pub fn as_constant(&self, a: &Series<F::Elem>) -> Option<F::Elem> {
        if a.is_exact_zero() {
            return Some(self.base.zero());
        }
        let v = a.valuation()?;
        let rest_zero = a.digits[1..].iter().all(|d| self.base.is_zero(d));
        (v == 0 && rest_zero && a.digits.len() == self.prec).then(|| a.digits[0].clone())
    }

    /// Image of `a` under `t -> s^ratio` in `target`, a series field over the
    /// same base in the variable `s`.
    pub fn inflate(
        &self,
        a: &Series<F::Elem>,
        target: &Laurent<F>,
        ratio: usize,
    ) -> Series<F::Elem> {
        if a.is_exact_zero() {
            return target.exact_zero();
        }
        let r = ratio as i64;
        if a.digits.is_empty() {
            return target.inexact_zero(a.val * r);
        }
        let len = a.digits.len() * ratio;
        let mut d = vec![self.base.zero(); len];
        for (i, x) in a.digits.iter().enumerate() {
            d[i * ratio] = x.clone();
        }
        target.normalize(a.val * r, d, (a.val + a.digits.len() as i64) * r)
    }

    /// Applies `f` to every digit (e.g. an embedding of the base field).
    pub fn map_base<G: Field>(
        &self,
        a: &Series<F::Elem>,
        target: &Laurent<G>,
        f: impl Fn(&F::Elem) -> G::Elem,
    ) -> Series<G::Elem> {
        if a.digits.is_empty() {
            return Series {
                val: a.val,
                digits: Vec::new(),
            };
        }
        let d: Vec<G::Elem> = a.digits.iter().map(f).collect();
        let abs = a.val + d.len() as i64;
        target.normalize(a.val, d, abs)
    }
}

impl<F: Field> Field for Laurent<F> {
    type Elem = Series<F::Elem>;

    fn zero(&self) -> Self::Elem {
        self.exact_zero()
    }

    fn one(&self) -> Self::Elem {
        self.constant(&self.base.one())
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(&self.base.from_int(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_exact_zero() {
            return b.clone();
        }
        if b.is_exact_zero() {
            return a.clone();
        }
        let abs = a.abs_precision().unwrap().min(b.abs_precision().unwrap());
        let lo = match (a.valuation(), b.valuation()) {
            (Some(x), Some(y)) => x.min(y),
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => return self.inexact_zero(abs),
        };
        if lo >= abs {
            return self.inexact_zero(abs);
        }
        let len = (abs - lo) as usize;
        let mut d = vec![self.base.zero(); len];
        for s in [a, b] {
            for (i, x) in s.digits.iter().enumerate() {
                let pos = s.val + i as i64 - lo;
                if pos >= 0 && (pos as usize) < len {
                    d[pos as usize] = self.base.add(&d[pos as usize], x);
                }
            }
        }
        self.normalize(lo, d, abs)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Series {
            val: a.val,
            digits: a.digits.iter().map(|x| self.base.neg(x)).collect(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_exact_zero() || b.is_exact_zero() {
            return self.exact_zero();
        }
        if a.digits.is_empty() || b.digits.is_empty() {
            // O(t^x) times something of valuation (or precision) y.
            return self.inexact_zero(a.val + b.val);
        }
        let len = a.digits.len().min(b.digits.len());
        let mut d = vec![self.base.zero(); len];
        for (i, x) in a.digits.iter().take(len).enumerate() {
            for (j, y) in b.digits.iter().take(len - i).enumerate() {
                d[i + j] = self.base.add(&d[i + j], &self.base.mul(x, y));
            }
        }
        Series {
            val: a.val + b.val,
            digits: d,
        }
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        if a.is_exact_zero() {
            return Err(Error::DivisionByZero);
        }
        if a.digits.is_empty() {
            return Err(Error::PrecisionLoss(format!(
                "cannot invert O({}^{}): no known nonzero digit",
                self.var, a.val
            )));
        }
        let len = a.digits.len();
        let c0 = self.base.inv(&a.digits[0])?;
        let mut out = Vec::with_capacity(len);
        out.push(c0.clone());
        for n in 1..len {
            let mut s = self.base.zero();
            for i in 1..=n {
                s = self
                    .base
                    .add(&s, &self.base.mul(&a.digits[i], &out[n - i]));
            }
            out.push(self.base.neg(&self.base.mul(&c0, &s)));
        }
        Ok(Series {
            val: -a.val,
            digits: out,
        })
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.digits.is_empty()
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Laurent {
            base: Box::new(self.base.spec()),
            precision: self.prec,
            var: self.var.to_string(),
        }
    }

    fn compare(&self, a: &Self::Elem, b: &Self::Elem) -> std::cmp::Ordering {
        a.val.cmp(&b.val).then_with(|| {
            a.digits
                .iter()
                .zip(&b.digits)
                .map(|(x, y)| self.base.compare(x, y))
                .find(|o| o.is_ne())
                .unwrap_or_else(|| a.digits.len().cmp(&b.digits.len()))
        })
    }

    fn pivot_rank(&self, a: &Self::Elem) -> Option<i64> {
        a.valuation()
    }

    fn format(&self, a: &Self::Elem) -> String {
        let mut terms = Vec::new();
        for (i, c) in a.digits.iter().enumerate() {
            if self.base.is_zero(c) {
                continue;
            }
            let e = a.val + i as i64;
            let mut cs = self.base.format(c);
            if cs[1..].contains(['+', '-']) {
                cs = format!("({cs})");
            }
            let pow = match e {
                0 => String::new(),
                1 => self.var.to_string(),
                e => format!("{}^{}", self.var, e),
            };
            terms.push(match (cs.as_str(), pow.is_empty()) {
                (_, true) => cs,
                ("1", false) => pow,
                (_, false) => format!("{cs}*{pow}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    fn parse(&self, s: &str) -> Result<Self::Elem> {
        let mut terms = Vec::new();
        for (negative, term) in split_series_terms(s)? {
            let (coef, exp) = self.parse_term(&term)?;
            terms.push((if negative { self.base.neg(&coef) } else { coef }, exp));
        }
        let Some(lo) = terms.iter().map(|t| t.1).min() else {
            return Ok(self.exact_zero());
        };
        let hi = terms.iter().map(|t| t.1).max().unwrap();
        let width = usize::try_from(hi - lo + 1)
            .ok()
            .filter(|&w| w <= 1 << 20)
            .ok_or_else(|| Error::Parse(format!("exponent range too wide in '{s}'")))?;
        let mut digits = vec![self.base.zero(); width];
        for (c, e) in terms {
            let i = (e - lo) as usize;
            digits[i] = self.base.add(&digits[i], &c);
        }
        self.from_digits(lo, &digits)
    }
}

impl<F: Field> Laurent<F> {
    fn parse_term(&self, term: &str) -> Result<(F::Elem, i64)> {
        let err = || Error::Parse(format!("cannot parse series term '{term}'"));
        let var = &*self.var;
        // Locate the series variable outside parentheses.
        let mut depth = 0i32;
        let mut var_pos = None;
        for (i, ch) in term.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ if depth == 0 && term[i..].starts_with(var) => {
                    var_pos = Some(i);
                    break;
                }
                _ => {}
            }
        }
        let (coef_str, exp) = match var_pos {
            None => (term, 0),
            Some(pos) => {
                let tail = term[pos + var.len()..].trim();
                let exp = if tail.is_empty() {
                    1
                } else {
                    let e = tail.strip_prefix('^').ok_or_else(err)?.trim();
                    let e = e.trim_start_matches('(').trim_end_matches(')');
                    e.parse::<i64>().map_err(|_| err())?
                };
                (term[..pos].trim().trim_end_matches('*'), exp)
            }
        };
        let coef_str = coef_str.trim();
        let coef = if coef_str.is_empty() {
            self.base.one()
        } else {
            let inner = coef_str
                .strip_prefix('(')
                .and_then(|c| c.strip_suffix(')'))
                .unwrap_or(coef_str);
            self.base.parse(inner)?
        };
        Ok((coef, exp))
    }
}

/// Splits at top-level `+`/`-`, keeping `t^-1` exponents intact.
fn split_series_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut negative = false;
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                let trimmed = cur.trim_end();
                let attached = trimmed.ends_with('^') || trimmed.ends_with('*') || trimmed.ends_with('/');
                if attached {
                    cur.push(ch);
                } else if trimmed.is_empty() {
                    if ch == '-' {
                        negative = !negative;
                    }
                } else {
                    out.push((negative, cur.trim().to_string()));
                    cur.clear();
                    negative = ch == '-';
                }
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in '{s}'")));
    }
    if cur.trim().is_empty() {
        return Err(Error::Parse(format!("empty term in '{s}'")));
    }
    out.push((negative, cur.trim().to_string()));
    Ok(out)
}
