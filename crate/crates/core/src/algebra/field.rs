use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Serializable description of a field. Every [`Field`] can report its own
/// spec, and [`crate::io::AnyField`] rebuilds a field from one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldSpec {
    /// `F_p`.
    Prime { p: u64 },
    /// `F_{p^k}` as `F_p[g]/(m(g))`. `modulus` lists the coefficients of the
    /// monic modulus from the constant term up; omitted means the canonical
    /// (least irreducible) one.
    Ext {
        p: u64,
        k: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<Vec<u64>>,
    },
    Rationals,
    /// Truncated Laurent series over `base` with `precision` relative digits.
    Laurent {
        base: Box<FieldSpec>,
        precision: usize,
        #[serde(default = "default_series_var")]
        var: String,
    },
}

fn default_series_var() -> String {
    "t".to_string()
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
            FieldSpec::Ext { p, k, .. } => write!(f, "F_{p}^{k}"),
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Laurent {
                base,
                precision,
                var,
            } => write!(f, "{base}(({var})) mod {var}^{precision}"),
        }
    }
}

/// A field, passed around as a value. Elements carry no reference to their
/// field, so every operation goes through the field.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Fails with `DivisionByZero`, or `PrecisionLoss` for a series whose
    /// known digits are all zero.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;
    fn spec(&self) -> FieldSpec;

    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    /// A fixed total order on elements, used for canonical sorting.
    fn compare(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.equal(a, &self.one())
    }

    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Pivot preference for elimination: lower is better, `None` for zero.
    /// Series fields rank by valuation so that pivots lose the least precision.
    fn pivot_rank(&self, a: &Self::Elem) -> Option<i64> {
        if self.is_zero(a) {
            None
        } else {
            Some(0)
        }
    }

    fn dot(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Self::Elem {
        a.iter()
            .zip(b)
            .fold(self.zero(), |acc, (x, y)| self.add(&acc, &self.mul(x, y)))
    }
}

/// Solutions of `a x^2 + b x + c = 0` in the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadRoots<E> {
    /// The polynomial is identically zero.
    All,
    Roots(Vec<E>),
}

/// Fields in which quadratic equations can be solved exactly.
pub trait RootField: Field {
    fn solve_quadratic(
        &self,
        a: &Self::Elem,
        b: &Self::Elem,
        c: &Self::Elem,
    ) -> QuadRoots<Self::Elem>;
}

/// Wraps a formatted coefficient in parentheses when it is a sum, so it can
/// be used as a factor. Already bracketed or atomic strings pass through.
pub(crate) fn as_factor(cs: String) -> String {
    let mut depth = 0i32;
    let mut top_level_op = false;
    for (i, ch) in cs.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | ' ' if depth == 0 => top_level_op = true,
            '-' if depth == 0 && i > 0 => top_level_op = true,
            _ => {}
        }
    }
    if top_level_op {
        format!("({cs})")
    } else {
        cs
    }
}
