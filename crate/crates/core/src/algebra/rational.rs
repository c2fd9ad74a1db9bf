use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{Field, FieldSpec, QuadRoots, RootField};
use crate::error::{Error, Result};

/// The field of rational numbers, arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

/// Height of a rational: the larger of `|numerator|` and the denominator.
pub fn height(x: &BigRational) -> BigInt {
    let n = x.numer().abs();
    let d = x.denom().clone();
    if n > d {
        n
    } else {
        d
    }
}

/// All rationals of height at most `bound`, ordered by height, then value.
pub fn rationals_up_to_height(bound: u64) -> Vec<BigRational> {
    let b = bound as i64;
    let mut out: Vec<BigRational> = Vec::new();
    for den in 1..=b {
        for num in -b..=b {
            if num_integer::gcd(num, den) == 1 {
                out.push(BigRational::new(num.into(), den.into()));
            }
        }
    }
    out.sort_by(|x, y| height(x).cmp(&height(y)).then(x.cmp(y)));
    out.dedup();
    out
}

fn exact_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer();
    let d = x.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn equal(&self, a: &BigRational, b: &BigRational) -> bool {
        a == b
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn compare(&self, a: &BigRational, b: &BigRational) -> std::cmp::Ordering {
        a.cmp(b)
    }

    fn parse(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let err = || Error::Parse(format!("'{s}' is not a rational number"));
        match s.split_once('/') {
            None => Ok(BigRational::from_integer(
                s.parse::<BigInt>().map_err(|_| err())?,
            )),
            Some((n, d)) => {
                let n = n.trim().parse::<BigInt>().map_err(|_| err())?;
                let d = d.trim().parse::<BigInt>().map_err(|_| err())?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(BigRational::new(n, d))
            }
        }
    }
}

impl RootField for Rationals {
    fn solve_quadratic(
        &self,
        a: &BigRational,
        b: &BigRational,
        c: &BigRational,
    ) -> QuadRoots<BigRational> {
        if a.is_zero() {
            if b.is_zero() {
                return if c.is_zero() {
                    QuadRoots::All
                } else {
                    QuadRoots::Roots(Vec::new())
                };
            }
            return QuadRoots::Roots(vec![-c / b]);
        }
        let four = BigRational::from_integer(4.into());
        let disc = b * b - four * a * c;
        let two_a = a + a;
        let mut roots = match exact_sqrt(&disc) {
            None => Vec::new(),
            Some(s) => vec![(-b + &s) / &two_a, (-b - &s) / &two_a],
        };
        roots.sort();
        roots.dedup();
        QuadRoots::Roots(roots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fraction() {
        let q = Rationals;
        assert_eq!(q.format(&q.parse("22/7").unwrap()), "22/7");
        assert_eq!(q.format(&q.parse("-4/6").unwrap()), "-2/3");
        assert!(q.parse("1/0").is_err());
    }

    #[test]
    fn height_list() {
        let l = rationals_up_to_height(1);
        assert_eq!(l.len(), 3);
        assert!(rationals_up_to_height(10)
            .iter()
            .all(|x| height(x) <= BigInt::from(10)));
    }

    #[test]
    fn quadratic_over_q() {
        let q = Rationals;
        let r = q.solve_quadratic(&q.from_int(4), &q.from_int(0), &q.from_int(-9));
        assert_eq!(
            r,
            QuadRoots::Roots(vec![q.parse("-3/2").unwrap(), q.parse("3/2").unwrap()])
        );
        let none = q.solve_quadratic(&q.from_int(1), &q.from_int(0), &q.from_int(-2));
        assert_eq!(none, QuadRoots::Roots(vec![]));
    }
}
