use serde::Serialize;

use crate::error::{Error, Result};

/// Zeta data of a genus 2 curve over `F_q` from `n1 = #C(F_q)` and
/// `n2 = #C(F_{q^2})`: `P(T) = 1 - e1 T + e2 T^2 - q e1 T^3 + q^2 T^4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeilData {
    pub q: u64,
    pub n1: u64,
    pub n2: u64,
    pub e1: i64,
    pub e2: i64,
    /// Coefficients of `P(T)` from `T^0` to `T^4`.
    pub coefficients: [i64; 5],
    pub jacobian_order: i64,
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn weil_from_counts(n1: u64, n2: u64, q: u64) -> Result<WeilData> {
    let qi = q as i64;
    let e1 = qi + 1 - n1 as i64;
    let bound = 4 * isqrt(q) as i64 + 4;
    if e1.abs() > bound {
        return Err(Error::WeilBoundViolated(format!("|e1| = {} exceeds {bound}", e1.abs())));
    }
    let twice = e1 * e1 - (qi * qi + 1 - n2 as i64);
    if twice % 2 != 0 {
        return Err(Error::WeilBoundViolated(format!("e2 = {twice}/2 is not an integer")));
    }
    let e2 = twice / 2;
    if e2.abs() > 6 * qi {
        return Err(Error::WeilBoundViolated(format!("|e2| = {} exceeds {}", e2.abs(), 6 * qi)));
    }
    let coefficients = [1, -e1, e2, -qi * e1, qi * qi];
    Ok(WeilData {
        q,
        n1,
        n2,
        e1,
        e2,
        coefficients,
        jacobian_order: coefficients.iter().sum(),
    })
}

impl WeilData {
    /// Power sums `s_1..s_k` of the reciprocal roots of `P`, by Newton's
    /// identities with elementary symmetric functions `e1, e2, q e1, q^2`.
    pub fn power_sums(&self, k: usize) -> Vec<i128> {
        let q = self.q as i128;
        let e = [self.e1 as i128, self.e2 as i128, q * self.e1 as i128, q * q];
        let mut s: Vec<i128> = Vec::with_capacity(k);
        for n in 1..=k {
            let mut v: i128 = 0;
            for i in 1..n.min(5) {
                let sign = if i % 2 == 1 { 1 } else { -1 };
                v += sign * e[i - 1] * s[n - i - 1];
            }
            if n <= 4 {
                let sign = if n % 2 == 1 { 1 } else { -1 };
                v += sign * n as i128 * e[n - 1];
            }
            s.push(v);
        }
        s
    }

    /// `#C(F_{q^k})` predicted from `P`.
    pub fn predicted_count(&self, k: u32) -> i128 {
        let s = self.power_sums(k as usize);
        (self.q as i128).pow(k) + 1 - s[k as usize - 1]
    }
}
