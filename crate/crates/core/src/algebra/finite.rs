//! Finite fields `F_{p^k}` with log/antilog tables.
//!
//! Elements are stored by their polynomial code: the coefficient vector
//! `(c_0, .., c_{k-1})` of `c_0 + c_1 g + ... + c_{k-1} g^{k-1}` read as the
//! base-`p` integer `sum c_i p^i`. For `k = 1` the code is the residue itself.
//! Multiplication goes through discrete-log tables; addition is a modular add
//! (prime fields), XOR (characteristic 2), or a Zech-log lookup (odd
//! extensions).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::field::{Field, FieldSpec, QuadRoots, RootField};
use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 22;

const NONE: u32 = u32::MAX;

/// A finite-field element (polynomial code).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn code(self) -> u32 {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum AddKind {
    Prime,
    Xor,
    Zech,
}

struct Tables {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, constant term first, length `k + 1`.
    modulus: Vec<u32>,
    kind: AddKind,
    /// `exp[i]` = code of `w^i` for the primitive element `w`; doubled length.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    /// `zech[d] = log(1 + w^d)`, odd extensions only.
    zech: Vec<u32>,
    sqrt: Vec<u32>,
    /// Characteristic 2: some `w` with `w^2 + w = c`.
    as_root: Vec<u32>,
}

#[derive(Clone)]
pub struct FiniteField {
    t: Arc<Tables>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteField({})", self.spec())
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.t.p == other.t.p && self.t.k == other.t.k && self.t.modulus == other.t.modulus
    }
}

impl Eq for FiniteField {}

type CacheKey = (u32, u32, Vec<u32>);

fn cache() -> &'static Mutex<HashMap<CacheKey, FiniteField>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, FiniteField>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense F_p[x] helpers used only while building tables.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &mi) in m.iter().enumerate() {
            let sub = (c as u64 * mi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    poly_rem(&prod, m, p)
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn code_to_digits(mut code: u32, p: u32, k: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(k as usize);
    for _ in 0..k {
        d.push(code % p);
        code /= p;
    }
    d
}

fn digits_to_code(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Irreducibility over `F_p` by trial division with every monic polynomial of
/// degree at most `deg/2`.
pub fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = code_to_digits(code as u32, p, d as u32);
            g.push(1);
            if poly_rem(m, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The least monic irreducible polynomial of degree `k` over `F_p`, in the
/// order of the integer `sum_{i<k} c_i p^i` of its lower coefficients.
pub fn canonical_modulus(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(k);
    for code in 0..count {
        let mut m = code_to_digits(code as u32, p, k);
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Tables {
    fn build(p: u32, k: u32, modulus: Vec<u32>) -> Tables {
        let q = p.pow(k);
        let mulc = |a: u32, b: u32| -> u32 {
            let x = code_to_digits(a, p, k);
            let y = code_to_digits(b, p, k);
            let mut r = poly_mulmod(&x, &y, &modulus, p);
            r.resize(k as usize, 0);
            digits_to_code(&r, p)
        };
        let add_slow = |a: u32, b: u32| -> u32 {
            let x = code_to_digits(a, p, k);
            let y = code_to_digits(b, p, k);
            let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % p).collect();
            digits_to_code(&s, p)
        };
        let pow_slow = |a: u32, mut e: u64| -> u32 {
            let mut base = a;
            let mut acc = 1u32;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulc(acc, base);
                }
                base = mulc(base, base);
                e >>= 1;
            }
            acc
        };

        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let generator = (1..q)
            .find(|&c| factors.iter().all(|&r| pow_slow(c, order / r) != 1))
            .expect("multiplicative group is cyclic");

        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![NONE; q as usize];
        let mut e = 1u32;
        for i in 0..n {
            exp[i] = e;
            log[e as usize] = i as u32;
            e = mulc(e, generator);
        }
        for i in 0..n {
            exp[n + i] = exp[i];
        }

        let kind = if k == 1 {
            AddKind::Prime
        } else if p == 2 {
            AddKind::Xor
        } else {
            AddKind::Zech
        };

        let neg: Vec<u32> = (0..q)
            .map(|c| {
                let d: Vec<u32> = code_to_digits(c, p, k)
                    .into_iter()
                    .map(|x| (p - x) % p)
                    .collect();
                digits_to_code(&d, p)
            })
            .collect();

        let zech = if kind == AddKind::Zech {
            (0..n)
                .map(|d| {
                    let s = add_slow(1, exp[d]);
                    if s == 0 {
                        NONE
                    } else {
                        log[s as usize]
                    }
                })
                .collect()
        } else {
            Vec::new()
        };

        let mut t = Tables {
            p,
            k,
            q,
            modulus,
            kind,
            exp,
            log,
            neg,
            zech,
            sqrt: Vec::new(),
            as_root: Vec::new(),
        };
        let mut sqrt = vec![NONE; q as usize];
        for x in 0..q {
            let s = t.mul(x, x) as usize;
            if sqrt[s] == NONE {
                sqrt[s] = x;
            }
        }
        let mut as_root = Vec::new();
        if p == 2 {
            as_root = vec![NONE; q as usize];
            for w in 0..q {
                let c = t.add(t.mul(w, w), w) as usize;
                if as_root[c] == NONE {
                    as_root[c] = w;
                }
            }
        }
        t.sqrt = sqrt;
        t.as_root = as_root;
        t
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        match self.kind {
            AddKind::Prime => {
                let s = a + b;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            }
            AddKind::Xor => a ^ b,
            AddKind::Zech => {
                if a == 0 {
                    return b;
                }
                if b == 0 {
                    return a;
                }
                let la = self.log[a as usize];
                let lb = self.log[b as usize];
                let n = self.q - 1;
                let d = if lb >= la { lb - la } else { lb + n - la };
                let z = self.zech[d as usize];
                if z == NONE {
                    0
                } else {
                    self.exp[(la + z) as usize]
                }
            }
        }
    }
}

impl FiniteField {
    /// `F_{p^k}` with the canonical modulus.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) || p > u16::MAX as u64 {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        let q = (p as u128).pow(k);
        if q > MAX_FIELD_ORDER as u128 {
            return Err(Error::InvalidField(format!(
                "F_{p}^{k} exceeds the supported order {MAX_FIELD_ORDER}"
            )));
        }
        let key_mod = canonical_modulus(p as u32, k);
        Ok(Self::cached(p as u32, k, key_mod))
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    /// `F_{p^k}` with an explicit monic modulus (constant term first).
    pub fn with_modulus(p: u64, k: u32, modulus: &[u64]) -> Result<Self> {
        Self::new(p, k)?;
        if modulus.len() != k as usize + 1 || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField(format!(
                "modulus must be monic of degree {k}"
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficient out of range".into()));
        }
        let m: Vec<u32> = modulus.iter().map(|&c| c as u32).collect();
        if k > 1 && !is_irreducible(&m, p as u32) {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        Ok(Self::cached(p as u32, k, m))
    }

    /// The field of order `q`, where `q` is a prime power.
    pub fn of_order(q: u64) -> Result<Self> {
        for p in 2..=q {
            if q % p == 0 {
                let mut k = 0;
                let mut r = q;
                while r % p == 0 {
                    r /= p;
                    k += 1;
                }
                if r != 1 {
                    break;
                }
                return Self::new(p, k);
            }
        }
        Err(Error::InvalidField(format!("{q} is not a prime power")))
    }

    fn cached(p: u32, k: u32, modulus: Vec<u32>) -> Self {
        let key = (p, k, modulus.clone());
        if let Some(f) = cache().lock().unwrap().get(&key) {
            return f.clone();
        }
        let f = FiniteField {
            t: Arc::new(Tables::build(p, k, modulus)),
        };
        cache().lock().unwrap().entry(key).or_insert(f).clone()
    }

    pub fn p(&self) -> u64 {
        self.t.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.t.k
    }

    pub fn q(&self) -> u64 {
        self.t.q as u64
    }

    pub fn modulus(&self) -> Vec<u64> {
        self.t.modulus.iter().map(|&c| c as u64).collect()
    }

    /// `F_{q^deg}` (canonical modulus over the prime field).
    pub fn extension(&self, deg: u32) -> Result<Self> {
        Self::new(self.p(), self.t.k * deg)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone + Send {
        (0..self.t.q).map(Fe)
    }

    pub fn elem(&self, code: u32) -> Fe {
        debug_assert!(code < self.t.q);
        Fe(code)
    }

    pub fn digits(&self, a: Fe) -> Vec<u32> {
        code_to_digits(a.0, self.t.p, self.t.k)
    }

    pub fn from_digits(&self, d: &[u32]) -> Fe {
        let mut v: Vec<u32> = d.iter().map(|&c| c % self.t.p).collect();
        v.resize(self.t.k as usize, 0);
        Fe(digits_to_code(&v, self.t.p))
    }

    /// The class of `g`, the root of the modulus (for `k = 1`, of `x`, i.e. 0).
    pub fn generator(&self) -> Fe {
        if self.t.k == 1 {
            Fe(0)
        } else {
            Fe(self.t.p)
        }
    }

    /// Quadratic character: 0 for zero, 1 for nonzero squares, -1 otherwise.
    pub fn legendre(&self, a: Fe) -> i32 {
        if a.0 == 0 {
            0
        } else if self.t.p == 2 || self.t.log[a.0 as usize] % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        let s = self.t.sqrt[a.0 as usize];
        (s != NONE).then_some(Fe(s))
    }

    /// Embedding of `self` into `big`, as a table indexed by element code.
    /// The image of the generator is the least root (by code) of the modulus
    /// of `self` in `big`, which makes the embedding deterministic.
    pub fn embedding_into(&self, big: &FiniteField) -> Result<Vec<Fe>> {
        if self.p() != big.p() || big.degree() % self.degree() != 0 {
            return Err(Error::InvalidField(format!(
                "{} does not embed in {}",
                self.spec(),
                big.spec()
            )));
        }
        let p = self.t.p;
        let k = self.t.k;
        if k == 1 {
            return Ok((0..p).map(Fe).collect());
        }
        let m: Vec<Fe> = self.t.modulus.iter().map(|&c| Fe(c)).collect();
        let root = big
            .elements()
            .find(|&x| {
                let v = m
                    .iter()
                    .rev()
                    .fold(Fe::ZERO, |acc, &c| big.add(&big.mul(&acc, &x), &c));
                v == Fe::ZERO
            })
            .ok_or_else(|| Error::InvalidField("modulus has no root in the extension".into()))?;
        let powers: Vec<Fe> = (0..k).map(|i| big.pow(&root, i as u64)).collect();
        Ok((0..self.t.q)
            .map(|code| {
                code_to_digits(code, p, k)
                    .iter()
                    .zip(&powers)
                    .fold(Fe::ZERO, |acc, (&c, &g)| {
                        big.add(&acc, &big.mul(&Fe(c), &g))
                    })
            })
            .collect())
    }

    #[inline]
    pub fn mul_fast(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.t.mul(a.0, b.0))
    }

    #[inline]
    pub fn add_fast(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.t.add(a.0, b.0))
    }
}

impl Field for FiniteField {
    type Elem = Fe;

    fn zero(&self) -> Fe {
        Fe::ZERO
    }

    fn one(&self) -> Fe {
        Fe::ONE
    }

    fn from_int(&self, n: i64) -> Fe {
        let p = self.t.p as i64;
        Fe(n.rem_euclid(p) as u32)
    }

    #[inline]
    fn add(&self, a: &Fe, b: &Fe) -> Fe {
        Fe(self.t.add(a.0, b.0))
    }

    #[inline]
    fn neg(&self, a: &Fe) -> Fe {
        Fe(self.t.neg[a.0 as usize])
    }

    #[inline]
    fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        Fe(self.t.add(a.0, self.t.neg[b.0 as usize]))
    }

    #[inline]
    fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        Fe(self.t.mul(a.0, b.0))
    }

    fn inv(&self, a: &Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.t.q - 1;
        let l = self.t.log[a.0 as usize];
        Ok(Fe(self.t.exp[((n - l) % n) as usize]))
    }

    #[inline]
    fn is_zero(&self, a: &Fe) -> bool {
        a.0 == 0
    }

    #[inline]
    fn equal(&self, a: &Fe, b: &Fe) -> bool {
        a == b
    }

    fn pow(&self, a: &Fe, n: u64) -> Fe {
        if n == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        let m = (self.t.q - 1) as u64;
        let l = self.t.log[a.0 as usize] as u64 * (n % m) % m;
        Fe(self.t.exp[l as usize])
    }

    fn characteristic(&self) -> u64 {
        self.t.p as u64
    }

    fn order(&self) -> Option<u64> {
        Some(self.t.q as u64)
    }

    fn spec(&self) -> FieldSpec {
        if self.t.k == 1 {
            FieldSpec::Prime { p: self.p() }
        } else {
            let canonical = canonical_modulus(self.t.p, self.t.k);
            FieldSpec::Ext {
                p: self.p(),
                k: self.t.k,
                modulus: (canonical != self.t.modulus).then(|| self.modulus()),
            }
        }
    }

    fn format(&self, a: &Fe) -> String {
        if self.t.k == 1 {
            return a.0.to_string();
        }
        let d = self.digits(*a);
        let mut terms = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "g".to_string(),
                (1, c) => format!("{c}*g"),
                (i, 1) => format!("g^{i}"),
                (i, c) => format!("{c}*g^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    fn compare(&self, a: &Fe, b: &Fe) -> std::cmp::Ordering {
        a.cmp(b)
    }

    fn parse(&self, s: &str) -> Result<Fe> {
        let terms = parse_poly_terms(s, 'g')?;
        let mut acc = Fe::ZERO;
        let g = self.generator();
        for (c, e) in terms {
            if self.t.k == 1 && e > 0 {
                return Err(Error::Parse(format!(
                    "'{s}': prime-field elements are integers"
                )));
            }
            let term = self.mul(&self.from_int(c), &self.pow(&g, e as u64));
            acc = self.add(&acc, &term);
        }
        Ok(acc)
    }
}

impl RootField for FiniteField {
    fn solve_quadratic(&self, a: &Fe, b: &Fe, c: &Fe) -> QuadRoots<Fe> {
        if a.0 == 0 {
            if b.0 == 0 {
                return if c.0 == 0 {
                    QuadRoots::All
                } else {
                    QuadRoots::Roots(Vec::new())
                };
            }
            let r = self.neg(&self.mul(c, &self.inv(b).unwrap()));
            return QuadRoots::Roots(vec![r]);
        }
        let ainv = self.inv(a).unwrap();
        let mut roots = if self.t.p != 2 {
            let four = self.from_int(4);
            let disc = self.sub(&self.mul(b, b), &self.mul(&four, &self.mul(a, c)));
            let two_a_inv = self.mul(&ainv, &self.inv(&self.from_int(2)).unwrap());
            match self.sqrt(disc) {
                None => Vec::new(),
                Some(s) => {
                    let nb = self.neg(b);
                    let r1 = self.mul(&self.add(&nb, &s), &two_a_inv);
                    let r2 = self.mul(&self.sub(&nb, &s), &two_a_inv);
                    if r1 == r2 {
                        vec![r1]
                    } else {
                        vec![r1, r2]
                    }
                }
            }
        } else if b.0 == 0 {
            let s = self.sqrt(self.mul(c, &ainv)).expect("squaring is onto in char 2");
            vec![s]
        } else {
            // x = (b/a) w turns the equation into w^2 + w = ac/b^2.
            let scale = self.mul(b, &ainv);
            let binv = self.inv(b).unwrap();
            let rhs = self.mul(&self.mul(a, c), &self.mul(&binv, &binv));
            let w = self.t.as_root[rhs.0 as usize];
            if w == NONE {
                Vec::new()
            } else {
                let w = Fe(w);
                let w1 = self.add(&w, &Fe::ONE);
                vec![self.mul(&scale, &w), self.mul(&scale, &w1)]
            }
        };
        roots.sort();
        roots.dedup();
        QuadRoots::Roots(roots)
    }
}

/// Parses `"3*g^2 - g + 1"` style integer polynomials in `var` into
/// `(coefficient, exponent)` pairs. A bare integer is a constant term.
pub(crate) fn parse_poly_terms(s: &str, var: char) -> Result<Vec<(i64, u32)>> {
    let err = || Error::Parse(format!("cannot parse '{s}'"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err());
    }
    let mut out = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        } else if !out.is_empty() {
            return Err(err());
        }
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = &rest[..end];
        rest = &rest[end..];
        if term.is_empty() {
            return Err(err());
        }
        let (coef, power) = match term.find(var) {
            None => (term.parse::<i64>().map_err(|_| err())?, 0),
            Some(pos) => {
                let c = term[..pos].trim_end_matches('*');
                let c = if c.is_empty() {
                    1
                } else {
                    c.parse::<i64>().map_err(|_| err())?
                };
                let tail = &term[pos + var.len_utf8()..];
                let e = if tail.is_empty() {
                    1
                } else {
                    tail.strip_prefix('^')
                        .ok_or_else(err)?
                        .parse::<u32>()
                        .map_err(|_| err())?
                };
                (c, e)
            }
        };
        out.push((sign * coef, power));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        assert_eq!(canonical_modulus(2, 2), vec![1, 1, 1]);
        assert_eq!(canonical_modulus(7, 2), vec![1, 0, 1]);
        assert_eq!(canonical_modulus(3, 2), vec![1, 0, 1]);
        assert!(!is_irreducible(&[1, 0, 1], 5));
    }

    #[test]
    fn gf4_arithmetic() {
        let f = FiniteField::new(2, 2).unwrap();
        let g = f.generator();
        // g^2 = g + 1
        assert_eq!(f.mul(&g, &g), f.add(&g, &Fe::ONE));
        assert_eq!(f.format(&f.mul(&g, &g)), "g+1");
        assert_eq!(f.parse("g^2").unwrap(), f.parse("g+1").unwrap());
    }

    #[test]
    fn inverses_and_negation() {
        for (p, k) in [(7, 1), (2, 3), (3, 2), (7, 2), (5, 3)] {
            let f = FiniteField::new(p, k).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(&a, &f.neg(&a)), Fe::ZERO);
                if a != Fe::ZERO {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), Fe::ONE);
                }
            }
            assert_eq!(f.inv(&Fe::ZERO), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn quadratic_roots_match_brute_force() {
        for (p, k) in [(7, 1), (2, 2), (2, 3), (3, 2), (11, 1)] {
            let f = FiniteField::new(p, k).unwrap();
            let els: Vec<Fe> = f.elements().collect();
            for &a in els.iter().take(5) {
                for &b in els.iter().take(6) {
                    for &c in &els {
                        let brute: Vec<Fe> = els
                            .iter()
                            .copied()
                            .filter(|x| {
                                let v = f.add(
                                    &f.add(&f.mul(&a, &f.mul(x, x)), &f.mul(&b, x)),
                                    &c,
                                );
                                v == Fe::ZERO
                            })
                            .collect();
                        match f.solve_quadratic(&a, &b, &c) {
                            QuadRoots::All => assert_eq!(brute.len(), els.len()),
                            QuadRoots::Roots(r) => assert_eq!(r, brute),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parse_and_format_roundtrip() {
        let f = FiniteField::new(3, 3).unwrap();
        for a in f.elements() {
            assert_eq!(f.parse(&f.format(&a)).unwrap(), a);
        }
        let p = FiniteField::prime(7).unwrap();
        assert_eq!(p.parse("-1").unwrap(), Fe(6));
        assert!(p.parse("g").is_err());
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let small = FiniteField::new(2, 2).unwrap();
        let big = FiniteField::new(2, 4).unwrap();
        let emb = small.embedding_into(&big).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                let s = emb[small.add(&a, &b).0 as usize];
                assert_eq!(s, big.add(&emb[a.0 as usize], &emb[b.0 as usize]));
                let m = emb[small.mul(&a, &b).0 as usize];
                assert_eq!(m, big.mul(&emb[a.0 as usize], &emb[b.0 as usize]));
            }
        }
    }
}
