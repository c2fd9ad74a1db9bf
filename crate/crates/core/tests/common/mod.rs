#![allow(dead_code)]

use quadrics::algebra::{Fe, Field, FiniteField, HomogeneousForm, Monomial};
use quadrics::pencil::{diagonal_pencil, Pencil, SmoothnessCheck, NVARS};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn field(q: u64) -> FiniteField {
    FiniteField::of_order(q).unwrap()
}

pub fn diag(q: u64, a: [u32; 6]) -> Pencil<FiniteField> {
    let f = field(q);
    diagonal_pencil(&f, &a.map(|c| f.elem(c))).unwrap()
}

pub fn diag7() -> Pencil<FiniteField> {
    diag(7, [0, 1, 2, 3, 4, 5])
}

pub fn random_elem(f: &FiniteField, rng: &mut ChaCha8Rng) -> Fe {
    f.elem(rng.random_range(0..f.q() as u32))
}

pub fn random_vector(f: &FiniteField, n: usize, rng: &mut ChaCha8Rng) -> Vec<Fe> {
    (0..n).map(|_| random_elem(f, rng)).collect()
}

pub fn random_nonzero_vector(f: &FiniteField, n: usize, rng: &mut ChaCha8Rng) -> Vec<Fe> {
    loop {
        let v = random_vector(f, n, rng);
        if v.iter().any(|c| !f.is_zero(c)) {
            return v;
        }
    }
}

pub fn random_quadric(f: &FiniteField, rng: &mut ChaCha8Rng) -> HomogeneousForm<FiniteField> {
    let mut terms = Vec::new();
    for i in 0..NVARS {
        for j in i..NVARS {
            terms.push((Monomial::quadratic(i, j), random_elem(f, rng)));
        }
    }
    HomogeneousForm::from_terms(f, NVARS, 2, terms).unwrap()
}

/// A random pencil certified smooth (the first of a seeded stream).
pub fn random_smooth_pencil(q: u64, seed: u64) -> Pencil<FiniteField> {
    let f = field(q);
    let mut r = rng(seed);
    loop {
        let Ok(p) = Pencil::new(f.clone(), random_quadric(&f, &mut r), random_quadric(&f, &mut r))
        else {
            continue;
        };
        if p.smoothness_check(1).unwrap().is_smooth() {
            return p;
        }
    }
}

pub fn random_invertible(f: &FiniteField, n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Fe>> {
    loop {
        let m: Vec<Vec<Fe>> = (0..n).map(|_| random_vector(f, n, rng)).collect();
        if quadrics::algebra::matrix::rank(f, &m).unwrap() == n {
            return m;
        }
    }
}

/// Every point of `P^{n-1}(F_q)` with first nonzero coordinate 1.
pub fn projective_points(f: &FiniteField, n: usize) -> Vec<Vec<Fe>> {
    let vals: Vec<Fe> = f.elements().collect();
    let mut out = Vec::new();
    for lead in 0..n {
        let tail = n - lead - 1;
        let mut idx = vec![0usize; tail];
        loop {
            let mut x = vec![Fe::ZERO; n];
            x[lead] = f.one();
            for (k, &i) in idx.iter().enumerate() {
                x[lead + 1 + k] = vals[i];
            }
            out.push(x);
            let mut k = 0;
            while k < tail {
                idx[k] += 1;
                if idx[k] < vals.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == tail {
                break;
            }
        }
    }
    out
}

/// `#X(F_q)` by evaluating both forms at every point.
pub fn brute_count(f: &FiniteField, forms: &[&HomogeneousForm<FiniteField>], n: usize) -> u64 {
    projective_points(f, n)
        .iter()
        .filter(|x| forms.iter().all(|g| f.is_zero(&g.eval(f, x))))
        .count() as u64
}
