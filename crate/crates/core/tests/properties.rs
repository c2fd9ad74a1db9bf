mod common;

use common::*;
use proptest::prelude::*;
use quadrics::algebra::{Fe, Field, FiniteField, HomogeneousForm, Laurent, Rationals};
use quadrics::io::pencil_digest;
use quadrics::lines::Line;
use quadrics::pencil::{diagonal_pencil, SmoothnessCheck, SmoothnessVerdict, NVARS};

fn check_axioms<F: Field>(f: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) {
    let eq = |x: &F::Elem, y: &F::Elem| f.equal(x, y);
    assert!(eq(&f.add(a, b), &f.add(b, a)));
    assert!(eq(&f.mul(a, b), &f.mul(b, a)));
    assert!(eq(&f.add(&f.add(a, b), c), &f.add(a, &f.add(b, c))));
    assert!(eq(&f.mul(&f.mul(a, b), c), &f.mul(a, &f.mul(b, c))));
    assert!(eq(&f.mul(a, &f.add(b, c)), &f.add(&f.mul(a, b), &f.mul(a, c))));
    assert!(f.is_zero(&f.add(a, &f.neg(a))));
    if !f.is_zero(a) {
        assert!(f.is_one(&f.mul(a, &f.inv(a).unwrap())));
    }
    assert!(eq(&f.parse(&f.format(a)).unwrap(), a));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn finite_field_axioms(qi in 0usize..6, a in 0u32..1024, b in 0u32..1024, c in 0u32..1024) {
        let q = [2u64, 5, 8, 9, 25, 49][qi];
        let f = FiniteField::of_order(q).unwrap();
        let e = |x: u32| f.elem(x % q as u32);
        check_axioms(&f, &e(a), &e(b), &e(c));
        // Frobenius is additive
        let p = f.p();
        prop_assert_eq!(f.pow(&f.add(&e(a), &e(b)), p), f.add(&f.pow(&e(a), p), &f.pow(&e(b), p)));
    }

    #[test]
    fn rational_axioms(an in -50i64..50, ad in 1i64..20, bn in -50i64..50, bd in 1i64..20, cn in -9i64..9) {
        let f = Rationals;
        let r = |n: i64, d: i64| f.div(&f.from_int(n), &f.from_int(d)).unwrap();
        check_axioms(&f, &r(an, ad), &r(bn, bd), &r(cn, 7));
    }

    #[test]
    fn laurent_axioms_on_exact_polynomials(
        da in proptest::collection::vec(0u32..7, 1..4),
        db in proptest::collection::vec(0u32..7, 1..4),
        va in -2i64..3,
        vb in -2i64..3,
    ) {
        let f = FiniteField::prime(7).unwrap();
        let lf = Laurent::new(f.clone(), 8).unwrap();
        let mk = |d: &[u32], v: i64| {
            d.iter().enumerate().fold(lf.exact_zero(), |acc, (i, &c)| {
                lf.add(&acc, &lf.monomial(&Fe(c), v + i as i64))
            })
        };
        let a = mk(&da, va);
        let b = mk(&db, vb);
        let eq = |x: &_, y: &_| lf.equal(x, y);
        prop_assert!(eq(&lf.add(&a, &b), &lf.add(&b, &a)));
        prop_assert!(eq(&lf.mul(&a, &b), &lf.mul(&b, &a)));
        prop_assert!(lf.is_zero(&lf.sub(&a, &a)));
        prop_assert!(eq(&lf.parse(&lf.format(&a)).unwrap(), &a));
    }

    #[test]
    fn substitution_composes(seed in any::<u64>()) {
        let f = FiniteField::prime(5).unwrap();
        let mut r = rng(seed);
        let g = random_quadric(&f, &mut r);
        let a = random_invertible(&f, NVARS, &mut r);
        let b = random_invertible(&f, NVARS, &mut r);
        let ab = quadrics::algebra::matrix::mul(&f, &a, &b);
        let lhs = g.substitute_linear(&f, &a).unwrap().substitute_linear(&f, &b).unwrap();
        let rhs = g.substitute_linear(&f, &ab).unwrap();
        prop_assert!(lhs.sub(&f, &rhs).is_zero(&f));
    }

    #[test]
    fn line_echelon_form_is_canonical(seed in any::<u64>(), s in 1u32..7, t in 0u32..7) {
        let f = FiniteField::prime(7).unwrap();
        let mut r = rng(seed);
        let (u, v) = loop {
            let u = random_nonzero_vector(&f, NVARS, &mut r);
            let v = random_vector(&f, NVARS, &mut r);
            if quadrics::algebra::matrix::rank(&f, &[u.clone(), v.clone()]).unwrap() == 2 {
                break (u, v);
            }
        };
        let l1 = Line::from_rows(&f, &[u.clone(), v.clone()]).unwrap();
        // another basis: (s u + t v, v + u)
        let w1: Vec<Fe> = u.iter().zip(&v).map(|(x, y)| f.add(&f.mul(&Fe(s), x), &f.mul(&Fe(t), y))).collect();
        let w2: Vec<Fe> = u.iter().zip(&v).map(|(x, y)| f.add(x, y)).collect();
        if quadrics::algebra::matrix::rank(&f, &[w1.clone(), w2.clone()]).unwrap() == 2 {
            prop_assert_eq!(l1, Line::from_rows(&f, &[w2, w1]).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn smoothness_is_invariant_under_coordinate_change(seed in any::<u64>()) {
        let f = FiniteField::prime(7).unwrap();
        let mut r = rng(seed);
        let p = quadrics::pencil::Pencil::new(f.clone(), random_quadric(&f, &mut r), random_quadric(&f, &mut r));
        let Ok(p) = p else { return Ok(()) };
        let m = random_invertible(&f, NVARS, &mut r);
        let before = p.smoothness_check(1).unwrap();
        let after = p.substitute(&m).unwrap().smoothness_check(1).unwrap();
        prop_assert_eq!(before.is_smooth(), after.is_smooth());
        prop_assert_eq!(before.is_singular(), after.is_singular());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn diagonal_pencil_smooth_iff_ratios_distinct(a in proptest::array::uniform6(0u32..7)) {
        let f = FiniteField::prime(7).unwrap();
        let p = diagonal_pencil(&f, &a.map(Fe));
        let distinct = (0..6).all(|i| (0..i).all(|j| a[i] != a[j]));
        match p {
            Err(_) => prop_assert!(a.iter().all(|x| *x == a[0])),
            Ok(p) => {
                let r = p.smoothness_check(1).unwrap();
                prop_assert_eq!(r.is_smooth(), distinct);
                if let SmoothnessVerdict::Singular { witness, .. } = &r.verdict {
                    let x: Vec<Fe> = witness.iter().map(|s| f.parse(s).unwrap()).collect();
                    prop_assert!(p.is_singular_point(&x).unwrap());
                }
            }
        }
    }

    #[test]
    fn digest_ignores_term_order(seed in any::<u64>()) {
        let f = FiniteField::prime(5).unwrap();
        let mut r = rng(seed);
        let g1 = random_quadric(&f, &mut r);
        let g2 = random_quadric(&f, &mut r);
        let Ok(p) = quadrics::pencil::Pencil::new(f.clone(), g1.clone(), g2.clone()) else { return Ok(()) };
        let rev = |g: &HomogeneousForm<FiniteField>| {
            let terms: Vec<_> = g.terms().rev().map(|(m, c)| (*m, *c)).collect();
            HomogeneousForm::from_terms(&f, NVARS, 2, terms).unwrap()
        };
        let q = quadrics::pencil::Pencil::new(f.clone(), rev(&g1), rev(&g2)).unwrap();
        prop_assert_eq!(pencil_digest(&p), pencil_digest(&q));
    }
}
