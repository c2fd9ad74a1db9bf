mod common;

use common::*;
use quadrics::algebra::{matrix, Fe, Field, FiniteField, Laurent};
use quadrics::lines::*;
use quadrics::pencil::{Pencil, NVARS};
use quadrics::Error;

fn sorted(f: &FiniteField, mut v: Vec<Line<FiniteField>>) -> Vec<Line<FiniteField>> {
    v.sort_by(|a, b| a.compare(f, b));
    v
}

#[test]
fn diag7_has_48_lines_by_both_sweeps() {
    let p = diag7();
    let fast = enumerate_lines(&p).unwrap();
    let (visited, slow) = naive_lines(&p);
    assert_eq!(visited, gaussian_binomial(6, 2, 7));
    assert_eq!(fast.lines, sorted(p.field(), slow));
    assert_eq!(fast.len(), 48);
    assert!(fast.lines.iter().all(|l| line_contained(&p, l)));
}

#[test]
fn fast_sweep_matches_reference_on_random_pencils() {
    for seed in 0..3 {
        let p = random_smooth_pencil(5, seed);
        let fast = enumerate_lines(&p).unwrap();
        let (_, slow) = naive_lines(&p);
        assert_eq!(fast.lines, sorted(p.field(), slow), "seed {seed}");
    }
}

#[test]
fn enumeration_over_f4() {
    let f = field(4);
    let mut r = rng(4);
    for _ in 0..2 {
        let p = Pencil::new(f.clone(), random_quadric(&f, &mut r), random_quadric(&f, &mut r)).unwrap();
        let fast = enumerate_lines(&p).unwrap();
        let (_, slow) = naive_lines(&p);
        assert_eq!(fast.lines, sorted(&f, slow));
    }
}

/// `L ∩ M` by testing the `q + 1` points of `L` against `M`.
fn meet_by_points(f: &FiniteField, l: &Line<FiniteField>, m: &Line<FiniteField>) -> usize {
    let mut n = 0;
    let mut pts = vec![(Fe::ONE, Fe::ZERO)];
    pts.extend(f.elements().map(|s| (s, Fe::ONE)));
    for (s, t) in pts {
        if m.contains_point(f, &l.point(f, &s, &t)).unwrap() {
            n += 1;
        }
    }
    n
}

#[test]
fn incidence_matches_point_double_loop() {
    let p = diag7();
    let f = p.field();
    let set = enumerate_lines(&p).unwrap();
    for lambda in set.lines.iter().take(6) {
        let inc = incident_lines(&p, lambda).unwrap();
        let oracle: Vec<&Line<FiniteField>> = set
            .lines
            .iter()
            .filter(|m| *m != lambda && meet_by_points(f, m, lambda) == 1)
            .collect();
        assert_eq!(inc.len(), oracle.len());
        for ((m, x), o) in inc.iter().zip(&oracle) {
            assert_eq!(m, *o);
            assert!(m.contains_point(f, x).unwrap() && lambda.contains_point(f, x).unwrap());
        }
    }
}

#[test]
fn incidence_rejects_lines_off_x() {
    let p = diag7();
    let l = Line::coordinate(p.field(), 4, 5);
    assert_eq!(incident_lines(&p, &l).unwrap_err(), Error::NotOnX);
}

/// The tangent space to the Fano scheme at `L`: deformations `(d1, d2)` of
/// the echelon rows in the free columns keeping both forms zero to first
/// order. Returns the full matrix, columns `0..4` for `d1`, `4..8` for `d2`.
fn tangent_system(p: &Pencil<FiniteField>, l: &Line<FiniteField>) -> Vec<Vec<Fe>> {
    let (i, j) = l.pivots();
    let free: Vec<usize> = (0..NVARS).filter(|&c| c != i && c != j).collect();
    let [r1, r2] = l.rows();
    let unit = |c: usize| {
        let mut v = vec![Fe::ZERO; NVARS];
        v[c] = Fe::ONE;
        v
    };
    let mut rows = Vec::new();
    for e in 0..2 {
        let mut a = vec![Fe::ZERO; 8];
        let mut b = vec![Fe::ZERO; 8];
        let mut c = vec![Fe::ZERO; 8];
        for (k, &col) in free.iter().enumerate() {
            a[k] = p.bilinear(e, r1, &unit(col));
            b[k] = p.bilinear(e, r2, &unit(col));
            b[4 + k] = p.bilinear(e, r1, &unit(col));
            c[4 + k] = p.bilinear(e, r2, &unit(col));
        }
        rows.extend([a, b, c]);
    }
    rows
}

#[test]
fn normal_types_match_tangent_space_oracle() {
    for p in [diag7(), random_smooth_pencil(7, 11)] {
        let f = p.field();
        let set = enumerate_lines(&p).unwrap();
        let (mut bal, mut unbal) = (0, 0);
        for l in &set.lines {
            let n = normal_splitting(&p, l).unwrap();
            let sys = tangent_system(&p, l);
            assert_eq!(n.h0, 8 - matrix::rank(f, &sys).unwrap());
            // sections vanishing at the point r1: d1 = 0
            let tail: Vec<Vec<Fe>> = sys.iter().map(|r| r[4..].to_vec()).collect();
            let vanishing = 4 - matrix::rank(f, &tail).unwrap();
            assert_eq!(n.h0, 2);
            match n.splitting {
                Splitting::Balanced => {
                    assert_eq!(vanishing, 0);
                    bal += 1;
                }
                Splitting::Unbalanced => {
                    assert_eq!(vanishing, 1);
                    unbal += 1;
                }
            }
        }
        assert_eq!(bal + unbal, set.len());
    }
}

#[test]
fn diag7_normal_type_counts() {
    let p = diag7();
    let set = enumerate_lines(&p).unwrap();
    let unbal = set
        .lines
        .iter()
        .filter(|l| normal_splitting(&p, l).unwrap().splitting == Splitting::Unbalanced)
        .count();
    assert_eq!((set.len() - unbal, unbal), (16, 32));
}

fn perturbed(q: u64, a: [u32; 6], b: [u32; 6], n: usize) -> Pencil<Laurent<FiniteField>> {
    use quadrics::algebra::{HomogeneousForm, Monomial};
    let f = field(q);
    let lf = Laurent::new(f.clone(), n).unwrap();
    let form = |c: &dyn Fn(usize) -> quadrics::algebra::Series<Fe>| {
        HomogeneousForm::from_terms(&lf, NVARS, 2, (0..NVARS).map(|i| (Monomial::quadratic(i, i), c(i))))
            .unwrap()
    };
    let q1 = form(&|_| lf.one());
    let q2 = form(&|i| lf.add(&lf.constant(&f.elem(a[i])), &lf.monomial(&f.elem(b[i]), 1)));
    Pencil::new(lf.clone(), q1, q2).unwrap()
}

fn residual_order(p: &Pencil<Laurent<FiniteField>>, lift: &LiftedLine<FiniteField>) -> usize {
    let lf = p.field();
    let rows = lift.to_series(lf).unwrap();
    let res = containment_residuals(p, &rows);
    (0..)
        .find(|&k| res.iter().any(|r| lf.coefficient(r, k as i64) != Some(Fe::ZERO)))
        .unwrap()
}

#[test]
fn hensel_lift_solves_containment_to_full_precision() {
    for n in [4, 8] {
        let p = perturbed(7, [0, 1, 2, 3, 4, 5], [1, 0, 3, 0, 2, 6], n);
        let special = diag7();
        for l0 in enumerate_lines(&special).unwrap().lines.iter().take(8) {
            let lift = hensel_lift_line(&p, l0).unwrap();
            assert_eq!(&lift.reduction(), l0);
            assert!(residual_order(&p, &lift) >= n);
        }
    }
}

#[test]
fn hensel_lift_of_constant_pencil_is_constant() {
    let p = perturbed(7, [0, 1, 2, 3, 4, 5], [0; 6], 6);
    let l0 = enumerate_lines(&diag7()).unwrap().lines[5].clone();
    let lift = hensel_lift_line(&p, &l0).unwrap();
    for row in &lift.rows {
        for d in row {
            assert!(d[1..].iter().all(|c| *c == Fe::ZERO));
        }
    }
}

#[test]
fn hensel_lift_is_deterministic_across_precisions() {
    let l0 = enumerate_lines(&diag7()).unwrap().lines[0].clone();
    let lo = hensel_lift_line(&perturbed(7, [0, 1, 2, 3, 4, 5], [1, 0, 3, 0, 2, 6], 4), &l0).unwrap();
    let hi = hensel_lift_line(&perturbed(7, [0, 1, 2, 3, 4, 5], [1, 0, 3, 0, 2, 6], 8), &l0).unwrap();
    for k in 0..2 {
        for c in 0..NVARS {
            assert_eq!(lo.rows[k][c][..], hi.rows[k][c][..4]);
        }
    }
}

#[test]
fn hensel_refuses_degenerate_special_fiber() {
    // a_0 = a_1: (1 : 2 : 0 : 0 : 0 : 0) is singular and lies on lines of X
    let p = perturbed(5, [1, 1, 2, 3, 4, 0], [1, 0, 3, 0, 2, 1], 4);
    let special = diag(5, [1, 1, 2, 3, 4, 0]);
    let lines = enumerate_lines(&special).unwrap().lines;
    let failures = lines
        .iter()
        .filter(|l| {
            matches!(
                hensel_lift_line(&p, l),
                Err(Error::DegenerateMatrix(_)) | Err(Error::Obstructed { .. })
            )
        })
        .count();
    assert!(failures > 0);
}

#[test]
fn no_planes_on_smooth_f5_pencil() {
    let p = random_smooth_pencil(5, 3);
    let vals: Vec<Fe> = p.field().elements().collect();
    let sweep = contained_planes(&p, &vals);
    assert_eq!(sweep.candidates, gaussian_binomial(6, 3, 5));
    assert!(sweep.planes.is_empty());
}

#[test]
fn planes_found_on_a_singular_pencil() {
    use quadrics::algebra::{HomogeneousForm, Monomial};
    let f = field(3);
    let q1 = HomogeneousForm::from_terms(&f, NVARS, 2, [(Monomial::quadratic(0, 3), Fe::ONE)]).unwrap();
    let q2 = HomogeneousForm::from_terms(&f, NVARS, 2, [(Monomial::quadratic(1, 4), Fe::ONE)]).unwrap();
    let p = Pencil::new(f.clone(), q1, q2).unwrap();
    let vals: Vec<Fe> = f.elements().collect();
    let sweep = contained_planes(&p, &vals);
    // X0 = X1 = X2 = 0 is one of them
    let span = |m: &Vec<Vec<Fe>>| m.iter().all(|r| r[0] == Fe::ZERO && r[1] == Fe::ZERO && r[2] == Fe::ZERO);
    assert!(sweep.planes.iter().any(span));
    assert!(sweep.planes.iter().all(|m| {
        let pts = common::projective_points(&f, 3);
        pts.iter().all(|c| {
            let x: Vec<Fe> = (0..NVARS)
                .map(|k| (0..3).fold(Fe::ZERO, |acc, r| f.add(&acc, &f.mul(&c[r], &m[r][k]))))
                .collect();
            p.vanishes_at(&x)
        })
    }));
}
