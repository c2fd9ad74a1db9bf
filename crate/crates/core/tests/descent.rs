mod common;

use common::*;
use quadrics::algebra::{matrix, Fe, Field, Laurent};
use quadrics::arithmetic::{decide_laurent, Options};
use quadrics::descent::*;
use quadrics::io::pencil_to_json;
use quadrics::lines::{enumerate_lines, line_contained};
use quadrics::pencil::{diagonal_pencil, DEFAULT_BUDGET};
use quadrics::Error;

fn odd(n: usize) -> LaurentPencil {
    let f = field(7);
    LaurentPencil::new(&f, ExampleKind::OddChar([0, 1, 2, 3, 4, 5].map(Fe)), n).unwrap()
}

fn char2(n: usize) -> LaurentPencil {
    let f = field(4);
    LaurentPencil::new(&f, ExampleKind::CharTwo([Fe(0), Fe(1), f.generator()]), n).unwrap()
}

fn precision_free(r: &DescentReport) -> String {
    serde_json::to_string(&(
        &r.special_fiber,
        &r.certificate,
        &r.verdict,
        &r.slice_point,
        &r.u_line,
        &r.notes,
    ))
    .unwrap()
}

#[test]
fn odd_example_is_not_rational() {
    let r = descent_verdict(&odd(8), 4, 13, DEFAULT_BUDGET).unwrap();
    assert_eq!(r.verdict, "not_rational");
    let c = &r.certificate;
    assert!(c.disjoint_from_v1.holds);
    assert_eq!((c.no_mixed_lines.candidates, c.no_mixed_lines.lines_found), (3200, 0));
    assert_eq!((c.no_lines_in_v0.candidates, c.no_lines_in_v0.lines_found), (2850, 0));
    assert!(r.slice_point.is_some());
    assert_eq!(r.u_line.as_ref().unwrap().y_line_count, 48);
}

#[test]
fn char2_example_is_not_rational() {
    let r = descent_verdict(&char2(8), 2, 13, DEFAULT_BUDGET).unwrap();
    assert_eq!(r.verdict, "not_rational");
    let c = &r.certificate;
    assert!(c.disjoint_from_v1.holds);
    assert_eq!(c.no_mixed_lines.candidates, 425);
    assert_eq!(c.no_lines_in_v0.candidates, 357);
    assert_eq!(r.u_line.as_ref().unwrap().y_line_count, 28);
}

#[test]
fn certificates_do_not_depend_on_precision() {
    for make in [odd as fn(usize) -> LaurentPencil, char2] {
        let reports: Vec<String> = [4, 8, 16]
            .iter()
            .map(|&n| precision_free(&descent_verdict(&make(n), 2, 13, DEFAULT_BUDGET).unwrap()))
            .collect();
        assert_eq!(reports[0], reports[1]);
        assert_eq!(reports[1], reports[2]);
    }
}

#[test]
fn special_fiber_is_the_diagonal_pencil() {
    let f = field(7);
    let y = odd(8).special_fiber().unwrap();
    let d = diagonal_pencil(&f, &[0, 1, 2, 3, 4, 5].map(Fe)).unwrap();
    assert_eq!(pencil_to_json(&y), pencil_to_json(&d));
}

#[test]
fn slice_point_lies_on_x() {
    for lp in [odd(8), char2(8)] {
        let r = descent_verdict(&lp, 2, 13, DEFAULT_BUDGET).unwrap();
        let lf = lp.pencil.field();
        let x: Vec<_> = r
            .slice_point
            .unwrap()
            .iter()
            .map(|s| lf.constant(&lp.base.parse(s).unwrap()))
            .collect();
        assert!(x[0].is_exact_zero() && x[1].is_exact_zero());
        assert!(lp.pencil.vanishes_at(&x));
    }
}

#[test]
fn no_line_of_the_special_fiber_is_graded() {
    // L is graded iff dim(L ∩ V1) + dim(L ∩ V0) = 2, V1 = <e0, e1>
    let y = odd(8).special_fiber().unwrap();
    let f = y.field();
    for l in enumerate_lines(&y).unwrap().lines {
        let rows = l.rows();
        let cols = |range: std::ops::Range<usize>| -> Vec<Vec<Fe>> {
            rows.iter().map(|r| r[range.clone()].to_vec()).collect()
        };
        let in_v0 = 2 - matrix::rank(f, &cols(0..2)).unwrap();
        let in_v1 = 2 - matrix::rank(f, &cols(2..6)).unwrap();
        assert!(in_v0 + in_v1 < 2);
    }
}

#[test]
fn transported_line_lies_on_x_over_u() {
    let lp = odd(8);
    let uf = lp.u_field().unwrap();
    let xu = lp.x_over_u().unwrap();
    let y = lp.special_fiber().unwrap();
    let l = enumerate_lines(&y).unwrap().lines[3].clone();
    let rows: Vec<Vec<_>> = l
        .rows()
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .map(|(i, c)| uf.monomial(c, if i < 2 { 0 } else { 1 }))
                .collect()
        })
        .collect();
    let xl = quadrics::lines::Line::from_rows(&uf, &rows).unwrap();
    assert!(line_contained(&xu, &xl));
}

#[test]
fn repeated_parameters_are_rejected_or_singular() {
    let f = field(7);
    let kind = ExampleKind::OddChar([0, 0, 2, 3, 4, 5].map(Fe));
    assert!(matches!(LaurentPencil::new(&f, kind.clone(), 8), Err(Error::ParamsNotDistinct)));
    let lp = LaurentPencil::new_unchecked(&f, kind, 8).unwrap();
    let err = descent_verdict(&lp, 2, 13, DEFAULT_BUDGET).unwrap_err();
    assert!(matches!(err, Error::Singular(_)), "{err:?}");
}

#[test]
fn decide_recognizes_the_examples() {
    let opts = Options {
        max_extension: 2,
        ..Options::default()
    };
    let d = decide_laurent(&odd(8).pencil, &opts).unwrap();
    assert_eq!(d.verdict.name(), "not_rational");

    // a constant diagonal pencil over F_7((t)) is not one of the examples
    let f = field(7);
    let lf = Laurent::new(f.clone(), 8).unwrap();
    let p = diagonal_pencil(&lf, &[0, 1, 2, 3, 4, 5].map(|c| lf.constant(&Fe(c)))).unwrap();
    assert!(recognize(&p).is_none());
    assert_eq!(decide_laurent(&p, &opts).unwrap().verdict.name(), "unknown");
}
