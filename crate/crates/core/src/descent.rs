//! The Laurent-series examples: `X` over `F_q((t))` with no line, a point
//! on the slice `X_0 = X_1 = 0`, and a line after adjoining `u = t^(1/2)`.
//!
//! With `phi(X) = (u X_0, u X_1, X_2, .., X_5)` the pencil `Y` satisfies
//! `X(x) = Y(phi(x))`, and `Y` has constant coefficients. A line on `X` over
//! `F_q((t))` would specialize to a line on `Y` over `F_q` that is graded
//! for the weights `(1, 1, 0, 0, 0, 0)`; the certificate rules out all three
//! graded types.

use serde::Serialize;

use crate::algebra::binary::{BinaryForm, Poly};
use crate::algebra::field::{Field, FieldSpec};
use crate::algebra::finite::{Fe, FiniteField};
use crate::algebra::form::{HomogeneousForm, Monomial};
use crate::algebra::laurent::{Laurent, Series};
use crate::algebra::matrix;
use crate::algebra::projective::{for_each_projective_point, zeros_on_subspace};
use crate::error::{Error, Result};
use crate::io::{line_to_json, pencil_to_json, PencilJson};
use crate::lines::{
    containment_residuals, enumerate_lines_bounded, for_each_echelon, gaussian_binomial,
    line_contained, Line,
};
use crate::pencil::{Pencil, SmoothnessCheck, SmoothnessReport, NVARS};
use crate::projection::{rationalize, verify_map_pair};

/// Weights of the `mu_2` action: nontrivial character on `X_0`, `X_1`.
pub const GRADING: [u8; NVARS] = [1, 1, 0, 0, 0, 0];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExampleKind {
    /// `a_0..a_5` pairwise distinct, odd characteristic.
    OddChar([Fe; 6]),
    /// `(a, b, c)` pairwise distinct, characteristic 2.
    CharTwo([Fe; 3]),
}

impl ExampleKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExampleKind::OddChar(_) => "odd",
            ExampleKind::CharTwo(_) => "char2",
        }
    }

    pub fn params(&self) -> &[Fe] {
        match self {
            ExampleKind::OddChar(a) => a,
            ExampleKind::CharTwo(a) => a,
        }
    }
}

/// One of the two example pencils over `F_q((t))`.
#[derive(Clone, Debug)]
pub struct LaurentPencil {
    pub base: FiniteField,
    pub kind: ExampleKind,
    pub pencil: Pencil<Laurent<FiniteField>>,
}

fn distinct(a: &[Fe]) -> bool {
    a.iter().enumerate().all(|(i, x)| a[..i].iter().all(|y| y != x))
}

/// `sum c t^e X_i X_j` over the series field.
fn series_form(
    lf: &Laurent<FiniteField>,
    terms: &[(usize, usize, Fe, i64)],
) -> Result<HomogeneousForm<Laurent<FiniteField>>> {
    HomogeneousForm::from_terms(
        lf,
        NVARS,
        2,
        terms
            .iter()
            .map(|&(i, j, c, e)| (Monomial::quadratic(i, j), lf.monomial(&c, e))),
    )
}

impl LaurentPencil {
    /// The displayed pencil of the given kind over `F_q((t))` with `precision`
    /// relative digits.
    pub fn new(base: &FiniteField, kind: ExampleKind, precision: usize) -> Result<Self> {
        if !distinct(kind.params()) {
            return Err(Error::ParamsNotDistinct);
        }
        match &kind {
            ExampleKind::OddChar(_) if base.characteristic() == 2 || base.q() < 7 => {
                return Err(Error::InvalidInput(
                    "the odd example needs odd characteristic and q >= 7".into(),
                ))
            }
            ExampleKind::CharTwo(_) if base.characteristic() != 2 || base.q() < 4 => {
                return Err(Error::InvalidInput(
                    "the characteristic 2 example needs q = 2^k >= 4".into(),
                ))
            }
            _ => {}
        }
        Self::new_unchecked(base, kind, precision)
    }

    /// Skips the parameter checks (for degenerate test inputs).
    pub fn new_unchecked(base: &FiniteField, kind: ExampleKind, precision: usize) -> Result<Self> {
        let lf = Laurent::new(base.clone(), precision)?;
        let one = Fe::ONE;
        let (q1, q2) = match &kind {
            ExampleKind::OddChar(a) => {
                let t = |i: usize| if i < 2 { 1 } else { 0 };
                let q1: Vec<_> = (0..NVARS).map(|i| (i, i, one, t(i))).collect();
                let q2: Vec<_> = (0..NVARS).map(|i| (i, i, a[i], t(i))).collect();
                (series_form(&lf, &q1)?, series_form(&lf, &q2)?)
            }
            ExampleKind::CharTwo([a, b, c]) => {
                let q1 = [(0, 1, one, 1), (2, 3, one, 0), (4, 5, one, 0)];
                let mut q2 = Vec::new();
                for (k, coef, e) in [(0, *a, 1), (2, *b, 0), (4, *c, 0)] {
                    q2.extend([(k, k, one, e), (k, k + 1, coef, e), (k + 1, k + 1, one, e)]);
                }
                (series_form(&lf, &q1)?, series_form(&lf, &q2)?)
            }
        };
        Ok(LaurentPencil {
            base: base.clone(),
            kind,
            pencil: Pencil::new(lf, q1, q2)?,
        })
    }

    pub fn precision(&self) -> usize {
        self.pencil.field().precision()
    }

    /// `F_q((u))` with `u^2 = t`, at twice the precision.
    pub fn u_field(&self) -> Result<Laurent<FiniteField>> {
        Laurent::with_var(self.base.clone(), 2 * self.precision(), "u")
    }

    /// `X` over `F_q((u))`.
    pub fn x_over_u(&self) -> Result<Pencil<Laurent<FiniteField>>> {
        let lf = self.pencil.field();
        let uf = self.u_field()?;
        self.pencil.map_field(&uf, |c| lf.inflate(c, &uf, 2))
    }

    /// `Y = X o phi^{-1}` over `F_q((u))`.
    pub fn y_over_u(&self) -> Result<Pencil<Laurent<FiniteField>>> {
        phi_inverse_substitution(&self.x_over_u()?)
    }

    /// Reduction of `Y` modulo `u`.
    pub fn special_fiber(&self) -> Result<Pencil<FiniteField>> {
        let y = self.y_over_u()?;
        let uf = y.field().clone();
        for q in y.forms() {
            for (_, c) in q.terms() {
                uf.residue(c)?;
            }
        }
        y.map_field(&self.base, |c| uf.residue(c).unwrap_or(Fe::ZERO))
    }
}

/// Substitutes `diag(1/u, 1/u, 1, 1, 1, 1)`, turning equations of `X` into
/// equations of `phi(X)`.
pub fn phi_inverse_substitution(
    p: &Pencil<Laurent<FiniteField>>,
) -> Result<Pencil<Laurent<FiniteField>>> {
    let uf = p.field();
    let mut m = matrix::identity(uf, NVARS);
    let uinv = uf.inv(&uf.uniformizer())?;
    m[0][0] = uinv.clone();
    m[1][1] = uinv;
    p.substitute(&m)
}

/// `Y` misses `P(V_1)`, `V_1 = span(e_0, e_1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisjointnessFact {
    /// Restrictions of `q_1`, `q_2` to `s e_0 + t e_1`.
    pub restrictions: [String; 2],
    pub resultant: String,
    pub holds: bool,
}

/// Exhaustive sweeps for graded lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepFact {
    pub candidates: u128,
    pub lines_found: u64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedLineCertificate {
    pub weights: [u8; NVARS],
    /// Graded 2-subspaces by type `(dim in V_1, dim in V_0)`.
    pub graded_types: [String; 3],
    pub disjoint_from_v1: DisjointnessFact,
    pub no_mixed_lines: SweepFact,
    pub mixed_sweep_redundant: bool,
    pub no_lines_in_v0: SweepFact,
    pub involution: String,
    pub conclusion: String,
}

fn binary_restriction(f: &FiniteField, q: &HomogeneousForm<FiniteField>) -> (BinaryForm<FiniteField>, String) {
    let c = |i, j| q.coeff(f, &Monomial::quadratic(i, j));
    let (ss, st, tt) = (c(0, 0), c(0, 1), c(1, 1));
    let mut parts = Vec::new();
    for (v, m) in [(ss, "s^2"), (st, "s*t"), (tt, "t^2")] {
        if v != Fe::ZERO {
            let cs = f.format(&v);
            parts.push(if cs == "1" {
                m.to_string()
            } else if cs.contains('+') {
                format!("({cs})*{m}")
            } else {
                format!("{cs}*{m}")
            });
        }
    }
    let shown = if parts.is_empty() { "0".into() } else { parts.join(" + ") };
    // coefficient i multiplies s^i t^(2-i)
    let poly = Poly::new(f, vec![tt, st, ss]);
    (BinaryForm::from_poly(f, &poly, 2), shown)
}

fn unit(c: usize) -> Vec<Fe> {
    let mut v = vec![Fe::ZERO; NVARS];
    v[c] = Fe::ONE;
    v
}

/// Checks that `Y` contains no line that is graded for [`GRADING`].
pub fn graded_line_analysis(y: &Pencil<FiniteField>) -> Result<GradedLineCertificate> {
    let f = y.field();
    let q = f.q();
    let vals: Vec<Fe> = f.elements().collect();
    let zero = |v: &[Fe; 6]| v.iter().all(|c| *c == Fe::ZERO);

    let (b1, s1) = binary_restriction(f, y.q1());
    let (b2, s2) = binary_restriction(f, y.q2());
    let res = b1.resultant(f, &b2)?;
    let disjoint = DisjointnessFact {
        restrictions: [s1, s2],
        resultant: f.format(&res),
        holds: res != Fe::ZERO,
    };

    let mut mixed = SweepFact {
        candidates: 0,
        lines_found: 0,
        holds: true,
    };
    let mut mixed_witness = None;
    for_each_projective_point(f, &vals, 2, |v1| {
        let v = [v1[0], v1[1], Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ZERO].to_vec();
        for_each_projective_point(f, &vals, 4, |w0| {
            let w = [&[Fe::ZERO, Fe::ZERO][..], w0].concat();
            mixed.candidates += 1;
            if zero(&containment_residuals(y, &[v.clone(), w.clone()])) {
                mixed.lines_found += 1;
                mixed_witness.get_or_insert((v.clone(), w));
            }
            true
        });
        true
    });
    mixed.holds = mixed.lines_found == 0;

    let mut inner = SweepFact {
        candidates: 0,
        lines_found: 0,
        holds: true,
    };
    let mut inner_witness = None;
    for_each_echelon(f, &vals, 2, 4, |m, _| {
        inner.candidates += 1;
        let rows = [
            [&[Fe::ZERO, Fe::ZERO][..], &m[0]].concat(),
            [&[Fe::ZERO, Fe::ZERO][..], &m[1]].concat(),
        ];
        if zero(&containment_residuals(y, &rows)) {
            inner.lines_found += 1;
            inner_witness.get_or_insert(rows);
        }
        true
    });
    inner.holds = inner.lines_found == 0;

    debug_assert_eq!(mixed.candidates, (q as u128 + 1) * gaussian_binomial(4, 1, q));
    debug_assert_eq!(inner.candidates, gaussian_binomial(4, 2, q));
    let redundant = !disjoint.holds || mixed.holds;
    if !redundant {
        return Err(Error::CertificateFailed(
            "logic error: a mixed line exists although Y misses P(V1)".into(),
        ));
    }
    let show = |v: &[Fe]| v.iter().map(|c| f.format(c)).collect::<Vec<_>>().join(", ");
    if !disjoint.holds {
        return Err(Error::CertificateFailed(format!(
            "Y meets P(V1): restrictions {} and {} have resultant 0",
            disjoint.restrictions[0], disjoint.restrictions[1]
        )));
    }
    if let Some(rows) = inner_witness {
        return Err(Error::CertificateFailed(format!(
            "line [{}; {}] of X0 = X1 = 0 lies on Y",
            show(&rows[0]),
            show(&rows[1])
        )));
    }
    let involution = if f.characteristic() == 2 {
        "u -> -u is the identity: F_q((u))/F_q((t)) is purely inseparable; gradedness alone is used"
    } else {
        "u -> -u; not used computationally, gradedness subsumes it"
    };
    Ok(GradedLineCertificate {
        weights: GRADING,
        graded_types: [
            "(2,0): the line P(V1), excluded by disjoint_from_v1".into(),
            format!("(1,1): {} candidates, no_mixed_lines", mixed.candidates),
            format!("(0,2): {} candidates, no_lines_in_v0", inner.candidates),
        ],
        disjoint_from_v1: disjoint,
        no_mixed_lines: mixed,
        mixed_sweep_redundant: redundant,
        no_lines_in_v0: inner,
        involution: involution.into(),
        conclusion: "no graded line on Y over F_q, hence no line on X over F_q((t))".into(),
    })
}

/// A line on `X` over `F_q((u))` and the maps it yields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ULineCompanion {
    pub y_line_count: u64,
    pub y_line: [Vec<String>; 2],
    pub x_line: [Vec<String>; 2],
    pub forward: Vec<String>,
    pub inverse: Vec<String>,
    pub minors: [String; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentReport {
    pub kind: String,
    pub params: Vec<String>,
    pub base: FieldSpec,
    pub precision: usize,
    pub pencil: PencilJson,
    pub special_fiber: PencilJson,
    pub generic_smoothness: SmoothnessReport,
    pub special_fiber_smoothness: SmoothnessReport,
    pub certificate: GradedLineCertificate,
    pub verdict: String,
    pub notes: Vec<String>,
    /// A point of `X(F_q((t)))` with `X_0 = X_1 = 0`, if found.
    pub slice_point: Option<Vec<String>>,
    pub u_line: Option<ULineCompanion>,
}

const FINITE_RESIDUE_NOTE: &str = "residue field F_q in place of an algebraically closed field: \
a line over F_q((t)) specializes to a line over F_q, so sweeps over F_q suffice";

fn slice_point(lp: &LaurentPencil, y: &Pencil<FiniteField>, budget: u128) -> Result<Option<Vec<Fe>>> {
    let f = &lp.base;
    let vals: Vec<Fe> = f.elements().collect();
    let basis: Vec<Vec<Fe>> = (2..NVARS).map(unit).collect();
    let pts = zeros_on_subspace(f, y.forms(), &basis, &vals, budget)?;
    let Some(p) = pts.into_iter().min() else {
        return Ok(None);
    };
    let lf = lp.pencil.field();
    let x: Vec<Series<Fe>> = p.iter().map(|c| lf.constant(c)).collect();
    if !lp.pencil.vanishes_at(&x) {
        return Err(Error::CertificateFailed("slice point is not on X".into()));
    }
    Ok(Some(p))
}

fn u_line(lp: &LaurentPencil, y: &Pencil<FiniteField>, max_q: u64) -> Result<Option<ULineCompanion>> {
    let lines = enumerate_lines_bounded(y, max_q)?;
    let Some(l) = lines.lines.first() else {
        return Ok(None);
    };
    let uf = lp.u_field()?;
    let xu = lp.x_over_u()?;
    let lift = |r: &Vec<Fe>| -> Vec<Series<Fe>> {
        r.iter()
            .enumerate()
            .map(|(i, c)| uf.monomial(c, if i < 2 { 0 } else { 1 }))
            .collect()
    };
    let rows: Vec<Vec<Series<Fe>>> = l.rows().iter().map(lift).collect();
    let xl = Line::from_rows(&uf, &rows)?;
    if !line_contained(&xu, &xl) {
        return Err(Error::CertificateFailed("transported line is not on X".into()));
    }
    let (_, d, maps) = rationalize(&xu, &xl)?;
    verify_map_pair(&xu, &d, &maps)?;
    let (forward, inverse) = maps.display();
    Ok(Some(ULineCompanion {
        y_line_count: lines.len() as u64,
        y_line: line_to_json(&lp.base, l),
        x_line: line_to_json(&uf, &xl),
        forward,
        inverse,
        minors: d.minors().map(|m| m.display_with(&uf, "Y")),
    }))
}

/// The verdict for the example pencil: not rational over `F_q((t))`, with
/// the graded-line certificate and both companions.
pub fn descent_verdict(
    lp: &LaurentPencil,
    max_extension: u32,
    max_q: u64,
    budget: u128,
) -> Result<DescentReport> {
    let generic = lp.pencil.smoothness_check(max_extension)?;
    generic.require_not_singular()?;
    let y = lp.special_fiber()?;
    let special = y.smoothness_check(max_extension)?;
    special.require_not_singular()?;
    let certificate = graded_line_analysis(&y)?;
    let mut notes = vec![FINITE_RESIDUE_NOTE.to_string()];
    if lp.base.characteristic() == 2 {
        notes.push(
            "u^2 = t is purely inseparable: X is rational over F_q((u)), not over F_q((t))".into(),
        );
    }
    for r in [&generic, &special] {
        if let Some(n) = &r.note {
            if n.contains("assumed") {
                notes.push(n.clone());
            }
        }
    }
    let point = slice_point(lp, &y, budget)?;
    if point.is_none() {
        notes.push(Error::NoSlicePoint.to_string());
    }
    let f = &lp.base;
    Ok(DescentReport {
        kind: lp.kind.name().into(),
        params: lp.kind.params().iter().map(|c| f.format(c)).collect(),
        base: f.spec(),
        precision: lp.precision(),
        pencil: pencil_to_json(&lp.pencil),
        special_fiber: pencil_to_json(&y),
        generic_smoothness: generic,
        special_fiber_smoothness: special,
        certificate,
        verdict: "not_rational".into(),
        notes,
        slice_point: point.map(|p| p.iter().map(|c| f.format(c)).collect()),
        u_line: u_line(lp, &y, max_q)?,
    })
}

/// Recognizes a pencil over `F_q((t))` as one of the two examples.
pub fn recognize(p: &Pencil<Laurent<FiniteField>>) -> Option<LaurentPencil> {
    let lf = p.field();
    let f = lf.base();
    let coeff = |e: usize, i: usize, j: usize, pw: i64| -> Option<Fe> {
        let c = p.forms()[e].coeff(lf, &Monomial::quadratic(i, j));
        if c.is_exact_zero() {
            return Some(Fe::ZERO);
        }
        let d = c.digits();
        (c.valuation()? == pw && d[1..].iter().all(|x| *x == Fe::ZERO)).then_some(d[0])
    };
    let kind = if f.characteristic() == 2 {
        let get = |i: usize| coeff(1, i, i + 1, if i == 0 { 1 } else { 0 });
        ExampleKind::CharTwo([get(0)?, get(2)?, get(4)?])
    } else {
        let a: Vec<Fe> = (0..NVARS)
            .map(|i| coeff(1, i, i, if i < 2 { 1 } else { 0 }))
            .collect::<Option<_>>()?;
        ExampleKind::OddChar(a.try_into().ok()?)
    };
    let lp = LaurentPencil::new(f, kind, lf.precision()).ok()?;
    (lf.var() == "t" && pencil_to_json(&lp.pencil) == pencil_to_json(p)).then_some(lp)
}
