//! JSON formats: pencil files, line sets, and the canonical digest.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::field::{Field, FieldSpec};
use crate::algebra::finite::FiniteField;
use crate::algebra::form::{HomogeneousForm, Monomial};
use crate::algebra::laurent::Laurent;
use crate::algebra::rational::Rationals;
use crate::error::{Error, Result};
use crate::lines::Line;
use crate::pencil::{Pencil, NVARS};

/// One coefficient: `m = [i, j]` with `i <= j` encodes `X_i X_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub m: [usize; 2],
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PencilJson {
    pub field: FieldSpec,
    pub q1: Vec<TermJson>,
    pub q2: Vec<TermJson>,
}

/// A field built from a [`FieldSpec`].
#[derive(Clone, Debug)]
pub enum AnyField {
    Finite(FiniteField),
    Rationals(Rationals),
    LaurentFinite(Laurent<FiniteField>),
    LaurentRationals(Laurent<Rationals>),
}

impl AnyField {
    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        Ok(match spec {
            FieldSpec::Prime { p } => AnyField::Finite(FiniteField::prime(*p)?),
            FieldSpec::Ext { p, k, modulus } => AnyField::Finite(match modulus {
                None => FiniteField::new(*p, *k)?,
                Some(m) => FiniteField::with_modulus(*p, *k, m)?,
            }),
            FieldSpec::Rationals => AnyField::Rationals(Rationals),
            FieldSpec::Laurent {
                base,
                precision,
                var,
            } => match AnyField::from_spec(base)? {
                AnyField::Finite(f) => {
                    AnyField::LaurentFinite(Laurent::with_var(f, *precision, var)?)
                }
                AnyField::Rationals(q) => {
                    AnyField::LaurentRationals(Laurent::with_var(q, *precision, var)?)
                }
                _ => {
                    return Err(Error::UnsupportedField(
                        "iterated Laurent series fields".into(),
                    ))
                }
            },
        })
    }
}

/// A parsed pencil over whichever field its file names.
#[derive(Clone, Debug)]
pub enum AnyPencil {
    Finite(Pencil<FiniteField>),
    Rationals(Pencil<Rationals>),
    LaurentFinite(Pencil<Laurent<FiniteField>>),
    LaurentRationals(Pencil<Laurent<Rationals>>),
}

impl AnyPencil {
    pub fn spec(&self) -> FieldSpec {
        match self {
            AnyPencil::Finite(p) => p.field().spec(),
            AnyPencil::Rationals(p) => p.field().spec(),
            AnyPencil::LaurentFinite(p) => p.field().spec(),
            AnyPencil::LaurentRationals(p) => p.field().spec(),
        }
    }

    pub fn to_json(&self) -> PencilJson {
        match self {
            AnyPencil::Finite(p) => pencil_to_json(p),
            AnyPencil::Rationals(p) => pencil_to_json(p),
            AnyPencil::LaurentFinite(p) => pencil_to_json(p),
            AnyPencil::LaurentRationals(p) => pencil_to_json(p),
        }
    }

    pub fn digest(&self) -> String {
        digest_json(&self.to_json())
    }
}

fn parse_form<F: Field>(field: &F, terms: &[TermJson], name: &str) -> Result<HomogeneousForm<F>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for t in terms {
        let [i, j] = t.m;
        if i > j || j >= NVARS {
            return Err(Error::InvalidInput(format!(
                "{name}: monomial [{i}, {j}] must satisfy 0 <= i <= j <= 5"
            )));
        }
        if !seen.insert((i, j)) {
            return Err(Error::InvalidInput(format!(
                "{name}: duplicate monomial [{i}, {j}]"
            )));
        }
        let c = field
            .parse(&t.c)
            .map_err(|e| Error::Parse(format!("{name}: coefficient of [{i}, {j}]: {e}")))?;
        out.push((Monomial::quadratic(i, j), c));
    }
    HomogeneousForm::from_terms(field, NVARS, 2, out)
}

pub fn pencil_from_json_with<F: Field>(field: F, pj: &PencilJson) -> Result<Pencil<F>> {
    let q1 = parse_form(&field, &pj.q1, "q1")?;
    let q2 = parse_form(&field, &pj.q2, "q2")?;
    Pencil::new(field, q1, q2)
}

pub fn pencil_from_json(pj: &PencilJson) -> Result<AnyPencil> {
    Ok(match AnyField::from_spec(&pj.field)? {
        AnyField::Finite(f) => AnyPencil::Finite(pencil_from_json_with(f, pj)?),
        AnyField::Rationals(f) => AnyPencil::Rationals(pencil_from_json_with(f, pj)?),
        AnyField::LaurentFinite(f) => AnyPencil::LaurentFinite(pencil_from_json_with(f, pj)?),
        AnyField::LaurentRationals(f) => {
            AnyPencil::LaurentRationals(pencil_from_json_with(f, pj)?)
        }
    })
}

/// Parses a pencil file. Malformed JSON errors carry line and column.
pub fn parse_pencil(text: &str) -> Result<AnyPencil> {
    let pj: PencilJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("pencil JSON: {e}")))?;
    pencil_from_json(&pj)
}

fn form_to_json<F: Field>(field: &F, q: &HomogeneousForm<F>) -> Vec<TermJson> {
    let mut v: Vec<TermJson> = q
        .terms()
        .map(|(m, c)| {
            let f = m.factors();
            TermJson {
                m: [f[0], f[1]],
                c: field.format(c),
            }
        })
        .collect();
    v.sort_by_key(|t| t.m);
    v
}

/// Canonical JSON form: terms sorted by monomial, zero terms dropped,
/// coefficients in the field's canonical format.
pub fn pencil_to_json<F: Field>(p: &Pencil<F>) -> PencilJson {
    PencilJson {
        field: p.field().spec(),
        q1: form_to_json(p.field(), p.q1()),
        q2: form_to_json(p.field(), p.q2()),
    }
}

pub fn digest_json(pj: &PencilJson) -> String {
    let bytes = serde_json::to_vec(pj).expect("pencil JSON serializes");
    format!("sha256:{}", hex::encode(Sha256::digest(&bytes)))
}

/// SHA-256 of the canonical serialization.
pub fn pencil_digest<F: Field>(p: &Pencil<F>) -> String {
    digest_json(&pencil_to_json(p))
}

/// Line set report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineSetJson {
    pub field: FieldSpec,
    pub digest: String,
    pub count: usize,
    pub lines: Vec<[Vec<String>; 2]>,
}

pub fn line_to_json<F: Field>(field: &F, l: &Line<F>) -> [Vec<String>; 2] {
    let r = l.rows();
    [
        r[0].iter().map(|c| field.format(c)).collect(),
        r[1].iter().map(|c| field.format(c)).collect(),
    ]
}

pub fn line_from_json<F: Field>(field: &F, rows: &[Vec<String>; 2]) -> Result<Line<F>> {
    let parsed: Result<Vec<Vec<F::Elem>>> = rows
        .iter()
        .map(|r| {
            if r.len() != NVARS {
                return Err(Error::InvalidInput("line rows need 6 entries".into()));
            }
            r.iter().map(|s| field.parse(s)).collect()
        })
        .collect();
    Line::from_rows(field, &parsed?)
}
