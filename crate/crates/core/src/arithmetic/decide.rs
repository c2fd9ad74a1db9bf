use crate::algebra::finite::FiniteField;
use crate::algebra::field::Field;
use crate::algebra::laurent::Laurent;
use crate::algebra::rational::Rationals;
use crate::descent::{descent_verdict, recognize, DescentReport};
use crate::error::Result;
use crate::lines::{enumerate_lines_bounded, enumerate_lines_height, Line};
use crate::pencil::{Pencil, SmoothnessCheck, SmoothnessReport};
use crate::projection::{rationalize, verify_map_pair, DeltaCurve, RationalMapPair};

use super::Options;

pub enum RationalityVerdict<F: Field> {
    /// A line over the base field with a verified map pair.
    Rational {
        line: Line<F>,
        delta: DeltaCurve<F>,
        maps: RationalMapPair<F>,
    },
    NotRational { certificate: Box<DescentReport> },
    /// Nothing found within the search bound.
    Unknown { search_bound: u64 },
}

impl<F: Field> RationalityVerdict<F> {
    pub fn name(&self) -> &'static str {
        match self {
            RationalityVerdict::Rational { .. } => "rational",
            RationalityVerdict::NotRational { .. } => "not_rational",
            RationalityVerdict::Unknown { .. } => "unknown",
        }
    }
}

pub struct Decision<F: Field> {
    pub smoothness: SmoothnessReport,
    pub lines_found: u64,
    pub verdict: RationalityVerdict<F>,
}

fn from_lines<F: Field>(
    p: &Pencil<F>,
    smoothness: SmoothnessReport,
    lines: Vec<Line<F>>,
    bound: u64,
) -> Result<Decision<F>> {
    let lines_found = lines.len() as u64;
    let verdict = match lines.into_iter().next() {
        Some(line) => {
            let (_, delta, maps) = rationalize(p, &line)?;
            verify_map_pair(p, &delta, &maps)?;
            RationalityVerdict::Rational { line, delta, maps }
        }
        None => RationalityVerdict::Unknown {
            search_bound: bound,
        },
    };
    Ok(Decision {
        smoothness,
        lines_found,
        verdict,
    })
}

/// Over `F_q` every line is found, so the answer is `Rational` exactly when
/// `X` has a line.
pub fn decide_finite(p: &Pencil<FiniteField>, opts: &Options) -> Result<Decision<FiniteField>> {
    let smoothness = p.smoothness_check(opts.max_extension)?;
    smoothness.require_not_singular()?;
    let lines = enumerate_lines_bounded(p, opts.max_q)?.lines;
    from_lines(p, smoothness, lines, p.field().q())
}

/// Searches rational lines of height at most `opts.height_bound`.
pub fn decide_rationals(p: &Pencil<Rationals>, opts: &Options) -> Result<Decision<Rationals>> {
    let smoothness = p.smoothness_check(opts.max_extension)?;
    smoothness.require_not_singular()?;
    let lines = enumerate_lines_height(p, opts.height_bound)?.lines;
    from_lines(p, smoothness, lines, opts.height_bound)
}

/// `NotRational` for the recognized example pencils, `Unknown` otherwise.
pub fn decide_laurent(
    p: &Pencil<Laurent<FiniteField>>,
    opts: &Options,
) -> Result<Decision<Laurent<FiniteField>>> {
    let smoothness = p.smoothness_check(opts.max_extension)?;
    smoothness.require_not_singular()?;
    let verdict = match recognize(p) {
        Some(lp) => RationalityVerdict::NotRational {
            certificate: Box::new(descent_verdict(&lp, opts.max_extension, opts.max_q, opts.budget)?),
        },
        None => RationalityVerdict::Unknown { search_bound: 0 },
    };
    Ok(Decision {
        smoothness,
        lines_found: 0,
        verdict,
    })
}
