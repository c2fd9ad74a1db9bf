use serde::Serialize;

use crate::algebra::field::Field;
use crate::algebra::finite::{Fe, FiniteField};
use crate::error::{Error, Result};
use crate::lines::{enumerate_lines_bounded, Line};
use crate::pencil::{pencil_discriminant_sextic, Pencil, SmoothnessCheck, NVARS};
use crate::projection::{delta_points, standardize_line, StandardizedPencil};

use super::count::count_projective_zeros;
use super::weil::{weil_from_counts, WeilData};
use super::Options;

/// `#Delta(F_{q^k})` for `k = 1, 2` and the resulting Weil data.
pub fn delta_weil(s: &StandardizedPencil<FiniteField>, budget: u128) -> Result<WeilData> {
    let counts = delta_counts(s, 2, budget)?;
    weil_from_counts(counts[0], counts[1], s.field.q())
}

/// `#Delta(F_{q^k})` for `k = 1..=depth`.
pub fn delta_counts(s: &StandardizedPencil<FiniteField>, depth: u32, budget: u128) -> Result<Vec<u64>> {
    let f = &s.field;
    (1..=depth)
        .map(|k| {
            let big = f.extension(k)?;
            let emb = f.embedding_into(&big)?;
            let sk = s.map_field(&big, |c: &Fe| emb[c.0 as usize]);
            Ok(delta_points(&sk, budget)?.len() as u64)
        })
        .collect()
}

fn smooth_lines(p: &Pencil<FiniteField>, opts: &Options) -> Result<Vec<Line<FiniteField>>> {
    p.smoothness_check(opts.max_extension)?.require_not_singular()?;
    Ok(enumerate_lines_bounded(p, opts.max_q)?.lines)
}

fn first_line(lines: &[Line<FiniteField>]) -> Result<&Line<FiniteField>> {
    lines
        .first()
        .ok_or_else(|| Error::CertificateFailed("no line over the base field".into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsorReport {
    pub q: u64,
    pub line_count: u64,
    pub weil: WeilData,
    pub equal: bool,
}

/// `#F(F_q)` against `#Jac(Delta)(F_q) = P(1)`, with `Delta` built from the
/// first enumerated line.
pub fn torsor_count_check(p: &Pencil<FiniteField>, opts: &Options) -> Result<TorsorReport> {
    let lines = smooth_lines(p, opts)?;
    let s = standardize_line(p, first_line(&lines)?)?;
    let weil = delta_weil(&s, opts.budget)?;
    Ok(TorsorReport {
        q: p.field().q(),
        line_count: lines.len() as u64,
        equal: weil.jacobian_order == lines.len() as i64,
        weil,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupReport {
    pub q: u64,
    pub points_x: u64,
    pub points_delta: u64,
    /// `q^3 + q^2 + q + 1 - q ((q + 1) - #Delta(F_q))`
    pub predicted: i64,
    pub holds: bool,
}

/// Right-hand side of the blow-up identity.
pub fn blowup_prediction(q: u64, points_delta: u64) -> i64 {
    let q = q as i64;
    q * q * q + q * q + q + 1 - q * ((q + 1) - points_delta as i64)
}

/// `#X(F_q)` against the count forced by `X` blown up in a line being `P^3`
/// blown up in `Delta`.
pub fn blowup_count_identity(p: &Pencil<FiniteField>, opts: &Options) -> Result<BlowupReport> {
    let f = p.field();
    let lines = smooth_lines(p, opts)?;
    let s = standardize_line(p, first_line(&lines)?)?;
    let points_delta = delta_points(&s, opts.budget)?.len() as u64;
    let points_x = count_projective_zeros(f, p.forms(), NVARS, opts.budget)?;
    let predicted = blowup_prediction(f.q(), points_delta);
    Ok(BlowupReport {
        q: f.q(),
        points_x,
        points_delta,
        predicted,
        holds: predicted == points_x as i64,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperellipticReport {
    pub q: u64,
    /// `f(x) = det(x A + B)`.
    pub sextic: String,
    pub curve_counts: [u64; 2],
    pub curve: WeilData,
    pub delta: WeilData,
    pub match_exact: bool,
    pub match_twist: bool,
    pub n2_agree: bool,
}

/// `#{y^2 = f(x)}` over `F`, with the points at infinity of the smooth
/// model: `1 + chi(lead)` in degree 6, one in degree 5.
fn hyperelliptic_count(f: &FiniteField, coeffs: &[Fe]) -> Result<u64> {
    let deg = coeffs
        .iter()
        .rposition(|c| *c != Fe::ZERO)
        .ok_or(Error::ZeroForm)?;
    let mut n: i64 = match deg {
        6 => 1 + f.legendre(coeffs[6]) as i64,
        5 => 1,
        d => {
            return Err(Error::WeilBoundViolated(format!(
                "sextic has degree {d} after dehomogenizing"
            )))
        }
    };
    for x in f.elements() {
        let v = coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, c| f.add(&f.mul(&acc, &x), c));
        n += 1 + f.legendre(v) as i64;
    }
    Ok(n as u64)
}

/// Compares the Weil data of `Delta` with that of `y^2 = det(x A + B)`.
pub fn hyperelliptic_crosscheck(p: &Pencil<FiniteField>, opts: &Options) -> Result<HyperellipticReport> {
    let f = p.field();
    if f.characteristic() == 2 {
        return Err(Error::CharTwo);
    }
    let sextic = pencil_discriminant_sextic(p)?;
    let lines = smooth_lines(p, opts)?;
    let s = standardize_line(p, first_line(&lines)?)?;
    let delta = delta_weil(&s, opts.budget)?;
    let f2 = f.extension(2)?;
    let emb = f.embedding_into(&f2)?;
    let c1: Vec<Fe> = sextic.coeffs().to_vec();
    let c2: Vec<Fe> = c1.iter().map(|c| emb[c.0 as usize]).collect();
    let curve_counts = [hyperelliptic_count(f, &c1)?, hyperelliptic_count(&f2, &c2)?];
    let curve = weil_from_counts(curve_counts[0], curve_counts[1], f.q())?;
    Ok(HyperellipticReport {
        q: f.q(),
        sextic: sextic.dehomogenize(f).display(f, "x"),
        match_exact: curve.e1 == delta.e1 && curve.e2 == delta.e2,
        match_twist: curve.e1.abs() == delta.e1.abs() && curve.e2 == delta.e2,
        n2_agree: curve.n2 == delta.n2,
        curve_counts,
        curve,
        delta,
    })
}
