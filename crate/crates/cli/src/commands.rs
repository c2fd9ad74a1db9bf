use quadrics::algebra::projective::normalize;
use quadrics::algebra::{Fe, Field, FiniteField, Rationals};
use quadrics::arithmetic::{
    blowup_count_identity, count_projective_zeros, decide_finite, decide_laurent, decide_rationals,
    delta_counts, hyperelliptic_crosscheck, torsor_count_check, weil_from_counts, Decision, Options,
    RationalityVerdict,
};
use quadrics::descent::{descent_verdict, ExampleKind, LaurentPencil};
use quadrics::io::{line_to_json, parse_pencil, pencil_digest, AnyPencil};
use quadrics::lines::{
    enumerate_lines_bounded, enumerate_lines_height, incident_lines_in, normal_splitting, Line,
    Splitting,
};
use quadrics::pencil::{Pencil, SmoothnessCheck, SmoothnessReport, SmoothnessVerdict, NVARS};
use quadrics::projection::{
    chi, delta_curve, delta_invariants, hilbert_function, rationalize, standardize_line,
    verify_map_pair,
};
use quadrics::Error;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::Envelope;
use crate::{CliError, Command, Common, DemoKind};

type Res<T> = std::result::Result<T, CliError>;

/// Round-trip samples drawn by `rationalize`.
const ROUND_TRIP_POINTS: usize = 100;
const ROUND_TRIP_TRIES: usize = 100_000;

fn options(c: &Common) -> Options {
    Options {
        max_extension: c.max_extension,
        height_bound: c.height_bound,
        ..Options::default()
    }
}

fn load(c: &Common) -> Res<AnyPencil> {
    let path = c
        .input
        .as_ref()
        .ok_or_else(|| CliError::Input("--in <FILE> is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_pencil(&text)?)
}

fn unsupported(what: &str, p: &AnyPencil) -> CliError {
    CliError::Core(Error::UnsupportedField(format!("{what} over {}", p.spec())))
}

fn finite_only<'a>(what: &str, p: &'a AnyPencil) -> Res<&'a Pencil<FiniteField>> {
    match p {
        AnyPencil::Finite(p) => Ok(p),
        _ => Err(unsupported(what, p)),
    }
}

fn residue_q(p: &AnyPencil) -> Option<u64> {
    match p {
        AnyPencil::Finite(p) => Some(p.field().q()),
        AnyPencil::LaurentFinite(p) => Some(p.field().base().q()),
        _ => None,
    }
}

pub fn dispatch(cmd: &Command, command_line: &[String]) -> Res<Value> {
    if let Command::LaurentDemo { common, kind, q, a } = cmd {
        return laurent_demo(common, *kind, *q, a, command_line);
    }
    let c = cmd.common();
    let p = load(c)?;
    let opts = options(c);
    let result = match cmd {
        Command::CheckSmooth(_) => check_smooth(&p, &opts)?,
        Command::FindLines(_) => find_lines(&p, &opts)?,
        Command::Incidence { choice, .. } => incidence(&p, &opts, choice.line)?,
        Command::NormalType(_) => normal_type(&p, &opts)?,
        Command::Delta { choice, .. } => delta(&p, &opts, choice.line)?,
        Command::Rationalize { choice, .. } => rationalize_cmd(&p, &opts, choice.line, c.seed)?,
        Command::Count(_) => count(finite_only("count", &p)?, &opts)?,
        Command::Weil(_) => weil(finite_only("weil", &p)?, &opts)?,
        Command::TorsorCheck(_) => {
            let r = torsor_count_check(finite_only("torsor-check", &p)?, &opts)?;
            json!({"report": r, "verdict": if r.equal { "holds" } else { "fails" }})
        }
        Command::BlowupCheck(_) => {
            let r = blowup_count_identity(finite_only("blowup-check", &p)?, &opts)?;
            json!({"report": r, "verdict": if r.holds { "holds" } else { "fails" }})
        }
        Command::HyperellipticCheck(_) => {
            let r = hyperelliptic_crosscheck(finite_only("hyperelliptic-check", &p)?, &opts)?;
            let v = if r.match_exact {
                "match"
            } else if r.match_twist {
                "match_up_to_twist"
            } else {
                "mismatch"
            };
            json!({"report": r, "verdict": v})
        }
        Command::Decide(_) => decide(&p, &opts)?,
        Command::LaurentDemo { .. } => unreachable!(),
    };
    Ok(Envelope {
        command: cmd.name(),
        command_line,
        digest: p.digest(),
        field: serde_json::to_value(p.spec()).expect("field spec serializes"),
        q: residue_q(&p),
        result,
    }
    .into_value())
}

fn smoothness_notes(r: &SmoothnessReport, k: u32) -> Vec<String> {
    match r.verdict {
        SmoothnessVerdict::Unknown => vec![format!("smoothness: assumed beyond depth {k}")],
        _ => Vec::new(),
    }
}

fn check_smooth(p: &AnyPencil, opts: &Options) -> Res<Value> {
    let k = opts.max_extension;
    let r = match p {
        AnyPencil::Finite(p) => p.smoothness_check(k)?,
        AnyPencil::Rationals(p) => p.smoothness_check(k)?,
        AnyPencil::LaurentFinite(p) => p.smoothness_check(k)?,
        AnyPencil::LaurentRationals(p) => p.smoothness_check(k)?,
    };
    Ok(json!({
        "verdict": verdict_name(&r),
        "smoothness": r,
        "notes": smoothness_notes(&r, k),
    }))
}

fn verdict_name(r: &SmoothnessReport) -> &'static str {
    match r.verdict {
        SmoothnessVerdict::Smooth => "smooth",
        SmoothnessVerdict::Singular { .. } => "singular",
        SmoothnessVerdict::Unknown => "unknown",
    }
}

fn search_json(p: &AnyPencil, opts: &Options) -> Value {
    match p {
        AnyPencil::Finite(_) => json!({"kind": "exhaustive", "max_q": opts.max_q}),
        _ => json!({"kind": "height", "height_bound": opts.height_bound}),
    }
}

fn find_lines(p: &AnyPencil, opts: &Options) -> Res<Value> {
    let set = match p {
        AnyPencil::Finite(p) => enumerate_lines_bounded(p, opts.max_q)?.to_json(),
        AnyPencil::Rationals(p) => enumerate_lines_height(p, opts.height_bound)?.to_json(),
        _ => return Err(unsupported("line search", p)),
    };
    Ok(json!({
        "count": set.count,
        "lines": set,
        "search": search_json(p, opts),
    }))
}

fn pick<'a, F: Field>(lines: &'a [Line<F>], i: usize) -> Res<&'a Line<F>> {
    lines.get(i).ok_or_else(|| {
        CliError::Input(format!("--line {i}: only {} lines were found", lines.len()))
    })
}

fn incidence_generic<F: Field>(p: &Pencil<F>, lines: &[Line<F>], i: usize) -> Res<Value> {
    let f = p.field();
    let lambda = pick(lines, i)?;
    let inc = incident_lines_in(f, lines, lambda)?;
    let items: Vec<Value> = inc
        .iter()
        .map(|(l, x)| {
            json!({
                "line": line_to_json(f, l),
                "point": x.iter().map(|c| f.format(c)).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({
        "line_index": i,
        "line": line_to_json(f, lambda),
        "count": items.len(),
        "incident": items,
    }))
}

fn incidence(p: &AnyPencil, opts: &Options, i: usize) -> Res<Value> {
    match p {
        AnyPencil::Finite(p) => incidence_generic(p, &enumerate_lines_bounded(p, opts.max_q)?.lines, i),
        AnyPencil::Rationals(p) => {
            incidence_generic(p, &enumerate_lines_height(p, opts.height_bound)?.lines, i)
        }
        _ => Err(unsupported("incidence", p)),
    }
}

fn normal_generic<F: Field>(p: &Pencil<F>, lines: &[Line<F>]) -> Res<Value> {
    let f = p.field();
    let mut items = Vec::new();
    let (mut bal, mut unbal) = (0u64, 0u64);
    for l in lines {
        let n = normal_splitting(p, l)?;
        match n.splitting {
            Splitting::Balanced => bal += 1,
            Splitting::Unbalanced => unbal += 1,
        }
        items.push(json!({"line": line_to_json(f, l), "normal": n}));
    }
    Ok(json!({
        "count": lines.len(),
        "balanced": bal,
        "unbalanced": unbal,
        "lines": items,
    }))
}

fn normal_type(p: &AnyPencil, opts: &Options) -> Res<Value> {
    match p {
        AnyPencil::Finite(p) => normal_generic(p, &enumerate_lines_bounded(p, opts.max_q)?.lines),
        AnyPencil::Rationals(p) => {
            normal_generic(p, &enumerate_lines_height(p, opts.height_bound)?.lines)
        }
        _ => Err(unsupported("normal bundles", p)),
    }
}

fn delta(p: &AnyPencil, opts: &Options, i: usize) -> Res<Value> {
    match p {
        AnyPencil::Finite(p) => {
            let f = p.field();
            let lines = enumerate_lines_bounded(p, opts.max_q)?.lines;
            let l = pick(&lines, i)?;
            let s = standardize_line(p, l)?;
            let d = delta_curve(&s);
            let inv = delta_invariants(&s, opts.max_extension, opts.budget)?;
            let weil = match inv.point_counts.as_slice() {
                [n1, n2, ..] => Some(weil_from_counts(*n1, *n2, f.q())?),
                _ => None,
            };
            Ok(json!({
                "line_index": i,
                "line": line_to_json(f, l),
                "minors": d.minors().map(|m| m.display_with(f, "Y")),
                "invariants": inv,
                "weil": weil,
            }))
        }
        AnyPencil::Rationals(p) => {
            let f = p.field();
            let lines = enumerate_lines_height(p, opts.height_bound)?.lines;
            let l = pick(&lines, i)?;
            let s = standardize_line(p, l)?;
            let d = delta_curve(&s);
            let mut hilbert = Vec::new();
            for n in 1..=10u32 {
                let h = hilbert_function(f, &d.minors(), n)?;
                if h as i64 != chi(n as i64) {
                    return Err(Error::NotACurve(format!("Hilbert function {h} in degree {n}")).into());
                }
                hilbert.push(h);
            }
            Ok(json!({
                "line_index": i,
                "line": line_to_json(f, l),
                "minors": d.minors().map(|m| m.display_with(f, "Y")),
                "chi_table": (0..=10).map(chi).collect::<Vec<_>>(),
                "hilbert_table": hilbert,
                "syzygies_vanish": d.syzygies(&s).iter().all(|g| g.is_zero(f)),
            }))
        }
        _ => Err(unsupported("Delta", p)),
    }
}

/// Samples `y` in `P^3`, checks `forward(inverse(y)) = y`.
fn round_trip<F: Field>(
    p: &Pencil<F>,
    maps: &quadrics::projection::RationalMapPair<F>,
    seed: u64,
    mut sample: impl FnMut(&mut ChaCha8Rng) -> F::Elem,
) -> Res<Value> {
    let f = p.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut tested, mut agree, mut tries) = (0usize, 0usize, 0usize);
    while tested < ROUND_TRIP_POINTS && tries < ROUND_TRIP_TRIES {
        tries += 1;
        let y: Vec<F::Elem> = (0..4).map(|_| sample(&mut rng)).collect();
        if y.iter().all(|c| f.is_zero(c)) {
            continue;
        }
        let y = normalize(f, &y)?;
        let Some(x) = maps.apply_inverse(&y) else { continue };
        let Some(back) = maps.apply_forward(&x) else { continue };
        tested += 1;
        if p.vanishes_at(&x) && back == y {
            agree += 1;
        }
    }
    Ok(json!({"seed": seed, "points_tested": tested, "agree": agree, "holds": tested == agree}))
}

fn rationalize_generic<F: Field>(
    p: &Pencil<F>,
    lines: &[Line<F>],
    i: usize,
    seed: u64,
    sample: impl FnMut(&mut ChaCha8Rng) -> F::Elem,
) -> Res<Value> {
    let f = p.field();
    let l = pick(lines, i)?;
    let (_, d, maps) = rationalize(p, l)?;
    verify_map_pair(p, &d, &maps)?;
    let (forward, inverse) = maps.display();
    Ok(json!({
        "line_index": i,
        "line": line_to_json(f, l),
        "forward": forward,
        "inverse": inverse,
        "minors": d.minors().map(|m| m.display_with(f, "Y")),
        "identities_verified": true,
        "round_trip": round_trip(p, &maps, seed, sample)?,
    }))
}

fn rationalize_cmd(p: &AnyPencil, opts: &Options, i: usize, seed: u64) -> Res<Value> {
    match p {
        AnyPencil::Finite(p) => {
            let f = p.field().clone();
            let lines = enumerate_lines_bounded(p, opts.max_q)?.lines;
            rationalize_generic(p, &lines, i, seed, |r| f.elem(r.random_range(0..f.q() as u32)))
        }
        AnyPencil::Rationals(p) => {
            let lines = enumerate_lines_height(p, opts.height_bound)?.lines;
            rationalize_generic(p, &lines, i, seed, |r| Rationals.from_int(r.random_range(-9..=9)))
        }
        _ => Err(unsupported("rationalization", p)),
    }
}

fn count(p: &Pencil<FiniteField>, opts: &Options) -> Res<Value> {
    let f = p.field();
    let points_x = count_projective_zeros(f, p.forms(), NVARS, opts.budget)?;
    let mut notes = Vec::new();
    let lines = match enumerate_lines_bounded(p, opts.max_q) {
        Ok(set) => Some(set.lines),
        Err(e @ Error::FieldTooLarge { .. }) => {
            notes.push(format!("delta: no line search, {e}"));
            None
        }
        Err(e) => return Err(e.into()),
    };
    let delta = match lines.as_ref().and_then(|ls| ls.first()) {
        Some(l) => {
            let s = standardize_line(p, l)?;
            json!({
                "line": line_to_json(f, l),
                "counts": delta_counts(&s, opts.max_extension, opts.budget)?,
            })
        }
        None => Value::Null,
    };
    Ok(json!({
        "points_x": points_x,
        "line_count": lines.map(|ls| ls.len()),
        "delta": delta,
        "notes": notes,
    }))
}

fn weil(p: &Pencil<FiniteField>, opts: &Options) -> Res<Value> {
    let f = p.field();
    let lines = enumerate_lines_bounded(p, opts.max_q)?.lines;
    let l = lines
        .first()
        .ok_or_else(|| Error::CertificateFailed("no line over the base field".into()))?;
    let s = standardize_line(p, l)?;
    let depth = opts.max_extension.max(2);
    let counts = delta_counts(&s, depth, opts.budget)?;
    let w = weil_from_counts(counts[0], counts[1], f.q())?;
    let predicted: Vec<i128> = (1..=depth).map(|k| w.predicted_count(k)).collect();
    let consistent = predicted.iter().zip(&counts).all(|(a, b)| *a == *b as i128);
    Ok(json!({
        "line": line_to_json(f, l),
        "weil": w,
        "power_sums": w.power_sums(depth as usize),
        "observed_counts": counts,
        "predicted_counts": predicted,
        "verdict": if consistent { "consistent" } else { "inconsistent" },
    }))
}

fn decision_json<F: Field>(p: &Pencil<F>, d: &Decision<F>, k: u32) -> Value {
    let f = p.field();
    let mut out = json!({
        "verdict": d.verdict.name(),
        "smoothness": d.smoothness,
        "lines_found": d.lines_found,
        "notes": smoothness_notes(&d.smoothness, k),
    });
    let m = out.as_object_mut().unwrap();
    match &d.verdict {
        RationalityVerdict::Rational { line, delta, maps } => {
            let (forward, inverse) = maps.display();
            m.insert("line".into(), json!(line_to_json(f, line)));
            m.insert("forward".into(), json!(forward));
            m.insert("inverse".into(), json!(inverse));
            m.insert("minors".into(), json!(delta.minors().map(|g| g.display_with(f, "Y"))));
        }
        RationalityVerdict::NotRational { certificate } => {
            m.insert("certificate".into(), json!(certificate));
        }
        RationalityVerdict::Unknown { search_bound } => {
            m.insert("search_bound".into(), json!(search_bound));
        }
    }
    out
}

fn decide(p: &AnyPencil, opts: &Options) -> Res<Value> {
    let k = opts.max_extension;
    Ok(match p {
        AnyPencil::Finite(p) => decision_json(p, &decide_finite(p, opts)?, k),
        AnyPencil::Rationals(p) => decision_json(p, &decide_rationals(p, opts)?, k),
        AnyPencil::LaurentFinite(p) => decision_json(p, &decide_laurent(p, opts)?, k),
        AnyPencil::LaurentRationals(_) => return Err(unsupported("rationality decision", p)),
    })
}

fn laurent_demo(c: &Common, kind: DemoKind, q: u64, a: &str, command_line: &[String]) -> Res<Value> {
    let f = FiniteField::of_order(q)?;
    let params: Vec<Fe> = a
        .split(',')
        .map(|s| f.parse(s.trim()))
        .collect::<quadrics::Result<_>>()?;
    let kind = match (kind, params.as_slice()) {
        (DemoKind::Odd, [a0, a1, a2, a3, a4, a5]) => ExampleKind::OddChar([*a0, *a1, *a2, *a3, *a4, *a5]),
        (DemoKind::Char2, [a0, b0, c0]) => ExampleKind::CharTwo([*a0, *b0, *c0]),
        (DemoKind::Odd, _) => return Err(CliError::Input("--kind odd needs 6 parameters".into())),
        (DemoKind::Char2, _) => return Err(CliError::Input("--kind char2 needs 3 parameters".into())),
    };
    let lp = LaurentPencil::new(&f, kind, c.precision as usize)?;
    let opts = options(c);
    let r = descent_verdict(&lp, opts.max_extension, opts.max_q, opts.budget)?;
    Ok(Envelope {
        command: "laurent-demo",
        command_line,
        digest: pencil_digest(&lp.pencil),
        field: serde_json::to_value(lp.pencil.field().spec()).expect("field spec serializes"),
        q: Some(q),
        result: json!({"verdict": r.verdict.clone(), "certificate": r}),
    }
    .into_value())
}
