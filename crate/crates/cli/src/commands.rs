use std::fmt::Write as _;

use anyhow::Context;
use serde_json::{json, Value};

use logtangent::blowup::{self, PicClass, Scenario};
use logtangent::exactalg::{parse_form, parse_rational, PointP2, Rational, VARS_DUAL};
use logtangent::p1split::{jumping_test_windowed, LineP2, SplittingType};
use logtangent::planelog::{self as pl, GradedPresentation, PlaneCurve, PointedCurve};
use logtangent::{rng, Error};

use crate::{Output, RunConfig, SheafInput};

fn read(path: &str) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {path}"))
}

fn splitting_json(s: &SplittingType) -> Value {
    json!({ "text": s.to_string(), "degrees": s.degrees, "torsion": s.torsion })
}

fn out(text: String, json: Value) -> anyhow::Result<Output> {
    Ok(Output { text, json, failure: None })
}

fn failed(text: String, json: Value, why: String) -> anyhow::Result<Output> {
    Ok(Output { text, json, failure: Some(why) })
}

/// A loaded sheaf with the marked points it is singular at, if any.
struct Sheaf {
    presentation: GradedPresentation,
    label: &'static str,
    points: Vec<PointP2>,
    arrangement: Option<pl::Arrangement>,
    expected: Option<pl::ChernPair>,
}

fn pointed_sheaf(pc: &PointedCurve) -> Result<GradedPresentation, Error> {
    if pc.curve.degree() == 2 && pc.points.len() == 3 {
        pl::steiner_conic_points(&pc.curve, &pc.points)
    } else {
        pl::pointed_presentation(pc)
    }
}

fn load(input: &SheafInput) -> anyhow::Result<Sheaf> {
    let given = [&input.presentation, &input.curve, &input.arrangement, &input.pointed];
    if given.iter().filter(|x| x.is_some()).count() != 1 {
        return Err(Error::Parse("give exactly one of --presentation, --curve, --arrangement, --pointed".into()).into());
    }
    let mut s = Sheaf { presentation: pl::cubic_point_matrix(), label: "", points: vec![], arrangement: None, expected: None };
    if let Some(path) = &input.presentation {
        s.presentation = GradedPresentation::from_text(&read(path)?)?;
        s.label = "presented sheaf";
    } else if let Some(text) = &input.curve {
        let c = PlaneCurve::parse(text)?;
        s.presentation = pl::logtangent_presentation(&c)?;
        s.label = "T(-log D)";
        let d = c.degree() as i64;
        s.expected = Some(pl::ChernPair::new(3 - d, d * d - 3 * d + 3));
    } else if let Some(text) = &input.arrangement {
        let a = pl::Arrangement::parse(text)?;
        s.presentation = pl::arrangement_presentation(&a)?;
        s.label = "T(-log D)";
        s.expected = Some(pl::arrangement_chern(&a));
        s.arrangement = Some(a);
    } else if let Some(path) = &input.pointed {
        let pc = PointedCurve::parse(&read(path)?)?;
        s.presentation = pointed_sheaf(&pc)?;
        s.label = "Omega^1(log(D,Z))";
        s.expected = Some(pl::chern_generalized(pc.curve.degree() as i64, pc.points.len() as i64)?);
        s.points = pc.points;
    }
    Ok(s)
}

fn check_line(s: &Sheaf, line: &LineP2) -> anyhow::Result<()> {
    if let Some(a) = &s.arrangement {
        if let Some((x, _)) = a.multiple_points().iter().find(|(x, _)| line.contains(x)) {
            return Err(Error::Precondition(format!(
                "{line} passes through the multiple point {x}; the gradient presentation is not read off there"
            ))
            .into());
        }
    }
    Ok(())
}

pub fn chern(input: &SheafInput) -> anyhow::Result<Output> {
    let s = load(input)?;
    let p = &s.presentation;
    let whitney = p.whitney_chern();
    let hilbert = pl::chern_from_hilbert(p, p.stable_degree());
    let mut text = format!("sheaf: {}\nrank: {}\nc1: {}\nc2: {}\n", s.label, p.rank, p.c1(), p.c2());
    writeln!(text, "whitney: {whitney}\nhilbert: {hilbert}").unwrap();
    let json = json!({
        "sheaf": s.label, "rank": p.rank, "c1": p.c1(), "c2": p.c2(),
        "whitney": [whitney.c1, whitney.c2], "hilbert": [hilbert.c1, hilbert.c2],
    });
    let expected = s.expected.unwrap_or(p.chern);
    if whitney != p.chern || hilbert != p.chern || expected != p.chern {
        return failed(text, json, format!("Chern numbers disagree: stated {}, formula {expected}", p.chern));
    }
    out(text, json)
}

pub fn splitting(run: &RunConfig, input: &SheafInput, line: &str) -> anyhow::Result<Output> {
    let s = load(input)?;
    let l = LineP2::parse(line)?;
    check_line(&s, &l)?;
    let sp = s.presentation.restricted_splitting(&l, run.degree_window)?;
    out(format!("{l} {sp}\n"), json!({ "line": l.to_string(), "sheaf": s.label, "splitting": splitting_json(&sp) }))
}

pub fn jumping_test(run: &RunConfig, input: &SheafInput, line: &str) -> anyhow::Result<Output> {
    let s = load(input)?;
    let l = LineP2::parse(line)?;
    check_line(&s, &l)?;
    let q = s.presentation.normalized();
    let twist = q.sheaf_twist - s.presentation.sheaf_twist;
    let v = jumping_test_windowed(&q, q.c1(), &l, run.degree_window)?;
    let text = format!(
        "line: {l}\nnormalized by: {twist}\nsplitting: {}\njumping: {}\norder: {}\n",
        v.splitting, v.jumping, v.order
    );
    out(
        text,
        json!({ "line": l.to_string(), "twist": twist, "splitting": splitting_json(&v.splitting), "jumping": v.jumping, "order": v.order }),
    )
}

pub fn jumping_curve(cubic: &str) -> anyhow::Result<Output> {
    let c = PlaneCurve::parse(cubic)?;
    let j = pl::jumping_curve_cubic(&c)?;
    let factors: Vec<String> = pl::rational_linear_factors(&j).iter().map(|f| f.to_string_with(&VARS_DUAL)).collect();
    let mut text = format!("{}\n", j.to_string_with(&VARS_DUAL));
    if !factors.is_empty() {
        writeln!(text, "linear factors: {}", factors.join(", ")).unwrap();
    }
    out(text, json!({ "curve": j.to_string_with(&VARS_DUAL), "linear_factors": factors }))
}

fn verdict_json(v: &pl::LineVerdict) -> Value {
    json!({
        "line": v.line.to_string(), "candidate": v.candidate, "jumping": v.verdict.jumping,
        "order": v.verdict.order, "splitting": v.verdict.splitting.to_string(),
    })
}

pub fn jumping_set(run: &RunConfig, pointed: Option<&str>, cubic: Option<&str>, negatives: usize) -> anyhow::Result<Output> {
    let report = match (pointed, cubic) {
        (Some(path), None) => {
            let pc = PointedCurve::parse(&read(path)?)?;
            let p = pointed_sheaf(&pc)?;
            pl::jumping_set_pointed_conic(&p, &pc, None, negatives, run.seed, run.certify)?
        }
        (None, Some(text)) => {
            let c = PlaneCurve::parse(text)?;
            let p = pl::logtangent_presentation(&c)?;
            pl::cubic_line_panel(&p, &c, negatives, run.seed)?
        }
        _ => return Err(Error::Parse("give exactly one of --pointed, --cubic".into()).into()),
    };
    let mut text = String::new();
    for v in &report.tested {
        if v.candidate || v.verdict.jumping {
            writeln!(text, "{} candidate={} jumping={} order={}", v.line, v.candidate, v.verdict.jumping, v.verdict.order)
                .unwrap();
        }
    }
    let lines: Vec<String> = report.jumping.iter().map(|l| l.to_string()).collect();
    writeln!(text, "jumping lines: {}", lines.join(" ")).unwrap();
    writeln!(text, "tested: {}", report.tested.len()).unwrap();
    writeln!(text, "completeness: {}", report.completeness.label()).unwrap();
    for c in &report.pencils {
        let ls: Vec<String> = c.lines.iter().map(|l| l.to_string()).collect();
        writeln!(text, "pencil through {}: gcd {} infinity={} lines {}", c.point, c.minors_gcd.to_string_with("l"), c.at_infinity, ls.join(" "))
            .unwrap();
    }
    let missed = report.missed_candidates();
    let unexpected = report.unexpected();
    let json = json!({
        "jumping": lines,
        "tested": report.tested.iter().map(verdict_json).collect::<Vec<_>>(),
        "completeness": report.completeness.label(),
        "dual_curve": report.dual_curve.as_ref().map(|f| f.to_string_with(&VARS_DUAL)),
        "pencils": report.pencils.iter().map(|c| json!({
            "point": c.point.to_string(), "minors_gcd": c.minors_gcd.to_string_with("l"),
            "at_infinity": c.at_infinity, "lines": c.lines.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "missed": missed.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "unexpected": unexpected.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
    });
    if !missed.is_empty() || !unexpected.is_empty() {
        return failed(text, json, format!("{} candidates did not jump, {} other lines did", missed.len(), unexpected.len()));
    }
    out(text, json)
}

pub fn freeness(arrangement: &str) -> anyhow::Result<Output> {
    let a = pl::Arrangement::parse(arrangement)?;
    let c = pl::arrangement_chern(&a);
    let m = pl::arrangement_multiplicity(&a);
    let mut text = format!("lines: {}\nmultiplicity: {m}\nchern: {c}\n", a.len());
    let verdict = match pl::freeness_certificate(&a) {
        pl::Freeness::Free { pair, splitting } => {
            writeln!(text, "free: O({}) + O({})", pair.0, pair.1).unwrap();
            json!({ "free": true, "pair": [pair.0, pair.1], "splitting": splitting_json(&splitting) })
        }
        pl::Freeness::Unknown => {
            text.push_str("free: unknown (neither criterion applies)\n");
            json!({ "free": Value::Null })
        }
    };
    out(text, json!({ "lines": a.len(), "multiplicity": m, "c1": c.c1, "c2": c.c2, "freeness": verdict }))
}

fn check_lines(seed: u64, z: &[PointP2]) -> Vec<LineP2> {
    let mut lines: Vec<LineP2> = (0..3)
        .map(|i| {
            let mut a = [0; 3];
            a[i] = 1;
            LineP2::from_coords(a).expect("nonzero")
        })
        .collect();
    let mut r = rng::stream(seed, "steiner-check");
    while lines.len() < 4 {
        if let Ok(l) = LineP2::from_coords(rng::triple(&mut r, 30)) {
            if z.iter().all(|q| !l.contains(q)) {
                lines.push(l);
            }
        }
    }
    lines
}

pub fn steiner(run: &RunConfig, pointed: &str) -> anyhow::Result<Output> {
    let pc = PointedCurve::parse(&read(pointed)?)?;
    let p = pointed_sheaf(&pc)?;
    let expected = pl::chern_generalized(pc.curve.degree() as i64, pc.points.len() as i64)?;
    let singular = pl::singular_locus_report(&p, &pc.points, run.seed, 20);
    let mut text = p.to_text();
    writeln!(text, "# chern {} whitney {} expected {expected}", p.chern, p.whitney_chern()).unwrap();
    writeln!(text, "# singular-locus-exact {}", singular.exact()).unwrap();
    let mut checks = Vec::new();
    for l in check_lines(run.seed, &pc.points) {
        let s = p.restricted_splitting(&l, run.degree_window)?;
        writeln!(text, "# splitting {l} {s}").unwrap();
        checks.push(json!({ "line": l.to_string(), "splitting": splitting_json(&s) }));
    }
    let json = json!({
        "presentation": p.to_text(), "chern": [p.c1(), p.c2()], "expected_chern": [expected.c1, expected.c2],
        "singular_locus_exact": singular.exact(), "checks": checks,
    });
    if p.chern != expected || p.whitney_chern() != expected || !singular.exact() {
        return failed(text, json, "the presentation does not match the pointed curve".into());
    }
    out(text, json)
}

fn report_text(r: &pl::PresentationReport) -> String {
    let mut t = format!("# chern {} whitney {}\n", r.chern, r.whitney_chern);
    let h: Vec<String> = r.hilbert.iter().map(|(t, h)| format!("{t}:{h}")).collect();
    writeln!(t, "# hilbert {}", h.join(" ")).unwrap();
    writeln!(t, "# singular-locus-exact {}", r.singular.exact()).unwrap();
    for (l, v) in &r.coordinate_lines {
        writeln!(t, "# line {l} jumping={} order={} splitting {}", v.jumping, v.order, v.splitting).unwrap();
    }
    writeln!(t, "# generic-splitting {}", r.generic_splitting).unwrap();
    t
}

pub fn nbar_matrix(run: &RunConfig, params: &str) -> anyhow::Result<Output> {
    let params: Vec<Rational> = params.split(',').map(parse_rational).collect::<Result<_, _>>()?;
    let (nbar, others) = pl::nbar_comparison(&params, run.seed)?;
    let expected = pl::nbar_expected_chern();
    let mut text = pl::cubic_point_matrix().to_text();
    text.push_str(&report_text(&nbar));
    let mut agree = nbar.chern == expected && nbar.singular.exact();
    let mut rows = Vec::new();
    for (a, r) in &others {
        let same = r.signature() == nbar.signature();
        agree &= same;
        writeln!(text, "# family a={a}: {}", if same { "matches" } else { "differs" }).unwrap();
        rows.push(json!({ "a": a.to_string(), "matches": same }));
    }
    let json = json!({
        "presentation": pl::cubic_point_matrix().to_text(),
        "point": pl::nbar_point().to_string(),
        "chern": [nbar.chern.c1, nbar.chern.c2],
        "singular_locus_exact": nbar.singular.exact(),
        "coordinate_lines": nbar.coordinate_lines.iter().map(|(l, v)| json!({
            "line": l.to_string(), "jumping": v.jumping, "order": v.order,
        })).collect::<Vec<_>>(),
        "generic_splitting": nbar.generic_splitting.to_string(),
        "family": rows,
    });
    if !agree {
        return failed(text, json, "the matrix and the pointed cubic family disagree".into());
    }
    out(text, json)
}

pub fn syzygy(forms: &str, max_degree: i64) -> anyhow::Result<Output> {
    let g: Vec<_> = forms.split(',').map(|s| parse_form(s.trim())).collect::<Result<_, _>>()?;
    let b = logtangent::exactalg::syzygies_up_to(&g, max_degree)?;
    let mut text = String::new();
    let mut gens = Vec::new();
    for (u, d) in b.generators.iter().zip(&b.degrees) {
        let cells: Vec<String> = u.iter().map(|f| f.to_string()).collect();
        writeln!(text, "degree {d}: ({})", cells.join(", ")).unwrap();
        gens.push(json!({ "degree": d, "entries": cells }));
    }
    if b.is_empty() {
        writeln!(text, "no syzygies up to degree {max_degree}").unwrap();
    }
    out(text, json!({ "max_degree": max_degree, "generators": gens }))
}

fn class(s: &str) -> anyhow::Result<PicClass> {
    Ok(s.parse::<PicClass>()?)
}

pub fn pic(c: &str, other: Option<&str>) -> anyhow::Result<Output> {
    let c = class(c)?;
    let h = PicClass::hyperplane();
    let genus = blowup::genus(&c).ok();
    let slope = blowup::slope_log(&c, &h);
    let mut text = format!("class: {c}\ncompact: {}\nself-intersection: {}\nanticanonical degree: {}\n", c.compact(), c.self_intersection(), c.degree());
    match genus {
        Some(g) => writeln!(text, "genus: {g}").unwrap(),
        None => writeln!(text, "genus: undefined").unwrap(),
    }
    writeln!(text, "slope of Omega^1(log D): {slope}").unwrap();
    let mut json = json!({
        "class": c.to_string(), "compact": c.compact(), "self_intersection": c.self_intersection(),
        "anticanonical_degree": c.degree(), "genus": genus, "slope_log": slope.to_string(),
    });
    if let Some(o) = other {
        let d = class(o)?;
        let n = blowup::intersect(&c, &d);
        writeln!(text, "intersection with {}: {n}", d.compact()).unwrap();
        json["other"] = json!(d.compact());
        json["intersection"] = json!(n);
    }
    out(text, json)
}

pub fn lines27() -> anyhow::Result<Output> {
    let lines = blowup::lines27();
    let mut text = String::new();
    for l in &lines {
        writeln!(text, "{}  {l}", l.compact()).unwrap();
    }
    out(text, json!({ "count": lines.len(), "lines": lines.iter().map(|l| l.compact()).collect::<Vec<_>>() }))
}

pub fn pushforward(c: &str, points: usize) -> anyhow::Result<Output> {
    let c = class(c)?;
    let p = blowup::pushforward_blowup(&c, points)?;
    out(
        format!("{p}\n"),
        json!({ "twist": p.twist, "ideal_powers": p.ideal_powers, "r1": p.r1, "rule_r1": "O/I^(b-2) for b > 2" }),
    )
}

pub fn keylemma(d: &str, c: &str, k: i64) -> anyhow::Result<Output> {
    let (d, c) = (class(d)?, class(c)?);
    let kr = blowup::key_splitting_on_s(&d, &c, k)?;
    let omega = blowup::omega_s_restriction(&c)?;
    let log_omega = (-kr.sub.max(kr.quotient), -kr.sub.min(kr.quotient));
    let mut text = format!("T_S(-log D)|C: sub O({}) quotient O({})\n", kr.sub, kr.quotient);
    match kr.splitting() {
        Some((a, b)) => writeln!(text, "splits: O({a}) + O({b})").unwrap(),
        None => writeln!(text, "splits: not forced").unwrap(),
    }
    if kr.forced {
        writeln!(text, "Omega^1_S(log D)|C: O({}) + O({})", log_omega.0, log_omega.1).unwrap();
    }
    writeln!(text, "Omega^1_S|C: O({}) + O({})", omega.0, omega.1).unwrap();
    out(
        text,
        json!({
            "sub": kr.sub, "quotient": kr.quotient, "forced": kr.forced,
            "splitting": kr.splitting().map(|(a, b)| [a, b]),
            "omega_s": [omega.0, omega.1],
        }),
    )
}

pub fn destabilizers(
    run: &RunConfig,
    d: &str,
    constraints: Option<&str>,
    no_table: bool,
    strict: bool,
    print_rows: bool,
) -> anyhow::Result<Output> {
    let d = class(d)?;
    let scenario: Scenario = run.scenario.as_deref().unwrap_or("generic").parse()?;
    let mut rows = if no_table { Vec::new() } else { blowup::restriction_table(&d, scenario)? };
    if let Some(path) = constraints {
        rows.extend(blowup::parse_constraints(&read(path)?)?);
    }
    let bounds = run.bounds.unwrap_or((-8, 8));
    let c = blowup::destabilizer_search(&d, &rows, bounds, strict)?;
    let rel = if strict { ">" } else { ">=" };
    let mut text = String::new();
    if print_rows {
        for r in &rows {
            writeln!(text, "{r}").unwrap();
        }
    }
    writeln!(text, "divisor: {}\nscenario: {scenario}\nslope: x.H {rel} {}\nbox: {}:{}", d.compact(), c.slope, bounds.0, bounds.1)
        .unwrap();
    writeln!(text, "candidates: {}", c.classes.len()).unwrap();
    let table = c.value_table();
    for (a, b) in &table {
        let bs: Vec<String> = b.iter().map(|x| x.to_string()).collect();
        writeln!(text, "a={a} {{{}}}", bs.join(",")).unwrap();
    }
    text.push_str("further elimination needs geometric arguments and is not computed\n");
    out(
        text,
        json!({
            "divisor": d.compact(), "scenario": scenario.to_string(), "slope": c.slope.to_string(), "strict": strict,
            "box": [bounds.0, bounds.1],
            "rows": rows.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "candidates": c.classes.iter().map(|x| x.compact()).collect::<Vec<_>>(),
            "value_table": table.iter().map(|(a, b)| json!({ "a": a, "b": b })).collect::<Vec<_>>(),
        }),
    )
}

fn points(text: &str) -> anyhow::Result<Vec<PointP2>> {
    let pts: Vec<PointP2> = text
        .split(|c: char| c.is_whitespace() || c == ';')
        .filter(|s| !s.is_empty())
        .map(PointP2::parse)
        .collect::<Result<_, _>>()?;
    Ok(pts)
}

pub fn classify_member(pts: &str, line: &str) -> anyhow::Result<Output> {
    let z = points(pts)?;
    let l = LineP2::parse(line)?;
    let m = blowup::classify_pencil_member(&l, &z)?;
    let comps: Vec<String> = m.components().iter().map(|c| c.compact()).collect();
    out(format!("{m}\ncomponents: {}\n", comps.join(" ")), json!({ "member": m.to_string(), "components": comps }))
}

pub fn general_position(pts: &str) -> anyhow::Result<Output> {
    let z = points(pts)?;
    let pos = blowup::general_position(&z)?;
    out(format!("{}\n{pos}\n", pos.is_general()), json!({ "general": pos.is_general(), "witness": pos.to_string() }))
}
