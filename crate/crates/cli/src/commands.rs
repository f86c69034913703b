use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use timesep::bundle::{evaluate_section, orientability, Grid, PartialSection, Verdict};
use timesep::covariant::{
    christoffel_at, covariant_derivative_along, space_frame_at, space_section_at, time_section_at,
    ChristoffelField, VectorField,
};
use timesep::form::{classify, default_classify_tol};
use timesep::separation::{timelike_from_riemann, timelike_line};
use timesep::{load_spec, Error, Point, SpacetimeSpec};

use crate::report::{fmt_num, fmt_vec, Report};
use crate::{Cli, Command, Mode};

struct Outcome {
    result: Value,
    text: String,
    warnings: Vec<String>,
    exit_status: u8,
}

impl Outcome {
    fn ok(result: Value, text: String, warnings: Vec<String>) -> Self {
        Outcome {
            result,
            text,
            warnings,
            exit_status: 0,
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report value")
}

fn spec_path(cmd: &Command) -> &Path {
    match cmd {
        Command::Validate { spec, .. }
        | Command::Split { spec, .. }
        | Command::Orient { spec, .. }
        | Command::Section { spec, .. }
        | Command::Derive { spec, .. }
        | Command::Christoffel { spec, .. } => spec,
    }
}

pub fn run(cli: &Cli, argv: Vec<String>) -> Report {
    let mut report = Report {
        command: argv,
        spec: None,
        result: Value::Null,
        warnings: Vec::new(),
        error: None,
        exit_status: 1,
        text: String::new(),
    };
    let spec = match load_spec(spec_path(&cli.command)) {
        Ok(s) => s,
        Err(e) => {
            report.error = Some(e.to_string());
            return report;
        }
    };
    report.spec = Some(spec.name.clone());
    let outcome = match &cli.command {
        Command::Validate { samples, .. } => validate(&spec, *samples, cli.seed),
        Command::Split { point, .. } => split(&spec, point, cli.tol),
        Command::Orient { samples, .. } => orient(&spec, *samples),
        Command::Section {
            multiplier, grid, ..
        } => section(&spec, multiplier, grid),
        Command::Derive {
            mode,
            multiplier,
            coeffs,
            field,
            point,
            verbose,
            ..
        } => derive(
            &spec,
            *mode,
            multiplier,
            coeffs.as_deref(),
            field,
            point,
            *verbose,
        ),
        Command::Christoffel { point, .. } => christoffel(&spec, point),
    };
    match outcome {
        Ok(o) => {
            report.result = o.result;
            report.text = o.text;
            report.warnings = o.warnings;
            report.exit_status = o.exit_status;
        }
        Err(e) => report.error = Some(e.to_string()),
    }
    report
}

fn parse_point(spec: &SpacetimeSpec, text: &str) -> Result<Point, Error> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Error::Invalid(format!(
            "point needs 4 comma separated coordinates, got {}",
            parts.len()
        )));
    }
    let mut c = [0.0; 4];
    for (i, part) in parts.iter().enumerate() {
        c[i] = spec.constant_value(part, &format!("point coordinate {}", spec.coords[i]))?;
    }
    Ok(Point(c))
}

fn validate(spec: &SpacetimeSpec, samples: usize, seed: u64) -> Result<Outcome, Error> {
    let report = spec.validate(samples, seed)?;
    let mut text = String::new();
    writeln!(
        text,
        "samples: {} evaluated, {} excluded draws",
        report.samples_evaluated, report.excluded_draws
    )
    .unwrap();
    writeln!(text, "violations: {}", report.violations.len()).unwrap();
    for (kind, n) in report.counts() {
        writeln!(text, "  {kind}: {n}").unwrap();
    }
    for v in report.violations.iter().take(10) {
        writeln!(
            text,
            "  {} at {}: {}",
            v.metric,
            fmt_vec(&v.point),
            v.detail
        )
        .unwrap();
    }
    let mut warnings = Vec::new();
    if report.samples_evaluated < report.samples_requested {
        warnings.push(format!(
            "only {} of {} samples fell outside the excluded set",
            report.samples_evaluated, report.samples_requested
        ));
    }
    let exit_status = if report.is_clean() { 0 } else { 1 };
    let mut result = to_value(&report);
    result["counts"] = to_value(&report.counts());
    Ok(Outcome {
        result,
        text,
        warnings,
        exit_status,
    })
}

fn split(spec: &SpacetimeSpec, point: &str, tol: Option<f64>) -> Result<Outcome, Error> {
    let p = parse_point(spec, point)?;
    let g = spec.g_at(&p)?;
    let h = spec.h_at(&p)?;
    let line = match tol {
        Some(t) => timelike_from_riemann(&g, &h, t)?,
        None => timelike_line(&g, &h)?,
    };
    let x = line.direction;
    let class = classify(&g, &x, tol.unwrap_or_else(|| default_classify_tol(&g, &x)))?;
    let mut text = String::new();
    writeln!(text, "point: {}", fmt_vec(&p.0)).unwrap();
    writeln!(text, "eigenvalue: {}", fmt_num(line.eigenvalue)).unwrap();
    writeln!(text, "direction: {}", fmt_vec(&x.0)).unwrap();
    writeln!(text, "gap: {}", fmt_num(line.gap)).unwrap();
    writeln!(text, "spectrum: {}", fmt_vec(&line.spectrum)).unwrap();
    writeln!(text, "causal class: {class:?}").unwrap();
    let result = json!({
        "point": p.0,
        "g": g,
        "h": h,
        "eigenvalue": line.eigenvalue,
        "direction": x,
        "gap": line.gap,
        "spectrum": line.spectrum,
        "g_norm": g.eval(&x, &x),
        "causal_class": class,
        "low_confidence": line.low_confidence,
    });
    Ok(Outcome::ok(
        result,
        text,
        line.warning().into_iter().collect(),
    ))
}

fn orient(spec: &SpacetimeSpec, samples: usize) -> Result<Outcome, Error> {
    let v = orientability(spec, samples)?;
    let mut text = String::new();
    let mut loops = Vec::new();
    for h in &v.holonomies {
        writeln!(
            text,
            "{}: {} (samples {}, min alignment {})",
            h.loop_name,
            h.holonomy,
            h.samples_used,
            fmt_num(h.min_alignment)
        )
        .unwrap();
        loops.push(json!({
            "name": h.loop_name,
            "holonomy": h.holonomy.value(),
            "samples_used": h.samples_used,
            "min_alignment": h.min_alignment,
        }));
    }
    writeln!(text, "verdict: {}", v.verdict).unwrap();
    let result = json!({ "loops": loops, "verdict": v.verdict });
    let exit_status = match v.verdict {
        Verdict::NotOrientable => 2,
        Verdict::OrientableOnTestedLoops => 0,
    };
    Ok(Outcome {
        result,
        text,
        warnings: v.warnings(),
        exit_status,
    })
}

fn section(spec: &SpacetimeSpec, multiplier: &str, grid: &str) -> Result<Outcome, Error> {
    let s = PartialSection::parse(spec, multiplier)?;
    let g = Grid::parse(spec, grid)?;
    let report = evaluate_section(spec, &s, &g)?;
    let mut text = String::new();
    writeln!(text, "multiplier: {}", report.multiplier).unwrap();
    writeln!(text, "grid points: {}", report.samples.len()).unwrap();
    writeln!(
        text,
        "max |multiplier|: {}",
        fmt_num(report.max_abs_multiplier)
    )
    .unwrap();
    writeln!(text, "zero points: {}", report.zero_points.len()).unwrap();
    for p in &report.zero_points {
        writeln!(text, "  {}", fmt_vec(&p.0)).unwrap();
    }
    writeln!(text, "zero brackets: {}", report.zero_brackets.len()).unwrap();
    for b in &report.zero_brackets {
        writeln!(
            text,
            "  {} ≈ {} between {} and {}",
            b.axis,
            fmt_num(b.estimate),
            fmt_vec(&b.from.0),
            fmt_vec(&b.to.0)
        )
        .unwrap();
    }
    let warnings = report.warnings.clone();
    let mut result = to_value(&report);
    result["grid"] = to_value(&g);
    Ok(Outcome::ok(result, text, warnings))
}

fn christoffel_entries(spec: &SpacetimeSpec, gamma: &ChristoffelField) -> (Vec<Value>, String) {
    let mut list = Vec::new();
    let mut text = String::new();
    let c = &spec.coords;
    for mu in 0..4 {
        for a in 0..4 {
            for b in a..4 {
                let x = gamma.get(mu, a, b);
                if x != 0.0 {
                    writeln!(text, "  Γ^{}_{{{} {}}} = {}", c[mu], c[a], c[b], fmt_num(x)).unwrap();
                    list.push(json!({ "upper": c[mu], "lower": [c[a], c[b]], "value": x }));
                }
            }
        }
    }
    (list, text)
}

fn derive(
    spec: &SpacetimeSpec,
    mode: Mode,
    multiplier: &str,
    coeffs: Option<&str>,
    field: &str,
    point: &str,
    verbose: bool,
) -> Result<Outcome, Error> {
    let p = parse_point(spec, point)?;
    let f = VectorField::parse_list(spec, field)?;
    let mut warnings = Vec::new();
    let mut result = json!({ "point": p.0, "field": f.sources });
    let s = match mode {
        Mode::Time => {
            let m = spec.compile(multiplier, "time multiplier")?;
            let (s, line) = time_section_at(spec, &m, &p)?;
            warnings.extend(line.warning());
            result["mode"] = json!("time");
            result["multiplier"] = json!(multiplier);
            result["time_line"] = to_value(&line);
            s
        }
        Mode::Space => {
            let text = coeffs.ok_or_else(|| Error::Invalid("space mode needs --coeffs".into()))?;
            let parts: Vec<&str> = text.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(Error::Invalid(format!(
                    "--coeffs needs 3 comma separated expressions, got {}",
                    parts.len()
                )));
            }
            let mut exprs: [timesep::dsl::Expr; 3] = Default::default();
            for (i, src) in parts.iter().enumerate() {
                exprs[i] = spec.compile(src, &format!("space coefficient {i}"))?;
            }
            let frame = space_frame_at(spec, &p)?;
            warnings.extend(frame.time.warning());
            result["mode"] = json!("space");
            result["coeffs"] = json!(parts);
            result["frame"] = to_value(&frame.vectors);
            result["time_line"] = to_value(&frame.time);
            space_section_at(spec, &exprs, &p)?
        }
    };
    let value = f.at(spec, &p)?;
    let d = covariant_derivative_along(spec, &s, &f, &p)?;
    result["section"] = to_value(&s);
    result["field_value"] = to_value(&value);
    result["derivative"] = to_value(&d);
    let mut text = String::new();
    writeln!(text, "point: {}", fmt_vec(&p.0)).unwrap();
    writeln!(text, "section: {}", fmt_vec(&s.0)).unwrap();
    writeln!(text, "F: {}", fmt_vec(&value.0)).unwrap();
    writeln!(text, "derivative: {}", fmt_vec(&d.0)).unwrap();
    if verbose {
        let gamma = christoffel_at(spec, &p)?;
        let (list, gtext) = christoffel_entries(spec, &gamma);
        writeln!(text, "christoffel (nonzero, lower pair ordered):").unwrap();
        text.push_str(&gtext);
        result["christoffel"] = json!(list);
    }
    Ok(Outcome::ok(result, text, warnings))
}

fn christoffel(spec: &SpacetimeSpec, point: &str) -> Result<Outcome, Error> {
    let p = parse_point(spec, point)?;
    let gamma = christoffel_at(spec, &p)?;
    let (list, body) = christoffel_entries(spec, &gamma);
    let mut text = String::new();
    writeln!(text, "point: {}", fmt_vec(&p.0)).unwrap();
    if list.is_empty() {
        writeln!(text, "all symbols vanish").unwrap();
    } else {
        writeln!(text, "nonzero symbols (lower pair ordered):").unwrap();
        text.push_str(&body);
    }
    let result =
        json!({ "point": p.0, "coords": spec.coords, "gamma": gamma.gamma, "nonzero": list });
    Ok(Outcome::ok(result, text, Vec::new()))
}
