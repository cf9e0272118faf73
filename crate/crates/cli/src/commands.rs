use std::time::Instant;

use clap::ValueEnum;
use lommel_core::bounds::{
    paper_reference, sample_checks, table_cell, table_grid, verify_inequality, BoundCheck, BoundParams, InequalityId,
    TableCell, TableKind, TABLE_ROWS, TABLE_X,
};
use lommel_core::hypergeometric::{hyp1f2, hyp2f3};
use lommel_core::integral::{integral_closed_form, integral_exp_series, integral_quadrature, IntegralSpec};
use lommel_core::lommel::{modified_struve_l, t_tilde, t_unnormalized, LommelParams};
use lommel_core::special::lower_incomplete_gamma;
use lommel_core::{Error as CoreError, SeriesEval};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::args::{Cli, Command, EvalArgs, Function, Method, SweepArgs, TableArgs, TableFormat, VerifyArgs};
use crate::report::{csv, num, CliError, Outcome, RunReport, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION};

/// Largest |computed − printed| accepted by `table --compare-paper`.
pub const TABLE_TOLERANCE: f64 = 1e-4;

/// Relative agreement required between two integral methods in `eval integral`.
pub const METHOD_AGREEMENT: f64 = 1e-8;

pub const VERIFY_HEADER: [&str; 11] =
    ["id", "mu", "nu", "n", "beta", "x", "integral", "bound", "slack", "ratio", "satisfied"];

struct Partial {
    inputs: Map<String, Value>,
    rows: Vec<Value>,
    failures: usize,
    text: String,
    notes: Vec<String>,
    exit_code: i32,
}

impl Partial {
    fn ok(inputs: Map<String, Value>, rows: Vec<Value>, text: String) -> Self {
        Partial { inputs, rows, failures: 0, text, notes: Vec::new(), exit_code: EXIT_OK }
    }
}

fn inputs(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

/// Run a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    if !(cli.tol > 0.0 && cli.tol <= 1e-3) {
        return Err(CliError::Usage(format!("--tol must lie in (0, 1e-3] (got {})", cli.tol)));
    }
    let start = Instant::now();
    let partial = match cli.threads {
        Some(0) => return Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot start {n} threads: {e}")))?;
            pool.install(|| dispatch(cli))?
        }
        None => dispatch(cli)?,
    };
    let name = match cli.command {
        Command::Eval(_) => "eval",
        Command::Verify(_) => "verify",
        Command::Table(_) => "table",
        Command::Sweep(_) => "sweep",
    };
    let mut inputs = partial.inputs;
    inputs.insert("tol".into(), json!(cli.tol));
    inputs.insert("seed".into(), json!(cli.seed));
    let report = RunReport {
        command: name.to_string(),
        inputs,
        rows: partial.rows,
        failures: partial.failures,
        wall_time_ms: start.elapsed().as_millis() as u64,
    };
    let text = if cli.json {
        let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
        s.push('\n');
        s
    } else {
        partial.text
    };
    Ok(Outcome { report, text, notes: partial.notes, exit_code: partial.exit_code })
}

fn dispatch(cli: &Cli) -> Result<Partial, CliError> {
    match &cli.command {
        Command::Eval(a) => cmd_eval(a, cli.tol),
        Command::Verify(a) => cmd_verify(a, cli.tol, cli.seed),
        Command::Table(a) => cmd_table(a),
        Command::Sweep(a) => cmd_sweep(a, cli.tol),
    }
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn need(name: &str, v: Option<f64>) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{name} is required")))
}

fn series_row(function: &str, e: SeriesEval) -> (Value, Vec<String>) {
    let row = json!({
        "function": function,
        "value": e.value,
        "terms_used": e.terms_used,
        "truncation_estimate": e.truncation_estimate,
    });
    (row, vec![function.to_string(), num(e.value), e.terms_used.to_string(), num(e.truncation_estimate)])
}

fn cmd_eval(a: &EvalArgs, tol: f64) -> Result<Partial, CliError> {
    const HEADER: [&str; 4] = ["function", "value", "terms_used", "truncation_estimate"];
    let given = inputs(json!({
        "function": value_name(a.function),
        "mu": a.mu, "nu": a.nu, "x": a.x, "a": a.a, "b": a.b, "z": a.z,
        "alpha": a.alpha, "beta": a.beta, "method": value_name(a.method),
    }));
    let single = |label: &str, e: SeriesEval| {
        let (row, fields) = series_row(label, e);
        Partial::ok(given.clone(), vec![row], csv(&HEADER, [fields]))
    };
    match a.function {
        Function::TTilde => {
            let p = LommelParams::new(need("mu", a.mu)?, need("nu", a.nu)?);
            Ok(single("t-tilde", t_tilde(p, need("x", a.x)?, tol)?))
        }
        Function::T => {
            let p = LommelParams::new(need("mu", a.mu)?, need("nu", a.nu)?);
            let x = need("x", a.x)?;
            let tilde = t_tilde(p, x, tol)?;
            let value = t_unnormalized(p, x, tol)?;
            let scale = value / tilde.value;
            Ok(single("t", SeriesEval { value, truncation_estimate: tilde.truncation_estimate * scale.abs(), ..tilde }))
        }
        Function::StruveL => Ok(single("struve-L", modified_struve_l(need("nu", a.nu)?, need("x", a.x)?, tol)?)),
        Function::GammaLower => {
            let [s] = a.a[..] else {
                return Err(CliError::Usage("gamma-lower takes exactly one --a".into()));
            };
            let v = lower_incomplete_gamma(s, need("x", a.x)?)?;
            let row = json!({"function": "gamma-lower", "value": v, "terms_used": null, "truncation_estimate": null});
            let text = csv(&HEADER, [vec!["gamma-lower".to_string(), num(v), String::new(), String::new()]]);
            Ok(Partial::ok(given, vec![row], text))
        }
        Function::Hyp1f2 => {
            let ([a1], [b1, b2]) = (&a.a[..], &a.b[..]) else {
                return Err(CliError::Usage("hyp1f2 takes one --a and two --b values".into()));
            };
            Ok(single("hyp1f2", hyp1f2(*a1, *b1, *b2, need("z", a.z)?, tol)?))
        }
        Function::Hyp2f3 => {
            let ([a1, a2], [b1, b2, b3]) = (&a.a[..], &a.b[..]) else {
                return Err(CliError::Usage("hyp2f3 takes two --a and three --b values".into()));
            };
            Ok(single("hyp2f3", hyp2f3(*a1, *a2, *b1, *b2, *b3, need("z", a.z)?, tol)?))
        }
        Function::Integral => eval_integral(a, tol, given),
    }
}

fn eval_integral(a: &EvalArgs, tol: f64, given: Map<String, Value>) -> Result<Partial, CliError> {
    let p = LommelParams::new(need("mu", a.mu)?, need("nu", a.nu)?);
    let spec = IntegralSpec::new(p, need("alpha", a.alpha)?, a.beta, need("x", a.x)?);
    let exact = |spec: &IntegralSpec| -> Result<(&'static str, f64), CoreError> {
        if spec.beta == 0.0 {
            Ok(("closed", integral_closed_form(spec)?))
        } else {
            Ok(("series", integral_exp_series(spec, tol.min(1e-13))?.value))
        }
    };
    let mut values: Vec<(&str, f64)> = Vec::new();
    match a.method {
        Method::Closed => values.push(("closed", integral_closed_form(&spec)?)),
        Method::Series => values.push(("series", integral_exp_series(&spec, tol)?.value)),
        Method::Quad => values.push(("quad", integral_quadrature(&spec, tol)?)),
        Method::Both => {
            values.push(exact(&spec)?);
            values.push(("quad", integral_quadrature(&spec, tol)?));
        }
    }
    let mut rows: Vec<Value> = values.iter().map(|(m, v)| json!({"method": m, "value": v})).collect();
    let mut text = csv(&["method", "value"], values.iter().map(|(m, v)| vec![m.to_string(), num(*v)]));
    let mut out = Partial::ok(given, Vec::new(), String::new());
    if let [(_, first), (_, second)] = values[..] {
        let diff = ((first - second) / first).abs();
        rows.push(json!({"method": "relative_difference", "value": diff}));
        text.push_str(&format!("relative_difference,{}\n", num(diff)));
        if !(diff <= METHOD_AGREEMENT) {
            out.failures = 1;
            out.exit_code = EXIT_NUMERICAL;
            out.notes.push(format!("methods disagree: relative difference {diff:e} exceeds {METHOD_AGREEMENT:e}"));
        }
    }
    out.rows = rows;
    out.text = text;
    Ok(out)
}

/// Comma-separated values or `start:end:count`.
pub fn parse_x_list(s: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("cannot parse --x '{s}': expected a,b,c or start:end:count"));
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, count] = parts[..] else { return Err(bad()) };
        let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
        let count: usize = count.trim().parse().map_err(|_| bad())?;
        return linear_grid(lo, hi, count);
    }
    s.split(',').map(|t| t.trim().parse::<f64>().map_err(|_| bad())).collect()
}

fn linear_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>, CliError> {
    match count {
        0 => Err(CliError::Usage("grid needs at least one point".into())),
        1 => Ok(vec![lo]),
        _ => {
            let mut g: Vec<f64> = (0..count).map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64).collect();
            g[count - 1] = hi;
            Ok(g)
        }
    }
}

fn parse_ids(s: &str) -> Result<Vec<InequalityId>, CliError> {
    if s.eq_ignore_ascii_case("all") {
        Ok(InequalityId::ALL.to_vec())
    } else {
        Ok(vec![s.parse::<InequalityId>()?])
    }
}

pub fn check_fields(c: &BoundCheck) -> Vec<String> {
    vec![
        c.id.label().to_string(),
        num(c.mu),
        num(c.nu),
        num(c.n),
        num(c.beta),
        num(c.x),
        num(c.integral),
        num(c.bound),
        num(c.slack),
        num(c.ratio),
        c.satisfied.to_string(),
    ]
}

fn cmd_verify(a: &VerifyArgs, tol: f64, seed: u64) -> Result<Partial, CliError> {
    let ids = parse_ids(&a.inequality)?;
    let tasks: Vec<(InequalityId, BoundParams, f64)> = match a.samples {
        Some(count) => ids
            .iter()
            .flat_map(|&id| sample_checks(id, count, seed).into_iter().map(move |(p, x)| (id, p, x)))
            .collect(),
        None => {
            let p = BoundParams::new(need("mu", a.mu)?, need("nu", a.nu)?, a.n, a.beta);
            let xs =
                parse_x_list(a.x.as_deref().ok_or_else(|| CliError::Usage("--x or --samples is required".into()))?)?;
            ids.iter().flat_map(|&id| xs.iter().map(move |&x| (id, p, x))).collect()
        }
    };
    let results: Vec<Result<BoundCheck, CoreError>> =
        tasks.par_iter().map(|&(id, p, x)| verify_inequality(id, p, x, tol)).collect();

    let mut rows = Vec::with_capacity(results.len());
    let mut lines = Vec::new();
    let mut notes = Vec::new();
    let (mut violations, mut domain, mut numerical) = (0, 0, 0);
    for ((id, p, x), r) in tasks.iter().zip(&results) {
        match r {
            Ok(c) => {
                if !c.satisfied {
                    violations += 1;
                    notes.push(format!(
                        "violation: {} at mu={} nu={} n={} beta={} x={}",
                        id, c.mu, c.nu, c.n, c.beta, c.x
                    ));
                }
                rows.push(serde_json::to_value(c).expect("check serializes"));
                lines.push(check_fields(c));
            }
            Err(e) => {
                if e.is_numerical() {
                    numerical += 1;
                } else {
                    domain += 1;
                }
                notes.push(format!("{id} at mu={} nu={} n={} beta={} x={}: {e}", p.mu, p.nu, p.n, p.beta, x));
                rows.push(json!({
                    "id": id, "mu": p.mu, "nu": p.nu, "n": p.n, "beta": p.beta, "x": x, "error": e.to_string(),
                }));
            }
        }
    }
    let failures = violations + numerical + if a.strict_domain { domain } else { 0 };
    let evaluated = results.len() - domain - numerical;
    let exit_code = if numerical > 0 {
        EXIT_NUMERICAL
    } else if domain > 0 && (a.strict_domain || evaluated == 0) {
        EXIT_USAGE
    } else if violations > 0 {
        EXIT_VERIFICATION
    } else {
        EXIT_OK
    };
    notes.push(format!(
        "{} checks: {evaluated} evaluated, {violations} violations, {domain} outside domain, {numerical} numerical errors",
        results.len()
    ));
    let given = inputs(json!({
        "inequality": a.inequality, "mu": a.mu, "nu": a.nu, "n": a.n, "beta": a.beta, "x": a.x,
        "samples": a.samples, "strict_domain": a.strict_domain,
    }));
    Ok(Partial { inputs: given, rows, failures, text: csv(&VERIFY_HEADER, lines), notes, exit_code })
}

fn markdown_table(cells: &[TableCell], which: TableKind, reference: Option<&[f64]>) -> String {
    let mut out = String::from("| (mu, nu) |");
    for x in TABLE_X {
        out.push_str(&format!(" x = {x} |"));
    }
    out.push_str("\n|---|");
    out.push_str(&"---:|".repeat(TABLE_X.len()));
    out.push('\n');
    for (r, &(mu, nu)) in TABLE_ROWS.iter().enumerate() {
        out.push_str(&format!("| ({mu}, {nu}) |"));
        for c in 0..TABLE_X.len() {
            let k = r * TABLE_X.len() + c;
            match reference {
                Some(printed) => out.push_str(&format!(" {:.4} ({:.4}) |", cells[k].rel_err(which), printed[k])),
                None => out.push_str(&format!(" {:.4} |", cells[k].rel_err(which))),
            }
        }
        out.push('\n');
    }
    out
}

fn cmd_table(a: &TableArgs) -> Result<Partial, CliError> {
    let which = TableKind::from_number(a.which).expect("clap restricts --which to 1 or 2");
    let grid: Vec<(f64, f64, f64)> = table_grid().collect();
    let cells: Vec<TableCell> =
        grid.par_iter().map(|&(mu, nu, x)| table_cell(mu, nu, x)).collect::<Result<_, CoreError>>()?;
    let printed: Option<Vec<f64>> = a.compare_paper.then(|| paper_reference().iter().map(|r| r.value(which)).collect());

    let mut rows = Vec::with_capacity(cells.len());
    let mut lines = Vec::with_capacity(cells.len());
    let mut failures = 0;
    let mut worst = (0.0_f64, 0usize);
    for (k, c) in cells.iter().enumerate() {
        let v = c.rel_err(which);
        let mut row = json!({"mu": c.mu, "nu": c.nu, "x": c.x, "rel_err": v});
        let mut fields = vec![c.mu.to_string(), c.nu.to_string(), c.x.to_string(), num(v)];
        if let Some(printed) = &printed {
            let delta = v - printed[k];
            if delta.abs() > worst.0 {
                worst = (delta.abs(), k);
            }
            if !(delta.abs() <= TABLE_TOLERANCE) {
                failures += 1;
            }
            row["paper"] = json!(printed[k]);
            row["delta"] = json!(delta);
            fields.push(format!("{:.4}", printed[k]));
            fields.push(num(delta));
        }
        rows.push(row);
        lines.push(fields);
    }
    let mut notes = Vec::new();
    if printed.is_some() {
        let c = &cells[worst.1];
        notes.push(format!(
            "table {}: max |delta| = {:.3e} at (mu, nu) = ({}, {}), x = {}; {failures} of {} cells beyond {TABLE_TOLERANCE:e}",
            a.which,
            worst.0,
            c.mu,
            c.nu,
            c.x,
            cells.len()
        ));
    }
    let text = match a.format {
        TableFormat::Csv if printed.is_some() => csv(&["mu", "nu", "x", "rel_err", "paper", "delta"], lines),
        TableFormat::Csv => csv(&["mu", "nu", "x", "rel_err"], lines),
        TableFormat::Markdown => markdown_table(&cells, which, printed.as_deref()),
    };
    let given = inputs(json!({"which": a.which, "format": value_name(a.format), "compare_paper": a.compare_paper}));
    let exit_code = if failures > 0 { EXIT_VERIFICATION } else { EXIT_OK };
    Ok(Partial { inputs: given, rows, failures, text, notes, exit_code })
}

/// `points` abscissae from x_min to x_max, linear or logarithmic.
pub fn sweep_grid(x_min: f64, x_max: f64, points: usize, log: bool) -> Result<Vec<f64>, CliError> {
    if !(x_min > 0.0 && x_max >= x_min) {
        return Err(CliError::Usage(format!("need 0 < x-min <= x-max (got {x_min}, {x_max})")));
    }
    if points > 1 && x_max == x_min {
        return Err(CliError::Usage("x-min = x-max allows only --points 1".into()));
    }
    if log {
        let mut g: Vec<f64> = linear_grid(x_min.ln(), x_max.ln(), points)?.into_iter().map(f64::exp).collect();
        g[0] = x_min;
        g[points - 1] = x_max;
        Ok(g)
    } else {
        linear_grid(x_min, x_max, points)
    }
}

fn cmd_sweep(a: &SweepArgs, tol: f64) -> Result<Partial, CliError> {
    let id: InequalityId = a.inequality.parse()?;
    let grid = sweep_grid(a.x_min, a.x_max, a.points, a.log)?;
    let p = BoundParams::new(a.mu, a.nu, a.n, a.beta);
    let checks: Vec<BoundCheck> =
        grid.par_iter().map(|&x| verify_inequality(id, p, x, tol)).collect::<Result<_, CoreError>>()?;
    let failures = checks.iter().filter(|c| !c.satisfied).count();
    let rows = checks.iter().map(|c| serde_json::to_value(c).expect("check serializes")).collect();
    let text = csv(
        &["x", "integral", "bound", "ratio"],
        checks.iter().map(|c| vec![num(c.x), num(c.integral), num(c.bound), num(c.ratio)]),
    );
    let given = inputs(json!({
        "inequality": a.inequality, "mu": a.mu, "nu": a.nu, "n": a.n, "beta": a.beta,
        "x_min": a.x_min, "x_max": a.x_max, "points": a.points, "log": a.log,
    }));
    let exit_code = if failures > 0 { EXIT_VERIFICATION } else { EXIT_OK };
    Ok(Partial { inputs: given, rows, failures, text, notes: Vec::new(), exit_code })
}
