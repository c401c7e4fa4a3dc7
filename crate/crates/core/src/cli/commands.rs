use serde_json::json;

use super::published::{self, agrees};
use super::table::{sci3, Cell, OutputTable};
use super::{CliError, ConvergenceArgs, Format, ProblemArgs, ReproduceArgs, SolveArgs, TableSelector};
use crate::analysis::{max_abs_error, run_sweep, ConvergenceReport, SweepCell};
use crate::number::{parse_real, parse_real_list};
use crate::problem::ProblemFamily;
use crate::scheme::{solve, Mesh, SchemeParams};

/// Rendered command result. Warnings go to stderr, the body to stdout or
/// `--out`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub body: String,
    pub warnings: Vec<String>,
}

/// `cubic`, `fourth`, `lambda:<l1>,<l2>` or `tension:<lambda>`.
pub fn parse_scheme(spec: &str) -> Result<SchemeParams<f64>, CliError> {
    let spec = spec.trim();
    let bad = |why: String| CliError::usage(format!("invalid --scheme `{spec}`: {why}"));
    match spec {
        "cubic" => return Ok(SchemeParams::cubic()),
        "fourth" => return Ok(SchemeParams::fourth_order()),
        _ => {}
    }
    if let Some(rest) = spec.strip_prefix("lambda:") {
        let values = parse_real_list(rest).map_err(|e| bad(e.to_string()))?;
        let [l1, l2] = values[..] else {
            return Err(bad("expected two values lambda:<l1>,<l2>".into()));
        };
        return SchemeParams::direct(l1, l2).map_err(|e| bad(e.to_string()));
    }
    if let Some(rest) = spec.strip_prefix("tension:") {
        let lambda = parse_real(rest).map_err(|e| bad(e.to_string()))?;
        return SchemeParams::from_tension(lambda).map_err(|e| bad(e.to_string()));
    }
    Err(bad(
        "expected cubic, fourth, lambda:<l1>,<l2> or tension:<lambda>".into()
    ))
}

fn resolve_family(args: &ProblemArgs) -> Result<ProblemFamily, CliError> {
    match (&args.problem, &args.problem_file) {
        (Some(name), _) => Ok(ProblemFamily::catalog(name)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            let name = path
                .file_stem()
                .map_or_else(|| "problem".to_string(), |s| s.to_string_lossy().into_owned());
            Ok(ProblemFamily::from_file_text(&name, &text)?)
        }
        (None, None) => Err(CliError::usage("one of --problem or --problem-file is required")),
    }
}

fn positive_eps(value: f64) -> Result<f64, CliError> {
    if value > 0.0 {
        Ok(value)
    } else {
        Err(CliError::usage("eps must be positive"))
    }
}

fn parse_eps_arg(text: &str) -> Result<Vec<f64>, CliError> {
    let values = parse_real_list(text).map_err(|e| CliError::usage(format!("--eps: {e}")))?;
    values.into_iter().map(positive_eps).collect()
}

fn parse_n_list(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|t| {
            let n: usize = t
                .trim()
                .parse()
                .map_err(|_| CliError::usage(format!("--n: invalid subinterval count `{}`", t.trim())))?;
            if n < 2 {
                return Err(CliError::usage("n must be at least 2"));
            }
            Ok(n)
        })
        .collect()
}

fn warnings_for(family: &ProblemFamily, eps: f64) -> Vec<String> {
    family
        .instantiate(eps)
        .ok()
        .and_then(|p| p.positivity_warning())
        .into_iter()
        .collect()
}

fn to_json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

/// `solve`: nodal solution plus the maximum error when an exact solution
/// is known.
pub fn cmd_solve(args: &SolveArgs) -> Result<CommandOutput, CliError> {
    let family = resolve_family(&args.problem)?;
    let eps = match (&args.eps, family.default_eps) {
        (Some(text), _) => {
            let v = parse_real(text).map_err(|e| CliError::usage(format!("--eps: {e}")))?;
            positive_eps(v)?
        }
        (None, Some(v)) => positive_eps(v)?,
        (None, None) => return Err(CliError::usage("--eps is required (the problem file sets none)")),
    };
    if args.n < 2 {
        return Err(CliError::usage("n must be at least 2"));
    }
    let params = parse_scheme(&args.scheme)?;
    let problem = family.instantiate(eps)?;
    let warnings: Vec<String> = problem.positivity_warning().into_iter().collect();
    let (a, b) = problem.interval();
    let mesh = Mesh::new(a, b, args.n)?;
    let solution = solve(&problem, &mesh, &params)?;
    let error = match problem.exact_expr() {
        Some(_) => Some(max_abs_error(&solution.values, &problem, &mesh)?),
        None => None,
    };

    let body = match args.format {
        Format::Json => to_json(&json!({
            "problem": family.name,
            "eps": eps,
            "n": args.n,
            "scheme": params.to_string(),
            "params": params,
            "x": solution.nodes,
            "y": solution.values,
            "max_abs_error": error,
            "dominant": solution.dominant,
            "min_pivot_magnitude": solution.min_pivot_magnitude,
        })),
        Format::Csv | Format::Md => {
            let mut t = OutputTable::new(
                format!("{} eps={} n={} scheme={}", family.name, eps, args.n, params),
                vec!["x".into(), "y".into()],
            );
            for (x, y) in solution.nodes.iter().zip(&solution.values) {
                t.push_row(vec![Cell::full(*x), Cell::full(*y)]);
            }
            if args.format == Format::Md {
                if let Some(e) = error {
                    t.footnotes.push(format!("E = max|y_i - y(x_i)| = {}", sci3(e)));
                }
                t.to_markdown()
            } else {
                let mut out = format!(
                    "# problem: {}\n# eps: {:e}\n# n: {}\n# scheme: {}\n",
                    family.name, eps, args.n, params
                );
                if let Some(e) = error {
                    out.push_str(&format!("# max_abs_error: {e:e}\n"));
                }
                out.push_str(&t.to_csv());
                out
            }
        }
    };
    Ok(CommandOutput { body, warnings })
}

fn default_grid(family: &ProblemFamily) -> (Option<Vec<f64>>, Option<Vec<usize>>) {
    match family.name.as_str() {
        "example_4_1" => (
            Some(
                published::TABLE1_EPS_DENOMINATORS
                    .iter()
                    .map(|&d| 1.0 / d as f64)
                    .collect(),
            ),
            Some(published::TABLE1_N.to_vec()),
        ),
        "example_4_2" => (Some(published::TABLE2_EPS.to_vec()), Some(published::TABLE2_N.to_vec())),
        _ => (family.default_eps.map(|e| vec![e]), None),
    }
}

/// `1/16` for reciprocals of integers that are not powers of ten.
fn eps_label(eps: f64) -> String {
    let inv = 1.0 / eps;
    let rounded = inv.round();
    let integral = eps < 1.0 && rounded <= 1e9 && (inv - rounded).abs() <= 1e-9 * inv;
    let decade = rounded.log10().fract() == 0.0;
    if integral && !decade {
        format!("1/{rounded}")
    } else {
        sci3(eps)
    }
}

fn order_cell(report: &ConvergenceReport<f64>, eps_index: usize, k: usize) -> Cell {
    let entry = &report.orders_for(eps_index)[k];
    match entry.order {
        Some(p) => Cell::fixed(p),
        None if entry.saturated => Cell::text("sat."),
        None => Cell::text("-"),
    }
}

fn error_cell(cell: &SweepCell<f64>) -> Cell {
    match cell {
        SweepCell::Solved(r) => Cell::sci(r.max_abs_error),
        SweepCell::Failed { .. } => Cell::text("failed"),
    }
}

type Published<'a> = &'a dyn Fn(usize, usize) -> f64;

/// One row per eps: errors for each N, then orders between adjacent N.
/// With published values, cells outside the published decade get a `*`.
fn wide_table(report: &ConvergenceReport<f64>, caption: String, published: Option<Published>) -> OutputTable {
    let mut headers = vec!["eps".to_string()];
    headers.extend(report.n_list.iter().map(|n| format!("N={n}")));
    headers.extend(report.n_list.windows(2).map(|w| format!("order {}->{}", w[0], w[1])));
    let mut t = OutputTable::new(caption, headers);
    let mut missed = Vec::new();
    for (i, &eps) in report.eps_list.iter().enumerate() {
        let mut row = vec![Cell::text(eps_label(eps))];
        for (k, cell) in report.row(i).iter().enumerate() {
            let mut shown = error_cell(cell);
            if let (Some(lookup), Some(r)) = (published, cell.record()) {
                let value = lookup(i, k);
                if !agrees(r.max_abs_error, value) {
                    shown = Cell::text(format!("{}*", sci3(r.max_abs_error)));
                    missed.push(format!(
                        "eps={} N={} (published {})",
                        eps_label(eps),
                        cell.n(),
                        sci3(value)
                    ));
                }
            }
            row.push(shown);
        }
        row.extend((0..report.n_list.len().saturating_sub(1)).map(|k| order_cell(report, i, k)));
        t.push_row(row);
    }
    let failures: Vec<String> = report
        .cells
        .iter()
        .filter_map(|c| match c {
            SweepCell::Failed { epsilon, n, reason } => Some(format!("eps={} N={n}: {reason}", eps_label(*epsilon))),
            SweepCell::Solved(_) => None,
        })
        .collect();
    if !failures.is_empty() {
        t.footnotes.push(format!("Failed cells: {}", failures.join("; ")));
    }
    if !missed.is_empty() {
        t.footnotes.push(format!(
            "* not within one decade of the published value: {}",
            missed.join("; ")
        ));
    }
    t
}

const LONG_HEADERS: [&str; 9] = [
    "epsilon",
    "n",
    "status",
    "max_abs_error",
    "order",
    "saturated",
    "dominant",
    "lambda_sum",
    "message",
];

/// One row per cell; `order` refers to the step from the previous N.
fn long_table(report: &ConvergenceReport<f64>, published: Option<Published>) -> OutputTable {
    let mut headers: Vec<String> = LONG_HEADERS.iter().map(|s| s.to_string()).collect();
    if published.is_some() {
        headers.push("published".into());
        headers.push("reproduced".into());
    }
    let mut t = OutputTable::new("", headers);
    for (i, &eps) in report.eps_list.iter().enumerate() {
        for (k, cell) in report.row(i).iter().enumerate() {
            let (order, saturated) = if k == 0 {
                (Cell::Empty, Cell::Empty)
            } else {
                let entry = &report.orders_for(i)[k - 1];
                (
                    entry.order.map_or(Cell::Empty, Cell::full),
                    Cell::text(entry.saturated.to_string()),
                )
            };
            let mut row = vec![Cell::full(eps), Cell::Int(cell.n())];
            match cell {
                SweepCell::Solved(r) => row.extend([
                    Cell::text("ok"),
                    Cell::full(r.max_abs_error),
                    order,
                    saturated,
                    Cell::text(r.dominant.to_string()),
                    Cell::full(r.lambda_sum),
                    Cell::Empty,
                ]),
                SweepCell::Failed { reason, .. } => row.extend([
                    Cell::text("failed"),
                    Cell::Empty,
                    order,
                    saturated,
                    Cell::Empty,
                    Cell::full(report.params.lambda_sum()),
                    Cell::text(reason.clone()),
                ]),
            }
            if let Some(lookup) = published {
                let value = lookup(i, k);
                let ok = cell.record().is_some_and(|r| agrees(r.max_abs_error, value));
                row.push(Cell::full(value));
                row.push(Cell::text(ok.to_string()));
            }
            t.push_row(row);
        }
    }
    t
}

/// `convergence`: error table over an (eps, N) grid.
pub fn cmd_convergence(args: &ConvergenceArgs) -> Result<CommandOutput, CliError> {
    let family = resolve_family(&args.problem)?;
    let (default_eps, default_n) = default_grid(&family);
    let eps_list = match &args.eps {
        Some(text) => parse_eps_arg(text)?,
        None => default_eps.ok_or_else(|| CliError::usage("--eps is required for this problem"))?,
    };
    let n_list = match &args.n {
        Some(text) => parse_n_list(text)?,
        None => default_n.ok_or_else(|| CliError::usage("--n is required for this problem"))?,
    };
    let params = parse_scheme(&args.scheme)?;
    let mut warnings = Vec::new();
    for &eps in &eps_list {
        for w in warnings_for(&family, eps) {
            if !warnings.contains(&w) {
                warnings.push(w);
            }
        }
    }
    let report = run_sweep(&family, &eps_list, &n_list, &params)?;
    let body = match args.format {
        Format::Json => to_json(&serde_json::to_value(&report).expect("report serializes")),
        Format::Csv => long_table(&report, None).to_csv(),
        Format::Md => wide_table(
            &report,
            format!("Maximum absolute errors, {}, scheme {}", report.problem, report.scheme),
            None,
        )
        .to_markdown(),
    };
    Ok(CommandOutput { body, warnings })
}

/// `reproduce`: rerun a published table with the fourth-order scheme and
/// flag cells that do not land in the published decade.
pub fn cmd_reproduce(args: &ReproduceArgs) -> Result<CommandOutput, CliError> {
    let (name, eps_list, n_list, title): (&str, Vec<f64>, Vec<usize>, &str) = match args.table {
        TableSelector::Table1 => (
            "example_4_1",
            published::TABLE1_EPS_DENOMINATORS
                .iter()
                .map(|&d| 1.0 / d as f64)
                .collect(),
            published::TABLE1_N.to_vec(),
            "Table 1",
        ),
        TableSelector::Table2 => (
            "example_4_2",
            published::TABLE2_EPS.to_vec(),
            published::TABLE2_N.to_vec(),
            "Table 2",
        ),
    };
    let lookup = |i: usize, k: usize| match args.table {
        TableSelector::Table1 => published::TABLE1[i][k],
        TableSelector::Table2 => published::TABLE2[i][k],
    };
    let family = ProblemFamily::catalog(name)?;
    let params = SchemeParams::fourth_order();
    let report = run_sweep(&family, &eps_list, &n_list, &params)?;

    let body = match args.format {
        Format::Csv => long_table(&report, Some(&lookup)).to_csv(),
        Format::Json => {
            let published: Vec<Vec<f64>> = (0..eps_list.len())
                .map(|i| (0..n_list.len()).map(|k| lookup(i, k)).collect())
                .collect();
            to_json(&json!({
                "table": title,
                "report": report,
                "published": published,
            }))
        }
        Format::Md => {
            let caption = format!(
                "{title}: maximum absolute errors, {name}, fourth-order scheme (lambda1 = 1/12, lambda2 = 5/12)"
            );
            let mut t = wide_table(&report, caption, Some(&lookup));
            t.footnotes
                .push("Orders are log2 ratios of successive errors; `sat.` marks pairs at roundoff level.".into());
            t.to_markdown()
        }
    };
    Ok(CommandOutput {
        body,
        warnings: Vec::new(),
    })
}
