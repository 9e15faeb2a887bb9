//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse error,
//! 3 unsolvable equation, 4 unsupported operation.

use std::collections::HashMap;
use std::io::Write;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::algebra::{AlgebraSpec, Element};
use crate::error::Error;
use crate::gateaux::{self, ClosedFormParams};
use crate::linear::{self, CoordMatrix, CrCheck};
use crate::matrix::Matrix;
use crate::numeric::{self, StepSchedule};
use crate::parse;
use crate::poly::{is_symmetric, semantic_eq, NcPoly, Var};
use crate::sample;
use crate::scalar::{self, Scalar};
use crate::taylor::{self, OdeOutcome, OdeProblem, Unsolvable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNSOLVABLE: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;

const DEFAULT_SEED: u64 = 20_240_601;
const TOLERANCE: f64 = 1e-6;

#[derive(Parser, Debug)]
#[command(
    name = "ncq",
    version,
    about = "Calculus over quaternions and other division algebras"
)]
pub struct Cli {
    /// complex, quaternion, efab:a/b or efab:a,b
    #[arg(long, global = true, env = "NCQ_ALGEBRA", default_value = "quaternion")]
    pub algebra: String,
    /// Print a JSON report instead of text
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Symbolic Gâteaux derivative of a polynomial
    Derive {
        #[arg(long, default_value_t = 1)]
        order: usize,
        expr: String,
    },
    /// Jacobian and standard components of the differential at a point
    Jacobian {
        /// e.g. "x=1+2i-3j+1/2k"
        #[arg(long)]
        at: String,
        expr: String,
    },
    /// Taylor polynomial around a point
    Taylor {
        #[arg(long)]
        at: String,
        #[arg(long)]
        degree: usize,
        expr: String,
    },
    /// Solve dy(x)(h) = rhs(x; h) by repeated differentiation
    SolveOde {
        #[arg(long)]
        rhs: String,
        #[arg(long, default_value = "0")]
        x0: String,
        #[arg(long, default_value = "0")]
        y0: String,
        #[arg(long, default_value_t = 24)]
        max_order: usize,
    },
    /// Truncated exponent series in floating point
    Exp {
        #[arg(long, default_value_t = 30)]
        terms: usize,
        #[arg(long)]
        at: String,
    },
    /// Cauchy-Riemann test of a 2x2 coordinate matrix
    CheckCr {
        /// rows separated by ';', entries by ','
        #[arg(long)]
        matrix: String,
    },
    /// Compare every closed-form derivative with the numeric limit
    VerifyTable {
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Operator norm of the map with the given coordinate matrix
    Norm {
        #[arg(long)]
        coord_matrix: String,
    },
    /// Numeric Gâteaux derivative of any expression, negative powers allowed
    Oracle {
        #[arg(long)]
        at: String,
        #[arg(long)]
        dir: String,
        expr: String,
    },
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct Report {
    pub algebra: String,
    pub canonical: String,
    pub coordinates: Vec<Vec<String>>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_components: Option<Vec<Vec<String>>>,
}

struct Outcome {
    report: Report,
    text: Vec<String>,
    code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } | Error::Semantic(_) | Error::InvalidAlgebra(_) | Error::Dimension { .. } => EXIT_PARSE,
        Error::UnsupportedOperation(_) | Error::NotRealizable { .. } => EXIT_UNSUPPORTED,
        Error::Truncated { .. } => EXIT_UNSOLVABLE,
        _ => EXIT_VERIFY,
    }
}

fn describe(e: &Error) -> String {
    match e {
        Error::Syntax { line, column, message } => format!("syntax error at line {line}, column {column}: {message}"),
        other => other.to_string(),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = AlgebraSpec::by_name(&cli.algebra).and_then(|alg| execute(&cli.command, &alg));
    match result {
        Ok(o) => {
            if cli.json {
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&o.report).expect("serializable")
                );
            } else {
                for line in &o.text {
                    let _ = writeln!(out, "{line}");
                }
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", describe(&e));
            exit_code(&e)
        }
    }
}

fn rows_pq(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(scalar::to_pq).collect())
        .collect()
}

fn matrix_text(m: &Matrix) -> Vec<String> {
    let cells: Vec<Vec<String>> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(scalar::display).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells
        .iter()
        .map(|r| {
            let padded: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
            format!("  [{}]", padded.join(" "))
        })
        .collect()
}

fn f64_text(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|c| format!("{c}")).collect();
    format!("({})", parts.join(", "))
}

/// Parses "a,b;c,d" into a matrix of rationals.
pub fn parse_matrix(text: &str) -> crate::Result<Matrix> {
    let rows = text
        .split(';')
        .map(|r| r.split(',').map(|c| scalar::parse_rational(c.trim())).collect())
        .collect::<crate::Result<Vec<Vec<Scalar>>>>()?;
    Matrix::from_rows(rows).map_err(|_| Error::Semantic(format!("'{text}' is not a rectangular matrix")))
}

fn base_report(alg: &AlgebraSpec, canonical: String) -> Report {
    Report {
        algebra: alg.name().to_string(),
        canonical,
        coordinates: Vec::new(),
        checks: Vec::new(),
        std_components: None,
    }
}

fn execute(cmd: &Command, alg: &AlgebraSpec) -> crate::Result<Outcome> {
    match cmd {
        Command::Derive { order, expr } => derive_cmd(alg, *order, expr),
        Command::Jacobian { at, expr } => jacobian_cmd(alg, at, expr),
        Command::Taylor { at, degree, expr } => taylor_cmd(alg, at, *degree, expr),
        Command::SolveOde { rhs, x0, y0, max_order } => ode_cmd(alg, rhs, x0, y0, *max_order),
        Command::Exp { terms, at } => exp_cmd(alg, *terms, at),
        Command::CheckCr { matrix } => cr_cmd(alg, matrix),
        Command::VerifyTable { points, seed } => verify_cmd(alg, *points, *seed),
        Command::Norm { coord_matrix } => norm_cmd(alg, coord_matrix),
        Command::Oracle { at, dir, expr } => oracle_cmd(alg, at, dir, expr),
    }
}

fn derive_cmd(alg: &AlgebraSpec, order: usize, expr: &str) -> crate::Result<Outcome> {
    let p = parse::parse_poly(expr, alg)?;
    let d = gateaux::derive_n(&p, order)?;
    let canonical = d.poly.simplified();
    let text = canonical.to_text(alg);
    let mut report = base_report(alg, text.clone());
    report.coordinates = canonical
        .words()
        .iter()
        .map(|w| {
            w.constants()
                .iter()
                .flat_map(|c| c.coords().iter().map(scalar::to_pq))
                .collect()
        })
        .collect();
    let hs: Vec<Var> = (p.max_increment() + 1..=d.order).map(|i| Var::H(i as u8)).collect();
    if hs.len() > 1 {
        let sym = is_symmetric(&canonical, &hs, alg);
        report.checks.push(Check {
            name: "symmetric".into(),
            pass: sym,
            detail: format!("under exchange of {}", list(&hs)),
        });
    }
    Ok(Outcome {
        report,
        text: vec![text],
        code: EXIT_OK,
    })
}

fn list(vars: &[Var]) -> String {
    vars.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn jacobian_cmd(alg: &AlgebraSpec, at: &str, expr: &str) -> crate::Result<Outcome> {
    let p = parse::parse_poly(expr, alg)?;
    let x0 = parse::parse_element(at, alg)?;
    let df = gateaux::derive(&p)?;
    let m = gateaux::jacobian(&df, &x0, alg)?;
    let f = gateaux::differential_std_components(&df, &x0, alg)?;
    let mut checks = Vec::new();
    let forward = linear::std_to_coord(&f, alg)? == m;
    checks.push(Check {
        name: "components reproduce matrix".into(),
        pass: forward,
        detail: "std_to_coord(components) = jacobian".into(),
    });
    if matches!(alg.kind(), crate::algebra::AlgebraKind::Quaternion) {
        let independent = linear::solve_std(&m, alg)?;
        let residuals = linear::quaternion_relations(&m, &independent);
        let failing: Vec<String> = residuals
            .iter()
            .filter(|(_, r)| !num_traits::Zero::is_zero(r))
            .map(|((i, j), r)| format!("f^{i}{j}: {}", scalar::display(r)))
            .collect();
        checks.push(Check {
            name: "quaternion inversion identities".into(),
            pass: failing.is_empty(),
            detail: if failing.is_empty() {
                "16 of 16 hold".into()
            } else {
                failing.join("; ")
            },
        });
    }
    let ok = checks.iter().all(|c| c.pass);
    let mut text = vec![format!("differential: {}", df.poly.simplified().to_text(alg))];
    text.push(format!("at x = {}", alg.format(&x0)));
    text.push("jacobian (row i = image of e_i):".into());
    text.extend(matrix_text(&m.0));
    text.push("standard components f^ij:".into());
    text.extend(matrix_text(&f.0));
    for c in &checks {
        text.push(format!("check {}: {} ({})", c.name, pass_word(c.pass), c.detail));
    }
    let mut report = base_report(alg, df.poly.simplified().to_text(alg));
    report.coordinates = rows_pq(&m.0);
    report.std_components = Some(rows_pq(&f.0));
    report.checks = checks;
    Ok(Outcome {
        report,
        text,
        code: if ok { EXIT_OK } else { EXIT_VERIFY },
    })
}

fn pass_word(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

fn taylor_cmd(alg: &AlgebraSpec, at: &str, degree: usize, expr: &str) -> crate::Result<Outcome> {
    let p = parse::parse_poly(expr, alg)?;
    let x0 = parse::parse_element(at, alg)?;
    let full = taylor::taylor_expand(&p, &x0, alg)?;
    let t = full.truncated(degree);
    let assembled = t.assemble(alg);
    let mut text = vec![
        format!("center x0 = {}", alg.format(&x0)),
        "terms in h1 = x - x0:".into(),
    ];
    for (n, term) in t.terms.iter().enumerate() {
        text.push(format!("  T{n} = {}", term.simplified().to_text(alg)));
    }
    text.push(format!("sum = {}", assembled.to_text(alg)));
    let mut report = base_report(alg, assembled.to_text(alg));
    report.coordinates = vec![x0.coords().iter().map(scalar::to_pq).collect()];
    let mut code = EXIT_OK;
    if degree >= full.degree() {
        let exact = semantic_eq(&assembled, &p, alg);
        text.push(format!(
            "check reproduces input: {}",
            if exact { "pass" } else { "fail" }
        ));
        report.checks.push(Check {
            name: "reproduces input".into(),
            pass: exact,
            detail: "exact for polynomials".into(),
        });
        if !exact {
            code = EXIT_VERIFY;
        }
    } else {
        text.push(format!("truncated below degree {}", full.degree()));
    }
    Ok(Outcome { report, text, code })
}

fn ode_cmd(alg: &AlgebraSpec, rhs: &str, x0: &str, y0: &str, max_order: usize) -> crate::Result<Outcome> {
    let rhs = parse::parse_poly(rhs, alg)?;
    let x0 = parse::parse_element(x0, alg)?;
    let y0 = parse::parse_element(y0, alg)?;
    let problem = OdeProblem::new(rhs, x0, y0)?;
    match taylor::solve_ode(&problem, max_order, alg)? {
        OdeOutcome::Solution { y, taylor } => {
            let text = format!("y = {}", y.to_text(alg));
            let mut report = base_report(alg, text.clone());
            report.coordinates = vec![problem.y0.coords().iter().map(scalar::to_pq).collect()];
            report.checks.push(Check {
                name: "derivative matches right-hand side".into(),
                pass: true,
                detail: format!("solution degree {}", taylor.degree()),
            });
            Ok(Outcome {
                report,
                text: vec![text],
                code: EXIT_OK,
            })
        }
        OdeOutcome::Unsolvable(why) => {
            let (summary, detail) = match &why {
                Unsolvable::Asymmetric {
                    order,
                    swapped,
                    difference,
                } => (
                    format!(
                        "no solution: derivative of order {order} changes under {} <-> {}",
                        swapped.0, swapped.1
                    ),
                    format!("difference: {difference}"),
                ),
                Unsolvable::VerificationFailed { difference } => (
                    "no solution: candidate does not reproduce the right-hand side".into(),
                    format!("difference: {difference}"),
                ),
            };
            let mut report = base_report(alg, summary.clone());
            report.checks.push(Check {
                name: "solvable".into(),
                pass: false,
                detail: detail.clone(),
            });
            Ok(Outcome {
                report,
                text: vec![summary, detail],
                code: EXIT_UNSOLVABLE,
            })
        }
    }
}

fn exp_cmd(alg: &AlgebraSpec, terms: usize, at: &str) -> crate::Result<Outcome> {
    let q = parse::parse_element(at, alg)?;
    let v = taylor::exp_series(&q.to_f64(), terms, alg)?;
    let text = f64_text(&v);
    let mut report = base_report(alg, text.clone());
    report.coordinates = vec![v.iter().map(|c| format!("{c}")).collect()];
    Ok(Outcome {
        report,
        text: vec![format!("exp({}) ~ {text}", alg.format(&q))],
        code: EXIT_OK,
    })
}

fn cr_cmd(alg: &AlgebraSpec, matrix: &str) -> crate::Result<Outcome> {
    let m = CoordMatrix(parse_matrix(matrix)?);
    let check = linear::cauchy_riemann_check(&m)?;
    let (pass, detail) = match &check {
        CrCheck::Satisfied => (true, "satisfied".to_string()),
        CrCheck::Violated { residuals } => (
            false,
            format!(
                "violated, residuals ({})",
                residuals.iter().map(scalar::display).collect::<Vec<_>>().join(", ")
            ),
        ),
    };
    let mut report = base_report(alg, detail.clone());
    report.coordinates = rows_pq(&m.0);
    report.checks.push(Check {
        name: "cauchy-riemann".into(),
        pass,
        detail: detail.clone(),
    });
    Ok(Outcome {
        report,
        text: vec![detail],
        code: if pass { EXIT_OK } else { EXIT_VERIFY },
    })
}

fn verify_cmd(alg: &AlgebraSpec, points: usize, seed: u64) -> crate::Result<Outcome> {
    let mut rng = sample::rng(seed);
    let dim = alg.dim();
    let mut checks = Vec::new();
    let mut text = vec![format!(
        "seed {seed}, {points} points per entry, tolerance {TOLERANCE:e}"
    )];
    for entry in gateaux::closed_form_table() {
        let mut worst: f64 = 0.0;
        for _ in 0..points {
            let min = if entry.uses_inverse { 0.5 } else { 0.0 };
            let x = sample::element_in_shell(&mut rng, dim, min, 2.0);
            let h = sample::element_in_shell(&mut rng, dim, 0.0, 2.0);
            let params = ClosedFormParams {
                a: sample::element(&mut rng, dim, 1, 4),
                b: sample::element(&mut rng, dim, 1, 4),
                c: sample::element(&mut rng, dim, 1, 4),
            };
            let e = gateaux::check_closed_form(&entry, alg, &x, &h, &params, StepSchedule::default())?;
            worst = worst.max(e);
        }
        let pass = worst <= TOLERANCE;
        text.push(format!(
            "{:<20} {:<14} {:<30} max rel. error {worst:.2e}  {}",
            entry.name,
            format!("d({})", entry.map_text),
            entry.derivative_text,
            pass_word(pass)
        ));
        checks.push(Check {
            name: entry.name.into(),
            pass,
            detail: format!("max relative error {worst:e}"),
        });
    }
    let ok = checks.iter().all(|c| c.pass);
    let mut report = base_report(alg, format!("seed {seed}"));
    report.checks = checks;
    Ok(Outcome {
        report,
        text,
        code: if ok { EXIT_OK } else { EXIT_VERIFY },
    })
}

fn norm_cmd(alg: &AlgebraSpec, matrix: &str) -> crate::Result<Outcome> {
    let m = CoordMatrix(parse_matrix(matrix)?);
    let n = linear::map_norm(&m, alg)?;
    let mut report = base_report(alg, format!("{n}"));
    report.coordinates = rows_pq(&m.0);
    Ok(Outcome {
        report,
        text: vec![format!("{n}")],
        code: EXIT_OK,
    })
}

fn oracle_cmd(alg: &AlgebraSpec, at: &str, dir: &str, expr: &str) -> crate::Result<Outcome> {
    let e = parse::parse(expr)?;
    let x = parse::parse_element(at, alg)?;
    let a = parse::parse_element(dir, alg)?;
    let f = |y: &[f64]| parse::eval_f64(&e, &HashMap::from([(Var::X, y.to_vec())]), alg);
    let approx = numeric::numeric_gateaux(f, &x.to_f64(), &a.to_f64(), StepSchedule::default())?;
    let mut text = vec![format!("numeric: {}", f64_text(&approx))];
    let mut report = base_report(alg, f64_text(&approx));
    report.coordinates = vec![approx.iter().map(|c| format!("{c}")).collect()];
    let mut code = EXIT_OK;
    if !parse::has_negative_power(&e) {
        let p: NcPoly = parse::lower(&e, alg)?;
        let df = gateaux::derive(&p)?;
        let exact: Element = gateaux::eval_differential(&df, &x, &a, alg)?;
        let err = numeric::relative_error(&approx, &exact.to_f64());
        let pass = err <= TOLERANCE;
        text.push(format!("symbolic: {}", alg.format(&exact)));
        text.push(format!("relative error {err:.2e} {}", pass_word(pass)));
        report.checks.push(Check {
            name: "symbolic agreement".into(),
            pass,
            detail: format!("relative error {err:e}"),
        });
        if !pass {
            code = EXIT_VERIFY;
        }
    }
    Ok(Outcome { report, text, code })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("ncq").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn derive_square() {
        let (code, out, _) = run_args(&["--algebra", "quaternion", "derive", "--order", "1", "x^2"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "x*h1 + h1*x");
    }

    #[test]
    fn ode_examples() {
        let (code, out, _) = run_args(&["solve-ode", "--rhs", "h*x^2 + x*h*x + x^2*h", "--x0", "0", "--y0", "0"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "y = x^3");
        let (code, out, _) = run_args(&["--algebra", "quaternion", "solve-ode", "--rhs", "3*h*x^2"]);
        assert_eq!(code, EXIT_UNSOLVABLE);
        assert!(out.contains("order 2"), "{out}");
    }

    #[test]
    fn parse_error_exit() {
        let (code, _, err) = run_args(&["derive", "x + * x"]);
        assert_eq!(code, EXIT_PARSE);
        assert!(err.contains("line 1, column 5"), "{err}");
        let (code, _, _) = run_args(&["derive", "x^-1"]);
        assert_eq!(code, EXIT_PARSE);
    }

    #[test]
    fn unsupported_exit() {
        let (code, _, _) = run_args(&["--algebra", "complex", "derive", "conj(x)"]);
        assert_eq!(code, EXIT_UNSUPPORTED);
        let (code, _, _) = run_args(&[
            "--algebra",
            "efab:1/-1",
            "norm",
            "--coord-matrix",
            "1,0,0,0;0,1,0,0;0,0,1,0;0,0,0,1",
        ]);
        assert_eq!(code, EXIT_UNSUPPORTED);
    }

    #[test]
    fn json_schema() {
        let (code, out, _) = run_args(&["--json", "--algebra", "complex", "check-cr", "--matrix", "1,0;0,-1"]);
        assert_eq!(code, EXIT_VERIFY);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["algebra"], "complex");
        assert_eq!(v["coordinates"][1][1], "-1/1");
        assert_eq!(v["checks"][0]["pass"], false);
        assert!(v["checks"][0]["detail"].as_str().unwrap().contains("(2, 0)"));
    }

    #[test]
    fn matrices() {
        assert_eq!(parse_matrix("1,2;3,4").unwrap(), Matrix::from_i64(&[&[1, 2], &[3, 4]]));
        assert!(parse_matrix("1,2;3").is_err());
        assert!(parse_matrix("1,a").is_err());
    }
}
