//! Command-line front end: `sigma`, `solve`, `converge`, and `verify`.
//!
//! Exit codes: 0 on success, 1 when a solve or verification check fails,
//! 2 on usage errors (bad ranges, unknown identifiers, malformed grids).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use fracspectral::convergence::{ConvergenceReport, ErrorMetric, StudyRunner, StudySpec};
use fracspectral::rhs;
use fracspectral::solver::{self, Method, SchemeRegistry};
use fracspectral::verify;
use fracspectral::OperatorParams;

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "fracspectral",
    version,
    about = "Spectral solvers for two-sided fractional reaction-diffusion problems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the boundary-exponent equation and print (sigma, sigma_star).
    Sigma {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        theta: f64,
        /// Significant digits to display.
        #[arg(long, default_value_t = 15)]
        digits: usize,
    },
    /// Solve one problem instance and write the solution record.
    Solve(SolveArgs),
    /// Run convergence studies over a (method, alpha, theta) grid.
    Converge(ConvergeArgs),
    /// Run the built-in verification checks.
    Verify {
        /// Only run checks whose name contains this substring.
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Args)]
struct SolveArgs {
    /// Scheme name: galerkin | pg | petrov-galerkin.
    #[arg(long, default_value = "pg")]
    method: String,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    theta: f64,
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
    /// Forcing term: sin | abs-sin | jacobi-weighted:<beta> | custom:...
    #[arg(long, default_value = "sin")]
    rhs: String,
    /// Polynomial degree.
    #[arg(long = "N")]
    n: usize,
    /// Right-hand-side quadrature points (default max(2N, 128)).
    #[arg(long = "quad-points")]
    quad_points: Option<usize>,
    #[arg(long, default_value = "solution.json")]
    out: PathBuf,
}

#[derive(Args, Default)]
struct ConvergeArgs {
    /// JSON config file; explicit flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated scheme names.
    #[arg(long)]
    method: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    alphas: Option<Vec<f64>>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    thetas: Option<Vec<f64>>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    rhs: Option<String>,
    /// Single degree (shortcut for a one-entry list).
    #[arg(long = "N")]
    n: Option<usize>,
    /// Comma-separated doubling degree list.
    #[arg(long = "Ns", value_delimiter = ',')]
    ns: Option<Vec<usize>>,
    #[arg(long = "ref-N")]
    ref_n: Option<usize>,
    /// Error metric: E1 | E2.
    #[arg(long = "error")]
    error: Option<String>,
    #[arg(long = "quad-points")]
    quad_points: Option<usize>,
    /// Output format: csv | json | both.
    #[arg(long)]
    format: Option<String>,
    /// Output directory for report files.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for independent grid cells (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

/// The converge fields a JSON config file may supply.
#[derive(Debug, Default, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct ConvergeConfig {
    #[serde(default)]
    methods: Option<Vec<String>>,
    #[serde(default)]
    alphas: Option<Vec<f64>>,
    #[serde(default)]
    thetas: Option<Vec<f64>>,
    #[serde(default)]
    mu: Option<f64>,
    #[serde(default)]
    rhs: Option<String>,
    #[serde(default, rename = "Ns")]
    ns: Option<Vec<usize>>,
    #[serde(default, rename = "ref_N")]
    ref_n: Option<usize>,
    #[serde(default)]
    error: Option<String>,
    #[serde(default)]
    quad_points: Option<usize>,
    #[serde(default)]
    format: Option<String>,
    #[serde(default)]
    out: Option<PathBuf>,
    #[serde(default)]
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Sigma {
            alpha,
            theta,
            digits,
        } => cmd_sigma(alpha, theta, digits),
        Command::Solve(args) => cmd_solve(args),
        Command::Converge(args) => cmd_converge(args),
        Command::Verify { filter } => cmd_verify(filter.as_deref()),
    }
}

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("usage error: {message}");
    ExitCode::from(EXIT_USAGE)
}

fn failure(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_FAILURE)
}

fn cmd_sigma(alpha: f64, theta: f64, digits: usize) -> ExitCode {
    match fracspectral::operator::solve_sigma(alpha, theta) {
        Ok((sigma, sigma_star)) => {
            let d = digits.clamp(1, 17);
            println!("sigma = {sigma:.d$}  sigma_star = {sigma_star:.d$}");
            ExitCode::SUCCESS
        }
        Err(fracspectral::Error::Domain(m)) => usage_error(m),
        Err(e) => failure(e),
    }
}

fn cmd_solve(args: SolveArgs) -> ExitCode {
    let registry = SchemeRegistry::with_builtins();
    let Some(scheme) = registry.get(&args.method) else {
        return usage_error(format!(
            "unknown method {:?}; available: {:?}",
            args.method,
            registry.names()
        ));
    };
    let forcing = match rhs::by_id(&args.rhs) {
        Ok(f) => f,
        Err(e) => return usage_error(e),
    };
    let params = match OperatorParams::new(args.alpha, args.theta, args.mu) {
        Ok(p) => p,
        Err(e) => return usage_error(e),
    };
    let quad = args
        .quad_points
        .map(|q| q.max(args.n + 1))
        .unwrap_or_else(|| solver::default_quad_points(args.n));
    match solver::solve_detailed(args.n, &params, &forcing, &*scheme, quad) {
        Ok((solution, residual)) => {
            if let Err(e) = solution.write_to(&args.out) {
                return failure(e);
            }
            println!(
                "wrote {} ({} coefficients, method {})",
                args.out.display(),
                solution.coefficients().len(),
                solution.method()
            );
            println!(
                "boundary check: u(-1) = {:e}, u(1) = {:e}",
                solution.evaluate(-1.0),
                solution.evaluate(1.0)
            );
            println!("relative residual: {residual:.3e}");
            ExitCode::SUCCESS
        }
        Err(e) => failure(e),
    }
}

struct Cell {
    method: Method,
    alpha: f64,
    theta: f64,
}

fn cmd_converge(args: ConvergeArgs) -> ExitCode {
    let config = match &args.config {
        Some(path) => match load_config(path) {
            Ok(c) => c,
            Err(e) => return usage_error(e),
        },
        None => ConvergeConfig::default(),
    };

    // Flags override config fields; both fall back to defaults.
    let method_names: Vec<String> = match (&args.method, &config.methods) {
        (Some(list), _) => list.split(',').map(|s| s.trim().to_string()).collect(),
        (None, Some(list)) => list.clone(),
        (None, None) => vec!["pg".into()],
    };
    let alphas = args
        .alphas
        .clone()
        .or_else(|| args.alpha.map(|a| vec![a]))
        .or_else(|| config.alphas.clone())
        .unwrap_or_else(|| vec![1.2, 1.4, 1.6, 1.8]);
    let thetas = args
        .thetas
        .clone()
        .or_else(|| args.theta.map(|t| vec![t]))
        .or_else(|| config.thetas.clone())
        .unwrap_or_else(|| vec![0.5, 0.7, 1.0]);
    let mu = args.mu.or(config.mu).unwrap_or(1.0);
    let rhs_id = args
        .rhs
        .clone()
        .or_else(|| config.rhs.clone())
        .unwrap_or_else(|| "sin".into());
    let degrees = args
        .ns
        .clone()
        .or_else(|| args.n.map(|n| vec![n]))
        .or_else(|| config.ns.clone())
        .unwrap_or_else(|| vec![16, 32, 64, 128]);
    let ref_n = args.ref_n.or(config.ref_n).unwrap_or(512);
    let metric_name = args
        .error
        .clone()
        .or_else(|| config.error.clone())
        .unwrap_or_else(|| "E1".into());
    let quad_points = args.quad_points.or(config.quad_points);
    let format = args
        .format
        .clone()
        .or_else(|| config.format.clone())
        .unwrap_or_else(|| "both".into());
    let out_dir = args
        .out
        .clone()
        .or_else(|| config.out.clone())
        .unwrap_or_else(|| PathBuf::from("reports"));
    let jobs = args.jobs.or(config.jobs);

    if degrees.is_empty() {
        return usage_error("empty degree list (--Ns)");
    }
    let registry = SchemeRegistry::with_builtins();
    let mut methods = Vec::new();
    for name in &method_names {
        match registry.get(name) {
            Some(s) => methods.push(s.method()),
            None => {
                return usage_error(format!(
                    "unknown method {name:?}; available: {:?}",
                    registry.names()
                ))
            }
        }
    }
    let forcing = match rhs::by_id(&rhs_id) {
        Ok(f) => f,
        Err(e) => return usage_error(e),
    };
    let Some(metric) = ErrorMetric::parse(&metric_name) else {
        return usage_error(format!(
            "unknown error metric {metric_name:?} (use E1 or E2)"
        ));
    };
    let (write_csv, write_json) = match format.as_str() {
        "csv" => (true, false),
        "json" => (false, true),
        "both" => (true, true),
        other => return usage_error(format!("unknown format {other:?} (use csv, json or both)")),
    };
    for &alpha in &alphas {
        if !(alpha > 1.0 && alpha < 2.0) {
            return usage_error(format!("alpha {alpha} outside (1, 2)"));
        }
    }
    for &theta in &thetas {
        if !(0.0..=1.0).contains(&theta) {
            return usage_error(format!("theta {theta} outside [0, 1]"));
        }
    }
    // Validate the degree list once up front so grid errors exit with the
    // usage code rather than failing inside every cell.
    let probe = StudySpec {
        method: Method::PetrovGalerkin,
        alpha: alphas[0],
        theta: thetas[0],
        mu,
        rhs: forcing.clone(),
        degrees: degrees.clone(),
        ref_degree: ref_n,
        metric,
        quad_points,
    };
    if let Err(e) = probe.validate() {
        return usage_error(e);
    }
    if let Err(e) = std::fs::create_dir_all(&out_dir) {
        return failure(format!("cannot create {}: {e}", out_dir.display()));
    }

    let mut cells = Vec::new();
    for &method in &methods {
        for &alpha in &alphas {
            for &theta in &thetas {
                cells.push(Cell {
                    method,
                    alpha,
                    theta,
                });
            }
        }
    }

    let runner = StudyRunner::new();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => return failure(e),
    };
    let results: Vec<(String, Result<ConvergenceReport, fracspectral::Error>)> =
        pool.install(|| {
            cells
                .par_iter()
                .map(|cell| {
                    let spec = StudySpec {
                        method: cell.method,
                        alpha: cell.alpha,
                        theta: cell.theta,
                        mu,
                        rhs: forcing.clone(),
                        degrees: degrees.clone(),
                        ref_degree: ref_n,
                        metric,
                        quad_points,
                    };
                    let label = format!(
                        "{} alpha={} theta={}",
                        cell.method.tag(),
                        cell.alpha,
                        cell.theta
                    );
                    (label, runner.run_study(&spec))
                })
                .collect()
        });

    // Single writer: flush everything that succeeded, list what failed.
    let mut failures = Vec::new();
    for (label, outcome) in &results {
        match outcome {
            Ok(report) => {
                println!("{}", report.to_display());
                let stem = report_stem(report);
                if write_csv {
                    let path = out_dir.join(format!("{stem}.csv"));
                    if let Err(e) = std::fs::write(&path, report.to_csv()) {
                        return failure(format!("cannot write {}: {e}", path.display()));
                    }
                }
                if write_json {
                    let path = out_dir.join(format!("{stem}.json"));
                    if let Err(e) = std::fs::write(&path, report.to_json()) {
                        return failure(format!("cannot write {}: {e}", path.display()));
                    }
                }
            }
            Err(e) => failures.push(format!("{label}: {e}")),
        }
    }
    if failures.is_empty() {
        println!("wrote {} report(s) to {}", results.len(), out_dir.display());
        ExitCode::SUCCESS
    } else {
        for f in &failures {
            eprintln!("cell failed: {f}");
        }
        eprintln!(
            "{} of {} cells failed; partial results were written to {}",
            failures.len(),
            results.len(),
            out_dir.display()
        );
        ExitCode::from(EXIT_FAILURE)
    }
}

fn load_config(path: &Path) -> Result<ConvergeConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("malformed config {}: {e}", path.display()))
}

fn report_stem(report: &ConvergenceReport) -> String {
    let rhs = report.rhs_id.replace([':', ','], "-");
    format!(
        "{}_a{}_t{}_{}_{}",
        report.method.tag(),
        report.alpha,
        report.theta,
        rhs,
        report.metric.tag()
    )
}

fn cmd_verify(filter: Option<&str>) -> ExitCode {
    let results = verify::run_checks(filter, 1.0);
    if results.is_empty() {
        return usage_error(format!(
            "filter {:?} matched no checks",
            filter.unwrap_or_default()
        ));
    }
    print!("{}", verify::format_table(&results));
    let failed: Vec<&str> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.name)
        .collect();
    if failed.is_empty() {
        println!("all {} checks passed", results.len());
        ExitCode::SUCCESS
    } else {
        eprintln!("failed checks: {}", failed.join(", "));
        ExitCode::from(EXIT_FAILURE)
    }
}
