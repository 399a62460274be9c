//! The `colwave` command line. Exit codes: 0 all checks passed, 1 a check
//! failed, 2 invalid configuration or arguments, 3 solver failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::config::{CheckKind, ExperimentConfig};
use crate::error::{Error, Result};
use crate::experiment::run_check;
use crate::io::save_net_binary;
use crate::linwave::check_support;
use crate::semilinear::FixedPointMap;
use crate::seminorms::{classify_slopes, ClassifyThresholds, Net, ValuationReport, N_MAX};
use crate::suite;
use crate::verify::{oracle_lifespan, write_summary, CheckSummary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "colwave", version, about = "Solution nets of semilinear wave equations with small nonlinearity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Experiment configuration (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory; overrides `outputs` in the config.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads, 0 for one per core.
    #[arg(long, global = true, env = "COLWAVE_THREADS")]
    pub threads: Option<usize>,
    /// Check to run; repeatable, overrides `checks` in the config.
    #[arg(long = "check", global = true)]
    pub checks: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Linear solution per ladder entry: binary dumps and support table.
    SolveLinear,
    /// Picard solve per ladder entry: iteration reports and binary dumps.
    SolveSemilinear,
    /// Valuations and class of the semilinear solution net.
    Valuation,
    /// Run the configured checks and write a summary.
    Check,
    /// Print `1 / (1 - eps t)`.
    Oracle {
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
    },
    /// Run the preset acceptance suite.
    Demo,
}

/// Everything that is not a bad input counts as a solver failure.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Validation { .. } | Error::Json(_) | Error::UnsupportedOrder { .. } => EXIT_CONFIG,
        _ => EXIT_SOLVER,
    }
}

/// Parses `std::env::args` and runs; returns the exit code.
pub fn main() -> i32 {
    run(Cli::parse(), &mut std::io::stdout())
}

pub fn run(cli: Cli, out: &mut impl Write) -> i32 {
    if let Some(n) = cli.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            eprintln!("colwave: {message}");
            code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Error::from(e).into()
    }
}

fn config_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_CONFIG,
        message: message.into(),
    }
}

struct Context {
    cfg: ExperimentConfig,
    out_dir: PathBuf,
}

fn context(cli: &Cli) -> std::result::Result<Context, Failure> {
    let path = cli
        .config
        .as_deref()
        .ok_or_else(|| config_error("this subcommand needs --config PATH"))?;
    let cfg = ExperimentConfig::load(path).map_err(|e| {
        config_error(format!("invalid config {}: {e}", path.display()))
    })?;
    let out_dir = cli.out.clone().unwrap_or_else(|| cfg.outputs.clone());
    fs::create_dir_all(&out_dir).map_err(|e| {
        config_error(format!("outputs {} is not writable: {e}", out_dir.display()))
    })?;
    Ok(Context { cfg, out_dir })
}

fn write_text(dir: &Path, name: &str, text: &str) -> Result<()> {
    fs::write(dir.join(name), text)?;
    Ok(())
}

fn finish(
    out: &mut impl Write,
    dir: &Path,
    summaries: &[CheckSummary],
) -> std::result::Result<i32, Failure> {
    for s in summaries {
        writeln!(out, "{}", s.line()).ok();
    }
    write_summary(&dir.join("summary.json"), summaries)?;
    Ok(if summaries.iter().all(|s| s.ok) {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn dispatch(cli: &Cli, out: &mut impl Write) -> std::result::Result<i32, Failure> {
    match &cli.command {
        Command::Oracle { eps, t } => {
            let y = oracle_lifespan(*eps, *t).map_err(|e| config_error(e.to_string()))?;
            writeln!(out, "{y:?}").ok();
            Ok(EXIT_OK)
        }
        Command::Demo => demo(cli, out),
        Command::SolveLinear => solve_linear(&context(cli)?, out),
        Command::SolveSemilinear => solve_semilinear(&context(cli)?, out),
        Command::Valuation => valuation(&context(cli)?, out),
        Command::Check => check(cli, &context(cli)?, out),
    }
}

fn solve_linear(ctx: &Context, out: &mut impl Write) -> std::result::Result<i32, Failure> {
    let cfg = &ctx.cfg;
    let ladder = cfg.ladder()?;
    let grid = cfg.grid()?;
    let map = FixedPointMap::new(&cfg.problem, &grid, &cfg.quadrature)?;
    let fields = ladder
        .iter()
        .map(|e| map.linear_part(e))
        .collect::<Result<Vec<_>>>()?;
    let tol = cfg.parameters.support_tolerance;
    let mut table = String::from("eps,max_abs,max_outside\n");
    let mut worst = 0.0f64;
    for (e, f) in ladder.iter().zip(&fields) {
        let s = check_support(f, cfg.problem.support_radius, tol);
        worst = worst.max(s.max_outside);
        table.push_str(&format!("{e:.16e},{:.16e},{:.16e}\n", f.sup_abs(), s.max_outside));
    }
    write_text(&ctx.out_dir, "linear.csv", &table)?;
    save_net_binary(&Net::new(ladder, fields)?, &ctx.out_dir, "linear")?;
    let s = CheckSummary::new("solve-linear", worst <= tol).with("max_outside", worst);
    finish(out, &ctx.out_dir, &[s])
}

fn solve_semilinear(ctx: &Context, out: &mut impl Write) -> std::result::Result<i32, Failure> {
    let cfg = &ctx.cfg;
    let ladder = cfg.ladder()?;
    let grid = cfg.grid()?;
    let c = cfg.control();
    let map = FixedPointMap::new(&cfg.problem, &grid, &cfg.quadrature)?;
    let sol = map.solve_net(&ladder, c.tol, c.max_iter)?;
    let mut table = Vec::new();
    sol.write_reports_csv(&mut table)?;
    write_text(&ctx.out_dir, "solve_reports.csv", &String::from_utf8_lossy(&table))?;
    let all = sol.all_converged();
    let iterations = sol.reports.iter().map(|r| r.iterations).max().unwrap_or(0);
    let s = CheckSummary::new("solve-semilinear", all).with("max_iterations", iterations as f64);
    let (net, _) = sol.into_converged()?;
    save_net_binary(&net, &ctx.out_dir, "semilinear")?;
    finish(out, &ctx.out_dir, &[s])
}

fn valuation(ctx: &Context, out: &mut impl Write) -> std::result::Result<i32, Failure> {
    let cfg = &ctx.cfg;
    let grid = cfg.grid()?;
    let c = cfg.control();
    let map = FixedPointMap::new(&cfg.problem, &grid, &cfg.quadrature)?;
    let (net, _) = map
        .solve_net(&cfg.ladder()?, c.tol, c.max_iter)?
        .into_converged()?;
    let mut table = format!("{}\n", ValuationReport::CSV_HEADER).into_bytes();
    let mut summary = CheckSummary::new("valuation", true);
    let mut estimates = Vec::new();
    for n in 0..=N_MAX {
        let r = ValuationReport::compute(&net, n)?;
        r.write_csv_rows(&mut table)?;
        summary = summary.with(&format!("nu_{n}"), r.estimate.slope);
        estimates.push(r.estimate);
    }
    write_text(&ctx.out_dir, "valuation.csv", &String::from_utf8_lossy(&table))?;
    let class = classify_slopes(&estimates, &ClassifyThresholds::default());
    writeln!(out, "class {}", class.as_str()).ok();
    finish(out, &ctx.out_dir, &[summary])
}

fn check(cli: &Cli, ctx: &Context, out: &mut impl Write) -> std::result::Result<i32, Failure> {
    let kinds = if cli.checks.is_empty() {
        ctx.cfg.checks.clone()
    } else {
        cli.checks
            .iter()
            .map(|n| CheckKind::parse(n))
            .collect::<Result<Vec<_>>>()?
    };
    if kinds.is_empty() {
        return Err(config_error("checks: nothing to run; list checks in the config or pass --check"));
    }
    let mut summaries = Vec::new();
    for kind in kinds {
        match run_check(&ctx.cfg, kind) {
            Ok(o) => {
                write_text(&ctx.out_dir, &o.file_name(), &o.table)?;
                summaries.push(o.summary);
            }
            Err(e) => {
                // keep what finished before the failure
                finish(out, &ctx.out_dir, &summaries)?;
                return Err(Failure {
                    code: exit_code(&e),
                    message: format!("check {}: {e}", kind.as_str()),
                });
            }
        }
    }
    finish(out, &ctx.out_dir, &summaries)
}

fn demo(cli: &Cli, out: &mut impl Write) -> std::result::Result<i32, Failure> {
    let mut summaries = Vec::new();
    for id in 1..=suite::TITLES.len() {
        match suite::criterion(id) {
            Ok(c) => {
                writeln!(out, "{}", c.report()).ok();
                for mut s in c.checks.clone() {
                    s.name = format!("criterion_{id}.{}", s.name);
                    summaries.push(s);
                }
                summaries.push(
                    CheckSummary::new(format!("criterion_{id}"), c.ok()).with("seconds", c.seconds),
                );
            }
            Err(e) => {
                writeln!(out, "criterion {id} FAIL {} (error: {e})", suite::TITLES[id - 1]).ok();
                summaries.push(CheckSummary::new(format!("criterion_{id}"), false));
            }
        }
    }
    if let Some(dir) = &cli.out {
        fs::create_dir_all(dir).map_err(|e| config_error(format!("outputs: {e}")))?;
        write_summary(&dir.join("summary.json"), &summaries)?;
    }
    let passed = summaries
        .iter()
        .filter(|s| !s.name.contains('.'))
        .filter(|s| s.ok)
        .count();
    writeln!(out, "{passed}/{} criteria passed", suite::TITLES.len()).ok();
    Ok(if passed == suite::TITLES.len() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}
