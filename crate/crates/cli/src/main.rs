//! `kappa` — exact checks and evaluations for differential calculi on
//! kappa-Minkowski space.
//!
//! Verbs: `check` runs verification suites, `eval` evaluates an expression,
//! `act` applies a Lorentz-sector generator to a noncommutative polynomial,
//! `table` prints bracket or realization tables.
//!
//! Exit codes: 0 on success (all executed non-finding checks pass), 1 when a
//! check fails, 2 on usage, parse or evaluation errors.

mod parse;

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigRational;

use kappa_core::{
    all_required_pass, closure_table_text, run_suite, ActionEngine, Context, Family, Realization,
    Suite, SuiteConfig, DEFAULT_MAX_DEGREE, DEFAULT_SAMPLES, DEFAULT_SEED,
};

use parse::{eval, eval_abstract, eval_concrete, expression_degree, parse as parse_expr};

#[derive(Parser)]
#[command(
    name = "kappa",
    version,
    about = "Exact symbolic engine for differential calculi on kappa-Minkowski space",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite and report each check
    Check {
        /// Suite: all, sitarz, d1, d2, lorentz, actions, coproduct, jacobi, phi
        #[arg(default_value = "all")]
        suite: String,
        #[command(flatten)]
        size: SizeOpts,
        /// Restrict the d1/d2 sweeps to this shift exponent (e.g. 2 or 1/2)
        #[arg(long)]
        c: Option<String>,
        /// Seed for the randomized Jacobi samples
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Number of random Jacobi samples per family
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate an expression (normalized polynomial or realized operator)
    Eval {
        /// Expression, e.g. "comm(xhat[0], xhat[1])" or "Z^(1/2)*Z^(1/2)"
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        size: SizeOpts,
        #[command(flatten)]
        real: RealOpts,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Act with a generator on a polynomial in xhat/xi, e.g. act "M[1,0]" "xhat[0]*xhat[1]"
    Act {
        /// Generator expression, e.g. "M[1,0]", "Mt[1,2]" or "p[0]"
        #[arg(allow_hyphen_values = true)]
        generator: String,
        /// Target polynomial in the abstract symbols xhat[mu], xi[mu]
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        size: SizeOpts,
        #[command(flatten)]
        real: RealOpts,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print a table: the detected [xi, xhat] bracket constants or the realization
    Table {
        /// Which table: xi-x (bracket constants) or realization (symbol table)
        kind: String,
        #[command(flatten)]
        size: SizeOpts,
        #[command(flatten)]
        real: RealOpts,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct SizeOpts {
    /// Spacetime dimension (one time plus n-1 spatial directions)
    #[arg(long, default_value_t = 4)]
    n: u32,
    /// Truncation order in the deformation scale a0
    #[arg(long, default_value_t = 6)]
    order: u32,
}

#[derive(Args)]
struct RealOpts {
    /// Realization family: sitarz, d1 or d2
    #[arg(long, default_value = "d1")]
    family: String,
    /// Shift exponent for the d1/d2 families (rational, e.g. 1/2)
    #[arg(long, default_value = "1")]
    c: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable lines
    Text,
    /// One JSON record per line
    Structured,
}

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn check_size(size: &SizeOpts) -> Result<Context, String> {
    if !(2..=16).contains(&size.n) {
        return Err(format!("--n must be between 2 and 16, got {}", size.n));
    }
    if size.order > 32 {
        return Err(format!("--order must be at most 32, got {}", size.order));
    }
    Ok(Context::new(size.n, size.order))
}

fn parse_c(s: &str) -> Result<BigRational, String> {
    BigRational::from_str(s)
        .map_err(|_| format!("`{s}` is not a rational number (expected e.g. 2, -1 or 1/2)"))
}

fn build_realization(ctx: Context, real: &RealOpts) -> Result<Realization, String> {
    let family = Family::from_str(&real.family)?;
    let c = parse_c(&real.c)?;
    Ok(Realization::build(ctx, family, c))
}

fn main() -> ExitCode {
    match Cli::parse().cmd {
        Cmd::Check { suite, size, c, seed, samples, format } => {
            let ctx = match check_size(&size) {
                Ok(ctx) => ctx,
                Err(e) => return usage_error(e),
            };
            let suite = match Suite::from_str(&suite) {
                Ok(s) => s,
                Err(e) => return usage_error(e),
            };
            let c_filter = match c.as_deref().map(parse_c) {
                Some(Ok(v)) => Some(v),
                Some(Err(e)) => return usage_error(e),
                None => None,
            };
            let cfg = SuiteConfig {
                n: ctx.n(),
                order: ctx.order(),
                seed,
                samples,
                c_filter,
            };
            let reports = run_suite(&cfg, suite);
            let mut passed = 0usize;
            let mut failed = 0usize;
            let mut findings = 0usize;
            for report in &reports {
                match format {
                    Format::Text => println!("{}", report.render_text()),
                    Format::Structured => println!("{}", report.to_json()),
                }
                match report.category {
                    kappa_core::Category::Finding => findings += 1,
                    kappa_core::Category::Check => {
                        if report.passed() {
                            passed += 1;
                        } else {
                            failed += 1;
                        }
                    }
                }
            }
            if format == Format::Text {
                println!(
                    "{} checks: {passed} passed, {failed} failed, {findings} findings",
                    reports.len()
                );
            }
            if all_required_pass(&reports) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Cmd::Eval { expr, size, real, format } => {
            let ctx = match check_size(&size) {
                Ok(ctx) => ctx,
                Err(e) => return usage_error(e),
            };
            let rea = match build_realization(ctx, &real) {
                Ok(r) => r,
                Err(e) => return usage_error(e),
            };
            let parsed = match parse_expr(&expr, ctx.n()) {
                Ok(p) => p,
                Err(e) => return usage_error(e),
            };
            let value = match eval(&parsed, &rea) {
                Ok(v) => v,
                Err(e) => return usage_error(e),
            };
            match format {
                Format::Text => println!("{value}"),
                Format::Structured => {
                    let mode = match value {
                        parse::Evaluated::Concrete(_) => "operator",
                        parse::Evaluated::Abstract(_) => "polynomial",
                    };
                    println!(
                        "{}",
                        serde_json::json!({
                            "expr": expr,
                            "mode": mode,
                            "n": ctx.n(),
                            "order": ctx.order(),
                            "family": rea.family().to_string(),
                            "c": rea.c().to_string(),
                            "result": value.to_string(),
                        })
                    );
                }
            }
            ExitCode::SUCCESS
        }
        Cmd::Act { generator, expr, size, real, format } => {
            let ctx = match check_size(&size) {
                Ok(ctx) => ctx,
                Err(e) => return usage_error(e),
            };
            let rea = match build_realization(ctx, &real) {
                Ok(r) => r,
                Err(e) => return usage_error(e),
            };
            let gen = match parse_expr(&generator, ctx.n()).map_err(|e| e.to_string()).and_then(
                |p| eval_concrete(&p, &rea).map_err(|e| e.to_string()),
            ) {
                Ok(g) => g,
                Err(e) => return usage_error(format!("generator: {e}")),
            };
            let target = match parse_expr(&expr, ctx.n())
                .map_err(|e| e.to_string())
                .and_then(|p| eval_abstract(&p, &rea).map_err(|e| e.to_string()))
            {
                Ok(t) => t,
                Err(e) => return usage_error(format!("target: {e}")),
            };
            let degree = expression_degree(&target).max(DEFAULT_MAX_DEGREE);
            if degree > 8 {
                return usage_error(format!(
                    "action targets of degree {degree} are not supported (maximum 8)"
                ));
            }
            let engine = ActionEngine::new(&rea, degree);
            let acted = match engine.lorentz_act(&gen, &target) {
                Ok(a) => a,
                Err(e) => return usage_error(e),
            };
            match format {
                Format::Text => println!("{acted}"),
                Format::Structured => println!(
                    "{}",
                    serde_json::json!({
                        "generator": generator,
                        "expr": expr,
                        "n": ctx.n(),
                        "order": ctx.order(),
                        "family": rea.family().to_string(),
                        "c": rea.c().to_string(),
                        "result": acted.to_string(),
                    })
                ),
            }
            ExitCode::SUCCESS
        }
        Cmd::Table { kind, size, real, format } => {
            let ctx = match check_size(&size) {
                Ok(ctx) => ctx,
                Err(e) => return usage_error(e),
            };
            let rea = match build_realization(ctx, &real) {
                Ok(r) => r,
                Err(e) => return usage_error(e),
            };
            match kind.as_str() {
                "xi-x" => match format {
                    Format::Text => print!("{}", closure_table_text(&rea)),
                    Format::Structured => {
                        let include_theta = rea.family() == Family::Sitarz;
                        let report = kappa_core::closure_detect(&rea, include_theta);
                        for ((mu, nu), row) in &report.constants {
                            let constants: Vec<serde_json::Value> = row
                                .iter()
                                .map(|(name, k)| {
                                    serde_json::json!({"symbol": name, "value": k.to_string()})
                                })
                                .collect();
                            println!(
                                "{}",
                                serde_json::json!({
                                    "mu": mu,
                                    "nu": nu,
                                    "closed": report.closed,
                                    "effective_order": report.effective_order,
                                    "constants": constants,
                                })
                            );
                        }
                    }
                },
                "realization" => match format {
                    Format::Text => print!("{}", rea.table_text()),
                    Format::Structured => {
                        for key in rea.keys() {
                            let entry = rea.get(key).expect("listed keys resolve");
                            println!(
                                "{}",
                                serde_json::json!({
                                    "symbol": key.to_string(),
                                    "value": entry.to_string(),
                                })
                            );
                        }
                    }
                },
                other => {
                    return usage_error(format!(
                        "unknown table `{other}` (expected `xi-x` or `realization`)"
                    ))
                }
            }
            ExitCode::SUCCESS
        }
    }
}
