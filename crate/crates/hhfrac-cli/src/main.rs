//! `hhfrac` — audit Hermite-Hadamard-type bounds over fractional integrals.
//!
//! Subcommands:
//!   eval       evaluate one theorem at one grid cell, printing every term
//!   sweep      run a configured sweep; write JSON/CSV, print a summary
//!   sharpness  search a parameter grid for the minimal rhs margin
//!   convexity  empirically certify a convexity class for a function
//!
//! Exit codes: 0 success; 1 when `--strict` is set and any as-stated bound
//! was violated; 2 on configuration, usage, or runtime errors.

use clap::{Parser, Subcommand};
use hhfrac::bounds::{evaluate, BoundVariant, EvalCtx, InequalityReport, TheoremId, Verdict};
use hhfrac::convexity::{check_convex, check_m_convex, check_s_convex, ConvexityVerdict};
use hhfrac::sweep::{run_sweep, sharpness_search, SharpnessQuery, SweepConfig, SweepReport};
use hhfrac::{Error, FuncSpec, Interval};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "hhfrac",
    version,
    about = "Riemann-Liouville fractional integrals and numeric audits of Hermite-Hadamard-type bounds"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Absolute quadrature tolerance override
    #[arg(long, global = true)]
    tol_abs: Option<f64>,

    /// Relative quadrature tolerance override
    #[arg(long, global = true)]
    tol_rel: Option<f64>,

    /// Worker threads for sweep evaluation (default: rayon's choice)
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Seed for the certifier's random sampling
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Exit with code 1 if any as-stated bound is violated
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one theorem at one cell and print all terms and margins
    Eval {
        /// Theorem id: E1, e13, e14, T1, L1, T2, h1, kk, h2
        #[arg(long)]
        theorem: String,
        /// Function spec, e.g. power:0.5 or quadratic:0,0,1
        #[arg(long)]
        f: String,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        m: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        /// as-stated, proof-consistent, or both
        #[arg(long, default_value = "both")]
        variant: String,
    },
    /// Run the sweep described by a JSON config; write reports and print a summary
    Sweep {
        /// Path to the sweep config (JSON; `{}` selects all defaults)
        #[arg(long)]
        config: PathBuf,
        /// JSON report path (overrides the config's `out`)
        #[arg(long)]
        out: Option<PathBuf>,
        /// CSV report path (overrides the config's `csv`)
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Search a parameter grid for the minimal rhs margin of a bound
    Sharpness {
        #[arg(long)]
        theorem: String,
        /// Function family; arguments may bind grid variables, e.g. power:s
        #[arg(long)]
        family: String,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        /// Comma-separated grid, e.g. --s-grid 0.25,0.5,0.75
        #[arg(long, value_delimiter = ',')]
        s_grid: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        alpha_grid: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        m_grid: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        q_grid: Option<Vec<f64>>,
        #[arg(long, default_value = "as-stated")]
        variant: String,
    },
    /// Empirically certify a convexity class for a function
    Convexity {
        #[arg(long)]
        f: String,
        /// one of: convex, s-convex, m-convex
        #[arg(long)]
        class: String,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        m: Option<f64>,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        /// Tensor grid resolution per axis
        #[arg(long, default_value_t = hhfrac::convexity::DEFAULT_GRID_N)]
        grid_n: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 0 for --help/--version and 2 for usage errors
            e.exit();
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn eval_ctx(cli: &Cli) -> EvalCtx {
    let mut ctx = EvalCtx::default();
    if let Some(abs) = cli.tol_abs {
        ctx.quad_tol.abs_tol = abs;
    }
    if let Some(rel) = cli.tol_rel {
        ctx.quad_tol.rel_tol = rel;
    }
    ctx
}

fn run(cli: Cli) -> Result<u8, Error> {
    match &cli.cmd {
        Cmd::Eval {
            theorem,
            f,
            a,
            b,
            alpha,
            s,
            m,
            q,
            variant,
        } => {
            let theorem = TheoremId::from_str(theorem)?;
            let func = FuncSpec::parse(f)?;
            let iv = Interval::new(*a, *b)?;
            let variants: Vec<BoundVariant> = match variant.as_str() {
                "both" => {
                    if theorem.has_variants() {
                        vec![BoundVariant::AsStated, BoundVariant::ProofConsistent]
                    } else {
                        vec![BoundVariant::AsStated]
                    }
                }
                one => vec![BoundVariant::from_str(one)?],
            };
            let ctx = eval_ctx(&cli);
            println!("{theorem} f={} [{a}, {b}]{}", func.spec_str(), format_params(*alpha, *s, *m, *q));
            let mut any_stated_violation = false;
            for v in variants {
                let report = evaluate(theorem, v, &func, iv, *alpha, *s, *m, *q, &ctx)?;
                print_report(&report);
                if report.variant == BoundVariant::AsStated && report.verdict == Verdict::Violated
                {
                    any_stated_violation = true;
                }
            }
            Ok(strict_code(cli.strict, any_stated_violation))
        }

        Cmd::Sweep { config, out, csv } => {
            let text = std::fs::read_to_string(config)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", config.display())))?;
            let mut sweep_config = SweepConfig::from_json(&text)?;
            if let Some(seed) = cli.seed {
                sweep_config.seed = seed;
            }
            if let Some(abs) = cli.tol_abs {
                let mut t = sweep_config.quad_tol.unwrap_or(EvalCtx::default().quad_tol);
                t.abs_tol = abs;
                sweep_config.quad_tol = Some(t);
            }
            if let Some(rel) = cli.tol_rel {
                let mut t = sweep_config.quad_tol.unwrap_or(EvalCtx::default().quad_tol);
                t.rel_tol = rel;
                sweep_config.quad_tol = Some(t);
            }
            let out_path = out.clone().or_else(|| sweep_config.out.clone().map(PathBuf::from));
            let csv_path = csv.clone().or_else(|| sweep_config.csv.clone().map(PathBuf::from));

            let started = std::time::Instant::now();
            let report = with_pool(cli.workers, || run_sweep(&sweep_config))?;
            let elapsed = started.elapsed();

            print_summary(&report);
            println!(
                "{} cells planned, {} evaluated, {} skipped, {} certifications, {:.2}s",
                report.stats.cells_planned,
                report.stats.cells_evaluated,
                report.stats.cells_skipped,
                report.stats.certifications_run,
                elapsed.as_secs_f64()
            );
            if let Some(path) = &out_path {
                std::fs::write(path, report.to_json())
                    .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
                println!("wrote {}", path.display());
            }
            if let Some(path) = &csv_path {
                let file = std::fs::File::create(path)
                    .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
                let mut w = std::io::BufWriter::new(file);
                report
                    .write_csv(&mut w)
                    .and_then(|_| w.flush())
                    .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
                println!("wrote {}", path.display());
            }
            let any_stated_violation = report
                .summary
                .iter()
                .any(|s| s.variant == BoundVariant::AsStated && s.violated > 0);
            Ok(strict_code(cli.strict, any_stated_violation))
        }

        Cmd::Sharpness {
            theorem,
            family,
            a,
            b,
            s_grid,
            alpha_grid,
            m_grid,
            q_grid,
            variant,
        } => {
            let mut query = SharpnessQuery::new(
                TheoremId::from_str(theorem)?,
                family,
                Interval::new(*a, *b)?,
            );
            if let Some(g) = s_grid {
                query.s_grid = g.clone();
            }
            if let Some(g) = alpha_grid {
                query.alpha_grid = g.clone();
            }
            if let Some(g) = m_grid {
                query.m_grid = g.clone();
            }
            if let Some(g) = q_grid {
                query.q_grid = g.clone();
            }
            query.variant = BoundVariant::from_str(variant)?;
            if let Some(seed) = cli.seed {
                query.seed = seed;
            }
            let record = sharpness_search(&query, &eval_ctx(&cli))?;
            println!(
                "{} [{}]: minimal rhs margin {} at {} ({} cells evaluated, {} skipped)",
                record.theorem,
                record.variant,
                fmt_f(record.min_margin),
                record.at,
                record.evaluated,
                record.skipped
            );
            Ok(0)
        }

        Cmd::Convexity {
            f,
            class,
            s,
            m,
            a,
            b,
            grid_n,
        } => {
            let func = FuncSpec::parse(f)?;
            let iv = Interval::new(*a, *b)?;
            let seed = cli.seed.unwrap_or(0);
            let verdict = match class.as_str() {
                "convex" => check_convex(&func, iv, *grid_n, seed)?,
                "s-convex" => {
                    let s = s.ok_or_else(|| {
                        Error::Config("--class s-convex requires --s".into())
                    })?;
                    check_s_convex(&func, s, iv, *grid_n, seed)?
                }
                "m-convex" => {
                    let m = m.ok_or_else(|| {
                        Error::Config("--class m-convex requires --m".into())
                    })?;
                    check_m_convex(&func, m, iv, *grid_n, seed)?
                }
                other => {
                    return Err(Error::Config(format!(
                        "unknown class `{other}` (expected convex, s-convex, or m-convex)"
                    )))
                }
            };
            print_verdict(&verdict, *grid_n);
            Ok(0)
        }
    }
}

fn strict_code(strict: bool, any_stated_violation: bool) -> u8 {
    if strict && any_stated_violation {
        1
    } else {
        0
    }
}

/// Run `body` inside a dedicated rayon pool when a worker count was given.
fn with_pool<T>(workers: Option<usize>, body: impl FnOnce() -> T + Send) -> T
where
    T: Send,
{
    match workers {
        None => body(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(body),
    }
}

/// Compact human formatting; reports and CSV keep full precision.
fn fmt_f(v: f64) -> String {
    if v == 0.0 || (v.abs() >= 1e-4 && v.abs() < 1e7) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn format_params(alpha: Option<f64>, s: Option<f64>, m: Option<f64>, q: Option<f64>) -> String {
    let mut out = String::new();
    for (name, v) in [("alpha", alpha), ("s", s), ("m", m), ("q", q)] {
        if let Some(v) = v {
            out.push_str(&format!(" {name}={v}"));
        }
    }
    out
}

fn print_report(r: &InequalityReport) {
    println!("  variant {}:", r.variant);
    let width = r
        .terms
        .iter()
        .map(|t| t.name.len())
        .chain(r.margins.iter().map(|m| m.name.len() + 7))
        .max()
        .unwrap_or(8);
    for t in &r.terms {
        println!("    {:width$} = {}", t.name, fmt_f(t.value), width = width);
    }
    for m in &r.margins {
        println!("    margin {:w$} = {}", m.name, fmt_f(m.value), w = width - 7);
    }
    if let Some(flag) = r.positive_on_domain {
        println!("    sampled nonnegative: {flag}");
    }
    println!("    verdict: {} (tol {})", r.verdict, fmt_f(r.tol_used));
}

fn print_summary(report: &SweepReport) {
    println!(
        "{:<8} {:<17} {:>9} {:>6} {:>9} {:>9} {:>8}  worst margin",
        "theorem", "variant", "evaluated", "holds", "violated", "equality", "skipped"
    );
    for s in &report.summary {
        let worst = match &s.worst_margin {
            None => String::from("-"),
            Some(w) => format!("{} ({} at {})", fmt_f(w.value), w.margin, w.cell),
        };
        println!(
            "{:<8} {:<17} {:>9} {:>6} {:>9} {:>9} {:>8}  {}",
            s.theorem.to_string(),
            s.variant.to_string(),
            s.evaluated,
            s.holds,
            s.violated,
            s.equality,
            s.skipped,
            worst
        );
    }
}

fn print_verdict(v: &ConvexityVerdict, grid_n: usize) {
    if v.holds {
        println!(
            "holds (grid {grid_n}^3 + {} random; {} samples, no counterexample at this resolution)",
            hhfrac::convexity::RANDOM_SAMPLES,
            v.samples_checked
        );
    } else {
        let w = v.witness.as_ref().expect("violated verdicts carry a witness");
        println!(
            "violated: inequality fails by {} at x={}, y={}, t={} ({} samples checked)",
            fmt_f(w.violation),
            w.x,
            w.y,
            w.t,
            v.samples_checked
        );
    }
}
