//! Command-line verification harness for the rolling-distribution engine:
//! runs the exact and numeric check suites over a parameter sweep, exports
//! the structure-constant tables and solves the profile cubic.

mod checks;
mod config;
mod report;
mod tables;

use clap::{Args, Parser, Subcommand};
use config::{load_sweep, parse_rat, Format, RunConfig};
use g2roll::rng::rat_to_f64;
use g2roll::rolling::{first_integrals, profile_derivatives, solve_h};
use g2roll::Params;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "g2roll")]
#[command(about = "Exact and numeric verification of the split-g2 rolling distribution")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ParamArgs {
    /// Surface constant kappa as an exact rational p/q.
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<String>,

    /// Homothety constant c as an exact rational p/q (non-zero).
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,

    /// Integration constant alpha as an exact rational p/q.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,

    /// JSON sweep file: [{"kappa": "p/q", "c": "p/q", "alpha": "p/q"}, ..].
    #[arg(long)]
    sweep: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite across the parameter sweep.
    Verify {
        /// One of: all, growth, g2, sl3, flatness, ode, gauss, symmetry.
        selector: String,

        #[command(flatten)]
        params: ParamArgs,

        /// Seed for all sampled points.
        #[arg(long, default_value_t = 42)]
        seed: u64,

        /// Number of sample points per numeric check.
        #[arg(long, default_value_t = 50)]
        points: usize,

        /// Directory to write the report into (in addition to stdout).
        #[arg(long)]
        out: Option<PathBuf>,

        /// Output format: json, csv or text.
        #[arg(long, default_value = "text")]
        format: String,

        /// Suppress timestamps so reports are byte-for-byte reproducible.
        #[arg(long, default_value_t = false)]
        reproducible: bool,
    },

    /// Export structure-constant tables and the root diagram.
    Table {
        /// One of: brackets, killing, roots.
        kind: String,

        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,

        /// Seed for the structure-constant sampling points.
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },

    /// Solve the profile cubic at a given x and report the first integrals.
    SolveH {
        /// Abscissa x, as a decimal or an exact rational p/q.
        #[arg(long, allow_hyphen_values = true)]
        x: String,

        #[command(flatten)]
        params: ParamArgs,
    },
}

fn resolve_params(args: &ParamArgs) -> Result<Vec<Params>, String> {
    if let Some(path) = &args.sweep {
        let sweep = load_sweep(path)?;
        if sweep.is_empty() {
            return Err("sweep file contains no entries".to_string());
        }
        return Ok(sweep);
    }
    if args.kappa.is_some() || args.c.is_some() || args.alpha.is_some() {
        let kappa = parse_rat(args.kappa.as_deref().unwrap_or("0"))?;
        let c = parse_rat(args.c.as_deref().unwrap_or("1"))?;
        let alpha = parse_rat(args.alpha.as_deref().unwrap_or("0"))?;
        return Ok(vec![
            Params::new(kappa, c, alpha).map_err(|e| e.to_string())?
        ]);
    }
    Ok(Params::default_sweep())
}

fn parse_x(text: &str) -> Result<f64, String> {
    if let Ok(v) = text.parse::<f64>() {
        return Ok(v);
    }
    parse_rat(text).map(|r| rat_to_f64(&r))
}

fn configure_threads() {
    if let Ok(n) = std::env::var("G2ROLL_THREADS") {
        if let Ok(n) = n.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Verify {
            selector,
            params,
            seed,
            points,
            out,
            format,
            reproducible,
        } => {
            let format: Format = format.parse()?;
            let config = RunConfig {
                sweep: resolve_params(&params)?,
                seed,
                points,
                out,
                format,
                reproducible,
            };
            let results = checks::run(&selector, &config)?;
            let rendered = report::render(&selector, &config, &results);
            print!("{rendered}");
            if let Some(dir) = &config.out {
                std::fs::create_dir_all(dir).map_err(|e| format!("cannot create {dir:?}: {e}"))?;
                let path = dir.join(report::file_name(config.format));
                std::fs::write(&path, &rendered)
                    .map_err(|e| format!("cannot write {path:?}: {e}"))?;
                if selector == "flatness" || selector == "all" {
                    let lines = checks::curvature_jsonl(&config);
                    let path = dir.join("curvature.jsonl");
                    std::fs::write(&path, lines)
                        .map_err(|e| format!("cannot write {path:?}: {e}"))?;
                }
            }
            Ok(results.iter().all(|r| r.passed))
        }
        Command::Table { kind, out, seed } => {
            let algebra = checks::flat_algebra(seed);
            let written = tables::write_tables(&kind, &algebra, &out)?;
            for path in written {
                println!("wrote {path}");
            }
            Ok(true)
        }
        Command::SolveH { x, params } => {
            let sweep = resolve_params(&params)?;
            let x = parse_x(&x)?;
            for entry in &sweep {
                solve_h_report(entry, x);
            }
            Ok(true)
        }
    }
}

fn solve_h_report(params: &Params, x: f64) {
    println!("params {params}, x = {x}");
    let solution = solve_h(params, x);
    for &(root, multiplicity) in &solution.roots {
        let residual = solution.relative_residual(root);
        if multiplicity > 1 {
            println!(
                "  root h = {root} (multiplicity {multiplicity}, non-generic), cubic residual {residual:.3e}"
            );
        } else {
            println!("  root h = {root}, cubic residual {residual:.3e}");
        }
        let (h1, h2, h3, _) = profile_derivatives(params, root);
        match first_integrals(root, h1, h2, params) {
            Ok((i1, i2)) => {
                let ode = (h3 * h1 * root - 3.0 * h2 * h2 * root - h2 * h1 * h1).abs();
                println!(
                    "    I1 = {i1} (expect c^3), I2 = {i2} (expect kappa), ode residual {ode:.3e}"
                );
            }
            Err(e) => println!("    first integrals unavailable: {e}"),
        }
    }
}
