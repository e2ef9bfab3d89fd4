//! Command-line front end: convergence experiments, verification suites and
//! a slice Cauchy-formula demo, with CSV/JSON emission.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cliffosc::clifford::Paravector;
use cliffosc::slice::{cauchy_reconstruct, exp_paravector};
use cliffosc_cli::config::{ExperimentConfig, ProfileSource, SettingKind, TargetKind};
use cliffosc_cli::emit::{emit, fmt_f64, rows_to_csv, EmitFormat};
use cliffosc_cli::run::run_convergence;
use cliffosc_cli::verify::{run_suite, Suite};
use cliffosc_cli::HarnessError;

#[derive(Parser)]
#[command(name = "cliffosc", version, about = "Superoscillation and supershift experiments over Clifford algebras")]
struct Cli {
    /// Worker threads (default: available cores; env CLIFFOSC_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct ExperimentArgs {
    /// Clifford algebra dimension n.
    #[arg(long)]
    n: Option<usize>,
    /// Target frequency a.
    #[arg(long)]
    a: Option<f64>,
    /// Comma-separated list of N values, strictly increasing.
    #[arg(long = "Ns", value_delimiter = ',')]
    ns: Option<Vec<usize>>,
    /// slice | monogenic | supershift-slice | supershift-monogenic.
    #[arg(long)]
    setting: Option<String>,
    /// Grid ball radius R.
    #[arg(long)]
    radius: Option<f64>,
    /// Low-discrepancy grid size (64 structured points are always added).
    #[arg(long)]
    grid: Option<usize>,
    /// Weight exponent for the A_1 norm column.
    #[arg(long)]
    sigma: Option<f64>,
    /// Monogenic truncation degree.
    #[arg(long = "K")]
    trunc: Option<u32>,
    /// Sampling seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Target: exp | taylor-file (needs --taylor-file).
    #[arg(long)]
    target: Option<String>,
    /// JSON file with one blade-coefficient array per series degree.
    #[arg(long)]
    taylor_file: Option<String>,
    /// Frequency profile: identity | quadratic | cubic, or a JSON file with
    /// one Taylor row per component.
    #[arg(long)]
    profile: Option<String>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<String>,
    /// csv | json.
    #[arg(long, default_value = "csv")]
    format: String,
    /// JSON config file; explicit flags override its fields.
    #[arg(long)]
    config: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Superoscillation convergence tables (slice or monogenic setting).
    Superosc(ExperimentArgs),
    /// Supershift convergence tables for entire targets.
    Supershift(ExperimentArgs),
    /// Run a module verification suite.
    Verify {
        /// clifford | combinatorics | fueter | slice | ck | superosc |
        /// supershift | all.
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Slice Cauchy-formula reconstruction demo for f = exp.
    Cauchy {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// Quadrature node counts.
        #[arg(long = "Ms", value_delimiter = ',', default_values_t = vec![64usize, 128, 256, 512])]
        ms: Vec<usize>,
        /// Evaluation point |x| (real axis and slice point are shown).
        #[arg(long, default_value_t = 0.3)]
        r: f64,
    },
}

fn build_config(args: &ExperimentArgs, default_setting: SettingKind) -> Result<ExperimentConfig, HarnessError> {
    let mut config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io {
                path: path.clone(),
                source: e,
            })?;
            serde_json::from_str::<ExperimentConfig>(&text).map_err(|e| {
                HarnessError::InvalidConfig {
                    field: "config".into(),
                    reason: format!("{path}: {e}"),
                }
            })?
        }
        None => ExperimentConfig {
            n: 2,
            a: 2.0,
            ns: vec![4, 8, 16, 32, 64],
            setting: default_setting,
            radius: 1.0,
            grid: 128,
            sigma: None,
            target: TargetKind::Exp,
            taylor_file: None,
            profile: None,
            trunc: None,
            seed: 0,
        },
    };
    if let Some(n) = args.n {
        config.n = n;
    }
    if let Some(a) = args.a {
        config.a = a;
    }
    if let Some(ns) = &args.ns {
        config.ns = ns.clone();
    }
    if let Some(s) = &args.setting {
        config.setting = s.parse()?;
    }
    if let Some(r) = args.radius {
        config.radius = r;
    }
    if let Some(g) = args.grid {
        config.grid = g;
    }
    if args.sigma.is_some() {
        config.sigma = args.sigma;
    }
    if args.trunc.is_some() {
        config.trunc = args.trunc;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(t) = &args.target {
        config.target = match t.as_str() {
            "exp" => TargetKind::Exp,
            "taylor-file" => TargetKind::TaylorFile,
            other => {
                return Err(HarnessError::InvalidConfig {
                    field: "target".into(),
                    reason: format!("unknown target `{other}`"),
                })
            }
        };
    }
    if args.taylor_file.is_some() {
        config.taylor_file = args.taylor_file.clone();
    }
    if let Some(p) = &args.profile {
        config.profile = Some(if p.ends_with(".json") {
            let text = std::fs::read_to_string(p).map_err(|e| HarnessError::Io {
                path: p.clone(),
                source: e,
            })?;
            ProfileSource::Rows(serde_json::from_str(&text).map_err(|e| {
                HarnessError::InvalidConfig {
                    field: "profile".into(),
                    reason: format!("{p}: {e}"),
                }
            })?)
        } else {
            ProfileSource::Named(p.clone())
        });
    }
    Ok(config)
}

fn run_experiment(args: &ExperimentArgs, default_setting: SettingKind) -> Result<(), HarnessError> {
    let config = build_config(args, default_setting)?;
    let rows = run_convergence(&config)?;
    let format: EmitFormat = args.format.parse()?;
    match &args.out {
        Some(path) => {
            emit(&config, &rows, format, path)?;
            eprintln!("wrote {} rows to {path}", rows.len());
        }
        None => {
            let payload = match format {
                EmitFormat::Csv => rows_to_csv(&rows),
                EmitFormat::Json => cliffosc_cli::emit::rows_to_json(&config, &rows)?,
            };
            print!("{payload}");
        }
    }
    Ok(())
}

fn run_cauchy(n: usize, radius: f64, ms: &[usize], r: f64) -> Result<(), HarnessError> {
    let mut j_vec = vec![0.0; n];
    j_vec[0] = 1.0;
    let j = Paravector::new(0.0, j_vec.clone());
    let exp_fn = |p: &Paravector<f64>| exp_paravector(p).embed();
    let points = [
        Paravector::real(n, r),
        Paravector::new(0.0, j_vec.iter().map(|v| v * r).collect()),
    ];
    println!("M,point,abs_error");
    for &m in ms {
        for (label, x) in ["real", "slice"].iter().zip(&points) {
            let got = cauchy_reconstruct(&exp_fn, radius, &j, x, m)?;
            let want = exp_paravector(x).embed();
            println!("{m},{label},{}", fmt_f64((&got - &want).norm()));
        }
    }
    Ok(())
}

fn threads_from(cli: &Cli) -> Option<usize> {
    cli.threads.or_else(|| {
        std::env::var("CLIFFOSC_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = threads_from(&cli) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::FAILURE;
        }
    }
    let outcome = match &cli.command {
        Command::Superosc(args) => run_experiment(args, SettingKind::Slice),
        Command::Supershift(args) => run_experiment(args, SettingKind::SupershiftSlice),
        Command::Verify { suite } => match suite.parse::<Suite>() {
            Err(e) => Err(e),
            Ok(suite) => {
                let checks = run_suite(suite);
                let mut failed = 0usize;
                for c in &checks {
                    println!(
                        "{} {} (residual {:.3e}, tolerance {:.3e})",
                        if c.passed { "PASS" } else { "FAIL" },
                        c.name,
                        c.residual,
                        c.tolerance
                    );
                    if !c.passed {
                        failed += 1;
                    }
                }
                println!("{} checks, {} failed", checks.len(), failed);
                if failed > 0 {
                    eprintln!("error: verification failed: {failed} checks");
                    return ExitCode::FAILURE;
                }
                Ok(())
            }
        },
        Command::Cauchy { n, radius, ms, r } => run_cauchy(*n, *radius, ms, *r),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
