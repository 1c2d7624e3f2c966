use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use oscillab_cli::{exit_code, run, threads_from_env, write_outputs, CliError, Entries, ExperimentConfig, Job};

/// Classify phases, measure decay rates and check bracket conditions.
#[derive(Parser, Debug)]
#[command(name = "oscillab", version)]
struct Cli {
    /// classify | decay | localized | multiplier | brackets | catalog | acceptance
    #[arg(value_enum)]
    job: Option<Job>,
    /// JSON job description; flags given here override its keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Catalog entry, NAME or family:params; repeat for several runs.
    #[arg(long)]
    entry: Vec<String>,
    /// Inline oscillatory phase over x1..xd, z1..zd, e.g. "x1*z1^3/3".
    #[arg(long)]
    phase: Option<String>,
    /// Base point of an inline phase, comma separated rationals.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    point: Option<Vec<String>>,
    #[arg(long)]
    lambda_min: Option<f64>,
    #[arg(long)]
    lambda_max: Option<f64>,
    #[arg(long)]
    lambda_ratio: Option<f64>,
    /// Fixed lambda of a localized run.
    #[arg(long)]
    lambda: Option<f64>,
    /// Localization levels, comma separated.
    #[arg(long, value_delimiter = ',')]
    l: Option<Vec<u32>>,
    #[arg(long)]
    j: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    /// Relative tolerance of each norm estimate.
    #[arg(long)]
    tol: Option<f64>,
    /// Overrides the entry's slope tolerance.
    #[arg(long)]
    slope_tolerance: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Directory for results.csv, summary.csv, config.json and plots.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write one SVG plot per run.
    #[arg(long)]
    svg: bool,
    /// Refuse under-resolved grids instead of flagging them.
    #[arg(long)]
    strict: bool,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
}

fn build_config(cli: Cli) -> Result<ExperimentConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    match (cli.job, cfg.job) {
        (Some(a), Some(b)) if a != b => {
            return Err(CliError::Config(format!("job: subcommand {a} conflicts with the config's {b}")));
        }
        (Some(a), _) => cfg.job = Some(a),
        _ => {}
    }
    match cli.entry.len() {
        0 => {}
        1 => cfg.entry = Some(Entries::One(cli.entry[0].clone())),
        _ => cfg.entry = Some(Entries::Many(cli.entry)),
    }
    macro_rules! over {
        ($($f:ident),*) => { $( if cli.$f.is_some() { cfg.$f = cli.$f; } )* };
    }
    over!(phase, point, lambda_min, lambda_max, lambda_ratio, lambda, l, j, k, slope_tolerance, out, alpha, beta);
    if let Some(t) = cli.tol {
        cfg.tol = t;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    cfg.svg |= cli.svg;
    cfg.strict_resolution |= cli.strict;
    Ok(cfg)
}

fn main_inner() -> Result<i32, CliError> {
    let cli = Cli::parse();
    if let Some(n) = threads_from_env(std::env::var("OSCILLAB_THREADS").ok().as_deref())? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("OSCILLAB_THREADS: {e}")))?;
    }
    let cfg = build_config(cli)?;
    let report = run(&cfg)?;
    print!("{}", report.text);
    if let Some(dir) = &cfg.out {
        write_outputs(&report, dir)?;
    }
    let code = exit_code(&report);
    if !report.outcomes.is_empty() && report.job != Job::Acceptance {
        let s = oscillab::experiments::verdict_report(&report.outcomes);
        println!("status: {}", s.status);
    }
    Ok(code)
}

fn main() -> ExitCode {
    match main_inner() {
        Ok(c) => ExitCode::from(c as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
