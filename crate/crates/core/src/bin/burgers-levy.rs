use std::path::PathBuf;
use std::process::ExitCode;

use burgers_levy::driver::{params_from_flags, run_experiment, ExperimentConfig, Subcommand};
use burgers_levy::Result;
use clap::Parser;

/// Exact Burgers solutions from Lévy initial potentials.
#[derive(Debug, Parser)]
#[command(name = "burgers-levy", version)]
struct Cli {
    /// simulate | solve | shocks | regen | refine | integral
    command: Subcommand,
    /// JSON experiment config; flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
    /// Replicate count (`n_rep`).
    #[arg(long)]
    reps: Option<usize>,
    /// brownian | stable | cauchy | compound_poisson
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    scale: Option<f64>,
    /// Domain half-width.
    #[arg(long = "L")]
    half_width: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t: Option<f64>,
    /// Input path CSV (`y,psi`) used instead of sampling.
    #[arg(long)]
    path: Option<PathBuf>,
    /// Tracked-jump CSV (`index,y,size`) for `--path`.
    #[arg(long)]
    jumps: Option<PathBuf>,
}

fn resolve(cli: &Cli) -> Result<ExperimentConfig> {
    let mut cfg = match &cli.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    cfg.params = params_from_flags(cli.family.as_deref(), cfg.params, cli.alpha, cli.beta, cli.sigma, cli.scale)?;
    if let Some(v) = cli.seed {
        cfg.seed = v;
    }
    if let Some(v) = cli.reps {
        cfg.n_rep = v;
    }
    if let Some(v) = cli.half_width {
        cfg.half_width = v;
    }
    if let Some(v) = cli.n {
        cfg.n = v;
        cfg.h = None;
    }
    if let Some(v) = cli.t {
        cfg.t = v;
    }
    if cli.path.is_some() {
        cfg.path_csv = cli.path.clone();
        cfg.jumps_csv = cli.jumps.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match resolve(&cli).and_then(|cfg| run_experiment(&cfg, cli.command, &cli.out_dir)) {
        Ok(out) => {
            for f in out.files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
