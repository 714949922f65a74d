//! Runs the `shocks` experiment from a config and lists the files written.
//!
//!     cargo run --example experiment_driver -- /tmp/burgers-out

use std::path::PathBuf;

use burgers_levy::driver::{read_csv, run_experiment, ExperimentConfig, Subcommand};
use burgers_levy::LevyParams;

fn main() -> burgers_levy::Result<()> {
    let out: PathBuf = std::env::args().nth(1).unwrap_or_else(|| "experiment-out".into()).into();
    let cfg = ExperimentConfig {
        params: LevyParams::Stable { alpha: 1.5, beta: 0.0, scale: 1.0 },
        seed: 2,
        ..ExperimentConfig::default()
    };
    let run = run_experiment(&cfg, Subcommand::Shocks, &out)?;
    for f in &run.files {
        println!("{}", f.display());
    }
    let shocks = read_csv(&out.join("shocks.csv"))?;
    println!("{} shocks; header line: {}", shocks.rows.len(), shocks.meta.unwrap_or_default());
    Ok(())
}
