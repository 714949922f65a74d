//! Samples one path per family and prints a few summary numbers.
//!
//!     cargo run --example simulate_path

use burgers_levy::{classify, sample_path, GridSpec, JumpLaw, LevyParams};

fn main() -> burgers_levy::Result<()> {
    let grid = GridSpec::symmetric(8.0, 4097)?;
    let families = [
        LevyParams::Brownian { sigma: 1.0 },
        LevyParams::Stable { alpha: 1.5, beta: 0.0, scale: 1.0 },
        LevyParams::Stable { alpha: 0.75, beta: 0.0, scale: 1.0 },
        LevyParams::Cauchy { scale: 1.0 },
        LevyParams::CompoundPoisson { rate: 2.0, jumps: JumpLaw::Normal { mean: 0.0, std_dev: 1.0 } },
    ];
    for params in families {
        let path = sample_path(params, grid, 42)?;
        let (lo, hi) = path
            .values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        let flags = classify(params);
        println!(
            "{params:?}\n  psi(-8) = {:.3}, psi(8) = {:.3}, range [{lo:.3}, {hi:.3}], {} tracked jumps\n  {flags:?}",
            path.values[0],
            path.values[path.len() - 1],
            path.tracked_jumps.len()
        );
    }
    Ok(())
}
