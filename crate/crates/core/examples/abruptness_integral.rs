//! Monte Carlo estimate of the truncated abruptness integral for an abrupt
//! and an eroded family.
//!
//!     cargo run --release --example abruptness_integral

use burgers_levy::{abruptness_integral_estimate, LevyParams};

fn main() -> burgers_levy::Result<()> {
    let eps = [1e-1, 1e-2, 1e-3];
    for params in [
        LevyParams::Stable { alpha: 1.5, beta: 0.0, scale: 1.0 },
        LevyParams::Cauchy { scale: 1.0 },
    ] {
        let rows = abruptness_integral_estimate(params, -1.0, 1.0, &eps, 10_000, 9)?;
        println!("{params:?}");
        for r in rows {
            println!("  eps = {:e}  I = {:.4}", r.eps, r.estimate);
        }
    }
    Ok(())
}
