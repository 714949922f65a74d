//! Solves Burgers from a Brownian potential and compares the hull solution
//! with the brute-force argmax at a handful of points.
//!
//!     cargo run --example solve_burgers

use burgers_levy::{sample_path, solve, solve_naive, GridSpec, LevyParams};

fn main() -> burgers_levy::Result<()> {
    let path = sample_path(LevyParams::Brownian { sigma: 1.0 }, GridSpec::symmetric(8.0, 4097)?, 7)?;
    let t = 1.0;
    let sol = solve(&path, t)?;
    println!(
        "{} majorant vertices out of {} grid points; analysis window {:?}",
        sol.vertex_count(),
        path.len(),
        sol.window
    );
    let xs = [-3.0, -1.5, -0.25, 0.0, 0.8, 2.2, 3.9];
    let naive = solve_naive(&path, t, &xs)?;
    println!("{:>7} {:>9} {:>9} {:>9}", "x", "a(x)", "u(x)", "naive a");
    for (&x, i) in xs.iter().zip(naive) {
        let e = sol.evaluate(x)?;
        println!("{x:>7.3} {:>9.4} {:>9.4} {:>9.4}", e.a, e.u, path.y(i));
    }
    Ok(())
}
