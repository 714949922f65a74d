//! R, S, T and the r_k iteration on one path, then the independence test
//! around T across replicates.
//!
//!     cargo run --release --example regeneration

use burgers_levy::regen::regen_report;
use burgers_levy::{independence_test, sample_path, GridSpec, LevyParams};

fn main() -> burgers_levy::Result<()> {
    let params = LevyParams::Stable { alpha: 1.5, beta: 0.0, scale: 1.0 };
    let grid = GridSpec::symmetric(16.0, 4097)?;
    let path = sample_path(params, grid, 11)?;
    let rep = regen_report(&path, 1.0, 10_000)?;
    println!(
        "R = {:?}, S = {:?}, T = {:?}, S == T: {}, r_k = {:?}",
        rep.r, rep.s, rep.t_first, rep.s_equals_t, rep.rk
    );

    let test = independence_test(params, grid, 1.0, 0.5, 200, 5)?;
    println!(
        "distance correlation {:.3}, p = {:.3}, pearson {:.3?}, {} replicates ({} dropped)\n{}",
        test.dcor,
        test.p_value,
        test.pearson,
        test.replicates.len(),
        test.dropped,
        test.note
    );
    Ok(())
}
