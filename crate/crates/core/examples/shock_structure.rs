//! Shocks, zero-velocity points and the sign pattern of u for a stable
//! α = 0.75 potential, plus the closed-form step fixture.
//!
//!     cargo run --example shock_structure

use burgers_levy::{
    contact_jump_signs, extract_shocks, fixtures, sample_path, sign_pattern, solve, GridSpec,
    LevyParams,
};

fn main() -> burgers_levy::Result<()> {
    let step = fixtures::jump_up(0.5, 0.0, 4.0, 801)?;
    let report = extract_shocks(&solve(&step, 1.0)?);
    println!("step potential 0.5*1{{y >= 0}}: {:?}", report.shocks);

    let params = LevyParams::Stable { alpha: 0.75, beta: 0.0, scale: 1.0 };
    let path = sample_path(params, GridSpec::symmetric(8.0, 4097)?, 3)?;
    let sol = solve(&path, 1.0)?;
    let report = extract_shocks(&sol);
    println!(
        "stable 0.75: {} shocks, {} contacts, {} zero-velocity points in {:?}",
        report.shocks.len(),
        report.contacts.len(),
        report.zero_set.len(),
        report.window
    );
    for s in report.shocks.iter().filter(|s| !s.boundary_affected).take(5) {
        println!(
            "  x = {:7.3}  [{:7.3}, {:7.3}]  mass {:.3}  velocity {:7.3}",
            s.x, s.a_minus, s.a_plus, s.mass, s.velocity
        );
    }
    let pattern = sign_pattern(&sol);
    println!(
        "sign pattern: {} gaps, {} violations of positive-then-negative",
        pattern.gaps.len(),
        pattern.violations.len()
    );
    let tally = contact_jump_signs(&sol);
    println!("jump signs at one-sided contacts: {tally:?} (rate {:.2})", tally.agreement_rate());
    Ok(())
}
