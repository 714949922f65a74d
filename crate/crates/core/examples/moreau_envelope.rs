//! The solution read as a proximal map: Moreau envelope, prox and its
//! fixed points, and the Lagrangian position of a particle.
//!
//!     cargo run --example moreau_envelope

use burgers_levy::shocks::zero_set_vertices;
use burgers_levy::{fixtures, solve};

fn main() -> burgers_levy::Result<()> {
    let path = fixtures::jump_down(0.5, 0.0, 4.0, 801)?;
    let sol = solve(&path, 1.0)?;
    for x in [-2.0, -0.5, 0.5, 0.99, 1.0, 2.0] {
        println!(
            "x = {x:5.2}  M(x) = {:8.4}  prox(x) = {:6.3}",
            sol.moreau_envelope(x)?,
            sol.prox(x)?
        );
    }
    for a in [0.5, 2.0] {
        println!("particle from {a} sits at x = {:.3}", sol.lagrangian_position(a)?);
    }
    let fixed = sol.prox_fixed_points();
    println!(
        "{} prox fixed points, identical to the zero set: {}",
        fixed.len(),
        fixed == zero_set_vertices(&sol)
    );
    Ok(())
}
