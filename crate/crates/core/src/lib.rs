//! Exact entropy solutions of the inviscid Burgers equation started from
//! Lévy noise.
//!
//! The initial potential `ψ₀` is a two-sided Lévy path sampled on a uniform
//! grid ([`levy`]). For a time `t > 0` the Hopf-Cole solution is read off the
//! upper concave majorant ([`hull`]) of `y ↦ ψ₀(y) − y²/(2t)`: its vertices
//! are the shock structure, its edges are the shocks, and the slope interval
//! around each vertex is the Eulerian interval where `a(·, t)` sits on that
//! vertex ([`solver`]). [`shocks`] and [`regen`] turn solutions into reports
//! about shocks, zero-velocity points and the regeneration constructions;
//! [`driver`] runs reproducible experiments and writes CSV/JSON.

pub mod driver;
pub mod error;
pub mod fixtures;
pub mod hull;
pub mod levy;
pub mod regen;
pub mod seed;
pub mod shocks;
pub mod solver;
pub mod stats;

pub use error::{Error, Result};
pub use hull::{upper_concave_majorant, ConcaveMajorant, HullQuery};
pub use levy::{
    abruptness_integral_estimate, classify, sample_path, stable_increment, AssumptionB, GridSpec,
    JumpLaw, LevyParams, LevyPath, PropertyFlags,
};
pub use regen::{independence_test, rk_sequence, rst_scan, RegenReport};
pub use shocks::{
    contact_jump_signs, extract_shocks, refinement_study, sign_pattern, Shock, ShockReport,
};
pub use solver::{solve, solve_naive, solve_on_grid, BurgersSolution, Evaluation};
