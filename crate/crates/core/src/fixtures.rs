//! Deterministic potentials with hand-computable solutions.
//!
//! The same paths ship as CSV files under `fixtures/` in the crate root.

use crate::error::{Error, Result};
use crate::levy::{GridSpec, LevyPath, TrackedJump};

/// `ψ₀ ≡ 0` on `[−half_width, half_width]`.
pub fn zero(half_width: f64, n: usize) -> Result<LevyPath> {
    let grid = GridSpec::symmetric(half_width, n)?;
    LevyPath::from_values(grid, vec![0.0; n], vec![], "fixture:zero")
}

fn step(delta: f64, at: f64, half_width: f64, n: usize, source: &str) -> Result<LevyPath> {
    let grid = GridSpec::symmetric(half_width, n)?;
    let j = grid.nearest_index(at);
    if (grid.point(j) - at).abs() > 1e-9 * grid.step() || j == 0 {
        return Err(Error::Input(format!(
            "step location {at} is not an interior grid point"
        )));
    }
    let values = (0..n).map(|i| if i >= j { delta } else { 0.0 }).collect();
    let jumps = if delta != 0.0 {
        vec![TrackedJump { index: j, size: delta }]
    } else {
        vec![]
    };
    LevyPath::from_values(grid, values, jumps, source)
}

/// `ψ₀(y) = δ·1{y ≥ at}`.
pub fn jump_up(delta: f64, at: f64, half_width: f64, n: usize) -> Result<LevyPath> {
    step(delta.abs(), at, half_width, n, "fixture:jump_up")
}

/// `ψ₀(y) = −δ·1{y ≥ at}`.
pub fn jump_down(delta: f64, at: f64, half_width: f64, n: usize) -> Result<LevyPath> {
    step(-delta.abs(), at, half_width, n, "fixture:jump_down")
}
