//! Two-sided Lévy potential paths on a uniform grid, and the family-level
//! classification used to decide which shock-structure results apply.

mod stable;

use rand::Rng;
use rand_distr::{Distribution, Normal, Poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed;

pub use stable::{stable_increment, step_scale};

/// Increments larger than this many step scales are recorded as jumps.
pub const JUMP_THRESHOLD_SCALES: f64 = 6.0;

/// Quadrature density of [`abruptness_integral_estimate`] in `log10 x`.
pub const NODES_PER_DECADE: usize = 40;

/// Uniform grid `y_i = (i − i₀)·h` on `[x_min, x_max]`, with `y_{i₀} = 0`
/// exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        let g = GridSpec { x_min, x_max, n };
        g.validate()?;
        Ok(g)
    }

    /// `[−half_width, half_width]` with `n` points (`n` odd puts 0 on the grid).
    pub fn symmetric(half_width: f64, n: usize) -> Result<Self> {
        Self::new(-half_width, half_width, n)
    }

    /// `[−half_width, half_width]` with step as close to `h` as the width allows.
    pub fn with_step(half_width: f64, h: f64) -> Result<Self> {
        if !(h > 0.0 && half_width > 0.0) {
            return Err(Error::Grid(format!(
                "need h > 0 and half-width > 0, got h = {h}, L = {half_width}"
            )));
        }
        let half = (half_width / h).round() as usize;
        Self::symmetric(half_width, 2 * half + 1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::Grid(format!("need n >= 3 grid points, got {}", self.n)));
        }
        if !(self.x_min < 0.0 && 0.0 < self.x_max) || !self.x_min.is_finite() || !self.x_max.is_finite() {
            return Err(Error::Grid(format!(
                "need x_min < 0 < x_max, got [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        let h = self.step();
        let k = -self.x_min / h;
        if (k - k.round()).abs() > 1e-6 {
            return Err(Error::Grid(format!(
                "0 is not a grid point of [{}, {}] with n = {}",
                self.x_min, self.x_max, self.n
            )));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n - 1) as f64
    }

    pub fn zero_index(&self) -> usize {
        (-self.x_min / self.step()).round() as usize
    }

    pub fn point(&self, i: usize) -> f64 {
        (i as f64 - self.zero_index() as f64) * self.step()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.point(i)).collect()
    }

    /// Index of the grid point nearest to `y`, clamped to the grid.
    pub fn nearest_index(&self, y: f64) -> usize {
        let k = (y / self.step()).round() + self.zero_index() as f64;
        k.clamp(0.0, (self.n - 1) as f64) as usize
    }

    pub fn first(&self) -> f64 {
        self.point(0)
    }

    pub fn last(&self) -> f64 {
        self.point(self.n - 1)
    }
}

/// Jump-size law of a compound Poisson potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum JumpLaw {
    Normal { mean: f64, std_dev: f64 },
    Constant { size: f64 },
}

impl JumpLaw {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            JumpLaw::Normal { mean, std_dev } => {
                Normal::new(mean, std_dev).expect("validated").sample(rng)
            }
            JumpLaw::Constant { size } => size,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            JumpLaw::Normal { mean, std_dev } if mean.is_finite() && std_dev >= 0.0 && std_dev.is_finite() => Ok(()),
            JumpLaw::Constant { size } if size.is_finite() => Ok(()),
            other => Err(Error::Parameter(format!("invalid jump law {other:?}"))),
        }
    }
}

/// Lévy family of the potential. The drift coefficient is always zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum LevyParams {
    Brownian { sigma: f64 },
    Stable { alpha: f64, beta: f64, scale: f64 },
    Cauchy { scale: f64 },
    CompoundPoisson { rate: f64, jumps: JumpLaw },
}

impl LevyParams {
    pub fn validate(&self) -> Result<()> {
        match *self {
            LevyParams::Brownian { sigma } => {
                if sigma >= 0.0 && sigma.is_finite() {
                    Ok(())
                } else {
                    Err(Error::Parameter(format!("sigma = {sigma} must be >= 0")))
                }
            }
            LevyParams::Stable { alpha, beta, scale } => stable::check_stable(alpha, beta, scale),
            LevyParams::Cauchy { scale } => stable::check_stable(1.0, 0.0, scale),
            LevyParams::CompoundPoisson { rate, jumps } => {
                if !(rate > 0.0 && rate.is_finite()) {
                    return Err(Error::Parameter(format!("rate = {rate} must be > 0")));
                }
                jumps.validate()
            }
        }
    }

    /// Stable parameters `(α, β, c)` for the stable families.
    fn stable_parts(&self) -> Option<(f64, f64, f64)> {
        match *self {
            LevyParams::Stable { alpha, beta, scale } => Some((alpha, beta, scale)),
            LevyParams::Cauchy { scale } => Some((1.0, 0.0, scale)),
            _ => None,
        }
    }

    /// One draw of `ψ₀(x)` for `x > 0`. Jumps (if any) are returned through
    /// the second component as the summed compound-Poisson jumps, or the
    /// increment itself when it exceeds the stable jump threshold.
    fn increment<R: Rng + ?Sized>(&self, x: f64, rng: &mut R) -> (f64, Option<f64>) {
        match *self {
            LevyParams::Brownian { sigma } => {
                if sigma == 0.0 {
                    (0.0, None)
                } else {
                    let z: f64 = rng.sample(rand_distr::StandardNormal);
                    (sigma * x.sqrt() * z, None)
                }
            }
            LevyParams::Stable { .. } | LevyParams::Cauchy { .. } => {
                let (alpha, beta, scale) = self.stable_parts().expect("stable family");
                let gamma = step_scale(alpha, scale, x);
                let dx = stable::sample_standard(alpha, beta, rng, gamma);
                let tagged = (dx.abs() > JUMP_THRESHOLD_SCALES * gamma).then_some(dx);
                (dx, tagged)
            }
            LevyParams::CompoundPoisson { rate, jumps } => {
                let count = Poisson::new(rate * x).expect("validated").sample(rng) as u64;
                if count == 0 {
                    return (0.0, None);
                }
                let sum: f64 = (0..count).map(|_| jumps.sample(rng)).sum();
                (sum, (sum != 0.0).then_some(sum))
            }
        }
    }
}

/// Where a path came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: Option<u64>,
    pub source: String,
}

/// A grid jump: `ψ₀(y_index) − ψ₀(y_{index−1}) = size`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrackedJump {
    pub index: usize,
    pub size: f64,
}

/// A discretized two-sided càdlàg potential with `ψ₀(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevyPath {
    pub grid: GridSpec,
    pub values: Vec<f64>,
    pub tracked_jumps: Vec<TrackedJump>,
    pub params: Option<LevyParams>,
    pub provenance: Provenance,
}

impl LevyPath {
    /// Wraps explicit grid values (fixtures, files). Checks length, finiteness
    /// and jump indices. `ψ₀(0)` may be any constant here: the solution only
    /// sees the potential up to an additive constant, and the closed-form
    /// step fixtures are stated with `ψ₀(0) ≠ 0`.
    pub fn from_values(
        grid: GridSpec,
        values: Vec<f64>,
        tracked_jumps: Vec<TrackedJump>,
        source: impl Into<String>,
    ) -> Result<Self> {
        grid.validate()?;
        if values.len() != grid.n {
            return Err(Error::Input(format!(
                "expected {} values, got {}",
                grid.n,
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Input("path values must be finite".into()));
        }
        for j in &tracked_jumps {
            if j.index == 0 || j.index >= grid.n || j.size == 0.0 {
                return Err(Error::Input(format!("invalid tracked jump {j:?}")));
            }
        }
        Ok(LevyPath {
            grid,
            values,
            tracked_jumps,
            params: None,
            provenance: Provenance { seed: None, source: source.into() },
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.grid.step()
    }

    pub fn y(&self, i: usize) -> f64 {
        self.grid.point(i)
    }

    /// Every `k`-th grid point counted from 0, which is the same path seen on
    /// a grid `k` times coarser. A tracked jump moves to the coarse cell
    /// containing it; when several land in one cell the largest is kept.
    pub fn coarsen(&self, k: usize) -> Result<LevyPath> {
        if k == 0 {
            return Err(Error::Parameter("coarsening factor must be >= 1".into()));
        }
        let zi = self.grid.zero_index();
        let left = zi / k;
        let right = (self.len() - 1 - zi) / k;
        let h = self.step() * k as f64;
        let grid = GridSpec::new(-(left as f64) * h, right as f64 * h, left + right + 1)?;
        let values = (0..grid.n).map(|j| self.values[zi + j * k - left * k]).collect();
        let mut jumps: Vec<TrackedJump> = Vec::new();
        for jump in &self.tracked_jumps {
            let offset = jump.index as i64 - zi as i64;
            let cell = offset.div_euclid(k as i64) + i64::from(offset.rem_euclid(k as i64) != 0);
            let index = cell + left as i64;
            if index < 1 || index >= grid.n as i64 {
                continue;
            }
            let index = index as usize;
            match jumps.last_mut() {
                Some(last) if last.index == index => {
                    if jump.size.abs() > last.size.abs() {
                        last.size = jump.size;
                    }
                }
                _ => jumps.push(TrackedJump { index, size: jump.size }),
            }
        }
        Ok(LevyPath {
            grid,
            values,
            tracked_jumps: jumps,
            params: self.params,
            provenance: self.provenance.clone(),
        })
    }

    /// Grid increments `ψ₀(y_i) − ψ₀(y_{i−1})`, `i = 1..n`.
    pub fn increments(&self) -> Vec<f64> {
        self.values.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// Samples a two-sided path. The right half and the left half come from
/// independent streams derived from `seed`; the left half is accumulated
/// away from 0 so every grid increment `ψ₀(y_i) − ψ₀(y_{i−1})` has the
/// step-`h` law of the family.
pub fn sample_path(params: LevyParams, grid: GridSpec, seed: u64) -> Result<LevyPath> {
    params.validate()?;
    grid.validate()?;
    let n = grid.n;
    let h = grid.step();
    let zi = grid.zero_index();
    let mut values = vec![0.0; n];
    let mut jumps = Vec::new();

    let mut right = seed::rng_for(seed, 0);
    for i in zi + 1..n {
        let (dx, tag) = params.increment(h, &mut right);
        values[i] = values[i - 1] + dx;
        if let Some(size) = tag {
            jumps.push(TrackedJump { index: i, size });
        }
    }

    let mut left = seed::rng_for(seed, 1);
    for i in (0..zi).rev() {
        let (dx, tag) = params.increment(h, &mut left);
        values[i] = values[i + 1] - dx;
        if let Some(size) = tag {
            jumps.push(TrackedJump { index: i + 1, size });
        }
    }
    jumps.sort_by_key(|j| j.index);

    Ok(LevyPath {
        grid,
        values,
        tracked_jumps: jumps,
        params: Some(params),
        provenance: Provenance {
            seed: Some(seed),
            source: "sample_path".into(),
        },
    })
}

/// Whether Assumption B (overshoots across parabolic boundaries) applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssumptionB {
    Assumed,
    NotApplicable,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyFlags {
    pub bounded_variation: bool,
    pub abrupt: bool,
    pub eroded: bool,
    pub hyp_a: bool,
    pub hyp_b: bool,
    pub assumption_b: AssumptionB,
}

/// Family-level lookup of path properties. No numerics are involved.
pub fn classify(params: LevyParams) -> PropertyFlags {
    let unbounded = |abrupt: bool| PropertyFlags {
        bounded_variation: false,
        abrupt,
        eroded: !abrupt,
        hyp_a: true,
        hyp_b: true,
        assumption_b: AssumptionB::NotApplicable,
    };
    match params {
        LevyParams::Brownian { sigma } if sigma > 0.0 => unbounded(true),
        // ψ₀ ≡ 0: a constant path, of bounded variation with no jumps.
        LevyParams::Brownian { .. } => PropertyFlags {
            bounded_variation: true,
            abrupt: false,
            eroded: false,
            hyp_a: true,
            hyp_b: false,
            assumption_b: AssumptionB::Unknown,
        },
        LevyParams::Cauchy { .. } => unbounded(false),
        // α = 1 with β ≠ 0 carries a logarithmic drift, which makes the
        // abruptness integral converge.
        LevyParams::Stable { alpha: 1.0, beta, .. } => unbounded(beta != 0.0),
        LevyParams::Stable { alpha, .. } if alpha > 1.0 => unbounded(true),
        LevyParams::Stable { beta, .. } => PropertyFlags {
            bounded_variation: true,
            abrupt: false,
            eroded: false,
            hyp_a: true,
            // A one-sided (|β| = 1) process below α = 1 is monotone.
            hyp_b: beta.abs() < 1.0,
            assumption_b: AssumptionB::Assumed,
        },
        LevyParams::CompoundPoisson { .. } => PropertyFlags {
            bounded_variation: true,
            abrupt: false,
            eroded: false,
            hyp_a: true,
            hyp_b: false,
            assumption_b: AssumptionB::Unknown,
        },
    }
}

/// One row of the abruptness diagnostic: `Î(ε) ≈ ∫_ε^1 x⁻¹ P{ψ₀(x) ∈ [ax, bx]} dx`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralRow {
    pub eps: f64,
    pub estimate: f64,
}

/// Monte Carlo estimate of the abruptness integral, truncated at each `ε`.
///
/// Nodes are log-spaced, [`NODES_PER_DECADE`] per decade, from `x = 1` down to
/// the smallest `ε`; at each node `P{ψ₀(x) ∈ [ax, bx]}` is estimated from
/// `n_mc` independent draws of `ψ₀(x)`, and the integral is the trapezoid
/// rule in `ln x`. All rows share the same nodes, so differences between rows
/// carry only the Monte Carlo error of the extra nodes.
pub fn abruptness_integral_estimate(
    params: LevyParams,
    a: f64,
    b: f64,
    eps_list: &[f64],
    n_mc: usize,
    seed: u64,
) -> Result<Vec<IntegralRow>> {
    params.validate()?;
    if a > b || !a.is_finite() || !b.is_finite() {
        return Err(Error::Parameter(format!("need a <= b, got [{a}, {b}]")));
    }
    if eps_list.is_empty() {
        return Err(Error::Parameter("eps_list is empty".into()));
    }
    if eps_list.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
        return Err(Error::Parameter(
            "every eps must lie in (0, 1); eps >= 1 leaves no quadrature range".into(),
        ));
    }
    if eps_list.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Parameter("eps_list must be strictly decreasing".into()));
    }
    if n_mc < 1000 {
        return Err(Error::Parameter(format!("n_mc = {n_mc} must be >= 1000")));
    }
    if a == b {
        return Ok(eps_list.iter().map(|&eps| IntegralRow { eps, estimate: 0.0 }).collect());
    }

    let eps_min = *eps_list.last().expect("nonempty");
    let decades = -eps_min.log10();
    let n_nodes = (decades * NODES_PER_DECADE as f64).ceil() as usize + 1;
    let dlog = std::f64::consts::LN_10 / NODES_PER_DECADE as f64;
    // Node j sits at x_j = 10^{−j/NODES_PER_DECADE}.
    let probs: Vec<f64> = (0..n_nodes)
        .into_par_iter()
        .map(|j| {
            let x = (-(j as f64) * dlog).exp();
            let mut rng = seed::rng_for(seed, j as u64);
            let (lo, hi) = (a * x, b * x);
            let hits = (0..n_mc)
                .filter(|_| {
                    let (v, _) = params.increment(x, &mut rng);
                    lo <= v && v <= hi
                })
                .count();
            hits as f64 / n_mc as f64
        })
        .collect();

    Ok(eps_list
        .iter()
        .map(|&eps| {
            // Integrate in s = −ln x over [0, −ln ε].
            let s_end = -eps.ln();
            let mut total = 0.0;
            for j in 0..n_nodes - 1 {
                let s0 = j as f64 * dlog;
                if s0 >= s_end {
                    break;
                }
                let s1 = ((j + 1) as f64 * dlog).min(s_end);
                let frac = (s1 - s0) / dlog;
                let p1 = probs[j] + frac * (probs[j + 1] - probs[j]);
                total += 0.5 * (probs[j] + p1) * (s1 - s0);
            }
            IntegralRow { eps, estimate: total }
        })
        .collect())
}
