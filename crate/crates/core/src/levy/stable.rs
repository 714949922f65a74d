//! Chambers–Mallows–Stuck sampling of stable increments.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use rand_distr::{Distribution, Exp1};

use crate::error::{Error, Result};

pub(crate) fn check_stable(alpha: f64, beta: f64, scale: f64) -> Result<()> {
    if !(alpha > 0.5 && alpha <= 2.0) {
        return Err(Error::Parameter(format!(
            "stability index alpha = {alpha} must lie in (1/2, 2]"
        )));
    }
    if !(-1.0..=1.0).contains(&beta) {
        return Err(Error::Parameter(format!(
            "skewness beta = {beta} must lie in [-1, 1]"
        )));
    }
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::Parameter(format!("scale c = {scale} must be > 0")));
    }
    Ok(())
}

/// Scale of a step-`h` increment of a stable process with unit-time scale
/// `c`: `c·h^{1/α}`.
pub fn step_scale(alpha: f64, scale: f64, h: f64) -> f64 {
    scale * h.powf(1.0 / alpha)
}

/// One increment over a step of length `h` of a strictly stable process
/// with index `alpha`, skewness `beta` and unit-time scale `scale`.
///
/// The draw is `S(α, β, c·h^{1/α}, 0)` in the 1-parametrization, so `α = 2`
/// gives `Normal(0, 2c²h)` and `α = 1, β = 0` gives `Cauchy(0, c·h)`.
pub fn stable_increment<R: Rng + ?Sized>(
    alpha: f64,
    beta: f64,
    scale: f64,
    h: f64,
    rng: &mut R,
) -> Result<f64> {
    check_stable(alpha, beta, scale)?;
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Parameter(format!("step h = {h} must be > 0")));
    }
    let gamma = step_scale(alpha, scale, h);
    Ok(sample_standard(alpha, beta, rng, gamma))
}

/// Draw from `S(α, β, γ, 0)`; parameters are assumed already validated.
pub(crate) fn sample_standard<R: Rng + ?Sized>(alpha: f64, beta: f64, rng: &mut R, gamma: f64) -> f64 {
    // V ~ U(−π/2, π/2) with the endpoints excluded, W ~ Exp(1) with W > 0.
    let v = loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            break PI * (u - 0.5);
        }
    };
    let w = loop {
        let w: f64 = Exp1.sample(rng);
        if w > 0.0 {
            break w;
        }
    };

    if alpha == 1.0 {
        let bv = FRAC_PI_2 + beta * v;
        let x = (bv * v.tan() - beta * ((FRAC_PI_2 * w * v.cos()) / bv).ln()) / FRAC_PI_2;
        gamma * x + beta * gamma * gamma.ln() / FRAC_PI_2
    } else {
        let zeta = beta * (PI * alpha / 2.0).tan();
        let b = zeta.atan() / alpha;
        let s = (1.0 + zeta * zeta).powf(1.0 / (2.0 * alpha));
        let x = s * (alpha * (v + b)).sin() / v.cos().powf(1.0 / alpha)
            * ((v - alpha * (v + b)).cos() / w).powf((1.0 - alpha) / alpha);
        gamma * x
    }
}
