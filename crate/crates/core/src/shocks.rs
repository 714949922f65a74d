//! Shock structure of a solved path: shocks and their velocities, the contact
//! set `𝒜`, the zero-velocity set `𝒜₀`, constancy (rarefaction) intervals,
//! sign patterns of `u` between zeros, and jump-sign diagnostics.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::levy::{sample_path, GridSpec, LevyParams};
use crate::seed;
use crate::solver::{solve, BurgersSolution};
use crate::stats;

/// A cluster at Eulerian position `x` made of the particles initially in
/// `[a_minus, a_plus]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Shock {
    pub x: f64,
    pub a_minus: f64,
    pub a_plus: f64,
    pub mass: f64,
    /// `−(ψ₀(a⁺) − ψ₀(a⁻))/(a⁺ − a⁻)`, which also equals `½(u(x−) + u(x))`.
    pub velocity: f64,
    pub boundary_affected: bool,
}

/// A point of the shock structure (a majorant vertex).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Contact {
    pub vertex: usize,
    pub y: f64,
}

/// Eulerian interval on which `a(·)` stays at vertex `y`, clipped to the
/// window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rarefaction {
    pub vertex: usize,
    pub y: f64,
    pub x_lo: f64,
    pub x_hi: f64,
    pub length: f64,
    pub boundary_affected: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShockReport {
    pub shocks: Vec<Shock>,
    pub contacts: Vec<Contact>,
    pub zero_set: Vec<Contact>,
    pub rarefactions: Vec<Rarefaction>,
    pub window: (f64, f64),
}

/// Vertices in `𝒜₀`, tested on slopes: `s_right(k) ≤ −y_k/t ≤ s_left(k)`.
/// The interval is closed, so exact ties belong to the set.
pub fn zero_set_vertices(sol: &BurgersSolution) -> Vec<usize> {
    let cm = &sol.majorant;
    (0..cm.len())
        .filter(|&k| {
            let s = -cm.ys[k] / sol.t;
            cm.right_slope(k) <= s && s <= cm.left_slope(k)
        })
        .collect()
}

/// Whether hull edge `k` is a resolved shock. An edge between neighbouring
/// grid points only moves `a(·)` by one grid step, which is the grid's
/// rendering of a continuous `a`, so it is not reported as a shock.
pub fn is_resolved_shock(sol: &BurgersSolution, k: usize) -> bool {
    sol.vertex_index(k + 1) - sol.vertex_index(k) >= 2
}

/// Shock velocity `−Δψ₀/Δa` across hull edge `k`.
pub fn edge_velocity(sol: &BurgersSolution, k: usize) -> f64 {
    let (i, j) = (sol.vertex_index(k), sol.vertex_index(k + 1));
    let psi = &sol.path.values;
    -(psi[j] - psi[i]) / (sol.vertex_y(k + 1) - sol.vertex_y(k))
}

pub fn extract_shocks(sol: &BurgersSolution) -> ShockReport {
    let m = sol.vertex_count();
    let (w0, w1) = sol.window;

    let shocks = (0..m - 1)
        .filter(|&k| is_resolved_shock(sol, k) && sol.in_window(sol.x_hi[k]))
        .map(|k| {
            let (a_minus, a_plus) = (sol.vertex_y(k), sol.vertex_y(k + 1));
            Shock {
                x: sol.x_hi[k],
                a_minus,
                a_plus,
                mass: a_plus - a_minus,
                velocity: edge_velocity(sol, k),
                boundary_affected: sol.boundary_affected[k] || sol.boundary_affected[k + 1],
            }
        })
        .collect();

    let contact = |k: usize| Contact { vertex: k, y: sol.vertex_y(k) };
    let contacts = (0..m)
        .filter(|&k| sol.in_window(sol.vertex_y(k)))
        .map(contact)
        .collect();
    let zero_set = zero_set_vertices(sol)
        .into_iter()
        .filter(|&k| sol.in_window(sol.vertex_y(k)))
        .map(contact)
        .collect();

    let rarefactions = (0..m)
        .filter_map(|k| {
            let lo = sol.x_lo[k].max(w0);
            let hi = sol.x_hi[k].min(w1);
            (hi > lo).then(|| Rarefaction {
                vertex: k,
                y: sol.vertex_y(k),
                x_lo: lo,
                x_hi: hi,
                length: hi - lo,
                boundary_affected: sol.boundary_affected[k],
            })
        })
        .collect();

    ShockReport { shocks, contacts, zero_set, rarefactions, window: sol.window }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignViolation {
    pub gap_lo: f64,
    pub gap_hi: f64,
    /// Eulerian point where `u > 0` was seen after `u < 0`.
    pub x: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapStat {
    pub lo: f64,
    pub hi: f64,
    pub width: f64,
    pub has_positive_phase: bool,
    pub has_negative_phase: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SignPattern {
    pub violations: Vec<SignViolation>,
    pub gaps: Vec<GapStat>,
}

/// Scans `u` between consecutive zero-set points in the window. Samples are
/// both one-sided values at every shock in the gap plus the midpoint of every
/// piece between shocks; `u` may go from positive to negative but never back
/// without passing through a zero-set point.
pub fn sign_pattern(sol: &BurgersSolution) -> SignPattern {
    let zeros = extract_shocks(sol).zero_set;
    let mut out = SignPattern::default();
    for pair in zeros.windows(2) {
        let (k0, k1) = (pair[0].vertex, pair[1].vertex);
        let (lo, hi) = (pair[0].y, pair[1].y);
        let cuts: Vec<(usize, f64)> = (k0..k1)
            .map(|k| (k, sol.x_hi[k]))
            .filter(|&(_, x)| lo < x && x < hi)
            .collect();

        // Samples in Eulerian order: (x, u).
        let mut samples = Vec::with_capacity(3 * cuts.len() + 1);
        let mut left = lo;
        for &(k, x) in &cuts {
            let mid = 0.5 * (left + x);
            samples.push((mid, (mid - sol.vertex_y(sol.vertex_at(mid))) / sol.t));
            samples.push((x, (x - sol.vertex_y(k)) / sol.t));
            samples.push((x, (x - sol.vertex_y(k + 1)) / sol.t));
            left = x;
        }
        let mid = 0.5 * (left + hi);
        samples.push((mid, (mid - sol.vertex_y(sol.vertex_at(mid))) / sol.t));

        let mut seen_negative = false;
        let mut stat = GapStat {
            lo,
            hi,
            width: hi - lo,
            has_positive_phase: false,
            has_negative_phase: false,
        };
        for &(x, u) in &samples {
            if u > 0.0 {
                stat.has_positive_phase = true;
                if seen_negative {
                    out.violations.push(SignViolation { gap_lo: lo, gap_hi: hi, x });
                }
            } else if u < 0.0 {
                stat.has_negative_phase = true;
                seen_negative = true;
            }
        }
        out.gaps.push(stat);
    }
    out
}

/// Tally of jump-sign agreement at one-sided contact points.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpSignTally {
    pub agreements: usize,
    pub disagreements: usize,
    pub untracked: usize,
}

impl JumpSignTally {
    pub fn agreement_rate(&self) -> f64 {
        let n = self.agreements + self.disagreements;
        if n == 0 {
            f64::NAN
        } else {
            self.agreements as f64 / n as f64
        }
    }
}

/// Checks the sign of the path's jump at contact points whose constancy
/// interval sits on one side of the point: an interval below `y` calls for
/// an upward jump at `y`, an interval above `y` for a downward one.
///
/// "One side" allows one grid step of overlap, since on the grid every
/// constancy interval already spans about `h/2` around smooth contacts. A
/// vertex counts when it is not boundary-affected; the nearest tracked jump
/// within `h` of it decides agreement, and vertices without one are
/// untracked.
pub fn contact_jump_signs(sol: &BurgersSolution) -> JumpSignTally {
    let h = sol.path.step();
    let jumps = &sol.path.tracked_jumps;
    let mut tally = JumpSignTally::default();
    for k in 0..sol.vertex_count() {
        if sol.boundary_affected[k] {
            continue;
        }
        let y = sol.vertex_y(k);
        let (lo, hi) = (sol.x_lo[k], sol.x_hi[k]);
        let expect_up = if hi <= y + h && lo < y - h {
            true
        } else if lo >= y - h && hi > y + h {
            false
        } else {
            continue;
        };
        let g = sol.vertex_index(k);
        let start = jumps.partition_point(|j| j.index + 1 < g);
        let nearest = jumps[start..]
            .iter()
            .take_while(|j| j.index <= g + 1)
            .max_by(|a, b| a.size.abs().total_cmp(&b.size.abs()));
        match nearest {
            None => tally.untracked += 1,
            Some(j) if (j.size > 0.0) == expect_up => tally.agreements += 1,
            Some(_) => tally.disagreements += 1,
        }
    }
    tally
}

/// Windowed statistics of one solution at one resolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowStats {
    pub contacts: usize,
    pub zero_set: usize,
    pub max_rarefaction: f64,
    pub grid_points: usize,
}

impl WindowStats {
    pub fn contact_fraction(&self) -> f64 {
        self.contacts as f64 / self.grid_points as f64
    }
}

/// Counts contacts and zeros with `y` in `[w0, w1]`, the grid points there,
/// and the longest constancy interval clipped to `[w0, w1]`.
pub fn window_stats(sol: &BurgersSolution, window: (f64, f64)) -> WindowStats {
    let (w0, w1) = window;
    let inside = |y: f64| w0 <= y && y <= w1;
    let contacts = sol.majorant.ys.iter().filter(|&&y| inside(y)).count();
    let zero_set = zero_set_vertices(sol)
        .into_iter()
        .filter(|&k| inside(sol.vertex_y(k)))
        .count();
    let max_rarefaction = (0..sol.vertex_count())
        .map(|k| (sol.x_hi[k].min(w1) - sol.x_lo[k].max(w0)).max(0.0))
        .fold(0.0, f64::max);
    let grid_points = sol.path.grid.points().into_iter().filter(|&y| inside(y)).count();
    WindowStats { contacts, zero_set, max_rarefaction, grid_points }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RefinementRow {
    pub h: f64,
    pub median_contacts: f64,
    pub median_zero_set: f64,
    pub median_max_rarefaction: f64,
    pub median_contact_fraction: f64,
    pub replicates: usize,
    pub failed: usize,
}

/// For each step in `h_list`, solves `n_rep` seeded replicates on
/// `[−half_width, half_width]` and reports medians of the windowed statistics.
///
/// Each replicate samples one path at the finest step; coarser steps that
/// are integer multiples of it see that same path subsampled, so the rows
/// follow one path under refinement. Other steps get their own sample.
/// `window` defaults to each solution's analysis window. Replicates whose
/// solve fails are dropped and counted in `failed`.
pub fn refinement_study(
    params: LevyParams,
    t: f64,
    half_width: f64,
    h_list: &[f64],
    n_rep: usize,
    seed: u64,
    window: Option<(f64, f64)>,
) -> Result<Vec<RefinementRow>> {
    params.validate()?;
    if h_list.is_empty() || h_list.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Parameter("h_list must be nonempty and strictly decreasing".into()));
    }
    if n_rep == 0 {
        return Err(Error::Parameter("n_rep must be >= 1".into()));
    }
    let fine = GridSpec::with_step(half_width, h_list[h_list.len() - 1])?;
    let plans = h_list
        .iter()
        .map(|&h| {
            let ratio = h / fine.step();
            let k = ratio.round();
            if (ratio - k).abs() <= 1e-9 * ratio {
                Ok(Resolution::Subsample(k as usize))
            } else {
                GridSpec::with_step(half_width, h).map(Resolution::Fresh)
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let per_rep: Vec<Vec<Option<WindowStats>>> = (0..n_rep)
        .into_par_iter()
        .map(|r| {
            let rs = seed::derive(seed, r as u64);
            let base = sample_path(params, fine, rs).ok();
            plans
                .iter()
                .map(|plan| {
                    let path = match plan {
                        Resolution::Subsample(k) => base.as_ref()?.coarsen(*k).ok()?,
                        Resolution::Fresh(grid) => sample_path(params, *grid, rs).ok()?,
                    };
                    let sol = solve(&path, t).ok()?;
                    Some(window_stats(&sol, window.unwrap_or(sol.window)))
                })
                .collect()
        })
        .collect();

    Ok((0..h_list.len())
        .map(|i| {
            let ok: Vec<WindowStats> = per_rep.iter().filter_map(|row| row[i]).collect();
            let col = |f: &dyn Fn(&WindowStats) -> f64| stats::median(&ok.iter().map(f).collect::<Vec<_>>());
            let h = match plans[i] {
                Resolution::Subsample(k) => fine.step() * k as f64,
                Resolution::Fresh(grid) => grid.step(),
            };
            RefinementRow {
                h,
                median_contacts: col(&|s| s.contacts as f64),
                median_zero_set: col(&|s| s.zero_set as f64),
                median_max_rarefaction: col(&|s| s.max_rarefaction),
                median_contact_fraction: col(&|s| s.contact_fraction()),
                replicates: ok.len(),
                failed: n_rep - ok.len(),
            }
        })
        .collect())
}

enum Resolution {
    Subsample(usize),
    Fresh(GridSpec),
}
