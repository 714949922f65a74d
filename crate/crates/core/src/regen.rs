//! Constructions around the first non-negative zero-velocity point `T`,
//! and a statistical check that the solution regenerates there.
//!
//! With `q(x) = x²/(2t)`, on the grid:
//!
//! * `R` is the first `y ≥ 0` with `ψ₀(y − x) − ψ₀(y) ≤ q(x)` for every
//!   `x > 0`,
//! * `S` is the first `y ≥ R` with `ψ₀(y + x) − ψ₀(y) < q(x)` for every
//!   `x > 0`,
//! * `T` is the first non-negative element of the zero set, read off the
//!   majorant.
//!
//! `0 ≤ R ≤ S ≤ T`, and `S = T` holds for every path. Starting from `r₀ = R`,
//! `r_{k+1} = r_k + argsup_{x ≥ 0} {ψ₀(r_k + x) − q(x)}` (largest maximizer)
//! climbs to `T` and stops there.

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::levy::{sample_path, GridSpec, LevyParams, LevyPath};
use crate::seed;
use crate::shocks::{is_resolved_shock, zero_set_vertices};
use crate::solver::{solve, solve_on_grid, BurgersSolution};
use crate::stats;

/// Number of permutations in [`independence_test`].
pub const PERMUTATIONS: usize = 999;

/// Largest fraction of replicates that may be dropped before the test
/// refuses to report.
pub const MAX_DROPPED_FRACTION: f64 = 0.2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegenReport {
    pub r: Option<f64>,
    pub s: Option<f64>,
    pub t_first: Option<f64>,
    pub r_index: Option<usize>,
    pub s_index: Option<usize>,
    pub t_index: Option<usize>,
    pub rk: Vec<f64>,
    pub rk_indices: Vec<usize>,
    pub s_equals_t: bool,
    pub rk_converged: bool,
    pub steps: usize,
}

fn parabola(d: f64, t: f64) -> f64 {
    d * d / (2.0 * t)
}

fn check_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("time t = {t} must be > 0")))
    }
}

/// First grid index `i ≥ i₀` (the index of 0) whose past stays under the
/// closed parabola bound.
fn scan_r(path: &LevyPath, t: f64) -> Option<usize> {
    let v = &path.values;
    (path.grid.zero_index()..path.len()).find(|&i| {
        let yi = path.y(i);
        (0..i).rev().all(|j| v[j] - v[i] <= parabola(yi - path.y(j), t))
    })
}

/// First grid index `i ≥ from` whose future stays strictly under the
/// parabola bound.
fn scan_s(path: &LevyPath, t: f64, from: usize) -> Option<usize> {
    let v = &path.values;
    (from..path.len()).find(|&i| {
        let yi = path.y(i);
        (i + 1..path.len()).all(|j| v[j] - v[i] < parabola(path.y(j) - yi, t))
    })
}

/// Grid index of the first non-negative zero-set element.
pub fn first_nonnegative_zero(sol: &BurgersSolution) -> Option<usize> {
    zero_set_vertices(sol)
        .into_iter()
        .map(|k| sol.vertex_index(k))
        .find(|&i| sol.path.y(i) >= 0.0)
}

/// Direct `O(n²)` scan for `R`, `S` and the first non-negative zero `T`, all
/// on the grid path itself (no analysis window is imposed).
/// Quantities that do not exist on the grid are reported as `None`.
pub fn rst_scan(path: &LevyPath, t: f64) -> Result<RegenReport> {
    check_time(t)?;
    let sol = solve_on_grid(path, t)?;
    Ok(rst_from(path, &sol))
}

fn rst_from(path: &LevyPath, sol: &BurgersSolution) -> RegenReport {
    let t = sol.t;
    let r_index = scan_r(path, t);
    let s_index = r_index.and_then(|r| scan_s(path, t, r));
    let t_index = first_nonnegative_zero(sol);
    RegenReport {
        r: r_index.map(|i| path.y(i)),
        s: s_index.map(|i| path.y(i)),
        t_first: t_index.map(|i| path.y(i)),
        r_index,
        s_index,
        t_index,
        rk: vec![],
        rk_indices: vec![],
        s_equals_t: s_index.is_some() && s_index == t_index,
        rk_converged: false,
        steps: 0,
    }
}

/// Result of iterating the forward argsup map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RkSequence {
    pub values: Vec<f64>,
    pub indices: Vec<usize>,
    pub converged: bool,
}

fn forward_argsup(path: &LevyPath, t: f64, i: usize) -> usize {
    let yi = path.y(i);
    let mut best = f64::NEG_INFINITY;
    let mut arg = i;
    for (j, &vj) in path.values.iter().enumerate().skip(i) {
        let val = vj - parabola(path.y(j) - yi, t);
        if val >= best {
            best = val;
            arg = j;
        }
    }
    arg
}

/// `r₀ = R, r₁, …` until `r_{k+1} = r_k` or `k_max` steps. The fixed point is
/// not repeated in the output.
pub fn rk_sequence(path: &LevyPath, t: f64, k_max: usize) -> Result<RkSequence> {
    check_time(t)?;
    if k_max == 0 {
        return Err(Error::Parameter("k_max must be >= 1".into()));
    }
    let Some(r0) = scan_r(path, t) else {
        return Ok(RkSequence { values: vec![], indices: vec![], converged: false });
    };
    Ok(iterate_from(path, t, r0, k_max))
}

fn iterate_from(path: &LevyPath, t: f64, r0: usize, k_max: usize) -> RkSequence {
    let mut indices = vec![r0];
    let mut converged = false;
    for _ in 0..k_max {
        let cur = *indices.last().expect("nonempty");
        let next = forward_argsup(path, t, cur);
        if next == cur {
            converged = true;
            break;
        }
        indices.push(next);
    }
    RkSequence {
        values: indices.iter().map(|&i| path.y(i)).collect(),
        indices,
        converged,
    }
}

/// `rst_scan` plus the `r_k` iteration from `R`.
pub fn regen_report(path: &LevyPath, t: f64, k_max: usize) -> Result<RegenReport> {
    check_time(t)?;
    if k_max == 0 {
        return Err(Error::Parameter("k_max must be >= 1".into()));
    }
    let sol = solve_on_grid(path, t)?;
    let mut report = rst_from(path, &sol);
    if let Some(r0) = report.r_index {
        let seq = iterate_from(path, t, r0, k_max);
        report.steps = seq.indices.len() - 1;
        report.rk_converged = seq.converged;
        report.rk = seq.values;
        report.rk_indices = seq.indices;
    }
    Ok(report)
}

/// Local features of `u` on one side of `T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SideFeatures {
    pub mean_u: f64,
    pub min_u: f64,
    pub shocks: f64,
}

impl SideFeatures {
    pub fn as_array(&self) -> [f64; 3] {
        [self.mean_u, self.min_u, self.shocks]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReplicateRow {
    pub replicate: usize,
    pub t_first: f64,
    pub pre: SideFeatures,
    pub post: SideFeatures,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub p_value: f64,
    pub dcor: f64,
    /// Pearson correlation of each pre feature with the matching post feature
    /// (mean u, min u, shock count).
    pub pearson: [f64; 3],
    pub replicates: Vec<ReplicateRow>,
    pub dropped: usize,
    pub note: String,
}

/// Features of `u` at grid points in `[lo, hi)` (`pre`) or `(lo, hi]`.
fn side_features(sol: &BurgersSolution, lo: f64, hi: f64, pre: bool) -> Option<SideFeatures> {
    let inside = |x: f64| if pre { lo <= x && x < hi } else { lo < x && x <= hi };
    let us: Vec<f64> = sol
        .path
        .grid
        .points()
        .into_iter()
        .filter(|&x| inside(x))
        .map(|x| sol.velocity(x).expect("grid point in range"))
        .collect();
    if us.is_empty() {
        return None;
    }
    let shocks = (0..sol.vertex_count() - 1)
        .filter(|&k| is_resolved_shock(sol, k) && inside(sol.x_hi[k]))
        .count();
    Some(SideFeatures {
        mean_u: stats::mean(&us),
        min_u: us.iter().copied().fold(f64::INFINITY, f64::min),
        shocks: shocks as f64,
    })
}

fn replicate(params: LevyParams, grid: GridSpec, t: f64, w: f64, seed: u64, r: usize) -> Option<ReplicateRow> {
    let path = sample_path(params, grid, seed::derive(seed, r as u64)).ok()?;
    let sol = solve(&path, t).ok()?;
    let ti = first_nonnegative_zero(&sol)?;
    let tf = path.y(ti);
    if !(sol.in_window(tf - w) && sol.in_window(tf + w)) {
        return None;
    }
    Some(ReplicateRow {
        replicate: r,
        t_first: tf,
        pre: side_features(&sol, tf - w, tf, true)?,
        post: side_features(&sol, tf, tf + w, false)?,
    })
}

/// Tests whether features of `u` just before `T` are independent of
/// features just after it, across `n_rep` seeded replicates.
///
/// Features are standardized per column; the statistic is the distance
/// correlation and the p-value comes from [`PERMUTATIONS`] permutations of
/// the post features across replicates. Only low-dimensional functionals
/// are compared, so a large p-value fails to detect dependence rather than
/// proving independence.
pub fn independence_test(
    params: LevyParams,
    grid: GridSpec,
    t: f64,
    window_w: f64,
    n_rep: usize,
    seed: u64,
) -> Result<IndependenceReport> {
    params.validate()?;
    check_time(t)?;
    if n_rep < 100 {
        return Err(Error::Parameter(format!("n_rep = {n_rep} must be >= 100")));
    }
    if window_w.is_nan() || window_w <= 0.0 {
        return Err(Error::Parameter(format!("window w = {window_w} must be > 0")));
    }
    let rows: Vec<ReplicateRow> = (0..n_rep)
        .into_par_iter()
        .map(|r| replicate(params, grid, t, window_w, seed, r))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let dropped = n_rep - rows.len();
    if dropped as f64 > MAX_DROPPED_FRACTION * n_rep as f64 {
        return Err(Error::InsufficientData(format!(
            "{dropped} of {n_rep} replicates had no usable T"
        )));
    }
    let pre: Vec<Vec<f64>> = rows.iter().map(|r| r.pre.as_array().to_vec()).collect();
    let post: Vec<Vec<f64>> = rows.iter().map(|r| r.post.as_array().to_vec()).collect();
    let (dcor, p_value) = dcor_permutation_test(&pre, &post, PERMUTATIONS, seed::derive(seed, u64::MAX));
    let pearson = std::array::from_fn(|f| {
        let a: Vec<f64> = rows.iter().map(|r| r.pre.as_array()[f]).collect();
        let b: Vec<f64> = rows.iter().map(|r| r.post.as_array()[f]).collect();
        stats::pearson(&a, &b)
    });
    Ok(IndependenceReport {
        p_value,
        dcor,
        pearson,
        replicates: rows,
        dropped,
        note: "compares low-dimensional functionals of u on each side of T; \
               cannot confirm independence of the full processes"
            .into(),
    })
}

/// Z-scores each column; constant columns become zeros.
pub fn standardize(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let d = rows.first().map_or(0, Vec::len);
    let mut out = rows.to_vec();
    for f in 0..d {
        let col: Vec<f64> = rows.iter().map(|r| r[f]).collect();
        let m = stats::mean(&col);
        let s = stats::std_dev(&col);
        for r in out.iter_mut() {
            r[f] = if s > 0.0 { (r[f] - m) / s } else { 0.0 };
        }
    }
    out
}

/// Double-centered Euclidean distance matrix, row-major.
fn centered_distances(rows: &[Vec<f64>]) -> Vec<f64> {
    let n = rows.len();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let dist = rows[i]
                .iter()
                .zip(&rows[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            d[i * n + j] = dist;
            d[j * n + i] = dist;
        }
    }
    let row_means: Vec<f64> = (0..n).map(|i| d[i * n..(i + 1) * n].iter().sum::<f64>() / n as f64).collect();
    let grand = row_means.iter().sum::<f64>() / n as f64;
    for i in 0..n {
        for j in 0..n {
            d[i * n + j] += grand - row_means[i] - row_means[j];
        }
    }
    d
}

fn dcov2(a: &[f64], b: &[f64], n: usize, perm: &[usize]) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        let pi = perm[i];
        let arow = &a[i * n..(i + 1) * n];
        let brow = &b[pi * n..(pi + 1) * n];
        for j in 0..n {
            s += arow[j] * brow[perm[j]];
        }
    }
    s / (n * n) as f64
}

/// Distance correlation of paired samples after per-column standardization,
/// with a permutation p-value `(1 + #{perm ≥ observed})/(1 + n_perm)`.
pub fn dcor_permutation_test(x: &[Vec<f64>], y: &[Vec<f64>], n_perm: usize, seed: u64) -> (f64, f64) {
    assert_eq!(x.len(), y.len());
    let n = x.len();
    let a = centered_distances(&standardize(x));
    let b = centered_distances(&standardize(y));
    let ident: Vec<usize> = (0..n).collect();
    let observed = dcov2(&a, &b, n, &ident);
    let vx = dcov2(&a, &a, n, &ident);
    let vy = dcov2(&b, &b, n, &ident);
    let dcor = if vx > 0.0 && vy > 0.0 {
        (observed / (vx * vy).sqrt()).max(0.0).sqrt()
    } else {
        0.0
    };
    let mut rng = seed::rng_for(seed, 0);
    let mut perm = ident.clone();
    let mut exceed = 0usize;
    // Permutation statistics within rounding of the observed one count as ties.
    let tol = 1e-12 * observed.abs();
    for _ in 0..n_perm {
        perm.shuffle(&mut rng);
        if dcov2(&a, &b, n, &perm) >= observed - tol {
            exceed += 1;
        }
    }
    (dcor, (1 + exceed) as f64 / (1 + n_perm) as f64)
}
