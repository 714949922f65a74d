//! Hopf-Cole entropy solution from the concave majorant of the parabolically
//! shifted potential `y ↦ ψ₀(y) − y²/(2t)`.
//!
//! Since `ψ₀(y) − (y − x)²/(2t) = [ψ₀(y) − y²/(2t)] + xy/t − x²/(2t)`, the
//! maximizer `a(x, t)` is the majorant vertex whose supporting slopes bracket
//! `−x/t`. Vertex `k` therefore owns the Eulerian interval
//! `X_k = [−t·s_left(k), −t·s_right(k))`, and consecutive intervals share a
//! shock point. At a shared endpoint the right vertex wins, which makes
//! `a(·, t)` right-continuous and picks the largest maximizer.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hull::{upper_concave_majorant, ConcaveMajorant};
use crate::levy::LevyPath;

/// Fraction of the domain width trimmed from each side to form the
/// analysis window.
pub const WINDOW_MARGIN_FRACTION: f64 = 0.25;

#[derive(Debug, Clone)]
pub struct BurgersSolution {
    pub t: f64,
    pub path: Arc<LevyPath>,
    /// Majorant of `(y_i, ψ₀(y_i) − y_i²/(2t))`; `majorant.index` holds grid
    /// indices.
    pub majorant: ConcaveMajorant,
    /// Left endpoints of the Eulerian intervals `X_k` (`−∞` for the first).
    pub x_lo: Vec<f64>,
    /// Right endpoints of `X_k` (`+∞` for the last).
    pub x_hi: Vec<f64>,
    /// Analysis window `[x_min + margin, x_max − margin]`.
    pub window: (f64, f64),
    /// Vertex `k` is boundary-affected when `X_k` is not inside the window.
    pub boundary_affected: Vec<bool>,
}

/// One-sided values of `a` and `u` at an Eulerian point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub a: f64,
    pub a_left: f64,
    pub u: f64,
    pub u_left: f64,
    /// Majorant vertex of `a(x)`.
    pub vertex: usize,
    /// Majorant vertex of `a(x−)`.
    pub vertex_left: usize,
}

fn check_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("time t = {t} must be > 0")))
    }
}

/// Solves with the default analysis window (a quarter of the domain trimmed
/// from each side).
pub fn solve(path: &LevyPath, t: f64) -> Result<BurgersSolution> {
    let width = path.grid.last() - path.grid.first();
    solve_with_margin(path, t, WINDOW_MARGIN_FRACTION * width)
}

/// Solves and checks that the two end vertices of the majorant, whose
/// Eulerian intervals extend to ±∞, stay clear of the analysis window.
/// When they do not, the true maximizer for points inside the window may lie
/// beyond the grid and [`Error::WindowTooSmall`] is returned.
pub fn solve_with_margin(path: &LevyPath, t: f64, margin: f64) -> Result<BurgersSolution> {
    check_time(t)?;
    if path.len() < 2 {
        return Err(Error::Input("path needs at least 2 grid points".into()));
    }
    let (first, last) = (path.grid.first(), path.grid.last());
    if !(margin >= 0.0 && 2.0 * margin < last - first) {
        return Err(Error::Parameter(format!(
            "margin {margin} leaves an empty window on [{first}, {last}]"
        )));
    }
    let window = (first + margin, last - margin);
    let sol = majorant_solution(path, t, window)?;
    let m = sol.vertex_count();
    if sol.x_hi[0] >= window.0 || sol.x_lo[m - 1] <= window.1 {
        return Err(Error::WindowTooSmall(format!(
            "end vertices of the majorant reach into the window [{}, {}] (first vertex up to x = {}, last from x = {})",
            window.0,
            window.1,
            sol.x_hi[0],
            sol.x_lo[m - 1]
        )));
    }
    Ok(sol)
}

/// Exact solution of the grid problem `a(x) = argmax_i ψ₀(y_i) − (y_i − x)²/(2t)`
/// with no window check: the window is the whole grid extent. Near the ends
/// the grid maximizer can differ from the maximizer over the full line.
pub fn solve_on_grid(path: &LevyPath, t: f64) -> Result<BurgersSolution> {
    check_time(t)?;
    if path.len() < 2 {
        return Err(Error::Input("path needs at least 2 grid points".into()));
    }
    majorant_solution(path, t, (path.grid.first(), path.grid.last()))
}

fn majorant_solution(path: &LevyPath, t: f64, window: (f64, f64)) -> Result<BurgersSolution> {
    let shifted: Vec<(f64, f64)> = path
        .values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let y = path.y(i);
            (y, v - y * y / (2.0 * t))
        })
        .collect();
    let majorant = upper_concave_majorant(&shifted)?;
    let m = majorant.len();
    let x_lo: Vec<f64> = (0..m).map(|k| -t * majorant.left_slope(k)).collect();
    let x_hi: Vec<f64> = (0..m).map(|k| -t * majorant.right_slope(k)).collect();

    let boundary_affected = (0..m)
        .map(|k| !(window.0 <= x_lo[k] && x_hi[k] <= window.1))
        .collect();

    Ok(BurgersSolution {
        t,
        path: Arc::new(path.clone()),
        majorant,
        x_lo,
        x_hi,
        window,
        boundary_affected,
    })
}

impl BurgersSolution {
    pub fn vertex_count(&self) -> usize {
        self.majorant.len()
    }

    /// Lagrangian position `y_k` of vertex `k`.
    pub fn vertex_y(&self, k: usize) -> f64 {
        self.majorant.ys[k]
    }

    /// Grid index of vertex `k`.
    pub fn vertex_index(&self, k: usize) -> usize {
        self.majorant.index[k]
    }

    pub fn covered_range(&self) -> (f64, f64) {
        (self.path.grid.first(), self.path.grid.last())
    }

    /// Vertex owning `x`: the unique `k` with `x_lo[k] <= x < x_hi[k]`.
    pub fn vertex_at(&self, x: f64) -> usize {
        self.x_hi.partition_point(|&xh| xh <= x)
    }

    /// `a(x)`, `a(x−)`, `u(x)`, `u(x−)` at `x`.
    pub fn evaluate(&self, x: f64) -> Result<Evaluation> {
        let (lo, hi) = self.covered_range();
        if !(lo <= x && x <= hi) {
            return Err(Error::OutOfDomain { what: "x", value: x, lo, hi });
        }
        let k = self.vertex_at(x);
        let kl = if k > 0 && x == self.x_lo[k] { k - 1 } else { k };
        let a = self.vertex_y(k);
        let a_left = self.vertex_y(kl);
        Ok(Evaluation {
            a,
            a_left,
            u: (x - a) / self.t,
            u_left: (x - a_left) / self.t,
            vertex: k,
            vertex_left: kl,
        })
    }

    /// `u(x) = (x − a(x))/t`.
    pub fn velocity(&self, x: f64) -> Result<f64> {
        self.evaluate(x).map(|e| e.u)
    }

    /// Lagrangian function `x(a) = inf{x : a(x) > a}`, the right-continuous
    /// inverse of `a(·)`. A particle swallowed by a shock is mapped to the
    /// shock location.
    pub fn lagrangian_position(&self, a: f64) -> Result<f64> {
        let m = self.vertex_count();
        let (lo, hi) = (self.vertex_y(0), self.vertex_y(m - 1));
        if !(lo <= a && a < hi) {
            return Err(Error::OutOfDomain { what: "a", value: a, lo, hi });
        }
        let k = self.majorant.ys.partition_point(|&y| y <= a);
        Ok(self.x_lo[k])
    }

    /// Moreau envelope `M(x) = sup_y {ψ₀(y) − (y − x)²/(2t)}` over the grid,
    /// evaluated at the maximizer `a(x)`; this equals
    /// `C̄(a(x)) + x·a(x)/t − x²/(2t)`.
    pub fn moreau_envelope(&self, x: f64) -> Result<f64> {
        let e = self.evaluate(x)?;
        let psi = self.path.values[self.vertex_index(e.vertex)];
        let d = e.a - x;
        Ok(psi - d * d / (2.0 * self.t))
    }

    /// Proximal map `x ↦ a(x)`.
    pub fn prox(&self, x: f64) -> Result<f64> {
        self.evaluate(x).map(|e| e.a)
    }

    /// Vertices fixed by the proximal map, `y_k ∈ X_k` (closed interval).
    pub fn prox_fixed_points(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&k| {
                let y = self.vertex_y(k);
                self.x_lo[k] <= y && y <= self.x_hi[k]
            })
            .collect()
    }

    pub fn in_window(&self, x: f64) -> bool {
        self.window.0 <= x && x <= self.window.1
    }
}

/// Direct maximization over all grid points, for every `x` in `xs`: returns
/// the grid index of the largest `y` maximizing `ψ₀(y) − (y − x)²/(2t)`.
pub fn solve_naive(path: &LevyPath, t: f64, xs: &[f64]) -> Result<Vec<usize>> {
    check_time(t)?;
    if path.len() < 2 {
        return Err(Error::Input("path needs at least 2 grid points".into()));
    }
    let ys = path.grid.points();
    Ok(xs
        .iter()
        .map(|&x| {
            let mut best = f64::NEG_INFINITY;
            let mut arg = 0;
            for (i, (&y, &v)) in ys.iter().zip(&path.values).enumerate() {
                let d = y - x;
                let val = v - d * d / (2.0 * t);
                if val >= best {
                    best = val;
                    arg = i;
                }
            }
            arg
        })
        .collect())
}
