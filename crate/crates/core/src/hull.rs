//! Upper concave majorant of a finite point cloud.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative threshold of the collinearity test.
pub const COLLINEAR_TOL: f64 = 1e-12;

/// Vertex chain of the least concave function dominating a point cloud.
///
/// `index[k]` is the position of vertex `k` in the input slice; slopes are
/// computed once at construction and are strictly decreasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcaveMajorant {
    pub ys: Vec<f64>,
    pub vs: Vec<f64>,
    pub index: Vec<usize>,
    pub slopes: Vec<f64>,
}

/// Value and one-sided slopes of the majorant at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HullQuery {
    pub value: f64,
    pub left_slope: f64,
    pub right_slope: f64,
}

/// Cross product of `(b − a) × (c − a)`; negative when `b` lies strictly
/// above the chord from `a` to `c`.
fn cross(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn scale(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
    [a.0, a.1, b.0, b.1, c.0, c.1]
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Single left-to-right monotone-chain pass over points sorted by strictly
/// increasing `y`. Points on or below a chord (within the collinearity
/// tolerance) are dropped, so only the extreme points of collinear runs stay.
pub fn upper_concave_majorant(points: &[(f64, f64)]) -> Result<ConcaveMajorant> {
    if points.len() < 2 {
        return Err(Error::Input(format!(
            "need at least 2 points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|p| !p.0.is_finite() || !p.1.is_finite()) {
        return Err(Error::Input("points must be finite".into()));
    }
    if let Some(w) = points.windows(2).find(|w| w[1].0 <= w[0].0) {
        return Err(Error::Input(format!(
            "abscissae must be strictly increasing, found {} then {}",
            w[0].0, w[1].0
        )));
    }

    let mut stack: Vec<usize> = Vec::with_capacity(points.len());
    for (i, &p) in points.iter().enumerate() {
        while stack.len() >= 2 {
            let a = points[stack[stack.len() - 2]];
            let b = points[stack[stack.len() - 1]];
            if cross(a, b, p) >= -COLLINEAR_TOL * scale(a, b, p) {
                stack.pop();
            } else {
                break;
            }
        }
        stack.push(i);
    }

    let ys: Vec<f64> = stack.iter().map(|&i| points[i].0).collect();
    let vs: Vec<f64> = stack.iter().map(|&i| points[i].1).collect();
    let slopes = ys
        .windows(2)
        .zip(vs.windows(2))
        .map(|(y, v)| (v[1] - v[0]) / (y[1] - y[0]))
        .collect();
    Ok(ConcaveMajorant { ys, vs, index: stack, slopes })
}

impl ConcaveMajorant {
    pub fn len(&self) -> usize {
        self.ys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ys.is_empty()
    }

    /// Slope of the edge entering vertex `k`; `+∞` at the first vertex.
    pub fn left_slope(&self, k: usize) -> f64 {
        if k == 0 {
            f64::INFINITY
        } else {
            self.slopes[k - 1]
        }
    }

    /// Slope of the edge leaving vertex `k`; `−∞` at the last vertex.
    pub fn right_slope(&self, k: usize) -> f64 {
        self.slopes.get(k).copied().unwrap_or(f64::NEG_INFINITY)
    }

    pub fn vertices(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.ys.iter().copied().zip(self.vs.iter().copied())
    }

    pub fn query(&self, y: f64) -> Result<HullQuery> {
        let (lo, hi) = (self.ys[0], self.ys[self.len() - 1]);
        if !(lo <= y && y <= hi) {
            return Err(Error::OutOfDomain { what: "y", value: y, lo, hi });
        }
        match self.ys.binary_search_by(|v| v.total_cmp(&y)) {
            Ok(k) => Ok(HullQuery {
                value: self.vs[k],
                left_slope: self.left_slope(k),
                right_slope: self.right_slope(k),
            }),
            Err(k) => {
                // ys[k − 1] < y < ys[k]
                let s = self.slopes[k - 1];
                Ok(HullQuery {
                    value: self.vs[k - 1] + s * (y - self.ys[k - 1]),
                    left_slope: s,
                    right_slope: s,
                })
            }
        }
    }
}
