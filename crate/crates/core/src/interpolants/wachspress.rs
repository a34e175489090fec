use std::f64::consts::PI;

use super::InterpolantError;
use crate::Vec2;

/// Points closer than this (in signed-area units) to a side count as lying
/// on it.
pub(crate) const BOUNDARY_EPS: f64 = 1e-14;
const OUTSIDE_EPS: f64 = 1e-12;

/// Regular n-gon inscribed in the unit circle, vertex `k` at angle `2kπ/n`.
/// Side `i` runs from vertex `i-1` to vertex `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularPolygon {
    n: usize,
    vertices: Vec<Vec2>,
}

impl RegularPolygon {
    pub fn new(n: usize) -> Self {
        assert!(n >= 3, "polygon needs at least 3 sides");
        let vertices = (0..n)
            .map(|k| {
                let a = 2.0 * PI * k as f64 / n as f64;
                Vec2::new(a.cos(), a.sin())
            })
            .collect();
        RegularPolygon { n, vertices }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn vertex(&self, k: usize) -> Vec2 {
        self.vertices[k % self.n]
    }

    /// Midpoint of side `i` (between vertices `i-1` and `i`).
    pub fn side_midpoint(&self, i: usize) -> Vec2 {
        (self.vertex(i + self.n - 1) + self.vertex(i)) * 0.5
    }

    /// Point at parameter `s` along side `i`, from vertex `i-1` to vertex `i`.
    pub fn side_point(&self, i: usize, s: f64) -> Vec2 {
        self.vertex(i + self.n - 1) * (1.0 - s) + self.vertex(i) * s
    }

    /// Twice the signed area of `(p, v[i-1], v[i])` for every side `i`.
    pub(crate) fn side_areas(&self, p: Vec2) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                let a = self.vertex(i + self.n - 1) - p;
                let b = self.vertex(i) - p;
                a.x * b.y - a.y * b.x
            })
            .collect()
    }

    pub fn contains(&self, p: Vec2) -> bool {
        self.side_areas(p).iter().all(|&a| a >= -OUTSIDE_EPS)
    }

    /// Side index whose supporting segment `p` lies on, if any.
    pub fn boundary_side(&self, p: Vec2) -> Option<usize> {
        let areas = self.side_areas(p);
        (0..self.n)
            .filter(|&i| areas[i].abs() <= BOUNDARY_EPS)
            .min_by(|&a, &b| areas[a].abs().total_cmp(&areas[b].abs()))
    }
}

/// Wachspress coordinates of `p`, one per polygon vertex.
///
/// Uses the product form `w_i = A(v_{i-1}, v_i, v_{i+1}) * prod_{j != i, i+1} A_j(p)`,
/// where `A_j` is the area of `p` against side `j`; it stays finite on the
/// boundary, so points on the sides and at the vertices need no special case.
pub fn wachspress(poly: &RegularPolygon, p: Vec2) -> Result<Vec<f64>, InterpolantError> {
    let n = poly.n();
    let areas = poly.side_areas(p);
    if areas.iter().any(|&a| a < -OUTSIDE_EPS) {
        return Err(InterpolantError::OutsideDomain { x: p.x, y: p.y });
    }
    let areas: Vec<f64> = areas.into_iter().map(|a| a.max(0.0)).collect();
    // corner area is identical for every vertex of a regular polygon
    let mut w = vec![0.0; n];
    for (i, wi) in w.iter_mut().enumerate() {
        *wi = (0..n)
            .filter(|&j| j != i && j != (i + 1) % n)
            .map(|j| areas[j])
            .product();
    }
    let total: f64 = w.iter().sum();
    Ok(w.into_iter().map(|x| x / total).collect())
}

/// Side-local coordinates for side `i`: `s` runs 0 -> 1 from vertex `i-1` to
/// vertex `i`, `d` is 0 on the side and grows inwards.
pub fn side_coords(lambda: &[f64], i: usize) -> Result<(f64, f64), InterpolantError> {
    let n = lambda.len();
    let prev = lambda[(i + n - 1) % n];
    let cur = lambda[i % n];
    let denom = prev + cur;
    if denom <= 0.0 {
        return Err(InterpolantError::DegenerateSide { side: i });
    }
    Ok((cur / denom, 1.0 - prev - cur))
}
