use rayon::prelude::*;
use serde::Serialize;

use super::derivatives::{mean_curvature, numeric_derivatives, DEFAULT_STEP};
use super::InterrogationError;
use crate::blending::{edge_params, Surface};

/// Worst mismatches found along the shared quad edges of a surface.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ContinuityReport {
    /// Largest distance between the two quads' points at matching parameters.
    pub max_edge_gap: f64,
    /// Largest angle (radians) between the two quads' normals.
    pub max_normal_angle: f64,
    /// Largest `|H_a - H_b| / max(|H_a|, |H_b|)` over samples where both sides
    /// have a curvature value of at least `1e-3` in magnitude.
    pub max_curvature_jump: f64,
    pub edges: usize,
    pub samples: usize,
}

impl ContinuityReport {
    fn merge(self, o: Self) -> Self {
        ContinuityReport {
            max_edge_gap: self.max_edge_gap.max(o.max_edge_gap),
            max_normal_angle: self.max_normal_angle.max(o.max_normal_angle),
            max_curvature_jump: self.max_curvature_jump.max(o.max_curvature_jump),
            edges: self.edges + o.edges,
            samples: self.samples + o.samples,
        }
    }
}

/// Compares both sides of every shared edge at `samples` interior points,
/// `t = (j + 1) / (samples + 1)`. Edge end points are mesh vertices, which
/// every patch interpolates exactly, and at kite corners the normal is not
/// defined, so they are left out.
pub fn continuity_audit(
    surface: &Surface,
    samples: usize,
) -> Result<ContinuityReport, InterrogationError> {
    let mesh = surface.mesh();
    let mut edges = Vec::new();
    for f in 0..mesh.num_quads() {
        for e in 0..4 {
            let (g, d) = mesh.edge_neighbor(f, e);
            if (f, e) < (g, d) {
                edges.push((f, e, g, d));
            }
        }
    }
    edges
        .par_iter()
        .map(|&(f, e, g, d)| {
            let mut rep = ContinuityReport {
                edges: 1,
                ..Default::default()
            };
            for j in 0..samples {
                let t = (j + 1) as f64 / (samples + 1) as f64;
                let (u, v) = edge_params(e, t);
                let (x, y) = edge_params(d, 1.0 - t);
                let a = numeric_derivatives(surface.patch(f), u, v, DEFAULT_STEP)?;
                let b = numeric_derivatives(surface.patch(g), x, y, DEFAULT_STEP)?;
                rep.max_edge_gap = rep.max_edge_gap.max((a.s - b.s).norm());
                if let (Some(na), Some(nb)) = (a.normal(), b.normal()) {
                    let angle = na.cross(&nb).norm().atan2(na.dot(&nb));
                    rep.max_normal_angle = rep.max_normal_angle.max(angle);
                }
                let (ha, hb) = (mean_curvature(&a), mean_curvature(&b));
                let scale = ha.abs().max(hb.abs());
                if ha.abs() >= 1e-3 && hb.abs() >= 1e-3 {
                    rep.max_curvature_jump = rep.max_curvature_jump.max((ha - hb).abs() / scale);
                }
                rep.samples += 1;
            }
            Ok(rep)
        })
        .try_reduce(ContinuityReport::default, |a, b| Ok(a.merge(b)))
}
