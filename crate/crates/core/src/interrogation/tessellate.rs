use std::collections::HashMap;

use rayon::prelude::*;

use super::derivatives::{mean_curvature, numeric_derivatives, DEFAULT_STEP};
use super::{isophote_value, InterrogationError};
use crate::blending::{CornerMap, Surface};
use crate::mesh::{FaceId, VertexId};
use crate::Vec3;

/// Parameter offset from a kite-mapped quad corner at which that corner's
/// attributes are evaluated; the map is singular at the corner itself.
pub const CORNER_OFFSET: f64 = 1e-4;

/// Where a tessellation vertex was sampled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub quad: FaceId,
    pub u: f64,
    pub v: f64,
}

/// Welded triangle mesh of a surface with per-vertex attributes.
#[derive(Debug, Clone, PartialEq)]
pub struct Tessellation {
    pub resolution: usize,
    pub positions: Vec<Vec3>,
    pub normals: Vec<Vec3>,
    /// Mean curvature; NaN where the metric degenerates.
    pub mean_curvature: Vec<f64>,
    pub provenance: Vec<Sample>,
    pub triangles: Vec<[usize; 3]>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Key {
    Vertex(VertexId),
    /// Sample `i` of `r` along the edge from `a` to `b`, `a < b`.
    Edge(VertexId, VertexId, usize),
    Interior(FaceId, usize, usize),
}

fn lattice_key(surface: &Surface, quad: FaceId, i: usize, j: usize, r: usize) -> Key {
    let q = surface.mesh().quad(quad);
    match (i, j) {
        (0, 0) => Key::Vertex(q[0]),
        (i, 0) if i == r => Key::Vertex(q[1]),
        (i, j) if i == r && j == r => Key::Vertex(q[2]),
        (0, j) if j == r => Key::Vertex(q[3]),
        // edge k runs from corner k to corner k+1 at fraction t
        (i, 0) => edge_key(q[0], q[1], i, r),
        (i, j) if i == r => edge_key(q[1], q[2], j, r),
        (i, j) if j == r => edge_key(q[2], q[3], r - i, r),
        (0, j) => edge_key(q[3], q[0], r - j, r),
        (i, j) => Key::Interior(quad, i, j),
    }
}

fn edge_key(a: VertexId, b: VertexId, t: usize, r: usize) -> Key {
    if a < b {
        Key::Edge(a, b, t)
    } else {
        Key::Edge(b, a, r - t)
    }
}

/// Where attributes of the lattice point `(u, v)` are evaluated: kite-mapped
/// quad corners are nudged into the patch.
fn attribute_params(surface: &Surface, quad: FaceId, u: f64, v: f64) -> (f64, f64) {
    let corner = match (u, v) {
        (u, v) if u == 0.0 && v == 0.0 => 0,
        (u, v) if u == 1.0 && v == 0.0 => 1,
        (u, v) if u == 1.0 && v == 1.0 => 2,
        (u, v) if u == 0.0 && v == 1.0 => 3,
        _ => return (u, v),
    };
    if matches!(surface.patch(quad).corners[corner].map, CornerMap::Affine) {
        return (u, v);
    }
    let e = CORNER_OFFSET;
    (
        if u == 0.0 { e } else { 1.0 - e },
        if v == 0.0 { e } else { 1.0 - e },
    )
}

struct PointData {
    position: Vec3,
    normal: Vec3,
    mean_curvature: f64,
}

fn sample(
    surface: &Surface,
    quad: FaceId,
    u: f64,
    v: f64,
) -> Result<PointData, InterrogationError> {
    let patch = surface.patch(quad);
    let position = patch.eval(u, v)?;
    let (a, b) = attribute_params(surface, quad, u, v);
    let d = numeric_derivatives(patch, a, b, DEFAULT_STEP)?;
    Ok(PointData {
        position,
        normal: d.normal().unwrap_or_else(Vec3::zeros),
        mean_curvature: mean_curvature(&d),
    })
}

/// Samples every quad on an `(r+1) × (r+1)` lattice and welds the samples
/// shared between quads, so the result is a closed triangle mesh.
///
/// Vertex order is deterministic: quads in order, lattice points row by row,
/// each shared point numbered (and evaluated) where it is first met.
pub fn tessellate(surface: &Surface, r: usize) -> Result<Tessellation, InterrogationError> {
    if r < 1 {
        return Err(InterrogationError::BadResolution);
    }
    let side = r + 1;
    let mut index: HashMap<Key, usize> = HashMap::new();
    let mut owners: Vec<Sample> = Vec::new();
    let mut lattice_ids = vec![0usize; surface.patches().len() * side * side];
    for quad in 0..surface.patches().len() {
        for j in 0..=r {
            for i in 0..=r {
                let key = lattice_key(surface, quad, i, j, r);
                let id = *index.entry(key).or_insert_with(|| {
                    owners.push(Sample {
                        quad,
                        u: i as f64 / r as f64,
                        v: j as f64 / r as f64,
                    });
                    owners.len() - 1
                });
                lattice_ids[(quad * side + j) * side + i] = id;
            }
        }
    }

    let data = owners
        .par_iter()
        .map(|s| sample(surface, s.quad, s.u, s.v))
        .collect::<Result<Vec<_>, _>>()?;

    let mut triangles = Vec::with_capacity(surface.patches().len() * r * r * 2);
    for quad in 0..surface.patches().len() {
        let id = |i: usize, j: usize| lattice_ids[(quad * side + j) * side + i];
        for j in 0..r {
            for i in 0..r {
                triangles.push([id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
                triangles.push([id(i, j), id(i + 1, j + 1), id(i, j + 1)]);
            }
        }
    }

    Ok(Tessellation {
        resolution: r,
        positions: data.iter().map(|d| d.position).collect(),
        normals: data.iter().map(|d| d.normal).collect(),
        mean_curvature: data.iter().map(|d| d.mean_curvature).collect(),
        provenance: owners,
        triangles,
    })
}

impl Tessellation {
    pub fn num_vertices(&self) -> usize {
        self.positions.len()
    }

    /// Isophote scalar per vertex for a light direction (normalized here).
    pub fn isophotes(&self, light: Vec3) -> Vec<f64> {
        let l = light.normalize();
        self.normals.iter().map(|&n| isophote_value(n, l)).collect()
    }

    /// Triangles as polygon index lists, ready for mesh validation.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        self.triangles.iter().map(|t| t.to_vec()).collect()
    }
}
