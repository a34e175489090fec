use std::sync::Arc;

use super::{local_params, phi, BlendError, BlendParams};
use crate::interpolants::{build_interpolant, Interpolant};
use crate::mesh::{FaceId, QuadMesh, VertexId};
use crate::parameterization::{GridStore, KiteMap};
use crate::{Vec2, Vec3};

/// How a corner's local parameters reach its interpolant's domain.
#[derive(Debug, Clone)]
pub enum CornerMap {
    /// The quarter `[1/2, 1]^2` of a tensor-product square.
    Affine,
    /// A kite of the regular polygon.
    Kite(Arc<KiteMap>),
}

/// One corner of a [`QuadPatch`].
///
/// `interpolant` is the one built from the vertex's own ring; `offset` is
/// this quad's position in that ring, which becomes a rotation of the domain.
#[derive(Debug, Clone)]
pub struct Corner {
    pub vertex: VertexId,
    pub interpolant: Arc<Interpolant>,
    pub map: CornerMap,
    pub offset: usize,
}

impl Corner {
    /// Interpolant value at local corner parameters `(s, t)`.
    pub fn eval(&self, s: f64, t: f64) -> Result<Vec3, BlendError> {
        match &self.map {
            CornerMap::Affine => {
                let (mut x, mut y) = (0.5 * (s + 1.0), 0.5 * (t + 1.0));
                for _ in 0..self.offset % 4 {
                    (x, y) = (1.0 - y, x);
                }
                Ok(self.interpolant.eval_square(x, y)?)
            }
            CornerMap::Kite(map) => {
                let p = self.domain_point(map, s, t)?;
                Ok(self.interpolant.eval_polygon(p)?)
            }
        }
    }

    fn domain_point(&self, map: &KiteMap, s: f64, t: f64) -> Result<Vec2, BlendError> {
        let p = map.map(s, t)?;
        Ok(map.kite().rotate(p, self.offset))
    }
}

/// One quad of the surface: four corners and the blend order.
#[derive(Debug, Clone)]
pub struct QuadPatch {
    pub corners: [Corner; 4],
    pub params: BlendParams,
}

impl QuadPatch {
    pub fn eval(&self, u: f64, v: f64) -> Result<Vec3, BlendError> {
        const SLACK: f64 = 1e-12;
        if !(-SLACK..=1.0 + SLACK).contains(&u) || !(-SLACK..=1.0 + SLACK).contains(&v) {
            return Err(BlendError::OutOfRange { u, v });
        }
        let (u, v) = (u.clamp(0.0, 1.0), v.clamp(0.0, 1.0));
        let mut acc = Vec3::zeros();
        for (j, corner) in self.corners.iter().enumerate() {
            let (s, t) = local_params(j, u, v);
            let w = phi(s, t, self.params.k());
            if w != 0.0 {
                acc += corner.eval(s, t)? * w;
            }
        }
        Ok(acc)
    }
}

pub fn eval_patch(patch: &QuadPatch, u: f64, v: f64) -> Result<Vec3, BlendError> {
    patch.eval(u, v)
}

pub(crate) fn make_corner(
    mesh: &QuadMesh,
    quad: FaceId,
    corner: usize,
    interpolant: Arc<Interpolant>,
    kite: Option<Arc<KiteMap>>,
) -> Corner {
    Corner {
        vertex: mesh.quad(quad)[corner],
        offset: mesh.corner_ring_offset(quad, corner),
        map: match kite {
            Some(k) => CornerMap::Kite(k),
            None => CornerMap::Affine,
        },
        interpolant,
    }
}

/// Builds a single patch with its own interpolants and grid-backed kite maps
/// from `grids`. Use [`super::Surface`] to share interpolants between quads.
pub fn build_patch(
    mesh: &QuadMesh,
    quad: FaceId,
    params: BlendParams,
    grids: &mut GridStore,
) -> Result<QuadPatch, BlendError> {
    let mut corners = Vec::with_capacity(4);
    for j in 0..4 {
        let v = mesh.quad(quad)[j];
        let interp = Arc::new(build_interpolant(&mesh.vertex_net(v)?)?);
        let kite = match interp.valence() {
            4 => None,
            n => Some(Arc::new(KiteMap::with_grid(grids.ensure(n)?))),
        };
        corners.push(make_corner(mesh, quad, j, interp, kite));
    }
    let corners: [Corner; 4] = corners.try_into().expect("four corners");
    Ok(QuadPatch { corners, params })
}
