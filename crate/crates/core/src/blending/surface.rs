use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use super::patch::make_corner;
use super::{BlendError, BlendParams, Corner, QuadPatch};
use crate::interpolants::{build_interpolant, Interpolant, InterpolantKind};
use crate::mesh::{FaceId, QuadMesh};
use crate::parameterization::{GridStore, KiteMap, DEFAULT_TOLERANCE};
use crate::Vec3;

/// Where kite maps get their values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MapMode {
    /// Bilinear lookup in precomputed grids.
    #[default]
    Grid,
    /// Solve every evaluation with the curve-intersection search.
    Exact,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceOptions {
    pub blend: BlendParams,
    pub map_mode: MapMode,
    /// Intersection tolerance, for exact solves and for grid construction.
    pub tolerance: f64,
    /// Lattice resolution of the map grids (`resolution + 1` points a side).
    pub grid_resolution: usize,
    /// Directory for cached grids; `None` computes them in memory only.
    pub cache_dir: Option<PathBuf>,
    /// Use kite maps at valence-4 corners too instead of the affine quarter.
    pub force_kite: bool,
}

impl Default for SurfaceOptions {
    fn default() -> Self {
        SurfaceOptions {
            blend: BlendParams::default(),
            map_mode: MapMode::Grid,
            tolerance: DEFAULT_TOLERANCE,
            grid_resolution: 33,
            cache_dir: None,
            force_kite: false,
        }
    }
}

/// The blended surface of a quad mesh: one interpolant per mesh vertex,
/// shared by every quad around it, and one patch per quad.
#[derive(Debug, Clone)]
pub struct Surface {
    mesh: QuadMesh,
    interpolants: Vec<Arc<Interpolant>>,
    patches: Vec<QuadPatch>,
    options: SurfaceOptions,
}

impl Surface {
    pub fn build(mesh: QuadMesh, options: SurfaceOptions) -> Result<Self, BlendError> {
        let m = mesh.mesh();
        let interpolants = (0..m.num_vertices())
            .map(|v| Ok(Arc::new(build_interpolant(&mesh.vertex_net(v)?)?)))
            .collect::<Result<Vec<_>, BlendError>>()?;

        // One map per valence that needs one, created before any patch.
        let mut valences: Vec<usize> = interpolants.iter().map(|i| i.valence()).collect();
        valences.sort_unstable();
        valences.dedup();
        let mut store = GridStore::new(
            options.grid_resolution,
            options.tolerance,
            options.cache_dir.clone(),
        );
        let mut maps: BTreeMap<usize, Arc<KiteMap>> = BTreeMap::new();
        for n in valences {
            if n == 4 && !options.force_kite {
                continue;
            }
            let map = match options.map_mode {
                MapMode::Grid => KiteMap::with_grid(store.ensure(n)?),
                MapMode::Exact => KiteMap::exact(n, options.tolerance),
            };
            maps.insert(n, Arc::new(map));
        }

        let patches = (0..mesh.num_quads())
            .map(|f| {
                let corners: [Corner; 4] = std::array::from_fn(|j| {
                    let v = mesh.quad(f)[j];
                    let interp = interpolants[v].clone();
                    let kite = maps.get(&interp.valence()).cloned();
                    make_corner(&mesh, f, j, interp, kite)
                });
                QuadPatch {
                    corners,
                    params: options.blend,
                }
            })
            .collect();

        Ok(Surface {
            mesh,
            interpolants,
            patches,
            options,
        })
    }

    pub fn mesh(&self) -> &QuadMesh {
        &self.mesh
    }

    pub fn options(&self) -> &SurfaceOptions {
        &self.options
    }

    pub fn patches(&self) -> &[QuadPatch] {
        &self.patches
    }

    pub fn patch(&self, quad: FaceId) -> &QuadPatch {
        &self.patches[quad]
    }

    pub fn interpolants(&self) -> &[Arc<Interpolant>] {
        &self.interpolants
    }

    pub fn eval(&self, quad: FaceId, u: f64, v: f64) -> Result<Vec3, BlendError> {
        self.patches[quad].eval(u, v)
    }

    /// Number of quad corners per vertex valence.
    pub fn corner_kinds(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for p in &self.patches {
            for c in &p.corners {
                *hist.entry(c.interpolant.valence()).or_insert(0) += 1;
            }
        }
        hist
    }

    /// Number of mesh vertices (one interpolant each) per valence.
    pub fn vertex_valences(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for i in &self.interpolants {
            *hist.entry(i.valence()).or_insert(0) += 1;
        }
        hist
    }

    /// Number of interpolants of each kind.
    pub fn interpolant_kinds(&self) -> BTreeMap<InterpolantKind, usize> {
        let mut hist = BTreeMap::new();
        for i in &self.interpolants {
            *hist.entry(i.kind()).or_insert(0) += 1;
        }
        hist
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blending::{build_patch, edge_params, CornerMap};
    use crate::fixtures;
    use crate::mesh::{central_split, Mesh};
    use nalgebra::Matrix3;

    fn normal(s: &Surface, f: FaceId, u: f64, v: f64) -> Vec3 {
        // one-sided differences pointing into the patch
        let h = 1e-5;
        let (du, su) = if u + h <= 1.0 { (h, 1.0) } else { (-h, -1.0) };
        let (dv, sv) = if v + h <= 1.0 { (h, 1.0) } else { (-h, -1.0) };
        let p = s.eval(f, u, v).unwrap();
        let pu = (s.eval(f, u + du, v).unwrap() - p) * su;
        let pv = (s.eval(f, u, v + dv).unwrap() - p) * sv;
        pu.cross(&pv).normalize()
    }

    /// Largest position gap and normal angle over matched samples of every
    /// shared edge, skipping the corners where kite maps are singular.
    fn edge_audit(s: &Surface, samples: usize, normals: bool) -> (f64, f64) {
        let (mut gap, mut angle): (f64, f64) = (0.0, 0.0);
        for f in 0..s.mesh().num_quads() {
            for e in 0..4 {
                let (g, d) = s.mesh().edge_neighbor(f, e);
                if g < f {
                    continue;
                }
                for i in 1..samples {
                    let t = i as f64 / samples as f64;
                    let (u, v) = edge_params(e, t);
                    let (x, y) = edge_params(d, 1.0 - t);
                    let a = s.eval(f, u, v).unwrap();
                    let b = s.eval(g, x, y).unwrap();
                    gap = gap.max((a - b).norm());
                    if normals {
                        let c = normal(s, f, u, v).dot(&normal(s, g, x, y)).clamp(-1.0, 1.0);
                        angle = angle.max(c.acos());
                    }
                }
            }
        }
        (gap, angle)
    }

    fn icosahedron_surface(mode: MapMode) -> Surface {
        let opts = SurfaceOptions {
            map_mode: mode,
            ..SurfaceOptions::default()
        };
        Surface::build(central_split(&fixtures::icosahedron()), opts).unwrap()
    }

    #[test]
    fn interpolates_every_vertex() {
        for mesh in [
            fixtures::icosahedron(),
            fixtures::cube(),
            fixtures::square_pyramid(),
        ] {
            let s = Surface::build(central_split(&mesh), SurfaceOptions::default()).unwrap();
            let at = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
            for f in 0..s.mesh().num_quads() {
                for (j, &(u, v)) in at.iter().enumerate() {
                    let expect = s.mesh().mesh().vertex(s.mesh().quad(f)[j]);
                    assert!((s.eval(f, u, v).unwrap() - expect).norm() <= 1e-9);
                }
            }
        }
    }

    #[test]
    fn corner_kinds_and_sharing() {
        let s = icosahedron_surface(MapMode::Grid);
        let valences: Vec<usize> = s
            .patch(0)
            .corners
            .iter()
            .map(|c| c.interpolant.valence())
            .collect();
        assert_eq!(valences, [5, 4, 3, 4]);
        assert_eq!(
            s.interpolant_kinds(),
            BTreeMap::from([
                (InterpolantKind::Triangle, 20),
                (InterpolantKind::TensorProduct, 30),
                (InterpolantKind::GeneralizedBezier, 12),
            ])
        );
        assert_eq!(
            s.corner_kinds(),
            BTreeMap::from([(3, 60), (4, 120), (5, 60)])
        );
        assert_eq!(
            s.vertex_valences(),
            BTreeMap::from([(3, 20), (4, 30), (5, 12)])
        );
        // every quad corner at a vertex holds that vertex's interpolant
        for p in s.patches() {
            for c in &p.corners {
                assert!(Arc::ptr_eq(&c.interpolant, &s.interpolants()[c.vertex]));
                assert_eq!(
                    matches!(c.map, CornerMap::Affine),
                    c.interpolant.valence() == 4
                );
            }
        }
    }

    #[test]
    fn torus_is_all_affine_and_seamless() {
        let mesh = fixtures::torus(8, 16, 3.0, 1.0);
        let quads = QuadMesh::from_quads(mesh).unwrap();
        let mut store = GridStore::new(4, 1e-10, None);
        let p = build_patch(&quads, 0, BlendParams::default(), &mut store).unwrap();
        assert!(p.corners.iter().all(|c| matches!(c.map, CornerMap::Affine)));
        let s = Surface::build(quads, SurfaceOptions::default()).unwrap();
        // a standalone patch equals the shared one
        for &(u, v) in &[(0.2, 0.3), (0.9, 0.5)] {
            assert!((p.eval(u, v).unwrap() - s.eval(0, u, v).unwrap()).norm() < 1e-15);
        }
        let (gap, angle) = edge_audit(&s, 16, true);
        assert!(gap <= 1e-12, "gap {gap:e}");
        assert!(angle < 1e-4, "angle {angle:e}");
    }

    #[test]
    fn icosahedron_edges_match_in_grid_mode() {
        let s = icosahedron_surface(MapMode::Grid);
        let (gap, angle) = edge_audit(&s, 8, true);
        // the two sides look up mirrored lattice values
        assert!(gap <= 1e-12, "gap {gap:e}");
        assert!(angle < 1e-2, "angle {angle:e}");
    }

    #[test]
    fn icosahedron_edges_match_in_exact_mode() {
        let s = icosahedron_surface(MapMode::Exact);
        let (gap, _) = edge_audit(&s, 5, false);
        assert!(gap <= 1e-6, "gap {gap:e}");
    }

    #[test]
    fn constant_data_gives_a_constant_surface() {
        // collapse every vertex of a valid mesh onto one point
        let mesh = fixtures::icosahedron();
        let p = Vec3::new(0.3, -1.0, 2.0);
        let flat = Mesh::new(vec![p; mesh.num_vertices()], mesh.faces().to_vec()).unwrap();
        let s = Surface::build(central_split(&flat), SurfaceOptions::default()).unwrap();
        for f in [0, 17, 59] {
            for &(u, v) in &[(0.1, 0.1), (0.5, 0.5), (0.7, 0.2)] {
                assert!((s.eval(f, u, v).unwrap() - p).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn affine_invariance() {
        let a = Matrix3::new(1.2, 0.3, -0.1, 0.0, 0.8, 0.4, 0.2, -0.5, 1.1);
        let t = Vec3::new(0.5, -2.0, 1.0);
        let mesh = fixtures::square_pyramid();
        let moved: Vec<Vec3> = mesh.vertices().iter().map(|&p| a * p + t).collect();
        let moved = Mesh::new(moved, mesh.faces().to_vec()).unwrap();
        let s = Surface::build(central_split(&mesh), SurfaceOptions::default()).unwrap();
        let m = Surface::build(central_split(&moved), SurfaceOptions::default()).unwrap();
        for f in 0..s.mesh().num_quads() {
            for &(u, v) in &[(0.25, 0.5), (0.6, 0.9), (0.05, 0.8)] {
                let expect = a * s.eval(f, u, v).unwrap() + t;
                assert!((m.eval(f, u, v).unwrap() - expect).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn forced_kites_still_interpolate() {
        let opts = SurfaceOptions {
            force_kite: true,
            ..SurfaceOptions::default()
        };
        let s = Surface::build(central_split(&fixtures::cube()), opts).unwrap();
        assert!(s.patches().iter().all(|p| p
            .corners
            .iter()
            .all(|c| matches!(c.map, CornerMap::Kite(_)))));
        for f in 0..s.mesh().num_quads() {
            let expect = s.mesh().mesh().vertex(s.mesh().quad(f)[2]);
            assert!((s.eval(f, 1.0, 1.0).unwrap() - expect).norm() <= 1e-9);
        }
        let (gap, _) = edge_audit(&s, 8, false);
        assert!(gap <= 1e-12);
    }

    #[test]
    fn out_of_range_parameters() {
        let s = icosahedron_surface(MapMode::Grid);
        assert!(matches!(
            s.eval(0, 1.5, 0.0),
            Err(BlendError::OutOfRange { .. })
        ));
    }
}
