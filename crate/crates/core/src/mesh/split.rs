use std::collections::HashMap;

use super::{ring_net, ControlNet, FaceId, Mesh, MeshError, VertexId};
use crate::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexTag {
    Original,
    EdgePoint,
    FacePoint,
}

/// An all-quad closed mesh with provenance tags per vertex.
#[derive(Debug, Clone)]
pub struct QuadMesh {
    mesh: Mesh,
    tags: Vec<VertexTag>,
}

impl QuadMesh {
    /// Wraps an all-quad mesh without splitting it.
    pub fn from_quads(mesh: Mesh) -> Result<Self, MeshError> {
        if let Some(face) = mesh.faces().iter().position(|f| f.len() != 4) {
            return Err(MeshError::NotQuad { face });
        }
        let tags = vec![VertexTag::Original; mesh.num_vertices()];
        Ok(QuadMesh { mesh, tags })
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn tags(&self) -> &[VertexTag] {
        &self.tags
    }

    pub fn num_quads(&self) -> usize {
        self.mesh.num_faces()
    }

    pub fn quad(&self, f: FaceId) -> [VertexId; 4] {
        let face = self.mesh.face(f);
        [face[0], face[1], face[2], face[3]]
    }

    /// 1-ring of corner `corner` of `quad`, rotated so that `e[0]` is the
    /// next quad vertex counter-clockwise from `m`, `c[0]` the opposite one
    /// and `e[1]` the remaining one.
    pub fn corner_net(&self, quad: FaceId, corner: usize) -> Result<ControlNet, MeshError> {
        if quad >= self.num_quads() || corner > 3 {
            return Err(MeshError::BadCorner { face: quad, corner });
        }
        ring_net(&self.mesh, self.mesh.corner_half_edge(quad, corner))
    }

    /// 1-ring of a vertex starting at its lowest-numbered outgoing half-edge.
    pub fn vertex_net(&self, v: VertexId) -> Result<ControlNet, MeshError> {
        ring_net(&self.mesh, self.mesh.outgoing(v))
    }

    /// The quad across edge `edge` (corner `edge` to corner `edge + 1`) and
    /// the index of the same edge there, where it runs the other way.
    pub fn edge_neighbor(&self, quad: FaceId, edge: usize) -> (FaceId, usize) {
        let twin = self
            .mesh
            .half_edge(self.mesh.corner_half_edge(quad, edge % 4))
            .twin;
        (
            self.mesh.half_edge(twin).face,
            self.mesh.half_edge_corner(twin),
        )
    }

    /// Position of this corner's quad within the vertex ring returned by
    /// [`QuadMesh::vertex_net`]: `corner_net == vertex_net.rotated(offset)`.
    pub fn corner_ring_offset(&self, quad: FaceId, corner: usize) -> usize {
        let v = self.quad(quad)[corner];
        let h = self.mesh.corner_half_edge(quad, corner);
        self.mesh
            .vertex_ring(v)
            .iter()
            .position(|&x| x == h)
            .expect("corner half-edge belongs to its vertex ring")
    }
}

/// Replaces every m-gon by m quads (vertex, edge midpoint, face centroid,
/// edge midpoint). Original vertices keep their indices and positions; edge
/// points follow in first-seen edge order, then one face point per face.
pub fn central_split(mesh: &Mesh) -> QuadMesh {
    let mut vertices: Vec<Vec3> = mesh.vertices().to_vec();
    let mut tags = vec![VertexTag::Original; vertices.len()];

    let mut edge_point: HashMap<(VertexId, VertexId), VertexId> = HashMap::new();
    for face in mesh.faces() {
        let m = face.len();
        for k in 0..m {
            let (a, b) = (face[k], face[(k + 1) % m]);
            let key = (a.min(b), a.max(b));
            edge_point.entry(key).or_insert_with(|| {
                vertices.push((mesh.vertex(a) + mesh.vertex(b)) * 0.5);
                tags.push(VertexTag::EdgePoint);
                vertices.len() - 1
            });
        }
    }
    let face_base = vertices.len();
    for face in mesh.faces() {
        let sum = face
            .iter()
            .fold(Vec3::zeros(), |acc, &v| acc + mesh.vertex(v));
        vertices.push(sum / face.len() as f64);
        tags.push(VertexTag::FacePoint);
    }

    let ep = |a: VertexId, b: VertexId| edge_point[&(a.min(b), a.max(b))];
    let mut quads = Vec::new();
    for (fi, face) in mesh.faces().iter().enumerate() {
        let m = face.len();
        for k in 0..m {
            let v = face[k];
            let next = face[(k + 1) % m];
            let prev = face[(k + m - 1) % m];
            quads.push(vec![v, ep(v, next), face_base + fi, ep(prev, v)]);
        }
    }
    let mesh = Mesh::new(vertices, quads).expect("central split of a closed manifold is closed");
    QuadMesh { mesh, tags }
}
