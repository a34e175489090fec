//! Closed polygonal meshes with half-edge connectivity.
//!
//! The surface construction only works on closed, consistently oriented
//! 2-manifolds, so [`Mesh::new`] refuses anything else. Faces are
//! counter-clockwise when seen from outside.

mod obj;
mod split;

pub use obj::{load_mesh, parse_obj, write_obj, MeshFormat};
pub use split::{central_split, QuadMesh, VertexTag};

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::Vec3;

pub type VertexId = usize;
pub type FaceId = usize;
pub type HalfEdgeId = usize;

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("mesh is not a closed 2-manifold (only closed meshes are supported): {0}")]
    Topology(ValidationReport),
    #[error("face {face} is not a quad")]
    NotQuad { face: FaceId },
    #[error("vertex {vertex} has valence {valence}, need at least 3")]
    LowValence { vertex: VertexId, valence: usize },
    #[error("face {face} has no corner {corner}")]
    BadCorner { face: FaceId, corner: usize },
}

/// A single problem found by [`validate_closed`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Defect {
    /// Directed edge `from -> to` has no opposite half-edge.
    BoundaryEdge {
        from: VertexId,
        to: VertexId,
    },
    /// Undirected edge used by more than two faces.
    NonManifoldEdge {
        a: VertexId,
        b: VertexId,
        faces: usize,
    },
    /// Two faces traverse the edge in the same direction.
    InconsistentOrientation {
        from: VertexId,
        to: VertexId,
    },
    /// The faces around a vertex do not form a single fan.
    NonManifoldVertex {
        vertex: VertexId,
    },
    RepeatedVertex {
        face: FaceId,
        vertex: VertexId,
    },
    DegenerateFace {
        face: FaceId,
    },
    IndexOutOfRange {
        face: FaceId,
        index: usize,
    },
    LowValence {
        vertex: VertexId,
        valence: usize,
    },
    IsolatedVertex {
        vertex: VertexId,
    },
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::BoundaryEdge { from, to } => write!(f, "boundary edge {from}->{to}"),
            Defect::NonManifoldEdge { a, b, faces } => {
                write!(f, "non-manifold edge {a}-{b} shared by {faces} faces")
            }
            Defect::InconsistentOrientation { from, to } => {
                write!(f, "inconsistent orientation at edge {from}->{to}")
            }
            Defect::NonManifoldVertex { vertex } => write!(f, "non-manifold vertex {vertex}"),
            Defect::RepeatedVertex { face, vertex } => {
                write!(f, "face {face} repeats vertex {vertex}")
            }
            Defect::DegenerateFace { face } => write!(f, "face {face} has fewer than 3 vertices"),
            Defect::IndexOutOfRange { face, index } => {
                write!(f, "face {face} references missing vertex {index}")
            }
            Defect::LowValence { vertex, valence } => {
                write!(f, "vertex {vertex} has valence {valence}")
            }
            Defect::IsolatedVertex { vertex } => {
                write!(f, "vertex {vertex} is not used by any face")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub defects: Vec<Defect>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.defects.is_empty()
    }

    pub fn count(&self, pred: impl Fn(&Defect) -> bool) -> usize {
        self.defects.iter().filter(|d| pred(d)).count()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.defects.is_empty() {
            return write!(f, "ok");
        }
        write!(f, "{} defect(s)", self.defects.len())?;
        for d in &self.defects {
            write!(f, "; {d}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfEdge {
    pub origin: VertexId,
    pub face: FaceId,
    pub next: HalfEdgeId,
    pub prev: HalfEdgeId,
    pub twin: HalfEdgeId,
}

/// Indexed polygon mesh. Immutable once built.
#[derive(Debug, Clone)]
pub struct Mesh {
    vertices: Vec<Vec3>,
    faces: Vec<Vec<VertexId>>,
    half_edges: Vec<HalfEdge>,
    /// First half-edge of each face (the one leaving `faces[f][0]`).
    face_start: Vec<HalfEdgeId>,
    /// Lowest-numbered outgoing half-edge of each vertex.
    vertex_out: Vec<HalfEdgeId>,
}

impl Mesh {
    /// Builds connectivity and rejects anything that is not a closed,
    /// consistently oriented 2-manifold.
    pub fn new(vertices: Vec<Vec3>, faces: Vec<Vec<VertexId>>) -> Result<Self, MeshError> {
        let report = validate_faces(vertices.len(), &faces);
        if !report.is_ok() {
            return Err(MeshError::Topology(report));
        }
        Ok(Self::build_unchecked(vertices, faces))
    }

    fn build_unchecked(vertices: Vec<Vec3>, faces: Vec<Vec<VertexId>>) -> Self {
        let total: usize = faces.iter().map(Vec::len).sum();
        let mut half_edges = Vec::with_capacity(total);
        let mut face_start = Vec::with_capacity(faces.len());
        let mut directed: HashMap<(VertexId, VertexId), HalfEdgeId> = HashMap::with_capacity(total);
        for (fi, face) in faces.iter().enumerate() {
            let base = half_edges.len();
            let m = face.len();
            face_start.push(base);
            for k in 0..m {
                half_edges.push(HalfEdge {
                    origin: face[k],
                    face: fi,
                    next: base + (k + 1) % m,
                    prev: base + (k + m - 1) % m,
                    twin: usize::MAX,
                });
                directed.insert((face[k], face[(k + 1) % m]), base + k);
            }
        }
        for h in 0..half_edges.len() {
            let a = half_edges[h].origin;
            let b = half_edges[half_edges[h].next].origin;
            half_edges[h].twin = directed[&(b, a)];
        }
        let mut vertex_out = vec![usize::MAX; vertices.len()];
        for (h, he) in half_edges.iter().enumerate() {
            if vertex_out[he.origin] == usize::MAX {
                vertex_out[he.origin] = h;
            }
        }
        Mesh {
            vertices,
            faces,
            half_edges,
            face_start,
            vertex_out,
        }
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn vertex(&self, v: VertexId) -> Vec3 {
        self.vertices[v]
    }

    pub fn faces(&self) -> &[Vec<VertexId>] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &[VertexId] {
        &self.faces[f]
    }

    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.half_edges
    }

    pub fn half_edge(&self, h: HalfEdgeId) -> &HalfEdge {
        &self.half_edges[h]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn num_edges(&self) -> usize {
        self.half_edges.len() / 2
    }

    /// Destination vertex of a half-edge.
    pub fn target(&self, h: HalfEdgeId) -> VertexId {
        self.half_edges[self.half_edges[h].next].origin
    }

    /// Half-edge leaving corner `corner` of face `f`.
    pub fn corner_half_edge(&self, f: FaceId, corner: usize) -> HalfEdgeId {
        self.face_start[f] + corner
    }

    /// Inverse of [`Mesh::corner_half_edge`]: the corner index of `h` in its face.
    pub fn half_edge_corner(&self, h: HalfEdgeId) -> usize {
        h - self.face_start[self.half_edges[h].face]
    }

    pub fn outgoing(&self, v: VertexId) -> HalfEdgeId {
        self.vertex_out[v]
    }

    /// Next outgoing half-edge counter-clockwise around `origin(h)`.
    pub fn rotate_ccw(&self, h: HalfEdgeId) -> HalfEdgeId {
        self.half_edges[self.half_edges[h].prev].twin
    }

    /// Outgoing half-edges of `v` in counter-clockwise order, starting at
    /// its lowest-numbered one.
    pub fn vertex_ring(&self, v: VertexId) -> Vec<HalfEdgeId> {
        let start = self.vertex_out[v];
        let mut ring = vec![start];
        let mut h = self.rotate_ccw(start);
        while h != start {
            ring.push(h);
            h = self.rotate_ccw(h);
        }
        ring
    }

    pub fn valence(&self, v: VertexId) -> usize {
        self.vertex_ring(v).len()
    }

    pub fn is_all_quads(&self) -> bool {
        is_all_quads(self)
    }

    /// Undirected edges as `(half-edge, twin)` pairs, each listed once with
    /// the half-edge of lower id first.
    pub fn edges(&self) -> Vec<(HalfEdgeId, HalfEdgeId)> {
        self.half_edges
            .iter()
            .enumerate()
            .filter(|(h, he)| *h < he.twin)
            .map(|(h, he)| (h, he.twin))
            .collect()
    }
}

pub fn is_all_quads(mesh: &Mesh) -> bool {
    mesh.faces.iter().all(|f| f.len() == 4)
}

/// Checks that every half-edge is twinned and that orientation is
/// consistent. Defects are returned as data.
pub fn validate_closed(mesh: &Mesh) -> ValidationReport {
    validate_faces(mesh.vertices.len(), &mesh.faces)
}

/// Validation on raw face lists, usable before connectivity exists.
pub fn validate_faces(num_vertices: usize, faces: &[Vec<VertexId>]) -> ValidationReport {
    let mut defects = Vec::new();
    let mut used = vec![false; num_vertices];
    for (fi, face) in faces.iter().enumerate() {
        if face.len() < 3 {
            defects.push(Defect::DegenerateFace { face: fi });
        }
        for (k, &v) in face.iter().enumerate() {
            if v >= num_vertices {
                defects.push(Defect::IndexOutOfRange { face: fi, index: v });
                continue;
            }
            used[v] = true;
            if face[..k].contains(&v) {
                defects.push(Defect::RepeatedVertex {
                    face: fi,
                    vertex: v,
                });
            }
        }
    }
    if !defects.is_empty() {
        return ValidationReport { defects };
    }
    for (v, u) in used.iter().enumerate() {
        if !u {
            defects.push(Defect::IsolatedVertex { vertex: v });
        }
    }

    // Directed and undirected edge multiplicities, in first-seen order for
    // deterministic reports.
    let mut directed: HashMap<(VertexId, VertexId), usize> = HashMap::new();
    let mut undirected: HashMap<(VertexId, VertexId), usize> = HashMap::new();
    let mut order = Vec::new();
    for face in faces {
        let m = face.len();
        for k in 0..m {
            let (a, b) = (face[k], face[(k + 1) % m]);
            *directed.entry((a, b)).or_default() += 1;
            let key = (a.min(b), a.max(b));
            let c = undirected.entry(key).or_default();
            if *c == 0 {
                order.push(key);
            }
            *c += 1;
        }
    }
    let mut edge_ok = true;
    for &(a, b) in &order {
        let count = undirected[&(a, b)];
        let ab = directed.get(&(a, b)).copied().unwrap_or(0);
        let ba = directed.get(&(b, a)).copied().unwrap_or(0);
        if count > 2 {
            defects.push(Defect::NonManifoldEdge { a, b, faces: count });
            edge_ok = false;
        } else if count == 1 {
            let (from, to) = if ab == 1 { (a, b) } else { (b, a) };
            defects.push(Defect::BoundaryEdge { from, to });
            edge_ok = false;
        } else if ab != 1 || ba != 1 {
            let (from, to) = if ab == 2 { (a, b) } else { (b, a) };
            defects.push(Defect::InconsistentOrientation { from, to });
            edge_ok = false;
        }
    }
    if !edge_ok {
        return ValidationReport { defects };
    }

    // Every edge is twinned: check that each vertex has a single fan.
    let mesh = Mesh::build_unchecked(vec![Vec3::zeros(); num_vertices], faces.to_vec());
    let mut outgoing_count = vec![0usize; num_vertices];
    for he in &mesh.half_edges {
        outgoing_count[he.origin] += 1;
    }
    for v in 0..num_vertices {
        if outgoing_count[v] == 0 {
            continue;
        }
        let fan = mesh.vertex_ring(v).len();
        if fan != outgoing_count[v] {
            defects.push(Defect::NonManifoldVertex { vertex: v });
        } else if fan < 3 {
            defects.push(Defect::LowValence {
                vertex: v,
                valence: fan,
            });
        }
    }
    ValidationReport { defects }
}

/// One vertex's 1-ring: center `m`, edge neighbours `e` and diagonal
/// neighbours `c`, counter-clockwise from outside. `e[i]` lies between
/// `c[i-1]` and `c[i]` (indices mod n).
#[derive(Debug, Clone, PartialEq)]
pub struct ControlNet {
    pub m: Vec3,
    pub e: Vec<Vec3>,
    pub c: Vec<Vec3>,
}

impl ControlNet {
    pub fn new(m: Vec3, e: Vec<Vec3>, c: Vec<Vec3>) -> Self {
        assert_eq!(e.len(), c.len(), "edge and corner rings differ in length");
        ControlNet { m, e, c }
    }

    pub fn valence(&self) -> usize {
        self.e.len()
    }

    pub fn c_prev(&self, i: usize) -> Vec3 {
        let n = self.c.len();
        self.c[(i + n - 1) % n]
    }

    /// The same ring relabelled so that index `offset` becomes index 0.
    pub fn rotated(&self, offset: usize) -> Self {
        let n = self.valence();
        let pick = |v: &[Vec3]| (0..n).map(|i| v[(i + offset) % n]).collect();
        ControlNet {
            m: self.m,
            e: pick(&self.e),
            c: pick(&self.c),
        }
    }

    pub fn map_points(&self, f: impl Fn(Vec3) -> Vec3) -> Self {
        ControlNet {
            m: f(self.m),
            e: self.e.iter().map(|&p| f(p)).collect(),
            c: self.c.iter().map(|&p| f(p)).collect(),
        }
    }
}

/// Net of the ring walk that starts at outgoing half-edge `start`.
pub(crate) fn ring_net(mesh: &Mesh, start: HalfEdgeId) -> Result<ControlNet, MeshError> {
    let m = mesh.half_edge(start).origin;
    let mut e = Vec::new();
    let mut c = Vec::new();
    let mut h = start;
    loop {
        let next = mesh.half_edge(h).next;
        if mesh.face(mesh.half_edge(h).face).len() == 4 {
            // quad: M -> E -> C -> E'
            e.push(mesh.vertex(mesh.target(h)));
            c.push(mesh.vertex(mesh.target(next)));
        } else {
            return Err(MeshError::NotQuad {
                face: mesh.half_edge(h).face,
            });
        }
        h = mesh.rotate_ccw(h);
        if h == start {
            break;
        }
    }
    if e.len() < 3 {
        return Err(MeshError::LowValence {
            vertex: m,
            valence: e.len(),
        });
    }
    Ok(ControlNet::new(mesh.vertex(m), e, c))
}

#[cfg(test)]
pub(crate) mod test_meshes {
    use super::*;

    pub fn cube_faces() -> Vec<Vec<VertexId>> {
        vec![
            vec![0, 3, 2, 1],
            vec![4, 5, 6, 7],
            vec![0, 1, 5, 4],
            vec![1, 2, 6, 5],
            vec![2, 3, 7, 6],
            vec![3, 0, 4, 7],
        ]
    }

    pub fn cube_vertices() -> Vec<Vec3> {
        vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(1.0, 1.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(0.0, 0.0, 1.0),
            Vec3::new(1.0, 0.0, 1.0),
            Vec3::new(1.0, 1.0, 1.0),
            Vec3::new(0.0, 1.0, 1.0),
        ]
    }
}
