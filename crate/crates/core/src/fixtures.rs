//! Small closed meshes used by the examples and tests.

use std::f64::consts::PI;

use crate::mesh::Mesh;
use crate::Vec3;

/// Axis-aligned unit cube, six outward-facing quads.
pub fn cube() -> Mesh {
    let v = [
        [0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0],
        [1.0, 1.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [1.0, 0.0, 1.0],
        [1.0, 1.0, 1.0],
        [0.0, 1.0, 1.0],
    ];
    let faces = vec![
        vec![0, 3, 2, 1],
        vec![4, 5, 6, 7],
        vec![0, 1, 5, 4],
        vec![1, 2, 6, 5],
        vec![2, 3, 7, 6],
        vec![3, 0, 4, 7],
    ];
    Mesh::new(v.iter().map(|p| Vec3::from(*p)).collect(), faces).expect("cube is closed")
}

pub fn tetrahedron() -> Mesh {
    let v = vec![
        Vec3::new(1.0, 1.0, 1.0),
        Vec3::new(1.0, -1.0, -1.0),
        Vec3::new(-1.0, 1.0, -1.0),
        Vec3::new(-1.0, -1.0, 1.0),
    ];
    let faces = vec![vec![0, 1, 2], vec![0, 3, 1], vec![0, 2, 3], vec![1, 3, 2]];
    Mesh::new(v, faces).expect("tetrahedron is closed")
}

/// Regular icosahedron inscribed in the unit sphere.
pub fn icosahedron() -> Mesh {
    let g = (1.0 + 5f64.sqrt()) / 2.0;
    let mut v = Vec::new();
    for &a in &[-1.0, 1.0] {
        for &b in &[-g, g] {
            v.push(Vec3::new(0.0, a, b));
            v.push(Vec3::new(a, b, 0.0));
            v.push(Vec3::new(b, 0.0, a));
        }
    }
    // faces are the vertex triples at mutual distance 2
    let mut faces = Vec::new();
    let adjacent = |i: usize, j: usize| ((v[i] - v[j]).norm() - 2.0).abs() < 1e-9;
    for i in 0..12 {
        for j in i + 1..12 {
            for k in j + 1..12 {
                if adjacent(i, j) && adjacent(j, k) && adjacent(i, k) {
                    let n = (v[j] - v[i]).cross(&(v[k] - v[i]));
                    if n.dot(&(v[i] + v[j] + v[k])) > 0.0 {
                        faces.push(vec![i, j, k]);
                    } else {
                        faces.push(vec![i, k, j]);
                    }
                }
            }
        }
    }
    let r = v[0].norm();
    let v = v.into_iter().map(|p| p / r).collect();
    Mesh::new(v, faces).expect("icosahedron is closed")
}

/// Quad torus with `minor` segments around the tube and `major` segments
/// around the axis (z).
pub fn torus(minor: usize, major: usize, major_radius: f64, minor_radius: f64) -> Mesh {
    let mut v = Vec::with_capacity(minor * major);
    for i in 0..major {
        let theta = 2.0 * PI * i as f64 / major as f64;
        for j in 0..minor {
            let phi = 2.0 * PI * j as f64 / minor as f64;
            let rho = major_radius + minor_radius * phi.cos();
            v.push(Vec3::new(
                rho * theta.cos(),
                rho * theta.sin(),
                minor_radius * phi.sin(),
            ));
        }
    }
    let idx = |i: usize, j: usize| (i % major) * minor + (j % minor);
    let mut faces = Vec::with_capacity(minor * major);
    for i in 0..major {
        for j in 0..minor {
            faces.push(vec![
                idx(i, j),
                idx(i + 1, j),
                idx(i + 1, j + 1),
                idx(i, j + 1),
            ]);
        }
    }
    Mesh::new(v, faces).expect("torus is closed")
}

/// Tetrahedron with one vertex replaced by a quad fan: a mixed mesh with
/// both triangles and quads.
pub fn square_pyramid() -> Mesh {
    let v = vec![
        Vec3::new(-1.0, -1.0, 0.0),
        Vec3::new(1.0, -1.0, 0.0),
        Vec3::new(1.0, 1.0, 0.0),
        Vec3::new(-1.0, 1.0, 0.0),
        Vec3::new(0.0, 0.0, 1.0),
    ];
    let faces = vec![
        vec![0, 3, 2, 1],
        vec![0, 1, 4],
        vec![1, 2, 4],
        vec![2, 3, 4],
        vec![3, 0, 4],
    ];
    Mesh::new(v, faces).expect("pyramid is closed")
}

/// Signed volume via the divergence theorem; positive for outward faces.
pub fn signed_volume(mesh: &Mesh) -> f64 {
    let mut vol = 0.0;
    for f in mesh.faces() {
        let p0 = mesh.vertex(f[0]);
        for k in 1..f.len() - 1 {
            let (p1, p2) = (mesh.vertex(f[k]), mesh.vertex(f[k + 1]));
            vol += p0.dot(&p1.cross(&p2)) / 6.0;
        }
    }
    vol
}
