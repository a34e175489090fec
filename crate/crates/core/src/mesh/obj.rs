use std::io::{BufRead, BufReader, Read, Write};

use super::{Mesh, MeshError, VertexId};
use crate::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
}

/// Reads a mesh and builds its connectivity. Only `v` and `f` records are
/// interpreted; normals, texture coordinates and everything else are skipped.
pub fn load_mesh<R: Read>(stream: R, format: MeshFormat) -> Result<Mesh, MeshError> {
    match format {
        MeshFormat::Obj => {
            let (vertices, faces) = parse_obj(stream)?;
            Mesh::new(vertices, faces)
        }
    }
}

pub fn parse_obj<R: Read>(stream: R) -> Result<(Vec<Vec3>, Vec<Vec<VertexId>>), MeshError> {
    let reader = BufReader::new(stream);
    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| match e.kind() {
            std::io::ErrorKind::InvalidData => MeshError::Parse {
                line: lineno + 1,
                message: "invalid utf-8".into(),
            },
            _ => MeshError::Io(e),
        })?;
        let err = |message: String| MeshError::Parse {
            line: lineno + 1,
            message,
        };
        let line = line.split('#').next().unwrap_or("").trim();
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("v") => {
                let coords: Vec<f64> = tokens
                    .map(|t| {
                        t.parse::<f64>()
                            .map_err(|_| err(format!("bad coordinate {t:?}")))
                    })
                    .collect::<Result<_, _>>()?;
                if coords.len() < 3 || coords.len() > 4 {
                    return Err(err(format!(
                        "vertex needs 3 coordinates, got {}",
                        coords.len()
                    )));
                }
                if coords.iter().any(|c| !c.is_finite()) {
                    return Err(err("non-finite coordinate".into()));
                }
                vertices.push(Vec3::new(coords[0], coords[1], coords[2]));
            }
            Some("f") => {
                let mut face = Vec::new();
                for t in tokens {
                    let idx = t.split('/').next().unwrap_or("");
                    let i: usize = idx
                        .parse()
                        .map_err(|_| err(format!("bad face index {t:?}")))?;
                    if i == 0 {
                        return Err(err("face indices are 1-based".into()));
                    }
                    face.push(i - 1);
                }
                if face.len() < 3 {
                    return Err(err("face needs at least 3 vertices".into()));
                }
                faces.push(face);
            }
            _ => {}
        }
    }
    if faces.is_empty() {
        return Err(MeshError::Parse {
            line: 0,
            message: "no faces".into(),
        });
    }
    if let Some(&bad) = faces.iter().flatten().find(|&&i| i >= vertices.len()) {
        return Err(MeshError::Parse {
            line: 0,
            message: format!(
                "face index {} exceeds vertex count {}",
                bad + 1,
                vertices.len()
            ),
        });
    }
    Ok((vertices, faces))
}

/// Plain `v`/`f` OBJ output.
pub fn write_obj<W: Write>(mesh: &Mesh, out: &mut W) -> std::io::Result<()> {
    for p in mesh.vertices() {
        writeln!(out, "v {} {} {}", p.x, p.y, p.z)?;
    }
    for f in mesh.faces() {
        write!(out, "f")?;
        for &v in f {
            write!(out, " {}", v + 1)?;
        }
        writeln!(out)?;
    }
    Ok(())
}
