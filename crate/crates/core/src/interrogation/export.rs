use std::io::{self, Write};

use super::Tessellation;
use crate::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExportFormat {
    #[default]
    Obj,
    Ply,
}

/// Scalar written alongside positions and normals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Attribute {
    #[default]
    None,
    Mean,
    Isophote,
}

impl Tessellation {
    /// Values of `attribute` per vertex, `None` for [`Attribute::None`].
    pub fn attribute(&self, attribute: Attribute, light: Vec3) -> Option<Vec<f64>> {
        match attribute {
            Attribute::None => None,
            Attribute::Mean => Some(self.mean_curvature.clone()),
            Attribute::Isophote => Some(self.isophotes(light)),
        }
    }
}

pub fn export<W: Write>(
    tess: &Tessellation,
    format: ExportFormat,
    attribute: Attribute,
    light: Vec3,
    out: &mut W,
) -> io::Result<()> {
    let values = tess.attribute(attribute, light);
    match format {
        ExportFormat::Obj => write_obj(tess, values.as_deref(), out),
        ExportFormat::Ply => write_ply(tess, values.as_deref(), out),
    }
}

/// ASCII OBJ with `v`, `vn` and, when a scalar is given, `vt` records holding
/// it in the first texture coordinate. Indices of all three coincide.
pub fn write_obj<W: Write>(
    tess: &Tessellation,
    scalar: Option<&[f64]>,
    out: &mut W,
) -> io::Result<()> {
    let mut out = io::BufWriter::new(out);
    for p in &tess.positions {
        writeln!(out, "v {} {} {}", p.x, p.y, p.z)?;
    }
    if let Some(values) = scalar {
        for s in values {
            writeln!(out, "vt {} 0", s)?;
        }
    }
    for n in &tess.normals {
        writeln!(out, "vn {} {} {}", n.x, n.y, n.z)?;
    }
    for t in &tess.triangles {
        let [a, b, c] = t.map(|i| i + 1);
        if scalar.is_some() {
            writeln!(out, "f {a}/{a}/{a} {b}/{b}/{b} {c}/{c}/{c}")?;
        } else {
            writeln!(out, "f {a}//{a} {b}//{b} {c}//{c}")?;
        }
    }
    out.flush()
}

/// Binary little-endian PLY. The scalar, if any, is the float property
/// `quality`.
pub fn write_ply<W: Write>(
    tess: &Tessellation,
    scalar: Option<&[f64]>,
    out: &mut W,
) -> io::Result<()> {
    let mut out = io::BufWriter::new(out);
    writeln!(out, "ply")?;
    writeln!(out, "format binary_little_endian 1.0")?;
    writeln!(out, "element vertex {}", tess.num_vertices())?;
    for name in ["x", "y", "z", "nx", "ny", "nz"] {
        writeln!(out, "property float {name}")?;
    }
    if scalar.is_some() {
        writeln!(out, "property float quality")?;
    }
    writeln!(out, "element face {}", tess.triangles.len())?;
    writeln!(out, "property list uchar int vertex_indices")?;
    writeln!(out, "end_header")?;
    for (i, (p, n)) in tess.positions.iter().zip(&tess.normals).enumerate() {
        for x in [p.x, p.y, p.z, n.x, n.y, n.z] {
            out.write_all(&(x as f32).to_le_bytes())?;
        }
        if let Some(values) = scalar {
            out.write_all(&(values[i] as f32).to_le_bytes())?;
        }
    }
    for t in &tess.triangles {
        out.write_all(&[3u8])?;
        for &i in t {
            out.write_all(&(i as i32).to_le_bytes())?;
        }
    }
    out.flush()
}
