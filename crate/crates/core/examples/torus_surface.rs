//! A regular quad mesh: every corner uses the tensor-product interpolant and
//! the patches join smoothly.
//!
//! ```bash
//! cargo run --release --example torus_surface [output.obj]
//! ```

use std::error::Error;
use std::fs::File;
use std::io::BufWriter;

use polyblend::blending::{Surface, SurfaceOptions};
use polyblend::fixtures;
use polyblend::interrogation::{continuity_audit, export, tessellate, Attribute, ExportFormat};
use polyblend::mesh::QuadMesh;
use polyblend::Vec3;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cage = QuadMesh::from_quads(fixtures::torus(8, 16, 3.0, 1.0))?;
    let surface = Surface::build(cage, SurfaceOptions::default())?;
    println!(
        "{} patches, interpolants: {:?}",
        surface.patches().len(),
        surface.interpolant_kinds()
    );

    let audit = continuity_audit(&surface, 17)?;
    println!(
        "across {} edges: max gap {:.1e}, max normal angle {:.1e} rad",
        audit.edges, audit.max_edge_gap, audit.max_normal_angle
    );

    let tess = tessellate(&surface, 8)?;
    let path = std::env::args()
        .nth(1)
        .map(Into::into)
        .unwrap_or_else(|| std::env::temp_dir().join("torus_surface.obj"));
    let mut out = BufWriter::new(File::create(&path)?);
    export(
        &tess,
        ExportFormat::Obj,
        Attribute::Isophote,
        Vec3::new(1.0, 1.0, 2.0),
        &mut out,
    )?;
    println!(
        "wrote {} ({} vertices, {} triangles)",
        path.display(),
        tess.num_vertices(),
        tess.triangles.len()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
