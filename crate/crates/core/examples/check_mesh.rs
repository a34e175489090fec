//! Validate meshes before building surfaces from them.
//!
//! ```bash
//! cargo run --example check_mesh
//! ```

use std::error::Error;
use std::fs::File;
use std::path::Path;

use polyblend::mesh::{load_mesh, parse_obj, validate_faces, MeshError, MeshFormat};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");

    let cube = load_mesh(File::open(data.join("cube.obj"))?, MeshFormat::Obj)?;
    println!(
        "cube: {} vertices, {} faces, {} edges",
        cube.num_vertices(),
        cube.num_faces(),
        cube.num_edges()
    );

    // The raw parser accepts open meshes; validation lists what is wrong.
    let (vertices, faces) = parse_obj(File::open(data.join("open_cube.obj"))?)?;
    let report = validate_faces(vertices.len(), &faces);
    println!("open cube: {} defect(s)", report.defects.len());
    for d in &report.defects {
        println!("  {d}");
    }

    // load_mesh refuses it outright.
    match load_mesh(File::open(data.join("open_cube.obj"))?, MeshFormat::Obj) {
        Err(e @ MeshError::Topology(_)) => println!("load_mesh: {e}"),
        other => return Err(format!("expected a topology error, got {other:?}").into()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
