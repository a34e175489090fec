//! Turn an arbitrary closed mesh into quads and inspect the control nets.
//!
//! ```bash
//! cargo run --example central_split
//! ```

use std::collections::BTreeMap;
use std::error::Error;

use polyblend::fixtures;
use polyblend::mesh::{central_split, VertexTag};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let ico = fixtures::icosahedron();
    let quads = central_split(&ico);
    let mesh = quads.mesh();
    println!(
        "icosahedron: {} triangles -> {} quads, {} vertices",
        ico.num_faces(),
        quads.num_quads(),
        mesh.num_vertices()
    );

    let mut by_tag: BTreeMap<(usize, String), usize> = BTreeMap::new();
    for (v, tag) in quads.tags().iter().enumerate() {
        let name = match tag {
            VertexTag::Original => "original",
            VertexTag::EdgePoint => "edge point",
            VertexTag::FacePoint => "face point",
        };
        *by_tag
            .entry((mesh.valence(v), name.to_string()))
            .or_default() += 1;
    }
    for ((valence, name), count) in by_tag {
        println!("  {count:>2} {name}s of valence {valence}");
    }

    // The 1-ring of the first corner of quad 0, in the order interpolants use.
    let net = quads.corner_net(0, 0)?;
    println!(
        "corner net of quad 0, corner 0 (valence {}):",
        net.valence()
    );
    println!("  M  = {:.4?}", net.m.as_slice());
    for i in 0..net.valence() {
        println!(
            "  E{i} = {:.4?}  C{i} = {:.4?}",
            net.e[i].as_slice(),
            net.c[i].as_slice()
        );
    }
    let offset = quads.corner_ring_offset(0, 0);
    assert_eq!(net, quads.vertex_net(quads.quad(0)[0])?.rotated(offset));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
