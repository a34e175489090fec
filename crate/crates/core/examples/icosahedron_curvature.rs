//! Irregular vertices: the split icosahedron has 3-, 4- and 5-valent
//! vertices. Compare the grid and exact kite parameterizations and export the
//! exact-mode mean curvature to PLY.
//!
//! The grid lookup is bilinear, so the map it feeds into the corner
//! interpolants is only continuous across grid cells. Positions are fine, but
//! second derivatives pick up spikes at cell lines; use `MapMode::Exact` when
//! curvature is what you are looking at.
//!
//! ```bash
//! cargo run --release --example icosahedron_curvature [output.ply]
//! ```

use std::error::Error;
use std::fs::File;

use polyblend::blending::{MapMode, Surface, SurfaceOptions};
use polyblend::fixtures;
use polyblend::interrogation::{continuity_audit, tessellate, write_ply, Tessellation};
use polyblend::mesh::central_split;

fn percentiles(tess: &Tessellation) -> [f64; 3] {
    let mut h: Vec<f64> = tess
        .mean_curvature
        .iter()
        .copied()
        .filter(|h| h.is_finite())
        .collect();
    h.sort_by(f64::total_cmp);
    let at = |q: f64| h[((h.len() - 1) as f64 * q).round() as usize];
    [at(0.05), at(0.5), at(0.95)]
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let quads = central_split(&fixtures::icosahedron());
    let mut exact_tess = None;

    for (name, mode) in [("grid", MapMode::Grid), ("exact", MapMode::Exact)] {
        let opts = SurfaceOptions {
            map_mode: mode,
            ..SurfaceOptions::default()
        };
        let surface = Surface::build(quads.clone(), opts)?;
        if mode == MapMode::Grid {
            println!("vertices per valence: {:?}", surface.vertex_valences());
        }
        let audit = continuity_audit(&surface, 5)?;
        let tess = tessellate(&surface, 6)?;
        let [p5, p50, p95] = percentiles(&tess);
        println!(
            "{name:>5}: gap {:.1e}, normal angle {:.1e} rad, H p5/p50/p95 = {p5:.2}/{p50:.2}/{p95:.2}",
            audit.max_edge_gap, audit.max_normal_angle
        );
        if mode == MapMode::Exact {
            exact_tess = Some(tess);
        }
    }

    let tess = exact_tess.expect("exact mode ran");
    let path = std::env::args()
        .nth(1)
        .map(Into::into)
        .unwrap_or_else(|| std::env::temp_dir().join("icosahedron_curvature.ply"));
    write_ply(&tess, Some(&tess.mean_curvature), &mut File::create(&path)?)?;
    println!(
        "wrote {} ({} vertices)",
        path.display(),
        tess.num_vertices()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
