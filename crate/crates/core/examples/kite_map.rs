//! Map the unit square onto the kite of a pentagon, exactly and through a
//! cached grid.
//!
//! ```bash
//! cargo run --release --example kite_map
//! ```

use std::error::Error;

use polyblend::parameterization::{map_point, GridStore, Kite, KiteMap, DEFAULT_TOLERANCE};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let kite = Kite::new(5);
    println!(
        "pentagon kite corners: {:?}",
        kite.corners().map(|p| (p.x, p.y))
    );

    for &(u, v) in &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.5, 0.5), (0.25, 0.75)] {
        let p = map_point(&kite, u, v, DEFAULT_TOLERANCE)?;
        println!("  ({u:.2}, {v:.2}) -> ({:.6}, {:.6})", p.x, p.y);
    }

    // Grids are computed once per valence and cached on disk.
    let cache = tempfile::tempdir()?;
    let mut store = GridStore::new(33, DEFAULT_TOLERANCE, Some(cache.path().to_path_buf()));
    let grid_map = KiteMap::with_grid(store.ensure(5)?);
    let exact = KiteMap::exact(5, DEFAULT_TOLERANCE);
    let mut worst: f64 = 0.0;
    for i in 1..20 {
        for j in 1..20 {
            let (u, v) = (i as f64 / 20.0, j as f64 / 20.0);
            worst = worst.max((grid_map.map(u, v)? - exact.map(u, v)?).norm());
        }
    }
    println!("grid vs exact on a 19x19 interior lattice: max difference {worst:.2e}");
    for entry in std::fs::read_dir(cache.path())? {
        println!("cached: {}", entry?.file_name().to_string_lossy());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
