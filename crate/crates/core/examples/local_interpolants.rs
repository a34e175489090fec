//! Build the three kinds of local interpolant and check that each passes
//! through its control net.
//!
//! ```bash
//! cargo run --example local_interpolants
//! ```

use std::error::Error;
use std::f64::consts::PI;

use polyblend::interpolants::{build_interpolant, RegularPolygon};
use polyblend::mesh::ControlNet;
use polyblend::{Vec2, Vec3};

/// A bumpy ring around the origin: edge neighbours on a circle of radius 1,
/// diagonal neighbours on radius 1.4, heights alternating.
fn ring(n: usize) -> ControlNet {
    let at = |r: f64, a: f64, z: f64| Vec3::new(r * a.cos(), r * a.sin(), z);
    let e = (0..n)
        .map(|i| at(1.0, 2.0 * PI * i as f64 / n as f64, 0.1 * (i % 2) as f64))
        .collect();
    let c = (0..n)
        .map(|i| at(1.4, 2.0 * PI * (i as f64 + 0.5) / n as f64, -0.2))
        .collect();
    ControlNet::new(Vec3::new(0.0, 0.0, 0.3), e, c)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for n in [3, 4, 5, 6] {
        let net = ring(n);
        let interp = build_interpolant(&net)?;
        let poly = RegularPolygon::new(n);
        let mut worst: f64 = (interp.eval_polygon(Vec2::zeros())? - net.m).norm();
        for k in 0..n {
            worst = worst.max((interp.eval_polygon(poly.vertex(k))? - net.c[k]).norm());
            worst = worst.max((interp.eval_polygon(poly.side_midpoint(k))? - net.e[k]).norm());
        }
        let inside = interp.eval_polygon(Vec2::new(0.2, -0.1))?;
        println!(
            "n = {n}: {:?}, max data error {worst:.1e}, value at (0.2, -0.1) = {:.4?}",
            interp.kind(),
            inside.as_slice()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
