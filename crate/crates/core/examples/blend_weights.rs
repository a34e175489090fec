//! The Hermite blend functions that combine the four corner interpolants.
//!
//! ```bash
//! cargo run --example blend_weights
//! ```

use std::error::Error;

use polyblend::blending::{local_params, phi, psi};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    println!("   t    k=1      k=2      k=3");
    for i in 0..=8 {
        let t = i as f64 / 8.0;
        println!(
            "{t:.3}  {:.5}  {:.5}  {:.5}",
            psi(t, 1),
            psi(t, 2),
            psi(t, 3)
        );
    }

    let (u, v) = (0.3, 0.7);
    let weights: Vec<f64> = (0..4)
        .map(|j| {
            let (a, b) = local_params(j, u, v);
            phi(a, b, 2)
        })
        .collect();
    println!(
        "corner weights at ({u}, {v}): {:.4?}, sum {:.15}",
        weights,
        weights.iter().sum::<f64>()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
