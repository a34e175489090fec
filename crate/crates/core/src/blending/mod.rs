//! Hermite blending of the four corner interpolants of a quad.
//!
//! Corner `j` of a quad sits at `(0,0)`, `(1,0)`, `(1,1)`, `(0,1)` for
//! `j = 0..4` and sees the quad through its own rotated parameters (see
//! [`local_params`]). The patch is
//!
//! ```text
//! S(u, v) = Σ_j I_j(map_j(u_j, v_j)) Φ(u_j, v_j),   Φ(u, v) = Ψ(u) Ψ(v)
//! ```
//!
//! where `Ψ(t) = Σ_{i=0..k} B_i^{2k+1}(t)`.

mod patch;
mod surface;

pub use patch::{build_patch, eval_patch, Corner, CornerMap, QuadPatch};
pub use surface::{MapMode, Surface, SurfaceOptions};

use thiserror::Error;

use crate::bernstein::bernstein;
use crate::interpolants::InterpolantError;
use crate::mesh::MeshError;
use crate::parameterization::MapError;

#[derive(Debug, Error)]
pub enum BlendError {
    #[error("blend order k must be at least 1, got {0}")]
    BadOrder(usize),
    #[error("patch parameter ({u}, {v}) outside the unit square")]
    OutOfRange { u: f64, v: f64 },
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Interpolant(#[from] InterpolantError),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Smoothness order of the Hermite blend.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlendParams {
    k: usize,
}

impl BlendParams {
    pub fn new(k: usize) -> Result<Self, BlendError> {
        if k < 1 {
            return Err(BlendError::BadOrder(k));
        }
        Ok(BlendParams { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

impl Default for BlendParams {
    fn default() -> Self {
        BlendParams { k: 2 }
    }
}

/// One-argument blend: 1 at `t = 0`, 0 at `t = 1`, with its first `k`
/// derivatives vanishing at both ends.
pub fn psi(t: f64, k: usize) -> f64 {
    let d = 2 * k + 1;
    (0..=k).map(|i| bernstein(d, i, t)).sum()
}

pub fn phi(u: f64, v: f64, k: usize) -> f64 {
    psi(u, k) * psi(v, k)
}

/// Parameters of corner `j` for the quad point `(u, v)`.
pub fn local_params(corner: usize, u: f64, v: f64) -> (f64, f64) {
    match corner % 4 {
        0 => (u, v),
        1 => (v, 1.0 - u),
        2 => (1.0 - u, 1.0 - v),
        _ => (1.0 - v, u),
    }
}

/// Quad parameters of the point at fraction `t` along quad edge `edge`,
/// which runs from corner `edge` to corner `edge + 1`.
pub fn edge_params(edge: usize, t: f64) -> (f64, f64) {
    match edge % 4 {
        0 => (t, 0.0),
        1 => (1.0, t),
        2 => (1.0 - t, 1.0),
        _ => (0.0, 1.0 - t),
    }
}
