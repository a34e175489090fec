//! Tessellation, shape attributes and export.
//!
//! Derivatives are finite differences of the blended surface: the kite map
//! is defined by an iterative search and has no closed-form derivative.

mod audit;
mod derivatives;
mod export;
mod tessellate;

pub use audit::{continuity_audit, ContinuityReport};
pub use derivatives::{
    derivatives_of, isophote_value, mean_curvature, numeric_derivatives, Derivatives, DEFAULT_STEP,
};
pub use export::{export, write_obj, write_ply, Attribute, ExportFormat};
pub use tessellate::{tessellate, Sample, Tessellation, CORNER_OFFSET};

use thiserror::Error;

use crate::blending::BlendError;

#[derive(Debug, Error)]
pub enum InterrogationError {
    #[error("tessellation resolution must be at least 1")]
    BadResolution,
    #[error(transparent)]
    Blend(#[from] BlendError),
}
