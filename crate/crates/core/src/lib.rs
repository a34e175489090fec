//! Vertex-interpolating parametric surfaces over closed polygonal meshes.
//!
//! Every quad of the (centrally split) input mesh becomes one patch that
//! blends four local interpolants, one per corner. Each interpolant is built
//! from its corner's 1-ring and passes through that ring's vertices, so the
//! final surface passes through every mesh vertex.
//!
//! The pipeline, module by module:
//!
//! 1. [`mesh`]: load, validate and split the input into quads.
//! 2. [`interpolants`]: build one local interpolant per vertex.
//! 3. [`parameterization`]: map a quad's parameter square into the
//!    interpolant's polygonal domain.
//! 4. [`blending`]: combine the four corner interpolants of each quad.
//! 5. [`interrogation`]: tessellate, measure curvature and isophotes, export.

pub mod bernstein;
pub mod blending;
pub mod cli;
pub mod fixtures;
pub mod interpolants;
pub mod interrogation;
pub mod mesh;
pub mod parameterization;

pub type Vec2 = nalgebra::Vector2<f64>;
pub type Vec3 = nalgebra::Vector3<f64>;
