//! Square-to-kite parameterization.
//!
//! A quad corner with valence `n != 4` sees its parameter square through a
//! kite of the interpolant's regular n-gon. Each parameter value selects one
//! member of two pencils of rational quadratic curves; the image of `(u, v)`
//! is where the u-curve crosses the v-curve. The half `t < 1/2` of every
//! curve runs through the neighbouring kite, where it is that kite's curve of
//! the other family, so adjacent quads see one smooth parameterization of the
//! shared interpolant.
//!
//! The crossing is found with nested golden-section searches, which is slow
//! enough that production evaluation goes through a precomputed [`MapGrid`].

mod golden;
mod grid;
mod kite;
mod rational;

pub use golden::{golden_section_min, GoldenMin};
pub use grid::{grid_lookup, precompute_grid, GridFile, GridStore, MapGrid, GRID_FORMAT_VERSION};
pub use kite::{make_kite, Kite};
pub use rational::{eval_rational, u_curve, v_curve, RationalQuadCurve};

use thiserror::Error;

use crate::Vec2;

/// Iteration cap for each of the two nested searches.
pub const MAX_GOLDEN_ITERATIONS: usize = 200;

/// Interior solves clamp parameters to at least this, keeping the middle
/// weight `1/u` finite.
pub const MIN_PARAMETER: f64 = 1e-6;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum MapError {
    #[error("rational curve denominator vanishes at t = {t}")]
    ZeroDenominator { t: f64 },
    #[error("parameter ({u}, {v}) outside the unit square")]
    OutOfRange { u: f64, v: f64 },
    #[error("curve intersection did not converge: residual {residual:e} exceeds {limit:e}")]
    NoIntersection { residual: f64, limit: f64 },
    #[error("cannot intersect a degenerate (parameter 0) pencil member")]
    DegenerateCurve,
    #[error("grid resolution must be at least 1")]
    BadResolution,
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("valence {0} is too small for a kite")]
    BadValence(usize),
    #[error("grid cache i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("grid cache format: {0}")]
    Format(String),
}

/// Result of [`intersect_curves`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Intersection {
    pub t_a: f64,
    pub t_b: f64,
    pub point: Vec2,
    pub residual: f64,
}

/// Largest distance between the two curve points accepted for a search
/// tolerance `tol`.
pub fn residual_limit(tol: f64) -> f64 {
    (100.0 * tol).max(1e-13)
}

/// Crossing of two curves on their `t ∈ [1/2, 1]` arcs.
///
/// Outer search over `t_a`, inner over `t_b`, both minimizing the squared
/// distance `|a(t_a) - b(t_b)|²`. The returned point is the midpoint of the
/// two closest curve points.
///
/// A pencil member with a large middle weight moves quickly with `t` near its
/// ends, so the search interval is shrunk below `tol` by that weight; `tol`
/// then bounds the positional accuracy rather than the parameter accuracy.
pub fn intersect_curves(
    a: &RationalQuadCurve,
    b: &RationalQuadCurve,
    tol: f64,
) -> Result<Intersection, MapError> {
    if !(tol > 0.0) {
        return Err(MapError::BadTolerance(tol));
    }
    if a.is_degenerate() || b.is_degenerate() {
        return Err(MapError::DegenerateCurve);
    }
    let stretch = a.weights[1].max(b.weights[1]).max(1.0);
    let t_tol = (tol / stretch).max(1e-15);
    let closest_on_b = |pa: Vec2| {
        golden_section_min(
            |tb| (pa - b.eval_fast(tb)).norm_squared(),
            0.5,
            1.0,
            t_tol,
            MAX_GOLDEN_ITERATIONS,
        )
    };
    let outer = golden_section_min(
        |ta| closest_on_b(a.eval_fast(ta)).fx,
        0.5,
        1.0,
        t_tol,
        MAX_GOLDEN_ITERATIONS,
    );
    let pa = a.eval_fast(outer.x);
    let inner = closest_on_b(pa);
    let pb = b.eval_fast(inner.x);
    let residual = (pa - pb).norm();
    let limit = residual_limit(tol);
    if !(residual <= limit) {
        return Err(MapError::NoIntersection { residual, limit });
    }
    Ok(Intersection {
        t_a: outer.x,
        t_b: inner.x,
        point: (pa + pb) * 0.5,
        residual,
    })
}

/// Image of `(u, v)` in the kite.
///
/// The corners map exactly onto the kite corners. On the `u = 0` and `v = 0`
/// edges the pencil member of parameter 0 degenerates; there the image is the
/// midpoint `t = 1/2` of the other curve, which lies on the kite's straight
/// edge through the origin (each curve is symmetric about that line).
pub fn map_point(kite: &Kite, u: f64, v: f64, tol: f64) -> Result<Vec2, MapError> {
    solve_point(kite, u, v, tol).map(|(p, _)| p)
}

/// [`map_point`] together with the intersection residual (zero for the
/// corners and the `u = 0` / `v = 0` edges, which are evaluated directly).
pub fn solve_point(kite: &Kite, u: f64, v: f64, tol: f64) -> Result<(Vec2, f64), MapError> {
    const SLACK: f64 = 1e-12;
    if !(-SLACK..=1.0 + SLACK).contains(&u) || !(-SLACK..=1.0 + SLACK).contains(&v) {
        return Err(MapError::OutOfRange { u, v });
    }
    let (u, v) = (u.clamp(0.0, 1.0), v.clamp(0.0, 1.0));
    let k = &kite.v;
    let direct = match (u, v) {
        (u, v) if u == 0.0 && v == 0.0 => Vec2::zeros(),
        (u, v) if u == 1.0 && v == 0.0 => k[2],
        (u, v) if u == 0.0 && v == 1.0 => k[4],
        (u, v) if u == 1.0 && v == 1.0 => k[3],
        (u, v) if u == 0.0 => v_curve(kite, v).eval(0.5)?,
        (u, v) if v == 0.0 => u_curve(kite, u).eval(0.5)?,
        (u, v) => {
            let a = u_curve(kite, u.max(MIN_PARAMETER));
            let b = v_curve(kite, v.max(MIN_PARAMETER));
            let hit = intersect_curves(&a, &b, tol)?;
            return Ok((hit.point, hit.residual));
        }
    };
    Ok((direct, 0.0))
}

/// How a kite map obtains its values.
#[derive(Debug, Clone)]
pub enum MapSource {
    /// Solve every point with the nested golden-section search.
    Exact { tol: f64 },
    /// Bilinear lookup in a precomputed lattice.
    Grid(std::sync::Arc<MapGrid>),
}

/// A kite together with the way its map is evaluated.
#[derive(Debug, Clone)]
pub struct KiteMap {
    kite: Kite,
    source: MapSource,
}

impl KiteMap {
    pub fn exact(n: usize, tol: f64) -> Self {
        KiteMap {
            kite: Kite::new(n),
            source: MapSource::Exact { tol },
        }
    }

    pub fn with_grid(grid: std::sync::Arc<MapGrid>) -> Self {
        KiteMap {
            kite: Kite::new(grid.n),
            source: MapSource::Grid(grid),
        }
    }

    pub fn kite(&self) -> &Kite {
        &self.kite
    }

    pub fn source(&self) -> &MapSource {
        &self.source
    }

    pub fn map(&self, u: f64, v: f64) -> Result<Vec2, MapError> {
        match &self.source {
            MapSource::Exact { tol } => map_point(&self.kite, u, v, *tol),
            MapSource::Grid(g) => g.lookup(u, v),
        }
    }
}
