use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{solve_point, Kite, MapError};
use crate::Vec2;

pub const GRID_FORMAT_VERSION: u32 = 1;

/// Kite map sampled on an `(r+1) × (r+1)` lattice, row-major with `u`
/// varying fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct MapGrid {
    pub n: usize,
    pub resolution: usize,
    pub tolerance: f64,
    pub points: Vec<Vec2>,
}

/// On-disk form of a [`MapGrid`].
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GridFile {
    pub format_version: u32,
    pub n: usize,
    pub resolution: usize,
    pub tolerance: f64,
    pub points: Vec<[f64; 2]>,
}

impl MapGrid {
    /// Solves every lattice point. Points are independent, so this runs in
    /// parallel; the result does not depend on scheduling.
    pub fn precompute(kite: &Kite, resolution: usize, tol: f64) -> Result<Self, MapError> {
        Self::precompute_with_residual(kite, resolution, tol).map(|(g, _)| g)
    }

    /// [`MapGrid::precompute`] that also returns the largest intersection
    /// residual over the lattice.
    pub fn precompute_with_residual(
        kite: &Kite,
        resolution: usize,
        tol: f64,
    ) -> Result<(Self, f64), MapError> {
        if resolution < 1 {
            return Err(MapError::BadResolution);
        }
        if !(tol > 0.0) {
            return Err(MapError::BadTolerance(tol));
        }
        let side = resolution + 1;
        let r = resolution as f64;
        let solved = (0..side * side)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx % side, idx / side);
                solve_point(kite, i as f64 / r, j as f64 / r, tol)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let residual = solved.iter().map(|s| s.1).fold(0.0, f64::max);
        let grid = MapGrid {
            n: kite.n,
            resolution,
            tolerance: tol,
            points: solved.into_iter().map(|s| s.0).collect(),
        };
        Ok((grid, residual))
    }

    pub fn at(&self, i: usize, j: usize) -> Vec2 {
        self.points[j * (self.resolution + 1) + i]
    }

    /// Bilinear interpolation of the four surrounding lattice points.
    pub fn lookup(&self, u: f64, v: f64) -> Result<Vec2, MapError> {
        const SLACK: f64 = 1e-12;
        if !(-SLACK..=1.0 + SLACK).contains(&u) || !(-SLACK..=1.0 + SLACK).contains(&v) {
            return Err(MapError::OutOfRange { u, v });
        }
        let r = self.resolution;
        let (x, y) = (u.clamp(0.0, 1.0) * r as f64, v.clamp(0.0, 1.0) * r as f64);
        let i = (x.floor() as usize).min(r - 1);
        let j = (y.floor() as usize).min(r - 1);
        let (fx, fy) = (x - i as f64, y - j as f64);
        let p00 = self.at(i, j);
        let p10 = self.at(i + 1, j);
        let p01 = self.at(i, j + 1);
        let p11 = self.at(i + 1, j + 1);
        if fx == 0.0 && fy == 0.0 {
            return Ok(p00);
        }
        Ok((p00 * (1.0 - fx) + p10 * fx) * (1.0 - fy) + (p01 * (1.0 - fx) + p11 * fx) * fy)
    }

    pub fn to_file(&self) -> GridFile {
        GridFile {
            format_version: GRID_FORMAT_VERSION,
            n: self.n,
            resolution: self.resolution,
            tolerance: self.tolerance,
            points: self.points.iter().map(|p| [p.x, p.y]).collect(),
        }
    }

    pub fn from_file(file: GridFile) -> Result<Self, MapError> {
        if file.format_version != GRID_FORMAT_VERSION {
            return Err(MapError::Format(format!(
                "unsupported format_version {}",
                file.format_version
            )));
        }
        let side = file.resolution + 1;
        if file.resolution < 1 || file.points.len() != side * side {
            return Err(MapError::Format(format!(
                "expected {} points for resolution {}, found {}",
                side * side,
                file.resolution,
                file.points.len()
            )));
        }
        Ok(MapGrid {
            n: file.n,
            resolution: file.resolution,
            tolerance: file.tolerance,
            points: file
                .points
                .into_iter()
                .map(|[x, y]| Vec2::new(x, y))
                .collect(),
        })
    }

    pub fn to_json(&self) -> Vec<u8> {
        serde_json::to_vec(&self.to_file()).expect("grid serializes")
    }

    pub fn from_json(bytes: &[u8]) -> Result<Self, MapError> {
        let file: GridFile =
            serde_json::from_slice(bytes).map_err(|e| MapError::Format(e.to_string()))?;
        Self::from_file(file)
    }

    /// Cache file name for one `(n, resolution, tolerance, format)` key.
    pub fn file_name(n: usize, resolution: usize, tol: f64) -> String {
        format!("kite-n{n}-r{resolution}-tol{tol:e}-v{GRID_FORMAT_VERSION}.json")
    }

    /// Writes the grid into `dir` via a temporary file and rename.
    pub fn save(&self, dir: &Path) -> Result<PathBuf, MapError> {
        fs::create_dir_all(dir)?;
        let path = dir.join(Self::file_name(self.n, self.resolution, self.tolerance));
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(&self.to_json())?;
        tmp.flush()?;
        tmp.persist(&path).map_err(|e| MapError::Io(e.error))?;
        Ok(path)
    }

    pub fn load(
        dir: &Path,
        n: usize,
        resolution: usize,
        tol: f64,
    ) -> Result<Option<Self>, MapError> {
        let path = dir.join(Self::file_name(n, resolution, tol));
        if !path.exists() {
            return Ok(None);
        }
        let grid = Self::from_json(&fs::read(&path)?)?;
        if grid.n != n || grid.resolution != resolution || grid.tolerance != tol {
            return Err(MapError::Format(format!(
                "{} does not match its key",
                path.display()
            )));
        }
        Ok(Some(grid))
    }
}

pub fn precompute_grid(kite: &Kite, resolution: usize, tol: f64) -> Result<MapGrid, MapError> {
    MapGrid::precompute(kite, resolution, tol)
}

pub fn grid_lookup(grid: &MapGrid, u: f64, v: f64) -> Result<Vec2, MapError> {
    grid.lookup(u, v)
}

/// Grids per valence, filled on demand and optionally backed by a cache
/// directory. Populate it before sharing; lookups afterwards are read-only.
#[derive(Debug, Clone)]
pub struct GridStore {
    resolution: usize,
    tolerance: f64,
    cache_dir: Option<PathBuf>,
    grids: BTreeMap<usize, Arc<MapGrid>>,
}

impl GridStore {
    pub fn new(resolution: usize, tolerance: f64, cache_dir: Option<PathBuf>) -> Self {
        GridStore {
            resolution,
            tolerance,
            cache_dir,
            grids: BTreeMap::new(),
        }
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn get(&self, n: usize) -> Option<Arc<MapGrid>> {
        self.grids.get(&n).cloned()
    }

    /// Returns the grid for valence `n`, loading it from the cache or
    /// computing (and caching) it if needed.
    pub fn ensure(&mut self, n: usize) -> Result<Arc<MapGrid>, MapError> {
        if n < 3 {
            return Err(MapError::BadValence(n));
        }
        if let Some(g) = self.grids.get(&n) {
            return Ok(g.clone());
        }
        let cached = match &self.cache_dir {
            Some(dir) => MapGrid::load(dir, n, self.resolution, self.tolerance)?,
            None => None,
        };
        let grid = match cached {
            Some(g) => g,
            None => {
                let g = MapGrid::precompute(&Kite::new(n), self.resolution, self.tolerance)?;
                if let Some(dir) = &self.cache_dir {
                    g.save(dir)?;
                }
                g
            }
        };
        let grid = Arc::new(grid);
        self.grids.insert(n, grid.clone());
        Ok(grid)
    }
}
