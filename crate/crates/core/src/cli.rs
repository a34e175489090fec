//! The `polyblend` command line: `check`, `map` and `build`.
//!
//! Settings for `map` and `build` come from flags, then an optional JSON
//! config file (`--config`), then built-in defaults, in that order of
//! precedence.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blending::{BlendError, BlendParams, MapMode, Surface, SurfaceOptions};
use crate::interrogation::{
    continuity_audit, export, tessellate, Attribute, ExportFormat, InterrogationError,
};
use crate::mesh::{central_split, parse_obj, validate_faces, Mesh, MeshError, QuadMesh};
use crate::parameterization::{Kite, MapError, MapGrid, DEFAULT_TOLERANCE};
use crate::Vec3;

/// Samples per shared edge in the continuity audit run by `build`.
pub const AUDIT_SAMPLES: usize = 33;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("mesh: {0}")]
    Mesh(#[from] MeshError),
    #[error("blending: {0}")]
    Blend(#[from] BlendError),
    #[error("interrogation: {0}")]
    Interrogation(#[from] InterrogationError),
    #[error("parameterization: {0}")]
    Map(#[from] MapError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("config: {0}")]
    Config(String),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "polyblend",
    version,
    about = "Vertex-interpolating surfaces over closed polygonal meshes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate that an OBJ file is a closed, consistently oriented manifold.
    Check {
        /// OBJ file to validate.
        input: PathBuf,
    },
    /// Precompute and cache the square-to-kite map grid for one valence.
    Map(MapArgs),
    /// Build, tessellate and export the surface of an OBJ mesh.
    Build(BuildArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitPolicy {
    /// Split unless the mesh is already all quads.
    Auto,
    /// Always apply the central split.
    Force,
    /// Never split; non-quad faces are an error.
    NoSplit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapModeArg {
    /// Bilinear lookup in a precomputed lattice.
    Grid,
    /// Solve every curve intersection directly.
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AttrArg {
    None,
    /// Mean curvature.
    Mean,
    /// Cosine between the normal and the light direction.
    Isophote,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormatArg {
    Obj,
    Ply,
}

fn parse_light(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [x, y, z] if (x * x + y * y + z * z) > 0.0 => Ok([x, y, z]),
        [_, _, _] => Err("light direction must be non-zero".into()),
        _ => Err(format!("expected x,y,z, got {} values", parts.len())),
    }
}

#[derive(Debug, Args)]
pub struct MapArgs {
    /// Valence of the polygonal domain.
    #[arg(long)]
    pub n: usize,
    /// Lattice points per side [default: 33].
    #[arg(long = "grid-res")]
    pub grid_res: Option<usize>,
    /// Intersection solver tolerance [default: 1e-10].
    #[arg(long)]
    pub tol: Option<f64>,
    /// Cache directory (default: current directory).
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// JSON file with defaults for the flags above.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Closed OBJ mesh.
    pub input: PathBuf,
    /// Tessellated surface is written here.
    #[arg(long)]
    pub out: PathBuf,
    /// Blend order [default: 2].
    #[arg(long)]
    pub k: Option<usize>,
    /// Samples per quad side [default: 17].
    #[arg(long)]
    pub res: Option<usize>,
    /// How quad corners are mapped onto kites [default: grid].
    #[arg(long = "map-mode", value_enum)]
    pub map_mode: Option<MapModeArg>,
    /// Kite map lattice points per side [default: 33].
    #[arg(long = "grid-res")]
    pub grid_res: Option<usize>,
    /// Intersection solver tolerance [default: 1e-10].
    #[arg(long)]
    pub tol: Option<f64>,
    /// [default: auto]
    #[arg(long, value_enum)]
    pub split: Option<SplitPolicy>,
    /// Per-vertex scalar to export [default: none].
    #[arg(long, value_enum)]
    pub attr: Option<AttrArg>,
    /// Light direction for isophotes, `x,y,z`.
    #[arg(long, value_parser = parse_light, allow_hyphen_values = true)]
    pub light: Option<[f64; 3]>,
    /// Directory for cached kite map grids; without it grids live in memory.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Output format; defaults to the extension of `--out`, else OBJ.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// JSON file with defaults for the flags above.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write the stats JSON here instead of standard output.
    #[arg(long)]
    pub stats: Option<PathBuf>,
}

/// Optional settings read from `--config`.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub k: Option<usize>,
    pub res: Option<usize>,
    pub map_mode: Option<MapModeArg>,
    pub grid_res: Option<usize>,
    pub tol: Option<f64>,
    pub split: Option<SplitPolicy>,
    pub attr: Option<AttrArg>,
    pub light: Option<[f64; 3]>,
    pub cache: Option<PathBuf>,
    pub format: Option<FormatArg>,
}

impl ConfigFile {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(ConfigFile::default());
        };
        let text = fs::read_to_string(path).map_err(io_err(path))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

/// Fully resolved settings of a `build` run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: PathBuf,
    pub output: PathBuf,
    pub k: usize,
    pub resolution: usize,
    pub map_mode: MapMode,
    pub grid_resolution: usize,
    pub tolerance: f64,
    pub split: SplitPolicy,
    pub attribute: Attribute,
    pub light: Vec3,
    pub cache_dir: Option<PathBuf>,
    pub format: ExportFormat,
}

impl RunConfig {
    pub fn resolve(args: &BuildArgs) -> Result<Self, CliError> {
        let file = ConfigFile::load(args.config.as_deref())?;
        let format = args.format.or(file.format).unwrap_or_else(|| {
            match args.out.extension().and_then(|e| e.to_str()) {
                Some(e) if e.eq_ignore_ascii_case("ply") => FormatArg::Ply,
                _ => FormatArg::Obj,
            }
        });
        let light = args.light.or(file.light).unwrap_or([0.0, 0.0, 1.0]);
        let cfg = RunConfig {
            input: args.input.clone(),
            output: args.out.clone(),
            k: args.k.or(file.k).unwrap_or(2),
            resolution: args.res.or(file.res).unwrap_or(17),
            map_mode: match args.map_mode.or(file.map_mode).unwrap_or(MapModeArg::Grid) {
                MapModeArg::Grid => MapMode::Grid,
                MapModeArg::Exact => MapMode::Exact,
            },
            grid_resolution: args.grid_res.or(file.grid_res).unwrap_or(33),
            tolerance: args.tol.or(file.tol).unwrap_or(DEFAULT_TOLERANCE),
            split: args.split.or(file.split).unwrap_or(SplitPolicy::Auto),
            attribute: match args.attr.or(file.attr).unwrap_or(AttrArg::None) {
                AttrArg::None => Attribute::None,
                AttrArg::Mean => Attribute::Mean,
                AttrArg::Isophote => Attribute::Isophote,
            },
            light: Vec3::from(light),
            cache_dir: args.cache.clone().or(file.cache),
            format: match format {
                FormatArg::Obj => ExportFormat::Obj,
                FormatArg::Ply => ExportFormat::Ply,
            },
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.resolution < 1 {
            return Err(CliError::Config("res must be at least 1".into()));
        }
        if self.k < 1 {
            return Err(CliError::Config("k must be at least 1".into()));
        }
        if self.grid_resolution < 1 {
            return Err(CliError::Config("grid-res must be at least 1".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(CliError::Config("tol must be positive".into()));
        }
        if !(self.light.norm() > 0.0) || !self.light.iter().all(|x| x.is_finite()) {
            return Err(CliError::Config(
                "light must be a finite non-zero direction".into(),
            ));
        }
        Ok(())
    }
}

/// Machine-readable summary printed by `build`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BuildStats {
    pub patches: usize,
    /// Mesh vertices per valence, after splitting.
    pub corner_kinds: BTreeMap<String, usize>,
    pub max_edge_gap: f64,
    pub max_normal_angle: f64,
    pub wall_time_ms: u128,
}

fn read_mesh(path: &Path) -> Result<Mesh, CliError> {
    let file = File::open(path).map_err(io_err(path))?;
    let (vertices, faces) = parse_obj(file)?;
    Ok(Mesh::new(vertices, faces)?)
}

fn prepare(mesh: Mesh, split: SplitPolicy) -> Result<QuadMesh, CliError> {
    match split {
        SplitPolicy::Force => Ok(central_split(&mesh)),
        SplitPolicy::Auto if !mesh.is_all_quads() => Ok(central_split(&mesh)),
        SplitPolicy::Auto | SplitPolicy::NoSplit => Ok(QuadMesh::from_quads(mesh)?),
    }
}

/// Runs the whole pipeline for one configuration and writes the output file.
pub fn cmd_build(cfg: &RunConfig) -> Result<BuildStats, CliError> {
    let start = Instant::now();
    let quads = prepare(read_mesh(&cfg.input)?, cfg.split)?;
    let options = SurfaceOptions {
        blend: BlendParams::new(cfg.k)?,
        map_mode: cfg.map_mode,
        tolerance: cfg.tolerance,
        grid_resolution: cfg.grid_resolution,
        cache_dir: cfg.cache_dir.clone(),
        force_kite: false,
    };
    let surface = Surface::build(quads, options)?;
    let tess = tessellate(&surface, cfg.resolution)?;

    let mut bytes = Vec::new();
    export(&tess, cfg.format, cfg.attribute, cfg.light, &mut bytes).map_err(io_err(&cfg.output))?;
    write_atomically(&cfg.output, &bytes)?;

    let audit = continuity_audit(&surface, AUDIT_SAMPLES)?;
    Ok(BuildStats {
        patches: surface.patches().len(),
        corner_kinds: surface
            .vertex_valences()
            .into_iter()
            .map(|(n, c)| (n.to_string(), c))
            .collect(),
        max_edge_gap: audit.max_edge_gap,
        max_normal_angle: audit.max_normal_angle,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

fn write_atomically(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err(path))?;
    tmp.write_all(bytes).map_err(io_err(path))?;
    tmp.persist(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        source: e.error,
    })?;
    Ok(())
}

/// Result of `map`: where the grid went and how well it was solved.
#[derive(Debug, Clone, PartialEq)]
pub struct MapReport {
    pub path: PathBuf,
    pub points: usize,
    pub max_residual: f64,
}

pub fn cmd_map(
    n: usize,
    resolution: usize,
    tolerance: f64,
    cache_dir: &Path,
) -> Result<MapReport, CliError> {
    if n < 3 {
        return Err(MapError::BadValence(n).into());
    }
    let (grid, max_residual) =
        MapGrid::precompute_with_residual(&Kite::new(n), resolution, tolerance)?;
    let path = grid.save(cache_dir)?;
    Ok(MapReport {
        path,
        points: grid.points.len(),
        max_residual,
    })
}

/// Exit status of `check`: 0 closed manifold, 1 defects found, 2 unreadable.
pub fn cmd_check(input: &Path, out: &mut dyn Write) -> io::Result<i32> {
    let parsed = File::open(input).map_err(MeshError::Io).and_then(parse_obj);
    let (vertices, faces) = match parsed {
        Ok(p) => p,
        Err(e) => {
            writeln!(out, "error: {}: {e}", input.display())?;
            return Ok(2);
        }
    };
    let report = validate_faces(vertices.len(), &faces);
    if report.is_ok() {
        writeln!(
            out,
            "ok: {} vertices, {} faces, closed and consistently oriented",
            vertices.len(),
            faces.len()
        )?;
        Ok(0)
    } else {
        writeln!(out, "{} defect(s):", report.defects.len())?;
        for d in &report.defects {
            writeln!(out, "  {d}")?;
        }
        Ok(1)
    }
}

/// Parses `args` (program name first) and runs the command, writing normal
/// output to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Check { input } => return cmd_check(&input, out).unwrap_or(2),
        Command::Map(a) => run_map(&a, out),
        Command::Build(a) => run_build(&a, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn run_map(a: &MapArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let file = ConfigFile::load(a.config.as_deref())?;
    let resolution = a.grid_res.or(file.grid_res).unwrap_or(33);
    let tolerance = a.tol.or(file.tol).unwrap_or(DEFAULT_TOLERANCE);
    let dir = a
        .cache
        .clone()
        .or(file.cache)
        .unwrap_or_else(|| PathBuf::from("."));
    if !(tolerance > 0.0) {
        return Err(CliError::Config("tol must be positive".into()));
    }
    let rep = cmd_map(a.n, resolution, tolerance, &dir)?;
    let stdout_err = |e| io_err(Path::new("<stdout>"))(e);
    writeln!(
        out,
        "wrote {} ({} points, max residual {:e})",
        rep.path.display(),
        rep.points,
        rep.max_residual
    )
    .map_err(stdout_err)?;
    Ok(())
}

fn run_build(a: &BuildArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(a)?;
    let stats = cmd_build(&cfg)?;
    let json = serde_json::to_string_pretty(&stats).expect("stats serialize");
    match &a.stats {
        Some(path) => fs::write(path, json + "\n").map_err(io_err(path)),
        None => {
            let mut w = BufWriter::new(out);
            writeln!(w, "{json}").map_err(io_err(Path::new("<stdout>")))
        }
    }
}

/// Entry point of the `polyblend` binary.
pub fn main() -> ! {
    let code = run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code)
}
