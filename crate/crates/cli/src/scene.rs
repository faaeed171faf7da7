//! Scene files: JSON descriptions of a body, a measure, and optional run
//! parameters. Unknown fields are rejected so that typos in density specs
//! cannot silently corrupt an experiment.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use sha2::{Digest, Sha256};

use conic2d::geometry::{CompactBody, Point2};
use conic2d::measure::{BodyMeasure, Density1, GeneralDensity, MeasureKind};
use conic2d::ConicFunction;

use crate::CliError;

fn default_resolution() -> usize {
    conic2d::measure::DEFAULT_RESOLUTION
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub body: BodySpec,
    pub measure: MeasureSpec,
    #[serde(default)]
    pub run: Option<RunSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
pub enum BodySpec {
    Rectangle {
        xmin: f64,
        ymin: f64,
        xmax: f64,
        ymax: f64,
    },
    Disk {
        center: [f64; 2],
        radius: f64,
    },
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
    GridMask {
        origin: [f64; 2],
        cell_size: f64,
        /// Rows bottom-up; any non-zero entry marks a filled cell.
        mask: Vec<Vec<u8>>,
        #[serde(default)]
        connected: bool,
    },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MeasureSpec {
    Uniform {
        #[serde(default = "default_resolution")]
        resolution: usize,
    },
    Density {
        density: Density2Spec,
        #[serde(default = "default_resolution")]
        resolution: usize,
    },
    Product {
        f1: Density1Spec,
        f2: Density1Spec,
        #[serde(default = "default_resolution")]
        resolution: usize,
    },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Density2Spec {
    Constant {
        value: f64,
    },
    Table {
        origin: [f64; 2],
        cell_width: f64,
        cell_height: f64,
        values: Vec<Vec<f64>>,
    },
    TableCsv {
        origin: [f64; 2],
        cell_width: f64,
        cell_height: f64,
        path: String,
    },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum Density1Spec {
    Const {
        lo: f64,
        hi: f64,
        value: f64,
    },
    Linear {
        lo: f64,
        hi: f64,
        v_lo: f64,
        v_hi: f64,
    },
    Table {
        breaks: Vec<f64>,
        values: Vec<f64>,
    },
    /// CSV rows `lo,hi,value`, contiguous in `lo`.
    TableCsv {
        path: String,
    },
}

/// Optional run parameters carried by the scene; command-line flags override.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    pub x0: Option<[f64; 2]>,
    pub t1: Option<f64>,
    pub gamma: Option<f64>,
    pub iters: Option<usize>,
    pub seed: Option<u64>,
    pub reps: Option<usize>,
    pub checkpoints: Option<Vec<usize>>,
}

/// A loaded scene: the conic function plus provenance metadata.
pub struct Scene {
    pub conic: ConicFunction,
    pub run: RunSpec,
    /// SHA-256 of the scene file bytes, hex-encoded.
    pub hash: String,
}

pub fn load_scene(path: &Path) -> Result<Scene, CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Input(format!("cannot read scene {}: {e}", path.display())))?;
    let file: SceneFile = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Input(format!("cannot parse scene {}: {e}", path.display())))?;
    let hash = hex_digest(&bytes);
    let base = path.parent().unwrap_or(Path::new("."));
    let body = build_body(file.body)?;
    let kind_res = build_measure(file.measure, base)?;
    let measure = BodyMeasure::new(body, kind_res.0, kind_res.1)?;
    Ok(Scene {
        conic: ConicFunction::new(measure),
        run: file.run.unwrap_or_default(),
        hash,
    })
}

fn hex_digest(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

fn build_body(spec: BodySpec) -> Result<CompactBody, CliError> {
    let body = match spec {
        BodySpec::Rectangle {
            xmin,
            ymin,
            xmax,
            ymax,
        } => CompactBody::rectangle(xmin, ymin, xmax, ymax)?,
        BodySpec::Disk { center, radius } => {
            CompactBody::disk(Point2::new(center[0], center[1]), radius)?
        }
        BodySpec::Polygon { vertices } => {
            CompactBody::simple_polygon(vertices.iter().map(|v| Point2::new(v[0], v[1])).collect())?
        }
        BodySpec::GridMask {
            origin,
            cell_size,
            mask,
            connected,
        } => CompactBody::grid_mask(
            Point2::new(origin[0], origin[1]),
            cell_size,
            mask.iter()
                .map(|row| row.iter().map(|&c| c != 0).collect())
                .collect(),
            connected,
        )?,
    };
    Ok(body)
}

fn build_measure(spec: MeasureSpec, base: &Path) -> Result<(MeasureKind, usize), CliError> {
    Ok(match spec {
        MeasureSpec::Uniform { resolution } => (MeasureKind::UniformOnBody, resolution),
        MeasureSpec::Density {
            density,
            resolution,
        } => (
            MeasureKind::GeneralDensity(build_density2(density, base)?),
            resolution,
        ),
        MeasureSpec::Product { f1, f2, resolution } => (
            MeasureKind::ProductDensity {
                f1: build_density1(f1, base)?,
                f2: build_density1(f2, base)?,
            },
            resolution,
        ),
    })
}

fn build_density2(spec: Density2Spec, base: &Path) -> Result<GeneralDensity, CliError> {
    let density = match spec {
        Density2Spec::Constant { value } => GeneralDensity::constant(value)?,
        Density2Spec::Table {
            origin,
            cell_width,
            cell_height,
            values,
        } => GeneralDensity::table(
            Point2::new(origin[0], origin[1]),
            cell_width,
            cell_height,
            values,
        )?,
        Density2Spec::TableCsv {
            origin,
            cell_width,
            cell_height,
            path,
        } => {
            let values = read_value_grid(&resolve(base, &path))?;
            GeneralDensity::table(
                Point2::new(origin[0], origin[1]),
                cell_width,
                cell_height,
                values,
            )?
        }
    };
    Ok(density)
}

fn build_density1(spec: Density1Spec, base: &Path) -> Result<Density1, CliError> {
    let density = match spec {
        Density1Spec::Const { lo, hi, value } => Density1::Const { lo, hi, value },
        Density1Spec::Linear { lo, hi, v_lo, v_hi } => Density1::Linear { lo, hi, v_lo, v_hi },
        Density1Spec::Table { breaks, values } => Density1::PiecewiseConst { breaks, values },
        Density1Spec::TableCsv { path } => read_segments(&resolve(base, &path))?,
    };
    density.validate()?;
    Ok(density)
}

fn resolve(base: &Path, path: &str) -> PathBuf {
    let p = Path::new(path);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

/// Rows of comma-separated values; row 0 is the bottom table row.
fn read_value_grid(path: &Path) -> Result<Vec<Vec<f64>>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Input(format!("cannot read density table {}: {e}", path.display()))
    })?;
    let mut rows = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: Result<Vec<f64>, _> = line.split(',').map(|s| s.trim().parse::<f64>()).collect();
        rows.push(row.map_err(|e| {
            CliError::Input(format!(
                "{}:{}: bad density value: {e}",
                path.display(),
                ln + 1
            ))
        })?);
    }
    Ok(rows)
}

/// CSV rows `lo,hi,value`, contiguous in `lo`, assembled into a piecewise
/// constant density.
fn read_segments(path: &Path) -> Result<Density1, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Input(format!("cannot read density table {}: {e}", path.display()))
    })?;
    let mut breaks: Vec<f64> = Vec::new();
    let mut values = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if cells.len() != 3 {
            return Err(CliError::Input(format!(
                "{}:{}: expected lo,hi,value",
                path.display(),
                ln + 1
            )));
        }
        let parse = |s: &str| {
            s.parse::<f64>().map_err(|e| {
                CliError::Input(format!("{}:{}: bad number: {e}", path.display(), ln + 1))
            })
        };
        let (lo, hi, v) = (parse(cells[0])?, parse(cells[1])?, parse(cells[2])?);
        if let Some(&last) = breaks.last() {
            if lo != last {
                return Err(CliError::Input(format!(
                    "{}:{}: segments must be contiguous ({lo} after {last})",
                    path.display(),
                    ln + 1
                )));
            }
        } else {
            breaks.push(lo);
        }
        breaks.push(hi);
        values.push(v);
    }
    Ok(Density1::PiecewiseConst { breaks, values })
}
