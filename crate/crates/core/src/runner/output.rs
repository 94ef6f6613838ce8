//! File export.
//!
//! * `success.csv`: `step,mean_success,std_success,uniform_baseline`, one row
//!   per step `0..=T`.
//! * `distribution.csv`: `x,y,mean_time_averaged_probability`, one row per
//!   vertex in row-major order.
//! * `meta.json`: parameters, per-run seeds, version and a short summary.
//!
//! Floats are written in shortest round-trip form. Each file is written to a
//! temporary sibling and renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::params::WalkParams;
use crate::error::{Error, Result};
use crate::observables::EnsembleResult;

pub const SUCCESS_FILE: &str = "success.csv";
pub const DISTRIBUTION_FILE: &str = "distribution.csv";
pub const META_FILE: &str = "meta.json";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentOutput {
    pub success_csv: PathBuf,
    pub distribution_csv: PathBuf,
    pub meta_json: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub peak_mean_success: f64,
    pub peak_step: usize,
    pub marked_time_averaged_probability: f64,
    pub uniform_baseline: f64,
}

impl Summary {
    pub fn of(result: &EnsembleResult) -> Self {
        let (peak_step, peak_mean_success) = result.peak_mean_success();
        Summary {
            peak_mean_success,
            peak_step,
            marked_time_averaged_probability: result.marked_time_average(),
            uniform_baseline: result.uniform_baseline(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub version: String,
    pub params: WalkParams,
    pub run_seeds: Vec<u64>,
    pub summary: Summary,
}

#[derive(Serialize)]
struct SuccessRow {
    step: usize,
    mean_success: f64,
    std_success: f64,
    uniform_baseline: f64,
}

#[derive(Serialize)]
struct DistributionRow {
    x: usize,
    y: usize,
    mean_time_averaged_probability: f64,
}

fn write_atomic<F>(path: &Path, fill: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    {
        let mut buf = std::io::BufWriter::new(tmp.as_file_mut());
        fill(&mut buf)?;
        buf.flush().map_err(|e| Error::io(path, e))?;
    }
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

fn write_csv<R: Serialize>(path: &Path, rows: impl Iterator<Item = R>) -> Result<()> {
    write_atomic(path, |out| {
        let csv_err = |source| Error::Csv { path: path.to_owned(), source };
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        for row in rows {
            w.serialize(row).map_err(csv_err)?;
        }
        w.flush().map_err(|e| Error::io(path, e))
    })
}

pub fn write_output(result: &EnsembleResult, out_dir: impl AsRef<Path>) -> Result<ExperimentOutput> {
    let out_dir = out_dir.as_ref();
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let lattice = result.params.validate()?;
    let baseline = result.uniform_baseline();

    let output = ExperimentOutput {
        success_csv: out_dir.join(SUCCESS_FILE),
        distribution_csv: out_dir.join(DISTRIBUTION_FILE),
        meta_json: out_dir.join(META_FILE),
    };

    write_csv(
        &output.success_csv,
        result.mean_success.iter().zip(&result.std_success).enumerate().map(|(step, (&mean, &std))| SuccessRow {
            step,
            mean_success: mean,
            std_success: std,
            uniform_baseline: baseline,
        }),
    )?;

    write_csv(
        &output.distribution_csv,
        result.mean_averaged_distribution.iter().enumerate().map(|(i, &p)| {
            let v = lattice.vertex(i);
            DistributionRow { x: v.x, y: v.y, mean_time_averaged_probability: p }
        }),
    )?;

    let meta = Metadata {
        version: concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION")).to_string(),
        params: result.params.clone(),
        run_seeds: result.params.run_seeds(),
        summary: Summary::of(result),
    };
    write_atomic(&output.meta_json, |out| {
        serde_json::to_writer_pretty(&mut *out, &meta)
            .map_err(|source| Error::Json { path: output.meta_json.clone(), source })?;
        out.write_all(b"\n").map_err(|e| Error::io(&output.meta_json, e))
    })?;

    Ok(output)
}

pub fn read_metadata(path: impl AsRef<Path>) -> Result<Metadata> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|source| Error::Json { path: path.to_owned(), source })
}
