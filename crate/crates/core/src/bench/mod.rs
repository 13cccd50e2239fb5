//! Benchmark harness: sweeps images x noise levels x methods x trials, scores
//! each denoised result against the clean original, and writes CSV reports.
//!
//! Every trial draws its noise from a seed derived from the cell key (see
//! [`derive_seed`]), so results are independent of scheduling and worker
//! count. Rows come back sorted by image, sigma, method and trial.

mod config;
mod summary;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::image::Image;
use crate::metrics::{evaluate, MetricsMode, MetricsReport};
use crate::noise::{add_awgn, NoiseModel};
use crate::pgm::{load_pgm, save_pgm};
use crate::pipelines::{denoise, MethodConfig};
use crate::rng::hash_key;

pub use config::{parse_config_file, parse_list, parse_schedule, parse_sigma_mode, BenchSettings};
pub use summary::{summarize, GroupStats, PlotMetric, Summary};

/// Exact header of the per-trial CSV.
pub const CSV_HEADER: &str =
    "image_id,sigma,method,levels,trial,seed,mse,rmse,mae,psnr_db,uqi,runtime_ms";

pub const DEFAULT_SIGMAS: [f64; 5] = [10.0, 20.0, 30.0, 40.0, 50.0];
pub const DEFAULT_TRIALS: usize = 5;
pub const DEFAULT_MASTER_SEED: u64 = 20_160_101;

/// A benchmark input: a PGM on disk or an image already in memory.
#[derive(Clone, Debug)]
pub enum ImageSource {
    Path(PathBuf),
    Memory { id: String, image: Image },
}

impl ImageSource {
    /// File stem for paths, the given id otherwise.
    pub fn id(&self) -> String {
        match self {
            ImageSource::Path(p) => p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| p.display().to_string()),
            ImageSource::Memory { id, .. } => id.clone(),
        }
    }

    fn load(&self) -> Result<Image> {
        match self {
            ImageSource::Path(p) => load_pgm(p),
            ImageSource::Memory { image, .. } => Ok(image.clone()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub images: Vec<ImageSource>,
    pub sigmas: Vec<f64>,
    pub methods: Vec<MethodConfig>,
    pub trials: usize,
    pub master_seed: u64,
    pub save_images_dir: Option<PathBuf>,
    pub metrics_mode: MetricsMode,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    /// Measure wall time per trial. Off by default, in which case the
    /// `runtime_ms` column is 0 and output bytes are fully reproducible.
    pub record_runtime: bool,
}

impl BenchConfig {
    pub fn new(images: Vec<ImageSource>, methods: Vec<MethodConfig>) -> Self {
        BenchConfig {
            images,
            sigmas: DEFAULT_SIGMAS.to_vec(),
            methods,
            trials: DEFAULT_TRIALS,
            master_seed: DEFAULT_MASTER_SEED,
            save_images_dir: None,
            metrics_mode: MetricsMode::Clamped,
            jobs: None,
            record_runtime: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.images.is_empty() {
            return Err(Error::Config("no images".into()));
        }
        if self.sigmas.is_empty() {
            return Err(Error::Config("no noise levels".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::Config("no methods".into()));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be >= 1".into()));
        }
        if let Some(s) = self.sigmas.iter().find(|s| !(**s > 0.0) || !s.is_finite()) {
            return Err(Error::Config(format!("noise sigma must be > 0, got {s}")));
        }
        for m in &self.methods {
            m.validate()?;
        }
        Ok(())
    }
}

/// Noise seed of one trial: [`hash_key`] of the UTF-8 string
/// `"{master_seed}|{image_id}|{sigma}|{method}|{trial}"`, with `sigma` in
/// shortest round-trip decimal form (`10`, `12.5`) and `method` the short name.
pub fn derive_seed(
    master_seed: u64,
    image_id: &str,
    sigma: f64,
    method: &str,
    trial: usize,
) -> u64 {
    hash_key(format!("{master_seed}|{image_id}|{sigma}|{method}|{trial}").as_bytes())
}

/// One trial's scores, or the reason it could not run.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub image_id: String,
    pub sigma: f64,
    pub method: String,
    pub levels: usize,
    pub trial: usize,
    pub seed: u64,
    pub outcome: std::result::Result<MetricsReport, String>,
    pub runtime_ms: f64,
}

impl BenchRow {
    pub fn metrics(&self) -> Option<&MetricsReport> {
        self.outcome.as_ref().ok()
    }
}

struct Task<'a> {
    image_idx: usize,
    method_idx: usize,
    sigma: f64,
    trial: usize,
    method: &'a MethodConfig,
}

/// Runs the full grid. Per-cell failures become error rows; only an invalid
/// configuration aborts the run.
pub fn run_benchmark(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    config.validate()?;
    if let Some(dir) = &config.save_images_dir {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let loaded: Vec<(String, std::result::Result<Image, String>)> = config
        .images
        .iter()
        .map(|src| (src.id(), src.load().map_err(|e| e.to_string())))
        .collect();

    let mut tasks = Vec::new();
    for image_idx in 0..loaded.len() {
        for &sigma in &config.sigmas {
            for (method_idx, method) in config.methods.iter().enumerate() {
                for trial in 0..config.trials {
                    tasks.push(Task {
                        image_idx,
                        method_idx,
                        sigma,
                        trial,
                        method,
                    });
                }
            }
        }
    }

    let run = || -> Vec<(usize, usize, BenchRow)> {
        tasks
            .par_iter()
            .map(|t| {
                let (id, image) = &loaded[t.image_idx];
                (t.image_idx, t.method_idx, run_trial(config, id, image, t))
            })
            .collect()
    };
    let mut rows = match config.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    rows.sort_by(|a, b| {
        (a.2.image_id.as_str(), a.0)
            .cmp(&(b.2.image_id.as_str(), b.0))
            .then(a.2.sigma.total_cmp(&b.2.sigma))
            .then(a.1.cmp(&b.1))
            .then(a.2.trial.cmp(&b.2.trial))
    });
    Ok(rows.into_iter().map(|(_, _, r)| r).collect())
}

fn run_trial(
    config: &BenchConfig,
    id: &str,
    image: &std::result::Result<Image, String>,
    t: &Task<'_>,
) -> BenchRow {
    let method_name = t.method.method.name();
    let seed = derive_seed(config.master_seed, id, t.sigma, method_name, t.trial);
    let start = Instant::now();
    let outcome = image
        .clone()
        .and_then(|clean| score_trial(config, id, &clean, t, seed).map_err(|e| e.to_string()));
    let runtime_ms = if config.record_runtime {
        start.elapsed().as_secs_f64() * 1e3
    } else {
        0.0
    };
    BenchRow {
        image_id: id.to_string(),
        sigma: t.sigma,
        method: method_name.to_string(),
        levels: t.method.levels,
        trial: t.trial,
        seed,
        outcome,
        runtime_ms,
    }
}

fn score_trial(
    config: &BenchConfig,
    id: &str,
    clean: &Image,
    t: &Task<'_>,
    seed: u64,
) -> Result<MetricsReport> {
    let noisy = add_awgn(clean, &NoiseModel::new(t.sigma, seed)?);
    let out = denoise(&noisy, t.method, Some(t.sigma))?;
    if let Some(dir) = &config.save_images_dir {
        let name = format!(
            "{id}_s{}_{}_t{}.pgm",
            t.sigma,
            t.method.method.name(),
            t.trial
        );
        save_pgm(&out, dir.join(name))?;
    }
    evaluate(clean, &out, config.metrics_mode)
}

fn fmt_real(out: &mut String, v: f64) {
    if v.is_finite() {
        let _ = write!(out, "{v:.16e}");
    } else {
        let _ = write!(out, "{v}");
    }
}

/// Renders rows as CSV under [`CSV_HEADER`]. Metrics carry 17 significant
/// digits; error rows leave the metric columns empty.
pub fn rows_to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = write!(
            out,
            "{},{},{},{},{},{},",
            r.image_id, r.sigma, r.method, r.levels, r.trial, r.seed
        );
        match &r.outcome {
            Ok(m) => {
                for v in [m.mse, m.rmse, m.mae, m.psnr_db, m.uqi] {
                    fmt_real(&mut out, v);
                    out.push(',');
                }
            }
            Err(_) => out.push_str(",,,,,"),
        }
        let _ = writeln!(out, "{:.3}", r.runtime_ms);
    }
    out
}

pub fn write_csv(rows: &[BenchRow], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, rows_to_csv(rows)).map_err(|e| Error::io(path, e))
}

/// `(row, message)` for every failed trial.
pub fn errors(rows: &[BenchRow]) -> impl Iterator<Item = (&BenchRow, &str)> {
    rows.iter()
        .filter_map(|r| r.outcome.as_ref().err().map(|e| (r, e.as_str())))
}

#[cfg(test)]
mod tests;
