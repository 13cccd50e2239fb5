//! Full-reference quality metrics: MSE, RMSE, MAE, PSNR and UQI.

use crate::error::{Error, Result};
use crate::image::{clamp_display, Image};

/// Peak luminance of 8-bit images.
pub const PEAK: f64 = 255.0;

/// Whether images are clamped to `[0, 255]` before scoring.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MetricsMode {
    #[default]
    Clamped,
    Unclamped,
}

impl MetricsMode {
    pub fn name(self) -> &'static str {
        match self {
            MetricsMode::Clamped => "clamped",
            MetricsMode::Unclamped => "unclamped",
        }
    }
}

impl std::str::FromStr for MetricsMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "clamped" => Ok(MetricsMode::Clamped),
            "unclamped" => Ok(MetricsMode::Unclamped),
            other => Err(Error::Config(format!("unknown metrics mode {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricsReport {
    pub mse: f64,
    pub rmse: f64,
    pub mae: f64,
    /// `+inf` for identical images.
    pub psnr_db: f64,
    pub uqi: f64,
}

/// Per-pixel normalized `(mse, rmse, mae)`.
pub fn mse_rmse_mae(reference: &Image, test: &Image) -> Result<(f64, f64, f64)> {
    reference.same_dims(test)?;
    let (mut sq, mut abs) = (0.0, 0.0);
    for (a, b) in reference.data().iter().zip(test.data()) {
        let d = b - a;
        sq += d * d;
        abs += d.abs();
    }
    let n = reference.len() as f64;
    let mse = sq / n;
    Ok((mse, mse.sqrt(), abs / n))
}

/// `10 log10(255^2 / mse)`; `+inf` when `mse == 0`.
pub fn psnr_from_mse(mse: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (PEAK * PEAK / mse).log10()
    }
}

/// PSNR of the displayable images (both clamped to `[0, 255]`).
pub fn psnr(reference: &Image, test: &Image) -> Result<f64> {
    psnr_with(reference, test, MetricsMode::Clamped)
}

pub fn psnr_with(reference: &Image, test: &Image, mode: MetricsMode) -> Result<f64> {
    let (mse, _, _) = match mode {
        MetricsMode::Clamped => mse_rmse_mae(&clamp_display(reference), &clamp_display(test))?,
        MetricsMode::Unclamped => mse_rmse_mae(reference, test)?,
    };
    Ok(psnr_from_mse(mse))
}

/// Global universal quality index over the whole image, with `(MN - 1)`
/// normalized variances and covariance.
///
/// Degenerate cases: two constant images score 1 if equal and 0 otherwise;
/// a single constant image, or zero means on both sides, scores 0.
pub fn uqi(reference: &Image, test: &Image) -> Result<f64> {
    reference.same_dims(test)?;
    uqi_slices(reference.data(), test.data())
}

fn uqi_slices(f: &[f64], g: &[f64]) -> Result<f64> {
    let n = f.len();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "UQI needs at least 2 pixels".into(),
        ));
    }
    let nf = n as f64;
    let mf = f.iter().sum::<f64>() / nf;
    let mg = g.iter().sum::<f64>() / nf;
    let (mut vf, mut vg, mut cov) = (0.0, 0.0, 0.0);
    for (a, b) in f.iter().zip(g) {
        let (da, db) = (a - mf, b - mg);
        vf += da * da;
        vg += db * db;
        cov += da * db;
    }
    let denom = nf - 1.0;
    let (vf, vg, cov) = (vf / denom, vg / denom, cov / denom);

    if vf == 0.0 && vg == 0.0 {
        return Ok(if f == g { 1.0 } else { 0.0 });
    }
    let mean_sq = mf * mf + mg * mg;
    if vf == 0.0 || vg == 0.0 || mean_sq == 0.0 {
        return Ok(0.0);
    }
    let (sf, sg) = (vf.sqrt(), vg.sqrt());
    let correlation = cov / (sf * sg);
    let luminance = 2.0 * mf * mg / mean_sq;
    let contrast = 2.0 * sf * sg / (vf + vg);
    Ok((correlation * luminance * contrast).clamp(-1.0, 1.0))
}

/// Mean UQI over all `block x block` sliding windows (step 1).
pub fn uqi_windowed(reference: &Image, test: &Image, block: usize) -> Result<f64> {
    reference.same_dims(test)?;
    let (w, h) = reference.dims();
    if block < 2 || block > w || block > h {
        return Err(Error::InvalidParameter(format!(
            "UQI block {block} does not fit a {w}x{h} image"
        )));
    }
    let mut f = Vec::with_capacity(block * block);
    let mut g = Vec::with_capacity(block * block);
    let mut total = 0.0;
    let mut count = 0usize;
    for y0 in 0..=h - block {
        for x0 in 0..=w - block {
            f.clear();
            g.clear();
            for y in y0..y0 + block {
                f.extend_from_slice(&reference.row(y)[x0..x0 + block]);
                g.extend_from_slice(&test.row(y)[x0..x0 + block]);
            }
            total += uqi_slices(&f, &g)?;
            count += 1;
        }
    }
    Ok(total / count as f64)
}

/// All metrics at once.
pub fn evaluate(reference: &Image, test: &Image, mode: MetricsMode) -> Result<MetricsReport> {
    let (r, t);
    let (reference, test) = match mode {
        MetricsMode::Clamped => {
            r = clamp_display(reference);
            t = clamp_display(test);
            (&r, &t)
        }
        MetricsMode::Unclamped => (reference, test),
    };
    let (mse, rmse, mae) = mse_rmse_mae(reference, test)?;
    Ok(MetricsReport {
        mse,
        rmse,
        mae,
        psnr_db: psnr_from_mse(mse),
        uqi: uqi(reference, test)?,
    })
}
