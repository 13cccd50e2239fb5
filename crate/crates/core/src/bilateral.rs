//! Direct bilateral filter with Gaussian spatial and range kernels.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::image::{pad_mirror, Image};

/// Spatial fall-off used throughout the comparison study.
pub const DEFAULT_SIGMA_D: f64 = 1.8;
/// Default window side.
pub const DEFAULT_WINDOW: usize = 11;
/// Range sigma as a multiple of the noise standard deviation.
pub const DEFAULT_RANGE_FACTOR: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BilateralParams {
    sigma_d: f64,
    sigma_r: f64,
    window: usize,
}

impl BilateralParams {
    pub fn new(sigma_d: f64, sigma_r: f64, window: usize) -> Result<Self> {
        if !(sigma_d > 0.0 && sigma_d.is_finite()) || !(sigma_r > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "bilateral sigmas must be positive, got sigma_d={sigma_d}, sigma_r={sigma_r}"
            )));
        }
        if window.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "window must be odd, got {window}"
            )));
        }
        Ok(BilateralParams {
            sigma_d,
            sigma_r,
            window,
        })
    }

    /// `sigma_d = 1.8`, `sigma_r = 2 * noise_sigma`, 11x11 window.
    pub fn for_noise(noise_sigma: f64) -> Result<Self> {
        Self::new(
            DEFAULT_SIGMA_D,
            DEFAULT_RANGE_FACTOR * noise_sigma,
            DEFAULT_WINDOW,
        )
    }

    pub fn sigma_d(&self) -> f64 {
        self.sigma_d
    }

    pub fn sigma_r(&self) -> f64 {
        self.sigma_r
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// Same parameters with the window shrunk, if needed, to the largest odd
    /// side a `width x height` image supports.
    pub fn fitted_to(&self, width: usize, height: usize) -> Self {
        let max = 2 * width.min(height) - 1;
        BilateralParams {
            window: self.window.min(max),
            ..*self
        }
    }
}

/// Filters `image`; borders use reflect-101 mirroring.
pub fn bilateral_filter(image: &Image, params: &BilateralParams) -> Result<Image> {
    let (w, h) = image.dims();
    let max = 2 * w.min(h) - 1;
    if params.window > max {
        return Err(Error::InvalidParameter(format!(
            "window {} exceeds {max} for a {w}x{h} image",
            params.window
        )));
    }
    let r = params.window / 2;
    let padded = pad_mirror(image, r)?;
    let pw = padded.width();
    let side = params.window;

    let spatial_coef = -0.5 / (params.sigma_d * params.sigma_d);
    let spatial: Vec<f64> = (0..side * side)
        .map(|i| {
            let dx = (i % side) as f64 - r as f64;
            let dy = (i / side) as f64 - r as f64;
            ((dx * dx + dy * dy) * spatial_coef).exp()
        })
        .collect();
    let range_coef = -0.5 / (params.sigma_r * params.sigma_r);
    let src = padded.data();

    let mut out = vec![0.0; w * h];
    out.par_chunks_mut(w).enumerate().for_each(|(y, out_row)| {
        for (x, o) in out_row.iter_mut().enumerate() {
            let center = src[(y + r) * pw + x + r];
            let mut num = 0.0;
            let mut den = 0.0;
            for ky in 0..side {
                let base = (y + ky) * pw + x;
                let krow = &spatial[ky * side..(ky + 1) * side];
                for (kx, &ws) in krow.iter().enumerate() {
                    let v = src[base + kx];
                    let d = v - center;
                    let wt = ws * (d * d * range_coef).exp();
                    num += wt * v;
                    den += wt;
                }
            }
            // den >= 1 because the center weight is exactly 1
            *o = num / den;
        }
    });
    Ok(Image::from_parts(w, h, out))
}
