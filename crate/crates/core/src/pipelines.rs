//! End-to-end denoisers: wavelet shrinkage, bilateral, the collaborative
//! Bayes-then-bilateral chain and the multiresolution bilateral filter (MRBF).
//!
//! No pipeline ever thresholds an approximation band, and none clamps its
//! output. Clamping is left to the metrics and PGM boundaries.

use std::fmt;
use std::str::FromStr;

use crate::bilateral::{self, bilateral_filter, BilateralParams};
use crate::error::{Error, Result};
use crate::image::{Grid, Image};
use crate::noise::{estimate_noise_mad_with, MAD_DIVISOR};
use crate::shrinkage::{
    apply_threshold, band_stats, bayes_threshold_with, neigh_shrink, sure_threshold,
    visu_threshold, BayesVariant, ThresholdKind, ThresholdRule,
};
use crate::wavelet::{
    decompose, dwt2_haar, idwt2_haar, reconstruct, Details, Orientation, SubBands,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Visu,
    Sure,
    Bayes,
    Neigh,
    Bilateral,
    Collaborative,
    Mrbf,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Visu,
        Method::Sure,
        Method::Bayes,
        Method::Neigh,
        Method::Bilateral,
        Method::Collaborative,
        Method::Mrbf,
    ];

    /// Short name used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            Method::Visu => "visu",
            Method::Sure => "sure",
            Method::Bayes => "bayes",
            Method::Neigh => "neigh",
            Method::Bilateral => "bilateral",
            Method::Collaborative => "collab",
            Method::Mrbf => "mrbf",
        }
    }

    pub fn is_wavelet(self) -> bool {
        !matches!(self, Method::Bilateral)
    }

    /// Threshold rule each shrinkage method uses unless overridden.
    pub fn default_rule(self) -> ThresholdKind {
        match self {
            Method::Visu => ThresholdKind::Hard,
            _ => ThresholdKind::Soft,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "visu" | "visushrink" => Method::Visu,
            "sure" | "sureshrink" => Method::Sure,
            "bayes" | "bayesshrink" => Method::Bayes,
            "neigh" | "neighshrink" => Method::Neigh,
            "bilateral" => Method::Bilateral,
            "collab" | "collaborative" => Method::Collaborative,
            "mrbf" => Method::Mrbf,
            other => return Err(Error::Config(format!("unknown method {other:?}"))),
        })
    }
}

/// Source of the noise level driving thresholds and range sigmas.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SigmaMode {
    /// Median absolute deviation of the finest diagonal band.
    #[default]
    Estimated,
    /// The true AWGN sigma, supplied by the caller.
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RangeSigma {
    /// `factor * noise sigma`
    NoiseMultiple(f64),
    Fixed(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BilateralSettings {
    pub sigma_d: f64,
    pub window: usize,
    pub range: RangeSigma,
}

impl Default for BilateralSettings {
    fn default() -> Self {
        BilateralSettings {
            sigma_d: bilateral::DEFAULT_SIGMA_D,
            window: bilateral::DEFAULT_WINDOW,
            range: RangeSigma::NoiseMultiple(bilateral::DEFAULT_RANGE_FACTOR),
        }
    }
}

impl BilateralSettings {
    fn range_sigma(&self, noise_sigma: f64) -> f64 {
        match self.range {
            RangeSigma::NoiseMultiple(k) => k * noise_sigma,
            RangeSigma::Fixed(v) => v,
        }
    }

    /// Filters `grid`, fitting the window to small grids. A zero range sigma
    /// (noise-free input) leaves the grid untouched.
    fn filter(&self, grid: &Grid, noise_sigma: f64) -> Result<Grid> {
        let sigma_r = self.range_sigma(noise_sigma);
        if !(sigma_r > 0.0) {
            return Ok(grid.clone());
        }
        let params = BilateralParams::new(self.sigma_d, sigma_r, self.window)?
            .fitted_to(grid.width(), grid.height());
        bilateral_filter(grid, &params)
    }
}

/// Where MRBF applies the bilateral filter.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MrbfSchedule {
    /// Coarsest approximation plus every reconstructed approximation.
    #[default]
    EveryLevel,
    CoarsestOnly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MethodConfig {
    pub method: Method,
    /// Wavelet depth, 1..=6. Ignored by the plain bilateral filter.
    pub levels: usize,
    pub bilateral: BilateralSettings,
    pub neigh_window: usize,
    pub sigma_mode: SigmaMode,
    /// Overrides the method's hard/soft pairing.
    pub detail_rule: Option<ThresholdKind>,
    pub bayes_variant: BayesVariant,
    pub mad_divisor: f64,
    pub mrbf_schedule: MrbfSchedule,
    /// Collaborative only: reuse the input noise estimate for the bilateral
    /// stage instead of re-estimating on the BayesShrink output.
    pub collab_reuse_sigma: bool,
}

pub const DEFAULT_LEVELS: usize = 3;
pub const DEFAULT_NEIGH_WINDOW: usize = 3;

impl MethodConfig {
    pub fn new(method: Method) -> Self {
        MethodConfig {
            method,
            levels: DEFAULT_LEVELS,
            bilateral: BilateralSettings::default(),
            neigh_window: DEFAULT_NEIGH_WINDOW,
            sigma_mode: SigmaMode::Estimated,
            detail_rule: None,
            bayes_variant: BayesVariant::Amplitude,
            mad_divisor: MAD_DIVISOR,
            mrbf_schedule: MrbfSchedule::EveryLevel,
            collab_reuse_sigma: false,
        }
    }

    pub fn with_levels(mut self, levels: usize) -> Self {
        self.levels = levels;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=crate::wavelet::MAX_LEVELS).contains(&self.levels) {
            return Err(Error::InvalidParameter(format!(
                "levels must be in 1..={}, got {}",
                crate::wavelet::MAX_LEVELS,
                self.levels
            )));
        }
        if self.neigh_window.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "neigh window must be odd, got {}",
                self.neigh_window
            )));
        }
        if self.bilateral.window.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "bilateral window must be odd, got {}",
                self.bilateral.window
            )));
        }
        if !(self.bilateral.sigma_d > 0.0) {
            return Err(Error::InvalidParameter(
                "bilateral sigma_d must be > 0".into(),
            ));
        }
        if !(self.mad_divisor > 0.0) {
            return Err(Error::InvalidParameter("MAD divisor must be > 0".into()));
        }
        Ok(())
    }

    fn rule(&self, method: Method) -> ThresholdKind {
        self.detail_rule.unwrap_or(method.default_rule())
    }
}

/// A detail band touched by a shrinkage rule. Levels count from 1 (finest).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BandId {
    pub level: usize,
    pub orientation: Orientation,
}

#[derive(Clone, Debug)]
pub struct DenoiseOutcome {
    pub image: Image,
    /// Noise level that drove the first stage.
    pub noise_sigma: f64,
    /// Every band handed to a shrinkage rule, in processing order.
    pub thresholded: Vec<BandId>,
}

/// Runs the configured method. `oracle_sigma` is required in
/// [`SigmaMode::Oracle`] and ignored otherwise.
pub fn denoise(image: &Image, config: &MethodConfig, oracle_sigma: Option<f64>) -> Result<Image> {
    denoise_traced(image, config, oracle_sigma).map(|o| o.image)
}

pub fn denoise_traced(
    image: &Image,
    config: &MethodConfig,
    oracle_sigma: Option<f64>,
) -> Result<DenoiseOutcome> {
    config.validate()?;
    let oracle = match config.sigma_mode {
        SigmaMode::Estimated => None,
        SigmaMode::Oracle => {
            let s = oracle_sigma.ok_or_else(|| {
                Error::InvalidParameter("oracle sigma mode needs a noise sigma".into())
            })?;
            if !(s >= 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "oracle sigma must be >= 0, got {s}"
                )));
            }
            Some(s)
        }
    };
    let mut trace = Vec::new();
    let (image, noise_sigma) = match config.method {
        Method::Visu | Method::Sure | Method::Bayes | Method::Neigh => {
            shrink_pipeline(image, config, config.method, oracle, &mut trace)?
        }
        Method::Bilateral => {
            let sigma = match oracle {
                Some(s) => s,
                None => estimate_image_sigma(image, config.mad_divisor)?,
            };
            (config.bilateral.filter(image, sigma)?, sigma)
        }
        Method::Collaborative => collaborative_inner(image, config, oracle, &mut trace)?,
        Method::Mrbf => mrbf_inner(image, config, oracle, &mut trace)?,
    };
    Ok(DenoiseOutcome {
        image,
        noise_sigma,
        thresholded: trace,
    })
}

/// BayesShrink followed by the bilateral filter.
pub fn collaborative(image: &Image, config: &MethodConfig) -> Result<Image> {
    let config = MethodConfig {
        method: Method::Collaborative,
        ..config.clone()
    };
    denoise(image, &config, None)
}

/// Multiresolution bilateral filter.
pub fn mrbf(image: &Image, config: &MethodConfig) -> Result<Image> {
    let config = MethodConfig {
        method: Method::Mrbf,
        ..config.clone()
    };
    denoise(image, &config, None)
}

/// Noise estimate from the finest diagonal band of a one-level transform.
/// Odd trailing rows/columns are dropped.
pub fn estimate_image_sigma(image: &Image, mad_divisor: f64) -> Result<f64> {
    let (w, h) = image.dims();
    let (ew, eh) = (w & !1, h & !1);
    if ew == 0 || eh == 0 {
        return Err(Error::Dimensions(format!(
            "noise estimation needs at least 2x2 pixels, got {w}x{h}"
        )));
    }
    let even = if (ew, eh) == (w, h) {
        image.clone()
    } else {
        image.crop(ew, eh)?
    };
    let bands = dwt2_haar(&even)?;
    estimate_noise_mad_with(bands.hh().data(), mad_divisor)
}

fn shrink_pipeline(
    image: &Image,
    config: &MethodConfig,
    method: Method,
    oracle: Option<f64>,
    trace: &mut Vec<BandId>,
) -> Result<(Image, f64)> {
    let mut pyramid = decompose(image, config.levels)?;
    let sigma = match oracle {
        Some(s) => s,
        None => estimate_noise_mad_with(pyramid.levels[0].hh.data(), config.mad_divisor)?,
    };
    let total = image.len();
    for (k, details) in pyramid.levels.iter_mut().enumerate() {
        shrink_details(details, k + 1, method, sigma, total, config, trace)?;
    }
    Ok((reconstruct(&pyramid)?, sigma))
}

/// Applies `method`'s estimator to the three detail bands of one level.
/// `total` is the pixel count of the full image, used by the universal
/// threshold of VisuShrink.
fn shrink_details(
    details: &mut Details,
    level: usize,
    method: Method,
    sigma: f64,
    total: usize,
    config: &MethodConfig,
    trace: &mut Vec<BandId>,
) -> Result<()> {
    for orientation in Orientation::ALL {
        let band = details.band_mut(orientation);
        let shrunk = match method {
            Method::Visu => {
                let t = visu_threshold(sigma, total)?;
                apply_threshold(band, ThresholdRule::new(config.rule(method), t)?)
            }
            Method::Sure => {
                let t = if sigma > 0.0 {
                    sure_threshold(band, sigma)?
                } else {
                    0.0
                };
                apply_threshold(band, ThresholdRule::new(config.rule(method), t)?)
            }
            Method::Bayes | Method::Collaborative | Method::Mrbf => {
                let stats = band_stats(band, sigma)?;
                let t = bayes_threshold_with(&stats, config.bayes_variant);
                apply_threshold(band, ThresholdRule::new(config.rule(Method::Bayes), t)?)
            }
            Method::Neigh => {
                let t = visu_threshold(sigma, band.len())?;
                neigh_shrink(band, t, config.neigh_window)?
            }
            Method::Bilateral => unreachable!("bilateral has no detail bands"),
        };
        *band = shrunk;
        trace.push(BandId { level, orientation });
    }
    Ok(())
}

fn collaborative_inner(
    image: &Image,
    config: &MethodConfig,
    oracle: Option<f64>,
    trace: &mut Vec<BandId>,
) -> Result<(Image, f64)> {
    let (smoothed, sigma) = shrink_pipeline(image, config, Method::Bayes, oracle, trace)?;
    let residual = if config.collab_reuse_sigma {
        sigma
    } else {
        estimate_image_sigma(&smoothed, config.mad_divisor)?
    };
    Ok((config.bilateral.filter(&smoothed, residual)?, sigma))
}

fn mrbf_inner(
    image: &Image,
    config: &MethodConfig,
    oracle: Option<f64>,
    trace: &mut Vec<BandId>,
) -> Result<(Image, f64)> {
    crate::wavelet::check_levels(image.dims(), config.levels)?;
    let mut first_sigma = None;
    let out = mrbf_level(image, 1, config, oracle, trace, &mut first_sigma)?;
    Ok((out, first_sigma.unwrap_or(0.0)))
}

/// One analysis/synthesis step. Details are BayesShrink-thresholded with this
/// level's noise estimate; the approximation either recurses or, at the
/// coarsest level, is bilateral-filtered. Under the every-level schedule the
/// approximation rebuilt by the deeper levels is filtered again before
/// synthesis.
fn mrbf_level(
    approx: &Grid,
    level: usize,
    config: &MethodConfig,
    oracle: Option<f64>,
    trace: &mut Vec<BandId>,
    first_sigma: &mut Option<f64>,
) -> Result<Grid> {
    let SubBands { ll, mut details } = dwt2_haar(approx)?;
    let sigma = match oracle {
        Some(s) => s,
        None => estimate_noise_mad_with(details.hh.data(), config.mad_divisor)?,
    };
    first_sigma.get_or_insert(sigma);
    shrink_details(
        &mut details,
        level,
        Method::Mrbf,
        sigma,
        approx.len(),
        config,
        trace,
    )?;

    let ll = if level == config.levels {
        config.bilateral.filter(&ll, sigma)?
    } else {
        let rebuilt = mrbf_level(&ll, level + 1, config, oracle, trace, first_sigma)?;
        match config.mrbf_schedule {
            MrbfSchedule::EveryLevel => config.bilateral.filter(&rebuilt, sigma)?,
            MrbfSchedule::CoarsestOnly => rebuilt,
        }
    };
    idwt2_haar(&SubBands { ll, details })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use crate::pipelines::{
        denoise_traced, estimate_image_sigma, BandId, MrbfSchedule, RangeSigma,
    };
    use crate::shrinkage::{apply_threshold, band_stats, bayes_threshold};
    use crate::wavelet::Orientation;
    use crate::{
        add_awgn, bilateral_filter, collaborative, denoise, dwt2_haar, idwt2_haar, mrbf, psnr,
        synth, BilateralParams, Error, Image, Method, MethodConfig, NoiseModel, SigmaMode,
        SubBands, ThresholdKind, ThresholdRule,
    };

    fn max_abs_diff(a: &Image, b: &Image) -> f64 {
        a.data()
            .iter()
            .zip(b.data())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn visu_with_zero_oracle_sigma_is_identity() {
        let img = synth::scene(64, 4);
        let mut cfg = MethodConfig::new(Method::Visu);
        cfg.sigma_mode = SigmaMode::Oracle;
        let out = denoise(&img, &cfg, Some(0.0)).unwrap();
        assert!(max_abs_diff(&img, &out) < 1e-9);
    }

    #[test]
    fn oracle_mode_requires_sigma() {
        let mut cfg = MethodConfig::new(Method::Bayes);
        cfg.sigma_mode = SigmaMode::Oracle;
        assert!(matches!(
            denoise(&Image::zeros(16, 16), &cfg, None),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn bayes_on_clean_band_limited_image_is_near_identity() {
        // linear ramps have no Haar detail at the finest diagonal, so sigma-hat = 0
        let img = synth::gradient(128, 128);
        assert_eq!(estimate_image_sigma(&img, 0.6745).unwrap(), 0.0);
        let out = denoise(&img, &MethodConfig::new(Method::Bayes), None).unwrap();
        assert!(psnr(&img, &out).unwrap() >= 60.0);
    }

    #[test]
    fn wavelet_methods_reject_incompatible_dims() {
        let img = Image::zeros(100, 100);
        for m in [
            Method::Visu,
            Method::Sure,
            Method::Bayes,
            Method::Neigh,
            Method::Collaborative,
            Method::Mrbf,
        ] {
            let err = denoise(&img, &MethodConfig::new(m), None).unwrap_err();
            assert!(matches!(err, Error::Dimensions(_)), "{m}: {err}");
        }
        assert!(denoise(&img, &MethodConfig::new(Method::Bilateral), None).is_ok());
        assert!(denoise(&img, &MethodConfig::new(Method::Bayes).with_levels(2), None).is_ok());
    }

    #[test]
    fn config_validation() {
        let mut cfg = MethodConfig::new(Method::Neigh);
        cfg.neigh_window = 4;
        assert!(cfg.validate().is_err());
        assert!(MethodConfig::new(Method::Visu)
            .with_levels(7)
            .validate()
            .is_err());
        assert!(MethodConfig::new(Method::Visu)
            .with_levels(0)
            .validate()
            .is_err());
    }

    #[test]
    fn approximation_bands_are_never_thresholded() {
        let img = add_awgn(&synth::scene(128, 2), &NoiseModel::new(20.0, 1).unwrap());
        for m in Method::ALL {
            for levels in 1..=4 {
                let out =
                    denoise_traced(&img, &MethodConfig::new(m).with_levels(levels), None).unwrap();
                if m == Method::Bilateral {
                    assert!(out.thresholded.is_empty());
                    continue;
                }
                // only detail orientations exist in the trace, each exactly once per level
                let want: BTreeSet<BandId> = (1..=levels)
                    .flat_map(|level| {
                        Orientation::ALL.map(|orientation| BandId { level, orientation })
                    })
                    .collect();
                let got: BTreeSet<BandId> = out.thresholded.iter().copied().collect();
                assert_eq!(out.thresholded.len(), 3 * levels, "{m}");
                assert_eq!(got, want, "{m}");
            }
        }
    }

    #[test]
    fn mrbf_single_level_matches_manual_composition() {
        let img = add_awgn(&synth::scene(64, 9), &NoiseModel::new(15.0, 2).unwrap());
        let cfg = MethodConfig::new(Method::Mrbf).with_levels(1);
        let got = mrbf(&img, &cfg).unwrap();

        let SubBands { ll, mut details } = dwt2_haar(&img).unwrap();
        let sigma = crate::estimate_noise_mad(&details.hh).unwrap();
        for o in Orientation::ALL {
            let band = details.band_mut(o);
            let t = bayes_threshold(&band_stats(band, sigma).unwrap());
            *band = apply_threshold(band, ThresholdRule::new(ThresholdKind::Soft, t).unwrap());
        }
        let ll =
            bilateral_filter(&ll, &BilateralParams::new(1.8, 2.0 * sigma, 11).unwrap()).unwrap();
        let want = idwt2_haar(&SubBands { ll, details }).unwrap();
        assert!(max_abs_diff(&got, &want) < 1e-12);
    }

    #[test]
    fn mrbf_schedules_agree_at_one_level_and_differ_deeper() {
        let img = add_awgn(&synth::scene(128, 3), &NoiseModel::new(25.0, 8).unwrap());
        let mut every = MethodConfig::new(Method::Mrbf).with_levels(1);
        let mut coarse = every.clone();
        coarse.mrbf_schedule = MrbfSchedule::CoarsestOnly;
        assert_eq!(mrbf(&img, &every).unwrap(), mrbf(&img, &coarse).unwrap());
        every.levels = 3;
        coarse.levels = 3;
        assert_ne!(mrbf(&img, &every).unwrap(), mrbf(&img, &coarse).unwrap());
    }

    #[test]
    fn mrbf_flattens_noisy_constant_image() {
        let clean = Image::filled(256, 256, 120.0);
        let noisy = add_awgn(&clean, &NoiseModel::new(20.0, 77).unwrap());
        let out = mrbf(&noisy, &MethodConfig::new(Method::Mrbf)).unwrap();
        let rms =
            (out.data().iter().map(|v| (v - 120.0).powi(2)).sum::<f64>() / out.len() as f64).sqrt();
        assert!(rms < 3.0, "rms {rms}");
    }

    #[test]
    fn collaborative_is_deterministic_and_near_identity_on_clean_input() {
        let clean = synth::shapes(128);
        let cfg = MethodConfig::new(Method::Collaborative);
        let out = collaborative(&clean, &cfg).unwrap();
        assert!(psnr(&clean, &out).unwrap() > 40.0);

        let noisy = add_awgn(&clean, &NoiseModel::new(30.0, 5).unwrap());
        assert_eq!(
            collaborative(&noisy, &cfg).unwrap(),
            collaborative(&noisy, &cfg).unwrap()
        );
    }

    #[test]
    fn collaborative_sigma_reuse_flag_changes_bilateral_stage() {
        let noisy = add_awgn(&synth::scene(128, 6), &NoiseModel::new(30.0, 5).unwrap());
        let mut cfg = MethodConfig::new(Method::Collaborative);
        let fresh = collaborative(&noisy, &cfg).unwrap();
        cfg.collab_reuse_sigma = true;
        let reused = collaborative(&noisy, &cfg).unwrap();
        assert_ne!(fresh, reused);
    }

    #[test]
    fn bilateral_method_uses_range_setting() {
        let noisy = add_awgn(&synth::shapes(64), &NoiseModel::new(10.0, 3).unwrap());
        let mut cfg = MethodConfig::new(Method::Bilateral);
        cfg.sigma_mode = SigmaMode::Oracle;
        let by_noise = denoise(&noisy, &cfg, Some(10.0)).unwrap();
        let direct =
            bilateral_filter(&noisy, &BilateralParams::new(1.8, 20.0, 11).unwrap()).unwrap();
        assert_eq!(by_noise, direct);
        cfg.bilateral.range = RangeSigma::Fixed(20.0);
        assert_eq!(denoise(&noisy, &cfg, Some(99.0)).unwrap(), direct);
    }

    #[test]
    fn every_method_beats_the_noisy_input() {
        let clean = synth::texture_image(256, 12);
        for sigma in [10.0, 20.0, 30.0, 40.0, 50.0] {
            for m in Method::ALL {
                let cfg = MethodConfig::new(m);
                let (mut before, mut after) = (0.0, 0.0);
                for seed in 0..5 {
                    let noisy = add_awgn(&clean, &NoiseModel::new(sigma, seed).unwrap());
                    before += psnr(&clean, &noisy).unwrap();
                    after += psnr(&clean, &denoise(&noisy, &cfg, None).unwrap()).unwrap();
                }
                assert!(
                    after > before,
                    "{m} at sigma {sigma}: {} <= {}",
                    after / 5.0,
                    before / 5.0
                );
            }
        }
    }
}
