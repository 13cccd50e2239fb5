//! Wavelet coefficient thresholding and the VisuShrink, SureShrink,
//! BayesShrink and NeighShrink estimators.
//!
//! A coefficient whose magnitude equals the threshold is zeroed by both hard
//! and soft rules.

use crate::error::{Error, Result};
use crate::image::{reflect_101, Grid, Image};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThresholdKind {
    /// Keep-or-kill.
    Hard,
    /// Kill-or-shrink toward zero.
    Soft,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdRule {
    pub kind: ThresholdKind,
    value: f64,
}

impl ThresholdRule {
    pub fn new(kind: ThresholdKind, value: f64) -> Result<Self> {
        if !(value >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "threshold must be >= 0, got {value}"
            )));
        }
        Ok(ThresholdRule { kind, value })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    #[inline]
    pub fn apply(&self, x: f64) -> f64 {
        let t = self.value;
        match self.kind {
            // at t = 0 the strict test would map 0 to 0 anyway
            ThresholdKind::Hard => {
                if x.abs() > t {
                    x
                } else {
                    0.0
                }
            }
            ThresholdKind::Soft => {
                let m = x.abs() - t;
                if m > 0.0 {
                    m.copysign(x)
                } else {
                    0.0
                }
            }
        }
    }
}

pub fn apply_threshold(band: &Grid, rule: ThresholdRule) -> Grid {
    band.map(|x| rule.apply(x))
}

/// Universal threshold `sigma * sqrt(2 ln n)`.
pub fn visu_threshold(sigma: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "universal threshold needs n >= 1".into(),
        ));
    }
    if !(sigma >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "sigma must be >= 0, got {sigma}"
        )));
    }
    Ok(sigma * (2.0 * (n as f64).ln()).sqrt())
}

/// Threshold, in units of sigma, minimizing Stein's unbiased risk estimate for
/// soft thresholding of `band / sigma`:
///
/// `SURE(t) = n - 2 #{|w_i| <= t} + sum_i min(|w_i|, t)^2`
///
/// Candidates are `{0} ∪ {|w_i|}`; ties resolve to the smallest candidate.
pub fn sure_minimizer(band: &Grid, sigma: f64) -> Result<f64> {
    check_sure_inputs(band, sigma)?;
    let n = band.len();
    let mut mags: Vec<f64> = band.data().iter().map(|x| (x / sigma).abs()).collect();
    mags.sort_unstable_by(f64::total_cmp);

    let nf = n as f64;
    let zeros = mags.iter().take_while(|&&a| a == 0.0).count();
    let mut best_t = 0.0;
    let mut best_risk = nf - 2.0 * zeros as f64;

    let mut below_sq = 0.0;
    let mut i = 0;
    while i < n {
        let t = mags[i];
        // absorb the whole run of equal magnitudes
        let mut j = i;
        while j < n && mags[j] == t {
            below_sq += t * t;
            j += 1;
        }
        let risk = nf - 2.0 * j as f64 + below_sq + (n - j) as f64 * t * t;
        if risk < best_risk {
            best_risk = risk;
            best_t = t;
        }
        i = j;
    }
    Ok(best_t)
}

/// SureShrink threshold for one band: the SURE minimizer, replaced by the
/// universal threshold on sparse bands and capped by it everywhere.
///
/// A band is sparse when `(sum w_i^2 - n) / n <= (log2 n)^{3/2} / sqrt(n)`.
pub fn sure_threshold(band: &Grid, sigma: f64) -> Result<f64> {
    check_sure_inputs(band, sigma)?;
    let n = band.len() as f64;
    let universal = (2.0 * n.ln()).sqrt();
    let energy: f64 = band.data().iter().map(|x| (x / sigma).powi(2)).sum();
    let sparsity = (energy - n) / n;
    let critical = n.log2().powf(1.5) / n.sqrt();
    let t = if sparsity <= critical {
        universal
    } else {
        sure_minimizer(band, sigma)?.min(universal)
    };
    Ok(sigma * t)
}

fn check_sure_inputs(band: &Grid, sigma: f64) -> Result<()> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "SURE needs sigma > 0, got {sigma}"
        )));
    }
    if band.is_empty() {
        return Err(Error::Empty("SURE needs a non-empty band"));
    }
    Ok(())
}

/// Variance bookkeeping for BayesShrink.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BandStats {
    pub sigma_n: f64,
    /// Root of the uncentered second moment of the band.
    pub sigma_w: f64,
    /// `sqrt(max(sigma_w^2 - sigma_n^2, 0))`
    pub sigma_s: f64,
    pub n: usize,
    /// Largest coefficient magnitude; the threshold that zeroes the band.
    pub max_abs: f64,
}

pub fn band_stats(band: &Grid, sigma_n: f64) -> Result<BandStats> {
    if band.is_empty() {
        return Err(Error::Empty("band statistics need a non-empty band"));
    }
    let n = band.len();
    let second_moment = band.data().iter().map(|w| w * w).sum::<f64>() / n as f64;
    Ok(BandStats {
        sigma_n,
        sigma_w: second_moment.sqrt(),
        sigma_s: (second_moment - sigma_n * sigma_n).max(0.0).sqrt(),
        n,
        max_abs: band.max_abs(),
    })
}

/// How the BayesShrink ratio is formed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BayesVariant {
    /// `sigma_n^2 / sigma_s`, the amplitude-consistent rule.
    #[default]
    Amplitude,
    /// `sigma_n^2 / sigma_s^2`, as printed in the comparison study.
    VarianceRatio,
}

pub fn bayes_threshold(stats: &BandStats) -> f64 {
    bayes_threshold_with(stats, BayesVariant::Amplitude)
}

pub fn bayes_threshold_with(stats: &BandStats, variant: BayesVariant) -> f64 {
    if stats.sigma_n <= 0.0 {
        return 0.0;
    }
    if stats.sigma_s <= 0.0 {
        // pure noise: kill everything
        return stats.max_abs;
    }
    let noise_var = stats.sigma_n * stats.sigma_n;
    match variant {
        BayesVariant::Amplitude => noise_var / stats.sigma_s,
        BayesVariant::VarianceRatio => noise_var / (stats.sigma_s * stats.sigma_s),
    }
}

/// NeighShrink: scales each coefficient by `max(1 - T^2 / S^2, 0)` where `S^2`
/// is the sum of squares over a `window x window` neighbourhood (reflect-101 at
/// band borders).
pub fn neigh_shrink(band: &Grid, t_universal: f64, window: usize) -> Result<Grid> {
    if window.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "window must be odd, got {window}"
        )));
    }
    if !(t_universal >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "threshold must be >= 0, got {t_universal}"
        )));
    }
    if t_universal == 0.0 {
        return Ok(band.clone());
    }
    let (w, h) = band.dims();
    let r = (window / 2) as isize;
    let t2 = t_universal * t_universal;
    let sq: Vec<f64> = band.data().iter().map(|v| v * v).collect();

    // separable box sum: rows first, then columns
    let mut rows = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            let mut s = 0.0;
            for dx in -r..=r {
                s += sq[y * w + reflect_101(x as isize + dx, w)];
            }
            rows[y * w + x] = s;
        }
    }
    let mut out = Vec::with_capacity(w * h);
    for y in 0..h {
        for x in 0..w {
            let mut s2 = 0.0;
            for dy in -r..=r {
                s2 += rows[reflect_101(y as isize + dy, h) * w + x];
            }
            let gamma = if s2 > 0.0 {
                (1.0 - t2 / s2).max(0.0)
            } else {
                0.0
            };
            out.push(gamma * band.data()[y * w + x]);
        }
    }
    Ok(Image::from_parts(w, h, out))
}
