//! Real-valued grayscale images.
//!
//! Samples live in `f64` throughout processing. Quantization to 8 bits only
//! happens when writing a PGM file.

use crate::error::{Error, Result};

/// Row-major grid of real-valued luminance samples.
///
/// The same type doubles as a wavelet coefficient grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Image {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

/// Wavelet coefficient grid. Shares the representation of [`Image`].
pub type Grid = Image;

impl Image {
    /// Builds an image from row-major samples.
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Dimensions(format!(
                "image must be at least 1x1, got {width}x{height}"
            )));
        }
        if data.len() != width * height {
            return Err(Error::Dimensions(format!(
                "{width}x{height} image needs {} samples, got {}",
                width * height,
                data.len()
            )));
        }
        if let Some(i) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "non-finite sample {} at index {i}",
                data[i]
            )));
        }
        Ok(Image {
            width,
            height,
            data,
        })
    }

    /// Constant image. Panics on zero dimensions.
    pub fn filled(width: usize, height: usize, value: f64) -> Self {
        assert!(width > 0 && height > 0, "image must be at least 1x1");
        assert!(value.is_finite());
        Image {
            width,
            height,
            data: vec![value; width * height],
        }
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        Self::filled(width, height, 0.0)
    }

    /// Builds an image by evaluating `f(x, y)` at every pixel. Panics on zero
    /// dimensions or non-finite output.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(width > 0 && height > 0, "image must be at least 1x1");
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self::from_parts(width, height, data)
    }

    // Internal constructor for data produced by this crate.
    pub(crate) fn from_parts(width: usize, height: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), width * height);
        debug_assert!(data.iter().all(|v| v.is_finite()), "non-finite sample");
        Image {
            width,
            height,
            data,
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    /// `(width, height)`
    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    /// Number of samples.
    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn row(&self, y: usize) -> &[f64] {
        &self.data[y * self.width..(y + 1) * self.width]
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Image {
        Image::from_parts(
            self.width,
            self.height,
            self.data.iter().map(|&v| f(v)).collect(),
        )
    }

    pub fn mean(&self) -> f64 {
        self.data.iter().sum::<f64>() / self.len() as f64
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Left-right mirror image.
    pub fn flip_horizontal(&self) -> Image {
        Image::from_fn(self.width, self.height, |x, y| {
            self.get(self.width - 1 - x, y)
        })
    }

    /// Top-left `width x height` sub-image.
    pub fn crop(&self, width: usize, height: usize) -> Result<Image> {
        if width == 0 || height == 0 || width > self.width || height > self.height {
            return Err(Error::Dimensions(format!(
                "cannot crop {}x{} to {width}x{height}",
                self.width, self.height
            )));
        }
        Ok(Image::from_fn(width, height, |x, y| self.get(x, y)))
    }

    pub(crate) fn same_dims(&self, other: &Image) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::Dimensions(format!(
                "dimension mismatch: {}x{} vs {}x{}",
                self.width, self.height, other.width, other.height
            )));
        }
        Ok(())
    }
}

/// Reflect-101 index mapping: `-k -> k`, `n-1+k -> n-1-k`.
///
/// Folds repeatedly, so any offset is valid; a length-1 axis maps everything
/// to 0.
#[inline]
pub fn reflect_101(index: isize, len: usize) -> usize {
    if len == 1 {
        return 0;
    }
    let period = 2 * (len as isize - 1);
    let mut i = index.rem_euclid(period);
    if i >= len as isize {
        i = period - i;
    }
    i as usize
}

/// Pads by `margin` samples on every side using reflect-101 mirroring.
pub fn pad_mirror(image: &Image, margin: usize) -> Result<Image> {
    let (w, h) = image.dims();
    if margin >= w.min(h) {
        return Err(Error::InvalidParameter(format!(
            "margin {margin} must be smaller than min({w}, {h})"
        )));
    }
    let m = margin as isize;
    Ok(Image::from_fn(w + 2 * margin, h + 2 * margin, |x, y| {
        let sx = reflect_101(x as isize - m, w);
        let sy = reflect_101(y as isize - m, h);
        image.get(sx, sy)
    }))
}

/// Clamps every sample into `[lo, hi]`.
pub fn clamp_image(image: &Image, lo: f64, hi: f64) -> Result<Image> {
    if !(lo <= hi) {
        return Err(Error::InvalidParameter(format!("clamp bounds {lo} > {hi}")));
    }
    Ok(image.map(|v| v.clamp(lo, hi)))
}

/// Clamp to the displayable 8-bit range.
pub(crate) fn clamp_display(image: &Image) -> Image {
    image.map(|v| v.clamp(0.0, 255.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_construction() {
        assert!(Image::new(0, 1, vec![]).is_err());
        assert!(Image::new(2, 2, vec![0.0; 3]).is_err());
        assert!(Image::new(1, 1, vec![f64::NAN]).is_err());
    }

    #[test]
    fn pad_mirror_reflect_101() {
        let img = Image::new(3, 1, vec![1.0, 2.0, 3.0]).unwrap();
        // height 1 forbids any margin
        assert!(pad_mirror(&img, 1).is_err());

        let img = Image::new(3, 3, (1..=9).map(f64::from).collect()).unwrap();
        let p = pad_mirror(&img, 1).unwrap();
        assert_eq!(p.dims(), (5, 5));
        assert_eq!(p.row(2), &[5.0, 4.0, 5.0, 6.0, 5.0]);
        assert_eq!(p.row(0), &[5.0, 4.0, 5.0, 6.0, 5.0]);
        assert_eq!(p.row(1), &[2.0, 1.0, 2.0, 3.0, 2.0]);
    }

    #[test]
    fn reflect_index_matches_hand_example() {
        let src = [1.0, 2.0, 3.0];
        let padded: Vec<f64> = (-1..4).map(|i| src[reflect_101(i, 3)]).collect();
        assert_eq!(padded, vec![2.0, 1.0, 2.0, 3.0, 2.0]);
        assert_eq!(reflect_101(-7, 1), 0);
        // repeated folding for offsets beyond one period
        assert_eq!(reflect_101(-5, 3), 1);
        assert_eq!(reflect_101(6, 3), 2);
    }

    #[test]
    fn pad_zero_margin_is_identity() {
        let img = Image::from_fn(4, 3, |x, y| (x * 7 + y) as f64);
        assert_eq!(pad_mirror(&img, 0).unwrap(), img);
    }

    #[test]
    fn pad_margin_too_large() {
        let img = Image::zeros(2, 2);
        assert!(matches!(
            pad_mirror(&img, 2),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn pad_preserves_interior() {
        let img = Image::from_fn(6, 5, |x, y| (x * 31 + y * 17) as f64);
        let p = pad_mirror(&img, 3).unwrap();
        for y in 0..5 {
            for x in 0..6 {
                assert_eq!(p.get(x + 3, y + 3), img.get(x, y));
            }
        }
    }

    #[test]
    fn clamp_examples() {
        let img = Image::new(3, 1, vec![-3.0, 100.0, 260.0]).unwrap();
        let c = clamp_image(&img, 0.0, 255.0).unwrap();
        assert_eq!(c.data(), &[0.0, 100.0, 255.0]);
        assert_eq!(clamp_image(&c, 0.0, 255.0).unwrap(), c);
        assert!(clamp_image(&img, 1.0, 0.0).is_err());
    }
}
