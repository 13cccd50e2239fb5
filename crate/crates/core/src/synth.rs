//! Synthetic test images for self-contained benchmarks.

use crate::image::Image;
use crate::rng::NoiseRng;

/// White noise smoothed by a separable Gaussian of std `radius`, rescaled to
/// zero mean and unit standard deviation.
pub fn smooth_texture(width: usize, height: usize, radius: f64, seed: u64) -> Image {
    let mut rng = NoiseRng::from_seed(seed);
    let raw: Vec<f64> = (0..width * height).map(|_| rng.next_gaussian()).collect();
    let reach = (3.0 * radius).ceil() as isize;
    let kernel: Vec<f64> = (-reach..=reach)
        .map(|d| (-((d * d) as f64) / (2.0 * radius * radius)).exp())
        .collect();
    let norm: f64 = kernel.iter().sum();

    let wrap = |i: isize, n: usize| i.rem_euclid(n as isize) as usize;
    let mut tmp = vec![0.0; width * height];
    for y in 0..height {
        for x in 0..width {
            tmp[y * width + x] = kernel
                .iter()
                .enumerate()
                .map(|(k, g)| g * raw[y * width + wrap(x as isize + k as isize - reach, width)])
                .sum::<f64>()
                / norm;
        }
    }
    let mut out = vec![0.0; width * height];
    for y in 0..height {
        for x in 0..width {
            out[y * width + x] = kernel
                .iter()
                .enumerate()
                .map(|(k, g)| g * tmp[wrap(y as isize + k as isize - reach, height) * width + x])
                .sum::<f64>()
                / norm;
        }
    }
    let n = out.len() as f64;
    let mean = out.iter().sum::<f64>() / n;
    let std = (out.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
    Image::from_parts(
        width,
        height,
        out.into_iter().map(|v| (v - mean) / std).collect(),
    )
}

/// Sum of smoothed-noise octaves with radii 1, 2, 4, ... up to `size / 16`,
/// equal energy per octave (a 1/f amplitude spectrum), normalized to unit
/// standard deviation.
pub fn fractal_texture(width: usize, height: usize, seed: u64) -> Image {
    let top = (width.min(height) / 16).max(1);
    let mut acc = vec![0.0; width * height];
    let mut radius = 1usize;
    let mut octave = 0u64;
    while radius <= top {
        let layer = smooth_texture(width, height, radius as f64, seed.wrapping_add(octave));
        for (a, v) in acc.iter_mut().zip(layer.data()) {
            *a += v;
        }
        radius *= 2;
        octave += 1;
    }
    let n = acc.len() as f64;
    let mean = acc.iter().sum::<f64>() / n;
    let std = (acc.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
    Image::from_parts(
        width,
        height,
        acc.into_iter().map(|v| (v - mean) / std).collect(),
    )
}

/// Diagonal gradient from 40 to 215.
pub fn gradient(width: usize, height: usize) -> Image {
    let span = (width + height - 2).max(1) as f64;
    Image::from_fn(width, height, |x, y| 40.0 + 175.0 * (x + y) as f64 / span)
}

/// Checkerboard of `cell`-pixel squares alternating between `lo` and `hi`.
pub fn checkerboard(width: usize, height: usize, cell: usize, lo: f64, hi: f64) -> Image {
    Image::from_fn(width, height, |x, y| {
        if (x / cell + y / cell).is_multiple_of(2) {
            lo
        } else {
            hi
        }
    })
}

/// Standard deviation of the texture layered over [`scene`].
pub const TEXTURE_AMPLITUDE: f64 = 10.0;

/// Natural-content stand-in: a gradient background carrying a checkerboard
/// panel, a bright disk and a 1/f random texture over the whole frame.
pub fn scene(size: usize, seed: u64) -> Image {
    let base = gradient(size, size);
    let texture = fractal_texture(size, size, seed);
    let cell = (size / 16).max(1);
    let s = size as f64;
    let (cx, cy, rad) = (0.7 * s, 0.3 * s, 0.16 * s);
    Image::from_fn(size, size, |x, y| {
        let (fx, fy) = (x as f64, y as f64);
        let mut v = base.get(x, y);
        if fx < 0.45 * s && fy > 0.55 * s {
            v = if (x / cell + y / cell).is_multiple_of(2) {
                70.0
            } else {
                180.0
            };
        }
        if (fx - cx).powi(2) + (fy - cy).powi(2) < rad * rad {
            v = 200.0;
        }
        (v + TEXTURE_AMPLITUDE * texture.get(x, y)).clamp(0.0, 255.0)
    })
}

/// Texture-only image centered on mid-gray.
pub fn texture_image(size: usize, seed: u64) -> Image {
    smooth_texture(size, size, size as f64 / 64.0, seed)
        .map(|v| (128.0 + 35.0 * v).clamp(0.0, 255.0))
}

/// Gradient with a checkerboard overlay.
pub fn shapes(size: usize) -> Image {
    let g = gradient(size, size);
    let c = checkerboard(size, size, (size / 8).max(1), -30.0, 30.0);
    Image::from_fn(size, size, |x, y| g.get(x, y) + c.get(x, y))
}

/// The named synthetic benchmark set.
pub fn standard_set(seed: u64) -> Vec<(String, Image)> {
    vec![
        ("scene512".to_string(), scene(512, seed)),
        ("texture256".to_string(), texture_image(256, seed ^ 0x5eed)),
        ("shapes256".to_string(), shapes(256)),
    ]
}
