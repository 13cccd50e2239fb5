//! Orthonormal 2-D Haar transform and multilevel pyramids.
//!
//! Each 2x2 block `[[a, b], [c, d]]` maps to
//!
//! ```text
//! ll = (a + b + c + d) / 2      hl = (a - b + c - d) / 2
//! lh = (a + b - c - d) / 2      hh = (a - b - c + d) / 2
//! ```
//!
//! The transform is orthonormal, so white noise keeps the same standard
//! deviation in every sub-band and at every level.

use crate::error::{Error, Result};
use crate::image::{Grid, Image};

/// Deepest supported decomposition.
pub const MAX_LEVELS: usize = 6;

/// Detail band orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Lh,
    Hl,
    Hh,
}

impl Orientation {
    pub const ALL: [Orientation; 3] = [Orientation::Lh, Orientation::Hl, Orientation::Hh];
}

/// Detail sub-bands of one decomposition level.
#[derive(Clone, Debug, PartialEq)]
pub struct Details {
    pub lh: Grid,
    pub hl: Grid,
    pub hh: Grid,
}

impl Details {
    pub fn band(&self, o: Orientation) -> &Grid {
        match o {
            Orientation::Lh => &self.lh,
            Orientation::Hl => &self.hl,
            Orientation::Hh => &self.hh,
        }
    }

    pub fn band_mut(&mut self, o: Orientation) -> &mut Grid {
        match o {
            Orientation::Lh => &mut self.lh,
            Orientation::Hl => &mut self.hl,
            Orientation::Hh => &mut self.hh,
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        self.lh.dims()
    }

    fn check(&self) -> Result<()> {
        let d = self.lh.dims();
        if self.hl.dims() != d || self.hh.dims() != d {
            return Err(Error::Dimensions(format!(
                "detail bands disagree: lh {:?}, hl {:?}, hh {:?}",
                d,
                self.hl.dims(),
                self.hh.dims()
            )));
        }
        Ok(())
    }
}

/// One-level split into approximation and details.
#[derive(Clone, Debug, PartialEq)]
pub struct SubBands {
    pub ll: Grid,
    pub details: Details,
}

impl SubBands {
    pub fn lh(&self) -> &Grid {
        &self.details.lh
    }

    pub fn hl(&self) -> &Grid {
        &self.details.hl
    }

    pub fn hh(&self) -> &Grid {
        &self.details.hh
    }
}

/// Multilevel decomposition. `levels[0]` is the finest scale.
#[derive(Clone, Debug, PartialEq)]
pub struct Pyramid {
    pub levels: Vec<Details>,
    pub top_ll: Grid,
    pub original_dims: (usize, usize),
}

impl Pyramid {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    fn check(&self) -> Result<()> {
        let (w, h) = self.original_dims;
        let j = self.levels.len();
        if j == 0 {
            return Err(Error::Dimensions("pyramid has no levels".into()));
        }
        for (k, level) in self.levels.iter().enumerate() {
            level.check()?;
            let want = (w >> (k + 1), h >> (k + 1));
            if level.dims() != want {
                return Err(Error::Dimensions(format!(
                    "level {} bands are {:?}, expected {:?}",
                    k + 1,
                    level.dims(),
                    want
                )));
            }
        }
        if self.top_ll.dims() != (w >> j, h >> j) {
            return Err(Error::Dimensions(format!(
                "top approximation is {:?}, expected {:?}",
                self.top_ll.dims(),
                (w >> j, h >> j)
            )));
        }
        Ok(())
    }
}

/// Single-level analysis.
pub fn dwt2_haar(grid: &Grid) -> Result<SubBands> {
    let (w, h) = grid.dims();
    if w % 2 != 0 || h % 2 != 0 {
        return Err(Error::Dimensions(format!(
            "Haar analysis needs even dimensions, got {w}x{h}"
        )));
    }
    let (hw, hh_) = (w / 2, h / 2);
    let n = hw * hh_;
    let (mut ll, mut lh, mut hl, mut hh) = (
        Vec::with_capacity(n),
        Vec::with_capacity(n),
        Vec::with_capacity(n),
        Vec::with_capacity(n),
    );
    for by in 0..hh_ {
        let top = grid.row(2 * by);
        let bottom = grid.row(2 * by + 1);
        for bx in 0..hw {
            let (a, b) = (top[2 * bx], top[2 * bx + 1]);
            let (c, d) = (bottom[2 * bx], bottom[2 * bx + 1]);
            ll.push(0.5 * (a + b + c + d));
            hl.push(0.5 * (a - b + c - d));
            lh.push(0.5 * (a + b - c - d));
            hh.push(0.5 * (a - b - c + d));
        }
    }
    Ok(SubBands {
        ll: Image::from_parts(hw, hh_, ll),
        details: Details {
            lh: Image::from_parts(hw, hh_, lh),
            hl: Image::from_parts(hw, hh_, hl),
            hh: Image::from_parts(hw, hh_, hh),
        },
    })
}

/// Single-level synthesis; exact inverse of [`dwt2_haar`].
pub fn idwt2_haar(bands: &SubBands) -> Result<Grid> {
    synthesize(&bands.ll, &bands.details)
}

fn synthesize(ll: &Grid, details: &Details) -> Result<Grid> {
    details.check()?;
    if ll.dims() != details.dims() {
        return Err(Error::Dimensions(format!(
            "approximation {:?} does not match details {:?}",
            ll.dims(),
            details.dims()
        )));
    }
    let (hw, hh_) = ll.dims();
    let w = 2 * hw;
    let mut out = vec![0.0; w * 2 * hh_];
    for by in 0..hh_ {
        for bx in 0..hw {
            let i = by * hw + bx;
            let s = ll.data()[i];
            let ho = details.hl.data()[i];
            let ve = details.lh.data()[i];
            let di = details.hh.data()[i];
            let top = 2 * by * w + 2 * bx;
            let bottom = top + w;
            out[top] = 0.5 * (s + ho + ve + di);
            out[top + 1] = 0.5 * (s - ho + ve - di);
            out[bottom] = 0.5 * (s + ho - ve - di);
            out[bottom + 1] = 0.5 * (s - ho - ve + di);
        }
    }
    Ok(Image::from_parts(w, 2 * hh_, out))
}

/// Iterated decomposition on the approximation band.
pub fn decompose(image: &Image, levels: usize) -> Result<Pyramid> {
    check_levels(image.dims(), levels)?;
    let mut approx = image.clone();
    let mut details = Vec::with_capacity(levels);
    for _ in 0..levels {
        let bands = dwt2_haar(&approx)?;
        details.push(bands.details);
        approx = bands.ll;
    }
    Ok(Pyramid {
        levels: details,
        top_ll: approx,
        original_dims: image.dims(),
    })
}

/// Exact inverse of [`decompose`].
pub fn reconstruct(pyramid: &Pyramid) -> Result<Image> {
    pyramid.check()?;
    let mut approx = pyramid.top_ll.clone();
    for details in pyramid.levels.iter().rev() {
        approx = synthesize(&approx, details)?;
    }
    Ok(approx)
}

/// Validates a level count against image dimensions.
pub fn check_levels((w, h): (usize, usize), levels: usize) -> Result<()> {
    if levels == 0 || levels > MAX_LEVELS {
        return Err(Error::InvalidParameter(format!(
            "levels must be in 1..={MAX_LEVELS}, got {levels}"
        )));
    }
    let block = 1usize << levels;
    if w % block != 0 || h % block != 0 {
        return Err(Error::Dimensions(format!(
            "{w}x{h} is not divisible by 2^{levels} = {block}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn energy(g: &Grid) -> f64 {
        g.data().iter().map(|v| v * v).sum()
    }

    fn lcg_image(w: usize, h: usize, seed: u64) -> Image {
        let mut s = seed;
        Image::from_fn(w, h, |_, _| {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (s >> 11) as f64 / (1u64 << 53) as f64 * 255.0
        })
    }

    #[test]
    fn block_formula_hand_example() {
        let g = Image::new(2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let b = dwt2_haar(&g).unwrap();
        assert_eq!(b.ll.data(), &[5.0]);
        assert_eq!(b.hl().data(), &[-1.0]);
        assert_eq!(b.lh().data(), &[-2.0]);
        assert_eq!(b.hh().data(), &[0.0]);
        assert_eq!(idwt2_haar(&b).unwrap(), g);
    }

    #[test]
    fn constant_image_has_no_detail() {
        let b = dwt2_haar(&Image::filled(8, 6, 7.0)).unwrap();
        assert!(b.ll.data().iter().all(|&v| v == 14.0));
        for o in Orientation::ALL {
            assert!(b.details.band(o).data().iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn odd_dimensions_rejected() {
        assert!(matches!(
            dwt2_haar(&Image::zeros(3, 2)),
            Err(Error::Dimensions(_))
        ));
        assert!(decompose(&Image::zeros(100, 100), 3).is_err());
        assert!(decompose(&Image::zeros(64, 64), 0).is_err());
        assert!(decompose(&Image::zeros(128, 128), 7).is_err());
    }

    #[test]
    fn zero_bands_give_zero_grid() {
        let z = Image::zeros(4, 3);
        let bands = SubBands {
            ll: z.clone(),
            details: Details {
                lh: z.clone(),
                hl: z.clone(),
                hh: z,
            },
        };
        assert!(idwt2_haar(&bands).unwrap().data().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn mismatched_bands_rejected() {
        let bands = SubBands {
            ll: Image::zeros(2, 2),
            details: Details {
                lh: Image::zeros(2, 2),
                hl: Image::zeros(3, 2),
                hh: Image::zeros(2, 2),
            },
        };
        assert!(idwt2_haar(&bands).is_err());
    }

    #[test]
    fn first_level_layout() {
        let p = decompose(&lcg_image(512, 512, 1), 1).unwrap();
        assert_eq!(p.depth(), 1);
        assert_eq!(p.levels[0].dims(), (256, 256));
        assert_eq!(p.top_ll.dims(), (256, 256));
    }

    #[test]
    fn constant_pyramid() {
        for levels in 1..=4 {
            let p = decompose(&Image::filled(32, 16, 3.0), levels).unwrap();
            let expect = 3.0 * (1 << levels) as f64;
            assert!(p.top_ll.data().iter().all(|&v| (v - expect).abs() < 1e-12));
            for d in &p.levels {
                for o in Orientation::ALL {
                    assert!(d.band(o).data().iter().all(|&v| v == 0.0));
                }
            }
        }
    }

    #[test]
    fn zeroed_details_give_block_mean() {
        let g = Image::new(2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let mut p = decompose(&g, 1).unwrap();
        for o in Orientation::ALL {
            p.levels[0].band_mut(o).clone_from(&Image::zeros(1, 1));
        }
        let r = reconstruct(&p).unwrap();
        assert!(r.data().iter().all(|&v| (v - 2.5).abs() < 1e-12));
    }

    #[test]
    fn tampered_pyramid_rejected() {
        let mut p = decompose(&lcg_image(16, 16, 2), 2).unwrap();
        p.top_ll = Image::zeros(3, 4);
        assert!(matches!(reconstruct(&p), Err(Error::Dimensions(_))));
    }

    #[test]
    fn perfect_reconstruction_128() {
        let img = lcg_image(128, 128, 9);
        let r = idwt2_haar(&dwt2_haar(&img).unwrap()).unwrap();
        let err = img
            .data()
            .iter()
            .zip(r.data())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-9);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn pyramid_round_trip_and_energy(bw in 1usize..5, bh in 1usize..5, levels in 1usize..=4, seed in any::<u64>()) {
            let (w, h) = (bw << levels, bh << levels);
            let img = lcg_image(w, h, seed);
            let p = decompose(&img, levels).unwrap();
            let r = reconstruct(&p).unwrap();
            for (a, b) in img.data().iter().zip(r.data()) {
                prop_assert!((a - b).abs() < 1e-9);
            }
            let e: f64 = energy(&p.top_ll) + p.levels.iter().map(|d| energy(&d.lh) + energy(&d.hl) + energy(&d.hh)).sum::<f64>();
            prop_assert!((e - energy(&img)).abs() <= 1e-12 * energy(&img));
        }
    }
}
