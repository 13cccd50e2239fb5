//! Grayscale image denoising with Haar wavelet shrinkage (VisuShrink,
//! SureShrink, BayesShrink, NeighShrink), the bilateral filter, a
//! BayesShrink-then-bilateral chain and the multiresolution bilateral filter,
//! plus quality metrics and a reproducible benchmark harness.
//!
//! ```no_run
//! use wavelet_denoise::{add_awgn, denoise, evaluate, Method, MethodConfig, MetricsMode, NoiseModel};
//!
//! let clean = wavelet_denoise::synth::scene(256, 1);
//! let noisy = add_awgn(&clean, &NoiseModel::new(20.0, 7)?);
//! let out = denoise(&noisy, &MethodConfig::new(Method::Mrbf), None)?;
//! println!("{:.2} dB", evaluate(&clean, &out, MetricsMode::Clamped)?.psnr_db);
//! # Ok::<(), wavelet_denoise::Error>(())
//! ```

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod bilateral;
pub mod error;
pub mod image;
pub mod metrics;
pub mod noise;
pub mod pgm;
pub mod pipelines;
pub mod rng;
pub mod shrinkage;
pub mod synth;
pub mod wavelet;

pub use bilateral::{bilateral_filter, BilateralParams};
pub use error::{Error, Result};
pub use image::{clamp_image, pad_mirror, Grid, Image};
pub use metrics::{evaluate, mse_rmse_mae, psnr, uqi, MetricsMode, MetricsReport};
pub use noise::{add_awgn, estimate_noise_mad, NoiseModel};
pub use pgm::{load_pgm, save_pgm};
pub use pipelines::{collaborative, denoise, mrbf, Method, MethodConfig, SigmaMode};
pub use shrinkage::{ThresholdKind, ThresholdRule};
pub use wavelet::{decompose, dwt2_haar, idwt2_haar, reconstruct, Pyramid, SubBands};
