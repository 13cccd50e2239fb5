//! Prints the Visu, SURE and Bayes thresholds chosen for each detail band of
//! a noisy image, and how many coefficients each one keeps.
//!
//! ```bash
//! cargo run --example shrinkage_estimators -- [sigma]
//! ```

use wavelet_denoise::shrinkage::{band_stats, bayes_threshold, sure_threshold, visu_threshold};
use wavelet_denoise::wavelet::Orientation;
use wavelet_denoise::{add_awgn, decompose, estimate_noise_mad, synth, NoiseModel};

fn main() -> wavelet_denoise::Result<()> {
    let sigma: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(20.0);
    let clean = synth::scene(256, 2);
    let noisy = add_awgn(&clean, &NoiseModel::new(sigma, 9)?);
    let pyramid = decompose(&noisy, 3)?;
    let sigma_hat = estimate_noise_mad(&pyramid.levels[0].hh)?;
    let visu = visu_threshold(sigma_hat, noisy.len())?;
    println!("sigma {sigma}, estimated {sigma_hat:.3}, visu threshold {visu:.2}");

    println!(
        "{:>5} {:>4} {:>8} {:>8} {:>8} {:>8}",
        "level", "band", "sure", "bayes", "kept%s", "kept%b"
    );
    for (i, details) in pyramid.levels.iter().enumerate() {
        for o in Orientation::ALL {
            let band = details.band(o);
            let sure = sure_threshold(band, sigma_hat)?;
            let bayes = bayes_threshold(&band_stats(band, sigma_hat)?);
            let kept = |t: f64| {
                100.0 * band.data().iter().filter(|v| v.abs() > t).count() as f64
                    / band.len() as f64
            };
            println!(
                "{:>5} {:>4} {sure:>8.2} {bayes:>8.2} {:>8.1} {:>8.1}",
                i + 1,
                format!("{o:?}").to_uppercase(),
                kept(sure),
                kept(bayes)
            );
        }
    }
    Ok(())
}
