//! Compares two PGMs, or a synthetic image against a few distortions, with
//! MSE, RMSE, MAE, PSNR and UQI.
//!
//! ```bash
//! cargo run --example quality_metrics -- [reference.pgm test.pgm]
//! ```

use wavelet_denoise::metrics::uqi_windowed;
use wavelet_denoise::{add_awgn, evaluate, load_pgm, synth, Image, MetricsMode, NoiseModel};

fn report(name: &str, reference: &Image, test: &Image) -> wavelet_denoise::Result<()> {
    let r = evaluate(reference, test, MetricsMode::Clamped)?;
    let local = uqi_windowed(reference, test, 8)?;
    println!(
        "{name:<12} mse {:>9.3} rmse {:>7.3} mae {:>7.3} psnr {:>7.3} uqi {:.4} uqi8x8 {local:.4}",
        r.mse, r.rmse, r.mae, r.psnr_db, r.uqi
    );
    Ok(())
}

fn main() -> wavelet_denoise::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let [a, b] = args.as_slice() {
        return report("test", &load_pgm(a)?, &load_pgm(b)?);
    }
    let clean = synth::scene(128, 5);
    report("identical", &clean, &clean)?;
    report(
        "noise s=10",
        &clean,
        &add_awgn(&clean, &NoiseModel::new(10.0, 1)?),
    )?;
    report("offset +10", &clean, &clean.map(|v| v + 10.0))?;
    report(
        "contrast x.8",
        &clean,
        &clean.map(|v| 128.0 + 0.8 * (v - 128.0)),
    )?;
    report("flat mean", &clean, &Image::filled(128, 128, clean.mean()))?;
    Ok(())
}
