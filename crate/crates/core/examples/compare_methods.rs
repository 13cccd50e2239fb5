//! Scores every method on one synthetic scene across noise levels.
//!
//! ```bash
//! cargo run --release --example compare_methods -- [size] [seeds]
//! ```

use std::time::Instant;

use wavelet_denoise::{
    add_awgn, denoise, evaluate, synth, Method, MethodConfig, MetricsMode, NoiseModel,
};

fn main() -> wavelet_denoise::Result<()> {
    let mut args = std::env::args().skip(1);
    let size: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(256);
    let seeds: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let clean = synth::scene(size, 1);

    println!(
        "{:>6} {:>10} {:>9} {:>7} {:>8}",
        "sigma", "method", "psnr_db", "uqi", "ms"
    );
    for sigma in [10.0, 20.0, 30.0, 40.0, 50.0] {
        let noisy: Vec<_> = (0..seeds)
            .map(|s| NoiseModel::new(sigma, s).map(|m| add_awgn(&clean, &m)))
            .collect::<Result<_, _>>()?;
        let base: f64 = noisy
            .iter()
            .map(|n| evaluate(&clean, n, MetricsMode::Clamped).map(|r| r.psnr_db))
            .sum::<Result<f64, _>>()?
            / seeds as f64;
        println!("{sigma:>6} {:>10} {base:>9.3}", "noisy");
        for method in Method::ALL {
            let cfg = MethodConfig::new(method);
            let start = Instant::now();
            let (mut p, mut q) = (0.0, 0.0);
            for n in &noisy {
                let r = evaluate(&clean, &denoise(n, &cfg, None)?, MetricsMode::Clamped)?;
                p += r.psnr_db;
                q += r.uqi;
            }
            let ms = start.elapsed().as_millis() as f64 / seeds as f64;
            println!(
                "{sigma:>6} {:>10} {:>9.3} {:>7.4} {ms:>8.0}",
                method.name(),
                p / seeds as f64,
                q / seeds as f64
            );
        }
    }
    Ok(())
}
