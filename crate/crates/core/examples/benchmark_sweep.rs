//! Runs a small in-memory benchmark grid and prints the per-method summary
//! and the CSV head.
//!
//! ```bash
//! cargo run --release --example benchmark_sweep -- [trials]
//! ```

use wavelet_denoise::bench::{
    rows_to_csv, run_benchmark, summarize, BenchConfig, ImageSource, PlotMetric,
};
use wavelet_denoise::{synth, Method, MethodConfig};

fn main() -> wavelet_denoise::Result<()> {
    let trials: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2);
    let images = vec![
        ImageSource::Memory {
            id: "shapes".into(),
            image: synth::shapes(128),
        },
        ImageSource::Memory {
            id: "texture".into(),
            image: synth::texture_image(128, 3),
        },
    ];
    let methods = Method::ALL.iter().map(|&m| MethodConfig::new(m)).collect();
    let mut config = BenchConfig::new(images, methods);
    config.sigmas = vec![10.0, 30.0, 50.0];
    config.trials = trials;

    let rows = run_benchmark(&config)?;
    let csv = rows_to_csv(&rows);
    for line in csv.lines().take(4) {
        println!("{line}");
    }
    println!("... {} rows\n", rows.len());

    let summary = summarize(&rows)?;
    print!("{}", summary.plot_table(PlotMetric::Psnr));
    println!();
    print!("{}", summary.plot_table(PlotMetric::Uqi));
    Ok(())
}
