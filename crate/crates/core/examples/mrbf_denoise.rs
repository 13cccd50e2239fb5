//! Runs the multiresolution bilateral filter under both schedules and a few
//! decomposition depths.
//!
//! ```bash
//! cargo run --release --example mrbf_denoise -- [sigma] [in.pgm] [out.pgm]
//! ```

use wavelet_denoise::pipelines::MrbfSchedule;
use wavelet_denoise::{
    add_awgn, evaluate, load_pgm, mrbf, save_pgm, synth, Method, MethodConfig, MetricsMode,
    NoiseModel,
};

fn main() -> wavelet_denoise::Result<()> {
    let mut args = std::env::args().skip(1);
    let sigma: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(20.0);
    let clean = match args.next() {
        Some(path) => load_pgm(path)?,
        None => synth::scene(256, 1),
    };
    let noisy = add_awgn(&clean, &NoiseModel::new(sigma, 1)?);
    let before = evaluate(&clean, &noisy, MetricsMode::Clamped)?;
    println!("noisy: {:.3} dB, uqi {:.4}", before.psnr_db, before.uqi);

    let mut best = None;
    for schedule in [MrbfSchedule::EveryLevel, MrbfSchedule::CoarsestOnly] {
        for levels in 1..=4 {
            let mut cfg = MethodConfig::new(Method::Mrbf).with_levels(levels);
            cfg.mrbf_schedule = schedule;
            let out = mrbf(&noisy, &cfg)?;
            let r = evaluate(&clean, &out, MetricsMode::Clamped)?;
            println!(
                "{schedule:?} L{levels}: {:.3} dB, uqi {:.4}",
                r.psnr_db, r.uqi
            );
            if schedule == MrbfSchedule::EveryLevel && levels == 3 {
                best = Some(out);
            }
        }
    }
    if let (Some(path), Some(out)) = (args.next(), best) {
        save_pgm(&out, &path)?;
        println!("wrote default configuration to {path}");
    }
    Ok(())
}
