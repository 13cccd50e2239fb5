//! Adds seeded Gaussian noise to a PGM (or a synthetic scene) and reports the
//! MAD noise estimate next to the true sigma.
//!
//! ```bash
//! cargo run --example add_noise -- [sigma] [seed] [in.pgm] [out.pgm]
//! ```

use wavelet_denoise::noise::{LITERAL_MAD_DIVISOR, MAD_DIVISOR};
use wavelet_denoise::pipelines::estimate_image_sigma;
use wavelet_denoise::{add_awgn, load_pgm, psnr, save_pgm, synth, NoiseModel};

fn main() -> wavelet_denoise::Result<()> {
    let mut args = std::env::args().skip(1);
    let sigma: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(20.0);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let clean = match args.next() {
        Some(path) => load_pgm(path)?,
        None => synth::scene(256, 1),
    };

    let noisy = add_awgn(&clean, &NoiseModel::new(sigma, seed)?);
    println!("true sigma      {sigma}");
    println!(
        "mad / 0.6745    {:.3}",
        estimate_image_sigma(&noisy, MAD_DIVISOR)?
    );
    println!(
        "mad / 0.625     {:.3}",
        estimate_image_sigma(&noisy, LITERAL_MAD_DIVISOR)?
    );
    println!("noisy psnr      {:.3} dB", psnr(&clean, &noisy)?);

    // same seed, same field
    assert_eq!(noisy, add_awgn(&clean, &NoiseModel::new(sigma, seed)?));
    if let Some(out) = args.next() {
        save_pgm(&noisy, &out)?;
        println!("wrote {out}");
    }
    Ok(())
}
