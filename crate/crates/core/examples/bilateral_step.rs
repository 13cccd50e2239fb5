//! Filters a noisy step edge and prints one row across the edge before and
//! after, showing the edge survives while the flats are smoothed.
//!
//! ```bash
//! cargo run --example bilateral_step -- [sigma_d] [sigma_r]
//! ```

use wavelet_denoise::{add_awgn, bilateral_filter, BilateralParams, Image, NoiseModel};

fn main() -> wavelet_denoise::Result<()> {
    let mut args = std::env::args().skip(1);
    let sigma_d: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1.8);
    let sigma_r: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(20.0);

    let step = Image::from_fn(32, 32, |x, _| if x < 16 { 60.0 } else { 190.0 });
    let noisy = add_awgn(&step, &NoiseModel::new(10.0, 4)?);
    let out = bilateral_filter(&noisy, &BilateralParams::new(sigma_d, sigma_r, 11)?)?;

    let y = 16;
    println!("{:>3} {:>8} {:>8} {:>8}", "x", "clean", "noisy", "filtered");
    for x in 10..22 {
        println!(
            "{x:>3} {:>8.1} {:>8.1} {:>8.1}",
            step.get(x, y),
            noisy.get(x, y),
            out.get(x, y)
        );
    }
    Ok(())
}
