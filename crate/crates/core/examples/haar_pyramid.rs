//! Decomposes an image into a Haar pyramid, prints per-band energy and checks
//! the reconstruction.
//!
//! ```bash
//! cargo run --example haar_pyramid -- [levels]
//! ```

use wavelet_denoise::wavelet::Orientation;
use wavelet_denoise::{decompose, reconstruct, synth, Image};

fn energy(img: &Image) -> f64 {
    img.data().iter().map(|v| v * v).sum()
}

fn main() -> wavelet_denoise::Result<()> {
    let levels: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    let img = synth::scene(256, 3);
    let pyramid = decompose(&img, levels)?;

    let total = energy(&img);
    println!(
        "{:>5} {:>4} {:>9} {:>12}",
        "level", "band", "size", "energy %"
    );
    for (i, details) in pyramid.levels.iter().enumerate() {
        for o in Orientation::ALL {
            let band = details.band(o);
            println!(
                "{:>5} {:>4} {:>9} {:>12.5}",
                i + 1,
                format!("{o:?}").to_uppercase(),
                format!("{}x{}", band.width(), band.height()),
                100.0 * energy(band) / total
            );
        }
    }
    let ll = &pyramid.top_ll;
    println!(
        "{:>5} {:>4} {:>9} {:>12.5}",
        levels,
        "LL",
        format!("{}x{}", ll.width(), ll.height()),
        100.0 * energy(ll) / total
    );

    let back = reconstruct(&pyramid)?;
    let err = img
        .data()
        .iter()
        .zip(back.data())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("max reconstruction error {err:e}");
    Ok(())
}
