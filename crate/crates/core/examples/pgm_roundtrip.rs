//! Writes the synthetic images as binary PGM, reads them back, and converts
//! an ASCII (P2) file given on the command line to binary.
//!
//! ```bash
//! cargo run --example pgm_roundtrip -- [dir] [ascii.pgm]
//! ```

use std::path::PathBuf;

use wavelet_denoise::pgm::{decode_pgm, encode_pgm};
use wavelet_denoise::{load_pgm, save_pgm, synth};

fn main() -> wavelet_denoise::Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(
        args.next()
            .unwrap_or_else(|| std::env::temp_dir().display().to_string()),
    );

    for (name, image) in synth::standard_set(1) {
        let path = dir.join(format!("{name}.pgm"));
        save_pgm(&image, &path)?;
        let back = load_pgm(&path)?;
        // samples are rounded to 8 bits on write
        let err = image
            .data()
            .iter()
            .zip(back.data())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        println!(
            "{} {}x{} max quantization error {err:.3}",
            path.display(),
            back.width(),
            back.height()
        );
    }

    let ascii = b"P2\n# tiny\n3 2\n255\n0 128 255\n10 20 30\n";
    let img = decode_pgm(ascii)?;
    let binary = encode_pgm(&img);
    println!(
        "P2 {} bytes -> P5 {} bytes, equal after decode: {}",
        ascii.len(),
        binary.len(),
        decode_pgm(&binary)? == img
    );

    if let Some(path) = args.next() {
        let img = load_pgm(&path)?;
        let out = format!("{path}.p5.pgm");
        save_pgm(&img, &out)?;
        println!("wrote {out}");
    }
    Ok(())
}
