//! PGM (P5 binary / P2 ASCII) reading and P5 writing, 8-bit only.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::image::Image;

/// Reads a PGM file. Samples keep their raw values in `[0, maxval]`.
pub fn load_pgm(path: impl AsRef<Path>) -> Result<Image> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_pgm(&bytes)
}

/// Writes a binary P5 file with maxval 255.
///
/// Samples are clamped to `[0, 255]` and rounded half away from zero.
pub fn save_pgm(image: &Image, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_pgm(image)).map_err(|e| Error::io(path, e))
}

pub fn encode_pgm(image: &Image) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", image.width(), image.height());
    let mut out = Vec::with_capacity(header.len() + image.len());
    out.extend_from_slice(header.as_bytes());
    out.extend(image.data().iter().map(|&v| quantize(v)));
    out
}

#[inline]
fn quantize(v: f64) -> u8 {
    // f64::round is half-away-from-zero
    v.clamp(0.0, 255.0).round() as u8
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&c) = self.buf.get(self.pos) {
            if c == b'#' {
                while let Some(&c) = self.buf.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn header_number(&mut self, what: &str) -> Result<usize> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.buf.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::MalformedHeader(format!("expected {what}")));
        }
        std::str::from_utf8(&self.buf[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::MalformedHeader(format!("{what} out of range")))
    }
}

pub fn decode_pgm(bytes: &[u8]) -> Result<Image> {
    let binary = match bytes.get(..2) {
        Some(b"P5") => true,
        Some(b"P2") => false,
        Some(m) => {
            return Err(Error::UnsupportedFormat(format!(
                "magic {:?}, expected P5 or P2",
                String::from_utf8_lossy(m)
            )))
        }
        None => return Err(Error::MalformedHeader("missing magic".into())),
    };
    let mut cur = Cursor { buf: bytes, pos: 2 };
    if !cur
        .buf
        .get(cur.pos)
        .is_some_and(|c| c.is_ascii_whitespace() || *c == b'#')
    {
        return Err(Error::MalformedHeader("no separator after magic".into()));
    }
    let width = cur.header_number("width")?;
    let height = cur.header_number("height")?;
    let maxval = cur.header_number("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::MalformedHeader(format!(
            "zero dimension {width}x{height}"
        )));
    }
    if maxval == 0 {
        return Err(Error::MalformedHeader("maxval must be positive".into()));
    }
    if maxval > 255 {
        return Err(Error::UnsupportedFormat(format!(
            "maxval {maxval} (16-bit PGM is not supported)"
        )));
    }
    let count = width
        .checked_mul(height)
        .ok_or_else(|| Error::MalformedHeader("dimensions overflow".into()))?;

    let data = if binary {
        // exactly one whitespace byte separates maxval from the raster
        if !cur.buf.get(cur.pos).is_some_and(u8::is_ascii_whitespace) {
            return Err(Error::MalformedHeader(
                "missing whitespace after maxval".into(),
            ));
        }
        let raster = &bytes[cur.pos + 1..];
        if raster.len() < count {
            return Err(Error::Truncated {
                expected: count,
                found: raster.len(),
            });
        }
        raster[..count].iter().map(|&b| f64::from(b)).collect()
    } else {
        let mut data = Vec::with_capacity(count);
        for found in 0..count {
            cur.skip_whitespace_and_comments();
            if cur.pos >= bytes.len() {
                return Err(Error::Truncated {
                    expected: count,
                    found,
                });
            }
            let v = cur.header_number("sample")?;
            if v > maxval {
                return Err(Error::MalformedHeader(format!(
                    "sample {v} exceeds maxval {maxval}"
                )));
            }
            data.push(v as f64);
        }
        data
    };
    Image::new(width, height, data)
}
