//! Deterministic random numbers for noise generation.
//!
//! The generator is xoshiro256** (Blackman & Vigna, 2018) seeded by expanding a
//! 64-bit seed with SplitMix64. Gaussian deviates use the Box-Muller transform:
//!
//! ```text
//! u1 = ((next_u64() >> 11) + 1) * 2^-53      // (0, 1]
//! u2 =  (next_u64() >> 11)      * 2^-53      // [0, 1)
//! r  = sqrt(-2 ln u1)
//! z0 = r cos(2 pi u2), z1 = r sin(2 pi u2)
//! ```
//!
//! `z0` is returned first and `z1` is cached for the following call. These
//! rules are stable so noise fields can be reproduced in other languages.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output mixer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// SplitMix64 generator, used for seed expansion.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }
}

/// Hashes a byte string to 64 bits: `h = mix64(h + GOLDEN_GAMMA ^ byte)` per
/// byte starting from `h = 0`, then one final `mix64(h + GOLDEN_GAMMA)`.
pub fn hash_key(key: &[u8]) -> u64 {
    let mut h = 0u64;
    for &b in key {
        h = mix64(h.wrapping_add(GOLDEN_GAMMA) ^ u64::from(b));
    }
    mix64(h.wrapping_add(GOLDEN_GAMMA))
}

/// xoshiro256** with a Box-Muller Gaussian front end.
#[derive(Clone, Debug)]
pub struct NoiseRng {
    s: [u64; 4],
    spare: Option<f64>,
}

impl NoiseRng {
    pub fn from_seed(seed: u64) -> Self {
        let mut sm = SplitMix64::new(seed);
        let s = [sm.next_u64(), sm.next_u64(), sm.next_u64(), sm.next_u64()];
        NoiseRng { s, spare: None }
    }

    pub fn next_u64(&mut self) -> u64 {
        let result = self.s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal deviate.
    pub fn next_gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
        let u2 = self.next_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        let (sin, cos) = (2.0 * std::f64::consts::PI * u2).sin_cos();
        self.spare = Some(r * sin);
        r * cos
    }
}
