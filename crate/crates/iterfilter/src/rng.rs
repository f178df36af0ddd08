//! Seeded random number generation.
//!
//! All randomness in the crate flows through [`Xoshiro256StarStar`], seeded
//! via [`SplitMix64`]. The generators are implemented here (reference
//! algorithms by Blackman & Vigna) rather than pulled from a crate so that
//! byte-identical outputs are guaranteed across builds and dependency
//! updates; golden tests and checkpoint determinism rely on that.
//!
//! Independent sub-streams are derived with [`stream_rng`]: a stream index
//! is mixed into the seed with SplitMix64, so per-point or per-step streams
//! can be drawn in any order (or in parallel) without changing results.
//!
//! Gaussian variates use the Box–Muller transform ([`normal_pair`]), again
//! pinned here instead of depending on a distribution crate's tables.

use rand_core::{impls, RngCore};

/// SplitMix64 step: advances `state` and returns the next output.
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// xoshiro256** generator (Blackman & Vigna, 2018).
#[derive(Clone, Debug)]
pub struct Xoshiro256StarStar {
    s: [u64; 4],
}

impl Xoshiro256StarStar {
    /// Seeds the full 256-bit state from a single `u64` via SplitMix64.
    pub fn seed_from_u64(seed: u64) -> Self {
        let mut sm = seed;
        let s = [
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
        ];
        Xoshiro256StarStar { s }
    }

    #[inline]
    pub fn next_raw(&mut self) -> u64 {
        let s = &mut self.s;
        let result = s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }
}

impl RngCore for Xoshiro256StarStar {
    fn next_u32(&mut self) -> u32 {
        (self.next_raw() >> 32) as u32
    }

    fn next_u64(&mut self) -> u64 {
        self.next_raw()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        impls::fill_bytes_via_next(self, dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand_core::Error> {
        self.fill_bytes(dest);
        Ok(())
    }
}

/// Mixes a stream index into a master seed.
pub fn mix_seed(seed: u64, stream: u64) -> u64 {
    let mut state = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    splitmix64(&mut state)
}

/// Returns the generator for sub-stream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> Xoshiro256StarStar {
    Xoshiro256StarStar::seed_from_u64(mix_seed(seed, stream))
}

/// Draws a pair of independent standard normals via Box–Muller.
pub fn normal_pair(rng: &mut Xoshiro256StarStar) -> (f64, f64) {
    use rand::Rng;
    // u1 in (0, 1] so the log is finite.
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = std::f64::consts::TAU * u2;
    (r * theta.cos(), r * theta.sin())
}

/// Draws one standard normal (discards the second Box–Muller output).
pub fn normal(rng: &mut Xoshiro256StarStar) -> f64 {
    normal_pair(rng).0
}

/// Draws a 3-vector of independent standard normals.
pub fn normal3(rng: &mut Xoshiro256StarStar) -> [f64; 3] {
    let (a, b) = normal_pair(rng);
    let (c, _) = normal_pair(rng);
    [a, b, c]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_are_deterministic() {
        let mut a = stream_rng(42, 7);
        let mut b = stream_rng(42, 7);
        for _ in 0..100 {
            assert_eq!(a.next_raw(), b.next_raw());
        }
    }

    #[test]
    fn streams_differ_by_index() {
        let mut a = stream_rng(42, 0);
        let mut b = stream_rng(42, 1);
        let same = (0..64).filter(|_| a.next_raw() == b.next_raw()).count();
        assert_eq!(same, 0);
    }

    #[test]
    fn normal_moments_are_sane() {
        let mut rng = stream_rng(1, 0);
        let n = 200_000;
        let (mut sum, mut sumsq) = (0.0, 0.0);
        for _ in 0..n {
            let x = normal(&mut rng);
            sum += x;
            sumsq += x * x;
        }
        let mean = sum / n as f64;
        let var = sumsq / n as f64 - mean * mean;
        assert!(mean.abs() < 0.01, "mean {mean}");
        assert!((var - 1.0).abs() < 0.02, "var {var}");
    }

    #[test]
    fn uniform_f64_in_unit_interval() {
        let mut rng = stream_rng(3, 3);
        for _ in 0..10_000 {
            let u: f64 = rng.gen();
            assert!((0.0..1.0).contains(&u));
        }
    }
}
