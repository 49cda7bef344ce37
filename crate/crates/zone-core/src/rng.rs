//! Seeded random draws.
//!
//! All randomness in the crate flows through ChaCha8 streams seeded from
//! explicit `u64` seeds, with standard normals produced by Box–Muller.
//! The algorithms are fixed here so that generated arrangements and
//! multistart schedules are reproducible across platforms and releases.

use libm::{cos, log, sin, sqrt};
use rand_core::{RngCore, SeedableRng};

pub use rand_chacha::ChaCha8Rng;

const TWO_NEG_53: f64 = 1.0 / (1u64 << 53) as f64;

/// Creates the ChaCha8 stream for a given seed.
pub fn stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw from `[0, 1)` using the top 53 bits of one `u64` word.
pub fn uniform_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * TWO_NEG_53
}

/// Uniform draw from `(0, 1]`; used where a logarithm must stay finite.
fn uniform_open_f64(rng: &mut impl RngCore) -> f64 {
    ((rng.next_u64() >> 11) + 1) as f64 * TWO_NEG_53
}

/// One standard normal via Box–Muller.
///
/// Each call consumes exactly two `u64` words and discards the paired
/// variate, keeping the draw count independent of call sites.
pub fn standard_normal(rng: &mut impl RngCore) -> f64 {
    let u1 = uniform_open_f64(rng);
    let u2 = uniform_f64(rng);
    sqrt(-2.0 * log(u1)) * cos(2.0 * core::f64::consts::PI * u2)
}

/// Normal pair sharing one Box–Muller transform.
pub fn standard_normal_pair(rng: &mut impl RngCore) -> (f64, f64) {
    let u1 = uniform_open_f64(rng);
    let u2 = uniform_f64(rng);
    let r = sqrt(-2.0 * log(u1));
    let a = 2.0 * core::f64::consts::PI * u2;
    (r * cos(a), r * sin(a))
}

/// Derives a per-task sub-seed from a master seed and a task index.
///
/// SplitMix64 finalizer over `seed ^ index * phi64`; the fixed rule makes
/// parallel and serial multistart schedules identical.
pub fn split_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
