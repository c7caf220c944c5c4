//! Seeded random number generation.
//!
//! All randomized analyses draw from ChaCha8 keyed by a 64-bit seed, with
//! independent streams so that run k of a multi-run experiment is the same
//! no matter how runs are scheduled.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for (seed, stream). Identical arguments give identical output
/// on every platform.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
