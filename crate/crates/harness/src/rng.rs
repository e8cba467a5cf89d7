//! Per-sample random streams.
//!
//! Every sample owns a ChaCha20 stream keyed by the run seed and selected by
//! the sample index, so results do not depend on worker count or scheduling.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// Recorded in every [`RunRecord`](crate::record::RunRecord).
pub const RNG_ALGORITHM: &str = "ChaCha20 (rand_chacha), key = seed_from_u64(seed), stream = sample index";

/// Stream for sample `index` of a run with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Seed for an independent sub-run, e.g. one point of a sweep.
pub fn derive_seed(seed: u64, label: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ label.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
